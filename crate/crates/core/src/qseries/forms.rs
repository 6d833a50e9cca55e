//! Generators for the level-1 modular objects: Bernoulli numbers, divisor
//! sums, Eisenstein series, the discriminant form, and the j-function.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::series::QSeries;
use super::{BigRat, PrecisionContext};
use crate::error::{Error, Result};

/// Bernoulli numbers B_0, B_1, ... under the B_1 = -1/2 convention, so that
/// B_2 = 1/6 and B_12 = -691/2730.
static BERNOULLI_CACHE: Mutex<Vec<Option<BigRat>>> = Mutex::new(Vec::new());

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn bernoulli_all(up_to: usize) -> Vec<BigRat> {
    let mut cache = BERNOULLI_CACHE.lock().expect("bernoulli cache poisoned");
    if cache.len() <= up_to {
        let start = cache.len();
        cache.resize(up_to + 1, None);
        let mut values: Vec<BigRat> = (0..start).map(|i| cache[i].clone().unwrap()).collect();
        if values.is_empty() {
            values.push(BigRat::one());
        }
        for n in values.len()..=up_to {
            // sum_{j=0}^{n} C(n+1, j) B_j = 0  for n >= 1
            let mut acc = BigRat::zero();
            for (j, b) in values.iter().enumerate() {
                acc += BigRat::from_integer(binomial(n + 1, j)) * b;
            }
            let coeff = BigRat::from_integer(BigInt::from(n as i64 + 1));
            values.push(-acc / coeff);
        }
        for (i, v) in values.iter().enumerate() {
            cache[i] = Some(v.clone());
        }
    }
    cache.iter().take(up_to + 1).map(|v| v.clone().unwrap()).collect()
}

/// Exact Bernoulli number B_k for even k >= 2.
pub fn bernoulli(k: u32) -> Result<BigRat> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "Bernoulli index must be even and at least 2, got {k}"
        )));
    }
    Ok(bernoulli_all(k as usize)[k as usize].clone())
}

/// Divisor power sum σ_ν(n) = Σ_{d|n} d^ν.
pub fn sigma(nu: u32, n: i64) -> Result<BigInt> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("sigma expects n >= 1, got {n}")));
    }
    let mut acc = BigInt::zero();
    let mut d = 1i64;
    while d * d <= n {
        if n % d == 0 {
            acc += BigInt::from(d).pow(nu);
            let e = n / d;
            if e != d {
                acc += BigInt::from(e).pow(nu);
            }
        }
        d += 1;
    }
    Ok(acc)
}

/// Eisenstein series E_k = 1 - (2k/B_k) Σ σ_{k-1}(n) q^n, truncated at the
/// context's series order. k = 2 is accepted as a series generator even
/// though E_2 is not modular.
pub fn eisenstein(k: u32, ctx: &PrecisionContext) -> Result<QSeries> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "Eisenstein weight must be even and at least 2, got {k}"
        )));
    }
    let n = ctx.series_order;
    let factor = -BigRat::from_integer(BigInt::from(2 * k)) / bernoulli(k)?;
    let mut coeffs = Vec::with_capacity(n as usize);
    coeffs.push(BigRat::one());
    for m in 1..n {
        coeffs.push(&factor * BigRat::from_integer(sigma(k - 1, m)?));
    }
    Ok(QSeries::new(0, coeffs))
}

/// Ramanujan's weight 12 cusp form Δ = (E_4^3 - E_6^2)/1728.
pub fn delta(ctx: &PrecisionContext) -> Result<QSeries> {
    let e4 = eisenstein(4, ctx)?;
    let e6 = eisenstein(6, ctx)?;
    let num = e4.pow(3).sub(&e6.pow(2));
    Ok(num.scalar_mul(&BigRat::new(BigInt::one(), BigInt::from(1728))))
}

/// The modular j-function E_4^3 / Δ = q^{-1} + 744 + 196884 q + ...
pub fn jfunction(ctx: &PrecisionContext) -> Result<QSeries> {
    let e4 = eisenstein(4, ctx)?;
    Ok(e4.pow(3).mul(&delta(ctx)?.inv()?))
}

static TAU_CACHE: Mutex<Vec<BigInt>> = Mutex::new(Vec::new());

/// τ(1), ..., τ(up_to) as exact integers, served from a shared cache.
pub fn tau_values(up_to: i64) -> Result<Vec<BigInt>> {
    let mut cache = TAU_CACHE.lock().expect("tau cache poisoned");
    if (cache.len() as i64) < up_to {
        let ctx = PrecisionContext::default().with_series_order(up_to + 1);
        let d = delta(&ctx)?;
        let mut values = Vec::with_capacity(up_to as usize);
        for n in 1..=up_to {
            let c = d.coeff(n)?;
            debug_assert!(c.denom().is_one(), "tau coefficients are integers");
            values.push(c.numer().clone());
        }
        *cache = values;
    }
    Ok(cache[..up_to as usize].to_vec())
}

/// τ(n), the coefficient of q^n in Δ. Valid for 1 <= n < ctx.series_order.
pub fn tau(n: i64, ctx: &PrecisionContext) -> Result<BigInt> {
    if n < 1 || n >= ctx.series_order {
        return Err(Error::CoefficientOutOfRange {
            exponent: n,
            truncation: ctx.series_order,
        });
    }
    Ok(tau_values(n)?.pop().expect("nonempty"))
}

#[cfg(test)]
mod tests {
    use super::super::{rat, ratio};
    use super::*;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(2).unwrap(), ratio(1, 6));
        assert_eq!(bernoulli(4).unwrap(), ratio(-1, 30));
        assert_eq!(bernoulli(12).unwrap(), ratio(-691, 2730));
        assert!(bernoulli(3).is_err());
        assert!(bernoulli(0).is_err());
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(9, 1).unwrap(), BigInt::from(1));
        assert_eq!(sigma(9, 2).unwrap(), BigInt::from(513));
        assert_eq!(sigma(11, 2).unwrap(), BigInt::from(2049));
        assert!(sigma(9, 0).is_err());
    }

    #[test]
    fn eisenstein_normalization() {
        let ctx = PrecisionContext::default().with_series_order(8);
        let e10 = eisenstein(10, &ctx).unwrap();
        assert_eq!(e10.coeff(0).unwrap(), rat(1));
        assert_eq!(e10.coeff(1).unwrap(), rat(-264));
        let e4 = eisenstein(4, &ctx).unwrap();
        assert_eq!(e4.coeff(0).unwrap(), rat(1));
        assert_eq!(e4.coeff(1).unwrap(), rat(240));
        let e12 = eisenstein(12, &ctx).unwrap();
        assert_eq!(e12.coeff(1).unwrap(), ratio(65520, 691));
    }

    #[test]
    fn delta_leading_terms() {
        let ctx = PrecisionContext::default().with_series_order(8);
        let d = delta(&ctx).unwrap();
        assert_eq!(d.order(), Some(1));
        assert_eq!(d.coeff(1).unwrap(), rat(1));
        assert_eq!(d.coeff(2).unwrap(), rat(-24));
        assert_eq!(d.coeff(3).unwrap(), rat(252));
    }

    #[test]
    fn tau_examples() {
        let ctx = PrecisionContext::default().with_series_order(8);
        assert_eq!(tau(2, &ctx).unwrap(), BigInt::from(-24));
        assert_eq!(tau(3, &ctx).unwrap(), BigInt::from(252));
        assert!(tau(8, &ctx).is_err());
        assert!(tau(0, &ctx).is_err());
    }

    #[test]
    fn j_leading_terms() {
        let ctx = PrecisionContext::default().with_series_order(8);
        let j = jfunction(&ctx).unwrap();
        assert_eq!(j.valuation(), -1);
        assert_eq!(j.coeff(-1).unwrap(), rat(1));
        assert_eq!(j.coeff(0).unwrap(), rat(744));
        assert_eq!(j.coeff(1).unwrap(), rat(196884));
    }

    #[test]
    fn j_times_delta_is_e4_cubed() {
        let ctx = PrecisionContext::default().with_series_order(24);
        let j = jfunction(&ctx).unwrap();
        let d = delta(&ctx).unwrap();
        let e4 = eisenstein(4, &ctx).unwrap();
        assert!(j.mul(&d).agrees_with(&e4.pow(3)));
    }

    #[test]
    fn e4_cubed_minus_e6_squared_starts_at_1728q() {
        let ctx = PrecisionContext::default().with_series_order(8);
        let e4 = eisenstein(4, &ctx).unwrap();
        let e6 = eisenstein(6, &ctx).unwrap();
        let diff = e4.pow(3).sub(&e6.pow(2));
        assert_eq!(diff.order(), Some(1));
        assert_eq!(diff.coeff(1).unwrap(), rat(1728));
    }

    #[test]
    fn ramanujan_congruence_mod_691() {
        let n = 64;
        let taus = tau_values(n - 1).unwrap();
        let modulus = BigInt::from(691);
        for m in 1..n {
            let t = &taus[(m - 1) as usize];
            let s = sigma(11, m).unwrap();
            let diff = (t - s) % &modulus;
            assert!(diff.is_zero(), "tau({m}) != sigma11({m}) mod 691");
        }
    }

    #[test]
    fn deligne_bound_exact() {
        let n = 64;
        let taus = tau_values(n - 1).unwrap();
        for m in 1..n {
            let t2 = (&taus[(m - 1) as usize]).pow(2);
            let s0 = sigma(0, m).unwrap();
            let bound = &s0 * &s0 * BigInt::from(m).pow(11);
            assert!(t2 <= bound, "Deligne bound fails at m={m}");
            let weak = BigInt::from(4) * BigInt::from(m).pow(12);
            assert!(t2 <= weak, "weak bound fails at m={m}");
        }
    }
}
