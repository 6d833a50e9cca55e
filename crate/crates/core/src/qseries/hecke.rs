//! The weight-k Hecke operator T_k(m) as a combinatorial action on Fourier
//! coefficients: the image of Σ c(n) q^n has n-th coefficient
//! Σ_{d | (m,n), d>0} d^{k-1} c(mn/d²).

use num_integer::Integer;
use num_traits::{One, Zero};

use super::series::QSeries;
use super::BigRat;
use crate::error::{Error, Result};
use num_bigint::BigInt;

/// d^{k-1} as an exact rational (k may be non-positive).
fn divisor_power(d: i64, k: i32) -> BigRat {
    let e = k - 1;
    if e >= 0 {
        BigRat::from_integer(BigInt::from(d).pow(e as u32))
    } else {
        BigRat::new(BigInt::one(), BigInt::from(d).pow((-e) as u32))
    }
}

/// Apply T_k(m) to a truncated Laurent series, producing coefficients for
/// exponents below `n_out`.
///
/// Coefficients of the image at exponent n draw on input coefficients at
/// mn/d², up to m·(n_out - 1); the input truncation must cover them, or the
/// call is rejected with the minimal input order required.
pub fn hecke_holomorphic(f: &QSeries, k: i32, m: i64, n_out: i64) -> Result<QSeries> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!("Hecke index must be positive, got {m}")));
    }
    let required = m * (n_out - 1) + 1;
    if f.truncation() < required {
        return Err(Error::InsufficientTruncation {
            required,
            available: f.truncation(),
        });
    }
    // Lowest reachable output exponent: with input valuation v (<= 0 for the
    // Laurent inputs of interest), the term d = m at n = m·v hits index v.
    let val_in = f.valuation().min(0);
    let val_out = m * val_in;
    let mut coeffs = vec![BigRat::zero(); (n_out - val_out).max(0) as usize];
    for n in val_out..n_out {
        let g = if n == 0 { m } else { m.gcd(&n.abs()) };
        let mut divisors = Vec::new();
        let mut d = 1i64;
        while d * d <= g {
            if g % d == 0 {
                divisors.push(d);
                if g / d != d {
                    divisors.push(g / d);
                }
            }
            d += 1;
        }
        let mut acc = BigRat::zero();
        for dd in divisors {
            let idx = m * n / (dd * dd);
            if idx >= f.truncation() {
                return Err(Error::InsufficientTruncation {
                    required: idx + 1,
                    available: f.truncation(),
                });
            }
            let c = f.coeff(idx)?;
            if !c.is_zero() {
                acc += divisor_power(dd, k) * c;
            }
        }
        coeffs[(n - val_out) as usize] = acc;
    }
    Ok(QSeries::new(val_out, coeffs).normalized())
}

/// Apply T_k(m) with the widest output order the input truncation supports.
pub fn hecke_holomorphic_max(f: &QSeries, k: i32, m: i64) -> Result<QSeries> {
    let n_out = (f.truncation() - 1).div_euclid(m) + 1;
    hecke_holomorphic(f, k, m, n_out)
}

#[cfg(test)]
mod tests {
    use super::super::{delta, rat, ratio, tau_values, PrecisionContext};
    use super::*;

    #[test]
    fn identity_operator() {
        let ctx = PrecisionContext::default().with_series_order(12);
        let d = delta(&ctx).unwrap();
        let image = hecke_holomorphic(&d, 12, 1, 12).unwrap();
        assert!(image.agrees_with(&d));
    }

    #[test]
    fn delta_is_an_eigenform() {
        let ctx = PrecisionContext::default().with_series_order(64);
        let d = delta(&ctx).unwrap();
        let taus = tau_values(20).unwrap();
        for m in 1..=20i64 {
            let image = hecke_holomorphic_max(&d, 12, m).unwrap();
            let expected = d.scalar_mul(&BigRat::from_integer(taus[(m - 1) as usize].clone()));
            assert!(image.agrees_with(&expected), "T_12({m}) eigenvalue mismatch");
        }
    }

    #[test]
    fn weight_zero_on_principal_part() {
        // (q^-1 + O(q)) | T_0(2): coefficient of q^-2 is (1/2)·c(-1) = 1/2.
        let f = QSeries::new(-1, vec![rat(1), rat(0), rat(0), rat(0), rat(0)]);
        let image = hecke_holomorphic(&f, 0, 2, 2).unwrap();
        assert_eq!(image.coeff(-2).unwrap(), ratio(1, 2));
    }

    #[test]
    fn insufficient_truncation_reports_requirement() {
        let f = QSeries::new(0, vec![rat(1); 8]);
        let err = hecke_holomorphic(&f, 12, 3, 8).unwrap_err();
        match err {
            Error::InsufficientTruncation { required, available } => {
                assert_eq!(required, 3 * 7 + 1);
                assert_eq!(available, 8);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}
