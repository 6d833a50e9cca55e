//! Mock-form coefficients and Poincaré Fourier coefficients as truncated
//! Kloosterman–Bessel series.
//!
//! Conventions (validated numerically against the printed expansion of the
//! mock form and the value of β):
//!   a(n)   = -2π·11!·n^{-11/2} Σ_c K(-1, n, c)/c · I_11(4π√n/c),  n >= 1
//!   β      = 1 + 2π Σ_c K(1, 1, c)/c · J_11(4π/c)
//!   S_m(n) = 2π Σ_c K(m, n, c)/c · J_11(4π√(mn)/c)
//! The shadow coefficient δ_{mn} + S_m(n) is, up to the (n/m)^{11/2}
//! normalization, the n-th Fourier coefficient of the weight-12 cuspidal
//! Poincaré series the shadow of the weight -10 series is proportional to;
//! including the diagonal term makes r(n) = (δ+S_1(n))·n^{11/2}/τ(n)
//! exactly constant (= β) across n.

use super::kloosterman::{sum_kloosterman_series, KloostermanJob, SeriesSum};
use super::real::Real;
use super::special::{bessel_i, bessel_j, factorial};
use crate::error::{Error, Result};
use crate::heckepoly::FACTORIAL_11;
use crate::qseries::{BigRat, PrecisionContext};

pub use crate::heckepoly::a_delta_0;

/// 4π√(mn) at the given precision.
fn four_pi_sqrt(m: i64, n: i64, bits: usize) -> Real {
    Real::pi(bits)
        .mul_i64(4)
        .mul(&Real::from_i64(m, bits).mul_i64(n).sqrt())
}

/// n^{11/2} = n^5 √n.
fn pow_11_half(n: i64, bits: usize) -> Real {
    let x = Real::from_i64(n, bits);
    x.powi(5).mul(&x.sqrt())
}

fn positive(name: &str, v: i64) -> Result<()> {
    if v < 1 {
        return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
    }
    Ok(())
}

/// Scale a raw series sum and its tail estimate by |s|.
fn scaled(sum: SeriesSum, s: &Real) -> SeriesSum {
    SeriesSum {
        value: sum.value.mul(s),
        tail_estimate: sum.tail_estimate.mul(&s.abs()),
        c_max: sum.c_max,
    }
}

/// The holomorphic mock coefficient a(n) for n >= 1, truncated at the
/// context's c_max.
pub fn a_delta(n: i64, ctx: &PrecisionContext) -> Result<SeriesSum> {
    Ok(a_delta_batch(&[n], ctx)?.pop().expect("single job"))
}

/// Several a(n) in one ascending pass over c.
pub fn a_delta_batch(ns: &[i64], ctx: &PrecisionContext) -> Result<Vec<SeriesSum>> {
    let bits = ctx.mantissa_bits();
    for &n in ns {
        positive("coefficient index", n)?;
    }
    let jobs: Vec<KloostermanJob> = ns.iter().map(|&n| KloostermanJob { m: -1, n }).collect();
    let work = bits + 64;
    let args: Vec<Real> = ns.iter().map(|&n| four_pi_sqrt(1, n, work)).collect();
    let sums = sum_kloosterman_series(&jobs, ctx.c_max, bits, |i, c| {
        bessel_i(11, &args[i].div_i64(c as i64)).div_i64(c as i64)
    });
    let prefix_base = Real::pi(bits).mul_i64(-2).mul_i64(FACTORIAL_11);
    Ok(sums
        .into_iter()
        .zip(ns)
        .map(|(sum, &n)| scaled(sum, &prefix_base.div(&pow_11_half(n, bits))))
        .collect())
}

/// The exact constant coefficient a(0) = 24·11!/B_12 as a rational.
pub fn a_delta_exact_zero() -> BigRat {
    a_delta_0()
}

/// β = 1 + S_1(1), the q-coefficient of the normalized weight-12 cuspidal
/// Poincaré series.
pub fn beta_delta(ctx: &PrecisionContext) -> Result<SeriesSum> {
    let s = kloosterman_bessel_j_sum(1, 1, ctx)?;
    let bits = ctx.mantissa_bits();
    Ok(SeriesSum {
        value: s.value.add(&Real::one(bits)),
        tail_estimate: s.tail_estimate,
        c_max: s.c_max,
    })
}

/// S_m(n) = 2π Σ_c K(m, n, c)/c · J_11(4π√(mn)/c), the off-diagonal part of
/// the shadow coefficient.
pub fn kloosterman_bessel_j_sum(m: i64, n: i64, ctx: &PrecisionContext) -> Result<SeriesSum> {
    Ok(shadow_batch(m, &[n], ctx)?.pop().expect("single job").0)
}

fn shadow_batch(m: i64, ns: &[i64], ctx: &PrecisionContext) -> Result<Vec<(SeriesSum, SeriesSum)>> {
    let bits = ctx.mantissa_bits();
    positive("Poincaré index", m)?;
    for &n in ns {
        positive("coefficient index", n)?;
    }
    let jobs: Vec<KloostermanJob> = ns.iter().map(|&n| KloostermanJob { m, n }).collect();
    let work = bits + 64;
    let args: Vec<Real> = ns.iter().map(|&n| four_pi_sqrt(m, n, work)).collect();
    let sums = sum_kloosterman_series(&jobs, ctx.c_max, bits, |i, c| {
        bessel_j(11, &args[i].div_i64(c as i64)).div_i64(c as i64)
    });
    let two_pi = Real::pi(bits).mul_i64(2);
    Ok(sums
        .into_iter()
        .zip(ns)
        .map(|(raw, &n)| {
            let s = scaled(raw, &two_pi);
            let mut shadow = s.clone();
            if n == m {
                shadow.value = shadow.value.add(&Real::one(bits));
            }
            (s, shadow)
        })
        .collect())
}

/// The shadow coefficient δ_{mn} + S_m(n).
pub fn shadow_coefficient(m: i64, n: i64, ctx: &PrecisionContext) -> Result<SeriesSum> {
    Ok(shadow_batch(m, &[n], ctx)?.pop().expect("single job").1)
}

/// Shadow coefficients δ_{mn} + S_m(n) for n = 1..=n_max in one pass.
pub fn shadow_coefficients(m: i64, n_max: i64, ctx: &PrecisionContext) -> Result<Vec<SeriesSum>> {
    let ns: Vec<i64> = (1..=n_max).collect();
    Ok(shadow_batch(m, &ns, ctx)?.into_iter().map(|(_, s)| s).collect())
}

fn require_weight(k: i32) -> Result<()> {
    if k != -10 {
        return Err(Error::InvalidArgument(format!(
            "only weight -10 is supported here, got {k}"
        )));
    }
    Ok(())
}

/// c⁺(n): the unit-normalized holomorphic Fourier coefficient of the weight
/// -10 Maass–Poincaré series of index -m, for n >= 1:
/// c⁺(n) = -2π (m/n)^{11/2} Σ_c K(-m, n, c)/c · I_11(4π√(mn)/c).
/// Multiplying by 11! at m = 1 recovers a(n).
pub fn holo_coefficient_p(k: i32, m: i64, n: i64, ctx: &PrecisionContext) -> Result<SeriesSum> {
    require_weight(k)?;
    Ok(holo_coefficients_p(k, m, &[n], ctx)?.pop().expect("single job"))
}

/// Batched c⁺(n) over several n.
pub fn holo_coefficients_p(k: i32, m: i64, ns: &[i64], ctx: &PrecisionContext) -> Result<Vec<SeriesSum>> {
    require_weight(k)?;
    positive("Poincaré index", m)?;
    let bits = ctx.mantissa_bits();
    for &n in ns {
        positive("coefficient index", n)?;
    }
    let jobs: Vec<KloostermanJob> = ns.iter().map(|&n| KloostermanJob { m: -m, n }).collect();
    let work = bits + 64;
    let args: Vec<Real> = ns.iter().map(|&n| four_pi_sqrt(m, n, work)).collect();
    let sums = sum_kloosterman_series(&jobs, ctx.c_max, bits, |i, c| {
        bessel_i(11, &args[i].div_i64(c as i64)).div_i64(c as i64)
    });
    let m_half = pow_11_half(m, bits);
    let minus_two_pi = Real::pi(bits).mul_i64(-2);
    Ok(sums
        .into_iter()
        .zip(ns)
        .map(|(raw, &n)| scaled(raw, &minus_two_pi.mul(&m_half).div(&pow_11_half(n, bits))))
        .collect())
}

/// K(±m, 0, c) is the Ramanujan sum Σ_{d | (m,c)} d·μ(c/d), computed
/// exactly in integers.
fn ramanujan_sum(m: i64, c: u32, moebius: &[i8]) -> i64 {
    let m = m.unsigned_abs();
    let c = c as u64;
    let mut acc = 0i64;
    let mut d = 1u64;
    while d * d <= c {
        if c % d == 0 {
            for dd in [d, c / d] {
                if m % dd == 0 {
                    acc += dd as i64 * moebius[(c / dd) as usize] as i64;
                }
                if c / d == d {
                    break;
                }
            }
        }
        d += 1;
    }
    acc
}

fn moebius_sieve(up_to: u32) -> Vec<i8> {
    let n = up_to as usize;
    let mut mu = vec![1i8; n + 1];
    let mut is_composite = vec![false; n + 1];
    let mut primes = Vec::new();
    if n >= 1 {
        mu[0] = 0;
    }
    for i in 2..=n {
        if !is_composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            is_composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu
}

/// The constant term of the 11!·normalized weight -10 Poincaré series of
/// index -m: -(2π)^{12} m^{11} Σ_c K(-m, 0, c)/c^{12}. Equals a(0)·σ_11(m).
pub fn constant_term_p(k: i32, m: i64, ctx: &PrecisionContext) -> Result<SeriesSum> {
    require_weight(k)?;
    positive("Poincaré index", m)?;
    let bits = ctx.mantissa_bits();
    let work = bits + 64;
    let mu = moebius_sieve(ctx.c_max);
    let mut total = super::real::Accumulator::new(work);
    let mut decade = super::real::Accumulator::new(work);
    let decade_start = (ctx.c_max / 10).max(1);
    for c in 1..=ctx.c_max {
        let r = ramanujan_sum(m, c, &mu);
        if r == 0 {
            continue;
        }
        let term = Real::from_i64(r, work).div(&Real::from_i64(c as i64, work).powi(12));
        total.add(&term);
        if c > decade_start {
            decade.add(&term);
        }
    }
    let prefix = Real::pi(bits)
        .mul_i64(2)
        .powi(12)
        .neg()
        .mul(&Real::from_i64(m, bits).powi(11));
    Ok(scaled(
        SeriesSum {
            value: total.value(),
            tail_estimate: decade.value().abs().mul_i64(2),
            c_max: ctx.c_max,
        },
        &prefix,
    ))
}

/// Exact τ(m) lifted to the working precision.
pub fn tau_real(m: i64, ctx: &PrecisionContext) -> Result<Real> {
    let t = crate::qseries::tau(m, ctx)?;
    Ok(Real::from_bigint(&t, ctx.mantissa_bits()))
}

/// 11! at the working precision.
pub fn factorial_11(bits: usize) -> Real {
    factorial(11, bits)
}

/// Exact n^{11/2}/τ(n) ratio witness r(n) = (δ_{1n} + S_1(n))·n^{11/2}/τ(n).
pub fn shadow_proportionality_ratio(n: i64, ctx: &PrecisionContext) -> Result<(Real, Real)> {
    let s = shadow_coefficient(1, n, ctx)?;
    let bits = ctx.mantissa_bits();
    let tau_n = Real::from_bigint(&crate::qseries::tau(n, ctx)?, bits);
    let scale = pow_11_half(n, bits).div(&tau_n);
    Ok((s.value.mul(&scale), s.tail_estimate.mul(&scale.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(c_max: u32) -> PrecisionContext {
        PrecisionContext::default().with_c_max(c_max)
    }

    #[test]
    fn a_delta_printed_decimals_at_moderate_cutoff() {
        // The printed digits converge long before c = 10^4; c = 400 is
        // already far past machine-double agreement.
        let c = ctx(400);
        let printed = [
            (1i64, -73562460235.68364f64),
            (2, -929026615019.11308),
            (3, -8982427958440.32917),
            (4, -71877619168847.70781),
        ];
        let sums = a_delta_batch(&[1, 2, 3, 4], &c).unwrap();
        for ((n, expected), sum) in printed.iter().zip(&sums) {
            let got = sum.value.to_f64();
            let rel = ((got - expected) / expected).abs();
            assert!(rel < 1e-9, "a({n}): got {got}, printed {expected}, rel {rel}");
        }
    }

    #[test]
    fn beta_delta_value() {
        let b = beta_delta(&ctx(400)).unwrap();
        assert!((b.value.to_f64() - 2.840287).abs() < 2e-6, "beta = {}", b.value.to_f64());
    }

    #[test]
    fn beta_is_shadow_coefficient_diagonal() {
        let c = ctx(200);
        let b = beta_delta(&c).unwrap();
        let s = shadow_coefficient(1, 1, &c).unwrap();
        assert!(b.value.sub(&s.value).abs().to_f64() < 1e-40);
    }

    #[test]
    fn constant_term_matches_exact_rational() {
        let c = ctx(2_000);
        let got = constant_term_p(-10, 1, &c).unwrap();
        let exact = Real::from_rat(&a_delta_0(), got.value.bits());
        let rel = got.value.sub(&exact).abs().div(&exact.abs()).to_f64();
        assert!(rel < 1e-3, "rel = {rel}");
        // ratio over m reproduces sigma_11
        let g2 = constant_term_p(-10, 2, &c).unwrap();
        let ratio = g2.value.div(&got.value).to_f64();
        assert!((ratio - 2049.0).abs() < 0.5, "ratio {ratio}");
        assert!(constant_term_p(2, 1, &c).is_err());
    }

    #[test]
    fn holo_coefficient_recovers_a_delta_at_index_one() {
        let c = ctx(400);
        let a1 = a_delta(1, &c).unwrap();
        let cp = holo_coefficient_p(-10, 1, 1, &c).unwrap();
        let scaled = cp.value.mul(&factorial_11(cp.value.bits()));
        let rel = scaled.sub(&a1.value).abs().div(&a1.value.abs()).to_f64();
        assert!(rel < 1e-30, "rel = {rel}");
    }

    #[test]
    fn shadow_proportionality_constant() {
        let c = ctx(600);
        let (r1, e1) = shadow_proportionality_ratio(1, &c).unwrap();
        for n in 2..=4 {
            let (rn, en) = shadow_proportionality_ratio(n, &c).unwrap();
            let diff = rn.sub(&r1).abs().to_f64();
            let budget = e1.abs().to_f64() + en.abs().to_f64() + 1e-6;
            assert!(diff < budget, "n={n}: diff {diff} budget {budget}");
        }
        assert!((r1.to_f64() - 2.840287).abs() < 1e-4);
    }

    #[test]
    fn nonholomorphic_hecke_eigenvector_property() {
        // The c⁻-array of the index-1 series is an eigenvector of the
        // combinatorial weight -10 Hecke action: applying
        // Σ_{d|(m,n)} d^{-11} c⁻(-mn/d²) and scaling by m^11 reproduces the
        // index-m array, coefficientwise within truncation error.
        let c = ctx(300);
        let bits = c.mantissa_bits();
        let pow_5_5 = |k: i64| {
            let x = Real::from_i64(k, bits);
            x.powi(5).mul(&x.sqrt())
        };
        // c̃⁻ of the index-r series at q^{-n}, with its tail estimate
        let c_minus = |r: i64, n: i64| {
            let s = shadow_coefficient(r, n, &c).unwrap();
            let scale = pow_5_5(r).div(&pow_5_5(n)).mul_i64(-11);
            (s.value.mul(&scale), s.tail_estimate.mul(&scale.abs()))
        };
        for m in [2i64, 3] {
            for n in 1..=3i64 {
                let mut image = Real::zero(bits);
                let mut err = Real::zero(bits);
                for d in 1..=m.min(n) {
                    if m % d == 0 && n % d == 0 {
                        let (v, e) = c_minus(1, m * n / (d * d));
                        let w = Real::from_i64(m, bits)
                            .powi(11)
                            .div(&Real::from_i64(d, bits).powi(11));
                        image = image.add(&v.mul(&w));
                        err = err.add(&e.mul(&w.abs()));
                    }
                }
                let (expected, e2) = c_minus(m, n);
                let diff = image.sub(&expected).abs().to_f64();
                let budget = err.to_f64() + e2.to_f64() + 1e-10;
                assert!(diff < budget, "m={m}, n={n}: diff {diff:.3e} budget {budget:.3e}");
            }
        }
    }

    #[test]
    fn doubling_c_max_stays_within_tail_estimate() {
        let small = a_delta(2, &ctx(150)).unwrap();
        let large = a_delta(2, &ctx(300)).unwrap();
        let shift = small.value.sub(&large.value).abs().to_f64();
        let budget = small.tail_estimate.to_f64() + large.tail_estimate.to_f64();
        assert!(shift <= budget.max(1e-20), "shift {shift} budget {budget}");
    }
}
