//! Special functions for the Kloosterman–Bessel layer: ascending-series
//! Bessel functions, truncated exponentials, the integer-order incomplete
//! gamma function, and the closed-form M-Whittaker function.

use super::real::{Accumulator, Real};

/// n! at the given precision.
pub fn factorial(n: u32, bits: usize) -> Real {
    let mut acc = Real::one(bits);
    for k in 2..=n as i64 {
        acc = acc.mul_i64(k);
    }
    acc
}

/// Shared ascending series Σ_j s^j (x/2)^{ν+2j} / (j! (ν+j)!) with s = ±1.
///
/// For the alternating J-series the partial sums cancel down from terms of
/// size ~e^x, so the summation runs at an internal precision enlarged by
/// ~x/ln 2 bits and rounds back at the end.
fn bessel_series(nu: u32, x: &Real, alternating: bool) -> Real {
    let bits = x.bits();
    debug_assert!(!x.is_negative(), "Bessel arguments here are nonnegative");
    if x.is_zero() {
        return Real::zero(bits);
    }
    let boost = if alternating {
        let xf = x.to_f64().min(1e6);
        (xf * std::f64::consts::LOG2_E).ceil() as usize + 32
    } else {
        32
    };
    let work = bits + boost;
    let half = x.with_bits(work).div_i64(2);
    let half_sq = half.mul(&half);
    let mut term = half.powi(nu as usize).div(&factorial(nu, work));
    let mut acc = Accumulator::new(work);
    acc.add(&term);
    let mut max_exp = term.exponent().unwrap_or(i32::MIN);
    let target = |e: i32| e - (work as i32) + 16;
    for j in 1i64..20_000 {
        term = term.mul(&half_sq).div_i64(j * (j + nu as i64));
        if alternating {
            term = term.neg();
        }
        acc.add(&term);
        let e = term.exponent().unwrap_or(i32::MIN);
        max_exp = max_exp.max(e);
        // Terms decay monotonically once 2j(j+ν) outgrows (x/2)²; stop when
        // the current term is far below the largest one seen.
        if e == i32::MIN || e < target(max_exp) {
            break;
        }
    }
    acc.value().with_bits(bits)
}

/// Modified Bessel function I_ν(x), ν a nonnegative integer, x >= 0.
pub fn bessel_i(nu: u32, x: &Real) -> Real {
    bessel_series(nu, x, false)
}

/// Bessel function J_ν(x), ν a nonnegative integer, x >= 0.
pub fn bessel_j(nu: u32, x: &Real) -> Real {
    bessel_series(nu, x, true)
}

/// e_j(x) = Σ_{n=0}^{j} x^n/n!, the j-th Taylor approximation of e^x,
/// evaluated exactly to that order by Horner.
pub fn trunc_exp(j: u32, x: &Real) -> Real {
    let bits = x.bits();
    let mut acc = Real::one(bits);
    for n in (1..=j as i64).rev() {
        acc = Real::one(bits).add(&acc.mul(x).div_i64(n));
    }
    acc
}

/// Γ(s, x) = (s-1)!·e^{-x}·e_{s-1}(x) for integer s >= 1 and x >= 0.
pub fn incomplete_gamma(s: u32, x: &Real) -> Real {
    assert!(s >= 1, "incomplete gamma needs s >= 1");
    let bits = x.bits();
    factorial(s - 1, bits)
        .mul(&x.neg().exp())
        .mul(&trunc_exp(s - 1, x))
}

/// M_{κ,κ+1/2}(x) = (2κ+1)!·(e^{x/2} - e^{-x/2} e_{2κ}(x))/x^κ for x > 0,
/// extended by 0 at x = 0.
///
/// Below x = 1 the numerator cancels catastrophically, so the tail series
/// (2κ+1)!·e^{-x/2}·Σ_{n >= 2κ+1} x^{n-κ}/n! is used instead.
pub fn whittaker_m(kappa: u32, x: &Real) -> Real {
    let bits = x.bits();
    if x.is_zero() {
        return Real::zero(bits);
    }
    debug_assert!(x.is_positive());
    let fact = factorial(2 * kappa + 1, bits);
    if x.cmp_real(&Real::one(bits)) == std::cmp::Ordering::Less {
        let mut term = x.powi(kappa as usize + 1).div(&fact);
        let mut acc = Accumulator::new(bits);
        acc.add(&term);
        for n in (2 * kappa as i64 + 2)..20_000 {
            term = term.mul(x).div_i64(n);
            acc.add(&term);
            if term.exponent().unwrap_or(i32::MIN)
                < acc.value().exponent().unwrap_or(0) - bits as i32 - 16
            {
                break;
            }
        }
        return fact.mul(&x.div_i64(2).neg().exp()).mul(&acc.value());
    }
    let half = x.div_i64(2);
    let diff = half.exp().sub(&half.neg().exp().mul(&trunc_exp(2 * kappa, x)));
    fact.mul(&diff).div(&x.powi(kappa as usize))
}
