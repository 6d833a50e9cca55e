//! The bijection between roots x in [0, 1728] and arc angles θ in
//! [π/3, π/2] with j(e^{iθ}) = x.
//!
//! On the arc |q| = e^{-2π sin θ} <= e^{-π√3} ≈ 0.0043, so a short exact
//! prefix of the j-expansion evaluates j to far below the root tolerance;
//! j is real-valued there and strictly increasing in θ.

use crate::analytic::{Complex, Real};
use crate::error::{Error, Result};
use crate::qseries::{jfunction, BigRat, PrecisionContext};

/// Exact q-coefficients of j, converted once to the working precision.
pub struct ArcEvaluator {
    coeffs: Vec<Real>, // coefficient of q^n at index n; starts at n = 0
    bits: usize,
}

/// Series terms kept for arc evaluation: the tail beyond 48 terms is below
/// 10^{-75} on the whole arc.
const ARC_TERMS: i64 = 48;

impl ArcEvaluator {
    pub fn new(ctx: &PrecisionContext) -> Result<Self> {
        let bits = ctx.mantissa_bits();
        let order = ARC_TERMS.max(ctx.series_order.min(96));
        let j = jfunction(&PrecisionContext::default().with_series_order(order + 2))?;
        let mut coeffs = Vec::with_capacity(order as usize);
        for n in 0..order {
            coeffs.push(Real::from_rat(&j.coeff(n)?, bits));
        }
        Ok(Self { coeffs, bits })
    }

    /// j(e^{iθ}) for θ in [π/3, π/2]; the value is real.
    pub fn eval(&self, theta: &Real) -> Real {
        let bits = self.bits;
        let theta = theta.with_bits(bits);
        let two_pi = Real::pi(bits).mul_i64(2);
        let q_abs = two_pi.mul(&theta.sin()).neg().exp();
        let q = Complex::from_polar(&q_abs, &two_pi.mul(&theta.cos()));
        let mut acc = q.recip();
        let mut q_pow = Complex::from_real(Real::one(bits));
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                q_pow = q_pow.mul(&q);
            }
            acc = acc.add(&q_pow.scale(c));
        }
        acc.re
    }

    /// The unique θ in [π/3, π/2] with j(e^{iθ}) = x, by bisection to the
    /// context's tolerance.
    pub fn angle_of(&self, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
        let bits = self.bits;
        let zero = Real::zero(bits);
        let top = Real::from_i64(1728, bits);
        let x = x.with_bits(bits);
        if x.cmp_real(&zero) == std::cmp::Ordering::Less
            || x.cmp_real(&top) == std::cmp::Ordering::Greater
        {
            return Err(Error::OutOfRange(x.to_decimal(8), "[0, 1728]".into()));
        }
        let pi = Real::pi(bits);
        let mut lo = pi.div_i64(3);
        let mut hi = pi.div_i64(2);
        let tol = Real::from_rat(&ctx.root_tol, bits);
        while hi.sub(&lo).cmp_real(&tol) == std::cmp::Ordering::Greater {
            let mid = lo.add(&hi).div_i64(2);
            if self.eval(&mid).cmp_real(&x) == std::cmp::Ordering::Less {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo.add(&hi).div_i64(2))
    }
}

/// Standalone θ-recovery for a root value.
pub fn angle_of_root(x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    ArcEvaluator::new(ctx)?.angle_of(x, ctx)
}

/// A rational approximation with about `digits` significant decimal digits.
pub fn real_to_rational(x: &Real, digits: u32) -> BigRat {
    let s = x.to_decimal(digits as usize + 5);
    crate::qseries::rat_from_decimal_str(&s).expect("own decimal rendering parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn arc_endpoints() {
        let c = ctx();
        let arc = ArcEvaluator::new(&c).unwrap();
        let bits = c.mantissa_bits();
        let pi = Real::pi(bits);
        let at_omega = arc.eval(&pi.div_i64(3));
        assert!(at_omega.abs().to_f64() < 1e-40, "j(ω) = {}", at_omega.to_f64());
        let at_i = arc.eval(&pi.div_i64(2));
        assert!(
            at_i.sub(&Real::from_i64(1728, bits)).abs().to_f64() < 1e-40,
            "j(i) = {}",
            at_i.to_f64()
        );
    }

    #[test]
    fn angle_round_trip() {
        let c = ctx();
        let arc = ArcEvaluator::new(&c).unwrap();
        let bits = c.mantissa_bits();
        for &x in &[0.0f64, 100.0, 768.0, 1200.0, 1728.0] {
            let theta = arc.angle_of(&Real::from_f64(x, bits), &c).unwrap();
            let back = arc.eval(&theta).to_f64();
            assert!((back - x).abs() < 1e-20, "x={x}: round trip {back}");
        }
        assert!(arc.angle_of(&Real::from_i64(-1, bits), &c).is_err());
        assert!(arc.angle_of(&Real::from_i64(1729, bits), &c).is_err());
    }

    #[test]
    fn angle_is_monotone() {
        let c = ctx();
        let arc = ArcEvaluator::new(&c).unwrap();
        let bits = c.mantissa_bits();
        let mut last = arc.angle_of(&Real::from_i64(0, bits), &c).unwrap();
        for x in [10i64, 300, 900, 1500, 1728] {
            let theta = arc.angle_of(&Real::from_i64(x, bits), &c).unwrap();
            assert!(theta.cmp_real(&last) == std::cmp::Ordering::Greater);
            last = theta;
        }
    }

    #[test]
    fn rationalization() {
        let bits = 224;
        let x = Real::from_f64(0.125, bits);
        let r = real_to_rational(&x, 10);
        assert_eq!(r, BigRat::new(BigInt::one(), BigInt::from(8)));
    }
}
