//! Certified numeric constants used by the arc estimates: the Epstein zeta
//! value of the hexagonal form and the exact Deligne bound on τ.

use num_bigint::BigInt;
use num_traits::Zero;

use super::real::{Accumulator, Real};
use crate::error::{Error, Result};
use crate::qseries::{sigma, tau_values, PrecisionContext};

/// Partial lattice sum Σ_{(c,d) ≠ (0,0)} (c² + cd + d²)^{-6} over the square
/// max(|c|,|d|) <= cutoff, together with an integral tail bound.
///
/// The quadratic form satisfies c² + cd + d² >= (3/4)·max(c,d)², and the
/// ring at radius r holds 8r lattice points, so the tail beyond R is at most
/// 8·(4/3)^6 Σ_{r>R} r^{-11} <= 8·(4/3)^6/(10 R^{10}).
pub fn epstein_zeta_6(cutoff: u32, bits: usize) -> Result<(Real, Real)> {
    if cutoff < 10 {
        return Err(Error::InvalidArgument(format!(
            "cutoff must be at least 10, got {cutoff}"
        )));
    }
    let work = bits + 32;
    let mut acc = Accumulator::new(bits);
    for r in 1..=cutoff as i64 {
        // ring of points with max(|c|,|d|) = r, fixed enumeration order
        let mut ring = Accumulator::new(work);
        let mut push = |c: i64, d: i64| {
            let q = c * c + c * d + d * d;
            debug_assert!(q > 0);
            ring.add(&Real::one(work).div(&Real::from_i64(q, work).powi(6)));
        };
        for d in -r..=r {
            push(r, d);
            push(-r, d);
        }
        for c in (-r + 1)..=(r - 1) {
            push(c, r);
            push(c, -r);
        }
        acc.add(&ring.value());
    }
    let tail = Real::from_f64(8.0 * (4.0f64 / 3.0).powi(6) / 10.0, bits)
        .div(&Real::from_u64(cutoff as u64, bits).powi(10));
    Ok((acc.value(), tail))
}

/// Exact verification of |τ(m)| <= σ_0(m)·m^{11/2} (squared to stay in Z)
/// and of the weaker |τ(m)| <= 2 m^6, for all m <= m_max.
pub fn deligne_check(m_max: i64, ctx: &PrecisionContext) -> Result<bool> {
    if m_max < 1 {
        return Err(Error::InvalidArgument(format!("m_max must be positive, got {m_max}")));
    }
    if m_max >= ctx.series_order {
        return Err(Error::InsufficientTruncation {
            required: m_max + 1,
            available: ctx.series_order,
        });
    }
    let taus = tau_values(m_max)?;
    for m in 1..=m_max {
        let t2 = (&taus[(m - 1) as usize]).pow(2);
        let s0 = sigma(0, m)?;
        let strong = &s0 * &s0 * BigInt::from(m).pow(11);
        let weak = BigInt::from(4) * BigInt::from(m).pow(12);
        if t2 > strong || t2 > weak {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact violation probe used by negative tests: reports the first m where
/// a corrupted bound |τ(m)|² <= bound·m^{11} fails.
pub fn first_deligne_violation(m_max: i64, fake_sigma: i64) -> Result<Option<i64>> {
    let taus = tau_values(m_max)?;
    for m in 1..=m_max {
        let t2 = (&taus[(m - 1) as usize]).pow(2);
        let bound = BigInt::from(fake_sigma * fake_sigma) * BigInt::from(m).pow(11);
        if t2 > bound && !t2.is_zero() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epstein_certifies_paper_interval() {
        let (value, tail) = epstein_zeta_6(100, 224).unwrap();
        let v = value.to_f64();
        let t = tail.to_f64();
        assert!(v > 6.0, "six norm-1 vectors alone give 6, got {v}");
        assert!(v + t <= 6.0099, "certified value {v} + {t}");
        assert!(epstein_zeta_6(5, 224).is_err());
    }

    #[test]
    fn epstein_cutoff_doubling_is_tiny() {
        let (a, _) = epstein_zeta_6(100, 224).unwrap();
        let (b, _) = epstein_zeta_6(200, 224).unwrap();
        assert!(a.sub(&b).abs().to_f64() < 1e-8);
    }

    #[test]
    fn deligne_up_to_63() {
        let ctx = PrecisionContext::default();
        assert!(deligne_check(63, &ctx).unwrap());
        assert!(deligne_check(64, &ctx).is_err()); // beyond truncation
    }

    #[test]
    fn corrupted_bound_is_detected() {
        // σ_0 replaced by 0 must fail immediately at m = 1 (τ(1) = 1).
        let hit = first_deligne_violation(10, 0).unwrap();
        assert_eq!(hit, Some(1));
    }
}
