//! The monic degree-m integer polynomials F_m attached to the weight -10
//! mock modular form with shadow proportional to Δ.
//!
//! Two independent constructions are kept side by side: the closed formula
//! in terms of the Faber polynomials ψ_l (the production path, pure integer
//! arithmetic), and the proof-route expansion of the Hecke image of the
//! mock form against the modular-function basis, which is divided by 11!
//! at the very end. Publishing a polynomial requires the two to agree.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::faber::faber_psi_list;
use crate::poly::{IntPoly, RatPoly};
use crate::qseries::{bernoulli, sigma, tau, BigRat, PrecisionContext};

/// 11! — the principal-part coefficient of the mock form.
pub const FACTORIAL_11: i64 = 39_916_800;

/// The exact constant term 24·11!/B_12 = -2615348736000/691.
pub fn a_delta_0() -> BigRat {
    let b12 = bernoulli(12).expect("B_12");
    BigRat::from_integer(BigInt::from(24i64 * FACTORIAL_11)) / b12
}

fn require_index(m: i64, ctx: &PrecisionContext) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "Hecke polynomial index must be at least 2, got {m}"
        )));
    }
    if ctx.series_order <= m {
        return Err(Error::InsufficientTruncation {
            required: m + 1,
            available: ctx.series_order,
        });
    }
    Ok(())
}

/// F_m by the closed formula
/// F_m = ψ_m + 247944τ(m)/691 - 65520σ_11(m)/691 - 264σ_9(m)
///       - 264 Σ_{l=1}^{m-2} σ_9(l) ψ_{m-l} - (τ(m) + 264σ_9(m-1)) ψ_1,
/// with the empty sum convention at m = 2.
pub fn hecke_poly_f(m: i64, ctx: &PrecisionContext) -> Result<IntPoly> {
    require_index(m, ctx)?;
    let psi = faber_psi_list(m as u32, ctx)?;
    hecke_poly_f_with(m, ctx, &psi)
}

/// Closed-formula route against a shared ψ-cache (read-only after warmup).
pub fn hecke_poly_f_with(m: i64, ctx: &PrecisionContext, psi: &[IntPoly]) -> Result<IntPoly> {
    require_index(m, ctx)?;
    let tau_m = tau(m, ctx)?;
    let sigma11 = sigma(11, m)?;
    let sigma9_m = sigma(9, m)?;
    let sigma9_m1 = sigma(9, m - 1)?;

    // The two rational terms combine to an integer by the 691-congruence.
    let rational = (BigRat::from_integer(BigInt::from(247_944) * &tau_m)
        - BigRat::from_integer(BigInt::from(65_520) * &sigma11))
        / BigRat::from_integer(BigInt::from(691));
    if !rational.denom().is_one() {
        return Err(Error::Internal(format!(
            "constant term of F_{m} is not integral: {rational}"
        )));
    }
    let mut constant = rational.numer().clone();
    constant -= BigInt::from(264) * sigma9_m;

    let mut f = psi[m as usize].add(&IntPoly::new(vec![constant]));
    for l in 1..=(m - 2) {
        let s9 = sigma(9, l)?;
        f = f.sub(&psi[(m - l) as usize].scale(&(BigInt::from(264) * s9)));
    }
    let psi1_factor = &tau_m + BigInt::from(264) * sigma9_m1;
    f = f.sub(&psi[1].scale(&psi1_factor));
    Ok(f)
}

/// The principal part and constant term of m^11 · (mock form | T_{-10}(m)),
/// with the mock coefficients kept symbolic: the value at exponent n is
/// coefA1 · a(-1) + coefA0 · a(0).
///
/// Only indices mn/d² ∈ {-1, 0} survive, reproducing the divisor analysis:
/// the q^{-m} term with coefficient a(-1) and the constant a(0)·σ_11(m).
pub fn hecke_image_m_delta_symbolic(m: i64) -> Result<BTreeMap<i64, (BigRat, BigRat)>> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!("Hecke index must be positive, got {m}")));
    }
    let mut out: BTreeMap<i64, (BigRat, BigRat)> = BTreeMap::new();
    let m11 = BigInt::from(m).pow(11);
    for n in -m..=0 {
        for d in 1..=m {
            if m % d != 0 || (n != 0 && n.abs() % d != 0) {
                continue;
            }
            let idx_num = m * n;
            let d2 = d * d;
            if idx_num % d2 != 0 {
                continue;
            }
            let idx = idx_num / d2;
            if idx != -1 && idx != 0 {
                continue;
            }
            let weight = BigRat::new(m11.clone(), BigInt::from(d).pow(11));
            let entry = out
                .entry(n)
                .or_insert_with(|| (BigRat::zero(), BigRat::zero()));
            if idx == -1 {
                entry.0 += weight;
            } else {
                entry.1 += weight;
            }
        }
    }
    out.retain(|_, (a, b)| !a.is_zero() || !b.is_zero());
    Ok(out)
}

/// F_m by the proof-route basis expansion: multiplying the principal part
/// and constant of m^11 (M | T_{-10}(m)) - τ(m) M by
/// E_10 = 1 - 264 Σ σ_9(n) q^n and expanding against the ψ-basis gives
/// 11!·F_m = a(-1)(ψ_m - 264 Σ_{l=1}^{m} σ_9(l) ψ_{m-l})
///           + a(0)σ_11(m) - τ(m)(a(-1)ψ_1 - 264·a(-1) + a(0)),
/// evaluated with a(-1) = 11! and a(0) = 24·11!/B_12, then divided by 11!.
pub fn hecke_poly_f_oracle(m: i64, ctx: &PrecisionContext) -> Result<IntPoly> {
    require_index(m, ctx)?;
    let psi = faber_psi_list(m as u32, ctx)?;
    hecke_poly_f_oracle_with(m, ctx, &psi)
}

/// Oracle route against a shared ψ-cache (read-only after warmup).
pub fn hecke_poly_f_oracle_with(m: i64, ctx: &PrecisionContext, psi: &[IntPoly]) -> Result<IntPoly> {
    require_index(m, ctx)?;
    let tau_m = BigRat::from_integer(tau(m, ctx)?);
    let sigma11 = BigRat::from_integer(sigma(11, m)?);

    // Coefficient polynomials of the symbols a(-1) and a(0).
    let mut poly_a1 = psi[m as usize].to_rat();
    for l in 1..=m {
        let s9 = BigRat::from_integer(BigInt::from(264) * sigma(9, l)?);
        poly_a1 = poly_a1.sub(&psi[(m - l) as usize].to_rat().scale(&s9));
    }
    poly_a1 = poly_a1.sub(&psi[1].to_rat().scale(&tau_m));
    poly_a1 = poly_a1.add(&RatPoly::new(vec![BigRat::from_integer(BigInt::from(264)) * &tau_m]));
    let scalar_a0 = sigma11 - &tau_m;

    let a1 = BigRat::from_integer(BigInt::from(FACTORIAL_11));
    let a0 = a_delta_0();
    let combined = poly_a1
        .scale(&a1)
        .add(&RatPoly::new(vec![a0 * scalar_a0]))
        .scale(&a1.recip());
    combined.to_int().map_err(|_| {
        Error::Internal(format!("proof-route F_{m} has non-integral coefficients"))
    })
}

/// Exact witness for the 691-divisibility making F_m integral:
/// 247944·τ(m) - 65520·σ_11(m) ≡ 0 (mod 691).
pub fn integrality_witness(m: i64, ctx: &PrecisionContext) -> Result<(BigInt, bool)> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "integrality witness needs m >= 2, got {m}"
        )));
    }
    let numerator = BigInt::from(247_944) * tau(m, ctx)? - BigInt::from(65_520) * sigma(11, m)?;
    let divisible = (&numerator % BigInt::from(691)).is_zero();
    Ok((numerator, divisible))
}

/// Construction record pairing both routes to F_m.
#[derive(Debug, Clone)]
pub struct HeckePolyReport {
    pub m: i64,
    pub poly: IntPoly,
    pub oracle_poly: IntPoly,
    pub agree: bool,
    /// (F_m(0) = 0, F_m(1728) = 0)
    pub endpoint_zeros: (bool, bool),
}

pub fn hecke_poly_report(m: i64, ctx: &PrecisionContext) -> Result<HeckePolyReport> {
    require_index(m, ctx)?;
    let psi = faber_psi_list(m as u32, ctx)?;
    hecke_poly_report_with(m, ctx, &psi)
}

/// Both construction routes against a shared ψ-cache.
pub fn hecke_poly_report_with(
    m: i64,
    ctx: &PrecisionContext,
    psi: &[IntPoly],
) -> Result<HeckePolyReport> {
    let poly = hecke_poly_f_with(m, ctx, psi)?;
    let oracle_poly = hecke_poly_f_oracle_with(m, ctx, psi)?;
    let agree = poly == oracle_poly;
    let at_zero = poly.coeff(0).is_zero();
    let at_arc_end = poly.eval_int(&BigInt::from(1728)).is_zero();
    Ok(HeckePolyReport {
        m,
        poly,
        oracle_poly,
        agree,
        endpoint_zeros: (at_zero, at_arc_end),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::faber::{evaluate_int_poly_at_series, faber_psi};
    use crate::qseries::{eisenstein, jfunction, rat, QSeries};

    fn ctx() -> PrecisionContext {
        PrecisionContext::default().with_series_order(40)
    }

    fn expected_f(m: i64) -> IntPoly {
        // Factorizations printed for 2 <= m <= 5.
        let x = IntPoly::from_i64(&[0, 1]);
        let x_minus = IntPoly::from_i64(&[-1728, 1]);
        match m {
            2 => x.mul(&x_minus),
            3 => x.mul(&IntPoly::from_i64(&[-768, 1])).mul(&x_minus),
            4 => x.mul(&IntPoly::from_i64(&[374760, -1512, 1])).mul(&x_minus),
            5 => x
                .mul(&IntPoly::from_i64(&[-149109760, 1302804, -2256, 1]))
                .mul(&x_minus),
            _ => panic!("no printed form for m={m}"),
        }
    }

    #[test]
    fn printed_examples() {
        let c = ctx();
        for m in 2..=5 {
            assert_eq!(hecke_poly_f(m, &c).unwrap(), expected_f(m), "F_{m}");
        }
    }

    #[test]
    fn oracle_route_agrees() {
        let c = ctx();
        for m in 2..=16 {
            let report = hecke_poly_report(m, &c).unwrap();
            assert!(report.agree, "routes disagree at m={m}");
            assert!(report.poly.is_monic());
            assert_eq!(report.poly.degree(), m as usize);
            assert_eq!(report.endpoint_zeros, (true, true));
        }
    }

    #[test]
    fn m_below_two_rejected() {
        let c = ctx();
        assert!(hecke_poly_f(1, &c).is_err());
        assert!(hecke_poly_f_oracle(0, &c).is_err());
    }

    #[test]
    fn symbolic_hecke_image() {
        let two = hecke_image_m_delta_symbolic(2).unwrap();
        assert_eq!(two[&-2], (rat(1), rat(0)));
        assert_eq!(two[&0], (rat(0), rat(2049)));
        assert!(!two.contains_key(&-1));

        let three = hecke_image_m_delta_symbolic(3).unwrap();
        assert_eq!(three[&-3], (rat(1), rat(0)));
        assert_eq!(three[&0], (rat(0), rat(177148)));

        let one = hecke_image_m_delta_symbolic(1).unwrap();
        assert_eq!(one[&-1], (rat(1), rat(0)));
        assert_eq!(one[&0], (rat(0), rat(1)));
    }

    #[test]
    fn integrality_witness_examples() {
        let c = ctx();
        let (num, ok) = integrality_witness(2, &c).unwrap();
        assert_eq!(num, BigInt::from(-140201136i64));
        assert!(ok);
        assert_eq!(num / BigInt::from(691), BigInt::from(-202896));
        assert!(integrality_witness(3, &c).unwrap().1);
    }

    #[test]
    fn integrality_witness_stress_691() {
        let c = PrecisionContext::default().with_series_order(700);
        assert!(integrality_witness(691, &c).unwrap().1);
    }

    #[test]
    fn q_expansion_consistency() {
        // E_10 · (m^11 M|T(m) - τ(m) M) / 11! matches F_m(j) on all
        // exponents <= 0, with the symbolic principal part substituted.
        let c = ctx();
        let j = jfunction(&c).unwrap();
        let e10 = eisenstein(10, &c).unwrap();
        let a1 = rat(FACTORIAL_11);
        let a0 = a_delta_0();
        for m in 2..=12i64 {
            let image = hecke_image_m_delta_symbolic(m).unwrap();
            let mut series = QSeries::zero(1);
            for (n, (ca1, ca0)) in &image {
                let value = ca1 * &a1 + ca0 * &a0;
                series = series.add(&QSeries::monomial(*n, value, 1));
            }
            // subtract τ(m)·(11! q^{-1} + a(0))
            let tau_m = BigRat::from_integer(tau(m, &c).unwrap());
            series = series.sub(&QSeries::monomial(-1, &tau_m * &a1, 1));
            series = series.sub(&QSeries::monomial(0, &tau_m * &a0, 1));
            let lhs = e10.mul(&series).scalar_mul(&a1.recip());

            let f = hecke_poly_f(m, &c).unwrap();
            let rhs = evaluate_int_poly_at_series(&f, &j).unwrap();
            for e in -m..=0 {
                assert_eq!(
                    lhs.coeff(e).unwrap(),
                    rhs.coeff(e).unwrap(),
                    "mismatch at q^{e} for m={m}"
                );
            }
        }
    }

    #[test]
    fn leading_coefficient_from_psi_m() {
        let c = ctx();
        let f = hecke_poly_f(9, &c).unwrap();
        let psi9 = faber_psi(9, &c).unwrap();
        assert_eq!(f.coeff(9), psi9.coeff(9));
        assert!(f.is_monic());
    }
}
