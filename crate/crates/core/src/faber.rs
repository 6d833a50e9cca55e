//! Faber polynomials ψ_m of the j-function and the divisor-polynomial
//! machinery for level-1 holomorphic forms.
//!
//! ψ_m is the unique monic degree-m integer polynomial with
//! ψ_m(j(τ)) = q^{-m} + O(q). The primary construction is greedy reduction
//! of j^m against lower powers of j; the generating function
//! (E_4² E_6 / Δ)·(j - x)^{-1} = Σ ψ_m(x) q^m serves as an independent
//! oracle.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{IntPoly, RatPoly};
use crate::qseries::{delta, eisenstein, hecke_holomorphic, jfunction, BigRat, PrecisionContext, QSeries};

/// Powers j^0..j^max, each known at least below q^1, built once and shared.
fn j_powers(max: u32, order_hint: i64) -> Result<Vec<QSeries>> {
    let order = order_hint.max(max as i64 + 2);
    let ctx = PrecisionContext::default().with_series_order(order);
    let j = jfunction(&ctx)?;
    let mut powers = Vec::with_capacity(max as usize + 1);
    powers.push(QSeries::one(order));
    for e in 1..=max {
        powers.push(powers[(e - 1) as usize].mul(&j));
    }
    Ok(powers)
}

/// Greedy principal-part reduction of a weight-0 Laurent series against
/// powers of j. Returns the polynomial P with P(j) - s = O(q), or an error
/// if the residual has a nonzero computable coefficient at q^e, e >= 1.
fn reduce_in_j_basis(s: &QSeries, powers: &[QSeries]) -> Result<RatPoly> {
    let pole = (-s.valuation()).max(0) as usize;
    if pole >= powers.len() {
        return Err(Error::InsufficientTruncation {
            required: pole as i64 + 1,
            available: powers.len() as i64,
        });
    }
    let mut residual = s.clone();
    let mut coeffs = vec![BigRat::zero(); pole + 1];
    for e in (0..=pole).rev() {
        let c = residual.coeff(-(e as i64))?;
        if !c.is_zero() {
            residual = residual.sub(&powers[e].scalar_mul(&c));
            coeffs[e] = c;
        }
    }
    for (e, c) in residual.iter_terms() {
        if e >= 1 && !c.is_zero() {
            return Err(Error::NotPolynomialInJ {
                exponent: e,
                value: c.to_string(),
            });
        }
    }
    Ok(RatPoly::new(coeffs))
}

/// ψ_m by greedy reduction. Monic, degree m, integer coefficients.
pub fn faber_psi(m: u32, ctx: &PrecisionContext) -> Result<IntPoly> {
    Ok(faber_psi_list(m, ctx)?.pop().expect("nonempty"))
}

/// ψ_0, ..., ψ_m sharing one j-power cache.
///
/// ψ_d starts from j^d and subtracts c_e · j^e to kill the residual
/// coefficients at q^{-e} for e = d-1 down to 0, leaving q^{-d} + O(q);
/// the polynomial is x^d - Σ c_e x^e.
pub fn faber_psi_list(m: u32, ctx: &PrecisionContext) -> Result<Vec<IntPoly>> {
    let powers = j_powers(m, ctx.series_order)?;
    let mut list = Vec::with_capacity(m as usize + 1);
    for d in 0..=m as usize {
        let mut residual = powers[d].clone();
        let mut coeffs = vec![BigRat::zero(); d + 1];
        coeffs[d] = BigRat::one();
        for e in (0..d).rev() {
            let c = residual.coeff(-(e as i64))?;
            if !c.is_zero() {
                residual = residual.sub(&powers[e].scalar_mul(&c));
                coeffs[e] = -c;
            }
        }
        debug_assert_eq!(residual.coeff(-(d as i64)).expect("principal term"), BigRat::one());
        list.push(RatPoly::new(coeffs).to_int()?);
    }
    Ok(list)
}

/// ψ_0, ..., ψ_m_max extracted from the two-variable generating function
/// (E_4² E_6 / Δ) · (j(τ) - x)^{-1} = Σ_m ψ_m(x) q^m.
///
/// The inner inverse is computed as q·U^{-1} where
/// U = 1 + (744 - x) q + c(1) q² + ... is a unit power series over Z[x].
pub fn faber_via_generating(m_max: u32, ctx: &PrecisionContext) -> Result<Vec<IntPoly>> {
    if ctx.series_order <= m_max as i64 {
        return Err(Error::InsufficientTruncation {
            required: m_max as i64 + 1,
            available: ctx.series_order,
        });
    }
    let order = m_max as i64 + 3;
    let local = PrecisionContext::default().with_series_order(order);
    let j = jfunction(&local)?;
    let e4 = eisenstein(4, &local)?;
    let e6 = eisenstein(6, &local)?;
    let weight10 = e4.pow(2).mul(&e6);
    let a = weight10.mul(&delta(&local)?.inv()?); // valuation -1, integral

    let terms = m_max as usize + 1;
    // U coefficients as integer polynomials in x.
    let mut u: Vec<IntPoly> = Vec::with_capacity(terms);
    u.push(IntPoly::constant(1));
    if terms > 1 {
        u.push(IntPoly::new(vec![BigInt::from(744), BigInt::from(-1)]));
    }
    for i in 2..terms {
        let c = j.coeff(i as i64 - 1)?;
        debug_assert!(c.denom().is_one());
        u.push(IntPoly::new(vec![c.numer().clone()]));
    }
    // Power-series inverse over Z[x]: b_0 = 1, b_n = -Σ_{i>=1} u_i b_{n-i}.
    let mut b: Vec<IntPoly> = Vec::with_capacity(terms);
    b.push(IntPoly::constant(1));
    for n in 1..terms {
        let mut acc = IntPoly::zero();
        for i in 1..=n {
            if !u[i].is_zero() {
                acc = acc.add(&u[i].mul(&b[n - i]));
            }
        }
        b.push(acc.neg());
    }
    // Coefficient of q^m in (A q) · U^{-1}; (A q)_k is the q^{k-1} term of A.
    let mut out = Vec::with_capacity(terms);
    for m in 0..terms {
        let mut acc = IntPoly::zero();
        for (k, bk) in b.iter().enumerate().take(m + 1) {
            let ak = a.coeff((m - k) as i64 - 1)?;
            debug_assert!(ak.denom().is_one());
            if !ak.numer().is_zero() {
                acc = acc.add(&bk.scale(ak.numer()));
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// The Hecke route to ψ_m(j): the q-expansion of m · (j_1 | T_0(m)) with
/// j_1 = j - 744.
pub fn hecke_image_j1(m: i64, ctx: &PrecisionContext) -> Result<QSeries> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!("Hecke index must be positive, got {m}")));
    }
    let j = jfunction(ctx)?;
    let j1 = j.sub(&QSeries::monomial(0, BigRat::from_integer(BigInt::from(744)), ctx.series_order));
    let n_out = (j1.truncation() - 1).div_euclid(m) + 1;
    if n_out < 2 {
        return Err(Error::InsufficientTruncation {
            required: 2 * m + 2,
            available: ctx.series_order,
        });
    }
    let image = hecke_holomorphic(&j1, 0, m, n_out)?;
    Ok(image.scalar_mul(&BigRat::from_integer(BigInt::from(m))))
}

/// Horner evaluation of a polynomial at a q-series, in the exact series ring.
pub fn evaluate_poly_at_series(p: &RatPoly, s: &QSeries) -> Result<QSeries> {
    let big_trunc = s.truncation() + p.degree() as i64 + 2;
    if p.is_zero() {
        return Ok(QSeries::zero(big_trunc));
    }
    let mut acc = QSeries::monomial(0, p.coeff(p.degree()), big_trunc);
    for i in (0..p.degree()).rev() {
        acc = acc.mul(s);
        let c = p.coeff(i);
        if !c.is_zero() {
            if acc.truncation() <= 0 {
                // The constant term of the Horner step is no longer inside
                // the known window; the input truncation cannot support it.
                return Err(Error::InsufficientTruncation {
                    required: 1,
                    available: acc.truncation(),
                });
            }
            acc = acc.add(&QSeries::monomial(0, c, acc.truncation()));
        }
    }
    Ok(acc)
}

/// Integer-polynomial convenience wrapper for [`evaluate_poly_at_series`].
pub fn evaluate_int_poly_at_series(p: &IntPoly, s: &QSeries) -> Result<QSeries> {
    evaluate_poly_at_series(&p.to_rat(), s)
}

/// The low-weight Eisenstein product capturing the trivial zeros at the
/// elliptic points, by weight class mod 12.
pub fn tilde_e(k: u32, ctx: &PrecisionContext) -> Result<QSeries> {
    if k % 2 != 0 {
        return Err(Error::InvalidArgument(format!("weight must be even, got {k}")));
    }
    let e4 = || eisenstein(4, ctx);
    let e6 = || eisenstein(6, ctx);
    Ok(match k % 12 {
        0 => QSeries::one(ctx.series_order),
        2 => e4()?.pow(2).mul(&e6()?),
        4 => e4()?,
        6 => e6()?,
        8 => e4()?.pow(2),
        10 => e4()?.mul(&e6()?),
        _ => unreachable!(),
    })
}

/// The elliptic-point factor h_k(x), by weight class mod 12.
pub fn h_k(k: u32) -> Result<IntPoly> {
    if k % 2 != 0 {
        return Err(Error::InvalidArgument(format!("weight must be even, got {k}")));
    }
    let x = IntPoly::from_i64(&[0, 1]);
    let x_minus = IntPoly::from_i64(&[-1728, 1]);
    Ok(match k % 12 {
        0 => IntPoly::constant(1),
        2 => x.mul(&x).mul(&x_minus),
        4 => x,
        6 => x_minus,
        8 => x.mul(&x),
        10 => x.mul(&x_minus),
        _ => unreachable!(),
    })
}

/// The Δ-exponent m(k) = ⌊k/12⌋, lowered by one in the k ≡ 2 (mod 12) class.
pub fn m_exp(k: u32) -> Result<i64> {
    if k % 2 != 0 {
        return Err(Error::InvalidArgument(format!("weight must be even, got {k}")));
    }
    let base = (k / 12) as i64;
    Ok(if k % 12 == 2 { base - 1 } else { base })
}

/// Divisor polynomial F(f; x) = h_k(x) · F̃(f; x) of a weight-k holomorphic
/// form, where F̃(f; j(τ)) = f/(Δ^{m(k)} Ẽ_k). Rejects series that do not
/// reduce to a polynomial in j within the available truncation.
pub fn divisor_polynomial(f: &QSeries, k: u32, ctx: &PrecisionContext) -> Result<RatPoly> {
    let m = m_exp(k)?;
    if m < 0 {
        return Err(Error::InvalidArgument(format!(
            "weight {k} admits no nonzero holomorphic forms"
        )));
    }
    let dct = PrecisionContext::default().with_series_order(ctx.series_order);
    let mut denom = tilde_e(k, &dct)?;
    if m > 0 {
        denom = denom.mul(&delta(&dct)?.pow(m as u32));
    }
    let g = f.mul(&denom.inv()?);
    let pole = (-g.clone().normalized().valuation()).max(0);
    let powers = j_powers(pole as u32, ctx.series_order)?;
    let f_tilde = reduce_in_j_basis(&g, &powers)?;
    Ok(h_k(k)?.to_rat().mul(&f_tilde))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{rat, ratio};

    fn ctx() -> PrecisionContext {
        PrecisionContext::default().with_series_order(24)
    }

    #[test]
    fn first_faber_polynomials() {
        let c = ctx();
        assert_eq!(faber_psi(0, &c).unwrap(), IntPoly::constant(1));
        assert_eq!(faber_psi(1, &c).unwrap(), IntPoly::from_i64(&[-744, 1]));
        assert_eq!(faber_psi(2, &c).unwrap(), IntPoly::from_i64(&[159768, -1488, 1]));
        assert_eq!(
            faber_psi(3, &c).unwrap(),
            IntPoly::from_i64(&[-36866976, 1069956, -2232, 1])
        );
    }

    #[test]
    fn generating_function_agrees_with_greedy() {
        let c = ctx();
        let greedy = faber_psi_list(12, &c).unwrap();
        let generated = faber_via_generating(12, &c).unwrap();
        assert_eq!(greedy, generated);
    }

    #[test]
    fn principal_part_property() {
        let c = ctx();
        let j = jfunction(&c).unwrap();
        for m in 1..=8u32 {
            let psi = faber_psi(m, &c).unwrap();
            assert!(psi.is_monic());
            assert_eq!(psi.degree(), m as usize);
            let series = evaluate_int_poly_at_series(&psi, &j).unwrap();
            assert_eq!(series.coeff(-(m as i64)).unwrap(), rat(1));
            for e in (-(m as i64) + 1)..=0 {
                assert_eq!(series.coeff(e).unwrap(), rat(0), "psi_{m} exponent {e}");
            }
        }
    }

    #[test]
    fn hecke_image_matches_polynomial_route() {
        let c = PrecisionContext::default().with_series_order(64);
        let j = jfunction(&c).unwrap();
        let j2 = hecke_image_j1(2, &c).unwrap();
        assert_eq!(j2.coeff(-2).unwrap(), rat(1));
        assert_eq!(j2.coeff(1).unwrap(), rat(42987520));
        let psi2 = faber_psi(2, &c).unwrap();
        assert!(j2.agrees_with(&evaluate_int_poly_at_series(&psi2, &j).unwrap()));

        let j3 = hecke_image_j1(3, &c).unwrap();
        assert_eq!(j3.coeff(1).unwrap(), rat(2592899910));

        let j1 = hecke_image_j1(1, &c).unwrap();
        assert_eq!(j1.coeff(-1).unwrap(), rat(1));
        assert_eq!(j1.coeff(0).unwrap(), rat(0));
        assert_eq!(j1.coeff(1).unwrap(), rat(196884));
    }

    #[test]
    fn hecke_identity_through_m_20() {
        let c = PrecisionContext::default().with_series_order(64);
        let j = jfunction(&c).unwrap();
        for m in 2..=20 {
            let image = hecke_image_j1(m, &c).unwrap();
            let psi = faber_psi(m as u32, &c).unwrap();
            let direct = evaluate_int_poly_at_series(&psi, &j).unwrap();
            assert!(image.agrees_with(&direct), "Hecke identity fails at m={m}");
        }
    }

    #[test]
    fn poly_at_series_basics() {
        let c = ctx();
        let j = jfunction(&c).unwrap();
        let x = RatPoly::new(vec![rat(0), rat(1)]);
        assert!(evaluate_poly_at_series(&x, &j).unwrap().agrees_with(&j));
        let shifted = RatPoly::new(vec![rat(-1728), rat(1)]);
        let s = evaluate_poly_at_series(&shifted, &j).unwrap();
        assert_eq!(s.coeff(0).unwrap(), rat(-984));
    }

    #[test]
    fn weight_tables() {
        assert_eq!(h_k(10).unwrap(), IntPoly::from_i64(&[0, -1728, 1]));
        assert_eq!(h_k(12).unwrap(), IntPoly::constant(1));
        assert_eq!(m_exp(12).unwrap(), 1);
        assert_eq!(m_exp(14).unwrap(), 0);
        let c = ctx();
        assert!(tilde_e(12, &c).unwrap().agrees_with(&QSeries::one(4)));
        let e14 = tilde_e(14, &c).unwrap();
        let direct = eisenstein(4, &c).unwrap().pow(2).mul(&eisenstein(6, &c).unwrap());
        assert!(e14.agrees_with(&direct));
        assert!(h_k(7).is_err());
    }

    #[test]
    fn divisor_polynomials_of_small_eisenstein_series() {
        let c = ctx();
        let d = delta(&c).unwrap();
        let f = divisor_polynomial(&d, 12, &c).unwrap();
        assert_eq!(f, RatPoly::new(vec![rat(1)]));

        let e4 = eisenstein(4, &c).unwrap();
        let f4 = divisor_polynomial(&e4, 4, &c).unwrap();
        assert_eq!(f4, RatPoly::new(vec![rat(0), rat(1)]));

        let e12 = eisenstein(12, &c).unwrap();
        let f12 = divisor_polynomial(&e12, 12, &c).unwrap();
        assert_eq!(f12, RatPoly::new(vec![ratio(-432000, 691), rat(1)]));
    }

    #[test]
    fn divisor_polynomial_rejects_wrong_weight() {
        let c = ctx();
        let e4 = eisenstein(4, &c).unwrap();
        // E_4 declared as weight 8 is not a polynomial in j after clearing
        // the weight-8 trivial zeros.
        assert!(divisor_polynomial(&e4, 8, &c).is_err());
    }
}
