//! Exact real-root isolation: squarefreeness by integer polynomial gcd,
//! Sturm chains built from sign-preserving pseudo-remainders with primitive
//! reduction, and bisection-based isolation and refinement.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::qseries::BigRat;

fn deg(p: &IntPoly) -> isize {
    if p.is_zero() {
        -1
    } else {
        p.degree() as isize
    }
}

/// Pseudo-remainder scaled so that the result is a positive multiple of the
/// true remainder of f by g.
fn prem_pos(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let g_lead = g.leading();
    let g_deg = deg(g);
    let mut r = f.clone();
    let mut scalings = 0usize;
    while deg(&r) >= g_deg && !r.is_zero() {
        let shift = (deg(&r) - g_deg) as usize;
        let r_lead = r.leading();
        // r <- g_lead·r - r_lead·x^shift·g  kills the leading term
        r = r.scale(&g_lead).sub(&g.mul(&IntPoly::power_of_x(shift).scale(&r_lead)));
        scalings += 1;
    }
    if g_lead.is_negative() && scalings % 2 == 1 {
        r = r.neg();
    }
    r
}

/// Primitive gcd of two integer polynomials, with positive leading
/// coefficient.
pub fn poly_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut f = a.primitive_part();
    let mut g = b.primitive_part();
    if deg(&f) < deg(&g) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        let r = prem_pos(&f, &g).primitive_part();
        f = g;
        g = r;
    }
    if f.leading().is_negative() {
        f = f.neg();
    }
    f
}

/// True iff gcd(p, p') is constant; the witness is the primitive gcd.
pub fn is_squarefree(p: &IntPoly) -> (bool, IntPoly) {
    if p.is_zero() {
        return (false, IntPoly::zero());
    }
    let g = poly_gcd(p, &p.derivative());
    (deg(&g) <= 0, g)
}

/// A Sturm chain of a squarefree integer polynomial.
#[derive(Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    /// Build the chain; rejects non-squarefree input with the gcd witness.
    pub fn new(p: &IntPoly) -> Result<Self> {
        let (squarefree, witness) = is_squarefree(p);
        if !squarefree {
            return Err(Error::NotSquarefree {
                witness_degree: witness.degree(),
            });
        }
        let mut chain = vec![p.primitive_part()];
        let mut next = p.derivative().primitive_part();
        while !next.is_zero() {
            let r = prem_pos(chain.last().unwrap(), &next);
            chain.push(next);
            next = r.neg().primitive_part();
        }
        Ok(Self { chain })
    }

    pub fn polynomial(&self) -> &IntPoly {
        &self.chain[0]
    }

    fn variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut count = 0;
        let mut last = 0i32;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRat) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    fn sign_at_infinity(p: &IntPoly, negative: bool) -> i32 {
        let mut s = crate::poly::bigint_sign(&p.leading());
        if negative && p.degree() % 2 == 1 {
            s = -s;
        }
        s
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| Self::sign_at_infinity(p, true)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| Self::sign_at_infinity(p, false)))
    }

    /// Number of roots in the half-open interval (lo, hi].
    pub fn count_in(&self, lo: &BigRat, hi: &BigRat) -> usize {
        debug_assert!(lo < hi);
        self.variations_at(lo) - self.variations_at(hi)
    }

    /// Total number of real roots.
    pub fn count_real(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }

    /// A bound B with every real root in (-B, B].
    pub fn root_bound(&self) -> BigRat {
        let p = &self.chain[0];
        let lead = p.leading().abs();
        let mut max = BigInt::zero();
        for c in p.coeffs() {
            let a = c.abs();
            if a > max {
                max = a;
            }
        }
        BigRat::from_integer(BigInt::one()) + BigRat::new(max, lead)
    }
}

/// An interval from the isolation pass. With `exact` set, `hi` is the root
/// itself; otherwise the unique root lies in (lo, hi] and the polynomial
/// changes sign between the endpoints.
#[derive(Debug, Clone)]
pub struct IsolatingInterval {
    pub lo: BigRat,
    pub hi: BigRat,
    pub exact: bool,
}

/// Disjoint isolating intervals, one per real root, ascending.
pub fn sturm_isolate(p: &IntPoly) -> Result<Vec<IsolatingInterval>> {
    let chain = SturmChain::new(p)?;
    let poly = chain.polynomial().clone();
    let bound = chain.root_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound.clone())];
    while let Some((lo, hi)) = stack.pop() {
        let count = chain.count_in(&lo, &hi);
        if count == 0 {
            continue;
        }
        if count == 1 {
            let hi_sign = poly.sign_at(&hi);
            if hi_sign == 0 {
                out.push(IsolatingInterval {
                    lo,
                    hi,
                    exact: true,
                });
                continue;
            }
            let lo_sign = poly.sign_at(&lo);
            if lo_sign != 0 && lo_sign != hi_sign {
                out.push(IsolatingInterval {
                    lo,
                    hi,
                    exact: false,
                });
                continue;
            }
            // lo sits on a neighbouring root; shrink until the sign shows.
        }
        let mid = (&lo + &hi) / BigRat::from_integer(BigInt::from(2));
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort_by(|a, b| a.hi.cmp(&b.hi));
    Ok(out)
}

/// Bisection refinement of an isolated root down to `tol`, returning the
/// midpoint (or the root itself when an exact rational root is hit).
pub fn refine_root(p: &IntPoly, interval: &IsolatingInterval, tol: &BigRat) -> Result<BigRat> {
    if interval.exact {
        return Ok(interval.hi.clone());
    }
    let mut lo = interval.lo.clone();
    let mut hi = interval.hi.clone();
    let lo_sign = p.sign_at(&lo);
    let hi_sign = p.sign_at(&hi);
    if lo_sign == 0 || hi_sign == 0 || lo_sign == hi_sign {
        return Err(Error::Internal(format!(
            "interval endpoints do not bracket a sign change: {lo_sign} vs {hi_sign}"
        )));
    }
    let two = BigRat::from_integer(BigInt::from(2));
    while (&hi - &lo) >= *tol {
        let mid = (&lo + &hi) / &two;
        let s = p.sign_at(&mid);
        if s == 0 {
            return Ok(mid);
        }
        if s == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((&lo + &hi) / &two)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{rat, ratio};

    #[test]
    fn squarefree_detection() {
        let p = IntPoly::from_i64(&[0, -1728, 1]);
        let (sf, _) = is_squarefree(&p);
        assert!(sf);
        let sq = IntPoly::from_i64(&[1, -2, 1]); // (x-1)^2
        let (sf, witness) = is_squarefree(&sq);
        assert!(!sf);
        assert_eq!(witness, IntPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn isolate_quadratic_with_integer_roots() {
        let p = IntPoly::from_i64(&[0, -1728, 1]); // x(x-1728)
        let intervals = sturm_isolate(&p).unwrap();
        assert_eq!(intervals.len(), 2);
        let tol = ratio(1, 1_000_000);
        let r0 = refine_root(&p, &intervals[0], &tol).unwrap();
        let r1 = refine_root(&p, &intervals[1], &tol).unwrap();
        assert!((&r0 - rat(0)).abs() < tol);
        assert!((&r1 - rat(1728)).abs() < tol);
    }

    #[test]
    fn middle_root_of_f3_factor() {
        let p = IntPoly::from_i64(&[-768, 1]);
        let intervals = sturm_isolate(&p).unwrap();
        assert_eq!(intervals.len(), 1);
        let root = refine_root(&p, &intervals[0], &ratio(1, 1024)).unwrap();
        assert!((&root - rat(768)).abs() < ratio(1, 1024));
    }

    #[test]
    fn no_real_roots() {
        let p = IntPoly::from_i64(&[1, 0, 1]); // x^2 + 1
        assert!(sturm_isolate(&p).unwrap().is_empty());
    }

    #[test]
    fn non_squarefree_rejected() {
        let sq = IntPoly::from_i64(&[1, -2, 1]);
        match SturmChain::new(&sq) {
            Err(Error::NotSquarefree { witness_degree }) => assert_eq!(witness_degree, 1),
            other => panic!("expected squarefree rejection, got {other:?}"),
        }
    }

    #[test]
    fn counts_match_isolation() {
        // (x+2)(x-1)(x-3) = x^3 -2x^2 -5x + 6
        let p = IntPoly::from_i64(&[6, -5, -2, 1]);
        let chain = SturmChain::new(&p).unwrap();
        assert_eq!(chain.count_real(), 3);
        assert_eq!(chain.count_in(&rat(0), &rat(4)), 2);
        assert_eq!(chain.count_in(&rat(-3), &rat(0)), 1);
        assert_eq!(chain.count_in(&rat(0), &rat(1)), 1); // (0,1] catches 1
        let intervals = sturm_isolate(&p).unwrap();
        assert_eq!(intervals.len(), 3);
    }

    #[test]
    fn sturm_count_agrees_with_sign_grid() {
        // independent sanity oracle on a fine rational grid
        let p = IntPoly::from_i64(&[6, -5, -2, 1]);
        let chain = SturmChain::new(&p).unwrap();
        let mut grid_changes = 0;
        let mut last = p.sign_at(&ratio(-801, 200));
        for k in -800..=800 {
            let x = ratio(k, 200);
            let s = p.sign_at(&x);
            if s != 0 && last != 0 && s != last {
                grid_changes += 1;
            }
            if s != 0 {
                last = s;
            }
        }
        assert_eq!(grid_changes, chain.count_real());
    }
}
