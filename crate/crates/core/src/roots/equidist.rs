//! Refined root tables with arc angles, the g-normalized positions, and
//! star-discrepancy statistics.

use num_traits::Zero;

use super::angle::ArcEvaluator;
use super::sturm::{refine_root, sturm_isolate, IsolatingInterval};
use super::theorem2::interior_quotient;
use crate::analytic::{g_m, Real};
use crate::error::Result;
use crate::heckepoly::hecke_poly_f;
use crate::qseries::{BigRat, PrecisionContext};

/// One certified root of F_m: the isolating interval, the refined value,
/// the arc angle with j(e^{iθ}) = x, the g-cell index when interior, and
/// the g-normalized position in [0, 1].
#[derive(Debug, Clone)]
pub struct RootRecord {
    pub interval: IsolatingInterval,
    pub x: BigRat,
    pub x_real: Real,
    pub theta: Real,
    pub ell: Option<i64>,
    pub u: Real,
}

/// Normalized position: u = (g_m(θ) - 5π/2)/((5π/3 + πm) - 5π/2), so θ = π/2
/// maps to 0 and θ = π/3 maps to 1.
fn normalized_position(m: i64, theta: &Real) -> Real {
    let bits = theta.bits();
    let pi = Real::pi(bits);
    let low = pi.mul_i64(5).div_i64(2);
    let span = pi.mul_i64(m).sub(&pi.mul_i64(5).div_i64(6));
    g_m(m, theta).sub(&low).div(&span)
}

/// Isolating intervals for the interior roots. The predicted g-cells are
/// tried first: the quotient has degree m - 2, and a sign change in each of
/// the m - 2 disjoint cells pins one simple root per cell with no Sturm
/// chain at all. Only if a cell fails to show the sign change (which the
/// arc estimates rule out) does the general Sturm isolation run, restricted
/// to (0, 1728).
fn interior_intervals(
    m: i64,
    q: &crate::poly::IntPoly,
    ctx: &PrecisionContext,
) -> Result<Vec<IsolatingInterval>> {
    let cells = super::theorem2::predicted_cells(m, ctx)?;
    if cells.len() == q.degree() {
        let mut intervals = Vec::with_capacity(cells.len());
        let mut ok = true;
        for (lo, hi) in &cells {
            let a = q.sign_at(lo);
            let b = q.sign_at(hi);
            if a == 0 || b == 0 || a == b {
                ok = false;
                break;
            }
            intervals.push(IsolatingInterval {
                lo: lo.clone(),
                hi: hi.clone(),
                exact: false,
            });
        }
        if ok {
            return Ok(intervals);
        }
    }
    let all = sturm_isolate(q)?;
    Ok(all
        .into_iter()
        .filter(|iv| iv.hi > BigRat::zero() && iv.lo < BigRat::from_integer(1728.into()))
        .collect())
}

/// All m roots of F_m, ascending in x, refined to the context tolerance.
pub fn roots_of_hecke_poly(m: i64, ctx: &PrecisionContext) -> Result<Vec<RootRecord>> {
    let bits = ctx.mantissa_bits();
    let f = hecke_poly_f(m, ctx)?;
    let q = interior_quotient(&f)?;
    let arc = ArcEvaluator::new(ctx)?;
    let pi = Real::pi(bits);

    let mut records = Vec::with_capacity(m as usize);
    // guaranteed endpoint roots
    let zero = BigRat::zero();
    let top = BigRat::from_integer(1728.into());
    records.push(RootRecord {
        interval: IsolatingInterval {
            lo: -BigRat::from_integer(1.into()),
            hi: zero.clone(),
            exact: true,
        },
        x: zero,
        x_real: Real::zero(bits),
        theta: pi.div_i64(3),
        ell: None,
        u: Real::one(bits),
    });

    if m > 2 {
        let intervals = interior_intervals(m, &q, ctx)?;
        for (idx, interval) in intervals.iter().enumerate() {
            let x = refine_root(&q, interval, &ctx.root_tol)?;
            let x_real = Real::from_rat(&x, bits);
            let theta = arc.angle_of(&x_real, ctx)?;
            let u = normalized_position(m, &theta);
            // ascending x corresponds to descending cell index l = m..3
            let ell = Some(m - idx as i64);
            records.push(RootRecord {
                interval: interval.clone(),
                x,
                x_real,
                theta,
                ell,
                u,
            });
        }
    }

    records.push(RootRecord {
        interval: IsolatingInterval {
            lo: BigRat::from_integer(1727.into()),
            hi: top.clone(),
            exact: true,
        },
        x: top,
        x_real: Real::from_i64(1728, bits),
        theta: pi.div_i64(2),
        ell: None,
        u: Real::zero(bits),
    });
    Ok(records)
}

/// Star discrepancy of a sorted ascending point set in [0, 1]:
/// D* = max_i max(i/N - u_i, u_i - (i-1)/N).
pub fn star_discrepancy(sorted: &[Real]) -> Real {
    let n = sorted.len();
    assert!(n > 0, "discrepancy of an empty set");
    let bits = sorted[0].bits();
    let n_real = Real::from_u64(n as u64, bits);
    let mut best = Real::zero(bits);
    for (i, u) in sorted.iter().enumerate() {
        let up = Real::from_u64(i as u64 + 1, bits).div(&n_real).sub(u);
        let down = u.sub(&Real::from_u64(i as u64, bits).div(&n_real));
        for cand in [up, down] {
            if cand.cmp_real(&best) == std::cmp::Ordering::Greater {
                best = cand;
            }
        }
    }
    best
}

/// Equidistribution measurement of the m root positions in the
/// g-normalized coordinate.
#[derive(Debug, Clone)]
pub struct EquidistReport {
    pub m: i64,
    pub normalized_positions: Vec<Real>,
    pub star_discrepancy: Real,
    pub records: Vec<RootRecord>,
}

pub fn equidistribution(m: i64, ctx: &PrecisionContext) -> Result<EquidistReport> {
    let records = roots_of_hecke_poly(m, ctx)?;
    let mut positions: Vec<Real> = records.iter().map(|r| r.u.clone()).collect();
    positions.sort_by(|a, b| a.cmp_real(b));
    let d = star_discrepancy(&positions);
    Ok(EquidistReport {
        m,
        normalized_positions: positions,
        star_discrepancy: d,
        records,
    })
}
