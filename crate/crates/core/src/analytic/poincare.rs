//! Evaluation of the 11!-normalized weight -10 Maass–Poincaré series on the
//! unit arc through its Fourier expansion, the damped cosine wave f_m that
//! approximates the Hecke combination there, and the budget check
//! |e^{-5iθ} e^{-2πm sin θ}(P_m - τ(m)·P_1) - f_m(θ)| < 11!.

use std::f64::consts::PI;

use super::coefficients::{
    constant_term_p, factorial_11, holo_coefficients_p, shadow_coefficients, tau_real,
};
use super::real::{Accumulator, Complex, Real};
use super::special::{incomplete_gamma, trunc_exp};
use crate::error::{Error, Result};
use crate::heckepoly::FACTORIAL_11;
use crate::qseries::PrecisionContext;

/// g_m(θ) = 5θ + 2πm cos θ, strictly decreasing on [π/3, π/2] for m >= 1.
pub fn g_m(m: i64, theta: &Real) -> Real {
    let two_pi_m = Real::pi(theta.bits()).mul_i64(2 * m);
    theta.mul_i64(5).add(&two_pi_m.mul(&theta.cos()))
}

/// Inverse of g_m on [π/3, π/2] by bisection to the context's tolerance.
pub fn g_m_inverse(m: i64, y: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let bits = ctx.mantissa_bits();
    let pi = Real::pi(bits);
    let mut lo = pi.div_i64(3);
    let mut hi = pi.div_i64(2);
    let y_local = y.with_bits(bits);
    // range check: g decreases from g(π/3) to g(π/2)
    let top = g_m(m, &lo);
    let bottom = g_m(m, &hi);
    if y_local.cmp_real(&top) == std::cmp::Ordering::Greater
        || y_local.cmp_real(&bottom) == std::cmp::Ordering::Less
    {
        return Err(Error::OutOfRange(
            format!("g target {}", y_local.to_f64()),
            format!("[{}, {}]", bottom.to_f64(), top.to_f64()),
        ));
    }
    let tol = Real::from_rat(&ctx.root_tol, bits);
    let mut width = hi.sub(&lo);
    while width.cmp_real(&tol) == std::cmp::Ordering::Greater {
        let mid = lo.add(&hi).div_i64(2);
        let val = g_m(m, &mid);
        if val.cmp_real(&y_local) == std::cmp::Ordering::Less {
            // g decreasing: value below target means θ too large
            hi = mid;
        } else {
            lo = mid;
        }
        width = hi.sub(&lo);
    }
    Ok(lo.add(&hi).div_i64(2))
}

/// The damped cosine wave
/// f_m(θ) = 2·11!·(1 - e^{-4πm sin θ} e_10(4πm sin θ))·cos(g_m(θ)).
pub fn f_m(m: i64, theta: &Real) -> Real {
    let bits = theta.bits();
    let x = Real::pi(bits).mul_i64(4 * m).mul(&theta.sin());
    let damping = Real::one(bits).sub(&x.neg().exp().mul(&trunc_exp(10, &x)));
    factorial_11(bits)
        .mul_i64(2)
        .mul(&damping)
        .mul(&g_m(m, theta).cos())
}

/// ln I_11(x) within a couple of units, for truncation-depth planning only.
fn ln_bessel_i11(x: f64) -> f64 {
    if x > 25.0 {
        x - 0.5 * (2.0 * PI * x).ln()
    } else if x > 1e-300 {
        11.0 * (x / 2.0).ln() - 17.502_307_845_873_887 // ln 11!
    } else {
        f64::NEG_INFINITY
    }
}

/// Smallest Fourier depth so that every omitted 11!·c⁺(n)·qⁿ term is below
/// `ln_cut` in natural log at the slowest-decaying arc point θ = π/3.
fn plan_holo_depth(m: i64, floor: usize, ln_cut: f64) -> usize {
    let ln_prefix = (FACTORIAL_11 as f64).ln() + (2.0 * PI).ln();
    let q_decay = PI * 3.0f64.sqrt() / 2.0 * 2.0; // 2π sin(π/3)
    let mut n = floor.max(4);
    let mut clear = 0;
    loop {
        let x = 4.0 * PI * ((m * n as i64) as f64).sqrt();
        let ln_term = ln_prefix + 5.5 * ((m as f64).ln() - (n as f64).ln()) + ln_bessel_i11(x)
            - q_decay * n as f64;
        if ln_term < ln_cut {
            clear += 1;
            if clear >= 3 {
                return n;
            }
        } else {
            clear = 0;
        }
        n += 1;
        if n > 4096 {
            return n;
        }
    }
}

/// Depth for the nonholomorphic side: Γ(11, 4πn sin θ)·|q|^{-n} decays like
/// (4πn)^{10} e^{-2πn sin θ} and the coefficients stay bounded.
fn plan_nonholo_depth(m: i64, floor: usize, ln_cut: f64) -> usize {
    let ln_coeff_bound = (11.0 * 4.0 * (m as f64).powf(5.5)).ln() + 10.0 * (m as f64).ln().max(1.0);
    let s = 3.0f64.sqrt() / 2.0;
    let mut n = floor.max(4);
    loop {
        let x = 4.0 * PI * n as f64 * s;
        let ln_term = ln_coeff_bound + 15.104_412_573_075_516 /* ln 10! */
            + 10.0 * x.ln() - x + 2.0 * PI * n as f64 * s;
        if ln_term < ln_cut || n > 2048 {
            return n;
        }
        n += 1;
    }
}

/// The Fourier data of the 11!-normalized weight -10 Poincaré series of
/// index -m, precomputed once per m: the series is evaluated on the arc as
///   11!·q^{-m} + a(0)σ_11(m) + 11!·Σ c⁺(n) qⁿ
///   + Σ (-11)(m/n)^{11/2}(δ_{mn} + S_m(n))·Γ(11, 4πn sin θ)·q^{-n}.
pub struct PoincareExpansion {
    pub m: i64,
    bits: usize,
    const_term: Real,
    const_tail: Real,
    holo: Vec<(Real, Real)>,    // (11!·c⁺(n), 11!·tail), n = 1..
    nonholo: Vec<(Real, Real)>, // (c⁻ coefficient, tail), n = 1..
    ln_cut: f64,
}

impl PoincareExpansion {
    pub fn compute(m: i64, ctx: &PrecisionContext) -> Result<Self> {
        let bits = ctx.mantissa_bits();
        // Absolute floor for discarded terms: comfortably below both the
        // 11! budget scale and the working precision of the assembled sum.
        let ln_cut = -(ctx.work_precision as f64) * 0.6 * std::f64::consts::LN_10;
        let n_holo = plan_holo_depth(m, ctx.n_max, ln_cut);
        let n_nonholo = plan_nonholo_depth(m, ctx.n_max.min(64), ln_cut);

        let constant = constant_term_p(-10, m, ctx)?;
        let ns: Vec<i64> = (1..=n_holo as i64).collect();
        let fact = factorial_11(bits);
        let holo = holo_coefficients_p(-10, m, &ns, ctx)?
            .into_iter()
            .map(|s| (s.value.mul(&fact), s.tail_estimate.mul(&fact)))
            .collect();
        let shadows = shadow_coefficients(m, n_nonholo as i64, ctx)?;
        let nonholo = shadows
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                let n = i as i64 + 1;
                let m_half = Real::from_i64(m, bits).powi(5).mul(&Real::from_i64(m, bits).sqrt());
                let n_half = Real::from_i64(n, bits).powi(5).mul(&Real::from_i64(n, bits).sqrt());
                let scale = m_half.div(&n_half).mul_i64(-11);
                (s.value.mul(&scale), s.tail_estimate.mul(&scale.abs()))
            })
            .collect();
        Ok(Self {
            m,
            bits,
            const_term: constant.value,
            const_tail: constant.tail_estimate,
            holo,
            nonholo,
            ln_cut,
        })
    }

    /// Value at τ = e^{iθ} together with an accumulated truncation estimate
    /// (Kloosterman tails per coefficient plus the Fourier cutoff bound).
    pub fn eval(&self, theta: &Real) -> (Complex, Real) {
        let bits = self.bits;
        let theta = theta.with_bits(bits);
        let sin_t = theta.sin();
        let two_pi = Real::pi(bits).mul_i64(2);
        let q_abs = two_pi.mul(&sin_t).neg().exp();
        let q_angle = two_pi.mul(&theta.cos());
        let q = Complex::from_polar(&q_abs, &q_angle);
        let q_inv = q.recip();

        let mut tail = Accumulator::new(bits);
        tail.add(&self.const_tail);

        // principal part 11!·q^{-m}
        let mut q_inv_m = Complex::from_real(Real::one(bits));
        for _ in 0..self.m {
            q_inv_m = q_inv_m.mul(&q_inv);
        }
        let mut acc_re = Accumulator::new(bits);
        let mut acc_im = Accumulator::new(bits);
        let fact = factorial_11(bits);
        acc_re.add(&q_inv_m.re.mul(&fact));
        acc_im.add(&q_inv_m.im.mul(&fact));
        acc_re.add(&self.const_term);

        // holomorphic side
        let mut q_pow = Complex::from_real(Real::one(bits));
        let mut q_abs_pow = Real::one(bits);
        for (c, t) in &self.holo {
            q_pow = q_pow.mul(&q);
            q_abs_pow = q_abs_pow.mul(&q_abs);
            acc_re.add(&q_pow.re.mul(c));
            acc_im.add(&q_pow.im.mul(c));
            tail.add(&t.mul(&q_abs_pow));
        }

        // nonholomorphic side
        let four_pi_s = two_pi.mul_i64(2).mul(&sin_t);
        let mut q_inv_pow = Complex::from_real(Real::one(bits));
        let mut q_abs_inv_pow = Real::one(bits);
        let q_abs_inv = q_abs.recip();
        for (i, (c, t)) in self.nonholo.iter().enumerate() {
            let n = i as i64 + 1;
            q_inv_pow = q_inv_pow.mul(&q_inv);
            q_abs_inv_pow = q_abs_inv_pow.mul(&q_abs_inv);
            let gamma = incomplete_gamma(11, &four_pi_s.mul_i64(n));
            let w = gamma.mul(&q_abs_inv_pow);
            acc_re.add(&q_inv_pow.re.mul(c).mul(&gamma));
            acc_im.add(&q_inv_pow.im.mul(c).mul(&gamma));
            tail.add(&t.mul(&w));
        }

        // Fourier cutoff remainder, planned to sit below ln_cut per term;
        // budget a full decade of them.
        tail.add(&Real::from_f64(self.ln_cut.exp() * 20.0, bits));
        (Complex::new(acc_re.value(), acc_im.value()), tail.value())
    }
}

/// P_{-10,-m}(e^{iθ}) with its truncation estimate. The m = 1 series is the
/// harmonic Maass form whose holomorphic part is the mock form.
pub fn poincare_eval(m: i64, theta: &Real, ctx: &PrecisionContext) -> Result<(Complex, Real)> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!("index must be positive, got {m}")));
    }
    Ok(PoincareExpansion::compute(m, ctx)?.eval(theta))
}

/// One grid point of the budget check.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub m: i64,
    pub theta: Real,
    pub lhs: Real,
    pub budget: Real,
    pub pass: bool,
    pub truncation_error: Real,
}

/// Evaluate |e^{-5iθ} e^{-2πm sin θ}(P_m(e^{iθ}) - τ(m)·P_1(e^{iθ})) - f_m(θ)|
/// on a uniform θ-grid over [π/3, π/2] and compare against 11!.
pub fn check_f_bound(m: i64, grid: usize, ctx: &PrecisionContext) -> Result<Vec<BoundReport>> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!(
            "the budget bound is stated for m >= 3, got {m}"
        )));
    }
    if grid < 2 {
        return Err(Error::InvalidArgument("grid needs at least 2 points".into()));
    }
    let bits = ctx.mantissa_bits();
    let p_m = PoincareExpansion::compute(m, ctx)?;
    let p_1 = PoincareExpansion::compute(1, ctx)?;
    let tau_m = tau_real(m, ctx)?;
    let budget = factorial_11(bits);
    let pi = Real::pi(bits);
    let lo = pi.div_i64(3);
    let step = pi.div_i64(6).div_i64(grid as i64 - 1);
    let mut reports = Vec::with_capacity(grid);
    for i in 0..grid {
        let theta = lo.add(&step.mul_i64(i as i64));
        let (pm, tail_m) = p_m.eval(&theta);
        let (r, tail_r) = p_1.eval(&theta);
        let combo = pm.sub(&r.scale(&tau_m));
        let damp = pi.mul_i64(2 * m).mul(&theta.sin()).neg().exp();
        let rotate = Complex::from_polar(&damp, &theta.mul_i64(-5));
        let lhs = rotate
            .mul(&combo)
            .sub(&Complex::from_real(f_m(m, &theta)))
            .abs();
        let truncation_error = damp.mul(&tail_m.add(&tau_m.abs().mul(&tail_r)));
        let pass = lhs.add(&truncation_error).cmp_real(&budget) == std::cmp::Ordering::Less;
        reports.push(BoundReport {
            m,
            theta,
            lhs,
            budget: budget.clone(),
            pass,
            truncation_error,
        });
    }
    Ok(reports)
}
