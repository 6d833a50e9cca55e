//! High-precision numeric layer: Kloosterman sums, Bessel and Whittaker
//! functions, mock-form coefficients, Poincaré-series evaluation on the
//! unit arc, and the bounding functions behind the zero localization.

mod bounds;
mod coefficients;
mod kloosterman;
mod poincare;
mod real;
mod special;

pub use bounds::{deligne_check, epstein_zeta_6, first_deligne_violation};
pub use coefficients::{
    a_delta, a_delta_batch, a_delta_exact_zero, beta_delta, constant_term_p, factorial_11,
    holo_coefficient_p, holo_coefficients_p, kloosterman_bessel_j_sum, shadow_coefficient,
    shadow_coefficients, shadow_proportionality_ratio, tau_real,
};
pub use kloosterman::{kloosterman, sum_kloosterman_series, KloostermanJob, SeriesSum};
pub use poincare::{
    check_f_bound, f_m, g_m, g_m_inverse, poincare_eval, BoundReport, PoincareExpansion,
};
pub use real::{Accumulator, Complex, Real};
pub use special::{bessel_i, bessel_j, factorial, incomplete_gamma, trunc_exp, whittaker_m};
