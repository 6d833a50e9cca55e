//! Exact and high-precision machinery for the Hecke polynomials F_m(x)
//! attached to the weight -10 mock modular form whose shadow is
//! proportional to Δ, together with certification of their zeros on
//! [0, 1728] and the Kloosterman–Bessel numeric layer behind the
//! analytic estimates.

pub mod analytic;
pub mod error;
pub mod faber;
pub mod heckepoly;
pub mod poly;
pub mod qseries;
pub mod roots;
pub mod verify;

pub use error::{Error, Result};
pub use qseries::PrecisionContext;
