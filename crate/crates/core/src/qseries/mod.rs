//! Exact arithmetic for truncated Laurent q-expansions of level-1 modular
//! objects, and the combinatorial Hecke action on them.
//!
//! Everything in this module is exact: coefficients are arbitrary-precision
//! rationals, truncation orders are tracked per series and propagated
//! pessimistically, and any operation that would have to fabricate an
//! unknown coefficient fails instead of zero-filling.

mod forms;
mod hecke;
mod series;

pub use forms::{bernoulli, delta, eisenstein, jfunction, sigma, tau, tau_values};
pub use hecke::{hecke_holomorphic, hecke_holomorphic_max};
pub use series::QSeries;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced, denominator positive.
pub type BigRat = BigRational;

/// Convenience constructor for an integer-valued rational.
pub fn rat(n: i64) -> BigRat {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational p/q from machine integers.
pub fn ratio(p: i64, q: i64) -> BigRat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parse "p/q" or "p" decimal strings (the JSON wire format for rationals).
pub fn rat_from_str(s: &str) -> Result<BigRat> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::InvalidArgument(format!("not an integer: {t:?}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::InvalidArgument("zero denominator".into()));
            }
            Ok(BigRational::new(parse_int(p)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// Parse plain decimal notation ("0.001", "1e-30", "2.5e3") into an exact
/// rational.
pub fn rat_from_decimal_str(s: &str) -> Result<BigRat> {
    let s = s.trim();
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (
            m,
            e.parse::<i64>()
                .map_err(|_| Error::InvalidArgument(format!("bad exponent in {s:?}")))?,
        ),
        None => (s, 0),
    };
    let neg = mantissa.starts_with('-');
    let body = mantissa.trim_start_matches(['-', '+']);
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::InvalidArgument(format!("not a decimal: {s:?}")));
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::InvalidArgument(format!("not a decimal: {s:?}")));
    }
    let mut num: BigInt = digits.parse().expect("digit string");
    if neg {
        num = -num;
    }
    let power = exp - frac_part.len() as i64;
    Ok(if power >= 0 {
        BigRational::from_integer(num * BigInt::from(10u8).pow(power as u32))
    } else {
        BigRational::new(num, BigInt::from(10u8).pow((-power) as u32))
    })
}

/// Render a rational as "p" or "p/q" with positive denominator.
pub fn rat_to_str(x: &BigRat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Working parameters threaded through every series and numeric operation.
///
/// `series_order` is the default q-expansion truncation N (coefficients are
/// known for exponents < N), `c_max` truncates Kloosterman–Bessel sums over
/// the modulus c, `work_precision` is in decimal digits, and `root_tol`
/// bounds bisection interval widths.
#[derive(Debug, Clone)]
pub struct PrecisionContext {
    pub series_order: i64,
    pub c_max: u32,
    pub work_precision: u32,
    pub root_tol: BigRat,
    /// Fourier-side truncation floor for Poincaré series evaluation on the
    /// arc. The evaluator extends it adaptively when coefficient growth
    /// demands more terms.
    pub n_max: usize,
}

impl PrecisionContext {
    pub fn new(series_order: i64, c_max: u32, work_precision: u32, root_tol: BigRat) -> Result<Self> {
        if series_order < 2 {
            return Err(Error::InvalidArgument(format!(
                "series order must be at least 2, got {series_order}"
            )));
        }
        if c_max < 1 {
            return Err(Error::InvalidArgument("c_max must be at least 1".into()));
        }
        if work_precision < 30 {
            return Err(Error::InvalidArgument(format!(
                "work precision must be at least 30 digits, got {work_precision}"
            )));
        }
        if !root_tol.is_positive() {
            return Err(Error::InvalidArgument("root tolerance must be positive".into()));
        }
        Ok(Self {
            series_order,
            c_max,
            work_precision,
            root_tol,
            n_max: 40,
        })
    }

    pub fn with_series_order(mut self, n: i64) -> Self {
        self.series_order = n;
        self
    }

    pub fn with_c_max(mut self, c: u32) -> Self {
        self.c_max = c;
        self
    }

    /// Binary mantissa size implementing `work_precision` decimal digits,
    /// with guard bits for accumulated rounding.
    pub fn mantissa_bits(&self) -> usize {
        (self.work_precision as f64 * std::f64::consts::LOG2_10).ceil() as usize + 32
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self {
            series_order: 64,
            c_max: 10_000,
            work_precision: 60,
            root_tol: BigRational::new(BigInt::one(), BigInt::from(10u8).pow(30)),
            n_max: 40,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_validation() {
        assert!(PrecisionContext::new(1, 10, 60, rat(1)).is_err());
        assert!(PrecisionContext::new(8, 0, 60, rat(1)).is_err());
        assert!(PrecisionContext::new(8, 10, 20, rat(1)).is_err());
        assert!(PrecisionContext::new(8, 10, 60, rat(0)).is_err());
        assert!(PrecisionContext::new(8, 10, 60, ratio(1, 1000)).is_ok());
    }

    #[test]
    fn rational_wire_format() {
        let x = ratio(-65520, 691);
        assert_eq!(rat_to_str(&x), "-65520/691");
        assert_eq!(rat_from_str("-65520/691").unwrap(), x);
        assert_eq!(rat_from_str("42").unwrap(), rat(42));
        assert!(rat_from_str("1/0").is_err());
    }
}
