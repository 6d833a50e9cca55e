//! Truncated Laurent series in q with exact rational coefficients.

use num_traits::{One, Zero};

use super::BigRat;
use crate::error::{Error, Result};

/// A truncated Laurent series Σ a_e q^e with coefficients known exactly for
/// `valuation <= e < truncation`.
///
/// `coeffs[i]` is the coefficient of `q^(valuation + i)`, so the stored
/// length is always `truncation - valuation`. The leading stored coefficient
/// may be zero after additive cancellation; [`QSeries::normalized`] trims
/// leading zeros and raises the valuation accordingly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    valuation: i64,
    truncation: i64,
    coeffs: Vec<BigRat>,
}

impl QSeries {
    pub fn new(valuation: i64, coeffs: Vec<BigRat>) -> Self {
        let truncation = valuation + coeffs.len() as i64;
        Self {
            valuation,
            truncation,
            coeffs,
        }
    }

    /// The zero series, known up to (not including) `truncation`.
    pub fn zero(truncation: i64) -> Self {
        Self {
            valuation: truncation,
            truncation,
            coeffs: Vec::new(),
        }
    }

    /// The constant 1 with coefficients known below `truncation`.
    pub fn one(truncation: i64) -> Self {
        Self::monomial(0, BigRat::one(), truncation)
    }

    /// c·q^e, known below `truncation`.
    pub fn monomial(e: i64, c: BigRat, truncation: i64) -> Self {
        assert!(truncation > e, "monomial exponent beyond truncation");
        let mut coeffs = vec![BigRat::zero(); (truncation - e) as usize];
        coeffs[0] = c;
        Self {
            valuation: e,
            truncation,
            coeffs,
        }
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    /// The order of the first nonzero stored coefficient, if any.
    pub fn order(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.valuation + i as i64)
    }

    /// Coefficient of q^e. Exponents below the valuation are exactly zero;
    /// exponents at or above the truncation are unknown and rejected.
    pub fn coeff(&self, e: i64) -> Result<BigRat> {
        if e >= self.truncation {
            return Err(Error::CoefficientOutOfRange {
                exponent: e,
                truncation: self.truncation,
            });
        }
        if e < self.valuation {
            return Ok(BigRat::zero());
        }
        Ok(self.coeffs[(e - self.valuation) as usize].clone())
    }

    /// Trim leading zero coefficients, raising the valuation.
    pub fn normalized(mut self) -> Self {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => self,
            Some(k) => {
                self.coeffs.drain(..k);
                self.valuation += k as i64;
                self
            }
            None => Self::zero(self.truncation),
        }
    }

    /// Restrict the known range to exponents < `truncation`.
    pub fn truncate(mut self, truncation: i64) -> Self {
        if truncation >= self.truncation {
            return self;
        }
        if truncation <= self.valuation {
            return Self::zero(truncation);
        }
        self.coeffs.truncate((truncation - self.valuation) as usize);
        self.truncation = truncation;
        self
    }

    pub fn neg(&self) -> Self {
        Self {
            valuation: self.valuation,
            truncation: self.truncation,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scalar_mul(&self, s: &BigRat) -> Self {
        Self {
            valuation: self.valuation,
            truncation: self.truncation,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let truncation = self.truncation.min(other.truncation);
        let valuation = self.valuation.min(other.valuation).min(truncation);
        let mut coeffs = vec![BigRat::zero(); (truncation - valuation) as usize];
        for (series, sign) in [(self, 1), (other, 1)] {
            let _ = sign;
            for (i, c) in series.coeffs.iter().enumerate() {
                let e = series.valuation + i as i64;
                if e < truncation {
                    coeffs[(e - valuation) as usize] += c;
                }
            }
        }
        Self {
            valuation,
            truncation,
            coeffs,
        }
        .normalized()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product with pessimistic truncation: the unknown tail of one factor,
    /// multiplied by the lowest term of the other, pollutes exponents from
    /// `trunc_a + val_b` (resp. `trunc_b + val_a`) upward.
    pub fn mul(&self, other: &Self) -> Self {
        let a = self.clone().normalized();
        let b = other.clone().normalized();
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            // One factor is identically zero on its known range.
            let truncation = (a.truncation + b.valuation).min(b.truncation + a.valuation);
            return Self::zero(truncation);
        }
        let valuation = a.valuation + b.valuation;
        let truncation = (a.truncation + b.valuation).min(b.truncation + a.valuation);
        let mut coeffs = vec![BigRat::zero(); (truncation - valuation) as usize];
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let ea = a.valuation + i as i64;
            let jmax = (truncation - ea - b.valuation).min(b.coeffs.len() as i64);
            for (j, cb) in b.coeffs[..jmax.max(0) as usize].iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let idx = (ea + b.valuation + j as i64 - valuation) as usize;
                coeffs[idx] += ca * cb;
            }
        }
        Self {
            valuation,
            truncation,
            coeffs,
        }
        .normalized()
    }

    /// Multiplicative inverse. Requires a nonzero leading coefficient.
    ///
    /// Writing a = q^v (c_0 + c_1 q + ...), the unit part has
    /// `truncation - v` known coefficients, so the inverse is known below
    /// `truncation - 2 v`.
    pub fn inv(&self) -> Result<Self> {
        let a = self.clone().normalized();
        let c0 = match a.coeffs.first() {
            Some(c) if !c.is_zero() => c.clone(),
            _ => return Err(Error::ZeroLeadingCoefficient),
        };
        let n = a.coeffs.len();
        let c0_inv = c0.recip();
        let mut inv = Vec::with_capacity(n);
        inv.push(c0_inv.clone());
        for k in 1..n {
            let mut acc = BigRat::zero();
            for i in 1..=k {
                if !a.coeffs[i].is_zero() && !inv[k - i].is_zero() {
                    acc += &a.coeffs[i] * &inv[k - i];
                }
            }
            inv.push(-acc * &c0_inv);
        }
        Ok(Self {
            valuation: -a.valuation,
            truncation: -a.valuation + n as i64,
            coeffs: inv,
        })
    }

    /// Integer power by repeated squaring (e >= 1).
    pub fn pow(&self, e: u32) -> Self {
        assert!(e >= 1, "pow expects a positive exponent");
        let mut base = self.clone();
        let mut e = e;
        let mut acc: Option<QSeries> = None;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        acc.unwrap()
    }

    /// Known coefficients as (exponent, coefficient) pairs.
    pub fn iter_terms(&self) -> impl Iterator<Item = (i64, &BigRat)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.valuation + i as i64, c))
    }

    /// Equality of all coefficients on the common known range.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let truncation = self.truncation.min(other.truncation);
        let lo = self.valuation.min(other.valuation);
        (lo..truncation).all(|e| {
            let a = self.coeff(e).expect("within truncation");
            let b = other.coeff(e).expect("within truncation");
            a == b
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, ratio};
    use super::*;
    use proptest::prelude::*;

    fn geom(n: i64) -> QSeries {
        // 1 + q + q^2 + ...
        QSeries::new(0, vec![rat(1); n as usize])
    }

    #[test]
    fn geometric_series_identity() {
        let one_minus_q = QSeries::new(0, vec![rat(1), rat(-1)]).truncate(32);
        let mut coeffs = vec![rat(1), rat(-1)];
        coeffs.extend(std::iter::repeat_with(|| rat(0)).take(30));
        let padded = QSeries::new(0, coeffs);
        let product = padded.mul(&geom(32));
        assert_eq!(product.coeff(0).unwrap(), rat(1));
        for e in 1..product.truncation() {
            assert_eq!(product.coeff(e).unwrap(), rat(0), "exponent {e}");
        }
        let _ = one_minus_q;
    }

    #[test]
    fn inverse_of_shifted_unit() {
        // (q^-1 (1 - q))^-1 = q (1 + q + q^2 + ...)
        let a = QSeries::new(-1, vec![rat(1), rat(-1), rat(0), rat(0), rat(0)]);
        let inv = a.inv().unwrap();
        assert_eq!(inv.valuation(), 1);
        for e in 1..inv.truncation() {
            assert_eq!(inv.coeff(e).unwrap(), rat(1));
        }
    }

    #[test]
    fn coefficient_beyond_truncation_rejected() {
        let a = QSeries::new(0, vec![rat(1), rat(2)]);
        assert!(a.coeff(1).is_ok());
        assert!(a.coeff(2).is_err());
        assert_eq!(a.coeff(-5).unwrap(), rat(0));
    }

    #[test]
    fn zero_leading_coefficient_rejected() {
        let z = QSeries::zero(10);
        assert!(z.inv().is_err());
    }

    #[test]
    fn mul_truncation_with_poles() {
        // a known below 5 with valuation -1, b known below 7 with valuation -2:
        // product known below min(5 + -2, 7 + -1) = 3.
        let a = QSeries::new(-1, vec![rat(1); 6]);
        let b = QSeries::new(-2, vec![rat(1); 9]);
        let p = a.mul(&b);
        assert_eq!(p.valuation(), -3);
        assert_eq!(p.truncation(), 3);
    }

    proptest! {
        #[test]
        fn inverse_is_two_sided(coeffs in proptest::collection::vec(-9i64..=9, 1..=10), lead in 1i64..=9, val in -3i64..=3) {
            let mut v = vec![rat(lead)];
            v.extend(coeffs.iter().map(|&c| rat(c)));
            let a = QSeries::new(val, v);
            let inv = a.inv().unwrap();
            let prod = a.mul(&inv).normalized();
            prop_assert_eq!(prod.coeff(0).unwrap(), rat(1));
            for e in prod.valuation()..prod.truncation() {
                if e != 0 {
                    prop_assert_eq!(prod.coeff(e).unwrap(), rat(0));
                }
            }
        }

        #[test]
        fn mul_commutes(a_coeffs in proptest::collection::vec(-9i64..=9, 1..=8),
                        b_coeffs in proptest::collection::vec(-9i64..=9, 1..=8)) {
            let a = QSeries::new(0, a_coeffs.iter().map(|&c| rat(c)).collect());
            let b = QSeries::new(-1, b_coeffs.iter().map(|&c| rat(c)).collect());
            prop_assert!(a.mul(&b).agrees_with(&b.mul(&a)));
        }
    }

    #[test]
    fn scalar_and_ratio() {
        let a = QSeries::new(0, vec![rat(2), rat(4)]);
        let b = a.scalar_mul(&ratio(1, 2));
        assert_eq!(b.coeff(0).unwrap(), rat(1));
        assert_eq!(b.coeff(1).unwrap(), rat(2));
    }
}
