//! Dense univariate polynomials with exact integer or rational coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qseries::BigRat;

/// Polynomial over Z, `coeffs[i]` the coefficient of x^i, trailing
/// coefficient nonzero unless the polynomial is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![BigInt::from(c)])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// x^d
    pub fn power_of_x(d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = BigInt::one();
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Self::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::new(coeffs)
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRat::from_integer(c.clone());
        }
        acc
    }

    /// Sign of p(a/b) for b > 0, via the homogenized integer value
    /// Σ c_i a^i b^(d-i); avoids building rationals.
    pub fn sign_at(&self, x: &BigRat) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let a = x.numer();
        let b = x.denom();
        let d = self.degree();
        let mut a_pow = vec![BigInt::one()];
        let mut b_pow = vec![BigInt::one()];
        for i in 1..=d {
            a_pow.push(&a_pow[i - 1] * a);
            b_pow.push(&b_pow[i - 1] * b);
        }
        let mut acc = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c * &a_pow[i] * &b_pow[d - i];
            }
        }
        bigint_sign(&acc)
    }

    /// Greatest common divisor of the coefficients (positive; 0 for the zero
    /// polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the content, keeping the leading sign.
    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Exact division; error if the remainder is nonzero (requires
    /// divisor leading coefficient +-1 to stay in Z).
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::InvalidArgument("division by the zero polynomial".into()));
        }
        let lead = divisor.leading();
        if !lead.is_one() && lead != -BigInt::one() {
            return Err(Error::InvalidArgument(
                "exact integer division needs a unit leading coefficient".into(),
            ));
        }
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return if self.is_zero() {
                Ok(Self::zero())
            } else {
                Err(Error::Internal("inexact polynomial division".into()))
            };
        }
        let dq = rem.len() - divisor.coeffs.len();
        let mut quot = vec![BigInt::zero(); dq + 1];
        for k in (0..=dq).rev() {
            let top = rem[k + divisor.degree()].clone();
            let q = &top * &lead; // lead in {1,-1}: top / lead == top * lead
            if !q.is_zero() {
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    let delta = &q * c;
                    rem[k + j] -= delta;
                }
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(Self::new(quot))
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| BigRat::from_integer(c.clone())).collect())
    }

    /// Human-readable form like "x^3 - 2232x^2 + 1069956x - 36866976".
    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => out.push('x'),
                _ => out.push_str(&format!("x^{i}")),
            }
        }
        out
    }
}

pub fn bigint_sign(x: &BigInt) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Polynomial over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRat>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRat {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![BigRat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Self::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&Self::new(other.coeffs.iter().map(|c| -c).collect()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::new(coeffs)
    }

    pub fn scale(&self, s: &BigRat) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// The polynomial with denominators cleared, together with the positive
    /// common denominator used.
    pub fn clear_denominators(&self) -> (IntPoly, BigInt) {
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        (IntPoly::new(coeffs), lcm)
    }

    /// Human-readable form with rational coefficients.
    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c < &BigRat::zero() { "-" } else { "+" };
            if out.is_empty() {
                if c < &BigRat::zero() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let mag_str = if mag.denom().is_one() {
                mag.numer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            if mag_str != "1" || i == 0 {
                out.push_str(&mag_str);
            }
            match i {
                0 => {}
                1 => out.push('x'),
                _ => out.push_str(&format!("x^{i}")),
            }
        }
        out
    }

    /// Exact integer polynomial if every coefficient is integral.
    pub fn to_int(&self) -> Result<IntPoly> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.denom().is_one() {
                return Err(Error::Internal(format!(
                    "expected integral coefficient, found {c}"
                )));
            }
            coeffs.push(c.numer().clone());
        }
        Ok(IntPoly::new(coeffs))
    }
}
