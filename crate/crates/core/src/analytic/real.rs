//! Arbitrary-precision real and complex values.
//!
//! Thin wrappers over binary big-floats carrying their working precision,
//! so that every operation in the numeric layer is performed at the
//! precision requested by the [`PrecisionContext`] and results are
//! bit-reproducible for a given context.

use std::cell::RefCell;
use std::cmp::Ordering;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;

use crate::qseries::BigRat;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// A real number at a fixed binary precision.
#[derive(Debug, Clone)]
pub struct Real {
    v: BigFloat,
    bits: usize,
}

impl Real {
    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn raw(&self) -> &BigFloat {
        &self.v
    }

    pub fn from_raw(v: BigFloat, bits: usize) -> Self {
        Self { v, bits }
    }

    pub fn zero(bits: usize) -> Self {
        Self {
            v: BigFloat::from_i64(0, bits),
            bits,
        }
    }

    pub fn one(bits: usize) -> Self {
        Self::from_i64(1, bits)
    }

    pub fn from_i64(x: i64, bits: usize) -> Self {
        Self {
            v: BigFloat::from_i64(x, bits),
            bits,
        }
    }

    pub fn from_u64(x: u64, bits: usize) -> Self {
        Self {
            v: BigFloat::from_u64(x, bits),
            bits,
        }
    }

    pub fn from_f64(x: f64, bits: usize) -> Self {
        Self {
            v: BigFloat::from_f64(x, bits),
            bits,
        }
    }

    /// Exact conversion while the integer fits in the mantissa.
    pub fn from_bigint(x: &BigInt, bits: usize) -> Self {
        let (sign, digits) = x.to_u32_digits();
        let shift = BigFloat::from_u64(1u64 << 32, bits + 64);
        let mut acc = BigFloat::from_i64(0, bits + 64);
        for d in digits.iter().rev() {
            acc = acc.mul(&shift, bits + 64, RM);
            acc = acc.add(&BigFloat::from_u64(*d as u64, bits + 64), bits + 64, RM);
        }
        if sign == num_bigint::Sign::Minus {
            acc = acc.neg();
        }
        Self {
            v: round_to(acc, bits),
            bits,
        }
    }

    pub fn from_rat(x: &BigRat, bits: usize) -> Self {
        let num = Self::from_bigint(x.numer(), bits + 32);
        let den = Self::from_bigint(x.denom(), bits + 32);
        let q = num.v.div(&den.v, bits, RM);
        Self { v: q, bits }
    }

    pub fn pi(bits: usize) -> Self {
        Self {
            v: with_consts(|cc| cc.pi(bits, RM)),
            bits,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            v: self.v.add(&rhs.v, self.bits, RM),
            bits: self.bits,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            v: self.v.sub(&rhs.v, self.bits, RM),
            bits: self.bits,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            v: self.v.mul(&rhs.v, self.bits, RM),
            bits: self.bits,
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        Self {
            v: self.v.div(&rhs.v, self.bits, RM),
            bits: self.bits,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            v: self.v.neg(),
            bits: self.bits,
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            v: self.v.abs(),
            bits: self.bits,
        }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self.mul(&Self::from_i64(k, self.bits))
    }

    pub fn div_i64(&self, k: i64) -> Self {
        self.div(&Self::from_i64(k, self.bits))
    }

    pub fn recip(&self) -> Self {
        Self::one(self.bits).div(self)
    }

    pub fn powi(&self, e: usize) -> Self {
        Self {
            v: self.v.powi(e, self.bits, RM),
            bits: self.bits,
        }
    }

    pub fn sqrt(&self) -> Self {
        Self {
            v: self.v.sqrt(self.bits, RM),
            bits: self.bits,
        }
    }

    pub fn exp(&self) -> Self {
        Self {
            v: with_consts(|cc| self.v.exp(self.bits, RM, cc)),
            bits: self.bits,
        }
    }

    pub fn ln(&self) -> Self {
        Self {
            v: with_consts(|cc| self.v.ln(self.bits, RM, cc)),
            bits: self.bits,
        }
    }

    pub fn sin(&self) -> Self {
        Self {
            v: with_consts(|cc| self.v.sin(self.bits, RM, cc)),
            bits: self.bits,
        }
    }

    pub fn cos(&self) -> Self {
        Self {
            v: with_consts(|cc| self.v.cos(self.bits, RM, cc)),
            bits: self.bits,
        }
    }

    /// Rounded to a different working precision.
    pub fn with_bits(&self, bits: usize) -> Self {
        Self {
            v: round_to(self.v.clone(), bits),
            bits,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.v.is_positive() && !self.v.is_zero()
    }

    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn cmp_real(&self, rhs: &Self) -> Ordering {
        let s = self.v.cmp(&rhs.v).expect("comparison of non-NaN values");
        if s < 0 {
            Ordering::Less
        } else if s > 0 {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    }

    /// Binary exponent (roughly log2 of magnitude), or None for zero/NaN.
    pub fn exponent(&self) -> Option<i32> {
        self.v.exponent().map(|e| e as i32)
    }

    pub fn to_f64(&self) -> f64 {
        if self.v.is_zero() {
            return 0.0;
        }
        format!("{}", self.v).parse::<f64>().unwrap_or(f64::NAN)
    }

    /// Deterministic decimal rendering with the given number of significant
    /// digits, as "d.ddd...e±k".
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.v.is_zero() {
            return "0".to_string();
        }
        let s = format!("{}", self.v);
        trim_scientific(&s, digits)
    }

    pub fn parse_decimal(s: &str, bits: usize) -> Self {
        let v = with_consts(|cc| BigFloat::parse(s, Radix::Dec, bits, RM, cc));
        Self { v, bits }
    }
}

fn round_to(v: BigFloat, bits: usize) -> BigFloat {
    v.add(&BigFloat::from_i64(0, bits), bits, RM)
}

/// Truncate a "[-]d.ddd...e±k" rendering to `digits` significant digits,
/// rounding the last kept digit half-up on the following digit.
fn trim_scientific(s: &str, digits: usize) -> String {
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (s, 0i64),
    };
    let neg = mantissa.starts_with('-');
    let digits_str: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    if digits_str.is_empty() {
        return "0".to_string();
    }
    let keep = digits.max(1).min(digits_str.len());
    let mut kept: Vec<u8> = digits_str.as_bytes()[..keep].iter().map(|b| b - b'0').collect();
    let mut exp_out = exp;
    if keep < digits_str.len() && digits_str.as_bytes()[keep] >= b'5' {
        // propagate the carry
        let mut i = keep;
        loop {
            if i == 0 {
                kept.insert(0, 1);
                kept.pop();
                exp_out += 1;
                break;
            }
            i -= 1;
            if kept[i] == 9 {
                kept[i] = 0;
            } else {
                kept[i] += 1;
                break;
            }
        }
    }
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push((kept[0] + b'0') as char);
    if kept.len() > 1 {
        out.push('.');
        for d in &kept[1..] {
            out.push((d + b'0') as char);
        }
    }
    out.push('e');
    out.push_str(&exp_out.to_string());
    out
}

/// A complex number as a pair of [`Real`].
#[derive(Debug, Clone)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Self { re, im }
    }

    pub fn zero(bits: usize) -> Self {
        Self::new(Real::zero(bits), Real::zero(bits))
    }

    pub fn from_real(re: Real) -> Self {
        let bits = re.bits();
        Self::new(re, Real::zero(bits))
    }

    /// r·(cos φ + i sin φ)
    pub fn from_polar(r: &Real, phi: &Real) -> Self {
        Self::new(r.mul(&phi.cos()), r.mul(&phi.sin()))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(self.re.add(&rhs.re), self.im.add(&rhs.im))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::new(self.re.sub(&rhs.re), self.im.sub(&rhs.im))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let re = self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im));
        let im = self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re));
        Self::new(re, im)
    }

    pub fn scale(&self, s: &Real) -> Self {
        Self::new(self.re.mul(s), self.im.mul(s))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), self.im.neg())
    }

    pub fn recip(&self) -> Self {
        let norm = self.norm_sq();
        Self::new(self.re.div(&norm), self.im.neg().div(&norm))
    }

    pub fn norm_sq(&self) -> Real {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> Real {
        self.norm_sq().sqrt()
    }
}

/// Guarded-precision sum: accumulates with extra mantissa headroom and
/// rounds once at the end, compensating the rounding of long series.
pub struct Accumulator {
    sum: BigFloat,
    bits: usize,
    guard: usize,
}

impl Accumulator {
    pub fn new(bits: usize) -> Self {
        let guard = bits + 64;
        Self {
            sum: BigFloat::from_i64(0, guard),
            bits,
            guard,
        }
    }

    pub fn add(&mut self, x: &Real) {
        self.sum = self.sum.add(x.raw(), self.guard, RM);
    }

    pub fn add_raw(&mut self, x: &BigFloat) {
        self.sum = self.sum.add(x, self.guard, RM);
    }

    pub fn value(&self) -> Real {
        Real::from_raw(round_to(self.sum.clone(), self.bits), self.bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::ratio;

    #[test]
    fn bigint_round_trip() {
        let bits = 256;
        let x = BigInt::parse_bytes(b"-73562460235683647105", 10).unwrap();
        let r = Real::from_bigint(&x, bits);
        assert_eq!(r.to_decimal(20), "-7.3562460235683647105e19");
    }

    #[test]
    fn rational_conversion() {
        let bits = 192;
        let r = Real::from_rat(&ratio(-2615348736000, 691), bits);
        let f = r.to_f64();
        assert!((f + 3.784875161e9).abs() < 1.0);
    }

    #[test]
    fn decimal_trimming() {
        assert_eq!(trim_scientific("1.23456789e3", 4), "1.235e3");
        assert_eq!(trim_scientific("9.99e0", 2), "1.0e1");
        assert_eq!(trim_scientific("-2.5e-4", 1), "-3e-4");
    }

    #[test]
    fn complex_arithmetic() {
        let bits = 128;
        let i = Complex::new(Real::zero(bits), Real::one(bits));
        let m1 = i.mul(&i);
        assert!(m1.re.add(&Real::one(bits)).abs().to_f64() < 1e-30);
        assert!(m1.im.abs().to_f64() < 1e-30);

        let pi = Real::pi(bits);
        let z = Complex::from_polar(&Real::from_i64(2, bits), &pi.div_i64(3));
        assert!((z.abs().to_f64() - 2.0).abs() < 1e-30);
        assert!((z.re.to_f64() - 1.0).abs() < 1e-25);
    }

    #[test]
    fn accumulator_guards_precision() {
        let bits = 64;
        let mut acc = Accumulator::new(bits);
        let tiny = Real::from_f64(1e-25, bits + 64);
        acc.add(&Real::one(bits + 64));
        for _ in 0..1000 {
            acc.add(&tiny);
        }
        acc.add(&Real::one(bits + 64).neg());
        let got = acc.value().to_f64();
        assert!((got - 1e-22).abs() < 1e-30, "got {got}");
    }
}
