//! Exact arithmetic in `Q` and in the sixth cyclotomic field `K = Q(w)`.
//!
//! `w` is a primitive sixth root of unity, so `w^2 = w - 1`, `w^3 = -1` and
//! `w^6 = 1`. The primitive cube roots of unity are `w - 1` and `-w`.
//! Every element is stored as `re + w_part * w` with reduced rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Element `re + w_part * w` of `Q(w)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FieldElement {
    re: Rational,
    w_part: Rational,
}

impl FieldElement {
    pub fn new(re: Rational, w_part: Rational) -> Self {
        FieldElement { re, w_part }
    }

    pub fn from_rational(re: Rational) -> Self {
        FieldElement { re, w_part: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    /// Shorthand for `p + q*w` with integer parts.
    pub fn ints(p: i64, q: i64) -> Self {
        FieldElement { re: rat(p), w_part: rat(q) }
    }

    /// The primitive sixth root of unity `w`.
    pub fn w() -> Self {
        Self::ints(0, 1)
    }

    /// The primitive cube root of unity `omega = w^2 = w - 1`.
    pub fn omega() -> Self {
        Self::ints(-1, 1)
    }

    /// `omega^2 = w^4 = -w`.
    pub fn omega_sq() -> Self {
        Self::ints(0, -1)
    }

    pub fn re_part(&self) -> &Rational {
        &self.re
    }

    pub fn w_part(&self) -> &Rational {
        &self.w_part
    }

    pub fn is_rational(&self) -> bool {
        self.w_part.is_zero()
    }

    /// Complex conjugate. Since `conj(w) = w^5 = 1 - w`,
    /// `conj(p + q w) = (p + q) - q w`.
    pub fn conj(&self) -> Self {
        FieldElement {
            re: &self.re + &self.w_part,
            w_part: -&self.w_part,
        }
    }

    /// Field norm `x * conj(x) = p^2 + p q + q^2`.
    pub fn norm(&self) -> Rational {
        let (p, q) = (&self.re, &self.w_part);
        p * p + p * q + q * q
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conj();
        Ok(FieldElement { re: c.re / &n, w_part: c.w_part / n })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = FieldElement::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Zero for FieldElement {
    fn zero() -> Self {
        FieldElement { re: Rational::zero(), w_part: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.w_part.is_zero()
    }
}

impl One for FieldElement {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

// Total order used only for deterministic sorting: lexicographic on (re, w).
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.w_part.cmp(&other.w_part))
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement { re: &self.re + &rhs.re, w_part: &self.w_part + &rhs.w_part }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement { re: &self.re - &rhs.re, w_part: &self.w_part - &rhs.w_part }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    // (p + q w)(r + s w) = (pr - qs) + (ps + qr + qs) w
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        let (p, q) = (&self.re, &self.w_part);
        let (r, s) = (&rhs.re, &rhs.w_part);
        if q.is_zero() && s.is_zero() {
            return FieldElement::from_rational(p * r);
        }
        let qs = q * s;
        FieldElement { re: p * r - &qs, w_part: p * s + q * r + qs }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { re: -&self.re, w_part: -&self.w_part }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { re: -self.re, w_part: -self.w_part }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Panics on a zero divisor; use [`FieldElement::checked_div`] for fallible division.
impl Div<FieldElement> for FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: FieldElement) -> FieldElement {
        self.checked_div(&rhs).expect("division by zero in Q(w)")
    }
}

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        self.re += &rhs.re;
        self.w_part += &rhs.w_part;
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        self.re -= &rhs.re;
        self.w_part -= &rhs.w_part;
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = &*self * rhs;
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text: reduced fractions, zero parts omitted, unit `w`
/// coefficients printed as `w` / `-w`. Examples: `0`, `-1/2`, `10w`, `1-w`,
/// `-1/2+3w`.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.w_part.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let mut out = String::new();
        if !self.re.is_zero() {
            out.push_str(&fmt_rational(&self.re));
        }
        let q = &self.w_part;
        if q.is_negative() {
            out.push('-');
        } else if !self.re.is_zero() {
            out.push('+');
        }
        let a = q.abs();
        if !a.is_one() {
            out.push_str(&fmt_rational(&a));
        }
        out.push('w');
        f.write_str(&out)
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    fn int(s: &str) -> Option<BigInt> {
        let digits = s.strip_prefix('-').unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse().ok()
    }
    match s.split_once('/') {
        None => int(s).map(Rational::from_integer),
        Some((n, d)) => {
            if d.starts_with('-') {
                return None;
            }
            let d = int(d)?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(int(n)?, d))
        }
    }
}

impl FromStr for FieldElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { line: 0, msg: format!("bad coefficient `{s}`") };
        if s.is_empty() || s.chars().any(char::is_whitespace) {
            return Err(bad());
        }
        let Some(body) = s.strip_suffix('w') else {
            return parse_rational(s).map(FieldElement::from_rational).ok_or_else(bad);
        };
        // Split `[RAT](+|-)[RAT]` at the last sign that is not part of a leading
        // minus or directly after the start.
        let split = body
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .next_back();
        let (re_str, w_str) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let re = if re_str.is_empty() {
            Rational::zero()
        } else {
            parse_rational(re_str).ok_or_else(bad)?
        };
        let w_str = w_str.strip_prefix('+').unwrap_or(w_str);
        let w_part = match w_str {
            "" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other).ok_or_else(bad)?,
        };
        Ok(FieldElement { re, w_part })
    }
}
