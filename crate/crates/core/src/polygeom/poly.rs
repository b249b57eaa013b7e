use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exactfield::FieldElement;

/// `x^x * y^y * z^z`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Monomial {
    pub const fn new(x: u32, y: u32, z: u32) -> Self {
        Monomial { x, y, z }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.y + self.z
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.x + other.x, self.y + other.y, self.z + other.z)
    }

    /// Exponents after the substitution `x -> y, y -> z, z -> x`.
    pub fn cyclic_tau(&self) -> Monomial {
        Monomial::new(self.z, self.x, self.y)
    }

    pub fn evaluate(&self, coords: &[FieldElement; 3]) -> FieldElement {
        let mut v = coords[0].pow(self.x);
        if self.y > 0 {
            v = &v * &coords[1].pow(self.y);
        }
        if self.z > 0 {
            v = &v * &coords[2].pow(self.z);
        }
        v
    }
}

/// Graded lexicographic with `x > y > z`; the *greatest* monomial sorts first,
/// so iteration over a `BTreeMap<Monomial, _>` runs `x^k, x^{k-1}y, ...`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (other.degree(), other.x, other.y).cmp(&(self.degree(), self.x, self.y))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("x", self.x), ("y", self.y), ("z", self.z)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Basis of `S_k` in graded lexicographic order. Empty for `k < 0`.
pub fn monomials(k: i64) -> Vec<Monomial> {
    if k < 0 {
        return Vec::new();
    }
    let k = k as u32;
    let mut out = Vec::with_capacity(dim_s(k as i64));
    for i in (0..=k).rev() {
        for j in (0..=k - i).rev() {
            out.push(Monomial::new(i, j, k - i - j));
        }
    }
    out
}

/// `dim S_k = (k+1)(k+2)/2`, zero for negative `k`.
pub fn dim_s(k: i64) -> usize {
    if k < 0 {
        0
    } else {
        let k = k as usize;
        (k + 1) * (k + 2) / 2
    }
}

/// Homogeneous form in `x, y, z`. Only nonzero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomogeneousPolynomial {
    degree: u32,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl HomogeneousPolynomial {
    pub fn zero(degree: u32) -> Self {
        HomogeneousPolynomial { degree, terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_terms(0, [(Monomial::new(0, 0, 0), c)])
    }

    /// `a x + b y + c z`.
    pub fn linear(a: &FieldElement, b: &FieldElement, c: &FieldElement) -> Self {
        Self::from_terms(
            1,
            [
                (Monomial::new(1, 0, 0), a.clone()),
                (Monomial::new(0, 1, 0), b.clone()),
                (Monomial::new(0, 0, 1), c.clone()),
            ],
        )
    }

    /// Panics if a monomial's degree differs from `degree`.
    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Monomial, FieldElement)>) -> Self {
        let mut p = Self::zero(degree);
        for (m, c) in terms {
            assert_eq!(m.degree(), degree, "monomial {m} in a form of degree {degree}");
            p.add_term(m, &c);
        }
        p
    }

    /// Coefficients listed against [`monomials`]`(degree)`.
    pub fn from_coefficients(degree: u32, coeffs: &[FieldElement]) -> Self {
        let basis = monomials(degree as i64);
        assert_eq!(basis.len(), coeffs.len());
        Self::from_terms(degree, basis.into_iter().zip(coeffs.iter().cloned()))
    }

    fn add_term(&mut self, m: Monomial, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(FieldElement::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn coefficients(&self) -> Vec<FieldElement> {
        monomials(self.degree as i64).iter().map(|m| self.coefficient(m)).collect()
    }

    /// Coefficient of the greatest monomial present.
    pub fn leading_coefficient(&self) -> Option<&FieldElement> {
        self.terms.values().next()
    }

    /// Rescaled so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        HomogeneousPolynomial {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-FieldElement::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a HomogeneousPolynomial>) -> Self {
        factors
            .into_iter()
            .fold(Self::constant(FieldElement::one()), |acc, f| acc.mul(f))
    }

    /// `(tau f)(x, y, z) = f(y, z, x)`.
    pub fn cyclic_tau(&self) -> Self {
        HomogeneousPolynomial {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (m.cyclic_tau(), c.clone())).collect(),
        }
    }

    pub fn evaluate_at(&self, coords: &[FieldElement; 3]) -> FieldElement {
        let mut acc = FieldElement::zero();
        for (m, c) in &self.terms {
            acc += &(c * &m.evaluate(coords));
        }
        acc
    }

    /// True if `self = lambda * other` for some nonzero `lambda`.
    pub fn is_scalar_multiple_of(&self, other: &Self) -> bool {
        if self.degree != other.degree || self.is_zero() != other.is_zero() {
            return false;
        }
        if self.is_zero() {
            return true;
        }
        self.monic() == other.monic()
    }
}

fn is_negative(c: &FieldElement) -> bool {
    // only "simple" coefficients (one nonzero part) are printed with a leading minus
    (c.w_part().is_zero() && c.re_part().is_negative())
        || (c.re_part().is_zero() && c.w_part().is_negative())
}

impl fmt::Display for HomogeneousPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c } else { c.clone() };
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = m.degree() == 0;
            let coeff = if !abs.re_part().is_zero() && !abs.w_part().is_zero() {
                format!("({abs})")
            } else {
                abs.to_string()
            };
            if is_const {
                f.write_str(&coeff)?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{coeff}*{m}")?;
            }
        }
        Ok(())
    }
}
