use std::fmt;

use num_traits::{One, Zero};

use super::linalg::{det3, Matrix};
use super::poly::{dim_s, monomials, HomogeneousPolynomial};
use crate::error::{Error, Result};
use crate::exactfield::FieldElement;

/// Scale so the last nonzero entry is 1. `None` for the zero triple.
fn canonicalize(mut v: [FieldElement; 3]) -> Option<[FieldElement; 3]> {
    let last = v.iter().rposition(|c| !c.is_zero())?;
    let inv = v[last].inv().expect("nonzero");
    for c in v.iter_mut() {
        *c = &*c * &inv;
    }
    Some(v)
}

fn cross(a: &[FieldElement; 3], b: &[FieldElement; 3]) -> [FieldElement; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

fn dot(a: &[FieldElement; 3], b: &[FieldElement; 3]) -> FieldElement {
    let mut acc = &a[0] * &b[0];
    acc += &(&a[1] * &b[1]);
    acc += &(&a[2] * &b[2]);
    acc
}

fn fmt_triple(f: &mut fmt::Formatter<'_>, v: &[FieldElement; 3], sep: &str) -> fmt::Result {
    write!(f, "{}{sep}{}{sep}{}", v[0], v[1], v[2])
}

/// Point of the projective plane, stored with its last nonzero coordinate equal to 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ProjectivePoint {
    coords: [FieldElement; 3],
}

impl ProjectivePoint {
    pub fn new(x: FieldElement, y: FieldElement, z: FieldElement) -> Result<Self> {
        Self::from_coords([x, y, z])
    }

    pub fn from_coords(coords: [FieldElement; 3]) -> Result<Self> {
        canonicalize(coords)
            .map(|coords| ProjectivePoint { coords })
            .ok_or_else(|| Error::DegenerateInput("point with all coordinates zero".into()))
    }

    pub fn ints(x: i64, y: i64, z: i64) -> Result<Self> {
        Self::new(x.into(), y.into(), z.into())
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    /// The image under the coordinate cycle that carries the zero set of `f`
    /// onto the zero set of `f.cyclic_tau()`: `(x:y:z) -> (z:x:y)`.
    pub fn cyclic_tau(&self) -> ProjectivePoint {
        let [x, y, z] = self.coords.clone();
        ProjectivePoint::from_coords([z, x, y]).expect("nonzero")
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        fmt_triple(f, &self.coords, ":")?;
        f.write_str(")")
    }
}

/// Line `a x + b y + c z = 0`, canonicalized like [`ProjectivePoint`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ProjectiveLine {
    coeffs: [FieldElement; 3],
}

impl ProjectiveLine {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement) -> Result<Self> {
        Self::from_coeffs([a, b, c])
    }

    pub fn from_coeffs(coeffs: [FieldElement; 3]) -> Result<Self> {
        canonicalize(coeffs)
            .map(|coeffs| ProjectiveLine { coeffs })
            .ok_or_else(|| Error::DegenerateInput("line with all coefficients zero".into()))
    }

    pub fn ints(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into())
    }

    /// The line through two distinct points.
    pub fn through(p: &ProjectivePoint, q: &ProjectivePoint) -> Result<Self> {
        if p == q {
            return Err(Error::DegenerateInput(format!("line through the single point {p}")));
        }
        Self::from_coeffs(cross(p.coords(), q.coords()))
    }

    pub fn coeffs(&self) -> &[FieldElement; 3] {
        &self.coeffs
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        dot(&self.coeffs, p.coords()).is_zero()
    }

    pub fn to_form(&self) -> HomogeneousPolynomial {
        let [a, b, c] = &self.coeffs;
        HomogeneousPolynomial::linear(a, b, c)
    }

    /// The line whose form is `tau` applied to this line's form.
    pub fn cyclic_tau(&self) -> ProjectiveLine {
        // a y + b z + c x
        let [a, b, c] = self.coeffs.clone();
        ProjectiveLine::from_coeffs([c, a, b]).expect("nonzero")
    }
}

impl fmt::Display for ProjectiveLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        fmt_triple(f, &self.coeffs, " ")?;
        f.write_str("]")
    }
}

/// Common point of two distinct lines.
pub fn line_meet(l1: &ProjectiveLine, l2: &ProjectiveLine) -> Result<ProjectivePoint> {
    if l1 == l2 {
        return Err(Error::DegenerateInput(format!("meet of the line {l1} with itself")));
    }
    ProjectivePoint::from_coords(cross(l1.coeffs(), l2.coeffs()))
}

pub fn collinear(p: &ProjectivePoint, q: &ProjectivePoint, r: &ProjectivePoint) -> bool {
    det3(&[p.coords().clone(), q.coords().clone(), r.coords().clone()]).is_zero()
}

/// Size of the largest collinear subset (0, 1 or 2 for tiny sets).
pub fn max_collinear(points: &[ProjectivePoint]) -> usize {
    if points.len() <= 2 {
        return points.len();
    }
    let mut best = 2;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let on = (0..points.len())
                .filter(|&k| k == i || k == j || collinear(&points[i], &points[j], &points[k]))
                .count();
            best = best.max(on);
        }
    }
    best
}

/// Evaluation map from `S_k` to values at the given homogeneous triples.
/// Rows follow `reps`, columns follow [`monomials`]`(k)`.
pub fn evaluation_matrix_raw(reps: &[[FieldElement; 3]], k: i64) -> Matrix {
    let basis = monomials(k);
    let rows = reps
        .iter()
        .map(|p| {
            let powers: Vec<[FieldElement; 3]> = {
                let kmax = k.max(0) as u32;
                let mut acc = vec![[FieldElement::one(), FieldElement::one(), FieldElement::one()]];
                for e in 1..=kmax {
                    let prev = &acc[(e - 1) as usize];
                    acc.push([&prev[0] * &p[0], &prev[1] * &p[1], &prev[2] * &p[2]]);
                }
                acc
            };
            basis
                .iter()
                .map(|m| {
                    let v = &powers[m.x as usize][0] * &powers[m.y as usize][1];
                    &v * &powers[m.z as usize][2]
                })
                .collect()
        })
        .collect();
    Matrix::from_rows_with_cols(rows, basis.len())
}

/// Evaluation map at the canonical representatives of `points`.
pub fn evaluation_matrix(points: &[ProjectivePoint], k: i64) -> Matrix {
    let reps: Vec<[FieldElement; 3]> = points.iter().map(|p| p.coords().clone()).collect();
    evaluation_matrix_raw(&reps, k)
}

/// The evaluation map on `S_k` has rank `min(|points|, dim S_k)`.
pub fn imposes_independent_conditions(points: &[ProjectivePoint], k: i64) -> bool {
    evaluation_matrix(points, k).rank() == points.len().min(dim_s(k))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Conic {
    form: HomogeneousPolynomial,
}

impl Conic {
    pub fn new(form: HomogeneousPolynomial) -> Result<Self> {
        if form.degree() != 2 || form.is_zero() {
            return Err(Error::DegenerateInput("a conic needs a nonzero quadratic form".into()));
        }
        Ok(Conic { form })
    }

    pub fn form(&self) -> &HomogeneousPolynomial {
        &self.form
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        self.form.evaluate_at(p.coords()).is_zero()
    }

    /// Symmetric matrix `A` with `q(v) = v^T A v`.
    pub fn symmetric_matrix(&self) -> [[FieldElement; 3]; 3] {
        use super::poly::Monomial as M;
        let half = FieldElement::from_rational(crate::exactfield::ratio(1, 2));
        let c = |x, y, z| self.form.coefficient(&M::new(x, y, z));
        let h = |x, y, z| &c(x, y, z) * &half;
        [
            [c(2, 0, 0), h(1, 1, 0), h(1, 0, 1)],
            [h(1, 1, 0), c(0, 2, 0), h(0, 1, 1)],
            [h(1, 0, 1), h(0, 1, 1), c(0, 0, 2)],
        ]
    }

    pub fn is_smooth(&self) -> bool {
        !det3(&self.symmetric_matrix()).is_zero()
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form)
    }
}

/// A conic through all `points`, if one exists. The form is the first kernel
/// vector of the `S_2` evaluation matrix (see [`Matrix::kernel_basis`]).
pub fn conic_through(points: &[ProjectivePoint]) -> Option<Conic> {
    let kernel = evaluation_matrix(points, 2).kernel_basis();
    let v = kernel.into_iter().next()?;
    let conic = Conic::new(HomogeneousPolynomial::from_coefficients(2, &v)).ok()?;
    debug_assert!(points.iter().all(|p| conic.contains(p)));
    Some(conic)
}

pub fn conic_is_smooth(c: &Conic) -> bool {
    c.is_smooth()
}
