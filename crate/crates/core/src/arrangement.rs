//! Line arrangements and their intersection lattices.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exactfield::FieldElement;
use crate::polygeom::{line_meet, HomogeneousPolynomial, ProjectiveLine, ProjectivePoint};

/// Upper bound on the number of lines accepted from files.
pub const MAX_LINES: usize = 64;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Arrangement {
    label: String,
    lines: Vec<ProjectiveLine>,
}

impl Arrangement {
    /// At least two lines, pairwise distinct as projective lines.
    pub fn new(label: impl Into<String>, lines: Vec<ProjectiveLine>) -> Result<Self> {
        if lines.len() < 2 {
            return Err(Error::InvalidArrangement(format!(
                "an arrangement needs at least 2 lines, got {}",
                lines.len()
            )));
        }
        let mut seen = BTreeMap::new();
        for (i, l) in lines.iter().enumerate() {
            if let Some(j) = seen.insert(l, i) {
                return Err(Error::InvalidArrangement(format!("lines {j} and {i} coincide: {l}")));
            }
        }
        Ok(Arrangement { label: label.into(), lines })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn lines(&self) -> &[ProjectiveLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Product of the linear forms of the lines (defined up to a scalar).
    pub fn defining_form(&self) -> HomogeneousPolynomial {
        let forms: Vec<_> = self.lines.iter().map(ProjectiveLine::to_form).collect();
        HomogeneousPolynomial::product(&forms)
    }

    /// Projective change of coordinates acting on line coefficient rows:
    /// `(a, b, c) -> (a, b, c) * m`. `m` must be invertible.
    pub fn transform(&self, m: &[[FieldElement; 3]; 3]) -> Result<Arrangement> {
        let lines = self
            .lines
            .iter()
            .map(|l| {
                let v = l.coeffs();
                let col = |j: usize| {
                    let mut acc = &v[0] * &m[0][j];
                    acc += &(&v[1] * &m[1][j]);
                    acc += &(&v[2] * &m[2][j]);
                    acc
                };
                ProjectiveLine::from_coeffs([col(0), col(1), col(2)])
            })
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(self.label.clone(), lines)
    }

    /// Reorders lines so that new line `i` is old line `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Arrangement {
        assert_eq!(perm.len(), self.lines.len());
        Arrangement {
            label: self.label.clone(),
            lines: perm.iter().map(|&i| self.lines[i].clone()).collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticePoint {
    pub point: ProjectivePoint,
    /// Indices of the lines through `point`, increasing.
    pub incident: Vec<usize>,
}

impl LatticePoint {
    pub fn multiplicity(&self) -> usize {
        self.incident.len()
    }
}

/// Multiple points of an arrangement, sorted by canonical coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntersectionLattice {
    line_count: usize,
    points: Vec<LatticePoint>,
}

impl IntersectionLattice {
    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn line_count(&self) -> usize {
        self.line_count
    }

    /// Index into [`Self::points`] of the meet of lines `i != j`, as a dense
    /// `d x d` table.
    pub fn pair_table(&self) -> Vec<Vec<usize>> {
        let d = self.line_count;
        let mut table = vec![vec![usize::MAX; d]; d];
        for (idx, lp) in self.points.iter().enumerate() {
            for &a in &lp.incident {
                for &b in &lp.incident {
                    if a != b {
                        table[a][b] = idx;
                    }
                }
            }
        }
        table
    }

    /// Number of points of each multiplicity.
    pub fn multiplicity_counts(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for p in &self.points {
            *counts.entry(p.multiplicity()).or_insert(0) += 1;
        }
        counts
    }
}

pub fn build_lattice(a: &Arrangement) -> Result<IntersectionLattice> {
    let lines = a.lines();
    let mut groups: BTreeMap<ProjectivePoint, BTreeSet<usize>> = BTreeMap::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = line_meet(&lines[i], &lines[j])
                .map_err(|_| Error::InvalidArrangement(format!("lines {i} and {j} coincide")))?;
            let entry = groups.entry(p).or_default();
            entry.insert(i);
            entry.insert(j);
        }
    }
    let points = groups
        .into_iter()
        .map(|(point, incident)| LatticePoint { point, incident: incident.into_iter().collect() })
        .collect();
    Ok(IntersectionLattice { line_count: lines.len(), points })
}

/// Proof that every multiple point is a double or a triple point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TripleOnlyCertificate {
    pub double_points: Vec<LatticePoint>,
    pub triple_points: Vec<LatticePoint>,
}

impl TripleOnlyCertificate {
    /// Triple points in lattice order.
    pub fn triple_points(&self) -> Vec<ProjectivePoint> {
        self.triple_points.iter().map(|p| p.point.clone()).collect()
    }
}

pub fn certify_triple_only(lat: &IntersectionLattice) -> Result<TripleOnlyCertificate> {
    let mut double_points = Vec::new();
    let mut triple_points = Vec::new();
    for p in lat.points() {
        match p.multiplicity() {
            2 => double_points.push(p.clone()),
            3 => triple_points.push(p.clone()),
            n => {
                return Err(Error::HypothesisViolation { point: p.point.to_string(), multiplicity: n })
            }
        }
    }
    Ok(TripleOnlyCertificate { double_points, triple_points })
}

pub fn triple_points(cert: &TripleOnlyCertificate) -> Vec<ProjectivePoint> {
    cert.triple_points()
}

/// Lattice plus certificate in one step.
pub fn certify(a: &Arrangement) -> Result<(IntersectionLattice, TripleOnlyCertificate)> {
    let lat = build_lattice(a)?;
    let cert = certify_triple_only(&lat)?;
    Ok((lat, cert))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ln(a: i64, b: i64, c: i64) -> ProjectiveLine {
        ProjectiveLine::ints(a, b, c).unwrap()
    }

    fn a3() -> Arrangement {
        Arrangement::new(
            "a3",
            vec![ln(1, -1, 0), ln(1, 1, 0), ln(0, 1, -1), ln(0, 1, 1), ln(1, 0, -1), ln(1, 0, 1)],
        )
        .unwrap()
    }

    fn pair_count(lat: &IntersectionLattice) -> usize {
        lat.points().iter().map(|p| p.multiplicity() * (p.multiplicity() - 1) / 2).sum()
    }

    #[test]
    fn a3_lattice() {
        let lat = build_lattice(&a3()).unwrap();
        let counts = lat.multiplicity_counts();
        assert_eq!(counts[&3], 4);
        assert_eq!(counts[&2], 3);
        assert_eq!(pair_count(&lat), 15);
        let cert = certify_triple_only(&lat).unwrap();
        let t = triple_points(&cert);
        let expected: Vec<_> = [(-1, -1, 1), (-1, 1, 1), (1, -1, 1), (1, 1, 1)]
            .iter()
            .map(|&(x, y, z)| ProjectivePoint::ints(x, y, z).unwrap())
            .collect();
        assert_eq!(t, expected);
    }

    #[test]
    fn two_lines() {
        let a = Arrangement::new("two", vec![ln(1, 0, 0), ln(0, 1, 0)]).unwrap();
        let lat = build_lattice(&a).unwrap();
        assert_eq!(lat.points().len(), 1);
        assert_eq!(lat.points()[0].multiplicity(), 2);
    }

    #[test]
    fn concurrent_three() {
        let a = Arrangement::new("c3", vec![ln(1, -1, 0), ln(0, 1, -1), ln(1, 0, -1)]).unwrap();
        let cert = certify_triple_only(&build_lattice(&a).unwrap()).unwrap();
        assert!(cert.double_points.is_empty());
        assert_eq!(triple_points(&cert), vec![ProjectivePoint::ints(1, 1, 1).unwrap()]);
    }

    #[test]
    fn four_concurrent_rejected() {
        let a = Arrangement::new("c4", vec![ln(1, 0, 0), ln(0, 1, 0), ln(1, 1, 0), ln(1, -1, 0)]).unwrap();
        let err = certify_triple_only(&build_lattice(&a).unwrap()).unwrap_err();
        assert_eq!(err, Error::HypothesisViolation { point: "(0:0:1)".into(), multiplicity: 4 });
        assert!(err.to_string().contains("at most triple points"));
    }

    #[test]
    fn duplicates_and_tiny_rejected() {
        assert!(matches!(
            Arrangement::new("dup", vec![ln(1, 1, 0), ln(2, 2, 0)]),
            Err(Error::InvalidArrangement(_))
        ));
        assert!(matches!(Arrangement::new("one", vec![ln(1, 1, 0)]), Err(Error::InvalidArrangement(_))));
    }

    #[test]
    fn lattice_independent_of_order() {
        let a = a3();
        let b = a.permute(&[5, 3, 1, 0, 2, 4]);
        let pa: Vec<_> = build_lattice(&a).unwrap().points().iter().map(|p| p.point.clone()).collect();
        let pb: Vec<_> = build_lattice(&b).unwrap().points().iter().map(|p| p.point.clone()).collect();
        assert_eq!(pa, pb);
    }
}
