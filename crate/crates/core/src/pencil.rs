//! Reduced pencil decompositions `Q = Q1 * Q2 * Q3` with `Q3 = Q1 + Q2`.
//!
//! A partition of the `3m` lines into three parts of `m` lines is a reduced
//! pencil when the three products are pairwise independent but span a plane in
//! `S_m`. Lines from different parts then always meet in a triple point with
//! one line from each part (the base locus `T0`), and the remaining triple
//! points split into `T1, T2, T3` according to the part containing their lines.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::arrangement::{certify, Arrangement, IntersectionLattice, TripleOnlyCertificate};
use crate::error::{Error, Result};
use crate::exactfield::FieldElement;
use crate::polygeom::{HomogeneousPolynomial, Matrix, ProjectiveLine, ProjectivePoint};

/// Three index sets of equal size, each sorted.
pub type Partition = [Vec<usize>; 3];

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PencilStructure {
    m: usize,
    parts: Partition,
    forms: [HomogeneousPolynomial; 3],
    base_points: Vec<ProjectivePoint>,
    part_points: [Vec<ProjectivePoint>; 3],
}

impl PencilStructure {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn parts(&self) -> &Partition {
        &self.parts
    }

    /// `[Q1, Q2, Q3]`, scaled so that `Q3 = Q1 + Q2`.
    pub fn forms(&self) -> &[HomogeneousPolynomial; 3] {
        &self.forms
    }

    /// The base locus `T0`.
    pub fn t0(&self) -> &[ProjectivePoint] {
        &self.base_points
    }

    /// `T_i` for `i` in `1..=3`.
    pub fn t(&self, i: usize) -> &[ProjectivePoint] {
        assert!((1..=3).contains(&i), "T_i is defined for i = 1, 2, 3");
        &self.part_points[i - 1]
    }

    pub fn sizes(&self) -> [usize; 3] {
        [self.part_points[0].len(), self.part_points[1].len(), self.part_points[2].len()]
    }

    pub fn triple_point_count(&self) -> usize {
        self.base_points.len() + self.sizes().iter().sum::<usize>()
    }
}

/// Sizes of `T1, T2, T3` and the least pairwise sum.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SubarrangementProfile {
    pub sizes: [usize; 3],
    pub sigma: usize,
}

impl SubarrangementProfile {
    /// "generic", "special", "2-special", ... for each part.
    pub fn labels(&self) -> [String; 3] {
        self.sizes.map(|n| match n {
            0 => "generic".to_string(),
            1 => "special".to_string(),
            n => format!("{n}-special"),
        })
    }
}

pub fn profile(p: &PencilStructure) -> SubarrangementProfile {
    let [a, b, c] = p.sizes();
    SubarrangementProfile { sizes: [a, b, c], sigma: (a + b).min(a + c).min(b + c) }
}

/// Parses `"0,1;2,3;4,5"`.
pub fn parse_partition(s: &str) -> Result<Partition> {
    let err = |msg: String| Error::Parse { line: 0, msg };
    let parts: Vec<&str> = s.split(';').collect();
    if parts.len() != 3 {
        return Err(err(format!("partition `{s}` must have three `;`-separated parts")));
    }
    let mut out: Partition = Default::default();
    for (slot, part) in out.iter_mut().zip(parts) {
        for tok in part.split(',') {
            let idx: usize = tok.trim().parse().map_err(|_| err(format!("bad line index `{tok}`")))?;
            slot.push(idx);
        }
    }
    Ok(out)
}

pub fn format_partition(p: &Partition) -> String {
    p.iter()
        .map(|part| part.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

/// Parts sorted internally, then ordered lexicographically.
pub fn canonical_partition(p: &Partition) -> Partition {
    let mut parts = p.clone();
    for part in parts.iter_mut() {
        part.sort_unstable();
    }
    parts.sort();
    parts
}

fn part_product(lines: &[ProjectiveLine], part: &[usize]) -> HomogeneousPolynomial {
    let forms: Vec<_> = part.iter().map(|&i| lines[i].to_form()).collect();
    HomogeneousPolynomial::product(&forms)
}

fn check_shape(d: usize, parts: &Partition) -> Result<usize> {
    if !d.is_multiple_of(3) {
        return Err(Error::NotAPencil(format!("{d} lines cannot split into three equal parts")));
    }
    let m = d / 3;
    let mut seen = vec![false; d];
    for (i, part) in parts.iter().enumerate() {
        if part.len() != m {
            return Err(Error::NotAPencil(format!("part {} has {} lines, expected {m}", i + 1, part.len())));
        }
        for &l in part {
            if l >= d {
                return Err(Error::NotAPencil(format!("line index {l} out of range (d = {d})")));
            }
            if std::mem::replace(&mut seen[l], true) {
                return Err(Error::NotAPencil(format!("line {l} appears twice")));
            }
        }
    }
    Ok(m)
}

/// Checks that `parts` is a reduced pencil and returns its structure.
pub fn validate_partition(a: &Arrangement, parts: &Partition) -> Result<PencilStructure> {
    let (_, cert) = certify(a)?;
    validate_with(a, &cert, parts)
}

fn validate_with(a: &Arrangement, cert: &TripleOnlyCertificate, parts: &Partition) -> Result<PencilStructure> {
    let d = a.len();
    let m = check_shape(d, parts)?;
    let mut parts = parts.clone();
    for part in parts.iter_mut() {
        part.sort_unstable();
    }

    let q1 = part_product(a.lines(), &parts[0]);
    let q2 = part_product(a.lines(), &parts[1]);
    let q3 = part_product(a.lines(), &parts[2]).monic();

    let coeff_rows = |fs: &[&HomogeneousPolynomial]| {
        Matrix::from_rows(fs.iter().map(|f| f.coefficients()).collect())
    };
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let qs = [&q1, &q2, &q3];
        if coeff_rows(&[qs[i], qs[j]]).rank() != 2 {
            return Err(Error::NotAPencil(format!("products of parts {} and {} are proportional", i + 1, j + 1)));
        }
    }
    let rows = coeff_rows(&[&q1, &q2, &q3]);
    if rows.rank() != 2 {
        return Err(Error::NotAPencil(
            "the three part products are linearly independent, so no relation Q3 = Q1 + Q2 exists".into(),
        ));
    }
    // a q1 + b q2 + c q3 = 0 with c != 0
    let kernel = rows.transpose().kernel_basis();
    let rel = &kernel[0];
    let c_inv = rel[2].inv().expect("q1, q2 are independent");
    let alpha = -(&rel[0] * &c_inv);
    let beta = -(&rel[1] * &c_inv);
    let forms = [q1.scale(&alpha), q2.scale(&beta), q3];
    debug_assert!(forms[0].add(&forms[1]).sub(&forms[2]).is_zero());

    let mut part_of = vec![0usize; d];
    for (pi, part) in parts.iter().enumerate() {
        for &l in part {
            part_of[l] = pi;
        }
    }

    for dp in &cert.double_points {
        let (i, j) = (dp.incident[0], dp.incident[1]);
        if part_of[i] != part_of[j] {
            return Err(Error::DegeneratePencil(format!(
                "lines {i} and {j} from different parts meet in the double point {}, which is not a base point",
                dp.point
            )));
        }
    }

    let mut base_points = Vec::new();
    let mut part_points: [Vec<ProjectivePoint>; 3] = Default::default();
    for tp in &cert.triple_points {
        let mut ps: Vec<usize> = tp.incident.iter().map(|&l| part_of[l]).collect();
        ps.sort_unstable();
        match ps.as_slice() {
            [x, y, z] if x == y && y == z => part_points[*x].push(tp.point.clone()),
            [0, 1, 2] => base_points.push(tp.point.clone()),
            _ => {
                return Err(Error::DegeneratePencil(format!(
                    "triple point {} has lines {:?} spread over parts {:?}",
                    tp.point,
                    tp.incident,
                    ps.iter().map(|p| p + 1).collect::<Vec<_>>()
                )))
            }
        }
    }
    if base_points.len() != m * m {
        return Err(Error::DegeneratePencil(format!(
            "base locus has {} points, expected m^2 = {}",
            base_points.len(),
            m * m
        )));
    }
    // no line of one part passes through a triple point of another part
    for (i, pts) in part_points.iter().enumerate() {
        for t in pts {
            for (j, q) in forms.iter().enumerate() {
                if j != i && q.evaluate_at(t.coords()).is_zero() {
                    return Err(Error::DegeneratePencil(format!(
                        "Q{} vanishes at the point {t} of T{}",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
    }
    Ok(PencilStructure { m, parts, forms, base_points, part_points })
}

fn cmp_partitions(a: &Partition, b: &Partition) -> Ordering {
    a.cmp(b)
}

/// Canonical reduced pencil structure, if any.
///
/// Lines are assigned to parts one at a time. A double point forces both of its
/// lines into the same part; a triple point forces its lines into one part or
/// into three different parts. Only complete assignments that survive these
/// constraints are tested algebraically.
pub fn search_pencil(a: &Arrangement) -> Result<Option<PencilStructure>> {
    let (lat, cert) = certify(a)?;
    if !a.len().is_multiple_of(3) {
        return Ok(None);
    }
    let mut search = Search::new(&lat, a.len() / 3, true);
    search.run();
    best_valid(a, &cert, search.leaves)
}

/// Same result as [`search_pencil`] by testing every partition into three
/// equal parts. Only practical for small `m`.
pub fn search_pencil_exhaustive(a: &Arrangement) -> Result<Option<PencilStructure>> {
    let (lat, cert) = certify(a)?;
    if !a.len().is_multiple_of(3) {
        return Ok(None);
    }
    let mut search = Search::new(&lat, a.len() / 3, false);
    search.run();
    best_valid(a, &cert, search.leaves)
}

fn best_valid(
    a: &Arrangement,
    cert: &TripleOnlyCertificate,
    leaves: Vec<Partition>,
) -> Result<Option<PencilStructure>> {
    let mut best: Option<Partition> = None;
    for leaf in leaves {
        let canon = canonical_partition(&leaf);
        if best.as_ref().is_some_and(|b| cmp_partitions(&canon, b) != Ordering::Less) {
            continue;
        }
        match validate_with(a, cert, &canon) {
            Ok(_) => best = Some(canon),
            Err(Error::NotAPencil(_)) | Err(Error::DegeneratePencil(_)) => {}
            Err(e) => return Err(e),
        }
    }
    best.map(|p| validate_with(a, cert, &p)).transpose()
}

struct Search {
    d: usize,
    m: usize,
    prune: bool,
    table: Vec<Vec<usize>>,
    incident: Vec<Vec<usize>>,
    assign: Vec<u8>,
    counts: [usize; 3],
    leaves: Vec<Partition>,
}

const UNSET: u8 = u8::MAX;

impl Search {
    fn new(lat: &IntersectionLattice, m: usize, prune: bool) -> Self {
        let d = lat.line_count();
        Search {
            d,
            m,
            prune,
            table: lat.pair_table(),
            incident: lat.points().iter().map(|p| p.incident.clone()).collect(),
            assign: vec![UNSET; d],
            counts: [0; 3],
            leaves: Vec::new(),
        }
    }

    fn run(&mut self) {
        self.step(0, 0);
    }

    fn consistent(&self, i: usize, p: u8) -> bool {
        for j in 0..i {
            let pj = self.assign[j];
            let pt = &self.incident[self.table[i][j]];
            if pt.len() == 2 {
                if pj != p {
                    return false;
                }
                continue;
            }
            let k = pt.iter().copied().find(|&k| k != i && k != j).expect("triple point");
            if k > i {
                continue;
            }
            let pk = self.assign[k];
            let all_same = p == pj && pj == pk;
            let all_diff = p != pj && pj != pk && p != pk;
            if !(all_same || all_diff) {
                return false;
            }
        }
        true
    }

    fn step(&mut self, i: usize, used: u8) {
        if i == self.d {
            let mut parts: Partition = Default::default();
            for (l, &p) in self.assign.iter().enumerate() {
                parts[p as usize].push(l);
            }
            self.leaves.push(parts);
            return;
        }
        // the first line of a new part always opens the lowest unused label
        let top = (used + 1).min(3);
        for p in 0..top {
            if self.counts[p as usize] == self.m {
                continue;
            }
            if self.prune && !self.consistent(i, p) {
                continue;
            }
            self.assign[i] = p;
            self.counts[p as usize] += 1;
            self.step(i + 1, used.max(p + 1));
            self.counts[p as usize] -= 1;
            self.assign[i] = UNSET;
        }
    }
}

impl fmt::Display for PencilStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "partition: {}", format_partition(&self.parts))?;
        for (i, q) in self.forms.iter().enumerate() {
            writeln!(f, "Q{} = {}", i + 1, q)?;
        }
        let list = |pts: &[ProjectivePoint]| pts.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        writeln!(f, "T0 ({}): {}", self.base_points.len(), list(&self.base_points))?;
        for i in 1..=3 {
            writeln!(f, "T{i} ({}): {}", self.t(i).len(), list(self.t(i)))?;
        }
        Ok(())
    }
}

/// `Q1 + Q2 - Q3`, which is zero for every valid structure.
pub fn pencil_defect(p: &PencilStructure) -> HomogeneousPolynomial {
    p.forms[0].add(&p.forms[1]).sub(&p.forms[2])
}

/// Value of `Q_j` at a point, for incidence checks.
pub fn evaluate_form(p: &PencilStructure, j: usize, t: &ProjectivePoint) -> FieldElement {
    p.forms[j - 1].evaluate_at(t.coords())
}
