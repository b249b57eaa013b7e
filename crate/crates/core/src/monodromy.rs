//! Monodromy eigenspace dimensions of the Milnor fiber.
//!
//! For an arrangement of `d = 3m` lines with only double and triple points,
//! the only eigenvalues of the monodromy on `H^1(F)` are `1`, `eps` and
//! `eps^2` (primitive cube roots of unity), and
//!
//! ```text
//! dim H^{1,0}(F)_eps = dim H^{0,1}(F)_{eps^2} = s_{2m-3}(T)
//! dim H^{1,0}(F)_{eps^2} = dim H^{0,1}(F)_eps = 0
//! ```
//!
//! where `T` is the set of triple points and `s_k(T)` its superabundance with
//! respect to forms of degree `k`. When `3` does not divide `d` the monodromy
//! is trivial.
//!
//! The map `rho'` works one level lower: pairs `(h1, h2)` of forms of degree
//! `m - 3`, evaluated as `h1` on `T2`, `h2` on `T1` and `h1 - h2` on `T3`. Its
//! cokernel is one less than that of `rho`.
//!
//! Note: the dimension count behind that relation reads
//! `dim S_{2m-3} + 1 = m^2 + 2 dim S_{m-3}` once the `m^2` base points are
//! taken into account; it is checked numerically here, never assumed.

use std::fmt;

use serde::Serialize;

use crate::arrangement::{certify, Arrangement, TripleOnlyCertificate};
use crate::error::Result;
use crate::exactfield::FieldElement;
use crate::pencil::{profile, search_pencil, PencilStructure};
use crate::polygeom::{
    conic_through, dim_s, evaluation_matrix, max_collinear, Conic, HomogeneousPolynomial, Matrix,
    ProjectivePoint,
};

/// Exponents of the characteristic polynomial `(t - 1)^e1 (t^2 + t + 1)^e2`
/// of the monodromy on `H^1(F)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct CharPoly {
    pub e1: usize,
    pub e2: usize,
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(t-1)^{}", self.e1)?;
        if self.e2 > 0 {
            write!(f, " (t^2+t+1)^{}", self.e2)?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonodromyReport {
    pub d: usize,
    /// `d / 3`, when `3 | d`.
    pub m: Option<usize>,
    pub triple_points: usize,
    pub double_points: usize,
    /// `dim Coker rho`.
    pub s: usize,
    pub h10_eps: usize,
    pub h01_epsbar: usize,
    pub h10_epsbar: usize,
    pub h01_eps: usize,
    pub b1_f: usize,
    pub char_poly: CharPoly,
    pub trivial_monodromy: bool,
}

impl MonodromyReport {
    /// `(3m - 1) / 2`, rounded down.
    pub fn upper_bound(&self) -> Option<usize> {
        self.m.map(|m| (3 * m - 1) / 2)
    }
}

/// `|points| - rank` of the evaluation map on `S_k`; all of `|points|` when `k < 0`.
pub fn superabundance(points: &[ProjectivePoint], k: i64) -> usize {
    points.len() - evaluation_matrix(points, k).rank()
}

/// The matrix of `rho: S_{2m-3} -> C^T`.
pub fn rho_matrix(triple_points: &[ProjectivePoint], m: usize) -> Matrix {
    evaluation_matrix(triple_points, 2 * m as i64 - 3)
}

pub fn analyze(a: &Arrangement) -> Result<MonodromyReport> {
    let (_, cert) = certify(a)?;
    Ok(analyze_certified(a, &cert))
}

pub fn analyze_certified(a: &Arrangement, cert: &TripleOnlyCertificate) -> MonodromyReport {
    let d = a.len();
    let triple_points = cert.triple_points.len();
    let double_points = cert.double_points.len();
    if !d.is_multiple_of(3) {
        return MonodromyReport {
            d,
            m: None,
            triple_points,
            double_points,
            s: 0,
            h10_eps: 0,
            h01_epsbar: 0,
            h10_epsbar: 0,
            h01_eps: 0,
            b1_f: d - 1,
            char_poly: CharPoly { e1: d - 1, e2: 0 },
            trivial_monodromy: true,
        };
    }
    let m = d / 3;
    let s = superabundance(&cert.triple_points(), 2 * m as i64 - 3);
    MonodromyReport {
        d,
        m: Some(m),
        triple_points,
        double_points,
        s,
        h10_eps: s,
        h01_epsbar: s,
        h10_epsbar: 0,
        h01_eps: 0,
        b1_f: (d - 1) + 2 * s,
        char_poly: CharPoly { e1: d - 1, e2: s },
        trivial_monodromy: s == 0,
    }
}

/// Block matrix of `rho'` on `S_{m-3} + S_{m-3}`: rows for `T2` (on `h1`),
/// `T1` (on `h2`) and `T3` (on `h1 - h2`).
pub fn rho_prime_matrix(p: &PencilStructure) -> Matrix {
    let k = p.m() as i64 - 3;
    let n = dim_s(k);
    let e2 = evaluation_matrix(p.t(2), k);
    let e1 = evaluation_matrix(p.t(1), k);
    let e3 = evaluation_matrix(p.t(3), k);
    let zero = FieldElement::default();
    let mut rows = Vec::new();
    for r in 0..e2.rows() {
        rows.push(e2.row(r).iter().cloned().chain(std::iter::repeat_n(zero.clone(), n)).collect());
    }
    for r in 0..e1.rows() {
        rows.push(std::iter::repeat_n(zero.clone(), n).chain(e1.row(r).iter().cloned()).collect());
    }
    for r in 0..e3.rows() {
        rows.push(e3.row(r).iter().cloned().chain(e3.row(r).iter().map(|v| -v)).collect());
    }
    Matrix::from_rows_with_cols(rows, 2 * n)
}

/// `dim Coker rho' = |T1| + |T2| + |T3| - rank rho'`.
pub fn coker_rho_prime(p: &PencilStructure) -> usize {
    let [a, b, c] = p.sizes();
    (a + b + c) - rho_prime_matrix(p).rank()
}

/// Kernel basis of `rho'` as pairs `(h1, h2)`. Empty for `m < 3`.
pub fn rho_prime_kernel(p: &PencilStructure) -> Vec<(HomogeneousPolynomial, HomogeneousPolynomial)> {
    if p.m() < 3 {
        return Vec::new();
    }
    let k = (p.m() - 3) as u32;
    let n = dim_s(k as i64);
    rho_prime_matrix(p)
        .kernel_basis()
        .into_iter()
        .map(|v| {
            (
                HomogeneousPolynomial::from_coefficients(k, &v[..n]),
                HomogeneousPolynomial::from_coefficients(k, &v[n..]),
            )
        })
        .collect()
}

/// `s_{m-3}(T_j) = 0` for `j = 1, 2, 3`.
pub fn check_vanishing_sj(p: &PencilStructure) -> bool {
    let k = p.m() as i64 - 3;
    (1..=3).all(|j| superabundance(p.t(j), k) == 0)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TheoremBranch {
    /// No reduced pencil, so the monodromy is trivial.
    NotPencil,
    /// `m < 6`, or `m = 6` with fewer than 48 triple points.
    Small,
    /// `m = 3` with one triple point in each subarrangement.
    MaxCeva,
    /// `m = 6`, `|T| = 48`, and every `T_i + T_j` lies on a conic.
    Max48Conics,
    /// `m = 6`, `|T| = 48`, and some `T_i + T_j` lies on no conic.
    Max48Generic,
    /// `m > 6`: no prediction is available.
    BeyondTheorem,
}

impl fmt::Display for TheoremBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TheoremBranch::NotPencil => "NOT_PENCIL",
            TheoremBranch::Small => "SMALL",
            TheoremBranch::MaxCeva => "MAX_CEVA",
            TheoremBranch::Max48Conics => "MAX48_CONICS",
            TheoremBranch::Max48Generic => "MAX48_GENERIC",
            TheoremBranch::BeyondTheorem => "BEYOND_THEOREM",
        };
        f.write_str(s)
    }
}

/// Conic test for one of the unions `T_i + T_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConicEvidence {
    /// e.g. `"T1+T2"`.
    pub points_set: String,
    pub conic: Option<Conic>,
    pub smooth: bool,
    pub max_collinear: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TheoremPrediction {
    pub branch: TheoremBranch,
    pub predicted_s: Option<usize>,
    pub pencil: Option<PencilStructure>,
    pub conics: Vec<ConicEvidence>,
}

/// Number of triple points when `m = 6` and every subarrangement has 4.
pub const MAX_TRIPLE_POINTS_M6: usize = 48;

pub fn classify(a: &Arrangement) -> Result<TheoremPrediction> {
    let (_, cert) = certify(a)?;
    let d = a.len();
    let not_pencil = |pencil| TheoremPrediction {
        branch: TheoremBranch::NotPencil,
        predicted_s: Some(0),
        pencil,
        conics: Vec::new(),
    };
    if !d.is_multiple_of(3) {
        return Ok(not_pencil(None));
    }
    let Some(pencil) = search_pencil(a)? else {
        return Ok(not_pencil(None));
    };
    Ok(classify_pencil(pencil, cert.triple_points.len()))
}

/// Theorem branch for a known pencil structure with `t` triple points.
pub fn classify_pencil(pencil: PencilStructure, t: usize) -> TheoremPrediction {
    let m = pencil.m();
    let prof = profile(&pencil);
    let (branch, predicted_s, conics) = if m > 6 {
        (TheoremBranch::BeyondTheorem, None, Vec::new())
    } else if m == 6 && t == MAX_TRIPLE_POINTS_M6 {
        let conics = pair_conics(&pencil);
        let all_on_conics = conics.iter().all(|c| c.conic.is_some());
        if all_on_conics {
            (TheoremBranch::Max48Conics, Some(2), conics)
        } else {
            (TheoremBranch::Max48Generic, Some(1), conics)
        }
    } else if m == 3 && prof.sizes == [1, 1, 1] {
        (TheoremBranch::MaxCeva, Some(2), Vec::new())
    } else {
        (TheoremBranch::Small, Some(1), Vec::new())
    };
    TheoremPrediction { branch, predicted_s, pencil: Some(pencil), conics }
}

/// Conic evidence for `T1+T2`, `T2+T3` and `T1+T3`.
pub fn pair_conics(p: &PencilStructure) -> Vec<ConicEvidence> {
    [(1, 2), (2, 3), (1, 3)]
        .iter()
        .map(|&(i, j)| {
            let pts: Vec<ProjectivePoint> = p.t(i).iter().chain(p.t(j)).cloned().collect();
            let conic = conic_through(&pts);
            let smooth = conic.as_ref().is_some_and(Conic::is_smooth);
            ConicEvidence {
                points_set: format!("T{i}+T{j}"),
                conic,
                smooth,
                max_collinear: max_collinear(&pts),
            }
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckRecord {
    pub name: String,
    pub pass: bool,
    /// A mismatch in the open case (`MAX48_GENERIC`): reported, not a failure.
    pub finding: bool,
    pub detail: String,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        CheckRecord { name: name.into(), pass, finding: false, detail: detail.into() }
    }

    pub fn is_failure(&self) -> bool {
        !self.pass && !self.finding
    }
}

#[derive(Clone, Debug)]
pub struct CrossValidation {
    pub report: MonodromyReport,
    pub prediction: TheoremPrediction,
    pub coker_rho_prime: Option<usize>,
    pub checks: Vec<CheckRecord>,
    /// The arrangement itself, when it contradicts the `MAX48_GENERIC` prediction.
    pub witness: Option<Arrangement>,
}

impl CrossValidation {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !c.is_failure())
    }
}

/// Runs both routes (direct rank of `rho`, and the theorem's case analysis plus
/// `rho'`) and records whether they agree. Nothing is corrected.
pub fn cross_validate(a: &Arrangement) -> Result<CrossValidation> {
    let (_, cert) = certify(a)?;
    let report = analyze_certified(a, &cert);
    let prediction = classify(a)?;
    let mut checks = Vec::new();
    let mut witness = None;

    if let Some(bound) = report.upper_bound() {
        checks.push(CheckRecord::new(
            "upper_bound",
            report.s <= bound,
            format!("s = {} <= (3m-1)/2 = {bound}", report.s),
        ));
    }

    if let Some(predicted) = prediction.predicted_s {
        let agree = predicted == report.s;
        let mut rec = CheckRecord::new(
            "theorem_prediction",
            agree,
            format!("branch {} predicts s = {predicted}, rank computation gives s = {}", prediction.branch, report.s),
        );
        if !agree && prediction.branch == TheoremBranch::Max48Generic {
            rec.finding = true;
            witness = Some(a.clone());
        }
        checks.push(rec);
    }

    let mut coker = None;
    if let Some(p) = &prediction.pencil {
        if p.m() >= 2 {
            let c = coker_rho_prime(p);
            coker = Some(c);
            checks.push(CheckRecord::new(
                "prop1_coker_identity",
                report.s == c + 1,
                format!("dim Coker rho = {}, dim Coker rho' + 1 = {}", report.s, c + 1),
            ));
        }
        if p.m() >= 3 {
            checks.push(CheckRecord::new("vanishing_s_m-3(T_j)", check_vanishing_sj(p), "j = 1, 2, 3"));
        }
        checks.push(CheckRecord::new(
            "base_locus_size",
            p.t0().len() == p.m() * p.m(),
            format!("|T0| = {}, m^2 = {}", p.t0().len(), p.m() * p.m()),
        ));
    }

    Ok(CrossValidation { report, prediction, coker_rho_prime: coker, checks, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pencil::{parse_partition, validate_partition};
    use crate::polygeom::ProjectiveLine;

    fn ln(a: i64, b: i64, c: i64) -> ProjectiveLine {
        ProjectiveLine::ints(a, b, c).unwrap()
    }

    fn pt(x: i64, y: i64, z: i64) -> ProjectivePoint {
        ProjectivePoint::ints(x, y, z).unwrap()
    }

    fn a3() -> Arrangement {
        Arrangement::new(
            "a3",
            vec![ln(1, -1, 0), ln(1, 1, 0), ln(0, 1, -1), ln(0, 1, 1), ln(1, 0, -1), ln(1, 0, 1)],
        )
        .unwrap()
    }

    #[test]
    fn superabundance_small_cases() {
        assert_eq!(superabundance(&[], 3), 0);
        assert_eq!(superabundance(&[], -1), 0);
        let t = [pt(1, 1, 1), pt(1, -1, 1), pt(-1, 1, 1), pt(-1, -1, 1)];
        assert_eq!(superabundance(&t, 1), 1);
        assert_eq!(superabundance(&t[..1], -1), 1);
    }

    #[test]
    fn concurrent_lines_report() {
        let a = Arrangement::new("c3", vec![ln(1, -1, 0), ln(0, 1, -1), ln(1, 0, -1)]).unwrap();
        let r = analyze(&a).unwrap();
        assert_eq!(r.s, 1);
        assert_eq!(r.b1_f, 4);
        assert_eq!(r.char_poly, CharPoly { e1: 2, e2: 1 });
        assert_eq!(r.to_owned().upper_bound(), Some(1));
    }

    #[test]
    fn trivial_when_d_not_multiple_of_three() {
        let a = Arrangement::new("four", vec![ln(1, 0, 0), ln(0, 1, 0), ln(0, 0, 1), ln(1, 1, 1)]).unwrap();
        let r = analyze(&a).unwrap();
        assert!(r.trivial_monodromy);
        assert_eq!((r.s, r.m, r.b1_f), (0, None, 3));
        assert_eq!(r.char_poly, CharPoly { e1: 3, e2: 0 });
        assert_eq!(classify(&a).unwrap().branch, TheoremBranch::NotPencil);
    }

    #[test]
    fn a3_prop1_degenerate_domain() {
        let p = validate_partition(&a3(), &parse_partition("0,1;2,3;4,5").unwrap()).unwrap();
        assert_eq!(rho_prime_matrix(&p).cols(), 0);
        assert_eq!(coker_rho_prime(&p), 0);
        assert_eq!(analyze(&a3()).unwrap().s, 1);
        assert!(check_vanishing_sj(&p));
    }

    #[test]
    fn a3_cross_validates() {
        let cv = cross_validate(&a3()).unwrap();
        assert!(cv.passed(), "{:?}", cv.checks);
        assert_eq!(cv.prediction.branch, TheoremBranch::Small);
        assert_eq!(cv.coker_rho_prime, Some(0));
        assert!(cv.witness.is_none());
    }

    #[test]
    fn branch_names() {
        assert_eq!(TheoremBranch::Max48Conics.to_string(), "MAX48_CONICS");
        assert_eq!(serde_json::to_string(&TheoremBranch::NotPencil).unwrap(), "\"NOT_PENCIL\"");
    }
}
