//! Exact constructions of the classical pencil-type arrangements with only
//! double and triple points, plus the 18-line arrangement with 48 triple
//! points whose pairwise unions `T_i + T_j` lie on smooth conics.
//!
//! Every entry carries its documented pencil partition and the values the full
//! pipeline is expected to reproduce. [`verify`] runs that pipeline.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::arrangement::{certify, Arrangement};
use crate::error::{Error, Result};
use crate::exactfield::{rat, FieldElement, Rational};
use crate::monodromy::{analyze, check_vanishing_sj, coker_rho_prime, cross_validate, CheckRecord, TheoremBranch};
use crate::pencil::{canonical_partition, format_partition, search_pencil, validate_partition, Partition};
use crate::polygeom::{HomogeneousPolynomial, Monomial, ProjectiveLine, ProjectivePoint};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum CatalogName {
    Concurrent3,
    A3,
    Ceva,
    Hesse,
    D4Section,
    Yoshinaga18,
}

impl CatalogName {
    pub const ALL: [CatalogName; 6] = [
        CatalogName::Concurrent3,
        CatalogName::A3,
        CatalogName::Ceva,
        CatalogName::Hesse,
        CatalogName::D4Section,
        CatalogName::Yoshinaga18,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CatalogName::Concurrent3 => "concurrent3",
            CatalogName::A3 => "a3",
            CatalogName::Ceva => "ceva",
            CatalogName::Hesse => "hesse",
            CatalogName::D4Section => "d4section",
            CatalogName::Yoshinaga18 => "yoshinaga18",
        }
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CatalogName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CatalogName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::ParameterRejected { check: format!("unknown catalog entry `{s}`") })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CatalogParams {
    /// `c` for `yoshinaga18` (default 10).
    pub c: Option<Rational>,
    /// `(alpha, beta, gamma)` with `t = alpha x + beta y + gamma z` for `d4section`
    /// (default `(2, 3, 5)`).
    pub hyperplane: Option<[Rational; 3]>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Expected {
    pub s: usize,
    pub b1_f: usize,
    pub triple_points: usize,
    pub t0: usize,
    pub sizes: [usize; 3],
    pub branch: TheoremBranch,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CatalogEntry {
    pub name: CatalogName,
    pub params: CatalogParams,
    pub arrangement: Arrangement,
    pub documented_partition: Partition,
    pub expected: Expected,
}

fn fe(r: &Rational) -> FieldElement {
    FieldElement::from_rational(r.clone())
}

fn line(a: FieldElement, b: FieldElement, c: FieldElement) -> ProjectiveLine {
    ProjectiveLine::new(a, b, c).expect("catalog lines are nonzero")
}

fn int_line(a: i64, b: i64, c: i64) -> ProjectiveLine {
    line(a.into(), b.into(), c.into())
}

fn consecutive_parts(m: usize) -> Partition {
    [(0..m).collect(), (m..2 * m).collect(), (2 * m..3 * m).collect()]
}

fn rejected(check: impl Into<String>) -> Error {
    Error::ParameterRejected { check: check.into() }
}

/// The three lines of `x^3 - y^3`-type factors: `u - v`, `u - omega v`,
/// `u - omega^2 v`, written on coordinate slots `(i, j)`.
fn cube_difference(i: usize, j: usize) -> Vec<ProjectiveLine> {
    [FieldElement::one(), FieldElement::omega(), FieldElement::omega_sq()]
        .iter()
        .map(|r| {
            let mut c = [FieldElement::zero(), FieldElement::zero(), FieldElement::zero()];
            c[i] = FieldElement::one();
            c[j] = -r;
            ProjectiveLine::from_coeffs(c).expect("nonzero")
        })
        .collect()
}

pub fn concurrent3() -> Arrangement {
    Arrangement::new("concurrent3", vec![int_line(1, -1, 0), int_line(0, 1, -1), int_line(1, 0, -1)])
        .expect("distinct lines")
}

/// Lines ordered `x-y, x+y, y-z, y+z, x-z, x+z`.
pub fn a3() -> Arrangement {
    Arrangement::new(
        "a3",
        vec![
            int_line(1, -1, 0),
            int_line(1, 1, 0),
            int_line(0, 1, -1),
            int_line(0, 1, 1),
            int_line(1, 0, -1),
            int_line(1, 0, 1),
        ],
    )
    .expect("distinct lines")
}

/// Factors of `x^3 - y^3`, `y^3 - z^3`, `x^3 - z^3`.
pub fn ceva() -> Arrangement {
    let mut lines = cube_difference(0, 1);
    lines.extend(cube_difference(1, 2));
    lines.extend(cube_difference(0, 2));
    Arrangement::new("ceva", lines).expect("distinct lines")
}

/// Singular fibers of the Hesse pencil `a (x^3 + y^3 + z^3) + b xyz`:
/// index 0 is `xyz = 0`, index `1 + k` is `x^3 + y^3 + z^3 - 3 omega^k xyz = 0`.
pub fn hesse_fiber(index: usize) -> Vec<ProjectiveLine> {
    if index == 0 {
        return vec![int_line(1, 0, 0), int_line(0, 1, 0), int_line(0, 0, 1)];
    }
    let omega = FieldElement::omega();
    let lambda = omega.pow((index - 1) as u32);
    // with z' = lambda z the fiber is x^3 + y^3 + z'^3 - 3 x y z'
    (0..3u32)
        .map(|k| {
            let a = omega.pow(k);
            let b = omega.pow((2 * k) % 3);
            line(FieldElement::one(), a, &b * &lambda)
        })
        .collect()
}

/// The fiber polynomial matching [`hesse_fiber`].
pub fn hesse_fiber_form(index: usize) -> HomogeneousPolynomial {
    let m = Monomial::new;
    if index == 0 {
        return HomogeneousPolynomial::from_terms(3, [(m(1, 1, 1), FieldElement::one())]);
    }
    let lambda = FieldElement::omega().pow((index - 1) as u32);
    HomogeneousPolynomial::from_terms(
        3,
        [
            (m(3, 0, 0), FieldElement::one()),
            (m(0, 3, 0), FieldElement::one()),
            (m(0, 0, 3), FieldElement::one()),
            (m(1, 1, 1), &FieldElement::from_int(-3) * &lambda),
        ],
    )
}

/// Three of the four singular Hesse fibers, omitting `omit` (0..=3).
pub fn hesse_variant(omit: usize) -> Arrangement {
    let lines = (0..4).filter(|&i| i != omit).flat_map(hesse_fiber).collect();
    Arrangement::new(format!("hesse-omit{omit}"), lines).expect("distinct lines")
}

/// Default Hesse choice: fibers `xyz`, `lambda = 1`, `lambda = omega`.
pub fn hesse() -> Arrangement {
    hesse_variant(3).with_label("hesse")
}

/// All 12 lines of the four singular fibers (has points of multiplicity 4).
pub fn hesse_full() -> Arrangement {
    Arrangement::new("hesse12", (0..4).flat_map(hesse_fiber).collect()).expect("distinct lines")
}

/// Section of the 12 planes `u +- v = 0` (u, v among x, y, z, t) by
/// `t = alpha x + beta y + gamma z`. Parts follow
/// `(a-b)(c-d) + (a-c)(d-b) + (a-d)(b-c) = 0` with `a, b, c, d = x^2, y^2, z^2, t^2`.
pub fn d4section(hyperplane: &[Rational; 3]) -> Result<Arrangement> {
    let t = [fe(&hyperplane[0]), fe(&hyperplane[1]), fe(&hyperplane[2])];
    let unit = |i: usize| {
        let mut v = [FieldElement::zero(), FieldElement::zero(), FieldElement::zero()];
        v[i] = FieldElement::one();
        v
    };
    let (x, y, z) = (unit(0), unit(1), unit(2));
    let comb = |u: &[FieldElement; 3], v: &[FieldElement; 3], sign: i64| -> [FieldElement; 3] {
        let s = FieldElement::from_int(sign);
        [&u[0] + &(&s * &v[0]), &u[1] + &(&s * &v[1]), &u[2] + &(&s * &v[2])]
    };
    let pairs = [(&x, &y), (&z, &t), (&x, &z), (&t, &y), (&x, &t), (&y, &z)];
    let mut lines = Vec::with_capacity(12);
    for (u, v) in pairs {
        for sign in [-1, 1] {
            let l = ProjectiveLine::from_coeffs(comb(u, v, sign))
                .map_err(|_| rejected("hyperplane makes a section line vanish identically"))?;
            lines.push(l);
        }
    }
    Arrangement::new("d4section", lines).map_err(|_| rejected("hyperplane makes two section lines coincide"))
}

/// Linear factors of `Q1 = (x^3 - y^3)(x + y - c z)(a x + a^5 y + c z)(a^5 x + a y + c z)`
/// with `a = w`, `a^5 = 1 - w`.
pub fn yoshinaga_q1_lines(c: &Rational) -> Vec<ProjectiveLine> {
    let c = fe(c);
    let w = FieldElement::w();
    let w5 = FieldElement::ints(1, -1);
    let mut lines = cube_difference(0, 1);
    lines.push(line(1.into(), 1.into(), -&c));
    lines.push(line(w.clone(), w5.clone(), c.clone()));
    lines.push(line(w5, w, c));
    lines
}

/// `x^6 - y^6 + 3c x^4 y z - 3c x y^4 z - c^3 x^3 z^3 + c^3 y^3 z^3`.
pub fn yoshinaga_q1_expanded(c: &Rational) -> HomogeneousPolynomial {
    let m = Monomial::new;
    let c1 = fe(c);
    let c3 = fe(&(c * c * c));
    let three_c = &FieldElement::from_int(3) * &c1;
    HomogeneousPolynomial::from_terms(
        6,
        [
            (m(6, 0, 0), FieldElement::one()),
            (m(0, 6, 0), FieldElement::from_int(-1)),
            (m(4, 1, 1), three_c.clone()),
            (m(1, 4, 1), -&three_c),
            (m(3, 0, 3), -&c3),
            (m(0, 3, 3), c3),
        ],
    )
}

/// The documented triple points of the first subarrangement:
/// `(0:0:1), (-c:-c:1), (a^5 c : a c : 1), (a c : a^5 c : 1)`.
pub fn yoshinaga_t1(c: &Rational) -> Vec<ProjectivePoint> {
    let c = fe(c);
    let w = FieldElement::w();
    let w5 = FieldElement::ints(1, -1);
    let p = |x: FieldElement, y: FieldElement| ProjectivePoint::new(x, y, FieldElement::one()).expect("z = 1");
    vec![
        p(FieldElement::zero(), FieldElement::zero()),
        p(-&c, -&c),
        p(&w5 * &c, &w * &c),
        p(&w * &c, &w5 * &c),
    ]
}

/// Conics `y^2 + c xz` (through `T1+T2`), `z^2 + c xy` (`T2+T3`) and
/// `x^2 + c yz` (`T1+T3`).
pub fn yoshinaga_conics(c: &Rational) -> [(&'static str, HomogeneousPolynomial); 3] {
    let m = Monomial::new;
    let c = fe(c);
    let q = |sq: Monomial, mixed: Monomial| {
        HomogeneousPolynomial::from_terms(2, [(sq, FieldElement::one()), (mixed, c.clone())])
    };
    [
        ("T1+T2", q(m(0, 2, 0), m(1, 0, 1))),
        ("T2+T3", q(m(0, 0, 2), m(1, 1, 0))),
        ("T1+T3", q(m(2, 0, 0), m(0, 1, 1))),
    ]
}

/// The 18 lines `A1, A2 = tau A1, A3 = tau^2 A1`, in that order.
pub fn yoshinaga18(c: &Rational) -> Result<Arrangement> {
    if c.is_zero() {
        return Err(rejected("c must be nonzero (c = 0 makes six lines concurrent)"));
    }
    let a1 = yoshinaga_q1_lines(c);
    let a2: Vec<_> = a1.iter().map(ProjectiveLine::cyclic_tau).collect();
    let a3: Vec<_> = a2.iter().map(ProjectiveLine::cyclic_tau).collect();
    let lines = a1.into_iter().chain(a2).chain(a3).collect();
    Arrangement::new("yoshinaga18", lines).map_err(|e| rejected(format!("lines must be distinct: {e}")))
}

fn expected(s: usize, d: usize, t: usize, t0: usize, sizes: [usize; 3], branch: TheoremBranch) -> Expected {
    Expected { s, b1_f: (d - 1) + 2 * s, triple_points: t, t0, sizes, branch }
}

/// Structural checks that replace "generic enough" / "c large enough".
fn check_generic(a: &Arrangement, parts: &Partition, triple_points: usize, t0: usize) -> Result<()> {
    let (_, cert) = certify(a).map_err(|e| rejected(format!("only double and triple points: {e}")))?;
    if cert.triple_points.len() != triple_points {
        return Err(rejected(format!(
            "expected {triple_points} triple points, found {}",
            cert.triple_points.len()
        )));
    }
    let p = validate_partition(a, parts).map_err(|e| rejected(format!("pencil structure: {e}")))?;
    if p.t0().len() != t0 {
        return Err(rejected(format!("base locus |T0| = {}, expected {t0}", p.t0().len())));
    }
    Ok(())
}

pub fn build(name: CatalogName, params: &CatalogParams) -> Result<CatalogEntry> {
    use TheoremBranch::*;
    let mut params_used = CatalogParams::default();
    let (arrangement, documented_partition, expected) = match name {
        CatalogName::Concurrent3 => (concurrent3(), consecutive_parts(1), expected(1, 3, 1, 1, [0, 0, 0], Small)),
        CatalogName::A3 => (a3(), consecutive_parts(2), expected(1, 6, 4, 4, [0, 0, 0], Small)),
        CatalogName::Ceva => (ceva(), consecutive_parts(3), expected(2, 9, 12, 9, [1, 1, 1], MaxCeva)),
        CatalogName::Hesse => (hesse(), consecutive_parts(3), expected(1, 9, 9, 9, [0, 0, 0], Small)),
        CatalogName::D4Section => {
            let h = params.hyperplane.clone().unwrap_or_else(|| [rat(2), rat(3), rat(5)]);
            let a = d4section(&h)?;
            let parts = consecutive_parts(4);
            check_generic(&a, &parts, 16, 16)?;
            params_used.hyperplane = Some(h);
            (a, parts, expected(1, 12, 16, 16, [0, 0, 0], Small))
        }
        CatalogName::Yoshinaga18 => {
            let c = params.c.clone().unwrap_or_else(|| rat(10));
            let a = yoshinaga18(&c)?;
            let parts = consecutive_parts(6);
            check_generic(&a, &parts, 48, 36)?;
            params_used.c = Some(c);
            (a, parts, expected(2, 18, 48, 36, [4, 4, 4], Max48Conics))
        }
    };
    Ok(CatalogEntry { name, params: params_used, arrangement, documented_partition, expected })
}

/// Runs the full pipeline on an entry and compares with its expectations.
pub fn verify(entry: &CatalogEntry) -> Result<Vec<CheckRecord>> {
    let a = &entry.arrangement;
    let e = &entry.expected;
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool, detail: String| checks.push(CheckRecord::new(name, pass, detail));

    let report = analyze(a)?;
    push("eigenspace_dim", report.s == e.s, format!("s = {}, expected {}", report.s, e.s));
    push("b1_F", report.b1_f == e.b1_f, format!("b1(F) = {}, expected {}", report.b1_f, e.b1_f));
    push(
        "triple_points",
        report.triple_points == e.triple_points,
        format!("|T| = {}, expected {}", report.triple_points, e.triple_points),
    );

    let documented = validate_partition(a, &entry.documented_partition)?;
    push("base_locus", documented.t0().len() == e.t0, format!("|T0| = {}, expected {}", documented.t0().len(), e.t0));
    push("subarrangement_sizes", documented.sizes() == e.sizes, format!("{:?}, expected {:?}", documented.sizes(), e.sizes));
    if documented.m() >= 2 {
        let c = coker_rho_prime(&documented);
        push("prop1", report.s == c + 1, format!("s = {}, coker rho' = {c}", report.s));
    }
    if documented.m() >= 3 {
        push("vanishing_sj", check_vanishing_sj(&documented), "s_{m-3}(T_j) = 0".to_string());
    }

    let found = search_pencil(a)?;
    let want = canonical_partition(&entry.documented_partition);
    push(
        "search_recovers_partition",
        found.as_ref().map(|p| p.parts()) == Some(&want),
        format!(
            "found {}, documented {}",
            found.as_ref().map_or("none".into(), |p| format_partition(p.parts())),
            format_partition(&want)
        ),
    );

    let cv = cross_validate(a)?;
    push("branch", cv.prediction.branch == e.branch, format!("{}, expected {}", cv.prediction.branch, e.branch));
    for c in &cv.checks {
        checks.push(CheckRecord { name: format!("cross_validate:{}", c.name), ..c.clone() });
    }

    let m = [[1, 2, 0], [0, 1, 3], [1, 0, 1]].map(|r| r.map(FieldElement::from_int));
    let reversed: Vec<usize> = (0..a.len()).rev().collect();
    let moved = a.transform(&m)?.permute(&reversed);
    let s_moved = analyze(&moved)?.s;
    checks.push(CheckRecord::new(
        "coordinate_change_invariance",
        s_moved == report.s,
        format!("s = {s_moved} after a coordinate change and reordering"),
    ));

    match entry.name {
        CatalogName::Yoshinaga18 => checks.extend(verify_yoshinaga(entry, &documented)),
        CatalogName::Hesse => checks.extend(verify_hesse(&report)?),
        _ => {}
    }
    Ok(checks)
}

fn verify_yoshinaga(entry: &CatalogEntry, p: &crate::pencil::PencilStructure) -> Vec<CheckRecord> {
    let c = entry.params.c.clone().unwrap_or_else(|| rat(10));
    let mut out = Vec::new();
    let q1_lines = yoshinaga_q1_lines(&c);
    let q1 = HomogeneousPolynomial::product(&q1_lines.iter().map(ProjectiveLine::to_form).collect::<Vec<_>>());
    let expanded = yoshinaga_q1_expanded(&c);
    out.push(CheckRecord::new(
        "q1_expansion",
        q1.is_scalar_multiple_of(&expanded),
        format!("Q1 = {expanded}"),
    ));
    let q2 = expanded.cyclic_tau();
    let q3 = q2.cyclic_tau();
    out.push(CheckRecord::new(
        "q1+q2+q3=0",
        expanded.add(&q2).add(&q3).is_zero(),
        "Q1 + tau Q1 + tau^2 Q1",
    ));
    let mut t1 = yoshinaga_t1(&c);
    t1.sort();
    out.push(CheckRecord::new("t1_points", p.t(1) == t1.as_slice(), format!("{} points", p.t(1).len())));
    let tau_set = |pts: &[ProjectivePoint]| {
        let mut v: Vec<_> = pts.iter().map(ProjectivePoint::cyclic_tau).collect();
        v.sort();
        v
    };
    out.push(CheckRecord::new("t2=tau(t1)", tau_set(p.t(1)) == p.t(2), ""));
    out.push(CheckRecord::new("t3=tau(t2)", tau_set(p.t(2)) == p.t(3), ""));
    let sets = [(1, 2), (2, 3), (1, 3)];
    for ((label, form), (i, j)) in yoshinaga_conics(&c).into_iter().zip(sets) {
        let conic = crate::polygeom::Conic::new(form.clone()).expect("nonzero conic");
        let on = p.t(i).iter().chain(p.t(j)).all(|t| conic.contains(t));
        out.push(CheckRecord::new(
            format!("conic_{label}"),
            on && conic.is_smooth(),
            format!("{form}: contains {label} = {on}, smooth = {}", conic.is_smooth()),
        ));
    }
    out
}

fn verify_hesse(report: &crate::monodromy::MonodromyReport) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for omit in 0..4 {
        let r = analyze(&hesse_variant(omit))?;
        out.push(CheckRecord::new(
            format!("hesse_variant_omit{omit}"),
            r == *report,
            format!("s = {}, b1 = {}", r.s, r.b1_f),
        ));
    }
    for idx in 0..4 {
        let f = hesse_fiber(idx);
        let concurrent = crate::polygeom::line_meet(&f[0], &f[1]).map(|p| f[2].contains(&p)).unwrap_or(true);
        out.push(CheckRecord::new(format!("hesse_fiber{idx}_triangle"), !concurrent, ""));
    }
    Ok(out)
}
