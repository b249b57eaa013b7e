//! JSON report. Struct field order is the output key order.

use serde::Serialize;

use crate::arrangement::{Arrangement, TripleOnlyCertificate};
use crate::monodromy::{CharPoly, CheckRecord, MonodromyReport, TheoremBranch, TheoremPrediction};
use crate::pencil::{format_partition, profile};
use crate::polygeom::{Conic, Monomial};
use num_traits::Zero;

#[derive(Serialize)]
pub struct ReportJson {
    pub label: String,
    pub d: usize,
    pub m: Option<usize>,
    pub lattice: LatticeJson,
    pub pencil: PencilJson,
    pub monodromy: MonodromyJson,
    pub theorem: TheoremJson,
    pub checks: Vec<CheckJson>,
}

#[derive(Serialize)]
pub struct LatticeJson {
    pub t2: usize,
    pub t3: usize,
}

#[derive(Serialize)]
pub struct PencilJson {
    pub found: bool,
    pub partition: Option<String>,
    pub profile: Option<[String; 3]>,
    pub sizes: Option<[usize; 3]>,
}

#[derive(Serialize)]
pub struct MonodromyJson {
    pub s: usize,
    pub h10_eps: usize,
    pub h01_eps: usize,
    pub h10_epsbar: usize,
    pub h01_epsbar: usize,
    #[serde(rename = "b1_F")]
    pub b1_f: usize,
    pub char_poly: CharPoly,
}

#[derive(Serialize)]
pub struct TheoremJson {
    pub branch: TheoremBranch,
    pub predicted_s: Option<usize>,
    pub conics: Vec<ConicJson>,
}

#[derive(Serialize)]
pub struct ConicJson {
    pub points_set: String,
    /// Printed polynomial; exact coefficients.
    pub form: Option<String>,
    pub smooth: bool,
}

#[derive(Serialize)]
pub struct CheckJson {
    pub name: String,
    pub pass: bool,
    pub finding: bool,
}

/// Conic equation scaled so that its first square term `x^2, y^2, z^2` has
/// coefficient 1.
pub fn conic_text(c: &Conic) -> String {
    let f = c.form();
    let squares = [Monomial::new(2, 0, 0), Monomial::new(0, 2, 0), Monomial::new(0, 0, 2)];
    match squares.iter().map(|m| f.coefficient(m)).find(|v| !v.is_zero()) {
        Some(v) => f.scale(&v.inv().expect("nonzero")).to_string(),
        None => f.monic().to_string(),
    }
}

pub fn build_report(
    a: &Arrangement,
    cert: &TripleOnlyCertificate,
    report: &MonodromyReport,
    prediction: &TheoremPrediction,
    checks: &[CheckRecord],
) -> ReportJson {
    let pencil = match &prediction.pencil {
        Some(p) => PencilJson {
            found: true,
            partition: Some(format_partition(p.parts())),
            profile: Some(profile(p).labels()),
            sizes: Some(p.sizes()),
        },
        None => PencilJson { found: false, partition: None, profile: None, sizes: None },
    };
    ReportJson {
        label: a.label().to_string(),
        d: report.d,
        m: report.m,
        lattice: LatticeJson { t2: cert.double_points.len(), t3: cert.triple_points.len() },
        pencil,
        monodromy: MonodromyJson {
            s: report.s,
            h10_eps: report.h10_eps,
            h01_eps: report.h01_eps,
            h10_epsbar: report.h10_epsbar,
            h01_epsbar: report.h01_epsbar,
            b1_f: report.b1_f,
            char_poly: report.char_poly,
        },
        theorem: TheoremJson {
            branch: prediction.branch,
            predicted_s: prediction.predicted_s,
            conics: prediction
                .conics
                .iter()
                .map(|c| ConicJson {
                    points_set: c.points_set.clone(),
                    form: c.conic.as_ref().map(conic_text),
                    smooth: c.smooth,
                })
                .collect(),
        },
        checks: checks.iter().map(|c| CheckJson { name: c.name.clone(), pass: c.pass, finding: c.finding }).collect(),
    }
}
