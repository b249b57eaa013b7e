//! Command-line front end. [`run`] is the whole program minus process exit.
//!
//! Exit codes: 0 success, 1 invalid arrangement, 2 hypothesis violation or
//! not a pencil, 3 parse or usage error, 4 rejected catalog parameter,
//! 5 verification failure.

mod format;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::arrangement::{certify, Arrangement};
use crate::catalog::{self, CatalogName, CatalogParams};
use crate::error::{Error, Result};
use crate::exactfield::{FieldElement, Rational};
use crate::monodromy::{analyze_certified, classify, cross_validate, CheckRecord};
use crate::pencil::{format_partition, parse_partition, profile, search_pencil, validate_partition};

pub use format::{export_arrangement, parse_arrangement, FieldKind};
pub use report::{build_report, ReportJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_PARAMETER: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArrangement(_) | Error::DegenerateInput(_) | Error::DivisionByZero => EXIT_INVALID,
        Error::HypothesisViolation { .. } | Error::NotAPencil(_) | Error::DegeneratePencil(_) => EXIT_HYPOTHESIS,
        Error::Parse { .. } => EXIT_PARSE,
        Error::ParameterRejected { .. } => EXIT_PARAMETER,
    }
}

#[derive(Parser, Debug)]
#[command(name = "arrmono", version, about = "Milnor fiber monodromy of line arrangements with double and triple points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenspace dimensions, Betti number and theorem branch.
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Emit the JSON report.
        #[arg(long)]
        json: bool,
        /// Also cross-check against the pencil-side computation.
        #[arg(long)]
        check_prop1: bool,
        /// Where to write a counterexample arrangement, should one turn up.
        #[arg(long, value_name = "PATH", default_value = "witness.arr")]
        witness: PathBuf,
    },
    /// Validate a partition into a reduced pencil, or search for one.
    Pencil {
        #[command(flatten)]
        input: Input,
        /// Semicolon-separated, comma-listed 0-based line indices.
        #[arg(long, value_name = "PARTS", conflicts_with = "search")]
        partition: Option<String>,
        /// Search for a pencil structure (the default without --partition).
        #[arg(long)]
        search: bool,
    },
    /// Run the catalog pipeline and print a pass/fail table.
    Verify {
        /// Every catalog entry
        #[arg(long, conflicts_with = "name", required_unless_present = "name")]
        all: bool,
        /// A single catalog entry
        #[arg(long, value_name = "NAME")]
        name: Option<String>,
    },
    /// Print an arrangement in canonical file form.
    Export {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// Arrangement file.
    #[arg(value_name = "PATH", required_unless_present = "catalog", conflicts_with = "catalog")]
    path: Option<PathBuf>,
    /// Built-in arrangement: concurrent3, a3, ceva, hesse, d4section, yoshinaga18.
    #[arg(long, value_name = "NAME")]
    catalog: Option<String>,
    /// Parameter c of yoshinaga18.
    #[arg(long, value_name = "RAT", allow_hyphen_values = true)]
    c: Option<String>,
    /// Hyperplane t = a x + b y + c z of d4section.
    #[arg(long, value_name = "A,B,C", allow_hyphen_values = true)]
    hyperplane: Option<String>,
}

fn parse_rational(s: &str, what: &str) -> Result<Rational> {
    let v: FieldElement = s
        .parse()
        .map_err(|_| Error::Parse { line: 0, msg: format!("bad {what} `{s}`") })?;
    if !v.is_rational() {
        return Err(Error::Parse { line: 0, msg: format!("{what} `{s}` must be rational") });
    }
    Ok(v.re_part().clone())
}

impl Input {
    fn load(&self) -> Result<Arrangement> {
        if let Some(name) = &self.catalog {
            let name: CatalogName = name.parse()?;
            let mut params = CatalogParams::default();
            if let Some(c) = &self.c {
                params.c = Some(parse_rational(c, "--c")?);
            }
            if let Some(h) = &self.hyperplane {
                let parts = h.split(',').map(|t| parse_rational(t, "--hyperplane")).collect::<Result<Vec<_>>>()?;
                let arr: [Rational; 3] = parts.try_into().map_err(|_| Error::Parse {
                    line: 0,
                    msg: "--hyperplane takes three comma-separated rationals".into(),
                })?;
                params.hyperplane = Some(arr);
            }
            return Ok(catalog::build(name, &params)?.arrangement);
        }
        let path = self.path.as_deref().expect("clap enforces PATH or --catalog");
        read_file(path)
    }
}

fn read_file(path: &Path) -> Result<Arrangement> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse { line: 0, msg: format!("{}: {e}", path.display()) })?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("arrangement");
    parse_arrangement(&text, stem)
}

/// Runs the program on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Analyze { input, json, check_prop1, witness } => cmd_analyze(&input, json, check_prop1, &witness, out),
        Command::Pencil { input, partition, search: _ } => cmd_pencil(&input, partition.as_deref(), out),
        Command::Verify { all: _, name } => cmd_verify(name.as_deref(), out),
        Command::Export { input } => input.load().map(|a| {
            let _ = write!(out, "{}", export_arrangement(&a));
            EXIT_OK
        }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn cmd_analyze(input: &Input, json: bool, check_prop1: bool, witness: &Path, out: &mut dyn Write) -> Result<i32> {
    let a = input.load()?;
    let (_, cert) = certify(&a)?;
    let (report, prediction, checks, witness_arr) = if check_prop1 {
        let cv = cross_validate(&a)?;
        (cv.report, cv.prediction, cv.checks, cv.witness)
    } else {
        (analyze_certified(&a, &cert), classify(&a)?, Vec::new(), None)
    };
    let mut code = EXIT_OK;
    if checks.iter().any(CheckRecord::is_failure) {
        code = EXIT_VERIFY;
    }
    if let Some(w) = &witness_arr {
        std::fs::write(witness, export_arrangement(w))
            .map_err(|e| Error::Parse { line: 0, msg: format!("{}: {e}", witness.display()) })?;
    }

    if json {
        let r = build_report(&a, &cert, &report, &prediction, &checks);
        let text = serde_json::to_string_pretty(&r).expect("report serializes");
        let _ = writeln!(out, "{text}");
        return Ok(code);
    }

    let _ = writeln!(out, "arrangement: {}", a.label());
    let m = report.m.map_or("-".to_string(), |m| m.to_string());
    let _ = writeln!(out, "d = {}, m = {m}", report.d);
    let _ = writeln!(out, "double points: {}, triple points: {}", cert.double_points.len(), cert.triple_points.len());
    match &prediction.pencil {
        Some(p) => {
            let prof = profile(p);
            let _ = writeln!(
                out,
                "pencil: {} (|T1|,|T2|,|T3|) = {:?} [{}]",
                format_partition(p.parts()),
                prof.sizes,
                prof.labels().join(", ")
            );
        }
        None => {
            let _ = writeln!(out, "pencil: none");
        }
    }
    let _ = writeln!(out, "dim H^1,0(F)_eps = dim H^0,1(F)_eps^2 = {}", report.h10_eps);
    let _ = writeln!(out, "dim H^1,0(F)_eps^2 = dim H^0,1(F)_eps = {}", report.h10_epsbar);
    let _ = writeln!(out, "s = {}", report.s);
    let _ = writeln!(out, "b1(F) = {}", report.b1_f);
    let _ = writeln!(out, "characteristic polynomial: {}", report.char_poly);
    let predicted = prediction.predicted_s.map_or("none".to_string(), |s| s.to_string());
    let _ = writeln!(out, "branch: {}, predicted s = {predicted}", prediction.branch);
    for c in &prediction.conics {
        let form = c.conic.as_ref().map_or("no conic".to_string(), report::conic_text);
        let _ = writeln!(out, "  {}: {form} (smooth: {})", c.points_set, c.smooth);
    }
    for c in &checks {
        let _ = writeln!(out, "check {}: {}", c.name, status(c));
    }
    if witness_arr.is_some() {
        let _ = writeln!(out, "witness written to {}", witness.display());
    }
    Ok(code)
}

fn status(c: &CheckRecord) -> &'static str {
    if c.pass {
        "PASS"
    } else if c.finding {
        "FINDING"
    } else {
        "FAIL"
    }
}

fn cmd_pencil(input: &Input, partition: Option<&str>, out: &mut dyn Write) -> Result<i32> {
    let a = input.load()?;
    let structure = match partition {
        Some(s) => validate_partition(&a, &parse_partition(s)?)?,
        None => match search_pencil(&a)? {
            Some(p) => p,
            None => {
                let _ = writeln!(out, "no pencil");
                return Ok(EXIT_OK);
            }
        },
    };
    let _ = write!(out, "{structure}");
    Ok(EXIT_OK)
}

fn cmd_verify(name: Option<&str>, out: &mut dyn Write) -> Result<i32> {
    let names: Vec<CatalogName> = match name {
        Some(n) => vec![n.parse()?],
        None => CatalogName::ALL.to_vec(),
    };
    let mut all_pass = true;
    for n in names {
        let entry = catalog::build(n, &CatalogParams::default())?;
        let checks = catalog::verify(&entry)?;
        for c in &checks {
            all_pass &= !c.is_failure();
            let _ = writeln!(out, "{:<12} {:<32} {:<7} {}", n.as_str(), c.name, status(c), c.detail);
        }
    }
    let _ = writeln!(out, "{}", if all_pass { "all checks passed" } else { "some checks FAILED" });
    Ok(if all_pass { EXIT_OK } else { EXIT_VERIFY })
}
