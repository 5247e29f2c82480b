//! Command-line front end: `check`, `mu`, `verify` and `slice`.

pub mod parse;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::classical::{g2_classify, penta_classify, tetra_classify, PointG2, PointPenta, PointTetra};
use crate::domain_f::{f_classify, PointF};
use crate::error::{Error, Result};
use crate::harness::{self, Aggregate, SuiteReport};
use crate::hexablock::{hexa_classify, hexa_is_indeterminate, hn_classify, PointH};
use crate::lie::{lie_ball_classify, PointCn};
use crate::matrix::C64;
use crate::mu::{mu_value, Structure};
use crate::verdict::Region;
use crate::DEFAULT_TOL;

use parse::{complex_to_json, matrix_to_json, parse_matrix, parse_point, parse_range};

pub const EXIT_VERIFY_FAILED: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_UNKNOWN_STRUCTURE: i32 = 65;
pub const EXIT_UNKNOWN_SUITE: i32 = 66;
pub const EXIT_INTERNAL: i32 = 70;
/// Slice cell code for a hexablock supremum that landed in the tolerance band.
pub const CODE_INDETERMINATE: i32 = 9;

/// Environment variable holding the default tolerance.
pub const TOL_ENV: &str = "MUDOMAINS_TOL";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    G2,
    Tetra,
    Penta,
    F,
    H,
    Hn,
    L4,
}

impl Domain {
    pub fn coord_names(self) -> &'static [&'static str] {
        match self {
            Domain::G2 => &["s", "p"],
            Domain::Tetra => &["x1", "x2", "x3"],
            Domain::Penta => &["a", "s", "p"],
            Domain::F => &["x", "a", "p", "s"],
            Domain::H | Domain::Hn => &["a", "x1", "x2", "x3"],
            Domain::L4 => &["z1", "z2", "z3", "z4"],
        }
    }

    pub fn arity(self) -> usize {
        self.coord_names().len()
    }
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "g2" | "gamma" => Domain::G2,
            "tetra" | "e" => Domain::Tetra,
            "penta" | "p" => Domain::Penta,
            "f" => Domain::F,
            "h" | "hexa" => Domain::H,
            "hn" => Domain::Hn,
            "l4" | "lie" => Domain::L4,
            other => return Err(Error::Parse(format!("unknown domain {other:?}"))),
        })
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::G2 => "g2",
            Domain::Tetra => "tetra",
            Domain::Penta => "penta",
            Domain::F => "f",
            Domain::H => "h",
            Domain::Hn => "hn",
            Domain::L4 => "l4",
        })
    }
}

/// Classification of a point of any domain, in the shape the CLI prints.
#[derive(Clone, Debug, PartialEq)]
pub struct Classified {
    pub region: Region,
    pub shilov: Option<bool>,
    /// Absent for `hn`, whose test is not margin based.
    pub margin: Option<f64>,
    pub indeterminate: bool,
}

impl Classified {
    /// Slice code: the region code, or 9 for an indeterminate cell.
    pub fn code(&self) -> i32 {
        if self.indeterminate {
            CODE_INDETERMINATE
        } else {
            self.region.code()
        }
    }
}

pub fn classify(domain: Domain, z: &[C64], tol: f64) -> Result<Classified> {
    if z.len() != domain.arity() {
        return Err(Error::Parse(format!(
            "domain {domain} takes {} coordinates ({}), got {}",
            domain.arity(),
            domain.coord_names().join(", "),
            z.len()
        )));
    }
    let from = |v: crate::MembershipVerdict| Classified {
        region: v.region,
        shilov: v.shilov,
        margin: Some(v.margin),
        indeterminate: false,
    };
    Ok(match domain {
        Domain::G2 => from(g2_classify(PointG2::new(z[0], z[1]), tol)?),
        Domain::Tetra => from(tetra_classify(PointTetra::new(z[0], z[1], z[2]), tol)?),
        Domain::Penta => from(penta_classify(PointPenta::new(z[0], z[1], z[2]), tol)?),
        Domain::F => from(f_classify(PointF::new(z[0], z[1], z[2], z[3]), tol)),
        Domain::H => {
            let pt = PointH::new(z[0], z[1], z[2], z[3]);
            let v = hexa_classify(pt, tol)?;
            Classified { indeterminate: hexa_is_indeterminate(pt, &v), ..from(v) }
        }
        Domain::Hn => {
            let v = hn_classify(PointH::new(z[0], z[1], z[2], z[3]));
            let region = if v.in_open {
                Region::Interior
            } else if v.in_closure {
                Region::ClosureBoundary
            } else {
                Region::Outside
            };
            Classified { region, shilov: None, margin: None, indeterminate: false }
        }
        Domain::L4 => from(lie_ball_classify(&PointCn::new(z.to_vec()), tol)?),
    })
}

#[derive(Parser, Debug)]
#[command(name = "mudomains", version, about = "Membership, boundary and structured singular value computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a point: exit 0 interior, 1 boundary, 2 outside.
    Check(CheckArgs),
    /// Structured singular value of a 2x2 matrix.
    Mu(MuArgs),
    /// Run a verification suite, `counterexamples` or `all`.
    Verify(VerifyArgs),
    /// Classify a 2-D grid of points and write CSV.
    Slice(SliceArgs),
}

#[derive(Args, Debug)]
struct TolArg {
    /// Tolerance band; defaults to $MUDOMAINS_TOL, then 1e-9.
    #[arg(long, env = TOL_ENV)]
    tol: Option<f64>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// g2, tetra, penta, f, h, hn or l4.
    domain_pos: Option<String>,
    /// "(z1,z2,...)", a JSON array, or a JSON point document.
    point_pos: Option<String>,
    #[arg(long)]
    domain: Option<String>,
    #[arg(long)]
    point: Option<String>,
    #[command(flatten)]
    tol: TolArg,
}

#[derive(Args, Debug)]
struct MuArgs {
    /// scalar, diag, upper, lower, full, skewdiag or e_theta:<angle>.
    structure_pos: Option<String>,
    /// "[[a11,a12],[a21,a22]]".
    matrix_pos: Option<String>,
    #[arg(long)]
    structure: Option<String>,
    #[arg(long)]
    matrix: Option<String>,
    #[command(flatten)]
    tol: TolArg,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    suite_pos: Option<String>,
    #[arg(long)]
    suite: Option<String>,
    /// Samples; each suite has its own default.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[command(flatten)]
    tol: TolArg,
    /// r values for `counterexamples`, comma separated.
    #[arg(long, value_delimiter = ',')]
    r: Vec<f64>,
    /// Also write the JSON aggregate to this file.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Print the JSON aggregate instead of key=value lines.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SliceArgs {
    domain_pos: Option<String>,
    #[arg(long)]
    domain: Option<String>,
    /// Fixed coordinates, e.g. "x=0,a=0.5i"; unlisted ones are 0.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    fixed: String,
    /// Two free axes, e.g. "Re(p),Re(s)" or "re:p,im:p".
    #[arg(long)]
    axes: String,
    /// "lo:hi" for both axes or "lo:hi,lo:hi".
    #[arg(long, default_value = "-2:2", allow_hyphen_values = true)]
    range: String,
    /// Points per axis, "n" or "n1,n2".
    #[arg(long, default_value = "101")]
    grid: String,
    #[command(flatten)]
    tol: TolArg,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

fn pick(pos: Option<String>, flag: Option<String>, what: &str) -> Result<String> {
    match (pos, flag) {
        (Some(_), Some(_)) => Err(Error::Parse(format!("{what} given both positionally and as a flag"))),
        (Some(v), None) | (None, Some(v)) => Ok(v),
        (None, None) => Err(Error::Parse(format!("missing {what}"))),
    }
}

fn tol_of(t: &TolArg) -> Result<f64> {
    let tol = t.tol.unwrap_or(DEFAULT_TOL);
    if tol.is_finite() && tol >= 0.0 {
        Ok(tol)
    } else {
        Err(Error::Parse(format!("tolerance must be a non-negative number, got {tol}")))
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::PreconditionViolation(_) => EXIT_USAGE,
        Error::UnknownStructure(_) => EXIT_UNKNOWN_STRUCTURE,
        Error::UnknownSuite(_) => EXIT_UNKNOWN_SUITE,
        _ => EXIT_INTERNAL,
    }
}

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

fn cmd_check(a: CheckArgs, out: &mut dyn Write) -> Result<i32> {
    let point = pick(a.point_pos, a.point, "point")?;
    let (coords, doc_domain) = parse_point(&point)?;
    let domain_name = match (a.domain_pos.or(a.domain), doc_domain) {
        (Some(d), _) | (None, Some(d)) => d,
        (None, None) => return Err(Error::Parse("missing domain".into())),
    };
    let domain: Domain = domain_name.parse()?;
    let tol = tol_of(&a.tol)?;
    let v = classify(domain, &coords, tol)?;
    let doc = json!({
        "domain": domain.to_string(),
        "coords": coords.iter().map(|z| complex_to_json(*z)).collect::<Vec<_>>(),
        "region": format!("{:?}", v.region),
        "shilov": v.shilov,
        "margin": v.margin.map(num),
        "indeterminate": v.indeterminate,
        "tol": tol,
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json")).map_err(io_err)?;
    Ok(v.region.code())
}

fn cmd_mu(a: MuArgs, out: &mut dyn Write) -> Result<i32> {
    let structure: Structure = pick(a.structure_pos, a.structure, "structure")?.parse()?;
    let m = parse_matrix(&pick(a.matrix_pos, a.matrix, "matrix")?)?;
    let tol = tol_of(&a.tol)?;
    let r = mu_value(&m, &structure, tol)?;
    let doc = json!({
        "structure": structure.name(),
        "matrix": matrix_to_json(&m),
        "value": num(r.value),
        "status": format!("{:?}", r.status),
        "minimizer": r.minimizer.as_ref().map(matrix_to_json),
        "tol": tol,
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json")).map_err(io_err)?;
    Ok(0)
}

fn io_err(e: std::io::Error) -> Error {
    Error::PreconditionViolation(format!("write failed: {e}"))
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let suite = pick(a.suite_pos, a.suite, "suite")?;
    let tol = match a.tol.tol {
        Some(_) => Some(tol_of(&a.tol)?),
        None => None,
    };
    let reports: Vec<SuiteReport> = match suite.as_str() {
        "all" => harness::run_all(a.n, a.seed, tol)?,
        "counterexamples" => {
            let grid = if a.r.is_empty() { harness::DEFAULT_R_GRID.to_vec() } else { a.r.clone() };
            vec![harness::run_counterexamples(&grid)?]
        }
        name => {
            if !harness::SUITES.contains(&name) {
                return Err(Error::UnknownSuite(name.to_string()));
            }
            let n = a.n.unwrap_or_else(|| harness::default_samples(name));
            vec![harness::run_suite(name, n, a.seed, tol.unwrap_or_else(|| harness::default_tol(name)))?]
        }
    };
    let agg = Aggregate::new(reports);
    if a.json {
        writeln!(out, "{}", agg.to_json()).map_err(io_err)?;
    } else {
        for r in &agg.suites {
            write!(out, "{}", r.to_text()).map_err(io_err)?;
        }
        writeln!(out, "overall={}", if agg.passed { "pass" } else { "fail" }).map_err(io_err)?;
    }
    if let Some(path) = a.out {
        std::fs::write(&path, agg.to_json())
            .map_err(|e| Error::PreconditionViolation(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(if agg.passed { 0 } else { EXIT_VERIFY_FAILED })
}

/// One free axis of a slice: coordinate index and real or imaginary part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Axis {
    pub index: usize,
    pub imaginary: bool,
}

pub fn parse_axis(domain: Domain, text: &str) -> Result<Axis> {
    let t = text.trim();
    let lower = t.to_ascii_lowercase();
    let (imaginary, name) = if let Some(r) = lower.strip_prefix("re(").and_then(|r| r.strip_suffix(')')) {
        (false, r.to_string())
    } else if let Some(r) = lower.strip_prefix("im(").and_then(|r| r.strip_suffix(')')) {
        (true, r.to_string())
    } else if let Some(r) = lower.strip_prefix("re:") {
        (false, r.to_string())
    } else if let Some(r) = lower.strip_prefix("im:") {
        (true, r.to_string())
    } else {
        (false, lower.clone())
    };
    let index = domain
        .coord_names()
        .iter()
        .position(|n| *n == name.trim())
        .ok_or_else(|| Error::Parse(format!("{domain} has no coordinate {t:?}")))?;
    Ok(Axis { index, imaginary })
}

fn axis_label(domain: Domain, a: Axis) -> String {
    format!("{}({})", if a.imaginary { "Im" } else { "Re" }, domain.coord_names()[a.index])
}

/// Description of a slice: a base point and two free real directions.
#[derive(Clone, Debug)]
pub struct SliceSpec {
    pub domain: Domain,
    pub base: Vec<C64>,
    pub axes: [Axis; 2],
    pub ranges: [(f64, f64); 2],
    pub grid: [usize; 2],
    pub tol: f64,
}

impl SliceSpec {
    pub fn parse(domain: Domain, fixed: &str, axes: &str, range: &str, grid: &str, tol: f64) -> Result<Self> {
        let mut base = vec![C64::new(0.0, 0.0); domain.arity()];
        for item in fixed.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("fixed coordinate must be name=value, got {item:?}")))?;
            let idx = domain
                .coord_names()
                .iter()
                .position(|n| *n == k.trim().to_ascii_lowercase())
                .ok_or_else(|| Error::Parse(format!("{domain} has no coordinate {k:?}")))?;
            base[idx] = parse::parse_complex(v)?;
        }
        let axes: Vec<Axis> = axes.split(',').map(|a| parse_axis(domain, a)).collect::<Result<_>>()?;
        if axes.len() != 2 {
            return Err(Error::Parse(format!("a slice needs exactly two axes, got {}", axes.len())));
        }
        if axes[0] == axes[1] {
            return Err(Error::Parse("the two axes must differ".into()));
        }
        let ranges: Vec<(f64, f64)> = range.split(',').map(parse_range).collect::<Result<_>>()?;
        let ranges = match ranges.as_slice() {
            [r] => [*r, *r],
            [r1, r2] => [*r1, *r2],
            _ => return Err(Error::Parse(format!("expected one or two ranges, got {range:?}"))),
        };
        let sizes: Vec<usize> = grid
            .split([',', 'x'])
            .map(|g| g.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad grid size {g:?}"))))
            .collect::<Result<_>>()?;
        let grid = match sizes.as_slice() {
            [n] => [*n, *n],
            [n1, n2] => [*n1, *n2],
            _ => return Err(Error::Parse(format!("expected one or two grid sizes, got {grid:?}"))),
        };
        if grid.iter().any(|&n| n < 2) {
            return Err(Error::Parse("each axis needs at least two grid points".into()));
        }
        Ok(Self { domain, base, axes: [axes[0], axes[1]], ranges, grid, tol })
    }

    fn value(&self, axis: usize, k: usize) -> f64 {
        let (lo, hi) = self.ranges[axis];
        lo + (hi - lo) * k as f64 / (self.grid[axis] - 1) as f64
    }

    /// The point at grid cell `(i, j)` together with its two axis values.
    pub fn point(&self, i: usize, j: usize) -> (f64, f64, Vec<C64>) {
        let (u, v) = (self.value(0, i), self.value(1, j));
        let mut z = self.base.clone();
        for (axis, t) in self.axes.iter().zip([u, v]) {
            let w = &mut z[axis.index];
            if axis.imaginary {
                w.im = t;
            } else {
                w.re = t;
            }
        }
        (u, v, z)
    }

    /// Rows `(u, v, code, margin)` in row-major order of the first axis.
    pub fn cells(&self) -> Result<Vec<(f64, f64, i32, Option<f64>)>> {
        let n = self.grid[0] * self.grid[1];
        (0..n)
            .into_par_iter()
            .map(|k| {
                let (i, j) = (k / self.grid[1], k % self.grid[1]);
                let (u, v, z) = self.point(i, j);
                let c = classify(self.domain, &z, self.tol)?;
                Ok((u, v, c.code(), c.margin))
            })
            .collect()
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut s = format!(
            "{},{},code,margin\n",
            axis_label(self.domain, self.axes[0]),
            axis_label(self.domain, self.axes[1])
        );
        for (u, v, code, margin) in self.cells()? {
            let m = margin.map_or_else(|| "nan".to_string(), |m| format!("{m:e}"));
            s.push_str(&format!("{u:e},{v:e},{code},{m}\n"));
        }
        Ok(s)
    }
}

fn cmd_slice(a: SliceArgs, out: &mut dyn Write) -> Result<i32> {
    let domain: Domain = pick(a.domain_pos, a.domain, "domain")?.parse()?;
    let tol = tol_of(&a.tol)?;
    let spec = SliceSpec::parse(domain, &a.fixed, &a.axes, &a.range, &a.grid, tol)?;
    let csv = spec.to_csv()?;
    match a.out {
        Some(path) => std::fs::write(&path, csv)
            .map_err(|e| Error::PreconditionViolation(format!("cannot write {}: {e}", path.display())))?,
        None => out.write_all(csv.as_bytes()).map_err(io_err)?,
    }
    Ok(0)
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = if code == 0 { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Check(a) => cmd_check(a, out),
        Command::Mu(a) => cmd_mu(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Slice(a) => cmd_slice(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c;

    fn run_args(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("mudomains").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
    }

    #[test]
    fn check_examples() {
        assert_eq!(run_args(&["check", "f", "(0,0,0.25,0)"]).0, 0);
        assert_eq!(run_args(&["check", "f", "(0,0.5,0,1)"]).0, 2);
        assert_eq!(run_args(&["check", "g2", "(0,0)"]).0, 0);
        assert_eq!(run_args(&["check", "--domain", "g2", "--point", "(2,1)"]).0, 1);
        assert_eq!(run_args(&["check", "f", "(0,0,0.25)"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["check", "q", "(0,0)"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["check", "f", "(0,0,x,0)"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["check"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["bogus"]).0, EXIT_USAGE);
    }

    #[test]
    fn printed_point_reparses_to_same_verdict() {
        let (code, text) = run_args(&["check", "penta", "(0.3+0.1i, 0.5-0.2i, 0.1i)"]);
        let (again, text2) = run_args(&["check", "--point", &text]);
        assert_eq!(code, again);
        assert_eq!(text, text2);
    }

    #[test]
    fn mu_examples() {
        let (code, text) = run_args(&["mu", "diag", "[[0,1],[0,0]]"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["value"], 0.0);
        assert_eq!(v["status"], "Infeasible");
        let (_, text) = run_args(&["mu", "full", "[[2,0],[0,0]]"]);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert!((v["value"].as_f64().unwrap() - 2.0).abs() < 1e-12);
        let (_, text) = run_args(&["mu", "--structure", "e_theta:0", "--matrix", "[[0,1],[0,0]]"]);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert!((v["value"].as_f64().unwrap() - 1.0).abs() < 1e-7);
        assert_eq!(run_args(&["mu", "banded", "[[0,1],[0,0]]"]).0, EXIT_UNKNOWN_STRUCTURE);
        assert_eq!(run_args(&["mu", "full", "[[0,1]]"]).0, EXIT_USAGE);
    }

    #[test]
    fn verify_codes() {
        assert_eq!(run_args(&["verify", "counterexamples", "--r", "0.5"]).0, 0);
        assert_eq!(run_args(&["verify", "prop22_vs_oracle", "--n", "200"]).0, 0);
        assert_eq!(run_args(&["verify", "no_such_suite"]).0, EXIT_UNKNOWN_SUITE);
        assert_eq!(run_args(&["verify", "counterexamples", "--r", "1.5"]).0, EXIT_USAGE);
    }

    #[test]
    fn slice_cells() {
        let spec = SliceSpec::parse(Domain::F, "x=0,a=0", "Re(p),Re(s)", "-1.5:1.5", "13", DEFAULT_TOL).unwrap();
        let cells = spec.cells().unwrap();
        // (p, s) = (0.25, 0) sits at i = 7, j = 6
        let (u, v, code, _) = cells[7 * 13 + 6];
        assert!((u - 0.25).abs() < 1e-12 && v.abs() < 1e-12);
        assert_eq!(code, 0);

        let spec = SliceSpec::parse(Domain::G2, "", "re:s,re:p", "-2.5:2.5", "41", DEFAULT_TOL).unwrap();
        for (u, v, code, _) in spec.cells().unwrap() {
            let v_ = g2_classify(PointG2::new(c(u, 0.0), c(v, 0.0)), DEFAULT_TOL).unwrap();
            assert_eq!(code, v_.region.code());
        }

        assert!(SliceSpec::parse(Domain::F, "", "Re(p)", "-1:1", "10", DEFAULT_TOL).is_err());
        assert!(SliceSpec::parse(Domain::F, "", "Re(p),Re(q)", "-1:1", "10", DEFAULT_TOL).is_err());
        assert!(SliceSpec::parse(Domain::F, "y=1", "Re(p),Re(s)", "-1:1", "10", DEFAULT_TOL).is_err());
    }

    #[test]
    fn hexablock_band_cells_get_code_nine() {
        let zero = c(0.0, 0.0);
        let inside = classify(Domain::H, &[c(0.5, 0.0), zero, zero, zero], DEFAULT_TOL).unwrap();
        assert_eq!(inside.code(), 0);
        let edge = classify(Domain::H, &[c(1.0, 0.0), zero, zero, zero], DEFAULT_TOL).unwrap();
        assert!(edge.indeterminate);
        assert_eq!(edge.code(), CODE_INDETERMINATE);
    }
}
