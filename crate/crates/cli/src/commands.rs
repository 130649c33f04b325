//! The subcommands, returning their report and exit status instead of
//! printing, so tests can drive them directly.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use sos_core::{
    count_states, enumerate_z, partition_function_det, residual_a, residual_ad, residual_d, sampling, Complex64,
    EquationKind, ModelParameters, ParameterSet, SosError, MAX_ENUMERATION_L,
};

use crate::config::{ConfigError, Method, OutputFormat, RunConfig};
use crate::golden::{self, GoldenTable};

/// Residuals above this fail the functional-equation check.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Largest lattice the timing report accepts.
pub const BENCH_MAX_L: usize = 30;

/// Largest lattice timed by enumeration.
pub const BENCH_ENUM_MAX_L: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    ComputationError = 1,
    InvalidInput = 2,
    VerificationFailed = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// What a command printed and how it ended. `error` goes to stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: String,
    pub error: Option<String>,
    pub status: Status,
}

impl Outcome {
    fn ok(report: String) -> Self {
        Self {
            report,
            error: None,
            status: Status::Success,
        }
    }

    fn failed(report: String, status: Status, error: impl Into<String>) -> Self {
        Self {
            report,
            error: Some(error.into()),
            status,
        }
    }
}

impl From<ConfigError> for Outcome {
    fn from(e: ConfigError) -> Self {
        Outcome::failed(String::new(), Status::InvalidInput, e.to_string())
    }
}

fn status_of(e: &SosError) -> Status {
    match e {
        SosError::NomeOutOfRange(_)
        | SosError::InvalidSetting(_)
        | SosError::InvalidParameters(_)
        | SosError::IndexOutOfRange { .. }
        | SosError::EnumerationTooLarge { .. }
        | SosError::ArgumentOutOfRange { .. }
        | SosError::DegenerateSpectralPoint(_) => Status::InvalidInput,
        _ => Status::ComputationError,
    }
}

fn sos_failure(report: String, e: SosError) -> Outcome {
    let status = status_of(&e);
    Outcome::failed(report, status, e.to_string())
}

/// `re +/- im i` with 15 significant digits per component.
pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.14e} {sign} {:.14e} i", z.re, z.im.abs())
}

fn relative_discrepancy(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

fn evaluate(params: &ModelParameters, method: Method) -> Result<Complex64, SosError> {
    match method {
        Method::Enum => enumerate_z(params),
        _ => partition_function_det(params),
    }
}

pub fn compute(config: &RunConfig) -> Outcome {
    let params = &config.params;
    let l = params.l();
    let methods: &[Method] = match config.method {
        Method::Both => &[Method::Det, Method::Enum],
        Method::Det => &[Method::Det],
        Method::Enum => &[Method::Enum],
    };
    let mut values = Vec::new();
    for &m in methods {
        match evaluate(params, m) {
            Ok(z) => values.push((m, z)),
            Err(e) => return sos_failure(String::new(), e),
        }
    }
    let discrepancy = match values.as_slice() {
        [(_, a), (_, b)] => Some(relative_discrepancy(*a, *b)),
        _ => None,
    };

    let mut out = String::new();
    match config.output_format {
        OutputFormat::Text => {
            writeln!(out, "L = {l}").unwrap();
            for (m, z) in &values {
                let name = if *m == Method::Det { "det " } else { "enum" };
                writeln!(out, "{name}  Z = {}", format_complex(*z)).unwrap();
            }
            if let Some(d) = discrepancy {
                writeln!(out, "relative discrepancy = {d:.3e}").unwrap();
            }
        }
        OutputFormat::Machine => {
            for (m, z) in &values {
                let record = json!({
                    "method": if *m == Method::Det { "det" } else { "enum" },
                    "L": l,
                    "re": z.re,
                    "im": z.im,
                    "discrepancy": discrepancy,
                });
                writeln!(out, "{record}").unwrap();
            }
        }
    }
    Outcome::ok(out)
}

/// One recomputed table row.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub l: usize,
    pub det: Complex64,
    pub enumeration: Complex64,
    /// Determinant vs the printed representation column.
    pub det_error: f64,
    /// Enumeration vs the printed definition column.
    pub enum_error: f64,
    pub discrepancy: f64,
    pub matched_digits: u32,
    pub pass: bool,
}

pub fn table_rows(set_id: u8, lmax: usize) -> Result<Vec<TableRow>, SosError> {
    let set = ParameterSet::by_id(set_id)?;
    let table = GoldenTable::by_id(set_id).expect("table exists for every parameter set");
    let mut rows = Vec::new();
    for l in 2..=lmax {
        let golden = table.row(l).expect("rows cover L = 2..5");
        let params = set.params(l)?;
        let det = partition_function_det(&params)?;
        let enumeration = enumerate_z(&params)?;
        let det_error = golden::relative_error(det, golden.representation.value());
        let enum_error = golden::relative_error(enumeration, golden.definition.value());
        let discrepancy = golden::relative_error(det, enumeration);
        let pass = det_error <= golden::reference_tolerance(l)
            && enum_error <= golden::reference_tolerance(l)
            && discrepancy <= golden::method_tolerance(l);
        rows.push(TableRow {
            l,
            det,
            enumeration,
            det_error,
            enum_error,
            discrepancy,
            matched_digits: golden::matched_digits(det, golden.representation.value()),
            pass,
        });
    }
    Ok(rows)
}

pub fn tables(set_id: u8, lmax: usize) -> Outcome {
    if !(1..=2).contains(&set_id) {
        return Outcome::failed(
            String::new(),
            Status::InvalidInput,
            format!("unknown set {set_id}; use 1 or 2"),
        );
    }
    if !(2..=5).contains(&lmax) {
        return Outcome::failed(
            String::new(),
            Status::InvalidInput,
            format!("--lmax must be in 2..=5, got {lmax}"),
        );
    }
    let rows = match table_rows(set_id, lmax) {
        Ok(rows) => rows,
        Err(e) => return sos_failure(String::new(), e),
    };
    let table = GoldenTable::by_id(set_id).unwrap();
    let mut out = String::new();
    writeln!(out, "set {set_id}").unwrap();
    for r in &rows {
        let golden = table.row(r.l).unwrap();
        writeln!(out, "L = {}", r.l).unwrap();
        writeln!(out, "  published definition      {}", golden.definition.printed()).unwrap();
        writeln!(
            out,
            "  enumeration               {}   rel {:.2e}",
            format_complex(r.enumeration),
            r.enum_error
        )
        .unwrap();
        writeln!(out, "  published representation  {}", golden.representation.printed()).unwrap();
        writeln!(
            out,
            "  determinant               {}   rel {:.2e}",
            format_complex(r.det),
            r.det_error
        )
        .unwrap();
        writeln!(
            out,
            "  det vs enum {:.2e}, {} digits   {}",
            r.discrepancy,
            r.matched_digits,
            if r.pass { "PASS" } else { "FAIL" }
        )
        .unwrap();
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    if failed == 0 {
        writeln!(out, "all {} rows agree", rows.len()).unwrap();
        Outcome::ok(out)
    } else {
        Outcome::failed(
            out,
            Status::VerificationFailed,
            format!("{failed} row(s) disagree with the published values"),
        )
    }
}

pub fn funceq(kind: EquationKind, config: &RunConfig, trials: usize, seed: u64) -> Outcome {
    if trials == 0 {
        return Outcome::failed(String::new(), Status::InvalidInput, "--trials must be at least 1");
    }
    let params = &config.params;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::new();
    writeln!(out, "equation {kind}, L = {}, seed {seed}", params.l()).unwrap();
    let mut worst = 0.0f64;
    for t in 0..trials {
        let (x0, xb) = sampling::auxiliary_pair(&mut rng, params.x().as_slice());
        let residual = match kind {
            EquationKind::A => residual_a(params, x0),
            EquationKind::D => residual_d(params, xb),
            EquationKind::AD => residual_ad(params, x0, xb),
        };
        let r = match residual {
            Ok(r) => r,
            Err(e) => return sos_failure(out, e),
        };
        let point = match kind {
            EquationKind::A => format!("x0 = {}", format_complex(x0)),
            EquationKind::D => format!("x0bar = {}", format_complex(xb)),
            EquationKind::AD => format!("x0 = {}, x0bar = {}", format_complex(x0), format_complex(xb)),
        };
        writeln!(out, "  trial {t}: {point}: residual {r:.3e}").unwrap();
        worst = worst.max(r);
    }
    let pass = worst <= RESIDUAL_TOL;
    writeln!(out, "max residual {worst:.3e} ({})", if pass { "PASS" } else { "FAIL" }).unwrap();
    if pass {
        Outcome::ok(out)
    } else {
        Outcome::failed(
            out,
            Status::VerificationFailed,
            format!("max residual {worst:.3e} exceeds {RESIDUAL_TOL:e}"),
        )
    }
}

pub fn count(l: usize) -> Outcome {
    if l > MAX_ENUMERATION_L {
        return Outcome::failed(
            String::new(),
            Status::InvalidInput,
            format!("counting enumerates every configuration and is limited to L <= {MAX_ENUMERATION_L}"),
        );
    }
    match count_states(l) {
        Ok(n) => Outcome::ok(format!("{n}\n")),
        Err(e) => sos_failure(String::new(), e),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub l: usize,
    pub det: Duration,
    pub enumeration: Option<Duration>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    /// Smallest `L` at which enumeration took longer than the determinant.
    pub fn crossover(&self) -> Option<usize> {
        self.rows
            .iter()
            .find(|r| r.enumeration.is_some_and(|e| e > r.det))
            .map(|r| r.l)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{:>3}  {:>14}  {:>14}", "L", "det", "enum").unwrap();
        for r in &self.rows {
            let e = r.enumeration.map_or("-".to_string(), |d| format!("{d:.3?}"));
            writeln!(out, "{:>3}  {:>14}  {:>14}", r.l, format!("{:.3?}", r.det), e).unwrap();
        }
        match self.crossover() {
            Some(l) => writeln!(out, "enumeration is slower than the determinant from L = {l}").unwrap(),
            None => writeln!(out, "no crossover within the timed range").unwrap(),
        }
        out
    }
}

// Mean wall time per call, repeating until at least `budget` has elapsed.
fn time<T>(budget: Duration, mut f: impl FnMut() -> Result<T, SosError>) -> Result<Duration, SosError> {
    let start = Instant::now();
    let mut runs = 0u32;
    loop {
        std::hint::black_box(f()?);
        runs += 1;
        if start.elapsed() >= budget {
            return Ok(start.elapsed() / runs);
        }
    }
}

pub fn bench_report(lmax: usize) -> Result<BenchReport, SosError> {
    let budget = Duration::from_millis(20);
    let mut rows = Vec::new();
    for l in 2..=lmax {
        let params = sampling::bench_parameters(l, l as u64)?;
        let det = time(budget, || partition_function_det(&params))?;
        let enumeration = if l <= BENCH_ENUM_MAX_L {
            Some(time(budget, || enumerate_z(&params))?)
        } else {
            None
        };
        rows.push(BenchRow { l, det, enumeration });
    }
    Ok(BenchReport { rows })
}

pub fn bench(lmax: usize) -> Outcome {
    if !(2..=BENCH_MAX_L).contains(&lmax) {
        return Outcome::failed(
            String::new(),
            Status::InvalidInput,
            format!("--lmax must be in 2..={BENCH_MAX_L}, got {lmax}"),
        );
    }
    match bench_report(lmax) {
        Ok(report) => Outcome::ok(report.render()),
        Err(e) => sos_failure(String::new(), e),
    }
}
