//! JSON run configurations.
//!
//! ```json
//! {"L": 2, "p": 0.3116, "gamma": 0.6512, "tau": 0.1743,
//!  "x": [0.4327, 1.0715], "mu": [0.6745, [0.4129, 0.0]]}
//! ```
//!
//! A complex value is a bare number or a two-element `[re, im]` array.
//! Optional keys: `method` (`det`, `enum`, `both`), `format` (`text`,
//! `machine`), `theta_rel_tol`, `regularity_tol`.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sos_core::{
    regularity, Complex64, EllipticNome, ModelParameters, SosError, ThetaEvaluator, DEFAULT_REGULARITY_TOL,
    MAX_ENUMERATION_L,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Det,
    Enum,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Machine,
}

/// Optional numerical overrides.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Tolerances {
    pub theta_rel_tol: Option<f64>,
    pub regularity_tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: ModelParameters,
    pub method: Method,
    pub output_format: OutputFormat,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    Io(String),
    /// Malformed JSON or a field of the wrong shape.
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    /// Well-formed but unusable values.
    Validation(Vec<String>),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io(msg) => write!(f, "cannot read config: {msg}"),
            ConfigError::Parse { line, column, message } => {
                write!(f, "parse error at line {line}, column {column}: {message}")
            }
            ConfigError::Validation(problems) => write!(f, "invalid config: {}", problems.join("; ")),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum ComplexRepr {
    Real(f64),
    Pair([f64; 2]),
}

impl From<ComplexRepr> for Complex64 {
    fn from(c: ComplexRepr) -> Self {
        match c {
            ComplexRepr::Real(re) => Complex64::new(re, 0.0),
            ComplexRepr::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

impl From<Complex64> for ComplexRepr {
    fn from(z: Complex64) -> Self {
        if z.im == 0.0 {
            ComplexRepr::Real(z.re)
        } else {
            ComplexRepr::Pair([z.re, z.im])
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(rename = "L")]
    l: usize,
    p: f64,
    gamma: ComplexRepr,
    tau: ComplexRepr,
    x: Vec<ComplexRepr>,
    mu: Vec<ComplexRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    method: Option<Method>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    format: Option<OutputFormat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta_rel_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    regularity_tol: Option<f64>,
}

pub fn parse_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(format!("{}: {e}", path.display())))?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| ConfigError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    validate(raw)
}

fn validate(raw: RawConfig) -> Result<RunConfig, ConfigError> {
    let mut problems = Vec::new();
    let nome = match EllipticNome::new(raw.p) {
        Ok(nome) => Some(nome),
        Err(_) => {
            problems.push(format!("nome out of range: p = {} (need 0 < p < 1)", raw.p));
            None
        }
    };
    if raw.l == 0 {
        problems.push("L must be at least 1".to_string());
    }
    if raw.x.len() != raw.l {
        problems.push(format!("x has {} entries, expected L = {}", raw.x.len(), raw.l));
    }
    if raw.mu.len() != raw.l {
        problems.push(format!("mu has {} entries, expected L = {}", raw.mu.len(), raw.l));
    }
    let method = raw.method.unwrap_or_default();
    if method != Method::Det && raw.l > MAX_ENUMERATION_L {
        problems.push(format!("enumeration needs L <= {MAX_ENUMERATION_L}, got {}", raw.l));
    }
    let Some(nome) = nome.filter(|_| problems.is_empty()) else {
        return Err(ConfigError::Validation(problems));
    };

    let mut theta = ThetaEvaluator::new(nome);
    if let Some(tol) = raw.theta_rel_tol {
        theta = theta
            .with_rel_tol(tol)
            .map_err(|e| ConfigError::Validation(vec![e.to_string()]))?;
    }
    let to_vec = |v: Vec<ComplexRepr>| v.into_iter().map(Complex64::from).collect::<Vec<_>>();
    let params = ModelParameters::new(theta, raw.gamma.into(), raw.tau.into(), to_vec(raw.x), to_vec(raw.mu))
        .and_then(|p| p.with_regularity_tol(raw.regularity_tol.unwrap_or(DEFAULT_REGULARITY_TOL)))
        .map_err(|e| ConfigError::Validation(vec![e.to_string()]))?;

    let violations = match regularity(&params, params.regularity_tol()) {
        Ok(v) => v,
        Err(SosError::ArgumentOutOfRange { re, limit }) => {
            return Err(ConfigError::Validation(vec![format!(
                "parameters too large for the theta series: |Re x| = {re} > {limit}"
            )]))
        }
        Err(e) => return Err(ConfigError::Validation(vec![e.to_string()])),
    };
    if !violations.is_empty() {
        return Err(ConfigError::Validation(
            violations.iter().map(|c| format!("regularity violated: {c}")).collect(),
        ));
    }

    Ok(RunConfig {
        params,
        method,
        output_format: raw.format.unwrap_or_default(),
        tolerances: Tolerances {
            theta_rel_tol: raw.theta_rel_tol,
            regularity_tol: raw.regularity_tol,
        },
    })
}

/// JSON text that [`parse_config_str`] maps back to the same config.
pub fn serialize(config: &RunConfig) -> String {
    let p = &config.params;
    let to_repr = |v: &[Complex64]| v.iter().copied().map(ComplexRepr::from).collect();
    let raw = RawConfig {
        l: p.l(),
        p: p.theta().nome().value(),
        gamma: p.gamma().into(),
        tau: p.tau().into(),
        x: to_repr(p.x().as_slice()),
        mu: to_repr(p.mu().as_slice()),
        method: Some(config.method),
        format: Some(config.output_format),
        theta_rel_tol: config.tolerances.theta_rel_tol,
        regularity_tol: config.tolerances.regularity_tol,
    };
    serde_json::to_string_pretty(&raw).expect("config serializes")
}
