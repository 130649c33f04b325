//! Model parameters and the variable-set substitutions `X_i^a`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Result, SosError};
use crate::theta::{ThetaEvaluator, ThetaValue};

/// Default relative threshold used to decide that a theta factor vanishes.
pub const DEFAULT_REGULARITY_TOL: f64 = 1e-10;

/// Ordered spectral parameters `x_1..x_L` (or any list of complex rapidities).
#[derive(Debug, Clone, PartialEq)]
pub struct VariableSet(Vec<Complex64>);

impl VariableSet {
    pub fn new(values: Vec<Complex64>) -> Self {
        Self(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    /// 1-based access.
    pub fn get(&self, i: usize) -> Result<Complex64> {
        self.check(i)?;
        Ok(self.0[i - 1])
    }

    /// `X_i^a`: a copy with position `i` (1-based) set to `value`.
    pub fn replace(&self, i: usize, value: Complex64) -> Result<Self> {
        self.check(i)?;
        let mut out = self.clone();
        out.0[i - 1] = value;
        Ok(out)
    }

    /// Reorders the entries: `result[k] = self[order[k]]` (0-based `order`).
    pub fn permuted(&self, order: &[usize]) -> Self {
        Self(order.iter().map(|&k| self.0[k]).collect())
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.0.len() {
            return Err(SosError::IndexOutOfRange {
                index: i,
                len: self.0.len(),
            });
        }
        Ok(())
    }
}

impl From<Vec<Complex64>> for VariableSet {
    fn from(values: Vec<Complex64>) -> Self {
        Self(values)
    }
}

/// Lattice size, nome, anisotropy, dynamical parameter, rapidities and
/// inhomogeneities.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParameters {
    theta: ThetaEvaluator,
    gamma: Complex64,
    tau: Complex64,
    x: VariableSet,
    mu: VariableSet,
    regularity_tol: f64,
}

impl ModelParameters {
    pub fn new(
        theta: ThetaEvaluator,
        gamma: Complex64,
        tau: Complex64,
        x: impl Into<VariableSet>,
        mu: impl Into<VariableSet>,
    ) -> Result<Self> {
        let x = x.into();
        let mu = mu.into();
        if x.is_empty() {
            return Err(SosError::InvalidParameters("lattice size L must be at least 1".into()));
        }
        if x.len() != mu.len() {
            return Err(SosError::InvalidParameters(format!(
                "x has {} entries but mu has {}",
                x.len(),
                mu.len()
            )));
        }
        let finite = |z: &Complex64| z.re.is_finite() && z.im.is_finite();
        if !(finite(&gamma) && finite(&tau) && x.as_slice().iter().all(finite) && mu.as_slice().iter().all(finite)) {
            return Err(SosError::InvalidParameters("parameters must be finite".into()));
        }
        Ok(Self {
            theta,
            gamma,
            tau,
            x,
            mu,
            regularity_tol: DEFAULT_REGULARITY_TOL,
        })
    }

    pub fn with_regularity_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(SosError::InvalidSetting(format!(
                "regularity tol must be > 0, got {tol}"
            )));
        }
        self.regularity_tol = tol;
        Ok(self)
    }

    pub fn with_tau(&self, tau: Complex64) -> Self {
        Self { tau, ..self.clone() }
    }

    pub fn with_x(&self, x: VariableSet) -> Result<Self> {
        if x.len() != self.l() {
            return Err(SosError::InvalidParameters(format!(
                "replacement variable set has {} entries, expected {}",
                x.len(),
                self.l()
            )));
        }
        Ok(Self { x, ..self.clone() })
    }

    pub fn with_mu(&self, mu: VariableSet) -> Result<Self> {
        if mu.len() != self.l() {
            return Err(SosError::InvalidParameters(format!(
                "replacement inhomogeneities have {} entries, expected {}",
                mu.len(),
                self.l()
            )));
        }
        Ok(Self { mu, ..self.clone() })
    }

    /// The same model on an `l x l` lattice, keeping the first `l` rapidities.
    pub fn restricted(&self, l: usize) -> Result<Self> {
        if l == 0 || l > self.l() {
            return Err(SosError::IndexOutOfRange {
                index: l,
                len: self.l(),
            });
        }
        Ok(Self {
            x: VariableSet(self.x.0[..l].to_vec()),
            mu: VariableSet(self.mu.0[..l].to_vec()),
            ..self.clone()
        })
    }

    pub fn l(&self) -> usize {
        self.x.len()
    }

    pub fn theta(&self) -> &ThetaEvaluator {
        &self.theta
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn x(&self) -> &VariableSet {
        &self.x
    }

    pub fn mu(&self) -> &VariableSet {
        &self.mu
    }

    pub fn regularity_tol(&self) -> f64 {
        self.regularity_tol
    }

    pub(crate) fn eval(&self, z: Complex64) -> Result<ThetaValue> {
        self.theta.evaluate(z)
    }

    /// `1/[z]`, failing when `[z]` vanishes at the regularity tolerance.
    pub(crate) fn recip(&self, value: ThetaValue, factor: impl FnOnce() -> String) -> Result<Complex64> {
        if value.is_zero(self.regularity_tol) {
            return Err(SosError::DivisionByZeroTheta { factor: factor() });
        }
        Ok(value.value.inv())
    }
}

/// One family of theta denominators that must not vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// `[x_i - x_j]`, i != j
    SpectralDifference { i: usize, j: usize },
    /// `[tau + k*gamma]`
    ShiftedTau { k: usize },
    /// `[k*gamma]`
    GammaMultiple { k: usize },
    /// `[x_k - mu_1 + gamma]`
    SpectralMuOneGamma { k: usize },
    /// `[x_k - mu_1 + 2*gamma]`
    SpectralMuOneTwoGamma { k: usize },
    /// `[mu_1 - mu_k - gamma]`
    InhomogeneityGap { k: usize },
    /// `[x_l - mu_k + gamma]`
    SpectralMuGamma { l: usize, k: usize },
    /// `[tau]`
    Tau,
}

impl Condition {
    /// Family name, independent of indices.
    pub fn name(&self) -> &'static str {
        match self {
            Condition::SpectralDifference { .. } => "[x_i - x_j] = 0",
            Condition::ShiftedTau { k: 1 } => "[tau + gamma] = 0",
            Condition::ShiftedTau { .. } => "[tau + k*gamma] = 0",
            Condition::GammaMultiple { .. } => "[k*gamma] = 0",
            Condition::SpectralMuOneGamma { .. } => "[x_k - mu_1 + gamma] = 0",
            Condition::SpectralMuOneTwoGamma { .. } => "[x_k - mu_1 + 2*gamma] = 0",
            Condition::InhomogeneityGap { .. } => "[mu_1 - mu_k - gamma] = 0",
            Condition::SpectralMuGamma { .. } => "[x_l - mu_k + gamma] = 0",
            Condition::Tau => "[tau] = 0",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Condition::SpectralDifference { i, j } => write!(f, "[x_{i} - x_{j}] = 0"),
            Condition::ShiftedTau { k } => write!(f, "[tau + {k}*gamma] = 0"),
            Condition::GammaMultiple { k } => write!(f, "[{k}*gamma] = 0"),
            Condition::SpectralMuOneGamma { k } => write!(f, "[x_{k} - mu_1 + gamma] = 0"),
            Condition::SpectralMuOneTwoGamma { k } => write!(f, "[x_{k} - mu_1 + 2*gamma] = 0"),
            Condition::InhomogeneityGap { k } => write!(f, "[mu_1 - mu_{k} - gamma] = 0"),
            Condition::SpectralMuGamma { l, k } => write!(f, "[x_{l} - mu_{k} + gamma] = 0"),
            Condition::Tau => write!(f, "[tau] = 0"),
        }
    }
}

/// Lists every theta denominator of the enumeration weights, the coefficient
/// families and the determinant blocks that vanishes at relative tolerance
/// `tol`. An empty list means the parameters are regular.
pub fn regularity(params: &ModelParameters, tol: f64) -> Result<Vec<Condition>> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(SosError::InvalidSetting(format!(
            "regularity tol must be > 0, got {tol}"
        )));
    }
    let l = params.l();
    let x = params.x.as_slice();
    let mu = params.mu.as_slice();
    let (g, tau) = (params.gamma, params.tau);
    let mut out = Vec::new();
    let mut check = |z: Complex64, cond: Condition| -> Result<()> {
        if params.theta.theta_is_zero(z, tol)? {
            out.push(cond);
        }
        Ok(())
    };

    for i in 0..l {
        for j in (i + 1)..l {
            check(x[i] - x[j], Condition::SpectralDifference { i: i + 1, j: j + 1 })?;
        }
    }
    for k in 1..=l + 2 {
        check(tau + g * k as f64, Condition::ShiftedTau { k })?;
    }
    for k in 1..=l + 1 {
        check(g * k as f64, Condition::GammaMultiple { k })?;
    }
    for (k, &xk) in x.iter().enumerate() {
        check(xk - mu[0] + g, Condition::SpectralMuOneGamma { k: k + 1 })?;
        check(xk - mu[0] + g * 2.0, Condition::SpectralMuOneTwoGamma { k: k + 1 })?;
    }
    for (k, &mk) in mu.iter().enumerate() {
        check(mu[0] - mk - g, Condition::InhomogeneityGap { k: k + 1 })?;
    }
    for (li, &xl) in x.iter().enumerate() {
        for (k, &mk) in mu.iter().enumerate() {
            check(xl - mk + g, Condition::SpectralMuGamma { l: li + 1, k: k + 1 })?;
        }
    }
    check(tau, Condition::Tau)?;
    Ok(out)
}
