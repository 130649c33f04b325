//! Coefficients of the functional equations of type A, D and their
//! combination, and residuals obtained by plugging in the determinant
//! solution.
//!
//! With `X_i^a` the rapidities with `x_i` replaced by `a`:
//!
//! ```text
//! A:  M0 Z_t(X)   + N0 Z_{t+g}(X)  + sum_i N_i Z_{t+g}(X_i^x0)     = 0
//! D:  Mb0 Z_{t+g}(X) + Nb0 Z_t(X)  + sum_i Nb_i Z_t(X_i^xb)        = 0
//! AD: M0 Z_t(X) + sum_i N_i Z_t(X_i^x0) + sum_i Nb_i Z_t(X_i^xb)   = 0
//! ```

use num_complex::Complex64;

use crate::determinant::partition_function_det;
use crate::error::{Result, SosError};
use crate::params::ModelParameters;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquationKind {
    A,
    D,
    AD,
}

impl std::fmt::Display for EquationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EquationKind::A => "A",
            EquationKind::D => "D",
            EquationKind::AD => "AD",
        })
    }
}

/// Coefficients of one equation.
///
/// For A and D, `n0` is the coefficient of the unsubstituted term and `n`
/// holds `N_1..N_L`; `nbar` is empty. For AD, `n0` is `None`, `n` holds the
/// coefficients of `Z(X_i^x0)` and `nbar` those of `Z(X_i^xb)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSet {
    pub kind: EquationKind,
    pub m0: Complex64,
    pub n0: Option<Complex64>,
    pub n: Vec<Complex64>,
    pub nbar: Vec<Complex64>,
}

struct Ctx<'a> {
    params: &'a ModelParameters,
    x: &'a [Complex64],
    mu: &'a [Complex64],
    g: Complex64,
    t: Complex64,
    lf: f64,
}

impl<'a> Ctx<'a> {
    fn new(params: &'a ModelParameters) -> Self {
        Self {
            params,
            x: params.x().as_slice(),
            mu: params.mu().as_slice(),
            g: params.gamma(),
            t: params.tau(),
            lf: params.l() as f64,
        }
    }

    fn th(&self, z: Complex64) -> Result<Complex64> {
        self.params.theta().theta(z)
    }

    fn inv(&self, z: Complex64, name: impl FnOnce() -> String) -> Result<Complex64> {
        self.params.recip(self.params.eval(z)?, name)
    }

    fn prod(&self, f: impl Fn(usize) -> Result<Complex64>, skip: Option<usize>) -> Result<Complex64> {
        let mut acc = Complex64::new(1.0, 0.0);
        for j in (0..self.x.len()).filter(|&j| Some(j) != skip) {
            acc *= f(j)?;
        }
        Ok(acc)
    }

    /// `prod_{j != i} [x_i - x_j + g] / [x_i - x_j]`
    fn row_ratio(&self, i: usize) -> Result<Complex64> {
        self.prod(
            |j| {
                Ok(self.th(self.x[i] - self.x[j] + self.g)?
                    * self.inv(self.x[i] - self.x[j], || format!("[x_{} - x_{}]", i + 1, j + 1))?)
            },
            Some(i),
        )
    }

    /// `1 / [a - x_j]`, reporting a degenerate auxiliary point.
    fn aux_inv(&self, a: Complex64, j: usize, label: &str) -> Result<Complex64> {
        let v = self.params.eval(a - self.x[j])?;
        if v.is_zero(self.params.regularity_tol()) {
            return Err(SosError::DegenerateSpectralPoint(format!(
                "{label} = {a} coincides with x_{}",
                j + 1
            )));
        }
        Ok(v.value.inv())
    }

    fn tau_inv(&self, k: f64) -> Result<Complex64> {
        self.inv(self.t + self.g * k, || format!("[tau + {k}*gamma]"))
    }
}

/// Type A coefficients at auxiliary point `x0`.
///
/// `N_i = [g][t+2g+x0-x_i] / ([t+(L+2)g][x_i-x0]) prod_j [x_i-mu_j+g]
///        prod_{j!=i} [x_j-x_i+g]/[x_j-x_i]`.
pub fn coeffs_a(params: &ModelParameters, x0: Complex64) -> Result<CoefficientSet> {
    let c = Ctx::new(params);
    let (g, t, lf) = (c.g, c.t, c.lf);
    let inv_top = c.tau_inv(lf + 2.0)?;
    let aux: Vec<Complex64> = (0..c.x.len()).map(|j| c.aux_inv(x0, j, "x0")).collect::<Result<_>>()?;

    let m0 = c.th(t + g)? * c.tau_inv(lf + 1.0)? * c.prod(|j| c.th(x0 - c.mu[j]), None)?;
    let n0 = -c.th(t + g * 2.0)?
        * inv_top
        * c.prod(|j| c.th(x0 - c.mu[j] + g), None)?
        * c.prod(|j| Ok(c.th(c.x[j] - x0 + g)? * -aux[j]), None)?;
    let theta_g = c.th(g)?;
    let n = (0..c.x.len())
        .map(|i| {
            let xi = c.x[i];
            Ok(theta_g
                * c.th(t + g * 2.0 + x0 - xi)?
                * inv_top
                * -aux[i]
                * c.prod(|j| c.th(xi - c.mu[j] + g), None)?
                * c.prod(
                    |j| Ok(c.th(c.x[j] - xi + g)? * c.inv(c.x[j] - xi, || format!("[x_{} - x_{}]", j + 1, i + 1))?),
                    Some(i),
                )?)
        })
        .collect::<Result<_>>()?;
    Ok(CoefficientSet {
        kind: EquationKind::A,
        m0,
        n0: Some(n0),
        n,
        nbar: Vec::new(),
    })
}

/// Type D coefficients at auxiliary point `xb`.
pub fn coeffs_d(params: &ModelParameters, xb: Complex64) -> Result<CoefficientSet> {
    let c = Ctx::new(params);
    let (g, t, lf) = (c.g, c.t, c.lf);
    let aux: Vec<Complex64> = (0..c.x.len())
        .map(|j| c.aux_inv(xb, j, "x0bar"))
        .collect::<Result<_>>()?;

    let m0 = c.prod(|j| c.th(xb - c.mu[j] + g), None)?;
    let n0 = -c.prod(|j| c.th(xb - c.mu[j]), None)? * c.prod(|j| Ok(c.th(xb - c.x[j] + g)? * aux[j]), None)?;
    let theta_g = c.th(g)?;
    let inv_t1 = c.tau_inv(lf + 1.0)?;
    let n = (0..c.x.len())
        .map(|i| {
            Ok(theta_g
                * c.th(t + g * (lf + 1.0) + xb - c.x[i])?
                * aux[i]
                * inv_t1
                * c.prod(|j| c.th(c.x[i] - c.mu[j]), None)?
                * c.row_ratio(i)?)
        })
        .collect::<Result<_>>()?;
    Ok(CoefficientSet {
        kind: EquationKind::D,
        m0,
        n0: Some(n0),
        n,
        nbar: Vec::new(),
    })
}

/// Coefficients of the combined equation with auxiliary points `x0`, `xb`.
pub fn coeffs_ad(params: &ModelParameters, x0: Complex64, xb: Complex64) -> Result<CoefficientSet> {
    let c = Ctx::new(params);
    let (g, t, lf) = (c.g, c.t, c.lf);
    if c.params.eval(x0 - xb)?.is_zero(params.regularity_tol()) {
        return Err(SosError::DegenerateSpectralPoint(format!(
            "x0 = {x0} coincides with x0bar = {xb}"
        )));
    }
    let aux0: Vec<Complex64> = (0..c.x.len()).map(|j| c.aux_inv(x0, j, "x0")).collect::<Result<_>>()?;
    let auxb: Vec<Complex64> = (0..c.x.len())
        .map(|j| c.aux_inv(xb, j, "x0bar"))
        .collect::<Result<_>>()?;

    let first = c.prod(
        |j| {
            Ok(c.th(x0 - c.x[j] + g)?
                * aux0[j]
                * c.th(x0 - c.mu[j])?
                * c.th(xb - c.mu[j] + g)?
                * c.inv(x0 - c.mu[j] + g, || format!("[x0 - mu_{} + gamma]", j + 1))?)
        },
        None,
    )?;
    let second = c.prod(|j| Ok(c.th(xb - c.x[j] + g)? * c.th(xb - c.mu[j])? * auxb[j]), None)?;
    let m0 = first - second;

    let theta_g = c.th(g)?;
    let inv_t1 = c.tau_inv(lf + 1.0)?;
    let mut n = Vec::with_capacity(c.x.len());
    let mut nbar = Vec::with_capacity(c.x.len());
    for i in 0..c.x.len() {
        let xi = c.x[i];
        let common = c.prod(|j| c.th(xi - c.mu[j]), None)? * c.row_ratio(i)?;
        let shift = c.prod(
            |j| Ok(c.th(xb - c.mu[j] + g)? * c.inv(x0 - c.mu[j] + g, || format!("[x0 - mu_{} + gamma]", j + 1))?),
            None,
        )?;
        n.push(-theta_g * c.th(x0 - xi + t + g * (lf + 1.0))? * inv_t1 * aux0[i] * common * shift);
        nbar.push(theta_g * c.th(xb - xi + t + g * (lf + 1.0))? * inv_t1 * auxb[i] * common);
    }
    Ok(CoefficientSet {
        kind: EquationKind::AD,
        m0,
        n0: None,
        n,
        nbar,
    })
}

/// `|sum| / max |term|`.
fn normalized(terms: &[Complex64]) -> f64 {
    let sum: Complex64 = terms.iter().sum();
    let scale = terms.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        0.0
    } else {
        sum.norm() / scale
    }
}

fn z_at(params: &ModelParameters, tau: Complex64) -> Result<Complex64> {
    partition_function_det(&params.with_tau(tau))
}

fn z_substituted(params: &ModelParameters, i: usize, value: Complex64, tau: Complex64) -> Result<Complex64> {
    let x = params.x().replace(i + 1, value)?;
    partition_function_det(&params.with_x(x)?.with_tau(tau))
}

/// Normalized residual of the type A equation.
pub fn residual_a(params: &ModelParameters, x0: Complex64) -> Result<f64> {
    let co = coeffs_a(params, x0)?;
    let (t, tg) = (params.tau(), params.tau() + params.gamma());
    let mut terms = vec![co.m0 * z_at(params, t)?, co.n0.unwrap_or_default() * z_at(params, tg)?];
    for (i, ni) in co.n.iter().enumerate() {
        terms.push(ni * z_substituted(params, i, x0, tg)?);
    }
    Ok(normalized(&terms))
}

/// Normalized residual of the type D equation.
pub fn residual_d(params: &ModelParameters, xb: Complex64) -> Result<f64> {
    let co = coeffs_d(params, xb)?;
    let (t, tg) = (params.tau(), params.tau() + params.gamma());
    let mut terms = vec![co.m0 * z_at(params, tg)?, co.n0.unwrap_or_default() * z_at(params, t)?];
    for (i, ni) in co.n.iter().enumerate() {
        terms.push(ni * z_substituted(params, i, xb, t)?);
    }
    Ok(normalized(&terms))
}

/// Normalized residual of the combined equation.
pub fn residual_ad(params: &ModelParameters, x0: Complex64, xb: Complex64) -> Result<f64> {
    let co = coeffs_ad(params, x0, xb)?;
    let t = params.tau();
    let mut terms = vec![co.m0 * z_at(params, t)?];
    for i in 0..params.l() {
        terms.push(co.n[i] * z_substituted(params, i, x0, t)?);
        terms.push(co.nbar[i] * z_substituted(params, i, xb, t)?);
    }
    Ok(normalized(&terms))
}
