//! Partition function as a ratio of determinants.
//!
//! `Z = P * det Omega(tau) / det Omega(-gamma)` where `P` is the scalar
//! prefactor computed by [`prefactor`]. Everything is carried in log form so
//! large lattices do not overflow.

pub mod logdet;
pub mod omega;

use num_complex::Complex64;

pub use logdet::{log_det, ComplexMatrix, LogDet, SINGULAR_PIVOT};
pub use omega::{build_omega, omega_dim, Block, BlockIndexMap, OmegaMatrix};

use crate::error::{Result, SosError};
use crate::params::ModelParameters;

/// `Omega` at the model's own `tau`.
pub fn omega(params: &ModelParameters) -> Result<OmegaMatrix> {
    build_omega(params, params.tau())
}

/// The reduced matrix: `Omega` with `tau = -gamma`.
pub fn omega_reduced(params: &ModelParameters) -> Result<OmegaMatrix> {
    build_omega(params, -params.gamma())
}

fn theta_log(params: &ModelParameters, z: Complex64, name: impl FnOnce() -> String) -> Result<LogDet> {
    let v = params.eval(z)?;
    // screen for zeros the same way divisions do
    params.recip(v, name)?;
    Ok(LogDet::from_complex(v.value))
}

/// Scalar prefactor
///
/// ```text
/// (-1)^L ([(L+1)g] / [t+(L+2)g])^d_{L-1} ([t+(L+1)g] / [Lg])^d_L
///   * prod_{i,j} [x_i - mu_j] * prod_k [k g] / [t + k g]
///   * [S + (L+1)g] / [S + t + (L+2)g],   S = sum_l (x_l - mu_l)
/// ```
///
/// Non-integer phases of the two powers use the principal branch.
pub fn prefactor(params: &ModelParameters) -> Result<LogDet> {
    let l = params.l();
    let lf = l as f64;
    let (g, t) = (params.gamma(), params.tau());
    let x = params.x().as_slice();
    let mu = params.mu().as_slice();
    let th = |z: Complex64, name: &str| {
        let name = name.to_string();
        theta_log(params, z, move || name)
    };

    let first = th(g * (lf + 1.0), "[(L+1)*gamma]")? / th(t + g * (lf + 2.0), "[tau + (L+2)*gamma]")?;
    let second = th(t + g * (lf + 1.0), "[tau + (L+1)*gamma]")? / th(g * lf, "[L*gamma]")?;
    let mut acc = first.pow(omega_dim(l - 1)) * second.pow(omega_dim(l));
    if l % 2 == 1 {
        acc = acc.negated();
    }

    for (i, &xi) in x.iter().enumerate() {
        for (j, &mj) in mu.iter().enumerate() {
            acc = acc * theta_log(params, xi - mj, || format!("[x_{} - mu_{}]", i + 1, j + 1))?;
        }
    }
    for k in 1..=l {
        let kf = k as f64;
        acc = acc * theta_log(params, g * kf, || format!("[{k}*gamma]"))?
            / theta_log(params, t + g * kf, || format!("[tau + {k}*gamma]"))?;
    }
    let s: Complex64 = x.iter().zip(mu).map(|(a, b)| a - b).sum();
    acc = acc * th(s + g * (lf + 1.0), "[S + (L+1)*gamma]")? / th(s + t + g * (lf + 2.0), "[S + tau + (L+2)*gamma]")?;
    Ok(acc)
}

/// `log Z` in magnitude/phase form.
pub fn log_partition_function(params: &ModelParameters) -> Result<LogDet> {
    if params.l() == 0 {
        return Err(SosError::InvalidParameters("lattice size L must be at least 1".into()));
    }
    let pre = prefactor(params)?;
    let num = log_det(omega(params)?.matrix())?;
    let den = log_det(omega_reduced(params)?.matrix())?;
    Ok(pre * num / den)
}

/// Partition function from the determinant representation.
pub fn partition_function_det(params: &ModelParameters) -> Result<Complex64> {
    let z = log_partition_function(params)?;
    if z.log_magnitude > f64::MAX.ln() {
        return Err(SosError::Overflow(format!("|Z| = exp({})", z.log_magnitude)));
    }
    Ok(z.to_complex())
}
