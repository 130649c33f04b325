//! The two published parameter sets, `L = 5`.

use num_complex::Complex64;

use crate::error::{Result, SosError};
use crate::params::ModelParameters;
use crate::theta::{EllipticNome, ThetaEvaluator};

/// Raw values of one parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParameterSet {
    pub id: u8,
    pub x: [f64; 5],
    pub mu: [f64; 5],
    pub gamma: f64,
    pub tau: f64,
    pub p: f64,
}

pub const SET_1: ParameterSet = ParameterSet {
    id: 1,
    x: [0.4327, 1.0715, 1.7481, 2.2738, 2.1415],
    mu: [0.6745, 0.4129, 3.3385, 3.1245, 1.9715],
    gamma: 0.6512,
    tau: 0.1743,
    p: 0.3116,
};

pub const SET_2: ParameterSet = ParameterSet {
    id: 2,
    x: [0.8919, 0.7233, 0.1519, 0.4388, 2.6662],
    mu: [2.5449, 1.8734, 1.2745, 2.0178, 3.0089],
    gamma: 0.1219,
    tau: 0.2759,
    p: 0.4421,
};

impl ParameterSet {
    pub fn by_id(id: u8) -> Result<Self> {
        match id {
            1 => Ok(SET_1),
            2 => Ok(SET_2),
            _ => Err(SosError::InvalidParameters(format!("unknown parameter set {id}"))),
        }
    }

    /// The set on an `l x l` lattice: the first `l` rapidities and inhomogeneities.
    pub fn params(&self, l: usize) -> Result<ModelParameters> {
        if l == 0 || l > 5 {
            return Err(SosError::IndexOutOfRange { index: l, len: 5 });
        }
        let c = |v: f64| Complex64::new(v, 0.0);
        ModelParameters::new(
            ThetaEvaluator::new(EllipticNome::new(self.p)?),
            c(self.gamma),
            c(self.tau),
            self.x[..l].iter().map(|&v| c(v)).collect::<Vec<_>>(),
            self.mu[..l].iter().map(|&v| c(v)).collect::<Vec<_>>(),
        )
    }
}
