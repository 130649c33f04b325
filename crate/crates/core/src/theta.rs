//! The odd Jacobi theta function `[x]` for a fixed real nome.
//!
//! `[x] = 1/2 * sum_{n in Z} (-1)^(n-1/2) p^((n+1/2)^2) e^(-(2n+1)x)` with the
//! branch `(-1)^(n-1/2) = e^(i*pi*(n-1/2))`. Pairing `n` with `-n-1` gives
//!
//! ```text
//! [x] = i * sum_{n>=0} (-1)^n p^((n+1/2)^2) sinh((2n+1)x)
//! ```
//!
//! which is what [`ThetaEvaluator`] sums. The function is odd, satisfies
//! `[x + i*pi] = -[x]` and `[x + ln p] = -p^(-1) e^(-2x) [x]`, and is purely imaginary
//! on the real axis.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SosError};

/// Real elliptic nome `0 < p < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct EllipticNome(f64);

impl EllipticNome {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_finite() && p > 0.0 && p < 1.0 {
            Ok(Self(p))
        } else {
            Err(SosError::NomeOutOfRange(p))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn ln(self) -> f64 {
        self.0.ln()
    }
}

impl TryFrom<f64> for EllipticNome {
    type Error = SosError;

    fn try_from(p: f64) -> Result<Self> {
        Self::new(p)
    }
}

impl From<EllipticNome> for f64 {
    fn from(p: EllipticNome) -> f64 {
        p.0
    }
}

/// A theta value together with the largest series envelope term that went
/// into it. The envelope `p^((n+1/2)^2) cosh((2n+1) Re x)` bounds the
/// magnitude of each paired term, so `value / scale` measures cancellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaValue {
    pub value: Complex64,
    pub scale: f64,
}

impl ThetaValue {
    /// True when `|value| < tol * scale`.
    pub fn is_zero(&self, tol: f64) -> bool {
        self.value.norm() < tol * self.scale
    }
}

pub const DEFAULT_REL_TOL: f64 = 1e-16;
pub const DEFAULT_MAX_TERMS: usize = 64;

/// Evaluates `[x]` for one nome with adaptive truncation.
///
/// Pairs are summed outward from `n = 0`; summation stops once two
/// consecutive pair envelopes fall below `rel_tol` times the largest
/// envelope seen so far.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaEvaluator {
    nome: EllipticNome,
    ln_p: f64,
    rel_tol: f64,
    max_terms: usize,
}

impl ThetaEvaluator {
    pub fn new(nome: EllipticNome) -> Self {
        Self {
            nome,
            ln_p: nome.ln(),
            rel_tol: DEFAULT_REL_TOL,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Result<Self> {
        if !(rel_tol.is_finite() && rel_tol > 0.0) {
            return Err(SosError::InvalidSetting(format!("rel_tol must be > 0, got {rel_tol}")));
        }
        self.rel_tol = rel_tol;
        Ok(self)
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Result<Self> {
        if max_terms == 0 {
            return Err(SosError::InvalidSetting("max_terms must be >= 1".into()));
        }
        self.max_terms = max_terms;
        Ok(self)
    }

    pub fn nome(&self) -> EllipticNome {
        self.nome
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    /// Largest `|Re x|` accepted: `(max_terms + 1/2) |ln p| / 4`.
    pub fn argument_limit(&self) -> f64 {
        (self.max_terms as f64 + 0.5) * self.ln_p.abs() / 4.0
    }

    /// `[x]` together with its envelope scale.
    pub fn evaluate(&self, x: Complex64) -> Result<ThetaValue> {
        let limit = self.argument_limit();
        if x.re.is_nan() || x.re.abs() > limit || !x.im.is_finite() {
            return Err(SosError::ArgumentOutOfRange { re: x.re.abs(), limit });
        }

        let abs_re = x.re.abs();
        let mut sum = Complex64::new(0.0, 0.0);
        let mut max_envelope = 0.0_f64;
        let mut quiet_pairs = 0;

        for n in 0..self.max_terms {
            let half = n as f64 + 0.5;
            let log_nome = half * half * self.ln_p;
            let k = (2 * n + 1) as f64;

            let up = (Complex64::new(log_nome, 0.0) + x * k).exp();
            let down = (Complex64::new(log_nome, 0.0) - x * k).exp();
            let pair = (up - down) * 0.5;
            let envelope = 0.5 * ((log_nome + k * abs_re).exp() + (log_nome - k * abs_re).exp());

            if !(pair.re.is_finite() && pair.im.is_finite() && envelope.is_finite()) {
                return Err(SosError::Overflow(format!("{x}")));
            }

            if n % 2 == 0 {
                sum += pair;
            } else {
                sum -= pair;
            }
            max_envelope = max_envelope.max(envelope);

            if envelope < self.rel_tol * max_envelope {
                quiet_pairs += 1;
                if quiet_pairs == 2 {
                    return Ok(ThetaValue {
                        value: Complex64::new(-sum.im, sum.re),
                        scale: max_envelope,
                    });
                }
            } else {
                quiet_pairs = 0;
            }
        }

        Err(SosError::NonConvergence {
            x: format!("{x}"),
            max_terms: self.max_terms,
        })
    }

    pub fn theta(&self, x: Complex64) -> Result<Complex64> {
        self.evaluate(x).map(|t| t.value)
    }

    /// Whether `[x]` vanishes relative to the size of the series terms.
    pub fn theta_is_zero(&self, x: Complex64, tol: f64) -> Result<bool> {
        Ok(self.evaluate(x)?.is_zero(tol))
    }
}
