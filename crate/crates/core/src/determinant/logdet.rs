//! Dense complex matrices and overflow-safe determinants.

use std::ops::{Div, Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Result, SosError};

/// Pivots smaller than this are treated as exact zeros.
pub const SINGULAR_PIVOT: f64 = 1e-300;

/// A complex number stored as `exp(log_magnitude) * phase`, `|phase| = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDet {
    pub log_magnitude: f64,
    pub phase: Complex64,
}

impl LogDet {
    pub fn one() -> Self {
        Self {
            log_magnitude: 0.0,
            phase: Complex64::new(1.0, 0.0),
        }
    }

    /// Zero maps to `log_magnitude = -inf` with unit phase.
    pub fn from_complex(z: Complex64) -> Self {
        let r = z.norm();
        if r == 0.0 {
            return Self {
                log_magnitude: f64::NEG_INFINITY,
                phase: Complex64::new(1.0, 0.0),
            };
        }
        Self {
            log_magnitude: r.ln(),
            phase: z / r,
        }
    }

    /// `z^d` with the principal branch of `log z`.
    pub fn from_power(z: Complex64, d: usize) -> Self {
        Self::from_complex(z).pow(d)
    }

    /// `self^d` with the principal branch of the phase.
    pub fn pow(self, d: usize) -> Self {
        let d = d as f64;
        Self {
            log_magnitude: self.log_magnitude * d,
            phase: Complex64::from_polar(1.0, self.phase.arg() * d),
        }
    }

    pub fn to_complex(self) -> Complex64 {
        self.phase * self.log_magnitude.exp()
    }

    pub fn negated(self) -> Self {
        Self {
            phase: -self.phase,
            ..self
        }
    }

    pub fn recip(self) -> Self {
        Self {
            log_magnitude: -self.log_magnitude,
            phase: self.phase.conj(),
        }
    }
}

impl Mul for LogDet {
    type Output = LogDet;

    fn mul(self, rhs: LogDet) -> LogDet {
        let phase = self.phase * rhs.phase;
        // renormalize so rounding does not drift |phase| away from 1
        LogDet {
            log_magnitude: self.log_magnitude + rhs.log_magnitude,
            phase: phase / phase.norm(),
        }
    }
}

impl Div for LogDet {
    type Output = LogDet;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: LogDet) -> LogDet {
        self * rhs.recip()
    }
}

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Number of entries that are not exactly zero.
    pub fn count_nonzero(&self) -> usize {
        self.data.iter().filter(|z| z.re != 0.0 || z.im != 0.0).count()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

/// Determinant via LU with partial pivoting, accumulated in log form.
pub fn log_det(m: &ComplexMatrix) -> Result<LogDet> {
    if !m.is_square() {
        return Err(SosError::InvalidParameters(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    let mut a = m.data.clone();
    let mut log_magnitude = 0.0;
    let mut phase = Complex64::new(1.0, 0.0);

    for k in 0..n {
        let (pivot_row, pivot_abs) =
            (k..n)
                .map(|r| (r, a[r * n + k].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pivot_abs.is_nan() || pivot_abs < SINGULAR_PIVOT {
            return Err(SosError::SingularMatrix {
                step: k,
                pivot: pivot_abs,
            });
        }
        if pivot_row != k {
            for c in 0..n {
                a.swap(k * n + c, pivot_row * n + c);
            }
            phase = -phase;
        }
        let pivot = a[k * n + k];
        log_magnitude += pivot_abs.ln();
        phase *= pivot / pivot_abs;

        let inv = pivot.inv();
        let (upper, lower) = a.split_at_mut((k + 1) * n);
        let pivot_row = &upper[k * n..(k + 1) * n];
        for row in lower.chunks_exact_mut(n) {
            let factor = row[k] * inv;
            if factor.re == 0.0 && factor.im == 0.0 {
                continue;
            }
            for c in (k + 1)..n {
                row[c] -= factor * pivot_row[c];
            }
            row[k] = Complex64::new(0.0, 0.0);
        }
    }

    Ok(LogDet {
        log_magnitude,
        phase: phase / phase.norm(),
    })
}
