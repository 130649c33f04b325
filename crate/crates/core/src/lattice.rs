//! Face weights, domain-wall heights and the exhaustive partition sum.
//!
//! Sites are `(i, j)` with `1 <= i, j <= L+1`; the height at a site is
//! `tau + n_{i,j} * gamma`. Face `(i, j)` has bottom-left corner `(i, j)`,
//! bottom-right `(i, j+1)`, top-left `(i+1, j)` and top-right `(i+1, j+1)`.
//!
//! Convention (fixed by agreement with the determinant formula and the
//! published tables): the face pattern is read relative to the bottom-left
//! corner, the weight's dynamical argument is the top-left height shifted by
//! `gamma`, and the spectral argument of face `(i, j)` is `x_i - mu_j`.

use num_complex::Complex64;

use crate::error::{Result, SosError};
use crate::params::ModelParameters;

/// Largest lattice the enumerator accepts.
pub const MAX_ENUMERATION_L: usize = 7;

/// Corner offsets `(top-left, top-right, bottom-right)` relative to the
/// bottom-left corner. Only the six configurations with unit steps on every
/// edge exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FacePattern {
    tl: i8,
    tr: i8,
    br: i8,
}

/// The three weight families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceKind {
    /// `(+-1, 0, -+1)`: weight `[u + gamma]`.
    Straight,
    /// `(+-1, +-2, +-1)`: weight `[h +- gamma][u] / [h]`.
    Ramp,
    /// `(+-1, 0, +-1)`: weight `[h +- u][gamma] / [h]`.
    Turn,
}

impl FacePattern {
    pub const ALL: [FacePattern; 6] = [
        FacePattern { tl: 1, tr: 0, br: -1 },
        FacePattern { tl: -1, tr: 0, br: 1 },
        FacePattern { tl: 1, tr: 2, br: 1 },
        FacePattern { tl: -1, tr: -2, br: -1 },
        FacePattern { tl: 1, tr: 0, br: 1 },
        FacePattern { tl: -1, tr: 0, br: -1 },
    ];

    pub fn new(tl: i32, tr: i32, br: i32) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|p| (p.tl as i32, p.tr as i32, p.br as i32) == (tl, tr, br))
    }

    pub fn offsets(self) -> (i32, i32, i32) {
        (self.tl as i32, self.tr as i32, self.br as i32)
    }

    pub fn kind(self) -> FaceKind {
        match (self.tr, self.br == self.tl) {
            (0, false) => FaceKind::Straight,
            (0, true) => FaceKind::Turn,
            _ => FaceKind::Ramp,
        }
    }

    /// `+1` or `-1`: the step from bottom-left to top-left.
    pub fn sign(self) -> f64 {
        self.tl as f64
    }

    pub fn index(self) -> usize {
        Self::ALL
            .iter()
            .position(|&p| p == self)
            .expect("pattern is admissible")
    }
}

/// Classifies the face with the given corner offsets, or `None` when the
/// corners do not form an admissible configuration.
pub fn classify_face(n_bl: i32, n_br: i32, n_tl: i32, n_tr: i32) -> Option<FacePattern> {
    FacePattern::new(n_tl - n_bl, n_tr - n_bl, n_br - n_bl)
}

/// Weight of one face given its dynamical argument `h` and spectral argument `u`.
pub fn face_weight(
    params: &ModelParameters,
    pattern: FacePattern,
    local_height: Complex64,
    u: Complex64,
) -> Result<Complex64> {
    let g = params.gamma();
    let th = |z| params.theta().theta(z);
    let s = pattern.sign();
    match pattern.kind() {
        FaceKind::Straight => th(u + g),
        FaceKind::Ramp => {
            let den = params.recip(params.eval(local_height)?, || format!("[{local_height}]"))?;
            Ok(th(local_height + g * s)? * th(u)? * den)
        }
        FaceKind::Turn => {
            let den = params.recip(params.eval(local_height)?, || format!("[{local_height}]"))?;
            Ok(th(local_height + u * s)? * th(g)? * den)
        }
    }
}

/// `u_ij = x_i - mu_j` for 1-based row `i` and column `j`.
pub fn spectral_argument(params: &ModelParameters, i: usize, j: usize) -> Result<Complex64> {
    Ok(params.x().get(i)? - params.mu().get(j)?)
}

/// Dynamical argument of a face whose top-left corner has offset `n_tl`.
pub fn dynamical_argument(params: &ModelParameters, n_tl: i32) -> Complex64 {
    params.tau() + params.gamma() * (n_tl + 1) as f64
}

/// Boundary offset of site `(i, j)` (1-based) under domain-wall conditions,
/// or `None` for interior sites.
pub fn boundary_offset(l: usize, i: usize, j: usize) -> Option<i32> {
    let (l, i, j) = (l as i32, i as i32, j as i32);
    if i == 1 {
        Some(l + 1 - j)
    } else if j == 1 {
        Some(l + 1 - i)
    } else if i == l + 1 {
        Some(j - 1)
    } else if j == l + 1 {
        Some(i - 1)
    } else {
        None
    }
}

/// Height offsets `n_{i,j}` on the `(L+1) x (L+1)` grid, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightConfiguration {
    l: usize,
    n: Vec<i32>,
}

impl HeightConfiguration {
    /// Builds and validates a configuration from rows `n[i-1][j-1]`.
    pub fn new(l: usize, rows: Vec<Vec<i32>>) -> std::result::Result<Self, String> {
        if rows.len() != l + 1 || rows.iter().any(|r| r.len() != l + 1) {
            return Err(format!("expected a {0}x{0} grid", l + 1));
        }
        let cfg = Self {
            l,
            n: rows.into_iter().flatten().collect(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// 1-based.
    pub fn get(&self, i: usize, j: usize) -> i32 {
        self.n[(i - 1) * (self.l + 1) + (j - 1)]
    }

    /// Checks unit steps between neighbours and the domain-wall boundary.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let size = self.l + 1;
        for i in 1..=size {
            for j in 1..=size {
                let v = self.get(i, j);
                if let Some(b) = boundary_offset(self.l, i, j) {
                    if v != b {
                        return Err(format!("boundary site ({i},{j}) has {v}, expected {b}"));
                    }
                }
                if j < size && (v - self.get(i, j + 1)).abs() != 1 {
                    return Err(format!("sites ({i},{j}) and ({i},{}) differ by != 1", j + 1));
                }
                if i < size && (v - self.get(i + 1, j)).abs() != 1 {
                    return Err(format!("sites ({i},{j}) and ({},{j}) differ by != 1", i + 1));
                }
            }
        }
        Ok(())
    }
}

/// A face reached during enumeration, with its corner offsets fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Face {
    /// 1-based row.
    pub i: usize,
    /// 1-based column.
    pub j: usize,
    pub pattern: FacePattern,
    pub n_bl: i32,
    pub n_tl: i32,
}

/// Depth-first walk over the interior sites in row-major order.
struct Walker<'a, W, F> {
    l: usize,
    size: usize,
    grid: Vec<i32>,
    interior: Vec<(usize, usize)>,
    // faces whose last interior corner is fixed at step k
    schedule: Vec<Vec<(usize, usize)>>,
    weight: &'a mut F,
    total: W,
}

impl<W, F> Walker<'_, W, F>
where
    W: Copy + std::ops::Mul<Output = W> + std::ops::AddAssign,
    F: FnMut(Face) -> Result<W>,
{
    fn face(&mut self, i: usize, j: usize) -> Result<Option<W>> {
        // 0-based grid coordinates
        let at = |r: usize, c: usize| self.grid[r * self.size + c];
        let (bl, br, tl, tr) = (at(i, j), at(i, j + 1), at(i + 1, j), at(i + 1, j + 1));
        match classify_face(bl, br, tl, tr) {
            Some(pattern) => {
                let face = Face {
                    i: i + 1,
                    j: j + 1,
                    pattern,
                    n_bl: bl,
                    n_tl: tl,
                };
                (self.weight)(face).map(Some)
            }
            None => Ok(None),
        }
    }

    fn descend(&mut self, step: usize, acc: W) -> Result<()> {
        if step == self.interior.len() {
            if cfg!(debug_assertions) {
                let rows = self.grid.chunks(self.size).map(|r| r.to_vec()).collect();
                if let Err(e) = HeightConfiguration::new(self.l, rows) {
                    panic!("enumerator visited an invalid configuration: {e}");
                }
            }
            self.total += acc;
            return Ok(());
        }
        let (i, j) = self.interior[step];
        let prev_row = self.grid[(i - 1) * self.size + j];
        let prev_col = self.grid[i * self.size + j - 1];
        for v in [prev_row - 1, prev_row + 1] {
            if (v - prev_col).abs() != 1 {
                continue;
            }
            if j + 1 == self.l && (v - self.grid[i * self.size + self.l]).abs() != 1 {
                continue;
            }
            if i + 1 == self.l && (v - self.grid[self.l * self.size + j]).abs() != 1 {
                continue;
            }
            self.grid[i * self.size + j] = v;
            let mut next = acc;
            let mut admissible = true;
            for k in 0..self.schedule[step].len() {
                let (fi, fj) = self.schedule[step][k];
                match self.face(fi, fj)? {
                    Some(w) => next = next * w,
                    None => {
                        admissible = false;
                        break;
                    }
                }
            }
            if admissible {
                self.descend(step + 1, next)?;
            }
        }
        Ok(())
    }
}

/// Sums `prod_faces weight(face)` over every admissible domain-wall height
/// configuration of an `l x l` lattice.
pub fn sum_over_configurations<W, F>(l: usize, one: W, zero: W, mut weight: F) -> Result<W>
where
    W: Copy + std::ops::Mul<Output = W> + std::ops::AddAssign,
    F: FnMut(Face) -> Result<W>,
{
    if l == 0 {
        return Err(SosError::InvalidParameters("lattice size L must be at least 1".into()));
    }
    if l > MAX_ENUMERATION_L {
        return Err(SosError::EnumerationTooLarge {
            l,
            max: MAX_ENUMERATION_L,
        });
    }
    let size = l + 1;
    let mut grid = vec![0; size * size];
    for i in 0..size {
        for j in 0..size {
            grid[i * size + j] = boundary_offset(l, i + 1, j + 1).unwrap_or(0);
        }
    }
    let interior: Vec<(usize, usize)> = (1..l).flat_map(|i| (1..l).map(move |j| (i, j))).collect();
    let step_of = |r: usize, c: usize| interior.iter().position(|&s| s == (r, c));

    let mut schedule = vec![Vec::new(); interior.len()];
    let mut fixed_faces = Vec::new();
    for i in 0..l {
        for j in 0..l {
            let last = [(i, j), (i, j + 1), (i + 1, j), (i + 1, j + 1)]
                .into_iter()
                .filter_map(|(r, c)| step_of(r, c))
                .max();
            match last {
                Some(k) => schedule[k].push((i, j)),
                None => fixed_faces.push((i, j)),
            }
        }
    }

    let mut walker = Walker {
        l,
        size,
        grid,
        interior,
        schedule,
        weight: &mut weight,
        total: zero,
    };
    let mut acc = one;
    for (i, j) in fixed_faces {
        match walker.face(i, j)? {
            Some(w) => acc = acc * w,
            None => return Ok(zero),
        }
    }
    walker.descend(0, acc)?;
    Ok(walker.total)
}

/// Number of admissible domain-wall height configurations.
pub fn count_states(l: usize) -> Result<u64> {
    sum_over_configurations(l, 1u64, 0u64, |_| Ok(1))
}

/// Partition function by exhaustive enumeration.
///
/// Face weights are memoized per `(face, pattern, n_bl)` within one call.
pub fn enumerate_z(params: &ModelParameters) -> Result<Complex64> {
    let l = params.l();
    if l > MAX_ENUMERATION_L {
        return Err(SosError::EnumerationTooLarge {
            l,
            max: MAX_ENUMERATION_L,
        });
    }
    let heights = l + 1;
    let mut memo: Vec<Option<Complex64>> = vec![None; l * l * FacePattern::ALL.len() * heights];
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    sum_over_configurations(l, one, zero, |face| {
        let slot = (((face.i - 1) * l + (face.j - 1)) * FacePattern::ALL.len() + face.pattern.index()) * heights
            + face.n_bl as usize;
        if let Some(w) = memo[slot] {
            return Ok(w);
        }
        let u = spectral_argument(params, face.i, face.j)?;
        let w = face_weight(params, face.pattern, dynamical_argument(params, face.n_tl), u)?;
        memo[slot] = Some(w);
        Ok(w)
    })
}
