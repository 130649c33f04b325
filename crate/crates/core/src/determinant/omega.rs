//! Assembly of the block matrix `Omega`.
//!
//! Rows and columns are split as `[L | L(L-1)/2 | L]`:
//!
//! ```text
//!         | F     I     G    |
//! Omega = | Ibar  K     J=0  |
//!         | Fbar  Jbar  Gbar |
//! ```
//!
//! The auxiliary spectral points are already substituted
//! (`x_0bar = mu_1 - gamma`, `x_0 = mu_1 - 2 gamma`), so every entry depends
//! only on the model parameters and the dynamical parameter.

use num_complex::Complex64;

use super::logdet::ComplexMatrix;
use crate::error::Result;
use crate::params::ModelParameters;
use crate::theta::ThetaValue;

/// Dimension `d_L = L(L+3)/2`.
pub fn omega_dim(l: usize) -> usize {
    l * (l + 3) / 2
}

/// The pair index `n_{r,s} = s + L(r-1) - r(r+1)/2` for `1 <= r < s <= L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockIndexMap {
    l: usize,
}

impl BlockIndexMap {
    pub fn new(l: usize) -> Self {
        Self { l }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Number of pairs, `L(L-1)/2`.
    pub fn pairs_len(&self) -> usize {
        self.l * self.l.saturating_sub(1) / 2
    }

    pub fn dim(&self) -> usize {
        omega_dim(self.l)
    }

    /// 1-based `n_{r,s}`; requires `1 <= r < s <= L`.
    pub fn pair_index(&self, r: usize, s: usize) -> usize {
        debug_assert!(1 <= r && r < s && s <= self.l);
        s + self.l * (r - 1) - r * (r + 1) / 2
    }

    /// All pairs `(r, s)`, 1-based, in increasing `n_{r,s}` order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let l = self.l;
        (1..=l).flat_map(move |r| ((r + 1)..=l).map(move |s| (r, s)))
    }
}

/// Which of the nine blocks an entry belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    F,
    I,
    G,
    IBar,
    K,
    J,
    FBar,
    JBar,
    GBar,
}

/// `Omega` evaluated at one value of the dynamical parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaMatrix {
    l: usize,
    tau: Complex64,
    matrix: ComplexMatrix,
}

impl OmegaMatrix {
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Row and column ranges (0-based) of a block.
    pub fn block_range(&self, block: Block) -> (std::ops::Range<usize>, std::ops::Range<usize>) {
        let l = self.l;
        let h = BlockIndexMap::new(l).pairs_len();
        let first = 0..l;
        let middle = l..l + h;
        let last = l + h..l + h + l;
        match block {
            Block::F => (first.clone(), first),
            Block::I => (first, middle),
            Block::G => (first, last),
            Block::IBar => (middle, first),
            Block::K => (middle.clone(), middle),
            Block::J => (middle, last),
            Block::FBar => (last, first),
            Block::JBar => (last, middle),
            Block::GBar => (last.clone(), last),
        }
    }

    /// Copy of one block as row vectors.
    pub fn block(&self, block: Block) -> Vec<Vec<Complex64>> {
        let (rows, cols) = self.block_range(block);
        rows.map(|r| cols.clone().map(|c| self.matrix[(r, c)]).collect())
            .collect()
    }
}

/// Theta factors used by the blocks, each evaluated once.
struct Tables<'a> {
    params: &'a ModelParameters,
    l: usize,
    /// `[x_a - mu_k]`
    xm0: Vec<Complex64>,
    /// `[x_a - mu_k + gamma]`
    xm1: Vec<ThetaValue>,
    /// `[x_a - x_k + gamma] / [x_a - x_k]`, `a != k`
    ratio: Vec<Complex64>,
    /// `[x_a - x_b]`
    xx: Vec<ThetaValue>,
    /// `[x_a - mu_1 + 2 gamma]`, `[x_a - mu_1 + 3 gamma]`
    xm1_2: Vec<ThetaValue>,
    xm1_3: Vec<Complex64>,
    /// `[mu_1 - mu_k - gamma]`, `[mu_1 - mu_k - 2 gamma]`
    mm1: Vec<ThetaValue>,
    mm2: Vec<Complex64>,
}

impl<'a> Tables<'a> {
    fn new(params: &'a ModelParameters) -> Result<Self> {
        let l = params.l();
        let x = params.x().as_slice();
        let mu = params.mu().as_slice();
        let g = params.gamma();
        let th = |z| params.eval(z);

        let mut xm0 = Vec::with_capacity(l * l);
        let mut xm1 = Vec::with_capacity(l * l);
        for &xa in x {
            for &mk in mu {
                xm0.push(th(xa - mk)?.value);
                xm1.push(th(xa - mk + g)?);
            }
        }
        let mut xx = Vec::with_capacity(l * l);
        let mut ratio = Vec::with_capacity(l * l);
        for a in 0..l {
            for k in 0..l {
                if a == k {
                    xx.push(ThetaValue {
                        value: Complex64::new(0.0, 0.0),
                        scale: 1.0,
                    });
                    ratio.push(Complex64::new(1.0, 0.0));
                    continue;
                }
                let den = th(x[a] - x[k])?;
                let inv = params.recip(den, || format!("[x_{} - x_{}]", a + 1, k + 1))?;
                xx.push(den);
                ratio.push(th(x[a] - x[k] + g)?.value * inv);
            }
        }
        let xm1_2 = x.iter().map(|&xa| th(xa - mu[0] + g * 2.0)).collect::<Result<_>>()?;
        let xm1_3 = x
            .iter()
            .map(|&xa| th(xa - mu[0] + g * 3.0).map(|t| t.value))
            .collect::<Result<_>>()?;
        let mm1 = mu.iter().map(|&mk| th(mu[0] - mk - g)).collect::<Result<_>>()?;
        let mm2 = mu
            .iter()
            .map(|&mk| th(mu[0] - mk - g * 2.0).map(|t| t.value))
            .collect::<Result<_>>()?;

        Ok(Self {
            params,
            l,
            xm0,
            xm1,
            ratio,
            xx,
            xm1_2,
            xm1_3,
            mm1,
            mm2,
        })
    }

    fn xm0(&self, a: usize, k: usize) -> Complex64 {
        self.xm0[a * self.l + k]
    }

    fn xm1(&self, a: usize, k: usize) -> Complex64 {
        self.xm1[a * self.l + k].value
    }

    fn inv_xm1(&self, a: usize, k: usize) -> Result<Complex64> {
        self.params.recip(self.xm1[a * self.l + k], || {
            format!("[x_{} - mu_{} + gamma]", a + 1, k + 1)
        })
    }

    fn inv_xm1_2(&self, a: usize) -> Result<Complex64> {
        self.params
            .recip(self.xm1_2[a], || format!("[x_{} - mu_1 + 2*gamma]", a + 1))
    }

    fn inv_mm1(&self, k: usize) -> Result<Complex64> {
        self.params
            .recip(self.mm1[k], || format!("[mu_1 - mu_{} - gamma]", k + 1))
    }

    /// `prod_k [x_a - mu_k]`
    fn prod_xm0(&self, a: usize) -> Complex64 {
        (0..self.l).map(|k| self.xm0(a, k)).product()
    }

    /// `prod_{k not in skip, k != a} [x_a - x_k + gamma] / [x_a - x_k]`
    fn prod_ratio(&self, a: usize, skip: &[usize]) -> Complex64 {
        (0..self.l)
            .filter(|k| *k != a && !skip.contains(k))
            .map(|k| self.ratio[a * self.l + k])
            .product()
    }

    /// `prod_{k not in skip} [x_k - mu_1] / [x_k - mu_1 + gamma]`
    fn prod_mu1_ratio(&self, skip: &[usize]) -> Result<Complex64> {
        let mut acc = Complex64::new(1.0, 0.0);
        for k in (0..self.l).filter(|k| !skip.contains(k)) {
            acc *= self.xm0(k, 0) * self.inv_xm1(k, 0)?;
        }
        Ok(acc)
    }

    /// `prod_k [mu_1 - mu_k - gamma]`
    fn prod_mm1(&self, from: usize) -> Complex64 {
        self.mm1[from..].iter().map(|t| t.value).product()
    }
}

/// Builds `Omega` with the dynamical parameter set to `tau`.
pub fn build_omega(params: &ModelParameters, tau: Complex64) -> Result<OmegaMatrix> {
    let l = params.l();
    let map = BlockIndexMap::new(l);
    let h = map.pairs_len();
    let dim = map.dim();
    let x = params.x().as_slice();
    let mu1 = params.mu().as_slice()[0];
    let g = params.gamma();
    let lf = l as f64;
    let th = |z| params.eval(z).map(|t| t.value);
    let t = Tables::new(params)?;

    let theta_g = th(g)?;
    let theta_2g = th(g * 2.0)?;
    let shifted = |k: f64| tau + g * k;
    let inv_t1 = params.recip(params.eval(shifted(lf + 1.0))?, || "[tau + (L+1)*gamma]".into())?;
    let f_bar_scale = th(shifted(lf))? * inv_t1;
    let g_scale = th(shifted(lf + 2.0))? * inv_t1;

    let mut m = ComplexMatrix::zeros(dim, dim);
    let pair_col = |r: usize, s: usize| l + map.pair_index(r + 1, s + 1) - 1;
    let last = l + h;

    // F, Fbar, G: diagonal
    let prod_mm1_from2 = t.prod_mm1(1);
    let prod_mm2: Complex64 = t.mm2.iter().product();
    for a in 0..l {
        let mu1_ratio = t.prod_mu1_ratio(&[a])?;
        m[(a, a)] = theta_2g * prod_mm1_from2 * mu1_ratio;

        let xa_shift: Complex64 = (0..l).map(|k| t.xm1(a, k)).product();
        m[(last + a, a)] = f_bar_scale * xa_shift * mu1_ratio;

        let mut g_prod = Complex64::new(1.0, 0.0);
        for k in (0..l).filter(|&k| k != a) {
            g_prod *= t.xm1(k, 0) * t.inv_xm1_2(k)?;
        }
        m[(a, last + a)] = g_scale * prod_mm2 * g_prod;
    }

    // Gbar: full
    for a in 0..l {
        for b in 0..l {
            let value = if a == b {
                -t.xm1_2[a].value * t.inv_xm1(a, 0)? * t.prod_xm0(a) * t.prod_ratio(a, &[])
            } else {
                theta_g
                    * th(x[a] - x[b] + shifted(lf + 1.0))?
                    * inv_t1
                    * params.recip(t.xx[a * l + b], || format!("[x_{} - x_{}]", a + 1, b + 1))?
                    * t.xm1_2[b].value
                    * t.inv_xm1(b, 0)?
                    * t.prod_xm0(b)
                    * t.prod_ratio(b, &[a])
            };
            m[(last + a, last + b)] = value;
        }
    }

    let prod_mm1_all = t.prod_mm1(0);
    for (r1, s1) in map.pairs() {
        let (r, s) = (r1 - 1, s1 - 1);
        let col = pair_col(r, s);

        // I and Jbar: rows r and s of the first/last block rows
        for (a, o) in [(r, s), (s, r)] {
            let base = mu1 - x[o];
            let i_entry = theta_g
                * th(base + shifted(lf))?
                * th(base - g * 3.0)?
                * inv_t1
                * params.recip(params.eval(base - g)?, || format!("[mu_1 - x_{} - gamma]", o + 1))?
                * params.recip(params.eval(base - g * 2.0)?, || {
                    format!("[mu_1 - x_{} - 2*gamma]", o + 1)
                })?
                * t.prod_xm0(o)
                * t.prod_ratio(o, &[r, s]);
            m[(a, col)] = i_entry;

            let mut tail = Complex64::new(1.0, 0.0);
            for k in 0..l {
                tail *= t.xm1(a, k) * t.xm0(o, k) * t.inv_mm1(k)?;
            }
            let j_entry =
                theta_g * th(base + shifted(lf - 1.0))? * inv_t1 * t.inv_xm1(o, 0)? * t.prod_ratio(o, &[r, s]) * tail;
            m[(last + a, col)] = j_entry;
        }

        // Ibar: row n_{r,s}, columns r and s (here (l, m) = (r, s))
        let row = col;
        let (lr, ms) = (r, s);
        let mu1_ratio = t.prod_mu1_ratio(&[lr, ms])?;
        m[(row, lr)] =
            theta_2g * th(x[ms] - mu1 + shifted(lf + 2.0))? * inv_t1 * t.inv_xm1(ms, 0)? * prod_mm1_all * mu1_ratio;
        let mut tail = Complex64::new(1.0, 0.0);
        for k in 0..l {
            tail *= t.mm1[k].value * t.xm1(ms, k) * t.inv_xm1(lr, k)?;
        }
        m[(row, ms)] = -theta_2g * th(x[lr] - mu1 + shifted(lf + 2.0))? * inv_t1 * t.inv_xm1(lr, 0)? * mu1_ratio * tail;
    }

    // K
    for (l1, m1) in map.pairs() {
        let (li, mi) = (l1 - 1, m1 - 1);
        let row = pair_col(li, mi);
        let mut shift_ratio = Complex64::new(1.0, 0.0);
        for k in 0..l {
            shift_ratio *= t.xm1(mi, k) * t.inv_xm1(li, k)?;
        }
        for (r1, s1) in map.pairs() {
            let (r, s) = (r1 - 1, s1 - 1);
            let col = pair_col(r, s);
            let off = |p: usize, q: usize, den_first: usize, den_second: usize| -> Result<Complex64> {
                // [gamma][x_p - x_q + tau + (L+1)gamma][x_q - mu_1 + 3gamma]
                //   / ([tau + (L+1)gamma][x_den_first - x_den_second][x_q - mu_1 + gamma])
                //   * prod_k [x_q - mu_k] * prod_{k != l, m, q} ratio(q, k)
                Ok(theta_g
                    * th(x[p] - x[q] + shifted(lf + 1.0))?
                    * t.xm1_3[q]
                    * inv_t1
                    * params.recip(t.xx[den_first * l + den_second], || {
                        format!("[x_{} - x_{}]", den_first + 1, den_second + 1)
                    })?
                    * t.inv_xm1(q, 0)?
                    * t.prod_xm0(q)
                    * t.prod_ratio(q, &[li, mi]))
            };
            let value = if li == r && mi == s {
                let first = t.xm1_3[li] * t.inv_xm1(li, 0)? * t.prod_xm0(li) * shift_ratio * t.prod_ratio(li, &[mi]);
                let second = t.xm1_3[mi] * t.inv_xm1(mi, 0)? * t.prod_xm0(mi) * t.prod_ratio(mi, &[li]);
                first - second
            } else if li == r && mi != s {
                off(mi, s, mi, s)?
            } else if li == s && mi != r {
                off(mi, r, mi, r)?
            } else if mi == r && li != s {
                off(li, s, s, li)? * shift_ratio
            } else if mi == s && li != r {
                off(li, r, r, li)? * shift_ratio
            } else {
                continue;
            };
            m[(row, col)] = value;
        }
    }

    Ok(OmegaMatrix { l, tau, matrix: m })
}
