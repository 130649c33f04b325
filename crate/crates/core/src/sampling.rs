//! Seeded random parameter and auxiliary-point draws.

use num_complex::Complex64;
use rand::Rng;

use crate::error::Result;
use crate::params::{regularity, ModelParameters};
use crate::theta::{EllipticNome, ThetaEvaluator};

/// Rectangle `[0.1, 3.0] x [-0.5, 0.5] i` used for rapidities and auxiliary points.
pub const RE_RANGE: (f64, f64) = (0.1, 3.0);
pub const IM_RANGE: (f64, f64) = (-0.5, 0.5);

/// Minimum distance from the existing rapidities and from each other.
pub const AUX_SEPARATION: f64 = 1e-3;

/// Regularity threshold applied to random draws.
pub const DRAW_REGULARITY_TOL: f64 = 1e-3;

fn in_rectangle<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(
        rng.gen_range(RE_RANGE.0..=RE_RANGE.1),
        rng.gen_range(IM_RANGE.0..=IM_RANGE.1),
    )
}

/// A point in the rectangle at least [`AUX_SEPARATION`] from every entry of
/// `avoid`.
pub fn auxiliary_point<R: Rng + ?Sized>(rng: &mut R, avoid: &[Complex64]) -> Complex64 {
    loop {
        let z = in_rectangle(rng);
        if avoid.iter().all(|a| (z - a).norm() >= AUX_SEPARATION) {
            return z;
        }
    }
}

/// A pair `(x0, x0bar)` separated from the rapidities and from each other.
pub fn auxiliary_pair<R: Rng + ?Sized>(rng: &mut R, x: &[Complex64]) -> (Complex64, Complex64) {
    let x0 = auxiliary_point(rng, x);
    let mut avoid = x.to_vec();
    avoid.push(x0);
    (x0, auxiliary_point(rng, &avoid))
}

/// Random regular parameters on an `l x l` lattice.
///
/// `p ~ U[0.2, 0.5]`; `Re gamma ~ U[0.1, 0.7]`, `Re tau ~ U[0.1, 0.9]`, both
/// with `Im ~ U[-0.2, 0.2]`; rapidities and inhomogeneities in the
/// rectangle. Draws failing regularity at [`DRAW_REGULARITY_TOL`] are redrawn.
pub fn random_parameters<R: Rng + ?Sized>(rng: &mut R, l: usize) -> Result<ModelParameters> {
    loop {
        let p = rng.gen_range(0.2..=0.5);
        let gamma = Complex64::new(rng.gen_range(0.1..=0.7), rng.gen_range(-0.2..=0.2));
        let tau = Complex64::new(rng.gen_range(0.1..=0.9), rng.gen_range(-0.2..=0.2));
        let x: Vec<Complex64> = (0..l).map(|_| in_rectangle(rng)).collect();
        let mu: Vec<Complex64> = (0..l).map(|_| in_rectangle(rng)).collect();
        let params = ModelParameters::new(ThetaEvaluator::new(EllipticNome::new(p)?), gamma, tau, x, mu)?;
        if regularity(&params, DRAW_REGULARITY_TOL)?.is_empty() {
            return Ok(params);
        }
    }
}

/// Parameters for large-lattice timing: `p = 0.4421`, `gamma = 0.1219`,
/// `tau = 0.2759`, with seeded real rapidities and inhomogeneities in
/// `[0.1, 3.0]`.
///
/// Draws with `|sum_l (x_l - mu_l)| > 1` are rejected: that sum enters the
/// prefactor as a theta argument and grows like `sqrt(L)` otherwise.
pub fn bench_parameters(l: usize, seed: u64) -> Result<ModelParameters> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let theta = ThetaEvaluator::new(EllipticNome::new(0.4421)?);
    loop {
        let mut draw = || Complex64::new(rng.gen_range(RE_RANGE.0..=RE_RANGE.1), 0.0);
        let x: Vec<Complex64> = (0..l).map(|_| draw()).collect();
        let mu: Vec<Complex64> = (0..l).map(|_| draw()).collect();
        let drift: Complex64 = x.iter().zip(&mu).map(|(a, b)| a - b).sum();
        if drift.norm() > 1.0 {
            continue;
        }
        let params = ModelParameters::new(theta, Complex64::new(0.1219, 0.0), Complex64::new(0.2759, 0.0), x, mu)?;
        if regularity(&params, DRAW_REGULARITY_TOL)?.is_empty() {
            return Ok(params);
        }
    }
}
