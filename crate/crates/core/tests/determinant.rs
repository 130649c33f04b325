#![allow(clippy::excessive_precision)]

use nalgebra::DMatrix;
use rand::{seq::SliceRandom, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sos_core::determinant::{build_omega, log_det, omega, omega_dim, omega_reduced, BlockIndexMap};
use sos_core::{partition_function_det, prefactor, sampling, Complex64, ParameterSet, SET_1, SET_2};

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn f_block_corner_oracle() {
    let params = SET_1.params(3).unwrap();
    let f11 = omega(&params).unwrap().matrix()[(0, 0)];
    assert!(rel(f11, Complex64::new(0.0, -4.4765893752035195305)) <= 1e-13, "{f11}");
}

#[test]
fn prefactor_oracle() {
    let params = SET_1.params(2).unwrap();
    let got = prefactor(&params).unwrap().to_complex();
    assert!(
        rel(got, Complex64::new(-0.000081348471352067473015, 0.0)) <= 1e-13,
        "{got}"
    );
}

#[test]
fn published_representation_column() {
    let rows: [(&ParameterSet, usize, Complex64); 8] = [
        (&SET_1, 2, Complex64::new(0.00057111882715, 0.0)),
        (&SET_1, 3, Complex64::new(0.0, 6.07562588434047)),
        (&SET_1, 4, Complex64::new(6195.98835851194, 0.0)),
        (&SET_1, 5, Complex64::new(0.0, 139.817171384640)),
        (&SET_2, 2, Complex64::new(0.230323036097803, 0.0)),
        (&SET_2, 3, Complex64::new(0.0, 0.202679526300981)),
        (&SET_2, 4, Complex64::new(2.659105034415262, 0.0)),
        (&SET_2, 5, Complex64::new(0.0, 1478.397210823134)),
    ];
    for (set, l, expected) in rows {
        let z = partition_function_det(&set.params(l).unwrap()).unwrap();
        let tol = if l <= 3 { 1e-8 } else { 1e-6 };
        assert!(rel(z, expected) <= tol, "set {} L={l}: {z} vs {expected}", set.id);
    }
}

#[test]
fn structural_sparsity() {
    for l in 1..=7 {
        let params = sampling::bench_parameters(l, 5).unwrap();
        let m = omega(&params).unwrap();
        let h = l * (l - 1) / 2;
        let expected = 3 * l + 3 * l * (l - 1) + l * l + h * (2 * l).saturating_sub(3);
        assert_eq!(m.matrix().rows(), omega_dim(l));
        assert_eq!(m.matrix().count_nonzero(), expected, "L = {l}");
        assert_eq!(BlockIndexMap::new(l).pairs_len(), h);
    }
}

fn to_nalgebra(m: &sos_core::determinant::ComplexMatrix) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |r, c| m[(r, c)])
}

// Power-of-two row and column scalings that bring every row and column
// maximum of `m` near 1.
fn equilibrate(m: &DMatrix<Complex64>) -> (Vec<f64>, Vec<f64>) {
    let (n, k) = m.shape();
    let (mut r, mut c) = (vec![1.0; n], vec![1.0; k]);
    let pow2 = |v: f64| 2f64.powi(-(v.log2().round() as i32));
    for _ in 0..20 {
        for i in 0..n {
            let v = (0..k).map(|j| (m[(i, j)] * r[i] * c[j]).norm()).fold(0.0, f64::max);
            r[i] *= pow2(v.sqrt());
        }
        for j in 0..k {
            let v = (0..n).map(|i| (m[(i, j)] * r[i] * c[j]).norm()).fold(0.0, f64::max);
            c[j] *= pow2(v.sqrt());
        }
    }
    (r, c)
}

fn condition(m: &DMatrix<Complex64>) -> f64 {
    let sv = m.clone().singular_values();
    sv.max() / sv.min()
}

// Returns false when the scaled matrices are too ill-conditioned for the
// explicit product to carry 1e-10 relative accuracy.
fn check_ratio(params: &sos_core::ModelParameters, label: &str) -> bool {
    let a = to_nalgebra(omega(params).unwrap().matrix());
    let b = to_nalgebra(omega_reduced(params).unwrap().matrix());
    // exact power-of-two scalings: X' = (A C)(R B C)^-1 = A B^-1 R^-1
    let (r, c) = equilibrate(&b);
    let scale = |m: &DMatrix<Complex64>, rows: &[f64]| {
        DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * rows[i] * c[j])
    };
    let ones = vec![1.0; a.nrows()];
    let (ac, rbc) = (scale(&a, &ones), scale(&b, &r));
    // X'^T solves (R B C)^T X'^T = (A C)^T
    let x = rbc.transpose().full_piv_lu().solve(&ac.transpose()).unwrap();
    let explicit = x.determinant() * r.iter().product::<f64>();
    let via_log = (log_det(omega(params).unwrap().matrix()).unwrap()
        / log_det(omega_reduced(params).unwrap().matrix()).unwrap())
    .to_complex();
    // first-order error of det X' is bounded by eps * (cond(R B C) + cond(X'))
    let cond = condition(&rbc) + condition(&x);
    let err = rel(via_log, explicit);
    eprintln!("{label}: cond {cond:.1e}, rel {err:.1e}");
    if f64::EPSILON * cond > 1e-10 {
        return false;
    }
    assert!(
        err <= 1e-10,
        "{label}: {via_log} vs {explicit} (rel {err:e}, cond {cond:e})"
    );
    true
}

#[test]
fn ratio_matches_explicit_product() {
    let mut checked = 0;
    for set in [SET_1, SET_2] {
        for l in 1..=4 {
            checked += check_ratio(&set.params(l).unwrap(), &format!("set {} L={l}", set.id)) as usize;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for l in 1..=4 {
        for k in 0..10 {
            let params = sampling::random_parameters(&mut rng, l).unwrap();
            checked += check_ratio(&params, &format!("draw {k} L={l}")) as usize;
        }
    }
    assert!(checked >= 20, "only {checked} of 48 cases were well enough conditioned");
}

#[test]
fn reduced_matrix_is_the_tau_substitution() {
    let params = SET_2.params(3).unwrap();
    let direct = build_omega(&params, -params.gamma()).unwrap();
    assert_eq!(&direct, &omega_reduced(&params).unwrap());
    assert_eq!(direct.tau(), -params.gamma());
}

#[test]
fn symmetric_in_rapidities() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for set in [SET_1, SET_2] {
        for l in 2..=5 {
            let params = set.params(l).unwrap();
            let z = partition_function_det(&params).unwrap();
            let mut order: Vec<usize> = (0..l).collect();
            for _ in 0..4 {
                order.shuffle(&mut rng);
                let p = params.with_x(params.x().permuted(&order)).unwrap();
                assert!(rel(partition_function_det(&p).unwrap(), z) <= 1e-8, "x order {order:?}");
                let mut mu_order = order.clone();
                mu_order.retain(|&k| k != 0);
                mu_order.insert(0, 0);
                let p = params.with_mu(params.mu().permuted(&mu_order)).unwrap();
                assert!(
                    rel(partition_function_det(&p).unwrap(), z) <= 1e-8,
                    "mu order {mu_order:?}"
                );
            }
        }
    }
}

#[test]
fn large_lattices_stay_finite() {
    for l in [20, 30] {
        let params = sampling::bench_parameters(l, 1).unwrap();
        let z = sos_core::log_partition_function(&params).unwrap();
        assert!(z.log_magnitude.is_finite(), "L = {l}");
        assert!((z.phase.norm() - 1.0).abs() < 1e-12);
    }
}
