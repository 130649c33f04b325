#![allow(clippy::excessive_precision)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sos_core::{Complex64, EllipticNome, ThetaEvaluator};
use std::f64::consts::PI;

// generated by oracles/generate.py (mpmath, 60 digits)
const ORACLE: &str = include_str!("oracles/theta_points.csv");

fn oracle_points() -> Vec<[f64; 5]> {
    ORACLE
        .lines()
        .skip(1)
        .map(|line| {
            let v: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
            [v[0], v[1], v[2], v[3], v[4]]
        })
        .collect()
}

fn evaluator(p: f64) -> ThetaEvaluator {
    ThetaEvaluator::new(EllipticNome::new(p).unwrap())
}

#[test]
fn matches_arbitrary_precision_oracle() {
    let points = oracle_points();
    assert_eq!(points.len(), 20);
    for [p, re, im, vre, vim] in points {
        let got = evaluator(p).theta(Complex64::new(re, im)).unwrap();
        let expected = Complex64::new(vre, vim);
        let rel = (got - expected).norm() / expected.norm();
        assert!(rel <= 1e-13, "p={p} x={re}+{im}i: {got} vs {expected} (rel {rel:e})");
    }
}

#[test]
fn value_at_gamma_of_first_set() {
    let v = evaluator(0.3116).theta(Complex64::new(0.6512, 0.0)).unwrap();
    assert!(v.re.abs() < 1e-16);
    assert!((v.im - 0.2797689571384892456).abs() <= 1e-15);
    assert!(!evaluator(0.3116)
        .theta_is_zero(Complex64::new(0.6512, 0.0), 1e-10)
        .unwrap());
}

#[test]
fn identity_sample() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for p in [0.3116, 0.4421] {
        let th = evaluator(p);
        for _ in 0..200 {
            let x = Complex64::new(rng.gen_range(-5.0..=5.0), rng.gen_range(-3.0..=3.0));
            let v = th.theta(x).unwrap();
            if v.norm() <= 1e-30 {
                continue;
            }
            let odd = (th.theta(-x).unwrap() + v).norm() / v.norm();
            assert!(odd <= 1e-13, "oddness at {x}: {odd:e}");
            let anti = (th.theta(x + Complex64::new(0.0, PI)).unwrap() + v).norm() / v.norm();
            assert!(anti <= 1e-13, "i*pi shift at {x}: {anti:e}");
            let expected = -(-2.0 * x).exp() * v / p;
            let quasi = (th.theta(x + p.ln()).unwrap() - expected).norm() / expected.norm();
            assert!(quasi <= 1e-12, "ln p shift at {x}: {quasi:e}");
        }
    }
}
