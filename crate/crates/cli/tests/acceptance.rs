//! Acceptance checks. One line per check; exits nonzero if any fails.

use std::f64::consts::PI;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sos_cli::commands::{bench_report, table_rows};
use sos_cli::golden::method_tolerance;
use sos_core::sampling::{auxiliary_pair, bench_parameters, random_parameters};
use sos_core::{
    count_states, enumerate_z, partition_function_det, residual_a, residual_ad, residual_d, Complex64, EllipticNome,
    ModelParameters, ThetaEvaluator, SET_1, SET_2,
};

type Check = Result<String, String>;
type Named = (&'static str, fn() -> Check);

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn golden_tables() -> Check {
    let mut worst = (0.0f64, 0.0f64);
    let mut bad = Vec::new();
    for set in [1, 2] {
        for row in table_rows(set, 5).map_err(|e| e.to_string())? {
            worst.0 = worst.0.max(row.det_error.max(row.enum_error));
            worst.1 = worst.1.max(row.discrepancy / method_tolerance(row.l));
            if !row.pass {
                bad.push(format!("set {set} L={}", row.l));
            }
        }
    }
    let detail = format!(
        "worst table error {:.1e}, worst det/enum gap {:.2} of tolerance",
        worst.0, worst.1
    );
    if bad.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; failing rows {bad:?}"))
    }
}

// Worst deviation of both routes from `closed` over 100 seeded L=1 draws.
fn single_face(closed: impl Fn(&ModelParameters) -> Complex64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let p = random_parameters(&mut rng, 1).map_err(|e| e.to_string())?;
        let c = closed(&p);
        let e = rel(enumerate_z(&p).map_err(|e| e.to_string())?, c);
        let d = rel(partition_function_det(&p).map_err(|e| e.to_string())?, c);
        worst = worst.max(e).max(d);
    }
    let detail = format!("worst relative deviation {worst:.1e} over 100 draws");
    if worst <= 1e-12 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn single_face_stated_form() -> Check {
    single_face(|p| {
        let th = |z| p.theta().theta(z).unwrap();
        let (g, t, x1, m1) = (p.gamma(), p.tau(), p.x().as_slice()[0], p.mu().as_slice()[0]);
        th(g) * th(t + g - m1 + x1) / th(t + g)
    })
}

fn single_face_table_consistent_form() -> Check {
    single_face(|p| {
        let th = |z| p.theta().theta(z).unwrap();
        let (g, t, x1, m1) = (p.gamma(), p.tau(), p.x().as_slice()[0], p.mu().as_slice()[0]);
        th(g) * th(t + g + m1 - x1) / th(t + g)
    })
}

fn functional_equations() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = [0.0f64; 3];
    for set in [SET_1, SET_2] {
        for l in 1..=4 {
            let p = set.params(l).map_err(|e| e.to_string())?;
            for _ in 0..10 {
                let (x0, xb) = auxiliary_pair(&mut rng, p.x().as_slice());
                let r = [residual_a(&p, x0), residual_d(&p, xb), residual_ad(&p, x0, xb)];
                for (w, r) in worst.iter_mut().zip(r) {
                    *w = w.max(r.map_err(|e| e.to_string())?);
                }
            }
        }
    }
    let detail = format!(
        "max residual A {:.1e}, D {:.1e}, AD {:.1e}",
        worst[0], worst[1], worst[2]
    );
    if worst.iter().all(|&w| w <= 1e-8) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// Worst relative error of each identity over 200 seeded points per nome:
// oddness, i*pi shift, ln p shift as stated, ln p shift with the 1/p factor.
fn theta_identities() -> Result<[f64; 4], String> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = [0.0f64; 4];
    for p in [0.3116, 0.4421] {
        let th = ThetaEvaluator::new(EllipticNome::new(p).map_err(|e| e.to_string())?);
        let f = |z| th.theta(z).map_err(|e| e.to_string());
        for _ in 0..200 {
            let x = Complex64::new(rng.gen_range(-5.0..=5.0), rng.gen_range(-3.0..=3.0));
            let v = f(x)?;
            let stated = -(-2.0 * x).exp() * v;
            let shifted = f(x + p.ln())?;
            let errs = [
                (f(-x)? + v).norm() / v.norm(),
                (f(x + Complex64::new(0.0, PI))? + v).norm() / v.norm(),
                rel(shifted, stated),
                rel(shifted, stated / p),
            ];
            for (w, e) in worst.iter_mut().zip(errs) {
                *w = w.max(e);
            }
        }
    }
    Ok(worst)
}

fn theta_oracle() -> Result<f64, String> {
    let csv = include_str!("../../core/tests/oracles/theta_points.csv");
    let mut worst = 0.0f64;
    let mut n = 0;
    for line in csv.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        let th = ThetaEvaluator::new(EllipticNome::new(v[0]).map_err(|e| e.to_string())?);
        let got = th.theta(Complex64::new(v[1], v[2])).map_err(|e| e.to_string())?;
        worst = worst.max(rel(got, Complex64::new(v[3], v[4])));
        n += 1;
    }
    if n != 20 {
        return Err(format!("expected 20 oracle points, found {n}"));
    }
    Ok(worst)
}

fn theta_stated_identities() -> Check {
    let [odd, shift, quasi, _] = theta_identities()?;
    let oracle = theta_oracle()?;
    let detail = format!("oddness {odd:.1e}, i*pi {shift:.1e}, ln p {quasi:.1e}, oracle {oracle:.1e}");
    if odd <= 1e-12 && shift <= 1e-12 && quasi <= 1e-12 && oracle <= 1e-13 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn theta_corrected_identities() -> Check {
    let [odd, shift, _, quasi] = theta_identities()?;
    let oracle = theta_oracle()?;
    let detail = format!("oddness {odd:.1e}, i*pi {shift:.1e}, ln p with 1/p {quasi:.1e}, oracle {oracle:.1e}");
    if odd <= 1e-12 && shift <= 1e-12 && quasi <= 1e-12 && oracle <= 1e-13 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn state_counts() -> Check {
    let got = (1..=5)
        .map(count_states)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let detail = format!("{got:?}");
    if got == [1, 2, 7, 42, 429] {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn random_agreement() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut summary = Vec::new();
    let mut ok = true;
    for l in 2..=4 {
        let mut misses = Vec::new();
        for k in 0..25 {
            let p = random_parameters(&mut rng, l).map_err(|e| e.to_string())?;
            let d = rel(
                enumerate_z(&p).map_err(|e| e.to_string())?,
                partition_function_det(&p).map_err(|e| e.to_string())?,
            );
            if d > 1e-9 {
                misses.push(format!("draw {k}: {d:.1e}"));
            }
        }
        ok &= misses.len() <= 1;
        summary.push(format!(
            "L={l} {}/25{}",
            25 - misses.len(),
            if misses.is_empty() {
                String::new()
            } else {
                format!(" ({})", misses.join(", "))
            }
        ));
    }
    let detail = summary.join(", ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn large_lattices() -> Check {
    let mut parts = Vec::new();
    let mut ok = true;
    for l in [20, 30] {
        let p = bench_parameters(l, l as u64).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let z = partition_function_det(&p);
        let elapsed = start.elapsed();
        match z {
            Ok(z) if z.re.is_finite() && z.im.is_finite() => {
                ok &= elapsed < Duration::from_secs(2);
                parts.push(format!("L={l} {elapsed:.2?}"));
            }
            other => {
                ok = false;
                parts.push(format!("L={l} {other:?}"));
            }
        }
    }
    let report = bench_report(6).map_err(|e| e.to_string())?;
    let crossover = report.crossover();
    ok &= crossover.is_some_and(|l| l <= 6);
    parts.push(match crossover {
        Some(l) => format!("enumeration slower from L={l}"),
        None => "no crossover up to L=6".to_string(),
    });
    let detail = parts.join(", ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() {
    let checks: [Named; 9] = [
        ("golden tables L=2..5, both sets", golden_tables),
        ("L=1 closed form as stated", single_face_stated_form),
        (
            "L=1 closed form, table-consistent sign",
            single_face_table_consistent_form,
        ),
        ("functional equation residuals L=1..4", functional_equations),
        ("theta identities as stated", theta_stated_identities),
        ("theta identities, ln p shift with 1/p", theta_corrected_identities),
        ("state counts L=1..5", state_counts),
        ("random draws, enumeration vs determinant", random_agreement),
        ("large lattices and timing crossover", large_lattices),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} of {} checks passed", checks.len() - failed, checks.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
