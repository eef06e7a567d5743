//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Three criteria are known to be out of reach with the reference data as
//! given (see `UNATTAINABLE`). They are still run at full strictness and
//! print FAIL; only a failure outside that list fails the process.

use atom_flow::{evolve_measure_path, moment_matrix_rank, moments_at, Atom, AtomicMeasure, VectorFieldSpec, DEFAULT_SVD_TOLERANCE};
use heat_flow::{evolve, evolve_at, gaussian_convolution_oracle};
use num_rational::BigRational;
use poly_core::{monomials_up_to, rat, ratio, Monomial, Polynomial};
use polyheat_cli::checks::{example_checks, Outcome};
use polyheat_cli::commands::reproduce::{format_row, run_checks, CheckRow};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

/// Criteria whose reference values could not be reproduced, with the reason.
const UNATTAINABLE: &[(u32, &str)] = &[
    (2, "NOT_SOS is certified numerically up to t = 0.020973 (margin -6e-5 at 0.020947), so the entry time is near 0.020974, not 0.0209465"),
    (5, "the evolution at 8e-4 is NOT_SOS with margin -4.5e-3 and stays NOT_SOS through 7e-3; it enters between 7e-3 and 8e-3"),
    (12, "the closed-form moments give q(t) = 1/6 + 13/30 t^2 exactly, which has no positive root"),
];

fn random_polynomial(rng: &mut ChaCha8Rng) -> Polynomial {
    let n = rng.gen_range(1..=3);
    let deg = rng.gen_range(0..=8);
    let monos = monomials_up_to(n, deg);
    let mut p = Polynomial::zero(n);
    for _ in 0..rng.gen_range(1..=8) {
        let m: &Monomial = &monos[rng.gen_range(0..monos.len())];
        p.add_term(m.clone(), ratio(rng.gen_range(-20..=20), rng.gen_range(1..=6)));
    }
    // keep the requested degree present
    let top: Vec<&Monomial> = monos.iter().filter(|m| m.degree() == deg).collect();
    p.add_term(top[rng.gen_range(0..top.len())].clone(), rat(rng.gen_range(1..=5)));
    p
}

/// Strictly positive, as the Gaussian oracle requires.
fn random_time(rng: &mut ChaCha8Rng) -> BigRational {
    ratio(rng.gen_range(1..=30), rng.gen_range(1..=7))
}

/// Heat-flow identities on 60 seeded random polynomials, all exact.
fn exact_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cases = 60;
    let mut failures = Vec::new();
    for case in 0..cases {
        let f = random_polynomial(&mut rng);
        let (s, u) = (random_time(&mut rng), random_time(&mut rng));
        let flow = evolve(&f);
        let top = f.degree().finite().map(|d| f.homogeneous_part(d));
        let at_s = evolve_at(&f, &s);
        let checks = [
            ("heat equation", flow.time_derivative() == flow.laplacian()),
            ("initial value", evolve_at(&f, &rat(0)) == f),
            ("semigroup", evolve_at(&at_s, &u) == evolve_at(&f, &(&s + &u))),
            ("gaussian oracle", gaussian_convolution_oracle(&f, &s).ok().as_ref() == Some(&at_s)),
            ("top part", top.as_ref().map(|t| at_s.homogeneous_part(t.degree().finite().unwrap_or(0)) == *t).unwrap_or(true)),
            ("degree", at_s.degree() == f.degree()),
        ];
        for (name, ok) in checks {
            if !ok {
                failures.push(format!("case {case} {name}: f = {f}"));
            }
        }
    }
    Outcome { passed: failures.is_empty(), detail: format!("{cases} random polynomials x 6 identities; failures: {failures:?}") }
}

fn bounded_field(rng: &mut ChaCha8Rng, n: usize) -> VectorFieldSpec {
    let coef: Vec<Vec<f64>> = (0..n).map(|_| (0..(1 + 2 * n)).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
    let rate: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
    VectorFieldSpec::new(
        n,
        move |x, t| {
            coef.iter()
                .map(|c| {
                    let mut v = c[0] * (1.0 + t);
                    for (i, xi) in x.iter().enumerate() {
                        v += c[1 + 2 * i] * xi + c[2 + 2 * i] * xi * xi;
                    }
                    v.tanh()
                })
                .collect()
        },
        move |x, t| (rate[0] + rate[1] * x[0] + rate[2] * t).tanh(),
        true,
    )
}

fn random_measure(rng: &mut ChaCha8Rng, n: usize, k: usize) -> AtomicMeasure {
    loop {
        let atoms: Vec<Atom> = (0..k)
            .map(|_| Atom { weight: rng.gen_range(0.5..2.0), location: (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect() })
            .collect();
        let far_apart = atoms.iter().enumerate().all(|(i, a)| {
            atoms[..i].iter().all(|b| a.location.iter().zip(&b.location).map(|(x, y)| (x - y).powi(2)).sum::<f64>() > 0.04)
        });
        if far_apart {
            return AtomicMeasure::new(atoms).expect("distinct atoms with positive weights");
        }
    }
}

/// Moment-matrix rank equals the atom count along 20 bounded flows.
fn rank_constancy() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut failures = Vec::new();
    for scenario in 0..20 {
        let n = 1 + scenario % 2;
        let k = 1 + (scenario / 2) % 4;
        let spec = bounded_field(&mut rng, n);
        let mu = random_measure(&mut rng, n, k);
        let degree = 2 * (1..).find(|&d| monomials_up_to(n, d).len() >= k).unwrap_or(1);
        let path = match evolve_measure_path(&spec, &mu, 1.0, 1e-3) {
            Ok(p) => p,
            Err(e) => {
                failures.push(format!("scenario {scenario}: {e}"));
                continue;
            }
        };
        for t in [0.0, 0.5, 1.0] {
            let idx = path.index_of(t);
            let rank = moment_matrix_rank(&moments_at(&path.at(idx), degree, path.times[idx]), DEFAULT_SVD_TOLERANCE);
            if rank != k {
                failures.push(format!("scenario {scenario} (n={n}, k={k}) t={t}: rank {rank}"));
            }
        }
    }
    Outcome { passed: failures.is_empty(), detail: format!("20 scenarios at t in {{0, 1/2, 1}}; failures: {failures:?}") }
}

fn timed(id: u32, title: &str, run: fn() -> Outcome) -> CheckRow {
    let start = Instant::now();
    let o = run();
    CheckRow { id, title: title.into(), passed: o.passed, detail: o.detail, seconds: start.elapsed().as_secs_f64() }
}

fn main() {
    // `cargo test -- --list` and filters are not meaningful for this runner
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut rows = run_checks(&[]).expect("check runner starts");
    rows.push(timed(8, "Exact heat-flow identities", exact_identities));
    rows.push(timed(11, "Moment rank constancy", rank_constancy));
    rows.sort_by_key(|r| r.id);
    assert_eq!(rows.len(), example_checks().len() + 2);

    let mut unexpected = Vec::new();
    for row in &rows {
        println!("{}", format_row(row));
        let known = UNATTAINABLE.iter().find(|(id, _)| *id == row.id);
        match (row.passed, known) {
            (false, Some((_, why))) => println!("     criterion {} recorded as unattainable: {why}", row.id),
            (false, None) => unexpected.push(row.id),
            (true, Some(_)) => println!("     criterion {} now passes; drop it from the unattainable list", row.id),
            (true, None) => {}
        }
    }
    let passed = rows.iter().filter(|r| r.passed).count();
    println!("{passed} of {} criteria passed; unexpected failures: {unexpected:?}", rows.len());
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
