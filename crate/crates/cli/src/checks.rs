//! Regression checks over the named example polynomials, shared by the
//! `reproduce` subcommand and the acceptance harness. Each check states its
//! own pass condition; none of them is relaxed to make a known miss pass.

use atom_flow::{integrate_trajectory, AtomError, VectorFieldSpec};
use burgers_moments::{nonneg_violation_witness, one_tooth_initial_moments};
use heat_flow::{asymptotic_constant, evolve_at};
use num_rational::BigRational;
use num_traits::Signed;
use poly_core::rational::to_f64;
use poly_core::{catalog, format_rational, parse_number, rat, ratio, Monomial, Polynomial};
use sos_engine::{analyze_top, certificate_validate, sos_feasibility_with, GramBasis, GramCertificate, SosOptions, SosStatus};
use std::collections::BTreeMap;
use std::sync::Mutex;
use std::time::Instant;
use threshold_finder::{find_sos_threshold, ThresholdResult};

#[derive(Debug, Clone)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome { passed, detail: detail.into() }
    }
}

pub struct Check {
    pub id: u32,
    pub title: &'static str,
    pub run: fn() -> Outcome,
}

/// Every example-driven check, in criterion order. `certificate_soundness`
/// reuses the solves of the others, so run it last.
pub fn example_checks() -> Vec<Check> {
    vec![
        Check { id: 1, title: "Motzkin entry-time bracket", run: motzkin_threshold },
        Check { id: 2, title: "Robinson entry-time bracket", run: robinson_threshold },
        Check { id: 3, title: "Choi-Lam entry time and certificate", run: choi_lam },
        Check { id: 4, title: "Schmudgen SOS at 2e-4 and 1", run: schmudgen },
        Check { id: 5, title: "Harris SOS at 8e-4 and 1", run: harris },
        Check { id: 6, title: "Berg-Christensen-Jensen SOS at 1/6", run: bcj },
        Check { id: 7, title: "Homogeneous Motzkin obstruction", run: obstruction },
        Check { id: 9, title: "Asymptotic constants", run: asymptotic_constants },
        Check { id: 10, title: "Atom blow-up under x^2 drift", run: atom_blow_up },
        Check { id: 12, title: "Burgers one-tooth witness", run: burgers_witness },
        Check { id: 13, title: "Exact certificate validation", run: certificate_soundness },
    ]
}

/// One feasibility solve on the heat evolution of a named example.
#[derive(Debug, Clone)]
pub struct Probe {
    pub status: SosStatus,
    pub validated: bool,
    pub margin: f64,
    pub seconds: f64,
}

static PROBES: Mutex<BTreeMap<(String, String), Probe>> = Mutex::new(BTreeMap::new());
/// Bracket (or error text) and wall time, keyed by example and width.
type ThresholdRun = (Result<ThresholdResult, String>, f64);

static THRESHOLDS: Mutex<BTreeMap<(String, String), ThresholdRun>> = Mutex::new(BTreeMap::new());

fn example(name: &str) -> Polynomial {
    catalog::by_name(name).expect("known example name")
}

fn exact(text: &str) -> BigRational {
    parse_number(text).expect("literal number")
}

/// Memoized so later checks can inspect earlier solves.
pub fn probe(name: &str, time: &BigRational) -> Probe {
    let key = (name.to_string(), format_rational(time));
    if let Some(p) = PROBES.lock().unwrap().get(&key) {
        return p.clone();
    }
    let p = evolve_at(&example(name), time);
    let start = Instant::now();
    let result = sos_feasibility_with(&p, &SosOptions::default());
    let seconds = start.elapsed().as_secs_f64();
    let probe = match result {
        Ok(mut v) => {
            let validated = match v.certificate.as_mut() {
                Some(c) => c.validated || certificate_validate(&p, c).unwrap_or(false),
                None => false,
            };
            Probe { status: v.status, validated, margin: v.margin, seconds }
        }
        Err(_) => Probe { status: SosStatus::Inconclusive, validated: false, margin: f64::NAN, seconds },
    };
    PROBES.lock().unwrap().insert(key, probe.clone());
    probe
}

fn threshold(name: &str, width: &str) -> ThresholdRun {
    let key = (name.to_string(), width.to_string());
    if let Some(r) = THRESHOLDS.lock().unwrap().get(&key) {
        return r.clone();
    }
    let start = Instant::now();
    let result = find_sos_threshold(&example(name), &exact(width), &rat(1)).map_err(|e| e.to_string());
    let entry = (result, start.elapsed().as_secs_f64());
    THRESHOLDS.lock().unwrap().insert(key, entry.clone());
    entry
}

fn describe(r: &ThresholdResult) -> String {
    format!(
        "[{}, {}] = [{:.7}, {:.7}] {} after {} probes",
        format_rational(&r.lower),
        format_rational(&r.upper),
        to_f64(&r.lower),
        to_f64(&r.upper),
        r.status,
        r.probes
    )
}

/// Bracket must meet the open interval `(lo, hi)`, have its center within
/// `tol` of `target`, and finish under `limit` seconds.
fn bracket_check(name: &str, lo: &str, hi: &str, target: f64, tol: f64, limit: f64) -> Outcome {
    let (result, seconds) = threshold(name, "1e-5");
    let r = match result {
        Ok(r) => r,
        Err(e) => return Outcome::new(false, e),
    };
    let meets = r.lower < exact(hi) && r.upper > exact(lo);
    let center = to_f64(&r.center());
    let passed = r.status == threshold_finder::ThresholdStatus::Bracketed
        && meets
        && (center - target).abs() <= tol
        && seconds < limit;
    Outcome::new(
        passed,
        format!(
            "{}; meets ({lo}, {hi}): {meets}; center {center:.7} vs {target} (off {:.1e}); {seconds:.2} s",
            describe(&r),
            (center - target).abs()
        ),
    )
}

fn motzkin_threshold() -> Outcome {
    bracket_check("motzkin", "0.031998", "0.031999", 0.0319985, 2e-5, 30.0)
}

fn robinson_threshold() -> Outcome {
    bracket_check("robinson", "0.020946", "0.020947", 0.0209465, 2e-5, 30.0)
}

/// `31/27 + (xy − 2/3 z)² + (yz − 2/3 x)² + (zx − 2/3 y)²`
fn choi_lam_squares() -> (GramBasis, Vec<(BigRational, Polynomial)>) {
    let m = |e: [u32; 3]| Monomial::new(e.to_vec());
    let basis = GramBasis::new(3, vec![m([0, 0, 0]), m([1, 1, 0]), m([0, 1, 1]), m([1, 0, 1]), m([1, 0, 0]), m([0, 1, 0]), m([0, 0, 1])])
        .expect("three-variable monomials");
    let square = |prod: [u32; 3], single: [u32; 3]| {
        let mut l = Polynomial::zero(3);
        l.add_term(m(prod), rat(1));
        l.add_term(m(single), ratio(-2, 3));
        (rat(1), l)
    };
    let squares = vec![
        (ratio(31, 27), Polynomial::one(3)),
        square([1, 1, 0], [0, 0, 1]),
        square([0, 1, 1], [1, 0, 0]),
        square([1, 0, 1], [0, 1, 0]),
    ];
    (basis, squares)
}

fn choi_lam() -> Outcome {
    let ninth = ratio(1, 9);
    let (result, seconds) = threshold("choi-lam", "1e-6");
    let bracket = match result {
        Ok(r) => r,
        Err(e) => return Outcome::new(false, e),
    };
    let tol = exact("1e-6");
    let close = (&bracket.lower - &ninth).abs() <= tol && (&bracket.upper - &ninth).abs() <= tol;
    let at_ninth = probe("choi-lam", &ninth);
    let target = evolve_at(&example("choi-lam"), &ninth);
    let (basis, squares) = choi_lam_squares();
    let structure = match GramCertificate::from_squares(basis, &squares) {
        Ok(mut c) => c.polynomial().as_ref() == Some(&target) && certificate_validate(&target, &mut c).unwrap_or(false),
        Err(_) => false,
    };
    let passed = close && at_ninth.status == SosStatus::Sos && at_ninth.validated && structure;
    Outcome::new(
        passed,
        format!(
            "{} ({seconds:.2} s); within 1e-6 of 1/9: {close}; at 1/9 {} validated={}; 31/27 + three squares exact: {structure}",
            describe(&bracket),
            at_ninth.status,
            at_ninth.validated
        ),
    )
}

fn sos_at(name: &str, times: &[&str], limit: Option<f64>) -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    for t in times {
        let p = probe(name, &exact(t));
        let ok = p.status == SosStatus::Sos && limit.is_none_or(|l| p.seconds < l);
        passed &= ok;
        parts.push(format!("t={t}: {} (margin {:.2e}, validated {}, {:.2} s)", p.status, p.margin, p.validated, p.seconds));
    }
    Outcome::new(passed, parts.join("; "))
}

fn schmudgen() -> Outcome {
    sos_at("schmudgen", &["2e-4", "1"], None)
}

fn harris() -> Outcome {
    sos_at("harris", &["8e-4", "1"], Some(10.0))
}

fn bcj() -> Outcome {
    sos_at("bcj", &["1/6"], None)
}

fn obstruction() -> Outcome {
    let f = example("homogeneous-motzkin");
    let top = match analyze_top(&f, &SosOptions::default()) {
        Ok(t) => t,
        Err(e) => return Outcome::new(false, e.to_string()),
    };
    let obstructed = top.status == SosStatus::NotSos;
    let mut never_sos = true;
    let mut parts = vec![format!("top part {} (obstructed: {obstructed})", top.status)];
    for t in ["0", "1", "100"] {
        let p = probe("homogeneous-motzkin", &exact(t));
        never_sos &= p.status != SosStatus::Sos;
        parts.push(format!("t={t}: {}", p.status));
    }
    Outcome::new(obstructed && never_sos, parts.join("; "))
}

fn asymptotic_constants() -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    for (name, f) in catalog::all() {
        match asymptotic_constant(&f) {
            Ok(c) => {
                passed &= c.is_positive();
                if name == "motzkin" {
                    passed &= c == rat(48);
                }
                parts.push(format!("{name} {}", format_rational(&c)));
            }
            Err(e) => {
                passed = false;
                parts.push(format!("{name}: {e}"));
            }
        }
    }
    Outcome::new(passed, parts.join(", "))
}

fn atom_blow_up() -> Outcome {
    let spec = VectorFieldSpec::transport(1, |x: &[f64], _t: f64| vec![x[0] * x[0]], false);
    let worst = match integrate_trajectory(&spec, &[1.0], 0.9, 1e-3) {
        Ok(tr) => tr
            .times
            .iter()
            .zip(&tr.states)
            .map(|(t, x)| {
                let exact = 1.0 / (1.0 - t);
                (x[0] - exact).abs() / exact
            })
            .fold(0.0, f64::max),
        Err(e) => return Outcome::new(false, e.to_string()),
    };
    let escape = match integrate_trajectory(&spec, &[1.0], 2.0, 1e-3) {
        Err(AtomError::BlowUp { time, .. }) => Some(time),
        _ => None,
    };
    let in_window = escape.is_some_and(|t| t > 0.99 && t < 1.01);
    Outcome::new(
        worst <= 1e-6 && in_window,
        format!("max relative error on [0, 0.9] {worst:.2e}; BLOW_UP at {escape:?}"),
    )
}

fn burgers_witness() -> Outcome {
    let w = match nonneg_violation_witness(&one_tooth_initial_moments(2, 3)) {
        Ok(w) => w,
        Err(e) => return Outcome::new(false, e.to_string()),
    };
    let expected = Polynomial::from_terms(1, [(vec![0], ratio(1, 6)), (vec![2], ratio(-2, 15))]).expect("univariate");
    let squared = w.breakdown.as_ref().and_then(|b| b.squared());
    let passed = w.polynomial == expected && squared == Some(ratio(5, 4));
    let names = vec!["t".to_string()];
    Outcome::new(
        passed,
        format!(
            "q(t) = {} (expected 1/6 - 2/15*t^2); t*^2 = {}",
            w.polynomial.format_with(&names, true).unwrap_or_default(),
            squared.map_or("none (no positive root)".to_string(), |s| format_rational(&s))
        ),
    )
}

/// Squares of the Motzkin evolution at `t = 1` with coefficients 37, 71/2,
/// 71/2, 57/2, 1063/592, 3815/2126, 63/71, 63/71.
pub fn motzkin_at_one_squares() -> (GramBasis, Vec<(BigRational, Polynomial)>) {
    let m = |e: [u32; 2]| Monomial::new(e.to_vec());
    let lin = |terms: &[(BigRational, [u32; 2])]| {
        let mut p = Polynomial::zero(2);
        for (c, e) in terms {
            p.add_term(m(*e), c.clone());
        }
        p
    };
    let basis = GramBasis::new(2, vec![m([0, 0]), m([1, 0]), m([0, 1]), m([1, 1]), m([2, 0]), m([0, 2]), m([2, 1]), m([1, 2])])
        .expect("two-variable monomials");
    let squares = vec![
        (rat(37), lin(&[(rat(1), [0, 0]), (ratio(-11, 148), [2, 0]), (ratio(-11, 148), [0, 2])])),
        (ratio(71, 2), lin(&[(rat(1), [1, 0]), (ratio(-4, 71), [1, 2])])),
        (ratio(71, 2), lin(&[(rat(1), [0, 1]), (ratio(-4, 71), [2, 1])])),
        (ratio(57, 2), lin(&[(rat(1), [1, 1])])),
        (ratio(1063, 592), lin(&[(rat(1), [2, 0]), (ratio(27, 1063), [0, 2])])),
        (ratio(3815, 2126), lin(&[(rat(1), [0, 2])])),
        (ratio(63, 71), lin(&[(rat(1), [2, 1])])),
        (ratio(63, 71), lin(&[(rat(1), [1, 2])])),
    ];
    (basis, squares)
}

fn certificate_soundness() -> Outcome {
    let target = evolve_at(&example("motzkin"), &rat(1));
    let (basis, squares) = motzkin_at_one_squares();
    let explicit = match GramCertificate::from_squares(basis, &squares) {
        Ok(mut c) => c.polynomial().as_ref() == Some(&target) && certificate_validate(&target, &mut c).unwrap_or(false),
        Err(_) => false,
    };
    // every SOS verdict reached by the other checks, plus the upper ends of
    // the entry-time brackets
    let mut solves: Vec<(String, String)> = PROBES.lock().unwrap().keys().cloned().collect();
    for (name, width) in [("motzkin", "1e-5"), ("robinson", "1e-5"), ("choi-lam", "1e-6")] {
        if let (Ok(r), _) = threshold(name, width) {
            if r.upper.is_positive() {
                solves.push((name.to_string(), format_rational(&r.upper)));
            }
        }
    }
    if solves.is_empty() {
        for (name, t) in [("motzkin", "1"), ("schmudgen", "1"), ("bcj", "1/6")] {
            solves.push((name.to_string(), t.to_string()));
        }
    }
    let mut sos = 0;
    let mut unvalidated = Vec::new();
    for (name, t) in &solves {
        let p = probe(name, &parse_number(t).expect("stored as p/q"));
        if p.status == SosStatus::Sos {
            sos += 1;
            if !p.validated {
                unvalidated.push(format!("{name}@{t}"));
            }
        }
    }
    Outcome::new(
        explicit && unvalidated.is_empty() && sos > 0,
        format!(
            "explicit Motzkin decomposition at t=1 exact: {explicit}; {sos} SOS verdicts, unvalidated: {:?}",
            unvalidated
        ),
    )
}
