use heat_flow::evolve_at;
use poly_core::{catalog, parse_rational, rat, BigRational, Polynomial};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sos_engine::{
    analyze_top, certificate_validate, gram_basis, highest_degree_obstruction, sos_feasibility, sos_feasibility_with,
    SosOptions, SosStatus, SosVerdict,
};

const TOL: f64 = 1e-9;

/// Example polynomials with a time at which their evolution is known to be SOS.
fn entry_times() -> Vec<(&'static str, &'static str)> {
    vec![
        ("motzkin", "31999/1000000"),
        ("robinson", "20974/1000000"),
        ("choi-lam", "1/9"),
        ("schmudgen", "2/10000"),
        ("bcj", "1/6"),
        ("harris", "8/1000"),
    ]
}

fn verdict_at(name: &str, t: &BigRational) -> (Polynomial, SosVerdict) {
    let p = evolve_at(&catalog::by_name(name).unwrap(), t);
    let v = sos_feasibility(&p, TOL).unwrap();
    (p, v)
}

fn assert_validated_sos(p: &Polynomial, v: &SosVerdict, what: &str) {
    assert_eq!(v.status, SosStatus::Sos, "{what}: {:?}", v.diagnostics);
    let mut cert = v.certificate.clone().expect("SOS verdict carries a certificate");
    assert!(certificate_validate(p, &mut cert).unwrap(), "{what}: certificate failed exact validation");
}

#[test]
fn sos_verdicts_validate_at_entry_times() {
    for (name, t) in entry_times() {
        let (p, v) = verdict_at(name, &parse_rational(t).unwrap());
        assert_validated_sos(&p, &v, &format!("{name} at {t}"));
    }
}

#[test]
fn absorption_after_entry() {
    for (name, t) in entry_times() {
        let t0 = parse_rational(t).unwrap();
        for delta in ["1/1000", "1/100", "1/10", "1"] {
            let t = &t0 + parse_rational(delta).unwrap();
            let (p, v) = verdict_at(name, &t);
            assert_validated_sos(&p, &v, &format!("{name} at {t}"));
        }
    }
}

#[test]
fn validated_certificates_imply_pointwise_nonnegativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, t) in entry_times() {
        let (p, v) = verdict_at(name, &parse_rational(t).unwrap());
        let mut cert = v.certificate.unwrap();
        assert!(certificate_validate(&p, &mut cert).unwrap());
        for _ in 0..100 {
            let pt: Vec<BigRational> = (0..p.nvars())
                .map(|_| BigRational::new(rng.gen_range(-400i64..=400).into(), rng.gen_range(1i64..=100).into()))
                .collect();
            assert!(p.evaluate(&pt).unwrap() >= rat(0), "{name} negative at {pt:?}");
        }
    }
}

#[test]
fn non_sos_examples_at_time_zero() {
    for name in ["motzkin", "robinson", "choi-lam", "schmudgen", "bcj", "harris"] {
        let v = sos_feasibility(&catalog::by_name(name).unwrap(), TOL).unwrap();
        assert_ne!(v.status, SosStatus::Sos, "{name}");
        assert!(v.certificate.is_none());
    }
}

#[test]
fn obstruction_holds_along_the_flow() {
    let f = catalog::homogeneous_motzkin();
    assert!(highest_degree_obstruction(&f, TOL).unwrap());
    for t in ["0", "1/10", "1", "10", "100"] {
        let (_, v) = verdict_at("homogeneous-motzkin", &parse_rational(t).unwrap());
        assert_ne!(v.status, SosStatus::Sos, "t = {t}");
    }
    assert!(!highest_degree_obstruction(&catalog::motzkin(), TOL).unwrap());
    let shifted = Polynomial::from_int_terms(1, &[(1, &[2]), (1, &[0])]);
    assert!(!highest_degree_obstruction(&shifted, TOL).unwrap());
}

#[test]
fn newton_filter_does_not_change_verdicts() {
    let filtered = SosOptions { newton_filter: true, ..SosOptions::with_tolerance(TOL) };
    let cases = [
        ("motzkin", "0"),
        ("motzkin", "1"),
        ("robinson", "1/10"),
        ("choi-lam", "1/9"),
        ("bcj", "0"),
        ("bcj", "1/6"),
        ("homogeneous-motzkin", "1"),
    ];
    for (name, t) in cases {
        let p = evolve_at(&catalog::by_name(name).unwrap(), &parse_rational(t).unwrap());
        let plain = sos_feasibility(&p, TOL).unwrap();
        let with = sos_feasibility_with(&p, &filtered).unwrap();
        assert_eq!(plain.status, with.status, "{name} at {t}");
    }
}

#[test]
fn newton_filter_drops_outside_monomials() {
    let p = Polynomial::from_int_terms(1, &[(1, &[2])]);
    assert_eq!(gram_basis(&p, false).unwrap().len(), 2);
    assert_eq!(gram_basis(&p, true).unwrap().len(), 1);
    assert!(gram_basis(&Polynomial::from_int_terms(1, &[(1, &[3])]), false).is_err());
}

#[test]
fn degenerate_top_part_has_rational_kernel() {
    // the degree-10 part vanishes on x = ±y, which must show up as kernel
    let top = analyze_top(&catalog::harris(), &SosOptions::default()).unwrap();
    assert_eq!(top.status, SosStatus::Sos);
    assert_eq!(top.kernel_dimension(), 2);
}

#[test]
fn odd_degree_is_rejected() {
    let p = Polynomial::from_int_terms(2, &[(1, &[3, 0]), (1, &[0, 0])]);
    assert!(sos_feasibility(&p, TOL).is_err());
}

fn small_poly() -> impl Strategy<Value = Polynomial> {
    // coefficients of 1, x, y, xy, x², y²
    prop::collection::vec(-3i64..=3, 6).prop_map(|c| {
        Polynomial::from_int_terms(
            2,
            &[(c[0], &[0, 0]), (c[1], &[1, 0]), (c[2], &[0, 1]), (c[3], &[1, 1]), (c[4], &[2, 0]), (c[5], &[0, 2])],
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn interior_sums_of_squares_are_recognized(ls in prop::collection::vec(small_poly(), 1..4)) {
        let mut p = Polynomial::from_int_terms(2, &[(1, &[0, 0]), (1, &[4, 0]), (1, &[0, 4]), (1, &[2, 2])]);
        for l in &ls {
            p = &p + &(l * l);
        }
        let v = sos_feasibility(&p, TOL).unwrap();
        prop_assert_eq!(v.status, SosStatus::Sos);
        let mut cert = v.certificate.unwrap();
        prop_assert!(certificate_validate(&p, &mut cert).unwrap());
    }

    #[test]
    fn plain_sums_of_squares_are_never_refuted(ls in prop::collection::vec(small_poly(), 1..4)) {
        let mut p = Polynomial::zero(2);
        for l in &ls {
            p = &p + &(l * l);
        }
        prop_assume!(!p.is_zero());
        let v = sos_feasibility(&p, TOL).unwrap();
        prop_assert!(v.status != SosStatus::NotSos && v.status != SosStatus::Obstructed, "{:?}", v.diagnostics);
        if v.status == SosStatus::Sos {
            let mut cert = v.certificate.unwrap();
            prop_assert!(certificate_validate(&p, &mut cert).unwrap());
        }
    }
}
