use heat_flow::evolve_at;
use poly_core::{catalog, parse_number, ratio, BigRational, Polynomial};
use sos_engine::{sos_feasibility, SosStatus};
use threshold_finder::{find_sos_threshold, refine_bracket, ThresholdOptions, ThresholdStatus};

fn status_at(f: &Polynomial, t: &BigRational) -> SosStatus {
    sos_feasibility(&evolve_at(f, t), 1e-9).unwrap().status
}

#[test]
fn motzkin_bracket_is_valid_and_narrow() {
    let f = catalog::motzkin();
    let width = parse_number("1e-5").unwrap();
    let r = find_sos_threshold(&f, &width, &ratio(1, 1)).unwrap();
    assert_eq!(r.status, ThresholdStatus::Bracketed);
    assert!(&r.upper - &r.lower <= width);
    assert_eq!(status_at(&f, &r.lower), SosStatus::NotSos);
    assert_eq!(status_at(&f, &r.upper), SosStatus::Sos);
    // overlaps (0.031998, 0.031999)
    assert!(r.lower < ratio(31999, 1_000_000) && r.upper > ratio(31998, 1_000_000));
}

#[test]
fn halving_the_width_nests_brackets() {
    for name in ["motzkin", "bcj", "choi-lam"] {
        let f = catalog::by_name(name).unwrap();
        let mut previous: Option<(BigRational, BigRational)> = None;
        for w in ["1e-2", "5e-3", "25e-4", "125e-5"] {
            let r = find_sos_threshold(&f, &parse_number(w).unwrap(), &ratio(1, 1)).unwrap();
            assert_eq!(r.status, ThresholdStatus::Bracketed, "{name}");
            if let Some((lo, hi)) = &previous {
                assert!(&r.lower >= lo && &r.upper <= hi, "{name}: bracket left its parent");
            }
            previous = Some((r.lower, r.upper));
        }
    }
}

#[test]
fn refining_stays_inside_the_given_bracket() {
    let f = catalog::robinson();
    let coarse = find_sos_threshold(&f, &ratio(1, 1000), &ratio(1, 1)).unwrap();
    let fine = refine_bracket(&f, &coarse.lower, &coarse.upper, &ratio(1, 100_000), &ThresholdOptions::default()).unwrap();
    assert!(fine.lower >= coarse.lower && fine.upper <= coarse.upper);
    assert!(&fine.upper - &fine.lower <= ratio(1, 100_000));
    assert_eq!(status_at(&f, &fine.lower), SosStatus::NotSos);
    assert_eq!(status_at(&f, &fine.upper), SosStatus::Sos);
}

#[test]
fn bcj_enters_before_one_sixth() {
    let f = catalog::berg_christensen_jensen();
    let r = find_sos_threshold(&f, &ratio(1, 10_000), &ratio(1, 1)).unwrap();
    assert_eq!(r.status, ThresholdStatus::Bracketed);
    assert!(r.upper <= ratio(1, 6));
}
