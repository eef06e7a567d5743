use burgers_moments::{burgers_moment, nonneg_violation_witness, one_tooth_initial_moments, BurgersMomentTable};
use num_rational::BigRational;
use poly_core::{rat, ratio, rational::factorial, BigInt, Polynomial};
use proptest::prelude::*;

fn univariate(coeffs: &[BigRational]) -> Polynomial {
    Polynomial::from_terms(1, coeffs.iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone()))).unwrap()
}

// ∫_{-1}^{1} x^k (1-|x|)^p dx = (1 + (-1)^k) k! p! / (k+p+1)!
fn beta_oracle(k: u32, p: u32) -> BigRational {
    if k % 2 == 1 {
        return rat(0);
    }
    BigRational::new(BigInt::from(2) * factorial(k) * factorial(p), factorial(k + p + 1))
}

#[test]
fn one_tooth_matches_beta_integrals() {
    let table = one_tooth_initial_moments(7, 7);
    for k in 0..=7 {
        for p in 0..=7 {
            assert_eq!(table.get(k, p), Some(&beta_oracle(k, p)), "k={k} p={p}");
        }
    }
}

#[test]
fn one_tooth_low_order_moments() {
    let table = one_tooth_initial_moments(2, 3);
    assert_eq!(burgers_moment(&table, 0, 1).unwrap(), univariate(&[rat(1)]));
    assert_eq!(burgers_moment(&table, 1, 1).unwrap(), univariate(&[rat(0), ratio(1, 3)]));
    assert_eq!(burgers_moment(&table, 2, 1).unwrap(), univariate(&[ratio(1, 6), rat(0), ratio(1, 10)]));
}

// The published witness reads 1/6 - (2/15) t^2. Assembling it from the
// closed-form moments above gives a positive t^2 coefficient instead; this
// pins what the closed form actually produces.
#[test]
fn one_tooth_witness_from_closed_form() {
    let w = nonneg_violation_witness(&one_tooth_initial_moments(2, 3)).unwrap();
    assert_eq!(w.polynomial, univariate(&[ratio(1, 6), rat(0), ratio(13, 30)]));
    assert!(w.breakdown.is_none());
}

#[test]
fn trivial_table_has_no_violation() {
    let mut table = BurgersMomentTable::new();
    for (k, p) in [(0, 1), (1, 1), (2, 1), (0, 2), (1, 2), (0, 3)] {
        table.insert(k, p, rat(0));
    }
    table.insert(0, 1, rat(1));
    let w = nonneg_violation_witness(&table).unwrap();
    assert_eq!(w.polynomial, univariate(&[rat(0), rat(0), rat(1)]));
    assert!(w.breakdown.is_none());
}

#[test]
fn declining_witness_reports_exact_radical() {
    // choose the p = 2, 3 entries so that q = 1/6 - (2/15) t^2
    let mut table = BurgersMomentTable::new();
    table.insert(0, 1, rat(0));
    table.insert(1, 1, rat(0));
    table.insert(2, 1, ratio(1, 6));
    table.insert(0, 2, rat(0));
    table.insert(1, 2, rat(0));
    table.insert(0, 3, ratio(-2, 3));
    let w = nonneg_violation_witness(&table).unwrap();
    assert_eq!(w.polynomial, univariate(&[ratio(1, 6), rat(0), ratio(-2, 15)]));
    let b = w.breakdown.unwrap();
    assert_eq!(b.squared(), Some(ratio(5, 4)));
    assert!((b.approx() - 5f64.sqrt() / 2.0).abs() < 1e-15);

    let doubled = nonneg_violation_witness(&table.scaled(&rat(2))).unwrap();
    assert_eq!(doubled.polynomial, w.polynomial.scale(&rat(2)));
    assert_eq!(doubled.breakdown.unwrap().squared(), Some(ratio(5, 4)));
}

#[test]
fn scaling_the_table_scales_the_witness() {
    let table = one_tooth_initial_moments(2, 3);
    let base = nonneg_violation_witness(&table).unwrap();
    let doubled = nonneg_violation_witness(&table.scaled(&rat(2))).unwrap();
    assert_eq!(doubled.polynomial, base.polynomial.scale(&rat(2)));
    assert_eq!(doubled.breakdown, base.breakdown);
}

#[test]
fn regeneration_is_deterministic() {
    let a = nonneg_violation_witness(&one_tooth_initial_moments(2, 3)).unwrap();
    let b = nonneg_violation_witness(&one_tooth_initial_moments(5, 6)).unwrap();
    assert_eq!(a, b);
    let json = serde_json::to_string(&one_tooth_initial_moments(2, 3)).unwrap();
    let back: BurgersMomentTable = serde_json::from_str(&json).unwrap();
    assert_eq!(nonneg_violation_witness(&back).unwrap(), a);
}

#[test]
fn missing_entries_are_an_error() {
    let table = one_tooth_initial_moments(2, 1);
    assert!(nonneg_violation_witness(&table).is_err());
}

proptest! {
    #[test]
    fn closed_form_is_linear_in_the_table(
        values in proptest::collection::vec((-50i64..50, 1i64..20), 10),
        factor in (-9i64..9, 1i64..9),
        k in 0u32..4,
        p in 0u32..4,
    ) {
        let mut table = BurgersMomentTable::new();
        for i in 0..=k {
            let (n, d) = values[i as usize % values.len()];
            table.insert(k - i, p + i, ratio(n, d));
        }
        let f = ratio(factor.0, factor.1);
        let base = burgers_moment(&table, k, p).unwrap();
        prop_assert_eq!(burgers_moment(&table.scaled(&f), k, p).unwrap(), base.scale(&f));
        let at_zero = base.evaluate(&[rat(0)]).unwrap();
        prop_assert_eq!(&at_zero, table.get(k, p).unwrap());
    }
}
