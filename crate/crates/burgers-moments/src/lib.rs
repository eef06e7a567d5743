//! Closed-form moments `s_{k,p}(t) = ∫ x^k f(x,t)^p dx` for Burgers'
//! equation `∂_t f = −f ∂_x f`, and the quadratic witness that tests whether
//! the moment functional stays non-negative on `(x − t)²`.
//!
//! Each `s_{k,p}(t)` is a polynomial in `t` built from the initial values on
//! the anti-diagonal `s_{k−i,p+i}(0)`, `i = 0..k`:
//!
//! `Σ_i s_{k−i,p+i}(0)/i! · t^i · Π_{j<i} (p+j)(k−j) / (1 + (p+j)²)`.

mod table;
mod witness;

pub use table::{one_tooth_initial_moments, BurgersMomentTable};
pub use witness::{nonneg_violation_witness, BreakdownTime, Witness};

use num_rational::BigRational;
use poly_core::{rat, rational::factorial, Monomial, Polynomial};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BurgersError {
    #[error("table is missing initial moments for (k,p) = {0:?}")]
    MissingEntries(Vec<(u32, u32)>),
    #[error("bad table entry: {0}")]
    BadEntry(String),
}

pub type Result<T> = std::result::Result<T, BurgersError>;

/// `s_{k,p}(t)` as a univariate polynomial in `t`.
pub fn burgers_moment(table: &BurgersMomentTable, k: u32, p: u32) -> Result<Polynomial> {
    let missing: Vec<(u32, u32)> = (0..=k).map(|i| (k - i, p + i)).filter(|kp| table.get(kp.0, kp.1).is_none()).collect();
    if !missing.is_empty() {
        return Err(BurgersError::MissingEntries(missing));
    }
    let mut out = Polynomial::zero(1);
    // running product over j < i; empty for i = 0
    let mut product = rat(1);
    for i in 0..=k {
        if i > 0 {
            let j = i - 1;
            let pj = BigRational::from_integer((p + j).into());
            let kj = BigRational::from_integer((k - j).into());
            product = product * &pj * kj / (rat(1) + &pj * &pj);
        }
        let s0 = table.get(k - i, p + i).expect("checked above");
        let c = s0 * &product / BigRational::from_integer(factorial(i));
        out.add_term(Monomial::new(vec![i]), c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use poly_core::ratio;

    fn table(entries: &[((u32, u32), BigRational)]) -> BurgersMomentTable {
        BurgersMomentTable::from_entries(entries.iter().cloned())
    }

    #[test]
    fn degree_zero_is_constant() {
        let t = table(&[((0, 3), ratio(2, 7))]);
        assert_eq!(burgers_moment(&t, 0, 3).unwrap(), Polynomial::constant(1, ratio(2, 7)));
    }

    #[test]
    fn first_order_term() {
        let t = table(&[((1, 1), ratio(3, 5)), ((0, 2), ratio(7, 3))]);
        let expected = Polynomial::from_terms(1, [(vec![0], ratio(3, 5)), (vec![1], ratio(7, 6))]).unwrap();
        assert_eq!(burgers_moment(&t, 1, 1).unwrap(), expected);
    }

    #[test]
    fn gaps_are_listed() {
        let t = table(&[((2, 1), rat(1))]);
        assert_eq!(burgers_moment(&t, 2, 1), Err(BurgersError::MissingEntries(vec![(1, 2), (0, 3)])));
    }

    #[test]
    fn derivative_at_zero_is_first_coefficient() {
        let t = one_tooth_initial_moments(6, 8);
        for k in 0..=4 {
            for p in 1..=3 {
                let s = burgers_moment(&t, k, p).unwrap();
                let slope = s.derivative(0).evaluate(&[rat(0)]).unwrap();
                let expected = if k == 0 {
                    rat(0)
                } else {
                    let pp = BigRational::from_integer(p.into());
                    t.get(k - 1, p + 1).unwrap() * &pp * BigRational::from_integer(k.into()) / (rat(1) + &pp * &pp)
                };
                assert_eq!(slope, expected, "k={k} p={p}");
            }
        }
    }
}
