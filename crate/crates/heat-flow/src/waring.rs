use crate::basis::HeatBasisCache;
use crate::error::HeatError;
use crate::Result;
use num_rational::BigRational;
use num_traits::Zero;
use poly_core::rational::pow;
use poly_core::{Polynomial, TimePolynomial};

/// One summand `coefficient · t^time_power · (a·x + b)^power` of an evolved
/// even power of an affine form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaringTerm {
    pub coefficient: BigRational,
    pub time_power: u32,
    pub power: u32,
}

fn check(a: &[BigRational], d: u32) -> Result<BigRational> {
    if d % 2 == 1 {
        return Err(HeatError::Domain(format!("power {d} is odd")));
    }
    if a.is_empty() || a.iter().all(Zero::is_zero) {
        return Err(HeatError::Domain("direction vector is zero".into()));
    }
    Ok(a.iter().map(|v| v * v).fold(BigRational::zero(), |s, v| s + v))
}

/// The evolution of `(a·x + b)^d` as a list of summands. Every coefficient
/// is positive and every power even.
pub fn waring_terms(a: &[BigRational], d: u32) -> Result<Vec<WaringTerm>> {
    let norm2 = check(a, d)?;
    let coefs = HeatBasisCache::global().coefficients(d);
    Ok(coefs
        .iter()
        .enumerate()
        .map(|(j, c)| WaringTerm {
            coefficient: BigRational::from_integer(c.clone()) * pow(&norm2, j as u32),
            time_power: j as u32,
            power: d - 2 * j as u32,
        })
        .collect())
}

/// Heat evolution of `(a·x + b)^d`: the univariate heat polynomial of degree
/// `d` in `y = a·x + b` at time `‖a‖²·t`.
pub fn evolve_waring_term(a: &[BigRational], b: &BigRational, d: u32) -> Result<TimePolynomial> {
    let terms = waring_terms(a, d)?;
    let n = a.len();
    let mut form = Polynomial::constant(n + 1, b.clone());
    for (i, ai) in a.iter().enumerate() {
        form = &form + &Polynomial::var(n + 1, i + 1).scale(ai);
    }
    let t = Polynomial::var(n + 1, 0);
    let mut out = Polynomial::zero(n + 1);
    for w in terms {
        let piece = &t.pow(w.time_power) * &form.pow(w.power);
        out = &out + &piece.scale(&w.coefficient);
    }
    Ok(TimePolynomial::from_polynomial(out)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use poly_core::rat;

    #[test]
    fn examples() {
        let one_d = evolve_waring_term(&[rat(1)], &rat(0), 2).unwrap();
        assert_eq!(one_d.as_polynomial(), &Polynomial::from_int_terms(2, &[(1, &[0, 2]), (2, &[1, 0])]));
        let two_d = evolve_waring_term(&[rat(1), rat(1)], &rat(0), 2).unwrap();
        let want = Polynomial::from_int_terms(3, &[(1, &[0, 2, 0]), (2, &[0, 1, 1]), (1, &[0, 0, 2]), (4, &[1, 0, 0])]);
        assert_eq!(two_d.as_polynomial(), &want);
        let d0 = evolve_waring_term(&[rat(2), rat(-1)], &rat(5), 0).unwrap();
        assert_eq!(d0.as_polynomial(), &Polynomial::one(3));
    }

    #[test]
    fn errors() {
        assert!(evolve_waring_term(&[rat(0), rat(0)], &rat(1), 2).is_err());
        assert!(evolve_waring_term(&[rat(1)], &rat(1), 3).is_err());
    }

    #[test]
    fn decomposition_is_positive() {
        for w in waring_terms(&[rat(1), rat(-2)], 6).unwrap() {
            assert!(w.coefficient > rat(0));
            assert_eq!(w.power % 2, 0);
        }
    }

    #[test]
    fn solves_heat_equation() {
        let p = evolve_waring_term(&[rat(1), rat(-3), rat(2)], &rat(7), 4).unwrap();
        assert_eq!(p.time_derivative(), p.laplacian());
    }
}
