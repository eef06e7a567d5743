use crate::{burgers_moment, Result};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use poly_core::{format_rational, rat, rational::to_f64, Monomial, Polynomial};
use serde::Serialize;

/// Smallest positive root of the witness polynomial.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum BreakdownTime {
    /// `offset + scale·√radicand`, exact (quadratic witnesses).
    Radical {
        #[serde(with = "poly_core::rational::as_string")]
        offset: BigRational,
        #[serde(with = "poly_core::rational::as_string")]
        scale: BigRational,
        #[serde(with = "poly_core::rational::as_string")]
        radicand: BigRational,
        approx: f64,
    },
    /// Located by bisection to 10⁻¹².
    Numeric { approx: f64 },
}

impl BreakdownTime {
    pub fn approx(&self) -> f64 {
        match self {
            BreakdownTime::Radical { approx, .. } | BreakdownTime::Numeric { approx } => *approx,
        }
    }

    /// Exact `t*²` when the root is a pure radical `scale·√radicand`.
    pub fn squared(&self) -> Option<BigRational> {
        match self {
            BreakdownTime::Radical { offset, scale, radicand, .. } if offset.is_zero() => Some(scale * scale * radicand),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            BreakdownTime::Radical { offset, scale, radicand, approx } => {
                let root = if scale == &rat(1) {
                    format!("sqrt({})", format_rational(radicand))
                } else {
                    format!("{}*sqrt({})", format_rational(scale), format_rational(radicand))
                };
                if offset.is_zero() {
                    format!("{root} ≈ {approx}")
                } else {
                    format!("{} + {root} ≈ {approx}", format_rational(offset))
                }
            }
            BreakdownTime::Numeric { approx } => format!("≈ {approx}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    /// `q(t) = L_{s(t)}((x − t)²) = s_{2,1}(t) − 2t·s_{1,1}(t) + t²·s_{0,1}(t)`.
    pub polynomial: Polynomial,
    /// Where `q` first turns negative for `t > 0`, if it does.
    pub breakdown: Option<BreakdownTime>,
}

/// Builds `q(t)` from the `p = 1` moments and locates its first sign change
/// to negative on `t > 0`.
pub fn nonneg_violation_witness(table: &crate::BurgersMomentTable) -> Result<Witness> {
    let s0 = burgers_moment(table, 0, 1)?;
    let s1 = burgers_moment(table, 1, 1)?;
    let s2 = burgers_moment(table, 2, 1)?;
    let t = Polynomial::var(1, 0);
    let q = &(&s2 - &(&s1 * &t).scale(&rat(2))) + &(&s0 * &(&t * &t));
    let breakdown = first_negative_crossing(&q);
    Ok(Witness { polynomial: q, breakdown })
}

fn coefficient(q: &Polynomial, i: u32) -> BigRational {
    q.coefficient(&Monomial::new(vec![i]))
}

fn first_negative_crossing(q: &Polynomial) -> Option<BreakdownTime> {
    let degree = match q.degree() {
        poly_core::Degree::Finite(d) => d,
        poly_core::Degree::NegInfinity => return None,
    };
    if degree <= 2 {
        return quadratic_crossing(&coefficient(q, 0), &coefficient(q, 1), &coefficient(q, 2));
    }
    numeric_crossing(q)
}

/// First `t > 0` after which `a + b t + c t²` is negative.
fn quadratic_crossing(a: &BigRational, b: &BigRational, c: &BigRational) -> Option<BreakdownTime> {
    let zero = || BreakdownTime::Radical { offset: rat(0), scale: rat(0), radicand: rat(0), approx: 0.0 };
    if a.is_negative() {
        return Some(zero());
    }
    if c.is_zero() {
        // linear: negative beyond −a/b only if b < 0
        if !b.is_negative() {
            return None;
        }
        let root = -a / b;
        return Some(BreakdownTime::Radical { approx: to_f64(&root), offset: root, scale: rat(0), radicand: rat(0) });
    }
    let disc = b * b - rat(4) * a * c;
    if disc.is_negative() || (disc.is_zero() && c.is_positive()) {
        return None;
    }
    // roots offset ± √disc/(2|c|). With a ≥ 0 and c < 0 the smaller root is
    // ≤ 0, so q turns negative at the larger one; with c > 0 it dips below
    // zero between the roots.
    let offset = -b / (rat(2) * c);
    let half = rat(1) / (rat(2) * c.abs());
    let s = to_f64(&disc).sqrt() * to_f64(&half);
    let o = to_f64(&offset);
    if o + s <= 0.0 {
        return None;
    }
    let (scale, approx) = if c.is_negative() { (half, o + s) } else { (-half, (o - s).max(0.0)) };
    let (offset, scale, radicand) = pure_radical(offset, scale, disc);
    Some(BreakdownTime::Radical { offset, scale, radicand, approx })
}

/// Folds `scale·√disc` into `√(scale²·disc)` when the offset vanishes.
fn pure_radical(offset: BigRational, scale: BigRational, disc: BigRational) -> (BigRational, BigRational, BigRational) {
    if offset.is_zero() && scale.is_positive() {
        (offset, rat(1), &scale * &scale * disc)
    } else {
        (offset, scale, disc)
    }
}

fn numeric_crossing(q: &Polynomial) -> Option<BreakdownTime> {
    let f = |t: f64| q.evaluate_f64(&[t]).expect("univariate");
    if f(0.0) < 0.0 {
        return Some(BreakdownTime::Numeric { approx: 0.0 });
    }
    // Cauchy bound on the positive roots
    let lead = match q.degree() {
        poly_core::Degree::Finite(d) => coefficient(q, d),
        poly_core::Degree::NegInfinity => return None,
    };
    let bound = 1.0 + q.terms().map(|(_, c)| to_f64(&(c / &lead)).abs()).fold(0.0, f64::max);
    let samples = 100_000;
    let mut prev = 0.0;
    for i in 1..=samples {
        let t = bound * i as f64 / samples as f64;
        if f(t) < 0.0 {
            let (mut lo, mut hi) = (prev, t);
            while hi - lo > 1e-12 {
                let mid = 0.5 * (lo + hi);
                if f(mid) < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Some(BreakdownTime::Numeric { approx: 0.5 * (lo + hi) });
        }
        prev = t;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use poly_core::ratio;

    #[test]
    fn downward_quadratic_root() {
        let b = quadratic_crossing(&ratio(1, 6), &rat(0), &ratio(-2, 15)).unwrap();
        assert_eq!(b.squared(), Some(ratio(5, 4)));
        assert!((b.approx() - 1.25f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn upward_quadratic_has_no_crossing() {
        assert!(quadratic_crossing(&ratio(1, 6), &rat(0), &ratio(13, 30)).is_none());
        assert!(quadratic_crossing(&rat(0), &rat(0), &rat(1)).is_none());
    }

    #[test]
    fn shifted_quadratic() {
        // 4 − (t − 1)² = 3 + 2t − t², root 3
        let b = quadratic_crossing(&rat(3), &rat(2), &rat(-1)).unwrap();
        assert!((b.approx() - 3.0).abs() < 1e-12);
        // 1 − 3t + t² dips below zero between its roots
        let b = quadratic_crossing(&rat(1), &rat(-3), &rat(1)).unwrap();
        assert!((b.approx() - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn linear_decline() {
        let b = quadratic_crossing(&rat(2), &rat(-4), &rat(0)).unwrap();
        assert_eq!(b.approx(), 0.5);
    }

    #[test]
    fn cubic_by_bisection() {
        // 1 − t³
        let q = Polynomial::from_int_terms(1, &[(1, &[0]), (-1, &[3])]);
        let b = first_negative_crossing(&q).unwrap();
        assert!((b.approx() - 1.0).abs() < 1e-11);
    }
}
