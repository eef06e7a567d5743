//! Named non-negative polynomials used as fixtures across the workspace.

use crate::polynomial::Polynomial;
use crate::rational::rat;

/// `1 − 3x²y² + x⁴y² + x²y⁴`
pub fn motzkin() -> Polynomial {
    Polynomial::from_int_terms(2, &[(1, &[0, 0]), (-3, &[2, 2]), (1, &[4, 2]), (1, &[2, 4])])
}

/// `z⁶ − 3x²y²z² + x⁴y² + x²y⁴`
pub fn homogeneous_motzkin() -> Polynomial {
    Polynomial::from_int_terms(3, &[(1, &[0, 0, 6]), (-3, &[2, 2, 2]), (1, &[4, 2, 0]), (1, &[2, 4, 0])])
}

pub fn robinson() -> Polynomial {
    Polynomial::from_int_terms(
        2,
        &[
            (1, &[0, 0]),
            (-1, &[2, 0]),
            (-1, &[0, 2]),
            (-1, &[4, 0]),
            (3, &[2, 2]),
            (-1, &[0, 4]),
            (1, &[6, 0]),
            (-1, &[4, 2]),
            (-1, &[2, 4]),
            (1, &[0, 6]),
        ],
    )
}

/// `1 − 4xyz + x²y² + x²z² + y²z²`
pub fn choi_lam() -> Polynomial {
    Polynomial::from_int_terms(
        3,
        &[(1, &[0, 0, 0]), (-4, &[1, 1, 1]), (1, &[2, 2, 0]), (1, &[2, 0, 2]), (1, &[0, 2, 2])],
    )
}

/// `(y²−x²)·x·(x+2)·[x(x−2) + 2(y²−4)] + 200·[(x³−4x)² + (y³−4y)²]`
pub fn schmudgen() -> Polynomial {
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let c = |k: i64| Polynomial::constant(2, rat(k));
    let a = &(&y * &y) - &(&x * &x);
    let b = &x * &(&x + &c(2));
    let inner = &(&x * &(&x - &c(2))) + &(&(&y * &y) - &c(4)).scale(&rat(2));
    let u = &x.pow(3) - &x.scale(&rat(4));
    let v = &y.pow(3) - &y.scale(&rat(4));
    let sq = (&(&u * &u) + &(&v * &v)).scale(&rat(200));
    &(&(&a * &b) * &inner) + &sq
}

/// `1 − x²y² + x⁴y² + x²y⁴`
pub fn berg_christensen_jensen() -> Polynomial {
    Polynomial::from_int_terms(2, &[(1, &[0, 0]), (-1, &[2, 2]), (1, &[4, 2]), (1, &[2, 4])])
}

/// Degree-10 bivariate polynomial with a 21-monomial Gram basis.
pub fn harris() -> Polynomial {
    Polynomial::from_int_terms(
        2,
        &[
            (16, &[10, 0]),
            (-36, &[8, 2]),
            (20, &[6, 4]),
            (20, &[4, 6]),
            (-36, &[2, 8]),
            (16, &[0, 10]),
            (-36, &[8, 0]),
            (57, &[6, 2]),
            (-38, &[4, 4]),
            (57, &[2, 6]),
            (-36, &[0, 8]),
            (20, &[6, 0]),
            (-38, &[4, 2]),
            (-38, &[2, 4]),
            (20, &[0, 6]),
            (20, &[4, 0]),
            (57, &[2, 2]),
            (20, &[0, 4]),
            (-36, &[2, 0]),
            (-36, &[0, 2]),
            (16, &[0, 0]),
        ],
    )
}

/// Every named fixture, keyed by a short identifier.
pub fn all() -> Vec<(&'static str, Polynomial)> {
    vec![
        ("motzkin", motzkin()),
        ("robinson", robinson()),
        ("choi-lam", choi_lam()),
        ("schmudgen", schmudgen()),
        ("bcj", berg_christensen_jensen()),
        ("harris", harris()),
        ("homogeneous-motzkin", homogeneous_motzkin()),
    ]
}

pub fn by_name(name: &str) -> Option<Polynomial> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, p)| p)
}
