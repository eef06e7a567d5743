use crate::basis::HeatBasisCache;
use crate::error::HeatError;
use crate::Result;
use num_rational::BigRational;
use num_traits::{One, Zero};
use poly_core::rational::pow;
use poly_core::{Degree, Monomial, Polynomial, PolyError, TimePolynomial};

/// Heat evolution with unit diffusivity in every coordinate.
pub fn evolve(f0: &Polynomial) -> TimePolynomial {
    let nu = vec![BigRational::one(); f0.nvars()];
    evolve_anisotropic(f0, &nu).expect("weights sized to variables")
}

/// Heat evolution under `Σ_i ν_i ∂_i²`: coordinate `i` uses the heat
/// polynomial at time `ν_i t`.
pub fn evolve_anisotropic(f0: &Polynomial, nu: &[BigRational]) -> Result<TimePolynomial> {
    let n = f0.nvars();
    if nu.len() != n {
        return Err(PolyError::VariableCount { expected: n, found: nu.len() }.into());
    }
    if let Some(bad) = nu.iter().find(|v| *v < &BigRational::zero()) {
        return Err(HeatError::Domain(format!("negative diffusivity {bad}")));
    }
    let cache = HeatBasisCache::global();
    let mut out = Polynomial::zero(n + 1);
    for (m, c) in f0.terms() {
        let mut partial: Vec<(Vec<u32>, BigRational)> = vec![(vec![0; n + 1], c.clone())];
        for (i, &a) in m.exponents().iter().enumerate() {
            if a == 0 {
                continue;
            }
            let coefs = cache.coefficients(a);
            let mut next = Vec::with_capacity(partial.len() * coefs.len());
            for (exps, v) in &partial {
                for (j, cj) in coefs.iter().enumerate() {
                    let j = j as u32;
                    let factor = if j == 0 {
                        BigRational::one()
                    } else {
                        pow(&nu[i], j) * cj
                    };
                    if factor.is_zero() {
                        continue;
                    }
                    let mut e = exps.clone();
                    e[0] += j;
                    e[i + 1] = a - 2 * j;
                    next.push((e, v * factor));
                }
            }
            partial = next;
        }
        for (e, v) in partial {
            out.add_term(Monomial::new(e), v);
        }
    }
    Ok(TimePolynomial::from_polynomial(out).expect("time slot plus spatial variables"))
}

/// Evolution at a fixed time; any rational time is allowed, including
/// negative ones.
pub fn evolve_at(f0: &Polynomial, time: &BigRational) -> Polynomial {
    evolve(f0).at_time(time)
}

pub fn evolve_at_anisotropic(f0: &Polynomial, nu: &[BigRational], time: &BigRational) -> Result<Polynomial> {
    Ok(evolve_anisotropic(f0, nu)?.at_time(time))
}

/// Coefficient of `t^d` in the evolution of a degree-`2d` polynomial, i.e.
/// the limit of `evolve(f)(x, t) / t^d` as `t → ∞`.
pub fn asymptotic_constant(f: &Polynomial) -> Result<BigRational> {
    let deg = match f.degree() {
        Degree::NegInfinity => return Err(HeatError::Domain("zero polynomial has no degree".into())),
        Degree::Finite(d) => d,
    };
    if deg % 2 == 1 {
        return Err(HeatError::Domain(format!("odd degree {deg}")));
    }
    let top = evolve(f).time_coefficient(deg / 2);
    Ok(top.constant_term())
}
