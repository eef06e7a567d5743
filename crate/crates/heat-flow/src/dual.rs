use crate::error::HeatError;
use crate::evolve::evolve_at_anisotropic;
use crate::Result;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use poly_core::rational::to_f64;
use poly_core::{Polynomial, PolyError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diffusivity {
    Isotropic(BigRational),
    Anisotropic(Vec<BigRational>),
}

impl Diffusivity {
    fn per_coordinate(&self, n: usize) -> Result<Vec<BigRational>> {
        match self {
            Diffusivity::Isotropic(v) => Ok(vec![v.clone(); n]),
            Diffusivity::Anisotropic(v) if v.len() == n => Ok(v.clone()),
            Diffusivity::Anisotropic(v) => {
                Err(PolyError::VariableCount { expected: n, found: v.len() }.into())
            }
        }
    }

    fn values(&self) -> Vec<&BigRational> {
        match self {
            Diffusivity::Isotropic(v) => vec![v],
            Diffusivity::Anisotropic(v) => v.iter().collect(),
        }
    }
}

/// Space-independent drift and scaling: diffusivity, the drift integral `G`
/// (one univariate polynomial in `t` per coordinate) and the scaling integral
/// `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DriftScaleSpec {
    nu: Diffusivity,
    drift_integral: Vec<Polynomial>,
    scale_integral: Polynomial,
}

impl DriftScaleSpec {
    pub fn new(nu: Diffusivity, drift_integral: Vec<Polynomial>, scale_integral: Polynomial) -> Result<Self> {
        for v in nu.values() {
            if v.is_negative() {
                return Err(HeatError::Domain(format!("negative diffusivity {v}")));
            }
        }
        let zero = [BigRational::zero()];
        for (i, g) in drift_integral.iter().enumerate() {
            if g.nvars() != 1 {
                return Err(PolyError::VariableCount { expected: 1, found: g.nvars() }.into());
            }
            if !g.evaluate(&zero)?.is_zero() {
                return Err(HeatError::Domain(format!("drift integral {i} does not vanish at t = 0")));
            }
        }
        if scale_integral.nvars() != 1 {
            return Err(PolyError::VariableCount { expected: 1, found: scale_integral.nvars() }.into());
        }
        if !scale_integral.evaluate(&zero)?.is_zero() {
            return Err(HeatError::Domain("scale integral does not vanish at t = 0".into()));
        }
        Ok(DriftScaleSpec { nu, drift_integral, scale_integral })
    }

    pub fn nu(&self) -> &Diffusivity {
        &self.nu
    }
}

/// `exp(exponent) · polynomial`, with the exponential factor left symbolic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualEvolution {
    pub exponent: BigRational,
    pub polynomial: Polynomial,
}

impl DualEvolution {
    pub fn scale_factor(&self) -> f64 {
        to_f64(&self.exponent).exp()
    }

    pub fn evaluate_f64(&self, point: &[f64]) -> Result<f64> {
        Ok(self.scale_factor() * self.polynomial.evaluate_f64(point)?)
    }
}

/// Dual evolution for coefficients constant in space:
/// `exp(H(time)) · [heat flow of p0 for time ν·time](x + G(time))`.
pub fn evolve_dual_const_coeff(p0: &Polynomial, spec: &DriftScaleSpec, time: &BigRational) -> Result<DualEvolution> {
    let n = p0.nvars();
    if spec.drift_integral.len() != n {
        return Err(PolyError::VariableCount { expected: n, found: spec.drift_integral.len() }.into());
    }
    let nu = spec.nu.per_coordinate(n)?;
    if time.is_negative() && nu.iter().any(|v| v.is_positive()) {
        return Err(HeatError::Domain("negative time with positive diffusivity".into()));
    }
    let diffused = evolve_at_anisotropic(p0, &nu, time)?;
    let point = [time.clone()];
    let images = spec
        .drift_integral
        .iter()
        .enumerate()
        .map(|(i, g)| Ok(&Polynomial::var(n, i) + &Polynomial::constant(n, g.evaluate(&point)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(DualEvolution {
        exponent: spec.scale_integral.evaluate(&point)?,
        polynomial: diffused.compose(&images)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use poly_core::catalog::motzkin;
    use poly_core::{rat, ratio};

    fn t() -> Polynomial {
        Polynomial::var(1, 0)
    }

    #[test]
    fn pure_translation() {
        let spec = DriftScaleSpec::new(
            Diffusivity::Isotropic(rat(0)),
            vec![t(), Polynomial::zero(1)],
            Polynomial::zero(1),
        )
        .unwrap();
        let out = evolve_dual_const_coeff(&motzkin(), &spec, &ratio(3, 2)).unwrap();
        assert_eq!(out.exponent, rat(0));
        let shifted = motzkin()
            .compose(&[&Polynomial::var(2, 0) + &Polynomial::constant(2, ratio(3, 2)), Polynomial::var(2, 1)])
            .unwrap();
        assert_eq!(out.polynomial, shifted);
    }

    #[test]
    fn pure_scaling() {
        let spec = DriftScaleSpec::new(
            Diffusivity::Isotropic(rat(0)),
            vec![Polynomial::zero(1); 2],
            t(),
        )
        .unwrap();
        let out = evolve_dual_const_coeff(&motzkin(), &spec, &rat(2)).unwrap();
        assert_eq!(out.exponent, rat(2));
        assert_eq!(out.polynomial, motzkin());
        assert!((out.scale_factor() - 2f64.exp()).abs() < 1e-12);
    }

    #[test]
    fn pure_diffusion() {
        let spec = DriftScaleSpec::new(Diffusivity::Isotropic(rat(1)), vec![Polynomial::zero(1)], Polynomial::zero(1)).unwrap();
        let x2 = Polynomial::from_int_terms(1, &[(1, &[2])]);
        let out = evolve_dual_const_coeff(&x2, &spec, &rat(1)).unwrap();
        assert_eq!(out.polynomial, Polynomial::from_int_terms(1, &[(1, &[2]), (2, &[0])]));
        assert!(evolve_dual_const_coeff(&x2, &spec, &rat(-1)).is_err());
    }

    #[test]
    fn anisotropic_and_validation() {
        let spec = DriftScaleSpec::new(
            Diffusivity::Anisotropic(vec![rat(0), rat(3)]),
            vec![Polynomial::zero(1); 2],
            Polynomial::zero(1),
        )
        .unwrap();
        let p = Polynomial::from_int_terms(2, &[(1, &[2, 2])]);
        let out = evolve_dual_const_coeff(&p, &spec, &rat(1)).unwrap();
        assert_eq!(out.polynomial, Polynomial::from_int_terms(2, &[(1, &[2, 2]), (6, &[2, 0])]));

        let shifted_g = &t() + &Polynomial::one(1);
        assert!(DriftScaleSpec::new(Diffusivity::Isotropic(rat(1)), vec![shifted_g], Polynomial::zero(1)).is_err());
        assert!(DriftScaleSpec::new(Diffusivity::Isotropic(rat(-1)), vec![], Polynomial::zero(1)).is_err());
        let wrong_len = DriftScaleSpec::new(Diffusivity::Isotropic(rat(1)), vec![], Polynomial::zero(1)).unwrap();
        assert!(evolve_dual_const_coeff(&p, &wrong_len, &rat(1)).is_err());
    }
}
