use crate::error::PolyError;
use crate::polynomial::{Degree, Polynomial};
use crate::Result;
use num_rational::BigRational;
use num_traits::One;

/// Polynomial in `(t, x_1, …, x_n)` with time in slot 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TimePolynomial {
    inner: Polynomial,
}

impl TimePolynomial {
    /// Wraps a polynomial whose slot 0 is time. Needs at least one spatial
    /// variable.
    pub fn from_polynomial(inner: Polynomial) -> Result<Self> {
        if inner.nvars() < 2 {
            return Err(PolyError::TimeSlot("need time plus at least one spatial variable".into()));
        }
        Ok(TimePolynomial { inner })
    }

    /// Lifts a spatial polynomial (constant in time).
    pub fn from_spatial(p: &Polynomial) -> Self {
        let n = p.nvars();
        let slots: Vec<usize> = (1..=n).collect();
        TimePolynomial { inner: p.embed(n + 1, &slots).expect("slots are in range") }
    }

    pub fn as_polynomial(&self) -> &Polynomial {
        &self.inner
    }

    pub fn into_polynomial(self) -> Polynomial {
        self.inner
    }

    pub fn spatial_nvars(&self) -> usize {
        self.inner.nvars() - 1
    }

    /// Substitutes `t := time`, returning a spatial polynomial.
    pub fn at_time(&self, time: &BigRational) -> Polynomial {
        self.inner
            .substitute(0, time)
            .remove_var(0)
            .expect("time slot was just eliminated")
    }

    /// Spatial coefficient of `t^k`.
    pub fn time_coefficient(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.spatial_nvars());
        for (m, c) in self.inner.terms() {
            if m.exponents()[0] == k {
                out.add_term(crate::Monomial::new(m.exponents()[1..].to_vec()), c.clone());
            }
        }
        out
    }

    pub fn time_degree(&self) -> u32 {
        self.inner.degree_in(0)
    }

    pub fn time_derivative(&self) -> TimePolynomial {
        TimePolynomial { inner: self.inner.derivative(0) }
    }

    /// `Σ_i w_i ∂²/∂x_i²` over the spatial slots.
    pub fn spatial_laplacian(&self, weights: &[BigRational]) -> Result<TimePolynomial> {
        Ok(TimePolynomial { inner: self.inner.laplacian_from(1, weights)? })
    }

    /// Unweighted spatial Laplacian.
    pub fn laplacian(&self) -> TimePolynomial {
        let w = vec![BigRational::one(); self.spatial_nvars()];
        self.spatial_laplacian(&w).expect("weights sized to spatial variables")
    }

    /// Degree in the spatial variables alone.
    pub fn spatial_degree(&self) -> Degree {
        self.inner
            .terms()
            .map(|(m, _)| m.degree() - m.exponents()[0])
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }
}
