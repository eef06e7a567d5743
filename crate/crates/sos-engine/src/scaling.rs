//! Variable and coefficient normalization. SOS membership is invariant under
//! `p(x) ↦ p(σx)/s`; picking `σ` as a power of two keeps everything exact.

use crate::basis::GramBasis;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use poly_core::rational::{pow, to_f64};
use poly_core::{Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Scaling {
    /// `σ = 2^exponent`
    pub exponent: i32,
    pub factor: BigRational,
}

impl Scaling {
    /// Balances the lowest-degree and top-degree coefficient magnitudes,
    /// then normalizes the largest coefficient to one.
    pub fn for_polynomial(p: &Polynomial) -> Self {
        let mut by_degree: std::collections::BTreeMap<u32, f64> = Default::default();
        for (m, c) in p.terms() {
            let e = by_degree.entry(m.degree()).or_insert(0.0);
            *e = e.max(to_f64(c).abs());
        }
        let exponent = match (by_degree.iter().next(), by_degree.iter().next_back()) {
            (Some((&lo, &clo)), Some((&hi, &chi))) if hi > lo && clo > 0.0 && chi > 0.0 => {
                let sigma = (clo / chi).powf(1.0 / (hi - lo) as f64);
                sigma.log2().round().clamp(-20.0, 20.0) as i32
            }
            _ => 0,
        };
        let mut s = Scaling { exponent, factor: BigRational::one() };
        let unit = s.apply(p);
        s.factor = unit
            .terms()
            .map(|(_, c)| c.abs())
            .max()
            .unwrap_or_else(BigRational::one);
        s
    }

    pub fn sigma(&self) -> BigRational {
        let two = BigRational::from_integer(BigInt::from(2));
        if self.exponent >= 0 {
            pow(&two, self.exponent as u32)
        } else {
            pow(&two, (-self.exponent) as u32).recip()
        }
    }

    /// `p(σx) / s`
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let sigma = self.sigma();
        let mut out = Polynomial::zero(p.nvars());
        for (m, c) in p.terms() {
            out.add_term(m.clone(), c * pow(&sigma, m.degree()) / &self.factor);
        }
        out
    }

    /// Diagonal entries `σ^{-|α|}` relating original and scaled Gram
    /// matrices: `Q = s·D·Q̃·D`.
    pub fn diagonal(&self, basis: &GramBasis) -> Vec<BigRational> {
        let inv = self.sigma().recip();
        basis.monomials().iter().map(|m: &Monomial| pow(&inv, m.degree())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use poly_core::{rat, ratio};

    #[test]
    fn balances_degrees() {
        // 1/256 + x²: σ = 1/16 balances to 1/256 (1 + x²)
        let p = Polynomial::from_terms(1, [(vec![0], ratio(1, 256)), (vec![2], rat(1))]).unwrap();
        let s = Scaling::for_polynomial(&p);
        assert_eq!(s.exponent, -4);
        let q = s.apply(&p);
        assert_eq!(q, Polynomial::from_int_terms(1, &[(1, &[0]), (1, &[2])]));
    }
}
