use crate::error::AtomError;
use crate::measure::AtomicMeasure;
use nalgebra::DMatrix;
use poly_core::{monomials_up_to, rational::to_f64, Monomial, Polynomial};
use serde::{Deserialize, Serialize};

/// Moments `s_α = Σ c_i x_i^α` for `|α| ≤ degree`, in graded order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentSequence {
    pub time: f64,
    pub nvars: usize,
    pub degree: u32,
    pub moments: Vec<MomentEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentEntry {
    pub exp: Vec<u32>,
    pub value: f64,
}

impl MomentSequence {
    pub fn get(&self, exp: &[u32]) -> Option<f64> {
        self.moments.iter().find(|m| m.exp == exp).map(|m| m.value)
    }

    /// The moment functional applied to `p`: `Σ p_α s_α`.
    pub fn riesz(&self, p: &Polynomial) -> Result<f64, AtomError> {
        if p.nvars() != self.nvars {
            return Err(AtomError::Domain(format!("polynomial has {} variables, moments {}", p.nvars(), self.nvars)));
        }
        p.terms()
            .map(|(m, c)| {
                self.get(m.exponents())
                    .map(|s| to_f64(c) * s)
                    .ok_or_else(|| AtomError::Domain(format!("moment {:?} is beyond degree {}", m.exponents(), self.degree)))
            })
            .sum()
    }

    /// `M[α, β] = s_{α+β}` over monomials of degree at most `degree / 2`.
    pub fn moment_matrix(&self) -> DMatrix<f64> {
        let basis = monomials_up_to(self.nvars, self.degree / 2);
        let n = basis.len();
        DMatrix::from_fn(n, n, |i, j| {
            self.get(basis[i].mul(&basis[j]).exponents()).expect("products stay within the truncation degree")
        })
    }
}

pub fn moments_of_measure(mu: &AtomicMeasure, degree: u32) -> MomentSequence {
    moments_at(mu, degree, 0.0)
}

/// As [`moments_of_measure`], stamped with `time`.
pub fn moments_at(mu: &AtomicMeasure, degree: u32, time: f64) -> MomentSequence {
    let nvars = mu.dim();
    let moments = monomials_up_to(nvars, degree)
        .into_iter()
        .map(|m: Monomial| {
            let value = mu
                .atoms()
                .iter()
                .map(|a| a.location.iter().zip(m.exponents()).fold(a.weight, |acc, (x, &e)| acc * x.powi(e as i32)))
                .sum();
            MomentEntry { exp: m.exponents().to_vec(), value }
        })
        .collect();
    MomentSequence { time, nvars, degree, moments }
}

/// Number of singular values of the moment matrix above
/// `svd_tolerance · σ_max`.
pub fn moment_matrix_rank(s: &MomentSequence, svd_tolerance: f64) -> usize {
    let m = s.moment_matrix();
    let sv = m.singular_values();
    let top = sv.max();
    if top <= 0.0 {
        return 0;
    }
    sv.iter().filter(|v| **v > svd_tolerance * top).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::Atom;

    fn measure(atoms: &[(f64, &[f64])]) -> AtomicMeasure {
        AtomicMeasure::new(atoms.iter().map(|(c, x)| Atom { weight: *c, location: x.to_vec() }).collect()).unwrap()
    }

    #[test]
    fn dirac_at_origin() {
        let s = moments_of_measure(&AtomicMeasure::dirac(vec![0.0, 0.0]), 4);
        assert_eq!(s.get(&[0, 0]), Some(1.0));
        assert!(s.moments.iter().filter(|m| m.exp != [0, 0]).all(|m| m.value == 0.0));
        assert_eq!(moment_matrix_rank(&s, 1e-8), 1);
    }

    #[test]
    fn weighted_point_mass() {
        let s = moments_of_measure(&measure(&[(2.0, &[1.0, 1.0])]), 2);
        assert_eq!(s.moments.len(), 6);
        assert!(s.moments.iter().all(|m| m.value == 2.0));
    }

    #[test]
    fn symmetric_pair() {
        let s = moments_of_measure(&measure(&[(1.0, &[-1.0]), (1.0, &[1.0])]), 2);
        assert_eq!(s.get(&[0]), Some(2.0));
        assert_eq!(s.get(&[1]), Some(0.0));
        assert_eq!(s.get(&[2]), Some(2.0));
    }

    #[test]
    fn three_collinear_atoms_have_rank_three() {
        let mu = measure(&[(1.0, &[-1.0]), (0.5, &[0.25]), (2.0, &[1.5])]);
        for d in [2u32, 3, 4] {
            assert_eq!(moment_matrix_rank(&moments_of_measure(&mu, 2 * d), 1e-8), 3);
        }
    }

    #[test]
    fn riesz_functional() {
        let mu = measure(&[(1.0, &[-1.0]), (3.0, &[2.0])]);
        let s = moments_of_measure(&mu, 2);
        let p = Polynomial::from_int_terms(1, &[(1, &[2]), (-1, &[0])]);
        // 1·(1 − 1) + 3·(4 − 1)
        assert_eq!(s.riesz(&p).unwrap(), 9.0);
        assert!(s.riesz(&Polynomial::from_int_terms(1, &[(1, &[3])])).is_err());
    }
}
