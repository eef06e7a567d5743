use crate::error::SosError;
use crate::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use poly_core::{monomials_up_to, Degree, Monomial, Polynomial};
use std::collections::HashSet;

/// Monomial vector `v` of a Gram representation `p = vᵀQv`, ascending in
/// graded-lex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramBasis {
    nvars: usize,
    monomials: Vec<Monomial>,
}

impl GramBasis {
    pub fn new(nvars: usize, mut monomials: Vec<Monomial>) -> Result<Self> {
        if let Some(m) = monomials.iter().find(|m| m.nvars() != nvars) {
            return Err(SosError::Structural(format!("monomial {m:?} does not have {nvars} slots")));
        }
        monomials.sort();
        monomials.dedup();
        Ok(GramBasis { nvars, monomials })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.monomials.binary_search(m).ok()
    }

    pub fn max_degree(&self) -> u32 {
        self.monomials.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub(crate) fn retain(&self, keep: impl Fn(&Monomial) -> bool) -> GramBasis {
        GramBasis { nvars: self.nvars, monomials: self.monomials.iter().filter(|m| keep(m)).cloned().collect() }
    }
}

pub(crate) fn half_degree(p: &Polynomial) -> Result<u32> {
    match p.degree() {
        Degree::NegInfinity => Err(SosError::Domain("the zero polynomial has no Gram basis".into())),
        Degree::Finite(d) if d % 2 == 1 => Err(SosError::Domain(format!("odd degree {d}"))),
        Degree::Finite(d) => Ok(d / 2),
    }
}

/// All monomials of degree at most `deg p / 2`; with `newton_filter`, only
/// those whose doubles lie in the Newton polytope of `p`.
pub fn gram_basis(p: &Polynomial, newton_filter: bool) -> Result<GramBasis> {
    let d = half_degree(p)?;
    let all = monomials_up_to(p.nvars(), d);
    let monomials = if newton_filter {
        let support: Vec<Vec<i64>> = p
            .terms()
            .map(|(m, _)| m.exponents().iter().map(|&e| e as i64).collect())
            .collect();
        all.into_iter()
            .filter(|m| {
                let doubled: Vec<i64> = m.exponents().iter().map(|&e| 2 * e as i64).collect();
                in_convex_hull(&doubled, &support)
            })
            .collect()
    } else {
        all
    };
    GramBasis::new(p.nvars(), monomials)
}

/// Iteratively drops monomials `α` whose square `x^{2α}` has a zero
/// coefficient in `p` and cannot arise as a product of two distinct basis
/// monomials: such rows of every Gram matrix are zero.
pub fn diagonal_elimination(p: &Polynomial, basis: &GramBasis) -> GramBasis {
    let mut current = basis.clone();
    loop {
        let ms = current.monomials();
        let mut cross: HashSet<Monomial> = HashSet::new();
        for i in 0..ms.len() {
            for j in i + 1..ms.len() {
                cross.insert(ms[i].mul(&ms[j]));
            }
        }
        let next = current.retain(|m| {
            let sq = m.mul(m);
            !p.coefficient(&sq).is_zero() || cross.contains(&sq)
        });
        if next.len() == current.len() {
            return current;
        }
        current = next;
    }
}

/// Whether `q` is a convex combination of `points`, decided exactly by a
/// phase-one simplex with Bland's rule.
pub fn in_convex_hull(q: &[i64], points: &[Vec<i64>]) -> bool {
    if points.is_empty() {
        return false;
    }
    let n = q.len();
    let k = points.len();
    let m = n + 1;
    // tableau columns: k hull weights, m artificials, rhs
    let width = k + m + 1;
    let r = |v: i64| BigRational::from_integer(BigInt::from(v));
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for row in 0..m {
        let mut line = vec![BigRational::zero(); width];
        let (coefs, rhs): (Vec<i64>, i64) = if row < n {
            (points.iter().map(|p| p[row]).collect(), q[row])
        } else {
            (vec![1; k], 1)
        };
        let sign = if rhs < 0 { -1 } else { 1 };
        for (j, c) in coefs.iter().enumerate() {
            line[j] = r(sign * c);
        }
        line[k + row] = BigRational::one();
        line[width - 1] = r(sign * rhs);
        t.push(line);
    }
    let mut basic: Vec<usize> = (k..k + m).collect();
    loop {
        // reduced cost of column j: cost_j − Σ_rows cost_basic · t[row][j]
        let reduced = |j: usize, t: &Vec<Vec<BigRational>>, basic: &Vec<usize>| {
            let cj = if j >= k { BigRational::one() } else { BigRational::zero() };
            let mut s = cj;
            for (row, &b) in basic.iter().enumerate() {
                if b >= k {
                    s -= &t[row][j];
                }
            }
            s
        };
        let entering = (0..k + m).find(|&j| !basic.contains(&j) && reduced(j, &t, &basic).is_negative());
        let Some(j) = entering else { break };
        let mut leave: Option<(usize, BigRational)> = None;
        for row in 0..m {
            if t[row][j].is_positive() {
                let ratio = &t[row][width - 1] / &t[row][j];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basic[row] < basic[*lr]),
                };
                if better {
                    leave = Some((row, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else { break };
        let piv = t[pr][j].clone();
        for v in t[pr].iter_mut() {
            *v /= &piv;
        }
        let pivot_row = t[pr].clone();
        for (row, line) in t.iter_mut().enumerate() {
            if row == pr || line[j].is_zero() {
                continue;
            }
            let f = line[j].clone();
            for (v, pv) in line.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        basic[pr] = j;
    }
    basic
        .iter()
        .enumerate()
        .all(|(row, &b)| b < k || t[row][width - 1].is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use poly_core::catalog::{choi_lam, motzkin};

    #[test]
    fn unfiltered_sizes() {
        assert_eq!(gram_basis(&motzkin(), false).unwrap().len(), 10);
        let quartic = Polynomial::from_int_terms(3, &[(1, &[4, 0, 0]), (1, &[0, 0, 0])]);
        assert_eq!(gram_basis(&quartic, false).unwrap().len(), 10);
        assert!(gram_basis(&Polynomial::var(2, 0), false).is_err());
        assert!(gram_basis(&Polynomial::zero(2), false).is_err());
    }

    #[test]
    fn newton_filter() {
        let x2 = Polynomial::from_int_terms(1, &[(1, &[2])]);
        let unfiltered = gram_basis(&x2, false).unwrap();
        assert_eq!(unfiltered.monomials(), &[Monomial::new(vec![0]), Monomial::new(vec![1])]);
        let filtered = gram_basis(&x2, true).unwrap();
        assert_eq!(filtered.monomials(), &[Monomial::new(vec![1])]);
        // Motzkin hull is the triangle (0,0),(4,2),(2,4): keeps 1, xy, x²y, xy²
        let mb = gram_basis(&motzkin(), true).unwrap();
        let exps: Vec<&[u32]> = mb.monomials().iter().map(|m| m.exponents()).collect();
        assert_eq!(exps, vec![&[0u32, 0][..], &[1, 1], &[1, 2], &[2, 1]]);
    }

    #[test]
    fn hull_membership() {
        let tri = vec![vec![0, 0], vec![4, 0], vec![0, 4]];
        assert!(in_convex_hull(&[1, 1], &tri));
        assert!(in_convex_hull(&[4, 0], &tri));
        assert!(in_convex_hull(&[2, 2], &tri));
        assert!(!in_convex_hull(&[3, 3], &tri));
        assert!(!in_convex_hull(&[-1, 0], &tri));
    }

    #[test]
    fn elimination_matches_filter() {
        for p in [motzkin(), choi_lam()] {
            let a = diagonal_elimination(&p, &gram_basis(&p, false).unwrap());
            let b = diagonal_elimination(&p, &gram_basis(&p, true).unwrap());
            assert_eq!(a, b);
        }
        let a = diagonal_elimination(&motzkin(), &gram_basis(&motzkin(), false).unwrap());
        assert_eq!(a.len(), 4);
    }
}
