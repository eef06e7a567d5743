//! Coefficient matching for Gram matrices and the face-restricted SDP.

use crate::basis::GramBasis;
use crate::exact::RatMatrix;
use crate::sdp::{self, SdpProblem, SdpSettings, SdpSolution, SdpStatus};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_rational::BigRational;
use num_traits::{One, Zero};
use poly_core::rational::{simplest_rational, to_f64};
use poly_core::{Monomial, Polynomial};
use std::collections::BTreeMap;

/// For each monomial `γ` reachable as a product of two basis monomials, the
/// index pairs `(i, j)`, `i ≤ j`, with `b_i·b_j = γ`.
#[derive(Debug, Clone)]
pub(crate) struct CoefficientMap {
    pub targets: Vec<Monomial>,
    pub pairs: Vec<Vec<(usize, usize)>>,
}

impl CoefficientMap {
    pub fn new(basis: &GramBasis) -> Self {
        let ms = basis.monomials();
        let mut by: BTreeMap<Monomial, Vec<(usize, usize)>> = BTreeMap::new();
        for i in 0..ms.len() {
            for j in i..ms.len() {
                by.entry(ms[i].mul(&ms[j])).or_default().push((i, j));
            }
        }
        let (targets, pairs) = by.into_iter().unzip();
        CoefficientMap { targets, pairs }
    }

    /// Monomials of `p` that no Gram matrix over this basis can produce.
    pub fn unreachable(&self, p: &Polynomial) -> Vec<Monomial> {
        p.terms()
            .map(|(m, _)| m.clone())
            .filter(|m| self.targets.binary_search(m).is_err())
            .collect()
    }

    pub fn rhs(&self, p: &Polynomial) -> Vec<BigRational> {
        self.targets.iter().map(|m| p.coefficient(m)).collect()
    }

    /// `⟨B_γ, Q⟩`, the coefficient of `γ` in `vᵀQv`.
    pub fn apply_exact(&self, q: &RatMatrix) -> Vec<BigRational> {
        self.pairs
            .iter()
            .map(|ps| {
                ps.iter().fold(BigRational::zero(), |s, &(i, j)| {
                    if i == j {
                        s + q.get(i, i)
                    } else {
                        s + q.get(i, j) + q.get(j, i)
                    }
                })
            })
            .collect()
    }
}

fn smat(v: &[f64], m: usize) -> DMatrix<f64> {
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = DMatrix::zeros(m, m);
    let mut idx = 0;
    for k in 0..m {
        for l in k..m {
            if k == l {
                out[(k, k)] = v[idx];
            } else {
                out[(k, l)] = v[idx] * r2;
                out[(l, k)] = v[idx] * r2;
            }
            idx += 1;
        }
    }
    out
}

fn svec(a: &DMatrix<f64>) -> Vec<f64> {
    let m = a.nrows();
    let s2 = std::f64::consts::SQRT_2;
    let mut out = Vec::with_capacity(m * (m + 1) / 2);
    for k in 0..m {
        for l in k..m {
            out.push(if k == l { a[(k, k)] } else { s2 * a[(k, l)] });
        }
    }
    out
}

/// Face `{U Q' Uᵀ}` of the Gram cone, with the affine coefficient
/// constraints eliminated: `Q' = Q0 + Σ z_j E_j`, `E_j` orthonormal.
#[derive(Debug, Clone)]
pub(crate) struct FaceProblem {
    pub q0: DMatrix<f64>,
    pub directions: Vec<DMatrix<f64>>,
    pub residual: f64,
}

impl FaceProblem {
    pub fn build(map: &CoefficientMap, rhs: &[f64], u: &DMatrix<f64>) -> Self {
        let n = u.nrows();
        let m = u.ncols();
        let dim = m * (m + 1) / 2;
        let rows = map.targets.len();
        let mut a = DMatrix::zeros(rows.max(dim), dim);
        for (r, ps) in map.pairs.iter().enumerate() {
            let mut bg = DMatrix::zeros(n, n);
            for &(i, j) in ps {
                bg[(i, j)] += 1.0;
                if i != j {
                    bg[(j, i)] += 1.0;
                }
            }
            let reduced = u.transpose() * bg * u;
            for (c, v) in svec(&reduced).into_iter().enumerate() {
                a[(r, c)] = v;
            }
        }
        let mut b = DVector::zeros(rows.max(dim));
        for (r, v) in rhs.iter().enumerate() {
            b[r] = *v;
        }
        if dim == 0 {
            return FaceProblem { q0: DMatrix::zeros(0, 0), directions: Vec::new(), residual: b.norm() };
        }
        let svd = a.clone().svd(true, true);
        let uu = svd.u.as_ref().expect("requested U");
        let vt = svd.v_t.as_ref().expect("requested Vᵀ");
        let smax = svd.singular_values.max();
        let cut = 1e-9 * smax.max(1e-300);
        let mut q0 = DVector::zeros(dim);
        let mut directions = Vec::new();
        for k in 0..dim {
            let s = svd.singular_values[k];
            let vk = vt.row(k).transpose();
            if s > cut {
                let coef = uu.column(k).dot(&b) / s;
                q0 += vk * coef;
            } else {
                directions.push(smat(vk.as_slice(), m));
            }
        }
        let residual = (&a * &q0 - &b).norm() / (1.0 + b.norm());
        FaceProblem { q0: smat(q0.as_slice(), m), directions, residual }
    }

    pub fn dim(&self) -> usize {
        self.q0.nrows()
    }

    /// `max λ  s.t.  Q0 + Σ z_j E_j − λI ⪰ 0`.
    pub fn solve(&self, settings: &SdpSettings) -> FaceSolution {
        let m = self.dim();
        let k = self.directions.len();
        let mut a: Vec<DMatrix<f64>> = self.directions.iter().map(|e| -e).collect();
        a.push(DMatrix::identity(m, m));
        let mut b = DVector::zeros(k + 1);
        b[k] = 1.0;
        let problem = SdpProblem { c: self.q0.clone(), a, b };
        let sol = sdp::solve(&problem, settings);
        FaceSolution::from_sdp(self, sol)
    }

    pub fn gram(&self, z: &[f64]) -> DMatrix<f64> {
        let mut q = self.q0.clone();
        for (e, zj) in self.directions.iter().zip(z) {
            q += e * *zj;
        }
        q
    }
}

#[derive(Debug, Clone)]
pub(crate) struct FaceSolution {
    pub status: SdpStatus,
    pub iterations: usize,
    /// Gram matrix in face coordinates.
    pub gram_face: DMatrix<f64>,
    /// Smallest eigenvalue of `gram_face`: a lower bound on the optimum.
    pub lower: f64,
    /// Upper bound from the projected primal matrix, when it is usable.
    pub upper: Option<f64>,
    pub dual_objective: f64,
}

impl FaceSolution {
    fn from_sdp(face: &FaceProblem, sol: SdpSolution) -> Self {
        let k = face.directions.len();
        let z: Vec<f64> = sol.y.iter().take(k).copied().collect();
        let gram_face = face.gram(&z);
        let gram_eig = SymmetricEigen::new(gram_face.clone());
        let lower = gram_eig.eigenvalues.min();
        // project X onto the orthogonal complement of the directions
        let mut xh = sol.x.clone();
        for e in &face.directions {
            let c: f64 = e.iter().zip(sol.x.iter()).map(|(a, b)| a * b).sum();
            xh -= e * c;
        }
        let xh = (&xh + xh.transpose()) * 0.5;
        // X̂ = X₊ − X₋. For any feasible Q, λ_min(Q)·tr X₊ ≤ ⟨Q0, X̂⟩ + ⟨Q, X₋⟩;
        // the last term is charged at the largest eigenvalue of the computed Q.
        let xeig = SymmetricEigen::new(xh.clone()).eigenvalues;
        let pos: f64 = xeig.iter().filter(|v| **v > 0.0).sum();
        let neg: f64 = -xeig.iter().filter(|v| **v < 0.0).sum::<f64>();
        let qmax = gram_eig.eigenvalues.max().max(0.0);
        let upper = (pos > 0.0 && neg <= 1e-4 * pos && sol.status != SdpStatus::NumericalFailure).then(|| {
            let v: f64 = face.q0.iter().zip(xh.iter()).map(|(a, b)| a * b).sum();
            ((v + qmax * neg) / pos).max(lower)
        });
        FaceSolution {
            status: sol.status,
            iterations: sol.iterations,
            gram_face,
            lower,
            upper,
            dual_objective: sol.dual_objective,
        }
    }

    /// Face eigenvectors whose eigenvalues are numerically zero relative to
    /// the largest one.
    pub fn near_kernel(&self, relative: f64) -> Vec<DVector<f64>> {
        let eig = SymmetricEigen::new(self.gram_face.clone());
        let top = eig.eigenvalues.iter().cloned().fold(0.0, f64::max).max(1e-300);
        (0..eig.eigenvalues.len())
            .filter(|&i| eig.eigenvalues[i] < relative * top)
            .map(|i| eig.eigenvectors.column(i).into_owned())
            .collect()
    }
}

pub(crate) fn rat_to_dmatrix(m: &RatMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| to_f64(m.get(i, j)))
}

/// Orthonormal float basis of the complement of `kernel` (exact rational
/// vectors of length `n`), plus the exact complement basis.
pub(crate) fn complement(n: usize, kernel: &[Vec<BigRational>]) -> (DMatrix<f64>, RatMatrix) {
    if kernel.is_empty() {
        let mut id = RatMatrix::zeros(n, n);
        for i in 0..n {
            id.set(i, i, BigRational::one());
        }
        return (DMatrix::identity(n, n), id);
    }
    let kt = RatMatrix::from_rows(kernel.to_vec());
    let ns = kt.nullspace();
    let cols = ns.len();
    let mut u = RatMatrix::zeros(n, cols);
    for (j, v) in ns.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            u.set(i, j, x.clone());
        }
    }
    if cols == 0 {
        return (DMatrix::zeros(n, 0), u);
    }
    let qr = rat_to_dmatrix(&u).qr();
    (qr.q(), u)
}

/// Rounds a numerically computed subspace (columns of `vectors`) to an
/// exact rational basis in reduced row echelon form, or `None` when the
/// rounding error exceeds `tol`.
pub(crate) fn rationalize_subspace(vectors: &[DVector<f64>], max_den: u64, tol: f64) -> Option<Vec<Vec<BigRational>>> {
    if vectors.is_empty() {
        return Some(Vec::new());
    }
    let n = vectors[0].len();
    let r = vectors.len();
    // rows = vectors
    let mut a = DMatrix::from_fn(r, n, |i, j| vectors[i][j]);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == r {
            break;
        }
        let (best, val) = (row..r)
            .map(|i| (i, a[(i, col)].abs()))
            .fold((row, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if val < 1e-8 {
            continue;
        }
        a.swap_rows(row, best);
        let p = a[(row, col)];
        for j in 0..n {
            a[(row, j)] /= p;
        }
        for i in 0..r {
            if i != row {
                let f = a[(i, col)];
                if f != 0.0 {
                    for j in 0..n {
                        a[(i, j)] -= f * a[(row, j)];
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() < r {
        return None;
    }
    let mut out = Vec::with_capacity(r);
    for i in 0..r {
        let mut v = Vec::with_capacity(n);
        for j in 0..n {
            let x = a[(i, j)];
            v.push(simplest_rational(x, tol, max_den)?);
        }
        out.push(v);
    }
    Some(out)
}

/// Exact rational basis of the span of `a ∪ b`, or `None` if `b` is not
/// independent of `a` (rank must grow by `b.len()`).
pub(crate) fn merge_kernels(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let mut all: Vec<Vec<BigRational>> = a.to_vec();
    all.extend(b.iter().cloned());
    if all.is_empty() {
        return all;
    }
    let mut m = RatMatrix::from_rows(all);
    let rank = m.rref().len();
    m.to_rows().into_iter().take(rank).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{diagonal_elimination, gram_basis};
    use poly_core::catalog::motzkin;
    use poly_core::{rat, ratio};

    #[test]
    fn map_covers_products() {
        let p = motzkin();
        let basis = diagonal_elimination(&p, &gram_basis(&p, false).unwrap());
        let map = CoefficientMap::new(&basis);
        assert!(map.unreachable(&p).is_empty());
        let odd = Polynomial::from_int_terms(2, &[(1, &[3, 0]), (1, &[6, 0]), (1, &[0, 0])]);
        let b2 = gram_basis(&odd, false).unwrap();
        assert!(CoefficientMap::new(&b2).unreachable(&odd).is_empty());
    }

    #[test]
    fn face_problem_reproduces_constraints() {
        let p = Polynomial::from_int_terms(1, &[(1, &[0]), (2, &[2]), (1, &[4])]);
        let basis = gram_basis(&p, false).unwrap();
        let map = CoefficientMap::new(&basis);
        let rhs: Vec<f64> = map.rhs(&p).iter().map(to_f64).collect();
        let face = FaceProblem::build(&map, &rhs, &DMatrix::identity(3, 3));
        assert!(face.residual < 1e-12);
        assert_eq!(face.directions.len(), 1);
        let sol = face.solve(&SdpSettings::default());
        assert_eq!(sol.status, SdpStatus::Converged);
        assert!(sol.lower > 0.1);
    }

    #[test]
    fn rounding_subspaces() {
        let v1 = DVector::from_vec(vec![3.0, 0.0, 2.0]) / 13f64.sqrt();
        let v2 = DVector::from_vec(vec![0.0, 1.0, -1.0 + 1e-12]);
        let r = rationalize_subspace(&[v1, v2], 10_000, 1e-7).unwrap();
        assert_eq!(r[0], vec![rat(1), rat(0), ratio(2, 3)]);
        assert_eq!(r[1], vec![rat(0), rat(1), rat(-1)]);
        let (u, exact) = complement(3, &r);
        assert_eq!(u.ncols(), 1);
        assert_eq!(exact.ncols(), 1);
    }
}
