use crate::basis::GramBasis;
use crate::error::SosError;
use crate::exact::{ldl_psd, RatMatrix};
use crate::gram::{complement, rationalize_subspace, CoefficientMap};
use crate::scaling::Scaling;
use crate::Result;
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_rational::BigRational;
use num_traits::Zero;
use poly_core::rational::{format_rational, round_to_rational, to_f64};
use poly_core::Polynomial;
use serde::{Deserialize, Serialize};

/// Gram matrix `Q` with `p = vᵀQv` over a monomial basis `v`.
///
/// `numeric` is what the solver produced. After a successful
/// [`certificate_validate`] the exact rational matrix is stored in `exact`
/// and `validated` is set.
#[derive(Debug, Clone)]
pub struct GramCertificate {
    pub basis: GramBasis,
    pub numeric: DMatrix<f64>,
    pub exact: Option<RatMatrix>,
    pub min_eigenvalue: f64,
    pub validated: bool,
    /// Exact vectors (over `basis`) known to lie in the kernel of `Q`.
    pub kernel: Vec<Vec<BigRational>>,
}

impl GramCertificate {
    pub fn numeric(basis: GramBasis, q: DMatrix<f64>, kernel: Vec<Vec<BigRational>>) -> Self {
        let min_eigenvalue = min_eig(&q);
        GramCertificate { basis, numeric: q, exact: None, min_eigenvalue, validated: false, kernel }
    }

    /// An unvalidated certificate carrying an exact matrix.
    pub fn exact(basis: GramBasis, q: RatMatrix) -> Result<Self> {
        if q.nrows() != basis.len() || q.ncols() != basis.len() {
            return Err(SosError::Structural(format!(
                "matrix is {}x{} but the basis has {} monomials",
                q.nrows(),
                q.ncols(),
                basis.len()
            )));
        }
        let numeric = crate::gram::rat_to_dmatrix(&q);
        let min_eigenvalue = min_eig(&numeric);
        Ok(GramCertificate { basis, numeric, exact: Some(q), min_eigenvalue, validated: false, kernel: Vec::new() })
    }

    /// Builds `Q = Σ c_k·l_k·l_kᵀ` from weighted squares `c_k·l_k(x)²`, each
    /// `l_k` a linear combination of basis monomials.
    pub fn from_squares(basis: GramBasis, squares: &[(BigRational, Polynomial)]) -> Result<Self> {
        let n = basis.len();
        let mut q = RatMatrix::zeros(n, n);
        for (c, l) in squares {
            let mut coords = vec![BigRational::zero(); n];
            for (m, v) in l.terms() {
                let i = basis
                    .index_of(m)
                    .ok_or_else(|| SosError::Structural(format!("monomial {m:?} is not in the basis")))?;
                coords[i] = v.clone();
            }
            for i in 0..n {
                if coords[i].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if coords[j].is_zero() {
                        continue;
                    }
                    let v = q.get(i, j) + c * &coords[i] * &coords[j];
                    q.set(i, j, v);
                }
            }
        }
        Self::exact(basis, q)
    }

    /// Expands `vᵀQv` using the exact matrix.
    pub fn polynomial(&self) -> Option<Polynomial> {
        let q = self.exact.as_ref()?;
        let ms = self.basis.monomials();
        let mut p = Polynomial::zero(self.basis.nvars());
        for i in 0..ms.len() {
            for j in 0..ms.len() {
                p.add_term(ms[i].mul(&ms[j]), q.get(i, j).clone());
            }
        }
        Some(p)
    }

    pub fn to_doc(&self) -> CertificateDoc {
        let n = self.basis.len();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match &self.exact {
                        Some(q) => format_rational(q.get(i, j)),
                        None => format!("{:e}", self.numeric[(i, j)]),
                    })
                    .collect()
            })
            .collect();
        CertificateDoc {
            basis: self.basis.monomials().iter().map(|m| m.exponents().to_vec()).collect(),
            matrix,
            min_eigenvalue: format!("{:e}", self.min_eigenvalue),
            validated: self.validated,
            kernel: self.kernel.iter().map(|v| v.iter().map(format_rational).collect()).collect(),
        }
    }
}

/// JSON form of a certificate. Matrix entries are `"p/q"` strings once
/// validated, decimal floats otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateDoc {
    pub basis: Vec<Vec<u32>>,
    pub matrix: Vec<Vec<String>>,
    pub min_eigenvalue: String,
    pub validated: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub kernel: Vec<Vec<String>>,
}

impl CertificateDoc {
    /// Rebuilds a certificate; rational entries give an exact matrix.
    pub fn to_certificate(&self) -> Result<GramCertificate> {
        let nvars = self.basis.first().map_or(1, Vec::len);
        let basis = GramBasis::new(nvars, self.basis.iter().cloned().map(Into::into).collect())?;
        if basis.len() != self.basis.len() {
            return Err(SosError::Structural("duplicate or unsorted basis monomials".into()));
        }
        let rows = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|s| poly_core::parse_rational(s)).collect::<std::result::Result<Vec<_>, _>>())
            .collect::<std::result::Result<Vec<_>, _>>();
        let kernel = self
            .kernel
            .iter()
            .map(|row| row.iter().map(|s| poly_core::parse_rational(s)).collect::<std::result::Result<Vec<_>, _>>())
            .collect::<std::result::Result<Vec<_>, _>>()?;
        match rows {
            Ok(rows) => {
                let mut c = GramCertificate::exact(basis, RatMatrix::from_rows(rows))?;
                c.kernel = kernel;
                Ok(c)
            }
            Err(_) => {
                let n = self.matrix.len();
                let mut q = DMatrix::zeros(n, n);
                for (i, row) in self.matrix.iter().enumerate() {
                    if row.len() != n {
                        return Err(SosError::Structural("matrix is not square".into()));
                    }
                    for (j, s) in row.iter().enumerate() {
                        q[(i, j)] = s
                            .parse::<f64>()
                            .map_err(|_| SosError::Structural(format!("bad matrix entry {s:?}")))?;
                    }
                }
                if n != basis.len() {
                    return Err(SosError::Structural("matrix size does not match the basis".into()));
                }
                Ok(GramCertificate::numeric(basis, q, kernel))
            }
        }
    }
}

fn min_eig(q: &DMatrix<f64>) -> f64 {
    if q.nrows() == 0 {
        return 0.0;
    }
    SymmetricEigen::new((q + q.transpose()) * 0.5).eigenvalues.min()
}

/// Exact check that `q` is PSD and reproduces `p` coefficient by coefficient.
fn check_exact(p: &Polynomial, map: &CoefficientMap, q: &RatMatrix) -> bool {
    if !q.is_symmetric() || !map.unreachable(p).is_empty() {
        return false;
    }
    map.apply_exact(q) == map.rhs(p) && ldl_psd(q).psd
}

/// Rounds a numeric Gram matrix (restricted to the complement of an exact
/// kernel) to rationals, projects it onto the coefficient-matching subspace
/// and tests it exactly. Returns the exact matrix on success.
///
/// Small entries lose most of their value under a coarse denominator bound,
/// so a failed attempt is retried with bounds up to 10¹².
pub(crate) fn round_and_project(
    p: &Polynomial,
    basis: &GramBasis,
    q: &DMatrix<f64>,
    kernel: &[Vec<BigRational>],
    max_den: u64,
) -> Option<RatMatrix> {
    let mut den = max_den.max(1);
    loop {
        if let Some(exact) = round_and_project_at(p, basis, q, kernel, den) {
            return Some(exact);
        }
        if den >= 1_000_000_000_000 {
            return None;
        }
        den = den.saturating_mul(1000).min(1_000_000_000_000);
    }
}

fn round_and_project_at(
    p: &Polynomial,
    basis: &GramBasis,
    q: &DMatrix<f64>,
    kernel: &[Vec<BigRational>],
    max_den: u64,
) -> Option<RatMatrix> {
    let map = CoefficientMap::new(basis);
    if !map.unreachable(p).is_empty() {
        return None;
    }
    let n = basis.len();
    let (_, u) = complement(n, kernel);
    let m = u.ncols();
    let uf = crate::gram::rat_to_dmatrix(&u);
    // W = P Q Pᵀ with P = (UᵀU)⁻¹Uᵀ
    let utu = uf.transpose() * &uf;
    let p_left = utu.try_inverse()? * uf.transpose();
    let w = &p_left * q * p_left.transpose();
    let mut w_exact = RatMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let v = round_to_rational(0.5 * (w[(i, j)] + w[(j, i)]), max_den)?;
            w_exact.set(i, j, v.clone());
            w_exact.set(j, i, v);
        }
    }
    // coefficient of W_kl (k ≤ l) in target γ is ⟨UᵀB_γU⟩_kl, doubled off the diagonal
    let upper: Vec<(usize, usize)> = (0..m).flat_map(|k| (k..m).map(move |l| (k, l))).collect();
    let rows: Vec<Vec<BigRational>> = map
        .pairs
        .iter()
        .map(|ps| {
            let mut mg = RatMatrix::zeros(m, m);
            for &(i, j) in ps {
                for k in 0..m {
                    let uik = u.get(i, k);
                    let ujk = u.get(j, k);
                    if uik.is_zero() && ujk.is_zero() {
                        continue;
                    }
                    for l in 0..m {
                        let mut add = uik * u.get(j, l);
                        if i != j {
                            add += ujk * u.get(i, l);
                        }
                        if !add.is_zero() {
                            let v = mg.get(k, l) + add;
                            mg.set(k, l, v);
                        }
                    }
                }
            }
            upper
                .iter()
                .map(|&(k, l)| {
                    if k == l {
                        mg.get(k, k).clone()
                    } else {
                        mg.get(k, l) + mg.get(l, k)
                    }
                })
                .collect()
        })
        .collect();
    let a = RatMatrix::from_rows(rows);
    let wvec: Vec<BigRational> = upper.iter().map(|&(k, l)| w_exact.get(k, l).clone()).collect();
    let b = map.rhs(p);
    let r: Vec<BigRational> = b.iter().zip(a.mul_vec(&wvec)).map(|(bi, ai)| bi - ai).collect();
    if r.iter().any(|v| !v.is_zero()) {
        // least-norm correction Δ = Aᵀy with (AAᵀ)y = r
        let at = a.transpose();
        let y = a.mul(&at).solve(&r)?;
        let delta = at.mul_vec(&y);
        for (idx, &(k, l)) in upper.iter().enumerate() {
            let v = w_exact.get(k, l) + &delta[idx];
            w_exact.set(k, l, v.clone());
            w_exact.set(l, k, v);
        }
    }
    if !ldl_psd(&w_exact).psd {
        return None;
    }
    let full = u.mul(&w_exact).mul(&u.transpose());
    check_exact(p, &map, &full).then_some(full)
}

/// Exact certification. A certificate that already holds an exact matrix is
/// checked as is; a numeric one is rounded (continued fractions, bounded
/// denominators), projected onto the coefficient constraints and checked
/// with a rational `LDLᵀ`. On success the certificate is marked validated.
pub fn certificate_validate(p: &Polynomial, cert: &mut GramCertificate) -> Result<bool> {
    certificate_validate_with(p, cert, 1_000_000)
}

pub fn certificate_validate_with(p: &Polynomial, cert: &mut GramCertificate, max_den: u64) -> Result<bool> {
    let n = cert.basis.len();
    if cert.basis.nvars() != p.nvars() {
        return Err(SosError::Structural(format!(
            "basis has {} variables, polynomial has {}",
            cert.basis.nvars(),
            p.nvars()
        )));
    }
    if cert.numeric.nrows() != n || cert.numeric.ncols() != n {
        return Err(SosError::Structural("matrix size does not match the basis".into()));
    }
    if let Some(k) = cert.kernel.iter().find(|k| k.len() != n) {
        return Err(SosError::Structural(format!("kernel vector of length {} for basis of {n}", k.len())));
    }
    if let Some(q) = &cert.exact {
        let ok = check_exact(p, &CoefficientMap::new(&cert.basis), q);
        cert.validated = ok;
        return Ok(ok);
    }
    if p.is_zero() {
        return Ok(false);
    }
    // validate in scaled coordinates, where entries are O(1)
    let scaling = Scaling::for_polynomial(p);
    let scaled = scaling.apply(p);
    let d = scaling.diagonal(&cert.basis);
    let sf = to_f64(&scaling.factor);
    let df: Vec<f64> = d.iter().map(to_f64).collect();
    let q_scaled = DMatrix::from_fn(n, n, |i, j| cert.numeric[(i, j)] / (sf * df[i] * df[j]));
    let kernel_scaled: Vec<Vec<BigRational>> = cert
        .kernel
        .iter()
        .map(|k| k.iter().zip(&d).map(|(v, di)| v / di).collect())
        .collect();
    let mut attempts = vec![kernel_scaled];
    let detected: Vec<DVector<f64>> = {
        let eig = SymmetricEigen::new((&q_scaled + q_scaled.transpose()) * 0.5);
        let top = eig.eigenvalues.iter().cloned().fold(0.0, f64::max).max(1e-300);
        (0..n)
            .filter(|&i| eig.eigenvalues[i] < 1e-7 * top)
            .map(|i| eig.eigenvectors.column(i).into_owned())
            .collect()
    };
    if !detected.is_empty() {
        if let Some(k) = rationalize_subspace(&detected, 10_000, 1e-4) {
            attempts.push(k);
        }
    }
    for kernel in attempts {
        if let Some(exact) = round_and_project(&scaled, &cert.basis, &q_scaled, &kernel, max_den) {
            let mut q = RatMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    q.set(i, j, exact.get(i, j) * &scaling.factor * &d[i] * &d[j]);
                }
            }
            let map = CoefficientMap::new(&cert.basis);
            if check_exact(p, &map, &q) {
                cert.numeric = crate::gram::rat_to_dmatrix(&q);
                cert.min_eigenvalue = min_eig(&cert.numeric);
                cert.exact = Some(q);
                cert.validated = true;
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use poly_core::{rat, ratio, Monomial};

    #[test]
    fn trivial_square() {
        let p = Polynomial::from_int_terms(1, &[(1, &[2])]);
        let basis = GramBasis::new(1, vec![Monomial::new(vec![1])]).unwrap();
        let mut cert = GramCertificate::exact(basis.clone(), RatMatrix::from_rows(vec![vec![rat(1)]])).unwrap();
        assert!(certificate_validate(&p, &mut cert).unwrap());
        assert!(cert.validated);
        let mut numeric = GramCertificate::numeric(basis, DMatrix::from_element(1, 1, 1.0 + 1e-11), vec![]);
        assert!(certificate_validate(&p, &mut numeric).unwrap());
        assert_eq!(numeric.exact.unwrap().get(0, 0), &rat(1));
    }

    #[test]
    fn projection_repairs_small_errors() {
        // 1 + 2x² + x⁴ with a perturbed Gram matrix over {1, x, x²}
        let p = Polynomial::from_int_terms(1, &[(1, &[0]), (2, &[2]), (1, &[4])]);
        let basis = GramBasis::new(1, (0..3).map(|e| Monomial::new(vec![e])).collect()).unwrap();
        let q = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.3, 0.0, 1.4 + 3e-9, 0.0, 0.3, 0.0, 1.0 - 1e-9]);
        let mut cert = GramCertificate::numeric(basis, q, vec![]);
        assert!(certificate_validate(&p, &mut cert).unwrap());
        let exact = cert.exact.as_ref().unwrap();
        assert_eq!(exact.get(0, 2), &ratio(3, 10));
        assert_eq!(cert.polynomial().unwrap(), p);
    }

    #[test]
    fn rejects_indefinite_and_mismatched() {
        let p = Polynomial::from_int_terms(1, &[(1, &[0]), (-3, &[2]), (1, &[4])]);
        let basis = GramBasis::new(1, (0..3).map(|e| Monomial::new(vec![e])).collect()).unwrap();
        let q = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, -3.0, 0.0, 0.0, 0.0, 1.0]);
        let mut cert = GramCertificate::numeric(basis.clone(), q, vec![]);
        assert!(!certificate_validate(&p, &mut cert).unwrap());
        let mut wrong = GramCertificate::numeric(basis, DMatrix::zeros(2, 2), vec![]);
        assert!(certificate_validate(&p, &mut wrong).is_err());
    }
}
