use crate::basis::{diagonal_elimination, gram_basis, half_degree, GramBasis};
use crate::certificate::{round_and_project, GramCertificate};
use crate::exact::RatMatrix;
use crate::gram::{complement, merge_kernels, rationalize_subspace, CoefficientMap, FaceProblem};
use crate::scaling::Scaling;
use crate::sdp::{SdpSettings, SdpStatus};
use crate::Result;
use nalgebra::{DMatrix, DVector};
use num_rational::BigRational;
use num_traits::Zero;
use poly_core::rational::to_f64;
use poly_core::{Monomial, Polynomial};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SosStatus {
    Sos,
    NotSos,
    Obstructed,
    Inconclusive,
}

impl std::fmt::Display for SosStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SosStatus::Sos => "SOS",
            SosStatus::NotSos => "NOT_SOS",
            SosStatus::Obstructed => "OBSTRUCTED",
            SosStatus::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SosVerdict {
    pub status: SosStatus,
    pub certificate: Option<GramCertificate>,
    /// Optimal smallest eigenvalue of the normalized Gram problem,
    /// restricted to the complement of kernel directions every Gram matrix
    /// must have. A lower bound for SOS, an upper bound for NOT_SOS.
    pub margin: f64,
    pub iterations: usize,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct SosOptions {
    pub tolerance: f64,
    pub newton_filter: bool,
    pub sdp: SdpSettings,
    /// Denominator bound when rounding Gram entries.
    pub max_denominator: u64,
    /// Denominator bound when rounding kernel vectors.
    pub kernel_denominator: u64,
    /// Largest rounding error accepted per kernel entry.
    pub kernel_tolerance: f64,
    /// Relative eigenvalue cut-off for numerical kernel vectors.
    pub kernel_threshold: f64,
    /// Facial-reduction rounds attempted inside the inconclusive band.
    pub boundary_rounds: usize,
}

impl Default for SosOptions {
    fn default() -> Self {
        SosOptions {
            tolerance: 1e-9,
            newton_filter: false,
            sdp: SdpSettings::default(),
            max_denominator: 1_000_000,
            kernel_denominator: 10_000,
            kernel_tolerance: 1e-4,
            kernel_threshold: 1e-6,
            boundary_rounds: 3,
        }
    }
}

impl SosOptions {
    pub fn with_tolerance(tolerance: f64) -> Self {
        SosOptions { tolerance, ..Default::default() }
    }
}

/// Outcome of the SOS test on the top-degree homogeneous part. Its kernel
/// directions are shared by every Gram matrix of any polynomial with the
/// same top part, so it can be reused across a family such as a heat flow.
#[derive(Debug, Clone)]
pub struct TopAnalysis {
    pub status: SosStatus,
    pub margin: f64,
    half_degree: u32,
    basis: Vec<Monomial>,
    kernel: Vec<Vec<(Monomial, BigRational)>>,
}

impl TopAnalysis {
    pub fn kernel_dimension(&self) -> usize {
        self.kernel.len()
    }

    /// Forced kernel vectors over `basis`: monomials of top half-degree the
    /// top problem eliminated, plus the lifted top kernel.
    fn lift(&self, basis: &GramBasis) -> Vec<Vec<BigRational>> {
        let n = basis.len();
        let mut out = Vec::new();
        for (i, m) in basis.monomials().iter().enumerate() {
            if m.degree() == self.half_degree && self.basis.binary_search(m).is_err() {
                let mut v = vec![BigRational::zero(); n];
                v[i] = BigRational::from_integer(1.into());
                out.push(v);
            }
        }
        for k in &self.kernel {
            let mut v = vec![BigRational::zero(); n];
            for (m, c) in k {
                if let Some(i) = basis.index_of(m) {
                    v[i] = c.clone();
                }
            }
            if v.iter().any(|x| !x.is_zero()) {
                out.push(v);
            }
        }
        merge_kernels(&[], &out)
    }
}

struct Decision {
    status: SosStatus,
    margin: f64,
    gram: Option<DMatrix<f64>>,
    exact: Option<RatMatrix>,
    kernel: Vec<Vec<BigRational>>,
    iterations: usize,
    diagnostics: Vec<String>,
}

/// Max-margin Gram problem for `p` over `basis`, restricted to the face
/// orthogonal to `forced`. Inside the tolerance band the numerical kernel is
/// rounded and the face shrunk; a positive margin there only counts once the
/// resulting certificate validates exactly.
fn decide(p: &Polynomial, basis: &GramBasis, forced: Vec<Vec<BigRational>>, opts: &SosOptions) -> Decision {
    let tol = opts.tolerance;
    let mut d = Decision {
        status: SosStatus::Inconclusive,
        margin: 0.0,
        gram: None,
        exact: None,
        kernel: forced.clone(),
        iterations: 0,
        diagnostics: Vec::new(),
    };
    let map = CoefficientMap::new(basis);
    let unreachable = map.unreachable(p);
    if !unreachable.is_empty() {
        d.status = SosStatus::NotSos;
        d.margin = f64::NEG_INFINITY;
        d.diagnostics.push(format!("monomial {:?} cannot appear in any Gram expansion", unreachable[0]));
        return d;
    }
    let rhs: Vec<f64> = map.rhs(p).iter().map(to_f64).collect();
    let n = basis.len();
    let mut kernel = forced;
    for round in 0..=opts.boundary_rounds {
        let (u, _) = complement(n, &kernel);
        let face = FaceProblem::build(&map, &rhs, &u);
        if u.ncols() == 0 || face.residual > 1e-8 {
            d.diagnostics.push(format!("no Gram matrix on the face (residual {:.2e})", face.residual));
            if round == 0 {
                d.status = SosStatus::NotSos;
                d.margin = f64::NEG_INFINITY;
            }
            return d;
        }
        let sol = face.solve(&opts.sdp);
        d.iterations += sol.iterations;
        d.margin = sol.lower.max(sol.dual_objective.min(tol));
        if sol.status != SdpStatus::Converged {
            d.diagnostics.push(format!("interior-point solver stopped: {:?} after {} iterations", sol.status, sol.iterations));
        }
        let gram = &u * &sol.gram_face * u.transpose();
        if sol.lower > tol {
            d.margin = sol.lower;
            if round == 0 {
                d.status = SosStatus::Sos;
                d.gram = Some(gram);
                d.kernel = kernel;
                return d;
            }
            match round_and_project(p, basis, &gram, &kernel, opts.max_denominator) {
                Some(exact) => {
                    d.status = SosStatus::Sos;
                    d.gram = Some(crate::gram::rat_to_dmatrix(&exact));
                    d.exact = Some(exact);
                    d.kernel = kernel;
                    d.diagnostics.push(format!("boundary certificate validated after {round} reduction(s)"));
                }
                None => {
                    d.diagnostics.push("boundary face found but its certificate failed exact validation".into());
                }
            }
            return d;
        }
        if round == 0 && sol.lower > 0.0 {
            // positive but inside the band: an exact certificate still settles it
            if let Some(exact) = round_and_project(p, basis, &gram, &kernel, opts.max_denominator) {
                d.status = SosStatus::Sos;
                d.margin = sol.lower;
                d.gram = Some(crate::gram::rat_to_dmatrix(&exact));
                d.exact = Some(exact);
                d.kernel = kernel;
                d.diagnostics.push("margin below tolerance but the certificate validated exactly".into());
                return d;
            }
        }
        if round == 0 {
            if let Some(upper) = sol.upper {
                if upper < -tol {
                    d.status = SosStatus::NotSos;
                    d.margin = upper;
                    return d;
                }
            }
        } else {
            // a face guessed from numerical kernels cannot certify a negative
            if sol.upper.is_some_and(|u| u < -tol) {
                d.diagnostics.push("reduced face is infeasible; numerical kernel rejected".into());
                return d;
            }
        }
        if round == opts.boundary_rounds {
            break;
        }
        let fresh = sol.near_kernel(opts.kernel_threshold);
        if fresh.is_empty() {
            d.diagnostics.push("margin within tolerance but no numerical kernel".into());
            break;
        }
        let mut vectors: Vec<DVector<f64>> = kernel
            .iter()
            .map(|k| DVector::from_iterator(n, k.iter().map(to_f64)))
            .collect();
        vectors.extend(fresh.iter().map(|v| &u * v));
        let Some(rounded) = rationalize_subspace(&vectors, opts.kernel_denominator, opts.kernel_tolerance) else {
            d.diagnostics.push("numerical kernel is not close to a rational subspace".into());
            break;
        };
        if merge_kernels(&rounded, &kernel).len() != rounded.len() {
            d.diagnostics.push("rounded kernel lost a forced direction".into());
            break;
        }
        kernel = rounded;
    }
    d.status = SosStatus::Inconclusive;
    d
}

fn to_original(scaling: &Scaling, basis: &GramBasis, d: Decision) -> (Option<GramCertificate>, Vec<String>) {
    let Some(gram) = d.gram else {
        return (None, d.diagnostics);
    };
    let diag = scaling.diagonal(basis);
    let df: Vec<f64> = diag.iter().map(to_f64).collect();
    let s = to_f64(&scaling.factor);
    let n = basis.len();
    let q = DMatrix::from_fn(n, n, |i, j| s * df[i] * df[j] * gram[(i, j)]);
    let kernel: Vec<Vec<BigRational>> = d
        .kernel
        .iter()
        .map(|k| k.iter().zip(&diag).map(|(v, di)| v / di).collect())
        .collect();
    let mut cert = GramCertificate::numeric(basis.clone(), q, merge_kernels(&[], &kernel));
    if let Some(exact) = d.exact {
        let mut qe = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                qe.set(i, j, exact.get(i, j) * &scaling.factor * &diag[i] * &diag[j]);
            }
        }
        cert.numeric = crate::gram::rat_to_dmatrix(&qe);
        cert.exact = Some(qe);
        cert.validated = true;
    }
    (Some(cert), d.diagnostics)
}

/// SOS test of the top-degree homogeneous part of `p`.
pub fn analyze_top(p: &Polynomial, opts: &SosOptions) -> Result<TopAnalysis> {
    let half = half_degree(p)?;
    let top = p.homogeneous_part(2 * half);
    let scaling = Scaling::for_polynomial(&top);
    let scaled = scaling.apply(&top);
    let basis = diagonal_elimination(&scaled, &gram_basis(&scaled, opts.newton_filter)?);
    let d = decide(&scaled, &basis, Vec::new(), opts);
    let kernel = if d.status == SosStatus::Sos {
        // homogeneous scaling multiplies every top monomial alike, so kernel
        // directions carry over unchanged
        d.kernel
            .iter()
            .map(|k| {
                basis
                    .monomials()
                    .iter()
                    .zip(k)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(m, c)| (m.clone(), c.clone()))
                    .collect()
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(TopAnalysis {
        status: d.status,
        margin: d.margin,
        half_degree: half,
        basis: basis.monomials().to_vec(),
        kernel,
    })
}

/// Decides whether `p` is a sum of squares with the default options and the
/// given classification tolerance.
pub fn sos_feasibility(p: &Polynomial, tolerance: f64) -> Result<SosVerdict> {
    sos_feasibility_with(p, &SosOptions::with_tolerance(tolerance))
}

pub fn sos_feasibility_with(p: &Polynomial, opts: &SosOptions) -> Result<SosVerdict> {
    half_degree(p)?;
    if p.is_homogeneous() {
        return solve_with_top(p, opts, None);
    }
    let top = analyze_top(p, opts)?;
    solve_with_top(p, opts, Some(&top))
}

/// As [`sos_feasibility_with`], reusing a top-part analysis computed for a
/// polynomial with the same top-degree part.
pub fn sos_feasibility_with_top(p: &Polynomial, opts: &SosOptions, top: &TopAnalysis) -> Result<SosVerdict> {
    let half = half_degree(p)?;
    if half != top.half_degree {
        return Err(crate::SosError::Structural("top analysis belongs to a different degree".into()));
    }
    if p.is_homogeneous() {
        return solve_with_top(p, opts, None);
    }
    solve_with_top(p, opts, Some(top))
}

fn solve_with_top(p: &Polynomial, opts: &SosOptions, top: Option<&TopAnalysis>) -> Result<SosVerdict> {
    let mut diagnostics = Vec::new();
    if let Some(top) = top {
        match top.status {
            SosStatus::NotSos => {
                return Ok(SosVerdict {
                    status: SosStatus::Obstructed,
                    certificate: None,
                    margin: top.margin,
                    iterations: 0,
                    diagnostics: vec!["top-degree part is not a sum of squares".into()],
                });
            }
            SosStatus::Inconclusive => diagnostics.push("top-degree part test was inconclusive".into()),
            _ => {}
        }
    }
    let scaling = Scaling::for_polynomial(p);
    let scaled = scaling.apply(p);
    let basis = diagonal_elimination(&scaled, &gram_basis(&scaled, opts.newton_filter)?);
    let forced = match top {
        Some(t) if t.status == SosStatus::Sos => t.lift(&basis),
        _ => Vec::new(),
    };
    let decision = decide(&scaled, &basis, forced, opts);
    let status = decision.status;
    let margin = decision.margin;
    let iterations = decision.iterations;
    let (certificate, more) = to_original(&scaling, &basis, decision);
    diagnostics.extend(more);
    Ok(SosVerdict {
        status,
        certificate: if status == SosStatus::Sos { certificate } else { None },
        margin,
        iterations,
        diagnostics,
    })
}

/// True iff the top-degree homogeneous part of `f` is not a sum of squares,
/// which rules out SOS for every heat evolution of `f`.
pub fn highest_degree_obstruction(f: &Polynomial, tolerance: f64) -> Result<bool> {
    let half = half_degree(f)?;
    let top = f.homogeneous_part(2 * half);
    Ok(sos_feasibility(&top, tolerance)?.status == SosStatus::NotSos)
}
