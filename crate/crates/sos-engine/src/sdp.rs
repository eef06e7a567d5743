//! Dense primal-dual interior-point method for small semidefinite programs.
//!
//! Primal: `min ⟨C,X⟩  s.t. ⟨A_i,X⟩ = b_i, X ⪰ 0`
//! Dual:   `max bᵀy    s.t. Z = C − Σ y_i A_i ⪰ 0`
//!
//! Infeasible start, HKM search direction, Mehrotra predictor-corrector.

use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};

#[derive(Debug, Clone)]
pub struct SdpProblem {
    pub c: DMatrix<f64>,
    pub a: Vec<DMatrix<f64>>,
    pub b: DVector<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct SdpSettings {
    pub max_iterations: usize,
    pub tolerance: f64,
    /// Looser level accepted when progress stalls at floating-point limits.
    pub acceptable: f64,
    pub step_fraction: f64,
}

impl Default for SdpSettings {
    fn default() -> Self {
        SdpSettings { max_iterations: 100, tolerance: 1e-10, acceptable: 1e-7, step_fraction: 0.95 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdpStatus {
    Converged,
    MaxIterations,
    NumericalFailure,
}

#[derive(Debug, Clone)]
pub struct SdpSolution {
    pub status: SdpStatus,
    pub x: DMatrix<f64>,
    pub y: DVector<f64>,
    pub z: DMatrix<f64>,
    pub primal_objective: f64,
    pub dual_objective: f64,
    pub iterations: usize,
    pub primal_residual: f64,
    pub dual_residual: f64,
}

fn inner(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

fn sym(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

/// Largest `α ≤ 1` keeping `X + α·dX` positive definite, damped by
/// `fraction`.
fn max_step(x: &DMatrix<f64>, dx: &DMatrix<f64>, fraction: f64) -> Option<f64> {
    let l = Cholesky::new(x.clone())?.l();
    let linv = l.clone().try_inverse()?;
    let m = sym(&(&linv * dx * linv.transpose()));
    let min = SymmetricEigen::new(m).eigenvalues.min();
    Some(if min >= 0.0 { 1.0 } else { (-fraction / min).min(1.0) })
}

pub fn solve(p: &SdpProblem, settings: &SdpSettings) -> SdpSolution {
    let n = p.c.nrows();
    let m = p.a.len();
    let apply = |x: &DMatrix<f64>| DVector::from_iterator(m, p.a.iter().map(|ai| inner(ai, x)));
    let adjoint = |y: &DVector<f64>| {
        let mut s = DMatrix::zeros(n, n);
        for (ai, yi) in p.a.iter().zip(y.iter()) {
            s += ai * *yi;
        }
        s
    };

    let norm_c = p.c.norm();
    let norm_b = p.b.norm();
    let max_a = p.a.iter().map(|a| a.norm()).fold(0.0, f64::max);
    let sqn = (n as f64).sqrt();
    let xi = p
        .a
        .iter()
        .zip(p.b.iter())
        .map(|(a, b)| sqn * (1.0 + b.abs()) / (1.0 + a.norm()))
        .fold(sqn.max(10.0), f64::max);
    let eta = (1.0 + max_a.max(norm_c)) / sqn;
    let eta = eta.max(sqn).max(10.0);

    let mut x = DMatrix::identity(n, n) * xi;
    let mut z = DMatrix::identity(n, n) * eta;
    let mut y = DVector::zeros(m);
    let mut status = SdpStatus::MaxIterations;
    let mut iterations = 0;
    let mut worst = f64::INFINITY;

    for it in 0..settings.max_iterations {
        iterations = it;
        let rp = &p.b - apply(&x);
        let rd = &p.c - &z - adjoint(&y);
        let pobj = inner(&p.c, &x);
        let dobj = p.b.dot(&y);
        let mu = inner(&x, &z) / n as f64;
        let gap = (pobj - dobj).abs() / (1.0 + pobj.abs() + dobj.abs());
        let pres = rp.norm() / (1.0 + norm_b);
        let dres = rd.norm() / (1.0 + norm_c);
        worst = gap.max(pres).max(dres);
        if worst < settings.tolerance {
            status = SdpStatus::Converged;
            break;
        }

        let Some(zchol) = Cholesky::new(z.clone()) else {
            status = SdpStatus::NumericalFailure;
            break;
        };
        let zinv = zchol.inverse();
        // G_j = X A_j Z⁻¹, Schur complement M_ij = ⟨A_i, G_j⟩
        let g: Vec<DMatrix<f64>> = p.a.iter().map(|aj| &x * aj * &zinv).collect();
        let mut schur = DMatrix::zeros(m, m);
        for i in 0..m {
            for j in i..m {
                let v = inner(&p.a[i], &g[j]);
                schur[(i, j)] = v;
                schur[(j, i)] = v;
            }
        }
        let Some(schur_chol) = Cholesky::new(schur.clone()).or_else(|| {
            let eps = 1e-14 * schur.diagonal().max().max(1.0);
            Cholesky::new(schur + DMatrix::identity(m, m) * eps)
        }) else {
            status = SdpStatus::NumericalFailure;
            break;
        };

        let x_rd_zinv = &x * &rd * &zinv;
        let direction = |r: &DMatrix<f64>| {
            let rhs = &rp - apply(&(r * &zinv)) + apply(&x_rd_zinv);
            let dy = schur_chol.solve(&rhs);
            let dz = &rd - adjoint(&dy);
            let dx = sym(&((r - &x * &dz) * &zinv));
            (dx, dy, dz)
        };

        let xz = &x * &z;
        let (dx_aff, _, dz_aff) = direction(&(-&xz));
        let (Some(ap), Some(ad)) = (max_step(&x, &dx_aff, 1.0), max_step(&z, &dz_aff, 1.0)) else {
            status = SdpStatus::NumericalFailure;
            break;
        };
        let mu_aff = inner(&(&x + &dx_aff * ap), &(&z + &dz_aff * ad)) / n as f64;
        let sigma = (mu_aff / mu).powi(3).clamp(0.0, 1.0);

        let r = DMatrix::identity(n, n) * (sigma * mu) - &xz - &dx_aff * &dz_aff;
        let (dx, dy, dz) = direction(&r);
        let (Some(ap), Some(ad)) = (
            max_step(&x, &dx, settings.step_fraction),
            max_step(&z, &dz, settings.step_fraction),
        ) else {
            status = SdpStatus::NumericalFailure;
            break;
        };
        x += &dx * ap;
        y += &dy * ad;
        z += &dz * ad;
        x = sym(&x);
        z = sym(&z);
    }

    if status != SdpStatus::Converged && worst < settings.acceptable {
        status = SdpStatus::Converged;
    }
    let rp = &p.b - apply(&x);
    let rd = &p.c - &z - adjoint(&y);
    SdpSolution {
        status,
        primal_objective: inner(&p.c, &x),
        dual_objective: p.b.dot(&y),
        primal_residual: rp.norm() / (1.0 + norm_b),
        dual_residual: rd.norm() / (1.0 + norm_c),
        x,
        y,
        z,
        iterations,
    }
}
