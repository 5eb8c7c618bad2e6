//! Response simulation under Y = Fβ + Zγ + ε and main-effect estimation via
//! the reduced normal equations (F⊤PF)β̂ = F⊤Py, P the within-block projector.
//!
//! Noise is ChaCha8 with one stream per replication (seed, replication index),
//! drawn through `StandardNormal`, so results do not depend on thread scheduling.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::design_core::BlockedDesign;
use crate::error::{Error, Result};
use crate::info_matrix::{compute_info, unblocked_info, InfoMatrix};
use crate::rational::{self, int, Rational};

/// Parameters of the linear block model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Main effects β (length K).
    pub beta: Vec<f64>,
    /// Block effects γ (length b).
    pub gamma: Vec<f64>,
    /// Noise standard deviation σ ≥ 0.
    pub sigma: f64,
    /// Seed of the noise generator.
    pub seed: u64,
}

impl ModelParams {
    fn check(&self, d: &BlockedDesign) -> Result<()> {
        if self.beta.len() != d.k() {
            return Err(Error::shape(format!("β has length {}, design has K={}", self.beta.len(), d.k())));
        }
        if self.gamma.len() != d.layout().blocks() {
            return Err(Error::shape(format!(
                "γ has length {}, design has b={} blocks",
                self.gamma.len(),
                d.layout().blocks()
            )));
        }
        if !(self.sigma >= 0.0 && self.sigma.is_finite()) {
            return Err(Error::Parameter(format!("σ must be finite and ≥ 0, got {}", self.sigma)));
        }
        Ok(())
    }
}

/// Generator for replication `rep` under `seed`.
pub fn replication_rng(seed: u64, rep: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(rep);
    rng
}

/// Noise-free mean Fβ + Zγ.
fn mean_response(d: &BlockedDesign, p: &ModelParams) -> Vec<f64> {
    let f = d.f();
    let blocks = d.layout().block_of_rows();
    (0..d.n())
        .map(|r| {
            let fb: f64 = f.row(r).iter().zip(&p.beta).map(|(&x, b)| f64::from(x) * b).sum();
            fb + p.gamma[blocks[r]]
        })
        .collect()
}

/// Simulate y for replication `rep`.
///
/// # Errors
///
/// Shape error when β or γ do not match the design.
pub fn simulate_rep(d: &BlockedDesign, p: &ModelParams, rep: u64) -> Result<Vec<f64>> {
    p.check(d)?;
    let mut y = mean_response(d, p);
    if p.sigma > 0.0 {
        let mut rng = replication_rng(p.seed, rep);
        for v in &mut y {
            let z: f64 = StandardNormal.sample(&mut rng);
            *v += p.sigma * z;
        }
    }
    Ok(y)
}

/// Simulate y = Fβ + Zγ + ε (replication 0).
///
/// # Errors
///
/// Shape error when β or γ do not match the design.
pub fn simulate(d: &BlockedDesign, p: &ModelParams) -> Result<Vec<f64>> {
    simulate_rep(d, p, 0)
}

/// Estimation result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    /// β̂.
    pub beta_hat: Vec<f64>,
    /// M of the design.
    pub info: InfoMatrix,
    /// ‖(F⊤PF)β̂ − F⊤Py‖₂.
    pub normal_equation_residual: f64,
    /// ‖Py − PFβ̂‖₂, the within-block residual norm.
    pub residual_norm: f64,
}

/// Rows of F⊤P as f64: (F⊤P)_{c,r} = F_{rc} − s_{b(r),c}/m_{b(r)}.
fn ftp(d: &BlockedDesign) -> DMatrix<f64> {
    let (n, k) = (d.n(), d.k());
    let sums = d.block_sums();
    let sizes = d.layout().sizes();
    let blocks = d.layout().block_of_rows();
    DMatrix::from_fn(k, n, |c, r| {
        let b = blocks[r];
        f64::from(d.f().get(r, c)) - sums[b][c] as f64 / sizes[b] as f64
    })
}

fn check_len(d: &BlockedDesign, len: usize) -> Result<()> {
    if len != d.n() {
        return Err(Error::shape(format!("y has length {len}, design has N={}", d.n())));
    }
    Ok(())
}

/// Estimator matrix E = (F⊤PF)⁻¹F⊤P, so β̂ = E·y.
///
/// # Errors
///
/// Singularity error when M is singular.
pub fn estimator_matrix(d: &BlockedDesign) -> Result<DMatrix<f64>> {
    let m4 = compute_info(d).inverse()?.to_f64() / 4.0;
    Ok(m4 * ftp(d))
}

/// Estimate β from y by the reduced normal equations.
///
/// # Errors
///
/// Shape error for a wrong-length y; singularity error when M is singular.
pub fn estimate(d: &BlockedDesign, y: &[f64]) -> Result<EstimateReport> {
    check_len(d, y.len())?;
    let info = compute_info(d);
    let inv = info.inverse()?.to_f64() / 4.0;
    let ftp = ftp(d);
    let yv = DVector::from_column_slice(y);
    let q = &ftp * &yv;
    let beta = &inv * &q;
    let lhs = info.to_f64() * 4.0;
    let normal_equation_residual = (&lhs * &beta - &q).norm();
    let f = DMatrix::from_fn(d.n(), d.k(), |r, c| f64::from(d.f().get(r, c)));
    let resid = &yv - &f * &beta;
    let blocks = d.layout().block_of_rows();
    let mut means = vec![0.0; d.layout().blocks()];
    for (r, v) in resid.iter().enumerate() {
        means[blocks[r]] += v;
    }
    for (m, &s) in means.iter_mut().zip(d.layout().sizes()) {
        *m /= s as f64;
    }
    let residual_norm = resid.iter().enumerate().map(|(r, v)| (v - means[blocks[r]]).powi(2)).sum::<f64>().sqrt();
    Ok(EstimateReport { beta_hat: beta.iter().copied().collect(), info, normal_equation_residual, residual_norm })
}

/// Exact rational estimator matrix (F⊤PF)⁻¹F⊤P.
fn exact_estimator(d: &BlockedDesign, m: &InfoMatrix, project: bool) -> Result<Vec<Vec<Rational>>> {
    let inv = m.inverse()?;
    let (n, k) = (d.n(), d.k());
    let sums = d.block_sums();
    let sizes = d.layout().sizes();
    let blocks = d.layout().block_of_rows();
    let quarter = rational::rat(1, 4);
    let ftp: Vec<Vec<Rational>> = (0..k)
        .map(|c| {
            (0..n)
                .map(|r| {
                    let f = int(i64::from(d.f().get(r, c)));
                    if project {
                        let b = blocks[r];
                        f - Rational::new(sums[b][c].into(), (sizes[b] as i64).into())
                    } else {
                        f
                    }
                })
                .collect()
        })
        .collect();
    Ok((0..k)
        .map(|i| {
            (0..n)
                .map(|r| (0..k).map(|j| inv.get(i, j) * &ftp[j][r]).sum::<Rational>() * &quarter)
                .collect()
        })
        .collect())
}

/// Exact β̂ from a rational y.
///
/// # Errors
///
/// Shape error for a wrong-length y; singularity error when M is singular.
pub fn estimate_exact(d: &BlockedDesign, y: &[Rational]) -> Result<Vec<Rational>> {
    check_len(d, y.len())?;
    let e = exact_estimator(d, &compute_info(d), true)?;
    Ok(e.iter().map(|row| row.iter().zip(y).map(|(a, b)| a * b).sum()).collect())
}

/// Exact noiseless response Fβ + Zγ for rational β, γ.
///
/// # Errors
///
/// Shape error when β or γ do not match the design.
pub fn exact_response(d: &BlockedDesign, beta: &[Rational], gamma: &[Rational]) -> Result<Vec<Rational>> {
    if beta.len() != d.k() || gamma.len() != d.layout().blocks() {
        return Err(Error::shape("β/γ lengths do not match the design"));
    }
    let blocks = d.layout().block_of_rows();
    Ok((0..d.n())
        .map(|r| {
            d.f().row(r).iter().zip(beta).map(|(&x, b)| int(i64::from(x)) * b).sum::<Rational>() + &gamma[blocks[r]]
        })
        .collect())
}

/// Whether block projection changes the estimator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PayoffReport {
    /// F⊤Z = 0.
    pub orthogonally_blocked: bool,
    /// (F⊤PF)⁻¹F⊤P equals (F⊤F)⁻¹F⊤ entrywise.
    pub identical_estimators: bool,
    /// Largest entrywise difference of the two estimator matrices.
    #[serde(with = "rational::as_str")]
    pub max_difference: Rational,
}

/// Compare estimation with and without block projection, exactly.
///
/// # Errors
///
/// Singularity error when either normal matrix is singular.
pub fn orthogonality_payoff(d: &BlockedDesign) -> Result<PayoffReport> {
    let with = exact_estimator(d, &compute_info(d), true)?;
    let without = exact_estimator(d, &unblocked_info(d), false)?;
    let mut max = Rational::from_integer(0.into());
    for (a, b) in with.iter().flatten().zip(without.iter().flatten()) {
        let diff = a - b;
        let diff = if diff < Rational::from_integer(0.into()) { -diff } else { diff };
        if diff > max {
            max = diff;
        }
    }
    let identical = max == Rational::from_integer(0.into());
    Ok(PayoffReport {
        orthogonally_blocked: crate::info_matrix::is_orthogonally_blocked(d),
        identical_estimators: identical,
        max_difference: max,
    })
}

/// Monte Carlo summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    /// Replications.
    pub reps: u64,
    /// Mean of β̂.
    pub mean_beta_hat: Vec<f64>,
    /// Empirical covariance of β̂ (divisor reps − 1).
    pub empirical_cov: Vec<Vec<f64>>,
    /// σ²(F⊤PF)⁻¹, which equals σ²(F⊤F)⁻¹ when F⊤Z = 0.
    pub target_cov: Vec<Vec<f64>>,
    /// ‖empirical − target‖_F / ‖target‖_F.
    pub relative_frobenius_error: f64,
}

/// Run `reps` replications and compare the covariance of β̂ with σ²(F⊤PF)⁻¹.
///
/// # Errors
///
/// Shape, parameter or singularity errors; parameter error for reps < 2.
pub fn monte_carlo(d: &BlockedDesign, p: &ModelParams, reps: u64) -> Result<MonteCarloReport> {
    p.check(d)?;
    if reps < 2 {
        return Err(Error::Parameter("at least 2 replications are required".into()));
    }
    let e = estimator_matrix(d)?;
    let mean_y = DVector::from_vec(mean_response(d, p));
    let n = d.n();
    let estimates: Vec<DVector<f64>> = (0..reps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = replication_rng(p.seed, rep);
            let noise = DVector::from_fn(n, |_, _| {
                let z: f64 = StandardNormal.sample(&mut rng);
                p.sigma * z
            });
            &e * (&mean_y + noise)
        })
        .collect();
    let k = d.k();
    let mut mean = DVector::zeros(k);
    for b in &estimates {
        mean += b;
    }
    mean /= reps as f64;
    let mut cov = DMatrix::zeros(k, k);
    for b in &estimates {
        let c = b - &mean;
        cov += &c * c.transpose();
    }
    cov /= (reps - 1) as f64;
    let target = compute_info(d).inverse()?.to_f64() * (p.sigma * p.sigma / 4.0);
    let denom = target.norm();
    let relative_frobenius_error = if denom > 0.0 { (&cov - &target).norm() / denom } else { cov.norm() };
    let rows = |m: &DMatrix<f64>| (0..k).map(|i| (0..k).map(|j| m[(i, j)]).collect()).collect();
    Ok(MonteCarloReport {
        reps,
        mean_beta_hat: mean.iter().copied().collect(),
        empirical_cov: rows(&cov),
        target_cov: rows(&target),
        relative_frobenius_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design_core::{BlockLayout, DifferenceMatrix};

    fn tiny() -> BlockedDesign {
        let f = DifferenceMatrix::from_rows(&[vec![2, 2], vec![-2, 2], vec![2, -2], vec![-2, -2]]).unwrap();
        BlockedDesign::plain(f, BlockLayout::new(vec![2, 2]).unwrap()).unwrap()
    }

    #[test]
    fn same_seed_same_noise() {
        let d = tiny();
        let p = ModelParams { beta: vec![1.0, -1.0], gamma: vec![0.5, 3.0], sigma: 1.0, seed: 9 };
        assert_eq!(simulate(&d, &p).unwrap(), simulate(&d, &p).unwrap());
        assert_ne!(simulate_rep(&d, &p, 0).unwrap(), simulate_rep(&d, &p, 1).unwrap());
    }

    #[test]
    fn wrong_length() {
        assert!(matches!(estimate(&tiny(), &[1.0; 3]), Err(Error::Shape(_))));
    }
}
