//! Searching and sampling confidence intervals.
//!
//! Both intervals stay valid when the instrument-selection step makes
//! mistakes, as long as a majority of the screened instruments is valid.
//! The searching interval collects every candidate effect β for which fewer
//! than half of the screened instruments look invalid after thresholding.
//! The sampling interval repeats that search over jittered draws of the
//! reduced-form estimate and takes the min/max hull of the nonempty results,
//! which shrinks the interval without losing uniform coverage.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{clip_psd, norm_ppf, psd_cholesky};
use crate::regression::ReducedForm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CiMethod {
    Searching,
    Sampling,
}

/// Uniform grid of candidate effects.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n_points: usize,
}

impl Grid {
    pub fn new(lo: f64, hi: f64, n_points: usize) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidOption(format!("grid bounds must satisfy lo < hi, got [{lo}, {hi}]")));
        }
        if n_points < 101 {
            return Err(Error::InvalidOption(format!(
                "grid needs at least 101 points, got {n_points}"
            )));
        }
        Ok(Grid { lo, hi, n_points })
    }

    /// Default bounds: the per-instrument ratio estimates padded by five of
    /// their largest delta-method standard errors. Any effect a majority of
    /// instruments can support lies near one of the ratios.
    pub fn default_for(rf: &ReducedForm, s_hat: &[usize]) -> Result<Self> {
        let n = rf.n as f64;
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut max_se = 0.0f64;
        for &j in s_hat {
            let r = rf.big_gamma_hat[j] / rf.gamma_hat[j];
            lo = lo.min(r);
            hi = hi.max(r);
            let var = (rf.v_big_gamma[(j, j)] - 2.0 * r * rf.c_cross[(j, j)]
                + r * r * rf.v_gamma[(j, j)])
                / n;
            max_se = max_se.max(var.max(0.0).sqrt() / rf.gamma_hat[j].abs());
        }
        Grid::new(lo - 5.0 * max_se, hi + 5.0 * max_se, 4001)
    }

    fn point(&self, i: usize) -> f64 {
        self.lo + (self.hi - self.lo) * i as f64 / (self.n_points - 1) as f64
    }
}

/// Interval hull plus diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct IntervalResult {
    pub lower: f64,
    pub upper: f64,
    pub method: CiMethod,
    pub alpha: f64,
    pub grid: Grid,
    /// Acceptance mask over the grid (searching only; empty for sampling).
    pub accepted: Vec<bool>,
    /// Resample count M (sampling only).
    pub m_resamples: Option<usize>,
    /// Shrinkage λ actually used (sampling only).
    pub lambda: Option<f64>,
    /// Number of resamples with a nonempty accepted set (sampling only).
    pub nonempty_count: Option<usize>,
    /// Set when sampling found no nonempty resample and the searching
    /// interval was returned instead.
    pub fell_back_to_searching: bool,
}

/// Thresholded residual vector π̂_Ŝ(β): entry j is Γ̂_j − βγ̂_j when that
/// difference clears λ·ρ̂_j(β,α), and zero otherwise.
pub fn pi_threshold(
    rf: &ReducedForm,
    s_hat: &[usize],
    beta: f64,
    alpha: f64,
    lambda: f64,
) -> DVector<f64> {
    let zq = norm_ppf(1.0 - alpha / (2.0 * s_hat.len() as f64));
    DVector::from_iterator(
        s_hat.len(),
        s_hat.iter().map(|&j| {
            let pi = rf.big_gamma_hat[j] - beta * rf.gamma_hat[j];
            let rho = zq * se_at(rf, j, beta);
            if pi.abs() >= lambda * rho {
                pi
            } else {
                0.0
            }
        }),
    )
}

/// √((V̂^Γ_jj − 2βĈ_jj + β²V̂^γ_jj)/n), the SE of Γ̂_j − βγ̂_j at fixed β.
fn se_at(rf: &ReducedForm, j: usize, beta: f64) -> f64 {
    let var = (rf.v_big_gamma[(j, j)] - 2.0 * beta * rf.c_cross[(j, j)]
        + beta * beta * rf.v_gamma[(j, j)])
        / rf.n as f64;
    var.max(0.0).sqrt()
}

/// ρ̂_j(β,α) for every j ∈ Ŝ at every grid point, reused across resamples.
fn rho_table(rf: &ReducedForm, s_hat: &[usize], alpha: f64, grid: &Grid) -> Vec<Vec<f64>> {
    let zq = norm_ppf(1.0 - alpha / (2.0 * s_hat.len() as f64));
    (0..grid.n_points)
        .map(|i| {
            let beta = grid.point(i);
            s_hat.iter().map(|&j| zq * se_at(rf, j, beta)).collect()
        })
        .collect()
}

/// Accepted-set hull for one (Γ, γ) draw: grid points where fewer than half
/// of the instruments exceed their thresholds.
fn scan_grid(
    big_gamma: &[f64],
    gamma: &[f64],
    rho: &[Vec<f64>],
    lambda: f64,
    grid: &Grid,
    mut mask: Option<&mut Vec<bool>>,
) -> Option<(f64, f64)> {
    let half = big_gamma.len() as f64 / 2.0;
    let mut hull: Option<(f64, f64)> = None;
    for i in 0..grid.n_points {
        let beta = grid.point(i);
        let mut violations = 0usize;
        for (j, rho_j) in rho[i].iter().enumerate() {
            if (big_gamma[j] - beta * gamma[j]).abs() >= lambda * rho_j {
                violations += 1;
            }
        }
        let ok = (violations as f64) < half;
        if let Some(mask) = mask.as_deref_mut() {
            mask[i] = ok;
        }
        if ok {
            hull = match hull {
                None => Some((beta, beta)),
                Some((lo, _)) => Some((lo, beta)),
            };
        }
    }
    hull
}

/// Searching interval (threshold multiplier λ = 1).
pub fn searching_ci(
    rf: &ReducedForm,
    s_hat: &[usize],
    alpha: f64,
    grid: Option<Grid>,
) -> Result<IntervalResult> {
    let grid = match grid {
        Some(g) => g,
        None => Grid::default_for(rf, s_hat)?,
    };
    let rho = rho_table(rf, s_hat, alpha, &grid);
    let big_gamma: Vec<f64> = s_hat.iter().map(|&j| rf.big_gamma_hat[j]).collect();
    let gamma: Vec<f64> = s_hat.iter().map(|&j| rf.gamma_hat[j]).collect();
    let mut mask = vec![false; grid.n_points];
    let hull = scan_grid(&big_gamma, &gamma, &rho, 1.0, &grid, Some(&mut mask));
    let (lower, upper) = hull.ok_or(Error::EmptySearchSet {
        lo: grid.lo,
        hi: grid.hi,
        n_points: grid.n_points,
    })?;
    Ok(IntervalResult {
        lower,
        upper,
        method: CiMethod::Searching,
        alpha,
        grid,
        accepted: mask,
        m_resamples: None,
        lambda: None,
        nonempty_count: None,
        fell_back_to_searching: false,
    })
}

/// Knobs for the sampling interval.
#[derive(Debug, Clone)]
pub struct SamplingOptions {
    pub m: usize,
    /// Shrinkage λ; `None` resolves to (log n / M)^{1/(2|Ŝ|)}.
    pub lambda: Option<f64>,
    pub seed: u64,
    /// Multiplier on the resampling noise; 0 collapses every draw onto the
    /// point estimate (test hook for the searching-equivalence identity).
    pub noise_scale: f64,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        SamplingOptions { m: 1000, lambda: None, seed: 0, noise_scale: 1.0 }
    }
}

/// Sampling interval: min/max hull of searching sets over M joint-normal
/// draws of (Γ̂, γ̂) restricted to Ŝ, with thresholds from the original fit.
pub fn sampling_ci(
    rf: &ReducedForm,
    s_hat: &[usize],
    alpha: f64,
    grid: Option<Grid>,
    opts: &SamplingOptions,
) -> Result<IntervalResult> {
    if opts.m < 1 {
        return Err(Error::InvalidOption("sampling needs at least one resample".into()));
    }
    let grid = match grid {
        Some(g) => g,
        None => Grid::default_for(rf, s_hat)?,
    };
    let k = s_hat.len();
    let lambda = opts
        .lambda
        .unwrap_or_else(|| ((rf.n as f64).ln() / opts.m as f64).powf(1.0 / (2.0 * k as f64)));

    // joint covariance of the Ŝ-restricted (Γ̂, γ̂), finite-sample scale
    let mut cov = DMatrix::zeros(2 * k, 2 * k);
    for (a, &j) in s_hat.iter().enumerate() {
        for (b, &l) in s_hat.iter().enumerate() {
            cov[(a, b)] = rf.v_big_gamma[(j, l)];
            cov[(a, k + b)] = rf.c_cross[(j, l)];
            cov[(k + a, b)] = rf.c_cross[(l, j)];
            cov[(k + a, k + b)] = rf.v_gamma[(j, l)];
        }
    }
    cov /= rf.n as f64;
    let chol = psd_cholesky(&clip_psd(&cov, 1e-12), 1e-12);

    let rho = rho_table(rf, s_hat, alpha, &grid);
    let center_big: Vec<f64> = s_hat.iter().map(|&j| rf.big_gamma_hat[j]).collect();
    let center_gam: Vec<f64> = s_hat.iter().map(|&j| rf.gamma_hat[j]).collect();

    let hulls: Vec<Option<(f64, f64)>> = (0..opts.m)
        .into_par_iter()
        .map(|rep| {
            // independent substream per resample keeps the draw sequence
            // identical no matter how replicates are scheduled
            let mut rng = ChaCha20Rng::seed_from_u64(opts.seed);
            rng.set_stream(rep as u64 + 1);
            let z = DVector::from_fn(2 * k, |_, _| StandardNormal.sample(&mut rng));
            let noise = &chol * z * opts.noise_scale;
            let big: Vec<f64> = (0..k).map(|a| center_big[a] + noise[a]).collect();
            let gam: Vec<f64> = (0..k).map(|a| center_gam[a] + noise[k + a]).collect();
            scan_grid(&big, &gam, &rho, lambda, &grid, None)
        })
        .collect();

    let nonempty = hulls.iter().flatten().count();
    if nonempty == 0 {
        // keep a usable interval: report the searching hull, flagged
        let fallback = searching_ci(rf, s_hat, alpha, Some(grid))?;
        return Ok(IntervalResult {
            method: CiMethod::Sampling,
            m_resamples: Some(opts.m),
            lambda: Some(lambda),
            nonempty_count: Some(0),
            fell_back_to_searching: true,
            accepted: Vec::new(),
            ..fallback
        });
    }
    let lower = hulls.iter().flatten().map(|h| h.0).fold(f64::INFINITY, f64::min);
    let upper = hulls.iter().flatten().map(|h| h.1).fold(f64::NEG_INFINITY, f64::max);
    Ok(IntervalResult {
        lower,
        upper,
        method: CiMethod::Sampling,
        alpha,
        grid,
        accepted: Vec::new(),
        m_resamples: Some(opts.m),
        lambda: Some(lambda),
        nonempty_count: Some(nonempty),
        fell_back_to_searching: false,
    })
}
