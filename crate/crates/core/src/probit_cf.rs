//! Control-function estimator for a binary outcome with a continuous
//! endogenous treatment and possibly invalid instruments.
//!
//! The first stage is linear; its residual enters a probit for the outcome
//! as an additional regressor. Ratios of probit to first-stage coefficients
//! identify the (scaled) treatment effect through a median over the
//! relevant instruments, which tolerates invalidity of fewer than half of
//! them. Counterfactual contrasts average the probit link over the
//! empirical residual distribution, so they stay inside the unit interval
//! by construction.

use nalgebra::{Cholesky, DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{norm_cdf, norm_ppf};
use crate::model::{AnalysisOptions, Dataset};
use crate::regression::{ols_fit, probit_fit, OlsFit, ProbitFit};

#[derive(Debug, Clone)]
pub struct ProbitCfFit {
    /// First-stage coefficients of D on (Z, X, 1), full vector.
    pub gamma_hat: DVector<f64>,
    pub sigma_v_hat: f64,
    /// Instruments passing the relevance threshold (indices into Z).
    pub s_hat: Vec<usize>,
    /// Probit coefficients on (Z, X, 1).
    pub big_gamma_hat: DVector<f64>,
    /// Probit coefficient on the first-stage residual.
    pub rho_hat: f64,
    /// Median of Γ̂_j/γ̂_j over the relevant instruments.
    pub beta_hat: f64,
    /// Γ̂ - γ̂ β̂, full vector; the instrument entries are the invalidity
    /// estimates, the covariate and intercept entries complete the index.
    pub kappa_hat: DVector<f64>,
    /// Detection standard errors, one per member of `s_hat`.
    pub kappa_se: Vec<f64>,
    /// Quantile used by the detection rule.
    pub zq: f64,
    /// Instruments flagged invalid; `None` when detection was not requested.
    pub invalid: Option<Vec<usize>>,
    pub v_hat: DVector<f64>,
    pub first_stage: OlsFit,
    pub probit: ProbitFit,
    pub alpha: f64,
    pub n: usize,
    pub p_z: usize,
    pub p_x: usize,
}

/// Relevance screening for the binary-outcome pipeline. The threshold for
/// instrument j is σ̂_v √(2 (Σ̂⁻¹)_jj log n / n).
pub fn probit_select(
    gamma_hat: &DVector<f64>,
    sigma_w: &DMatrix<f64>,
    sigma_v_hat: f64,
    n: usize,
    p_z: usize,
) -> Result<Vec<usize>> {
    let sinv = Cholesky::new(sigma_w.clone())
        .ok_or(Error::RankDeficient { cond: f64::INFINITY, context: "instrument second-moment matrix".into() })?
        .inverse();
    let logn = (n as f64).ln();
    let s_hat: Vec<usize> = (0..p_z)
        .filter(|&j| {
            let thr = sigma_v_hat * (2.0 * sinv[(j, j)] * logn / n as f64).sqrt();
            gamma_hat[j].abs() >= thr
        })
        .collect();
    if s_hat.is_empty() {
        return Err(Error::NoRelevantIv);
    }
    Ok(s_hat)
}

fn median_of(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let m = xs.len();
    if m % 2 == 1 {
        xs[m / 2]
    } else {
        0.5 * (xs[m / 2 - 1] + xs[m / 2])
    }
}

/// Fits the full pipeline. With `invalid` set, instruments whose invalidity
/// estimate is large relative to its standard error are flagged; the flag
/// does not change the estimate itself.
pub fn probit_cf_fit(ds: &Dataset, invalid: bool, opts: &AnalysisOptions) -> Result<ProbitCfFit> {
    opts.validate()?;
    let n = ds.n();
    let p_z = ds.p_z();
    let p_w = p_z + ds.p_x() + 1;
    let w = ds.w_matrix();

    let first_stage = ols_fit(&w, ds.d(), true)?;
    let gamma_hat = first_stage.coef.clone();
    let v_hat = first_stage.residuals.clone();
    let sigma_v_hat = (v_hat.norm_squared() / n as f64).sqrt();

    let sigma_w = w.tr_mul(&w) / n as f64;
    let s_hat = probit_select(&gamma_hat, &sigma_w, sigma_v_hat, n, p_z)?;

    let mut design = DMatrix::zeros(n, p_w + 1);
    design.view_mut((0, 0), (n, p_w)).copy_from(&w);
    design.view_mut((0, p_w), (n, 1)).copy_from(&DMatrix::from_column_slice(n, 1, v_hat.as_slice()));
    let probit = probit_fit(&design, ds.y())?;
    let big_gamma_hat = probit.coef.rows(0, p_w).into_owned();
    let rho_hat = probit.coef[p_w];

    let mut ratios = Vec::with_capacity(s_hat.len());
    for &j in &s_hat {
        if gamma_hat[j].abs() < 1e-12 {
            return Err(Error::DivisionGuard);
        }
        ratios.push(big_gamma_hat[j] / gamma_hat[j]);
    }
    let beta_hat = median_of(ratios);
    let kappa_hat = &big_gamma_hat - &gamma_hat * beta_hat;

    let cov_fs = first_stage.cov_finite();
    let kappa_se: Vec<f64> = s_hat
        .iter()
        .map(|&j| (probit.cov[(j, j)] + beta_hat * beta_hat * cov_fs[(j, j)]).sqrt())
        .collect();
    let zq = norm_ppf(1.0 - opts.alpha / (2.0 * s_hat.len() as f64));
    let flagged = invalid.then(|| {
        s_hat
            .iter()
            .zip(&kappa_se)
            .filter(|(&j, &se)| kappa_hat[j].abs() > zq * se)
            .map(|(&j, _)| j)
            .collect()
    });

    Ok(ProbitCfFit {
        gamma_hat,
        sigma_v_hat,
        s_hat,
        big_gamma_hat,
        rho_hat,
        beta_hat,
        kappa_hat,
        kappa_se,
        zq,
        invalid: flagged,
        v_hat,
        first_stage,
        probit,
        alpha: opts.alpha,
        n,
        p_z,
        p_x: ds.p_x(),
    })
}

/// Mean of (Z, X) columns, the default conditioning point.
pub fn default_w0(ds: &Dataset) -> Vec<f64> {
    let n = ds.n() as f64;
    let mut w0 = Vec::with_capacity(ds.p_z() + ds.p_x());
    for j in 0..ds.p_z() {
        w0.push(ds.z().column(j).sum() / n);
    }
    for j in 0..ds.p_x() {
        w0.push(ds.x().column(j).sum() / n);
    }
    w0
}

impl ProbitCfFit {
    /// Counterfactual contrast P(Y=1 | d1, w0) - P(Y=1 | d2, w0), averaging
    /// the link over the empirical first-stage residuals.
    pub fn cate(&self, d1: f64, d2: f64, w0: &[f64]) -> Result<f64> {
        let p_zx = self.p_z + self.p_x;
        if w0.len() != p_zx {
            return Err(Error::DimensionMismatch(format!(
                "conditioning point has {} entries, expected {}",
                w0.len(),
                p_zx
            )));
        }
        let lin: f64 = w0.iter().zip(self.kappa_hat.iter()).map(|(a, b)| a * b).sum::<f64>()
            + self.kappa_hat[p_zx];
        let avg = |d: f64| -> f64 {
            self.v_hat
                .iter()
                .map(|&v| norm_cdf(d * self.beta_hat + lin + v * self.rho_hat))
                .sum::<f64>()
                / self.n as f64
        };
        Ok(avg(d1) - avg(d2))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CateResult {
    pub estimate: f64,
    pub se: f64,
    pub ci: (f64, f64),
    pub d1: f64,
    pub d2: f64,
    pub w0: Vec<f64>,
    pub b: usize,
    pub n_failed: usize,
}

#[derive(Debug)]
pub struct ProbitCfInference {
    pub fit: ProbitCfFit,
    pub cate: CateResult,
    /// Bootstrap standard error of the ratio-median effect.
    pub beta_se: f64,
    pub beta_ci: (f64, f64),
}

fn sd(xs: &[f64]) -> f64 {
    let m = xs.iter().sum::<f64>() / xs.len() as f64;
    (xs.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let frac = pos - lo as f64;
    if lo + 1 < sorted.len() {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    } else {
        sorted[lo]
    }
}

/// Pairs-bootstrap inference for the counterfactual contrast. Every
/// replicate reruns the whole pipeline including instrument re-selection;
/// degenerate replicates are skipped up to a 10% budget.
pub fn cate_ci(
    ds: &Dataset,
    d1: f64,
    d2: f64,
    w0: Option<Vec<f64>>,
    b: usize,
    invalid: bool,
    opts: &AnalysisOptions,
) -> Result<ProbitCfInference> {
    if b < 100 {
        return Err(Error::InvalidOption("bootstrap needs at least 100 replicates".into()));
    }
    let fit = probit_cf_fit(ds, invalid, opts)?;
    let w0 = w0.unwrap_or_else(|| default_w0(ds));
    let estimate = fit.cate(d1, d2, &w0)?;

    let n = ds.n();
    // detection is skipped inside replicates; only the estimate is resampled
    let draws: Vec<Option<(f64, f64)>> = (0..b)
        .into_par_iter()
        .map(|rep| {
            let mut rng = ChaCha20Rng::seed_from_u64(opts.seed);
            rng.set_stream(rep as u64 + 1);
            let idx: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
            let res = ds.resample(&idx);
            probit_cf_fit(&res, false, opts)
                .and_then(|f| f.cate(d1, d2, &w0).map(|c| (c, f.beta_hat)))
                .ok()
        })
        .collect();

    let ok: Vec<(f64, f64)> = draws.iter().flatten().copied().collect();
    let n_failed = b - ok.len();
    if n_failed * 10 > b {
        return Err(Error::TooManyFailures { failed: n_failed, total: b });
    }

    let mut cate_reps: Vec<f64> = ok.iter().map(|&(c, _)| c).collect();
    let beta_reps: Vec<f64> = ok.iter().map(|&(_, bh)| bh).collect();
    let se = sd(&cate_reps);
    cate_reps.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut lo = quantile(&cate_reps, opts.alpha / 2.0).max(-1.0);
    let mut hi = quantile(&cate_reps, 1.0 - opts.alpha / 2.0).min(1.0);
    // percentile intervals can miss the point estimate in small samples
    lo = lo.min(estimate);
    hi = hi.max(estimate);

    let beta_se = sd(&beta_reps);
    let z = norm_ppf(1.0 - opts.alpha / 2.0);
    let beta_ci = (fit.beta_hat - z * beta_se, fit.beta_hat + z * beta_se);

    Ok(ProbitCfInference {
        cate: CateResult {
            estimate,
            se,
            ci: (lo, hi),
            d1,
            d2,
            w0,
            b,
            n_failed,
        },
        fit,
        beta_se,
        beta_ci,
    })
}
