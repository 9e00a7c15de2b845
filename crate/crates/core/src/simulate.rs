//! Synthetic data generators used by the test suites and the `simulate`
//! subcommand. Both designs carry a record of the generating parameters so
//! coverage studies can score estimates against the truth.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::gauss_hermite_normal;
use crate::model::Dataset;

/// Linear outcome design with possibly invalid instruments.
///
/// D = 0.5 + Z γ + X ψ + δ and Y = -0.5 + β D + Z π + X φ + ε, with (ε, δ)
/// bivariate normal, unit variances and correlation `err_corr`. Instrument
/// j is invalid when π_j differs from zero. The heteroscedastic variant
/// scales ε by sqrt((1 + Z₁²)/2), which keeps its unconditional variance
/// at one.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinearSimConfig {
    pub n: usize,
    pub p_z: usize,
    pub p_x: usize,
    pub beta: f64,
    /// First-stage instrument strengths, length `p_z`.
    pub gamma: Vec<f64>,
    /// Direct instrument effects on the outcome, length `p_z`.
    pub pi: Vec<f64>,
    /// Covariate effects in the treatment equation, length `p_x`.
    pub psi: Vec<f64>,
    /// Covariate effects in the outcome equation, length `p_x`.
    pub phi: Vec<f64>,
    pub err_corr: f64,
    pub heteroscedastic: bool,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinearTruth {
    pub beta: f64,
    pub gamma: Vec<f64>,
    pub pi: Vec<f64>,
    /// Instruments with zero direct effect.
    pub valid: Vec<usize>,
    /// Instruments with nonzero first-stage strength.
    pub relevant: Vec<usize>,
}

fn check_len(name: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::DimensionMismatch(format!("{name} has length {got}, expected {want}")));
    }
    Ok(())
}

fn draw_matrix(rng: &mut ChaCha20Rng, n: usize, p: usize) -> DMatrix<f64> {
    // row-major draw order; changing it would silently break seeded tests
    let mut m = DMatrix::zeros(n, p);
    for i in 0..n {
        for j in 0..p {
            m[(i, j)] = rng.sample(StandardNormal);
        }
    }
    m
}

fn draw_vector(rng: &mut ChaCha20Rng, n: usize) -> DVector<f64> {
    DVector::from_fn(n, |_, _| rng.sample(StandardNormal))
}

pub fn gen_linear_iv(cfg: &LinearSimConfig) -> Result<(Dataset, LinearTruth)> {
    check_len("gamma", cfg.gamma.len(), cfg.p_z)?;
    check_len("pi", cfg.pi.len(), cfg.p_z)?;
    check_len("psi", cfg.psi.len(), cfg.p_x)?;
    check_len("phi", cfg.phi.len(), cfg.p_x)?;
    if cfg.err_corr.abs() >= 1.0 {
        return Err(Error::InvalidOption("err_corr must lie strictly inside (-1, 1)".into()));
    }

    let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed);
    let z = draw_matrix(&mut rng, cfg.n, cfg.p_z);
    let x = draw_matrix(&mut rng, cfg.n, cfg.p_x);
    let delta = draw_vector(&mut rng, cfg.n);
    let eta = draw_vector(&mut rng, cfg.n);

    let gamma = DVector::from_column_slice(&cfg.gamma);
    let pi = DVector::from_column_slice(&cfg.pi);
    let psi = DVector::from_column_slice(&cfg.psi);
    let phi = DVector::from_column_slice(&cfg.phi);

    let rho_c = (1.0 - cfg.err_corr * cfg.err_corr).sqrt();
    let mut eps = &delta * cfg.err_corr + eta * rho_c;
    if cfg.heteroscedastic {
        for i in 0..cfg.n {
            let z1 = z[(i, 0)];
            eps[i] *= ((1.0 + z1 * z1) / 2.0).sqrt();
        }
    }

    let d = &z * &gamma + &x * &psi + &delta + DVector::from_element(cfg.n, 0.5);
    let y = &d * cfg.beta + &z * &pi + &x * &phi + &eps - DVector::from_element(cfg.n, 0.5);

    let truth = LinearTruth {
        beta: cfg.beta,
        gamma: cfg.gamma.clone(),
        pi: cfg.pi.clone(),
        valid: (0..cfg.p_z).filter(|&j| cfg.pi[j] == 0.0).collect(),
        relevant: (0..cfg.p_z).filter(|&j| cfg.gamma[j] != 0.0).collect(),
    };
    let ds = Dataset::from_parts(y, d, z, x, vec![], vec![])?;
    Ok((ds, truth))
}

/// Binary outcome design. The treatment equation matches the linear design
/// with first-stage error v ~ N(0, σ_v²); the outcome is
/// Y = 1{-0.5 + β D + Z κ + X φ + ρ v + e >= 0} with e ~ N(0, σ_e²).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbitSimConfig {
    pub n: usize,
    pub p_z: usize,
    pub p_x: usize,
    pub beta: f64,
    pub gamma: Vec<f64>,
    /// Direct instrument effects in the latent outcome, length `p_z`.
    pub kappa: Vec<f64>,
    pub psi: Vec<f64>,
    pub phi: Vec<f64>,
    /// Loading of the first-stage error in the latent outcome.
    pub rho: f64,
    pub sigma_v: f64,
    pub sigma_e: f64,
    pub seed: u64,
}

/// Parameters of the probit representation targeted by the estimator: the
/// latent equation divided through by σ_e, with the treatment substituted
/// out in favor of the first-stage error.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbitTruth {
    pub beta_star: f64,
    pub rho_star: f64,
    /// Length p_z + p_x + 1, intercept last.
    pub kappa_star: Vec<f64>,
    pub sigma_v: f64,
    pub valid: Vec<usize>,
    pub relevant: Vec<usize>,
}

pub fn gen_probit_iv(cfg: &ProbitSimConfig) -> Result<(Dataset, ProbitTruth)> {
    check_len("gamma", cfg.gamma.len(), cfg.p_z)?;
    check_len("kappa", cfg.kappa.len(), cfg.p_z)?;
    check_len("psi", cfg.psi.len(), cfg.p_x)?;
    check_len("phi", cfg.phi.len(), cfg.p_x)?;
    if cfg.sigma_e <= 0.0 || cfg.sigma_v <= 0.0 {
        return Err(Error::InvalidOption("sigma_e and sigma_v must be positive".into()));
    }

    let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed);
    let z = draw_matrix(&mut rng, cfg.n, cfg.p_z);
    let x = draw_matrix(&mut rng, cfg.n, cfg.p_x);
    let v = draw_vector(&mut rng, cfg.n) * cfg.sigma_v;
    let e = draw_vector(&mut rng, cfg.n) * cfg.sigma_e;

    let gamma = DVector::from_column_slice(&cfg.gamma);
    let kappa = DVector::from_column_slice(&cfg.kappa);
    let psi = DVector::from_column_slice(&cfg.psi);
    let phi = DVector::from_column_slice(&cfg.phi);

    let d = &z * &gamma + &x * &psi + &v + DVector::from_element(cfg.n, 0.5);
    let latent = &d * cfg.beta + &z * &kappa + &x * &phi + &v * cfg.rho + e
        - DVector::from_element(cfg.n, 0.5);
    let y = latent.map(|l| if l >= 0.0 { 1.0 } else { 0.0 });

    let mut kappa_star: Vec<f64> = cfg.kappa.iter().map(|k| k / cfg.sigma_e).collect();
    kappa_star.extend(cfg.phi.iter().map(|p| p / cfg.sigma_e));
    kappa_star.push(-0.5 / cfg.sigma_e);

    let truth = ProbitTruth {
        beta_star: cfg.beta / cfg.sigma_e,
        rho_star: (cfg.beta + cfg.rho) / cfg.sigma_e,
        kappa_star,
        sigma_v: cfg.sigma_v,
        valid: (0..cfg.p_z).filter(|&j| cfg.kappa[j] == 0.0).collect(),
        relevant: (0..cfg.p_z).filter(|&j| cfg.gamma[j] != 0.0).collect(),
    };
    let ds = Dataset::from_parts(y, d, z, x, vec![], vec![])?;
    Ok((ds, truth))
}

/// Population counterfactual contrast at conditioning point `w0`,
/// marginalizing the first-stage error by Gauss-Hermite quadrature.
pub fn true_cate(truth: &ProbitTruth, d1: f64, d2: f64, w0: &[f64]) -> Result<f64> {
    let p_zx = truth.kappa_star.len() - 1;
    if w0.len() != p_zx {
        return Err(Error::DimensionMismatch(format!(
            "conditioning point has {} entries, expected {p_zx}",
            w0.len()
        )));
    }
    let lin: f64 = w0.iter().zip(&truth.kappa_star).map(|(a, b)| a * b).sum::<f64>()
        + truth.kappa_star[p_zx];
    let nodes = gauss_hermite_normal(64, truth.sigma_v);
    let partial_mean = |d: f64| -> f64 {
        nodes
            .iter()
            .map(|&(v, w)| w * crate::linalg::norm_cdf(d * truth.beta_star + lin + v * truth.rho_star))
            .sum()
    };
    Ok(partial_mean(d1) - partial_mean(d2))
}
