//! Test of endogeneity (H₀: σ₁₂ = 0) that stays valid when some candidate
//! instruments are invalid.
//!
//! σ₁₂ is the covariance between the structural and first-stage errors. It
//! is identified from the reduced-form residual moments Θ̂ together with a
//! ratio-form effect estimate built on the instruments judged valid.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::norm_sf;
use crate::model::{AnalysisOptions, Dataset, Voting};
use crate::regression::{reduced_form_fit, ReducedForm};
use crate::tsht::{select_relevant, select_valid_mc, select_valid_mp, vote_matrix};

#[derive(Debug, Clone, Serialize)]
pub struct EndoTestResult {
    pub sigma12_hat: f64,
    pub se: f64,
    pub z_stat: f64,
    pub p_value: f64,
    pub rejected: bool,
    pub alpha: f64,
    /// Instruments treated as valid (original indices).
    pub valid_set: Vec<usize>,
    /// Ŝ members excluded from the valid set, by name.
    pub invalid_names: Vec<String>,
    pub theta11: f64,
    pub theta22: f64,
    pub theta12: f64,
    /// Ratio-form effect estimate used inside σ̂₁₂.
    pub beta_hat: f64,
    /// Bootstrap replicate count when the bootstrap SE was requested.
    pub bootstrap: Option<usize>,
}

fn ratio_beta(rf: &ReducedForm, v_hat: &[usize]) -> f64 {
    let num: f64 = v_hat.iter().map(|&j| rf.gamma_hat[j] * rf.big_gamma_hat[j]).sum();
    let den: f64 = v_hat.iter().map(|&j| rf.gamma_hat[j] * rf.gamma_hat[j]).sum();
    num / den
}

fn sigma12_parts(rf: &ReducedForm, beta: f64) -> (f64, f64, f64, f64) {
    let n = rf.n as f64;
    let theta11 = rf.xi_hat.norm_squared() / n;
    let theta22 = rf.delta_hat.norm_squared() / n;
    let theta12 = rf.xi_hat.dot(&rf.delta_hat) / n;
    (theta11, theta22, theta12, theta12 - beta * theta22)
}

/// Runs the test. With `invalid` set, the valid set comes from the TSHT
/// voting stage (first candidate set under the configured rule); otherwise
/// every screened instrument is treated as valid. `bootstrap` switches the
/// SE from the plug-in influence estimate to a pairs bootstrap with the
/// valid set held fixed at the original selection.
pub fn endo_test(
    ds: &Dataset,
    invalid: bool,
    bootstrap: Option<usize>,
    opts: &AnalysisOptions,
) -> Result<EndoTestResult> {
    opts.validate()?;
    let rf = reduced_form_fit(ds)?;
    let s_hat = select_relevant(&rf, opts.lambda1(rf.n))?;

    let v_hat: Vec<usize> = if invalid {
        let (_, pi_hat) = vote_matrix(&rf, &s_hat, opts.lambda2(rf.n))?;
        let positions = match opts.voting {
            Voting::Mp => select_valid_mp(&pi_hat),
            // several maximum cliques are possible; take the first in
            // lexicographic order so the test is deterministic
            Voting::MaxClique => select_valid_mc(&pi_hat)?.swap_remove(0),
        };
        positions.into_iter().map(|pos| s_hat[pos]).collect()
    } else {
        s_hat.clone()
    };

    let beta_hat = ratio_beta(&rf, &v_hat);
    let (theta11, theta22, theta12, sigma12_hat) = sigma12_parts(&rf, beta_hat);

    let se = match bootstrap {
        None => {
            // plug-in influence: ξ̂δ̂ − β̂δ̂² centered at σ̂₁₂
            let n = rf.n as f64;
            let ssq: f64 = (0..rf.n)
                .map(|i| {
                    let infl = rf.xi_hat[i] * rf.delta_hat[i]
                        - beta_hat * rf.delta_hat[i] * rf.delta_hat[i]
                        - sigma12_hat;
                    infl * infl
                })
                .sum();
            ssq.sqrt() / n
        }
        Some(b) => bootstrap_se(ds, &v_hat, b, opts.seed)?,
    };

    let z_stat = sigma12_hat / se;
    let p_value = 2.0 * norm_sf(z_stat.abs());
    Ok(EndoTestResult {
        sigma12_hat,
        se,
        z_stat,
        p_value,
        rejected: p_value < opts.alpha,
        alpha: opts.alpha,
        invalid_names: s_hat
            .iter()
            .filter(|j| !v_hat.contains(j))
            .map(|&j| ds.z_names()[j].clone())
            .collect(),
        valid_set: v_hat,
        theta11,
        theta22,
        theta12,
        beta_hat,
        bootstrap,
    })
}

/// Pairs bootstrap of σ̂₁₂ with the valid set frozen. Replicates that fail
/// to fit (degenerate resamples) are skipped up to a 10% budget.
fn bootstrap_se(ds: &Dataset, v_hat: &[usize], b: usize, seed: u64) -> Result<f64> {
    if b < 2 {
        return Err(Error::InvalidOption("bootstrap needs at least 2 replicates".into()));
    }
    let n = ds.n();
    let draws: Vec<Option<f64>> = (0..b)
        .into_par_iter()
        .map(|rep| {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            rng.set_stream(rep as u64 + 1);
            let idx: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
            let res = ds.resample(&idx);
            reduced_form_fit(&res).ok().map(|rf| {
                let beta = ratio_beta(&rf, v_hat);
                sigma12_parts(&rf, beta).3
            })
        })
        .collect();

    let ok: Vec<f64> = draws.iter().flatten().copied().collect();
    let failed = b - ok.len();
    if failed * 10 > b {
        return Err(Error::TooManyFailures { failed, total: b });
    }
    let mean = ok.iter().sum::<f64>() / ok.len() as f64;
    let var = ok.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (ok.len() - 1) as f64;
    Ok(var.sqrt())
}
