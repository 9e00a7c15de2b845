//! Two-stage hard thresholding: screen weak instruments, vote on validity,
//! and estimate the causal effect from the surviving set.
//!
//! Stage one keeps instruments whose first-stage coefficient survives a
//! studentized threshold. Stage two lets every survivor test every other
//! one with a Bonferroni-style margin; mutual agreement defines a graph whose
//! majority/plurality winners (or maximum cliques) form the valid set V̂.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::clique::{max_cliques, VoteGraph};
use crate::error::{Error, Result};
use crate::linalg::norm_ppf;
use crate::model::{AnalysisOptions, Dataset, Voting};
use crate::regression::{reduced_form_fit, ReducedForm};

/// Outcome of the two selection stages.
#[derive(Debug, Clone, Serialize)]
pub struct SelectionResult {
    /// Relevant instruments (original column indices).
    pub s_hat: Vec<usize>,
    /// Raw vote matrix over positions of `s_hat` (row j votes on column k).
    pub pi_tilde: Vec<Vec<bool>>,
    /// Symmetrized votes: both directions must agree.
    pub pi_hat: Vec<Vec<bool>>,
    /// Vote counts per member of Ŝ, self-vote included.
    pub vm: Vec<usize>,
    /// Candidate valid sets (original indices): exactly one under MP, one per
    /// maximum clique otherwise.
    pub v_hats: Vec<Vec<usize>>,
    /// Whether the first candidate set is a strict majority of Ŝ.
    pub majority_ok: bool,
}

/// Point estimate with its normal-theory confidence interval.
#[derive(Debug, Clone, Serialize)]
pub struct EffectEstimate {
    pub beta_hat: f64,
    pub se: f64,
    pub ci: (f64, f64),
    pub alpha: f64,
    /// Instruments treated as valid (original indices).
    pub valid_set: Vec<usize>,
    pub method: String,
}

/// End-to-end TSHT output.
#[derive(Debug, Clone, Serialize)]
pub struct TshtReport {
    pub selection: SelectionResult,
    /// One estimate per candidate valid set, in the same order.
    pub estimates: Vec<EffectEstimate>,
    pub voting: Voting,
    pub lambda1: f64,
    pub lambda2: f64,
    pub alpha: f64,
    pub z_names: Vec<String>,
    pub n: usize,
}

impl TshtReport {
    pub fn valid_names(&self, which: usize) -> Vec<String> {
        self.selection.v_hats[which].iter().map(|&j| self.z_names[j].clone()).collect()
    }

    /// Ŝ \ V̂ for the given candidate set.
    pub fn invalid_names(&self, which: usize) -> Vec<String> {
        let v = &self.selection.v_hats[which];
        self.selection
            .s_hat
            .iter()
            .filter(|j| !v.contains(j))
            .map(|&j| self.z_names[j].clone())
            .collect()
    }
}

/// First-stage screen: Ŝ = { j : |γ̂_j| ≥ λ₁·√(V̂^γ_jj/n) }.
pub fn select_relevant(rf: &ReducedForm, lambda1: f64) -> Result<Vec<usize>> {
    if !(lambda1 > 0.0) {
        return Err(Error::InvalidOption(format!("lambda1 must be positive, got {lambda1}")));
    }
    let n = rf.n as f64;
    let s: Vec<usize> = (0..rf.p_z())
        .filter(|&j| rf.gamma_hat[j].abs() >= lambda1 * (rf.v_gamma[(j, j)] / n).sqrt())
        .collect();
    if s.is_empty() {
        return Err(Error::NoRelevantIv);
    }
    Ok(s)
}

/// Delta-method standard error of π̂^[j]_k = Γ̂_k − (Γ̂_j/γ̂_j)·γ̂_k, using the
/// joint law of (Γ̂_k, γ̂_k, Γ̂_j, γ̂_j).
fn vote_se(rf: &ReducedForm, j: usize, k: usize) -> f64 {
    let bj = rf.big_gamma_hat[j] / rf.gamma_hat[j];
    let gk_over_gj = rf.gamma_hat[k] / rf.gamma_hat[j];
    let g = DVector::from_row_slice(&[1.0, -bj, -gk_over_gj, bj * gk_over_gj]);
    let (vg, vgg, c) = (&rf.v_gamma, &rf.v_big_gamma, &rf.c_cross);
    let s4 = DMatrix::from_row_slice(
        4,
        4,
        &[
            vgg[(k, k)], c[(k, k)], vgg[(k, j)], c[(k, j)],
            c[(k, k)], vg[(k, k)], c[(j, k)], vg[(k, j)],
            vgg[(j, k)], c[(j, k)], vgg[(j, j)], c[(j, j)],
            c[(k, j)], vg[(j, k)], c[(j, j)], vg[(j, j)],
        ],
    ) / rf.n as f64;
    (g.transpose() * s4 * g)[(0, 0)].sqrt()
}

/// Second-stage voting. Entry (j,k) of Π̃ records whether instrument j's
/// implied effect leaves instrument k looking valid; Π̂ keeps mutual votes.
pub fn vote_matrix(
    rf: &ReducedForm,
    s_hat: &[usize],
    lambda2: f64,
) -> Result<(Vec<Vec<bool>>, Vec<Vec<bool>>)> {
    if !(lambda2 > 0.0) {
        return Err(Error::InvalidOption(format!("lambda2 must be positive, got {lambda2}")));
    }
    for &j in s_hat {
        if rf.gamma_hat[j].abs() < 1e-12 {
            return Err(Error::DivisionGuard);
        }
    }
    let m = s_hat.len();
    let mut pi_tilde = vec![vec![false; m]; m];
    for (a, &j) in s_hat.iter().enumerate() {
        pi_tilde[a][a] = true;
        let bj = rf.big_gamma_hat[j] / rf.gamma_hat[j];
        for (b, &k) in s_hat.iter().enumerate() {
            if a == b {
                continue;
            }
            let pi = rf.big_gamma_hat[k] - bj * rf.gamma_hat[k];
            pi_tilde[a][b] = pi.abs() <= lambda2 * vote_se(rf, j, k);
        }
    }
    let mut pi_hat = vec![vec![false; m]; m];
    for a in 0..m {
        for b in 0..m {
            pi_hat[a][b] = pi_tilde[a][b] && pi_tilde[b][a];
        }
    }
    Ok((pi_tilde, pi_hat))
}

fn vote_counts(pi_hat: &[Vec<bool>]) -> Vec<usize> {
    let m = pi_hat.len();
    (0..m).map(|k| (0..m).filter(|&j| pi_hat[j][k]).count()).collect()
}

/// Majority-plurality rule; returns positions within Ŝ, ascending.
pub fn select_valid_mp(pi_hat: &[Vec<bool>]) -> Vec<usize> {
    let m = pi_hat.len();
    let vm = vote_counts(pi_hat);
    let max = *vm.iter().max().expect("nonempty vote matrix");
    (0..m).filter(|&k| vm[k] * 2 > m || vm[k] == max).collect()
}

/// Maximum-clique rule; returns one position set per maximum clique,
/// in lexicographic order.
pub fn select_valid_mc(pi_hat: &[Vec<bool>]) -> Result<Vec<Vec<usize>>> {
    let labels = (0..pi_hat.len()).map(|k| k.to_string()).collect();
    let adj = pi_hat.to_vec();
    max_cliques(&VoteGraph::new(labels, adj)?)
}

/// Weighting matrix M(b) = V̂^Γ − b(Ĉ + Ĉᵀ) + b²V̂^γ restricted to V̂.
fn m_of_beta(rf: &ReducedForm, v_hat: &[usize], b: f64) -> DMatrix<f64> {
    let m = v_hat.len();
    DMatrix::from_fn(m, m, |r, c| {
        let (j, k) = (v_hat[r], v_hat[c]);
        rf.v_big_gamma[(j, k)] - b * (rf.c_cross[(j, k)] + rf.c_cross[(k, j)])
            + b * b * rf.v_gamma[(j, k)]
    })
}

/// One-step efficient estimate and CI from a fixed valid set.
pub fn tsht_estimate(rf: &ReducedForm, v_hat: &[usize], alpha: f64) -> Result<EffectEstimate> {
    if v_hat.is_empty() {
        return Err(Error::InvalidOption("valid set must be nonempty".into()));
    }
    let n = rf.n as f64;
    let p_w = rf.sigma_w.nrows();
    let comp: Vec<usize> = (0..p_w).filter(|i| !v_hat.contains(i)).collect();

    let gv = DVector::from_iterator(v_hat.len(), v_hat.iter().map(|&j| rf.gamma_hat[j]));
    let gcapv = DVector::from_iterator(v_hat.len(), v_hat.iter().map(|&j| rf.big_gamma_hat[j]));

    // pilot weighting: second moments of the V̂ columns after projecting out
    // every other W column (Schur complement of Σ̂)
    let sub = |rows: &[usize], cols: &[usize]| {
        DMatrix::from_fn(rows.len(), cols.len(), |r, c| rf.sigma_w[(rows[r], cols[c])])
    };
    let a_tilde = if comp.is_empty() {
        sub(v_hat, v_hat)
    } else {
        let scc = sub(&comp, &comp)
            .cholesky()
            .ok_or(Error::RankDeficient { cond: f64::INFINITY, context: "Sigma_W complement block".into() })?;
        let cross = sub(&comp, v_hat);
        sub(v_hat, v_hat) - cross.transpose() * scc.solve(&cross)
    };
    let beta_tilde = (gv.transpose() * &a_tilde * &gcapv)[(0, 0)]
        / (gv.transpose() * &a_tilde * &gv)[(0, 0)];

    let a_hat = m_of_beta(rf, v_hat, beta_tilde)
        .cholesky()
        .ok_or(Error::SingularWeight)?
        .inverse();
    let denom = (gv.transpose() * &a_hat * &gv)[(0, 0)];
    let beta_hat = (gv.transpose() * &a_hat * &gcapv)[(0, 0)] / denom;

    let m_at_hat = m_of_beta(rf, v_hat, beta_hat);
    let se = ((gv.transpose() * &a_hat * m_at_hat * &a_hat * &gv)[(0, 0)] / (n * denom * denom))
        .sqrt();
    let z = norm_ppf(1.0 - alpha / 2.0);
    Ok(EffectEstimate {
        beta_hat,
        se,
        ci: (beta_hat - z * se, beta_hat + z * se),
        alpha,
        valid_set: v_hat.to_vec(),
        method: "tsht".into(),
    })
}

/// Full pipeline: reduced form, both selection stages, and one estimate per
/// candidate valid set.
pub fn tsht(ds: &Dataset, opts: &AnalysisOptions) -> Result<TshtReport> {
    opts.validate()?;
    let rf = reduced_form_fit(ds)?;
    tsht_from_reduced_form(&rf, ds.z_names(), opts)
}

/// Same pipeline starting from a precomputed reduced form, so callers that
/// need the reduced form for other intervals don't fit it twice.
pub fn tsht_from_reduced_form(
    rf: &ReducedForm,
    z_names: &[String],
    opts: &AnalysisOptions,
) -> Result<TshtReport> {
    let (lambda1, lambda2) = (opts.lambda1(rf.n), opts.lambda2(rf.n));
    let s_hat = select_relevant(rf, lambda1)?;
    let (pi_tilde, pi_hat) = vote_matrix(rf, &s_hat, lambda2)?;
    let vm = vote_counts(&pi_hat);

    let position_sets: Vec<Vec<usize>> = match opts.voting {
        Voting::Mp => vec![select_valid_mp(&pi_hat)],
        Voting::MaxClique => select_valid_mc(&pi_hat)?,
    };
    let v_hats: Vec<Vec<usize>> = position_sets
        .iter()
        .map(|set| set.iter().map(|&pos| s_hat[pos]).collect())
        .collect();
    let majority_ok = 2 * v_hats[0].len() > s_hat.len();

    let estimates = v_hats
        .iter()
        .map(|v| {
            let mut est = tsht_estimate(rf, v, opts.alpha)?;
            est.method = match opts.voting {
                Voting::Mp => "tsht_mp".into(),
                Voting::MaxClique => "tsht_mc".into(),
            };
            Ok(est)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(TshtReport {
        selection: SelectionResult { s_hat, pi_tilde, pi_hat, vm, v_hats, majority_ok },
        estimates,
        voting: opts.voting,
        lambda1,
        lambda2,
        alpha: opts.alpha,
        z_names: z_names.to_vec(),
        n: rf.n,
    })
}
