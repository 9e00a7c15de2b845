//! OLS, probit, and the joint reduced-form fit.
//!
//! The reduced form regresses both the outcome and the treatment on
//! W = (Z, X, 1) and keeps the instrument blocks of the coefficient vectors
//! together with their joint heteroscedasticity-robust (HC0) covariance.
//! Everything downstream (selection, voting, searching, endogeneity) consumes
//! the [`ReducedForm`] rather than raw data, so alternative reduced-form
//! estimators can be swapped in later.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{gram_condition, norm_cdf, norm_ppf, MAX_GRAM_CONDITION};
use crate::model::Dataset;

/// Least-squares fit with both covariance conventions.
#[derive(Debug, Clone)]
pub struct OlsFit {
    pub coef: DVector<f64>,
    pub residuals: DVector<f64>,
    /// (XᵀX/n)⁻¹, the normalized inverse Gram matrix.
    pub xtx_inv: DMatrix<f64>,
    /// Covariance of √n(coef − truth): HC0 sandwich when `robust`, classical
    /// σ̂²(XᵀX/n)⁻¹ with σ̂² = RSS/n otherwise.
    pub robust_cov: DMatrix<f64>,
}

impl OlsFit {
    /// Finite-sample covariance of coef itself (robust_cov / n).
    pub fn cov_finite(&self) -> DMatrix<f64> {
        &self.robust_cov / self.residuals.len() as f64
    }
}

pub fn ols_fit(design: &DMatrix<f64>, y: &DVector<f64>, robust: bool) -> Result<OlsFit> {
    let (n, p) = design.shape();
    if y.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "design has {n} rows but y has {} entries",
            y.len()
        )));
    }
    if n <= p {
        return Err(Error::TooFewRows { n, needed: p + 1 });
    }
    let cond = gram_condition(design);
    if !(cond < MAX_GRAM_CONDITION) {
        return Err(Error::RankDeficient { cond, context: "OLS design".into() });
    }

    let xtx = design.transpose() * design;
    let chol = xtx
        .clone()
        .cholesky()
        .ok_or(Error::RankDeficient { cond, context: "OLS Gram factorization".into() })?;
    let coef = chol.solve(&(design.transpose() * y));
    let residuals = y - design * &coef;
    let xtx_inv = chol.inverse() * n as f64;

    let robust_cov = if robust {
        // S/n = (1/n) Σ r̂ᵢ² WᵢWᵢᵀ, then (XᵀX/n)⁻¹ (S/n) (XᵀX/n)⁻¹
        let meat = weighted_gram(design, &residuals.map(|r| r * r)) / n as f64;
        &xtx_inv * meat * &xtx_inv
    } else {
        let sigma2 = residuals.norm_squared() / n as f64;
        &xtx_inv * sigma2
    };

    Ok(OlsFit { coef, residuals, xtx_inv, robust_cov })
}

/// Xᵀ diag(w) X without materializing the diagonal matrix.
fn weighted_gram(design: &DMatrix<f64>, w: &DVector<f64>) -> DMatrix<f64> {
    let mut scaled = design.clone();
    for (i, mut row) in scaled.row_iter_mut().enumerate() {
        row *= w[i];
    }
    design.transpose() * scaled
}

/// Joint reduced-form estimate of (Γ̂, γ̂) with HC0 covariance blocks.
#[derive(Debug, Clone)]
pub struct ReducedForm {
    /// Treatment-equation instrument coefficients γ̂.
    pub gamma_hat: DVector<f64>,
    /// Outcome-equation instrument coefficients Γ̂.
    pub big_gamma_hat: DVector<f64>,
    /// Covariance of √n(γ̂ − γ), instrument block.
    pub v_gamma: DMatrix<f64>,
    /// Covariance of √n(Γ̂ − Γ), instrument block.
    pub v_big_gamma: DMatrix<f64>,
    /// Cross covariance Ĉ between √n Γ̂ and √n γ̂, instrument block.
    pub c_cross: DMatrix<f64>,
    /// Sample second moments Σ̂ = (1/n) Σ WᵢWᵢᵀ over all W columns.
    pub sigma_w: DMatrix<f64>,
    /// Outcome-equation residuals ξ̂.
    pub xi_hat: DVector<f64>,
    /// Treatment-equation residuals δ̂.
    pub delta_hat: DVector<f64>,
    pub n: usize,
}

impl ReducedForm {
    pub fn p_z(&self) -> usize {
        self.gamma_hat.len()
    }

    /// Stacked 2p_z×2p_z covariance [[V̂^Γ, Ĉ],[Ĉᵀ, V̂^γ]] on the √n scale,
    /// with Γ̂ coordinates first.
    pub fn joint_cov(&self) -> DMatrix<f64> {
        let p = self.p_z();
        let mut out = DMatrix::zeros(2 * p, 2 * p);
        out.view_mut((0, 0), (p, p)).copy_from(&self.v_big_gamma);
        out.view_mut((0, p), (p, p)).copy_from(&self.c_cross);
        out.view_mut((p, 0), (p, p)).copy_from(&self.c_cross.transpose());
        out.view_mut((p, p), (p, p)).copy_from(&self.v_gamma);
        out
    }

    /// Per-instrument ratio estimates β̂^[j] = Γ̂_j/γ̂_j.
    pub fn ratios(&self, s: &[usize]) -> Vec<f64> {
        s.iter().map(|&j| self.big_gamma_hat[j] / self.gamma_hat[j]).collect()
    }
}

pub fn reduced_form_fit(ds: &Dataset) -> Result<ReducedForm> {
    let w = ds.w_matrix();
    let n = ds.n();
    let p_z = ds.p_z();

    let fit_y = ols_fit(&w, ds.y(), true)?;
    let fit_d = ols_fit(&w, ds.d(), true)?;

    // cross sandwich with meat (1/n) Σ ξ̂ᵢδ̂ᵢ WᵢWᵢᵀ
    let cross_w = DVector::from_fn(n, |i, _| fit_y.residuals[i] * fit_d.residuals[i]);
    let cross_meat = weighted_gram(&w, &cross_w) / n as f64;
    let c_full = &fit_y.xtx_inv * cross_meat * &fit_y.xtx_inv;

    let zb = |m: &DMatrix<f64>| m.view((0, 0), (p_z, p_z)).into_owned();
    Ok(ReducedForm {
        gamma_hat: fit_d.coef.rows(0, p_z).into_owned(),
        big_gamma_hat: fit_y.coef.rows(0, p_z).into_owned(),
        v_gamma: zb(&fit_d.robust_cov),
        v_big_gamma: zb(&fit_y.robust_cov),
        c_cross: zb(&c_full),
        sigma_w: (w.transpose() * &w) / n as f64,
        xi_hat: fit_y.residuals,
        delta_hat: fit_d.residuals,
        n,
    })
}

/// Probit maximum-likelihood fit.
#[derive(Debug, Clone)]
pub struct ProbitFit {
    pub coef: DVector<f64>,
    /// Inverse observed information at the optimum (finite-sample scale).
    pub cov: DMatrix<f64>,
    pub loglik: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Score factor r_i = ∂ log L_i / ∂η: φ(η)/Φ(η) for successes and
/// −φ(η)/(1−Φ(η)) for failures. Beyond |η| = 30 the cdf is replaced by its
/// Mills-ratio asymptote, where both cases reduce to −η − 1/η.
fn probit_score_factor(y_is_one: bool, eta: f64) -> f64 {
    let pdf = (-0.5 * eta * eta).exp() / (2.0 * std::f64::consts::PI).sqrt();
    if y_is_one {
        if eta < -30.0 {
            -eta - 1.0 / eta
        } else {
            pdf / norm_cdf(eta)
        }
    } else if eta > 30.0 {
        -eta - 1.0 / eta
    } else {
        -pdf / norm_cdf(-eta)
    }
}

fn log_norm_cdf(t: f64) -> f64 {
    if t > -30.0 {
        norm_cdf(t).ln()
    } else {
        // log φ(t) − log(−t − 1/t)
        -0.5 * t * t - 0.5 * (2.0 * std::f64::consts::PI).ln() - (-t - 1.0 / t).ln()
    }
}

fn probit_loglik(eta: &DVector<f64>, y: &DVector<f64>) -> f64 {
    eta.iter()
        .zip(y.iter())
        .map(|(&e, &yi)| if yi == 1.0 { log_norm_cdf(e) } else { log_norm_cdf(-e) })
        .sum()
}

pub fn probit_fit(design: &DMatrix<f64>, y: &DVector<f64>) -> Result<ProbitFit> {
    let (n, p) = design.shape();
    if y.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "design has {n} rows but y has {} entries",
            y.len()
        )));
    }
    if y.iter().any(|&v| v != 0.0 && v != 1.0) {
        return Err(Error::InvalidOption("probit outcome must be coded 0/1".into()));
    }
    let ones = y.iter().filter(|&&v| v == 1.0).count();
    if ones == 0 || ones == n {
        return Err(Error::OneClassOnly);
    }
    if n <= p {
        return Err(Error::TooFewRows { n, needed: p + 1 });
    }
    let cond = gram_condition(design);
    if !(cond < MAX_GRAM_CONDITION) {
        return Err(Error::RankDeficient { cond, context: "probit design".into() });
    }

    let max_iter = 100;
    let mut coef: DVector<f64> = DVector::zeros(p);
    let mut eta: DVector<f64> = DVector::zeros(n);
    let mut ll = probit_loglik(&eta, y);
    // number of undamped steps taken after the decrement test first fired
    let mut settled = 0u8;

    for iter in 1..=max_iter {
        // an iterate classifying every observation correctly with a solid
        // margin certifies separation (scaling it up increases every
        // likelihood term), so no finite optimum exists; the threshold of 1
        // only keeps rounding noise in eta from producing a false
        // certificate, and must stay low enough that the certificate fires
        // before the decrement test can be met along the divergent path
        let separated = (0..n).all(|i| {
            let margin = if y[i] == 1.0 { eta[i] } else { -eta[i] };
            margin >= 1.0
        });
        if separated {
            return Err(Error::NotConverged(iter));
        }
        let r = DVector::from_fn(n, |i, _| probit_score_factor(y[i] == 1.0, eta[i]));
        let grad = design.transpose() * &r;
        // exact Hessian: −Σ wᵢ xᵢxᵢᵀ with w = r(r + η), positive by concavity
        let w = DVector::from_fn(n, |i, _| r[i] * (r[i] + eta[i]));
        let info = weighted_gram(design, &w);
        let chol = info.cholesky().ok_or(Error::NotConverged(iter))?;
        let step = chol.solve(&grad);

        // the likelihood itself carries O(1e-9·|ll|) rounding from the
        // normal cdf, so convergence cannot be judged from likelihood
        // differences; the Newton decrement g'H⁻¹g bounds twice the
        // remaining gain and is computed from score algebra alone. Two
        // undamped steps after the first trigger polish the iterate to
        // quadratic-convergence accuracy, keeping the coefficients well
        // inside the rounding floor of the decrement threshold.
        let scale = 1.0 + ll.abs();
        if grad.dot(&step) <= 4e-9 * scale {
            if settled == 2 {
                return Ok(ProbitFit {
                    coef,
                    cov: chol.inverse(),
                    loglik: ll,
                    iterations: iter - 1,
                    converged: true,
                });
            }
            settled += 1;
            coef += &step;
            eta = design * &coef;
            ll = probit_loglik(&eta, y);
            continue;
        }

        // step-halving with the same rounding allowance; demanding a strict
        // increase can freeze the iterate short of the decrement test
        let mut t = 1.0;
        let mut improved = false;
        for _ in 0..40 {
            let cand = &coef + &step * t;
            let eta_c = design * &cand;
            let ll_c = probit_loglik(&eta_c, y);
            if ll_c >= ll - 1e-9 * scale {
                coef = cand;
                eta = eta_c;
                ll = ll_c;
                improved = true;
                break;
            }
            t *= 0.5;
        }
        if !improved {
            return Err(Error::NotConverged(iter));
        }
    }
    Err(Error::NotConverged(max_iter))
}

/// Intercept-only probit has the closed form Φ⁻¹(mean(y)); exposed for tests
/// and as a sanity anchor for the iterative fit.
pub fn probit_intercept_closed_form(y: &DVector<f64>) -> f64 {
    norm_ppf(y.mean())
}
