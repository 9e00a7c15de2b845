//! Control-function and two-stage least squares estimators for polynomial
//! treatment effects, plus the Hausman pretest between them.
//!
//! The control-function fit regresses the outcome on the treatment basis and
//! the first-stage residual. With instruments that enter the first stage
//! linearly this is algebraically a TSLS fit whose instrument set is
//! augmented with the residual and the treatment basis itself; the fit
//! recomputes the estimate along that second path and refuses to return if
//! the two disagree beyond rounding.

use nalgebra::{Cholesky, DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{chi2_sf, gram_condition, norm_ppf, pinv_psd, sym_part, MAX_GRAM_CONDITION};
use crate::model::Dataset;
use crate::regression::{ols_fit, OlsFit};
use crate::tsht::EffectEstimate;

/// Polynomial powers used to expand the treatment (`d_powers`), the
/// instruments (`z_powers`), and the covariates (`x_powers`).
#[derive(Debug, Clone, Serialize)]
pub struct BasisSpec {
    pub d_powers: Vec<u32>,
    pub z_powers: Vec<u32>,
    pub x_powers: Vec<u32>,
}

impl Default for BasisSpec {
    fn default() -> Self {
        BasisSpec { d_powers: vec![1, 2], z_powers: vec![1, 2], x_powers: vec![1] }
    }
}

impl BasisSpec {
    pub fn validate(&self) -> Result<()> {
        for (name, powers) in
            [("d_powers", &self.d_powers), ("z_powers", &self.z_powers), ("x_powers", &self.x_powers)]
        {
            if powers.is_empty() {
                return Err(Error::InvalidOption(format!("{name} must not be empty")));
            }
            if powers[0] != 1 {
                return Err(Error::InvalidOption(format!("{name} must start at power 1")));
            }
            if powers.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::InvalidOption(format!("{name} must be strictly increasing")));
            }
        }
        Ok(())
    }
}

/// Expanded design blocks. Column order within a block is power-major:
/// all source columns at the first power, then all at the second, and so on.
#[derive(Debug, Clone)]
pub struct Bases {
    pub g: DMatrix<f64>,
    pub g_names: Vec<String>,
    /// Powers surviving deduplication, one per column of `g`.
    pub g_powers: Vec<u32>,
    pub h: DMatrix<f64>,
    pub h_names: Vec<String>,
    pub x: DMatrix<f64>,
    pub x_names: Vec<String>,
    /// Names of expanded columns dropped as exact duplicates or constants.
    pub dropped: Vec<String>,
}

fn power_name(base: &str, p: u32) -> String {
    if p == 1 {
        base.to_string()
    } else {
        format!("{base}^{p}")
    }
}

fn col_pow(src: &DVector<f64>, p: u32) -> DVector<f64> {
    src.map(|v| v.powi(p as i32))
}

fn is_duplicate(kept: &[DVector<f64>], cand: &DVector<f64>) -> bool {
    let constant = cand.iter().all(|&v| v == cand[0]);
    constant || kept.iter().any(|k| k == cand)
}

fn expand(
    n: usize,
    sources: &[(String, DVector<f64>)],
    powers: &[u32],
    dropped: &mut Vec<String>,
) -> (DMatrix<f64>, Vec<String>, Vec<u32>) {
    let mut cols: Vec<DVector<f64>> = Vec::new();
    let mut names = Vec::new();
    let mut kept_powers = Vec::new();
    for &p in powers {
        for (name, src) in sources {
            let cand = col_pow(src, p);
            if is_duplicate(&cols, &cand) {
                dropped.push(power_name(name, p));
            } else {
                cols.push(cand);
                names.push(power_name(name, p));
                kept_powers.push(p);
            }
        }
    }
    let mat = DMatrix::from_fn(n, cols.len(), |i, j| cols[j][i]);
    (mat, names, kept_powers)
}

pub fn build_bases(ds: &Dataset, spec: &BasisSpec) -> Result<Bases> {
    spec.validate()?;
    let mut dropped = Vec::new();

    let n = ds.n();

    let d_src = vec![("D".to_string(), ds.d().clone())];
    let (g, g_names, g_powers) = expand(n, &d_src, &spec.d_powers, &mut dropped);
    if g.ncols() == 0 {
        return Err(Error::ConstantColumn("D".into()));
    }

    let z_src: Vec<_> = (0..ds.p_z())
        .map(|j| (ds.z_names()[j].clone(), ds.z().column(j).into_owned()))
        .collect();
    let (h, h_names, _) = expand(n, &z_src, &spec.z_powers, &mut dropped);

    let x_src: Vec<_> = (0..ds.p_x())
        .map(|j| (ds.x_names()[j].clone(), ds.x().column(j).into_owned()))
        .collect();
    let (x, x_names, _) = expand(n, &x_src, &spec.x_powers, &mut dropped);

    Ok(Bases { g, g_names, g_powers, h, h_names, x, x_names, dropped })
}

fn hcat(n: usize, blocks: &[&DMatrix<f64>]) -> DMatrix<f64> {
    let total: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = DMatrix::zeros(n, total);
    let mut at = 0;
    for b in blocks {
        out.view_mut((0, at), (n, b.ncols())).copy_from(*b);
        at += b.ncols();
    }
    out
}

fn intercept(n: usize) -> DMatrix<f64> {
    DMatrix::from_element(n, 1, 1.0)
}

/// Projects `m` onto the column span of `a` without forming an n-by-n matrix.
fn project(a: &DMatrix<f64>, m: &DMatrix<f64>, context: &str) -> Result<DMatrix<f64>> {
    let ata = a.tr_mul(a);
    let chol = Cholesky::new(ata).ok_or_else(|| Error::RankDeficient {
        cond: gram_condition(a),
        context: context.into(),
    })?;
    Ok(a * chol.solve(&a.tr_mul(m)))
}

#[derive(Debug, Clone)]
pub struct CfFit {
    /// Intercept, treatment basis, covariates, first-stage residual.
    pub coef: DVector<f64>,
    pub cov: DMatrix<f64>,
    pub coef_names: Vec<String>,
    /// Residual variance, RSS / (n - p).
    pub sigma2: f64,
    pub v_hat: DVector<f64>,
    pub first_stage: OlsFit,
    pub g_powers: Vec<u32>,
    /// Max absolute gap between the direct fit and the augmented TSLS path.
    pub augmented_tsls_check: f64,
    pub dropped: Vec<String>,
    pub n: usize,
}

#[derive(Debug, Clone)]
pub struct TslsFit {
    /// Intercept, treatment basis, covariates.
    pub coef: DVector<f64>,
    pub cov: DMatrix<f64>,
    pub coef_names: Vec<String>,
    pub sigma2: f64,
    pub g_powers: Vec<u32>,
    pub dropped: Vec<String>,
    pub n: usize,
}

pub fn cf_fit(ds: &Dataset, spec: &BasisSpec) -> Result<CfFit> {
    let bases = build_bases(ds, spec)?;
    let n = ds.n();
    let one = intercept(n);

    let s1 = hcat(n, &[&bases.h, &bases.x, &one]);
    let first_stage = ols_fit(&s1, ds.d(), false)?;
    let v_hat = first_stage.residuals.clone();
    let v_mat = DMatrix::from_column_slice(n, 1, v_hat.as_slice());

    let r = hcat(n, &[&one, &bases.g, &bases.x, &v_mat]);
    let direct = ols_fit(&r, ds.y(), false)?;

    // second path: TSLS with instruments spanning the regressors exactly.
    // v_hat = D - S1 b1 lies in the span of (S1, G), so adding it as a
    // column would make the instrument matrix exactly singular.
    let a = hcat(n, &[&s1, &bases.g]);
    let rh = project(&a, &r, "control function augmented instruments")?;
    let rhtr = rh.tr_mul(&r);
    let b_aug = rhtr
        .lu()
        .solve(&rh.tr_mul(&DMatrix::from_column_slice(n, 1, ds.y().as_slice())))
        .ok_or(Error::SingularWeight)?;
    let check = (&direct.coef - b_aug.column(0)).amax();
    if check > 1e-8 * (1.0 + direct.coef.amax()) {
        return Err(Error::AgreementCheck {
            context: "control function vs augmented TSLS".into(),
            max_diff: check,
        });
    }

    let p = r.ncols();
    if n <= p {
        return Err(Error::TooFewRows { n, needed: p });
    }
    let sigma2 = direct.residuals.norm_squared() / (n - p) as f64;
    let rhtrh = rh.tr_mul(&rh);
    let cov = Cholesky::new(rhtrh)
        .ok_or_else(|| Error::RankDeficient {
            cond: gram_condition(&rh),
            context: "control function covariance".into(),
        })?
        .inverse()
        * sigma2;

    let mut coef_names = vec!["(Intercept)".to_string()];
    coef_names.extend(bases.g_names.iter().cloned());
    coef_names.extend(bases.x_names.iter().cloned());
    coef_names.push("vhat".to_string());

    Ok(CfFit {
        coef: direct.coef,
        cov,
        coef_names,
        sigma2,
        v_hat,
        first_stage,
        g_powers: bases.g_powers,
        augmented_tsls_check: check,
        dropped: bases.dropped,
        n,
    })
}

pub fn tsls_fit(ds: &Dataset, spec: &BasisSpec) -> Result<TslsFit> {
    let bases = build_bases(ds, spec)?;
    let n = ds.n();
    let one = intercept(n);

    let s1 = hcat(n, &[&bases.h, &bases.x, &one]);
    let w0 = hcat(n, &[&one, &bases.g, &bases.x]);
    if s1.ncols() < w0.ncols() {
        return Err(Error::UnderIdentified { instruments: s1.ncols(), endogenous: w0.ncols() });
    }
    let cond = gram_condition(&s1);
    if !cond.is_finite() || cond > MAX_GRAM_CONDITION {
        return Err(Error::RankDeficient { cond, context: "TSLS instrument matrix".into() });
    }

    let w0h = project(&s1, &w0, "TSLS first-stage projection")?;
    let y_mat = DMatrix::from_column_slice(n, 1, ds.y().as_slice());
    let b = w0h
        .tr_mul(&w0)
        .lu()
        .solve(&w0h.tr_mul(&y_mat))
        .ok_or(Error::SingularWeight)?;
    let coef = DVector::from_column_slice(b.column(0).as_slice());

    let p = w0.ncols();
    if n <= p {
        return Err(Error::TooFewRows { n, needed: p });
    }
    let resid = ds.y() - &w0 * &coef;
    let sigma2 = resid.norm_squared() / (n - p) as f64;
    let cov = Cholesky::new(w0h.tr_mul(&w0h))
        .ok_or_else(|| Error::RankDeficient {
            cond: gram_condition(&w0h),
            context: "TSLS covariance".into(),
        })?
        .inverse()
        * sigma2;

    let mut coef_names = vec!["(Intercept)".to_string()];
    coef_names.extend(bases.g_names.iter().cloned());
    coef_names.extend(bases.x_names.iter().cloned());

    Ok(TslsFit {
        coef,
        cov,
        coef_names,
        sigma2,
        g_powers: bases.g_powers,
        dropped: bases.dropped,
        n,
    })
}

fn effect_from(
    coef: &DVector<f64>,
    cov: &DMatrix<f64>,
    g_powers: &[u32],
    d1: f64,
    d2: f64,
    alpha: f64,
    method: &str,
) -> EffectEstimate {
    let g = g_powers.len();
    let delta = DVector::from_iterator(
        g,
        g_powers.iter().map(|&p| d1.powi(p as i32) - d2.powi(p as i32)),
    );
    // treatment basis occupies positions 1..=g, after the intercept
    let beta_g = coef.rows(1, g).into_owned();
    let cov_g = cov.view((1, 1), (g, g)).into_owned();
    let est = delta.dot(&beta_g);
    let se = (delta.dot(&(&cov_g * &delta))).max(0.0).sqrt();
    let z = norm_ppf(1.0 - alpha / 2.0);
    EffectEstimate {
        beta_hat: est,
        se,
        ci: (est - z * se, est + z * se),
        alpha,
        valid_set: vec![],
        method: method.into(),
    }
}

impl CfFit {
    /// Effect of moving the treatment from `d2` to `d1`.
    pub fn causal_effect(&self, d1: f64, d2: f64, alpha: f64) -> EffectEstimate {
        effect_from(&self.coef, &self.cov, &self.g_powers, d1, d2, alpha, "cf_causal_effect")
    }
}

impl TslsFit {
    pub fn causal_effect(&self, d1: f64, d2: f64, alpha: f64) -> EffectEstimate {
        effect_from(&self.coef, &self.cov, &self.g_powers, d1, d2, alpha, "tsls_causal_effect")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PretestChoice {
    ControlFunction,
    Tsls,
}

#[derive(Debug)]
pub struct PretestResult {
    pub hausman_stat: f64,
    pub p_value: f64,
    pub alpha: f64,
    pub chosen: PretestChoice,
    pub cf: CfFit,
    pub tsls: TslsFit,
}

/// Hausman pretest on the treatment-basis block: under exogeneity of the
/// first-stage error both estimators are consistent and TSLS is less
/// efficient, so a large quadratic contrast favors TSLS.
pub fn hausman_pretest(ds: &Dataset, spec: &BasisSpec, alpha: f64) -> Result<PretestResult> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidOption("alpha must lie strictly between 0 and 1".into()));
    }
    let cf = cf_fit(ds, spec)?;
    let tsls = tsls_fit(ds, spec)?;
    let g = cf.g_powers.len();

    let delta = cf.coef.rows(1, g) - tsls.coef.rows(1, g);
    let dcov = sym_part(
        &(tsls.cov.view((1, 1), (g, g)).into_owned() - cf.cov.view((1, 1), (g, g)).into_owned()),
    );
    let pinv = pinv_psd(&dcov, 1e-10);
    let hausman_stat = (delta.transpose() * &pinv * &delta)[(0, 0)];
    // one overidentifying contrast is tested regardless of the basis size
    let p_value = chi2_sf(hausman_stat, 1.0);
    let chosen = if p_value < alpha { PretestChoice::Tsls } else { PretestChoice::ControlFunction };
    Ok(PretestResult { hausman_stat, p_value, alpha, chosen, cf, tsls })
}
