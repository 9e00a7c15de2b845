//! Small numeric helpers shared by the estimators.

use nalgebra::{DMatrix, DVector};
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

/// Condition number of the Gram matrix XᵀX, computed from the singular
/// values of the design itself (squared ratio), so the threshold is
/// independent of how the Gram matrix would later be factored.
pub(crate) fn gram_condition(design: &DMatrix<f64>) -> f64 {
    let sv = design.clone().svd(false, false).singular_values;
    let (mut smax, mut smin) = (0.0f64, f64::INFINITY);
    for &s in sv.iter() {
        smax = smax.max(s);
        smin = smin.min(s);
    }
    if smin <= 0.0 {
        return f64::INFINITY;
    }
    (smax / smin).powi(2)
}

/// Gram condition threshold used everywhere a design matrix must be full rank.
pub(crate) const MAX_GRAM_CONDITION: f64 = 1e12;

pub(crate) fn sym_part(a: &DMatrix<f64>) -> DMatrix<f64> {
    (a + a.transpose()) * 0.5
}

/// Symmetrize and clip eigenvalues from below, making the matrix usable as a
/// covariance (e.g. for a Cholesky factor) even when finite-sample cross
/// blocks leave it slightly indefinite.
pub(crate) fn clip_psd(a: &DMatrix<f64>, floor: f64) -> DMatrix<f64> {
    let es = sym_part(a).symmetric_eigen();
    let clipped = es.eigenvalues.map(|l| l.max(floor));
    &es.eigenvectors * DMatrix::from_diagonal(&clipped) * es.eigenvectors.transpose()
}

/// Lower Cholesky factor of the clipped matrix.
pub(crate) fn psd_cholesky(a: &DMatrix<f64>, floor: f64) -> DMatrix<f64> {
    let clipped = clip_psd(a, floor);
    match clipped.clone().cholesky() {
        Some(ch) => ch.l(),
        // clipping can leave an eigenvalue exactly at the floor; nudge once
        None => clip_psd(&clipped, floor * 100.0)
            .cholesky()
            .expect("clipped matrix must be positive definite")
            .l(),
    }
}

/// Moore-Penrose pseudoinverse of a symmetrized matrix with negative
/// eigendirections zeroed and eigenvalues below `rel_cut`·max treated as zero.
pub(crate) fn pinv_psd(a: &DMatrix<f64>, rel_cut: f64) -> DMatrix<f64> {
    let es = sym_part(a).symmetric_eigen();
    let clipped: Vec<f64> = es.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
    let lmax = clipped.iter().cloned().fold(0.0f64, f64::max);
    let inv = DVector::from_iterator(
        clipped.len(),
        clipped
            .iter()
            .map(|&l| if l > rel_cut * lmax && l > 0.0 { 1.0 / l } else { 0.0 }),
    );
    &es.eigenvectors * DMatrix::from_diagonal(&inv) * es.eigenvectors.transpose()
}

pub(crate) fn norm_cdf(x: f64) -> f64 {
    Normal::standard().cdf(x)
}

/// Upper tail of the standard normal; erfc-based so far-tail values keep
/// full relative precision where 1 - cdf would cancel.
pub(crate) fn norm_sf(x: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(x / std::f64::consts::SQRT_2)
}

/// Standard normal quantile.
pub(crate) fn norm_ppf(p: f64) -> f64 {
    Normal::standard().inverse_cdf(p)
}

/// Upper tail of the chi-squared distribution.
pub(crate) fn chi2_sf(x: f64, df: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    1.0 - ChiSquared::new(df).expect("valid df").cdf(x)
}

/// Nodes and weights for integrating E[f(V)] with V ~ N(0, sigma²), derived
/// from the Hermite three-term recurrence (Golub-Welsch): the Jacobi matrix
/// has zero diagonal and off-diagonal entries √(k/2); its eigenvalues are the
/// nodes and the squared first eigenvector components are the weights (which
/// already sum to one under this normalization).
pub(crate) fn gauss_hermite_normal(n_nodes: usize, sigma: f64) -> Vec<(f64, f64)> {
    let mut jacobi = DMatrix::zeros(n_nodes, n_nodes);
    for k in 1..n_nodes {
        let b = (k as f64 / 2.0).sqrt();
        jacobi[(k - 1, k)] = b;
        jacobi[(k, k - 1)] = b;
    }
    let es = jacobi.symmetric_eigen();
    let mut out: Vec<(f64, f64)> = (0..n_nodes)
        .map(|i| {
            let node = es.eigenvalues[i] * std::f64::consts::SQRT_2 * sigma;
            let w = es.eigenvectors[(0, i)].powi(2);
            (node, w)
        })
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}
