//! Shared data model: validated datasets and analysis options.
//!
//! Every estimator in this crate consumes a [`Dataset`] of outcome `y`,
//! treatment `d`, instruments `z` and optional exogenous covariates `x`.
//! An intercept is appended internally wherever a design matrix is built;
//! it is never part of `x`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Voting rule used to combine per-instrument validity votes into V̂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Voting {
    /// Majority + plurality rule on the vote counts.
    Mp,
    /// All maximum cliques of the agreement graph, one candidate V̂ each.
    #[default]
    MaxClique,
}

/// Tuning knobs shared across the estimators.
///
/// The two thresholds default to `sqrt(log n)` when unset, which depends on
/// the sample size, so they are stored as overrides and resolved through
/// [`AnalysisOptions::lambda1`] / [`AnalysisOptions::lambda2`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalysisOptions {
    /// Significance level in (0,1).
    pub alpha: f64,
    /// First-stage relevance threshold λ₁ override.
    pub tuning_1st: Option<f64>,
    /// Second-stage validity threshold λ₂ override.
    pub tuning_2nd: Option<f64>,
    pub voting: Voting,
    /// Seed for every stochastic procedure (sampling CI, bootstraps, simulation).
    pub seed: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            alpha: 0.05,
            tuning_1st: None,
            tuning_2nd: None,
            voting: Voting::default(),
            seed: 0,
        }
    }
}

impl AnalysisOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidOption(format!(
                "alpha must be in (0,1), got {}",
                self.alpha
            )));
        }
        for (name, t) in [("tuning_1st", self.tuning_1st), ("tuning_2nd", self.tuning_2nd)] {
            if let Some(v) = t {
                if !(v > 0.0) || !v.is_finite() {
                    return Err(Error::InvalidOption(format!(
                        "{name} must be a positive finite number, got {v}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Resolved first-stage threshold for a sample of size `n`.
    pub fn lambda1(&self, n: usize) -> f64 {
        self.tuning_1st.unwrap_or_else(|| (n as f64).ln().sqrt())
    }

    /// Resolved second-stage threshold for a sample of size `n`.
    pub fn lambda2(&self, n: usize) -> f64 {
        self.tuning_2nd.unwrap_or_else(|| (n as f64).ln().sqrt())
    }
}

/// Validated sample. Immutable after construction; rows keep input order.
#[derive(Debug, Clone)]
pub struct Dataset {
    y: DVector<f64>,
    d: DVector<f64>,
    z: DMatrix<f64>,
    x: DMatrix<f64>,
    z_names: Vec<String>,
    x_names: Vec<String>,
}

impl Dataset {
    /// Builds a dataset from raw vectors/matrices, checking every invariant:
    /// consistent row counts, n > p_z + p_x + 1, finite entries, and no
    /// constant instrument or covariate column (the intercept is internal).
    ///
    /// Empty name lists are auto-filled as Z1..Zpz and X1..Xpx.
    pub fn from_parts(
        y: DVector<f64>,
        d: DVector<f64>,
        z: DMatrix<f64>,
        x: DMatrix<f64>,
        z_names: Vec<String>,
        x_names: Vec<String>,
    ) -> Result<Self> {
        let n = y.len();
        if d.len() != n || z.nrows() != n || (x.ncols() > 0 && x.nrows() != n) {
            return Err(Error::DimensionMismatch(format!(
                "row counts differ: y={}, d={}, z={}, x={}",
                n,
                d.len(),
                z.nrows(),
                x.nrows()
            )));
        }
        if z.ncols() == 0 {
            return Err(Error::DimensionMismatch(
                "at least one instrument column is required".into(),
            ));
        }
        let (p_z, p_x) = (z.ncols(), x.ncols());
        if n <= p_z + p_x + 1 {
            return Err(Error::TooFewRows { n, needed: p_z + p_x + 2 });
        }
        let z_names = if z_names.is_empty() {
            (1..=p_z).map(|j| format!("Z{j}")).collect()
        } else {
            z_names
        };
        let x_names = if x_names.is_empty() {
            (1..=p_x).map(|j| format!("X{j}")).collect()
        } else {
            x_names
        };
        if z_names.len() != p_z || x_names.len() != p_x {
            return Err(Error::DimensionMismatch(format!(
                "name counts (z={}, x={}) do not match column counts (p_z={p_z}, p_x={p_x})",
                z_names.len(),
                x_names.len()
            )));
        }

        let ds = Dataset { y, d, z, x, z_names, x_names };
        for (name, col) in ds.named_columns() {
            for (i, v) in col.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFinite { column: name.clone(), row: i });
                }
            }
        }
        for j in 0..p_z {
            if is_constant(&ds.z.column(j).iter().cloned().collect::<Vec<_>>()) {
                return Err(Error::ConstantColumn(ds.z_names[j].clone()));
            }
        }
        for j in 0..p_x {
            if is_constant(&ds.x.column(j).iter().cloned().collect::<Vec<_>>()) {
                return Err(Error::ConstantColumn(ds.x_names[j].clone()));
            }
        }
        Ok(ds)
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    pub fn p_z(&self) -> usize {
        self.z.ncols()
    }

    pub fn p_x(&self) -> usize {
        self.x.ncols()
    }

    pub fn y(&self) -> &DVector<f64> {
        &self.y
    }

    pub fn d(&self) -> &DVector<f64> {
        &self.d
    }

    pub fn z(&self) -> &DMatrix<f64> {
        &self.z
    }

    pub fn x(&self) -> &DMatrix<f64> {
        &self.x
    }

    pub fn z_names(&self) -> &[String] {
        &self.z_names
    }

    pub fn x_names(&self) -> &[String] {
        &self.x_names
    }

    /// Full design W = (Z, X, 1) with the intercept in the last column.
    pub fn w_matrix(&self) -> DMatrix<f64> {
        let n = self.n();
        let p = self.p_z() + self.p_x() + 1;
        let mut w = DMatrix::zeros(n, p);
        w.view_mut((0, 0), (n, self.p_z())).copy_from(&self.z);
        if self.p_x() > 0 {
            w.view_mut((0, self.p_z()), (n, self.p_x())).copy_from(&self.x);
        }
        w.column_mut(p - 1).fill(1.0);
        w
    }

    /// Covariates plus intercept, (X, 1), for the second-stage designs.
    pub fn x_with_intercept(&self) -> DMatrix<f64> {
        let n = self.n();
        let p = self.p_x() + 1;
        let mut m = DMatrix::zeros(n, p);
        if self.p_x() > 0 {
            m.view_mut((0, 0), (n, self.p_x())).copy_from(&self.x);
        }
        m.column_mut(p - 1).fill(1.0);
        m
    }

    /// Row subset in the given order; used by the pairs bootstrap. Indices
    /// may repeat. Skips the constant-column check since resampling can
    /// legitimately produce degenerate draws that the caller must handle.
    pub fn resample(&self, idx: &[usize]) -> Dataset {
        let m = idx.len();
        let take_vec = |v: &DVector<f64>| DVector::from_iterator(m, idx.iter().map(|&i| v[i]));
        let take_mat = |a: &DMatrix<f64>| {
            DMatrix::from_fn(m, a.ncols(), |r, c| a[(idx[r], c)])
        };
        Dataset {
            y: take_vec(&self.y),
            d: take_vec(&self.d),
            z: take_mat(&self.z),
            x: take_mat(&self.x),
            z_names: self.z_names.clone(),
            x_names: self.x_names.clone(),
        }
    }

    fn named_columns(&self) -> Vec<(String, Vec<f64>)> {
        let mut out = vec![
            ("y".to_string(), self.y.iter().cloned().collect()),
            ("d".to_string(), self.d.iter().cloned().collect()),
        ];
        for j in 0..self.p_z() {
            out.push((self.z_names[j].clone(), self.z.column(j).iter().cloned().collect()));
        }
        for j in 0..self.p_x() {
            out.push((self.x_names[j].clone(), self.x.column(j).iter().cloned().collect()));
        }
        out
    }
}

fn is_constant(col: &[f64]) -> bool {
    col.windows(2).all(|w| w[0] == w[1])
}

/// Column-oriented raw table, the shape produced by CSV ingestion. Missing
/// cells are `None`.
#[derive(Debug, Clone, Default)]
pub struct RawTable {
    pub names: Vec<String>,
    pub columns: Vec<Vec<Option<f64>>>,
}

impl RawTable {
    fn column(&self, name: &str) -> Result<&Vec<Option<f64>>> {
        self.names
            .iter()
            .position(|c| c == name)
            .map(|i| &self.columns[i])
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    }
}

/// Which raw columns play which role.
#[derive(Debug, Clone)]
pub struct ColumnSpec {
    pub y: String,
    pub d: String,
    pub z: Vec<String>,
    pub x: Vec<String>,
    /// Drop rows with any missing value among the selected columns; when
    /// false a missing value is an error.
    pub drop_na: bool,
}

/// Shape report produced alongside a validated dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetSummary {
    pub n: usize,
    pub p_z: usize,
    pub p_x: usize,
    pub dropped_rows: usize,
}

/// Selects and checks the requested columns, performing complete-case
/// filtering when `spec.drop_na` is set. Row order is preserved.
pub fn validate_dataset(raw: &RawTable, spec: &ColumnSpec) -> Result<(Dataset, DatasetSummary)> {
    let mut selected: Vec<(&str, &Vec<Option<f64>>)> = Vec::new();
    selected.push((spec.y.as_str(), raw.column(&spec.y)?));
    selected.push((spec.d.as_str(), raw.column(&spec.d)?));
    for name in &spec.z {
        selected.push((name.as_str(), raw.column(name)?));
    }
    for name in &spec.x {
        selected.push((name.as_str(), raw.column(name)?));
    }

    let n_raw = selected.iter().map(|(_, c)| c.len()).max().unwrap_or(0);
    for (name, col) in &selected {
        if col.len() != n_raw {
            return Err(Error::DimensionMismatch(format!(
                "column {name} has {} rows, expected {n_raw}",
                col.len()
            )));
        }
    }

    let mut keep: Vec<usize> = Vec::with_capacity(n_raw);
    for i in 0..n_raw {
        let missing = selected.iter().find(|(_, col)| col[i].is_none());
        match missing {
            None => keep.push(i),
            Some((name, _)) => {
                if !spec.drop_na {
                    return Err(Error::NonFinite { column: name.to_string(), row: i });
                }
            }
        }
    }
    let n = keep.len();
    let dropped = n_raw - n;

    let pick = |name: &str| -> Result<DVector<f64>> {
        let col = raw.column(name)?;
        Ok(DVector::from_iterator(n, keep.iter().map(|&i| col[i].unwrap())))
    };
    let pick_mat = |names: &[String]| -> Result<DMatrix<f64>> {
        let mut m = DMatrix::zeros(n, names.len());
        for (j, name) in names.iter().enumerate() {
            m.set_column(j, &pick(name)?);
        }
        Ok(m)
    };

    let ds = Dataset::from_parts(
        pick(&spec.y)?,
        pick(&spec.d)?,
        pick_mat(&spec.z)?,
        pick_mat(&spec.x)?,
        spec.z.clone(),
        spec.x.clone(),
    )?;
    let summary = DatasetSummary { n, p_z: ds.p_z(), p_x: ds.p_x(), dropped_rows: dropped };
    Ok((ds, summary))
}
