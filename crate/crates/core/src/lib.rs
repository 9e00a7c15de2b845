//! Causal inference with possibly invalid instrumental variables.
//!
//! The estimand throughout is the effect of a treatment `D` on an outcome `Y`
//! identified through candidate instruments `Z` (with optional covariates
//! `X`), where an unknown subset of the instruments may be invalid, i.e. may
//! affect the outcome through channels other than the treatment.
//!
//! The crate provides:
//!
//! * [`tsht`] — two-stage hard thresholding: screens weak instruments, lets
//!   the survivors vote on each other's validity, and builds an efficient
//!   point estimate and confidence interval from a selected valid set
//!   (majority/plurality or maximum-clique voting).
//! * [`uniform_ci`] — searching and sampling confidence intervals that stay
//!   valid even when the instrument selection makes mistakes.
//! * [`endogeneity`] — a test of whether the treatment is endogenous at all,
//!   robust to invalid instruments.
//! * [`control_function`] — control-function and TSLS estimators for
//!   polynomial outcome models with a Hausman pretest between them.
//! * [`probit_cf`] — a probit control-function estimator for binary outcomes
//!   with invalid-instrument screening and bootstrap CATE inference.
//! * [`simulate`] — seeded synthetic-data generators for all of the above.
//!
//! Matrix types come from [`nalgebra`]; the ones used in public signatures
//! are re-exported here.

pub mod clique;
pub mod control_function;
pub mod endogeneity;
pub mod error;
mod linalg;
pub mod model;
pub mod probit_cf;
pub mod regression;
pub mod simulate;
pub mod tsht;
pub mod uniform_ci;

#[cfg(test)]
mod testdata;

pub use control_function::{BasisSpec, CfFit, PretestChoice, PretestResult, TslsFit};
pub use endogeneity::EndoTestResult;
pub use error::{Error, Result};
pub use model::{AnalysisOptions, ColumnSpec, Dataset, DatasetSummary, RawTable, Voting};
pub use nalgebra::{DMatrix, DVector};
pub use probit_cf::{CateResult, ProbitCfFit, ProbitCfInference};
pub use regression::{OlsFit, ProbitFit, ReducedForm};
pub use simulate::{LinearSimConfig, LinearTruth, ProbitSimConfig, ProbitTruth};
pub use tsht::{EffectEstimate, SelectionResult, TshtReport};
pub use uniform_ci::{CiMethod, Grid, IntervalResult, SamplingOptions};
