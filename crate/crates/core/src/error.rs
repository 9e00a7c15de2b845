//! Error type shared by all estimators in this crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("column `{0}` not found in the input table")]
    MissingColumn(String),

    #[error("not enough rows: n = {n} but the design needs n > {needed}")]
    TooFewRows { n: usize, needed: usize },

    #[error("column `{0}` is constant; an intercept is added internally")]
    ConstantColumn(String),

    #[error("non-finite value in column `{column}`, row {row}")]
    NonFinite { column: String, row: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{context}: design is rank deficient (Gram condition number {cond:.3e} exceeds 1e12)")]
    RankDeficient { cond: f64, context: String },

    #[error("no instrument passes the first-stage relevance threshold")]
    NoRelevantIv,

    #[error("first-stage coefficient inside the relevant set is numerically zero")]
    DivisionGuard,

    #[error("voting graph has no vertices")]
    EmptyGraph,

    #[error("weighting matrix for the valid set is numerically singular")]
    SingularWeight,

    #[error("no grid point accepted by the searching criterion (grid [{lo}, {hi}] with {n_points} points)")]
    EmptySearchSet { lo: f64, hi: f64, n_points: usize },

    #[error("under-identified: {instruments} instruments for {endogenous} endogenous regressors")]
    UnderIdentified { instruments: usize, endogenous: usize },

    #[error("probit fit did not converge after {0} iterations (data may be separated)")]
    NotConverged(usize),

    #[error("binary outcome contains a single class")]
    OneClassOnly,

    #[error("{failed} of {total} bootstrap replicates failed")]
    TooManyFailures { failed: usize, total: usize },

    #[error("invalid option: {0}")]
    InvalidOption(String),

    #[error("{context}: two computation paths disagree (max coefficient difference {max_diff:e})")]
    AgreementCheck { context: String, max_diff: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
