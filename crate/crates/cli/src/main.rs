//! Batch front end for the `robustiv` estimators.
//!
//! Each subcommand reads a CSV with a header row, runs one method, prints a
//! summary block to stdout, and optionally writes a JSON report. Exit codes:
//! 0 on success, 1 on usage or data errors, 2 when the method itself fails
//! on statistical grounds (no relevant instrument, separation, singular
//! designs and the like).

mod input;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use robustiv::control_function::{cf_fit, hausman_pretest, tsls_fit};
use robustiv::endogeneity::endo_test;
use robustiv::probit_cf::cate_ci;
use robustiv::regression::reduced_form_fit;
use robustiv::tsht::{select_relevant, tsht};
use robustiv::uniform_ci::{sampling_ci, searching_ci};
use robustiv::{
    AnalysisOptions, BasisSpec, CiMethod, DMatrix, DVector, Dataset, DatasetSummary,
    EffectEstimate, Grid, IntervalResult, LinearSimConfig, PretestChoice, ProbitSimConfig,
    ReducedForm, SamplingOptions, Voting,
};

use render::{coef_table, divider, sig6, two_sided_p, Table};

#[derive(Debug)]
pub enum CliError {
    /// Bad invocation or malformed input; exit code 1.
    Usage(String),
    /// The data were read fine but the method could not deliver; exit code 2.
    Stat(robustiv::Error),
}

impl From<robustiv::Error> for CliError {
    fn from(e: robustiv::Error) -> Self {
        use robustiv::Error as E;
        match e {
            E::MissingColumn(_)
            | E::TooFewRows { .. }
            | E::ConstantColumn(_)
            | E::NonFinite { .. }
            | E::DimensionMismatch(_)
            | E::InvalidOption(_) => CliError::Usage(e.to_string()),
            other => CliError::Stat(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "robustiv",
    version,
    about = "Causal inference with possibly invalid instrumental variables"
)]
struct Cli {
    /// Worker threads for the parallel steps (fallback: ROBUSTIV_THREADS)
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Select valid instruments by voting and estimate the causal effect
    Tsht {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        tuning: TuningArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Confidence interval that searches the effect grid, robust to
    /// selection errors
    Search {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        tuning: TuningArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Randomized refinement of the searching interval
    Sample {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        tuning: TuningArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Number of resampled coefficient draws
        #[arg(long, default_value_t = 1000)]
        resamples: usize,
        /// Shrinkage factor for the resampling threshold; default
        /// (log n / M)^(1/(2|S|))
        #[arg(long)]
        lambda: Option<f64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Test whether the treatment is endogenous
    Endotest {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        tuning: TuningArgs,
        /// Allow invalid instruments (valid set from voting) or trust all
        /// relevant ones
        #[arg(long, default_value_t = true, action = ArgAction::Set, value_name = "BOOL")]
        invalid: bool,
        /// Replicates for a bootstrap standard error instead of the plug-in
        #[arg(long, value_name = "B")]
        bootstrap: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Control function estimator for polynomial outcome models
    Cf {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        basis: BasisArgs,
        #[command(flatten)]
        effect: EffectArgs,
        /// Significance level for confidence intervals
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Two-stage least squares on the same polynomial bases
    Tsls {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        basis: BasisArgs,
        #[command(flatten)]
        effect: EffectArgs,
        /// Significance level for confidence intervals
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Hausman pretest choosing between control function and TSLS
    Pretest {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        basis: BasisArgs,
        #[command(flatten)]
        effect: EffectArgs,
        /// Pretest level and CI significance level
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Probit control function for a binary outcome, with CATE inference
    Probitcf {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        tuning: TuningArgs,
        /// Treatment level after the change; default d2 + 1
        #[arg(long)]
        d1: Option<f64>,
        /// Baseline treatment level; default median of the treatment
        #[arg(long)]
        d2: Option<f64>,
        /// Conditioning point: `auto` (column means of Z,X) or a comma list
        #[arg(long, default_value = "auto")]
        w0: String,
        /// Bootstrap replicates for the CATE and beta intervals
        #[arg(long, default_value_t = 500, value_name = "B")]
        bootstrap: usize,
        /// Screen the instruments for invalidity
        #[arg(long, default_value_t = true, action = ArgAction::Set, value_name = "BOOL")]
        invalid: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Generate synthetic data: a CSV plus a truth JSON
    Simulate(Box<SimulateArgs>),
}

#[derive(Args, Debug)]
pub struct DataArgs {
    /// Input CSV file with a header row
    #[arg(long, value_name = "FILE")]
    pub data: PathBuf,
    /// Outcome column
    #[arg(long)]
    pub outcome: String,
    /// Treatment column
    #[arg(long)]
    pub treatment: String,
    /// Instrument columns: comma separated, ranges like Z1..Z10 expand
    #[arg(long)]
    pub iv: String,
    /// Covariate columns, same syntax; empty for none
    #[arg(long, default_value = "")]
    pub covariates: String,
    /// Treat missing values as an error instead of dropping their rows
    #[arg(long)]
    pub fail_on_na: bool,
}

#[derive(Args, Debug)]
struct TuningArgs {
    /// Significance level
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// First-stage relevance threshold; default sqrt(log n)
    #[arg(long = "tuning-1st", value_name = "LAMBDA1")]
    tuning_1st: Option<f64>,
    /// Validity threshold; default sqrt(log n)
    #[arg(long = "tuning-2nd", value_name = "LAMBDA2")]
    tuning_2nd: Option<f64>,
    /// Voting rule for the valid set
    #[arg(long, value_enum, default_value_t = VotingArg::Maxclique, ignore_case = true)]
    voting: VotingArg,
    /// Seed for every stochastic step; runs are reproducible by default
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl TuningArgs {
    fn to_options(&self) -> AnalysisOptions {
        AnalysisOptions {
            alpha: self.alpha,
            tuning_1st: self.tuning_1st,
            tuning_2nd: self.tuning_2nd,
            voting: match self.voting {
                VotingArg::Mp => Voting::Mp,
                VotingArg::Maxclique => Voting::MaxClique,
            },
            seed: self.seed,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VotingArg {
    /// Majority + plurality voting
    Mp,
    /// All maximum cliques of the agreement graph
    Maxclique,
}

#[derive(Args, Debug)]
struct GridArgs {
    /// Lower bound of the effect grid; default spans the candidate estimates
    #[arg(long)]
    grid_lo: Option<f64>,
    /// Upper bound of the effect grid
    #[arg(long)]
    grid_hi: Option<f64>,
    /// Number of grid points
    #[arg(long, default_value_t = 4001)]
    grid_points: usize,
}

#[derive(Args, Debug)]
struct BasisArgs {
    /// Treatment polynomial powers
    #[arg(long = "d-powers", default_value = "1,2")]
    d_powers: String,
    /// Instrument polynomial powers
    #[arg(long = "z-powers", default_value = "1,2")]
    z_powers: String,
    /// Covariate polynomial powers
    #[arg(long = "x-powers", default_value = "1")]
    x_powers: String,
}

impl BasisArgs {
    fn to_spec(&self) -> Result<BasisSpec, CliError> {
        Ok(BasisSpec {
            d_powers: parse_powers(&self.d_powers, "d-powers")?,
            z_powers: parse_powers(&self.z_powers, "z-powers")?,
            x_powers: parse_powers(&self.x_powers, "x-powers")?,
        })
    }
}

#[derive(Args, Debug)]
struct EffectArgs {
    /// Report the causal effect of moving the treatment to this level;
    /// default d2 + 1 when only --d2 is given
    #[arg(long)]
    d1: Option<f64>,
    /// Baseline treatment level; default median of the treatment
    #[arg(long)]
    d2: Option<f64>,
}

impl EffectArgs {
    /// None when neither level was given.
    fn resolve(&self, ds: &Dataset) -> Option<(f64, f64)> {
        if self.d1.is_none() && self.d2.is_none() {
            return None;
        }
        let d2 = self.d2.unwrap_or_else(|| median(ds.d().as_slice()));
        let d1 = self.d1.unwrap_or(d2 + 1.0);
        Some((d1, d2))
    }
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Write the full report as JSON to this file
    #[arg(long, value_name = "FILE")]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// Generator family
    #[arg(long, value_enum, default_value_t = ModelArg::Linear, ignore_case = true)]
    model: ModelArg,
    /// Sample size
    #[arg(long)]
    n: usize,
    /// Number of instruments
    #[arg(long = "p-z")]
    p_z: usize,
    /// Number of covariates
    #[arg(long = "p-x", default_value_t = 0)]
    p_x: usize,
    /// Causal effect of the treatment
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    beta: f64,
    /// First-stage strengths: comma list, or one value broadcast to p-z
    #[arg(long, default_value = "0.5")]
    gamma: String,
    /// Direct instrument effects on the outcome, 0 = valid (linear model)
    #[arg(long, default_value = "0")]
    pi: String,
    /// Direct instrument effects on the latent outcome (probit model)
    #[arg(long, default_value = "0")]
    kappa: String,
    /// Covariate effects on the treatment
    #[arg(long, default_value = "0.3")]
    psi: String,
    /// Covariate effects on the outcome
    #[arg(long, default_value = "0.3")]
    phi: String,
    /// Correlation of the outcome and treatment errors (linear model)
    #[arg(long = "err-corr", default_value_t = 0.8, allow_negative_numbers = true)]
    err_corr: f64,
    /// Scale the outcome error with the first instrument (linear model)
    #[arg(long)]
    heteroscedastic: bool,
    /// Confounder loading on the latent outcome (probit model)
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    rho: f64,
    /// First-stage error scale (probit model)
    #[arg(long = "sigma-v", default_value_t = 1.0)]
    sigma_v: f64,
    /// Latent noise scale (probit model)
    #[arg(long = "sigma-e", default_value_t = 1.0)]
    sigma_e: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output CSV path
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    /// Truth JSON path; default replaces the CSV extension with truth.json
    #[arg(long, value_name = "FILE")]
    truth: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    /// Continuous outcome with correlated errors
    Linear,
    /// Binary outcome through a latent probit
    Probit,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Stat(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    init_threads(cli.threads)?;
    match cli.command {
        Command::Tsht { data, tuning, out } => cmd_tsht(&data, &tuning, &out),
        Command::Search { data, tuning, grid, out } => cmd_search(&data, &tuning, &grid, &out),
        Command::Sample { data, tuning, grid, resamples, lambda, out } => {
            cmd_sample(&data, &tuning, &grid, resamples, lambda, &out)
        }
        Command::Endotest { data, tuning, invalid, bootstrap, out } => {
            cmd_endotest(&data, &tuning, invalid, bootstrap, &out)
        }
        Command::Cf { data, basis, effect, alpha, out } => {
            cmd_cf(&data, &basis, &effect, alpha, &out)
        }
        Command::Tsls { data, basis, effect, alpha, out } => {
            cmd_tsls(&data, &basis, &effect, alpha, &out)
        }
        Command::Pretest { data, basis, effect, alpha, out } => {
            cmd_pretest(&data, &basis, &effect, alpha, &out)
        }
        Command::Probitcf { data, tuning, d1, d2, w0, bootstrap, invalid, out } => {
            cmd_probitcf(&data, &tuning, d1, d2, &w0, bootstrap, invalid, &out)
        }
        Command::Simulate(args) => cmd_simulate(&args),
    }
}

fn init_threads(threads: Option<usize>) -> Result<(), CliError> {
    let n = match threads {
        Some(n) => Some(n),
        None => match std::env::var("ROBUSTIV_THREADS") {
            Ok(v) => Some(v.parse().map_err(|_| {
                CliError::Usage(format!("ROBUSTIV_THREADS must be a positive integer, got `{v}`"))
            })?),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot build the thread pool: {e}")))?;
    }
    Ok(())
}

// ---------------------------------------------------------------- reports

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    method: &'a str,
    data: Option<DatasetSummary>,
    result: T,
    warnings: &'a [String],
}

fn write_json<T: Serialize>(
    path: &Option<PathBuf>,
    method: &str,
    data: Option<DatasetSummary>,
    result: T,
    warnings: &[String],
) -> Result<(), CliError> {
    let Some(path) = path else { return Ok(()) };
    let report = Report { method, data, result, warnings };
    let mut text = serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::Usage(format!("cannot serialize the report: {e}")))?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

#[derive(Serialize)]
struct CandidateJson {
    beta_hat: f64,
    std_error: f64,
    ci: (f64, f64),
    valid_ivs: Vec<String>,
    invalid_ivs: Vec<String>,
}

#[derive(Serialize)]
struct TshtJson {
    alpha: f64,
    lambda1: f64,
    lambda2: f64,
    voting: Voting,
    relevant_ivs: Vec<String>,
    vote_counts: Vec<usize>,
    majority_ok: bool,
    candidates: Vec<CandidateJson>,
}

#[derive(Serialize)]
struct IntervalJson {
    alpha: f64,
    method: CiMethod,
    ci: (f64, f64),
    relevant_ivs: Vec<String>,
    grid_lo: f64,
    grid_hi: f64,
    grid_points: usize,
    accepted_points: usize,
    m_resamples: Option<usize>,
    lambda: Option<f64>,
    nonempty_count: Option<usize>,
    fell_back_to_searching: bool,
}

#[derive(Serialize)]
struct EndoJson {
    alpha: f64,
    allow_invalid: bool,
    sigma12_hat: f64,
    std_error: f64,
    z_stat: f64,
    p_value: f64,
    rejected: bool,
    beta_hat: f64,
    valid_ivs: Vec<String>,
    invalid_ivs: Vec<String>,
    bootstrap: Option<usize>,
}

#[derive(Serialize)]
struct CoefJson {
    name: String,
    estimate: f64,
    std_error: f64,
    t_value: f64,
    p_value: f64,
}

#[derive(Serialize)]
struct EffectJson {
    d1: f64,
    d2: f64,
    estimate: f64,
    std_error: f64,
    ci: (f64, f64),
}

#[derive(Serialize)]
struct FitJson {
    coefficients: Vec<CoefJson>,
    sigma2: f64,
    n: usize,
    dropped_basis_columns: Vec<String>,
    effect: Option<EffectJson>,
}

#[derive(Serialize)]
struct PretestJson {
    alpha: f64,
    hausman_stat: f64,
    p_value: f64,
    chosen: PretestChoice,
    control_function: FitJson,
    tsls: FitJson,
}

#[derive(Serialize)]
struct BlockJson {
    estimate: f64,
    std_error: f64,
    ci: (f64, f64),
}

#[derive(Serialize)]
struct ProbitJson {
    alpha: f64,
    relevant_ivs: Vec<String>,
    valid_ivs: Vec<String>,
    detected_invalid_ivs: Option<Vec<String>>,
    beta: BlockJson,
    cate: BlockJson,
    d1: f64,
    d2: f64,
    w0: Vec<f64>,
    rho_hat: f64,
    sigma_v_hat: f64,
    bootstrap: usize,
    failed_replicates: usize,
}

#[derive(Serialize)]
struct SimJson<C: Serialize, T: Serialize> {
    config: C,
    truth: T,
}

// ------------------------------------------------------------- subcommands

fn cmd_tsht(data: &DataArgs, tuning: &TuningArgs, out: &OutputArgs) -> Result<(), CliError> {
    let (ds, summary) = input::load_dataset(data)?;
    let opts = tuning.to_options();
    let report = tsht(&ds, &opts)?;

    let mut warnings = Vec::new();
    if !report.selection.majority_ok {
        let w = "no candidate valid set reaches a strict majority of the relevant instruments";
        eprintln!("warning: {w}");
        warnings.push(w.to_string());
    }

    let lo = ci_label_lo(report.alpha);
    let hi = ci_label_hi(report.alpha);
    let mut table = Table::new(&["betaHat", "Std.Error", &lo, &hi, "Valid IVs"]);
    for (k, est) in report.estimates.iter().enumerate() {
        table.row(vec![
            sig6(est.beta_hat),
            sig6(est.se),
            sig6(est.ci.0),
            sig6(est.ci.1),
            report.valid_names(k).join(" "),
        ]);
    }
    print!("{}", table.render());
    println!("{}", divider());
    for k in 0..report.estimates.len() {
        println!("Detected invalid IVs: {}", name_list(&report.invalid_names(k)));
    }

    let candidates = report
        .estimates
        .iter()
        .enumerate()
        .map(|(k, est)| CandidateJson {
            beta_hat: est.beta_hat,
            std_error: est.se,
            ci: est.ci,
            valid_ivs: report.valid_names(k),
            invalid_ivs: report.invalid_names(k),
        })
        .collect();
    let result = TshtJson {
        alpha: report.alpha,
        lambda1: report.lambda1,
        lambda2: report.lambda2,
        voting: report.voting,
        relevant_ivs: names_of(&ds, &report.selection.s_hat),
        vote_counts: report.selection.vm.clone(),
        majority_ok: report.selection.majority_ok,
        candidates,
    };
    write_json(&out.json, "tsht", Some(summary), result, &warnings)
}

fn cmd_search(
    data: &DataArgs,
    tuning: &TuningArgs,
    grid: &GridArgs,
    out: &OutputArgs,
) -> Result<(), CliError> {
    let (ds, summary) = input::load_dataset(data)?;
    let opts = tuning.to_options();
    opts.validate()?;
    let rf = reduced_form_fit(&ds)?;
    let s_hat = select_relevant(&rf, opts.lambda1(ds.n()))?;
    let g = resolve_grid(grid, &rf, &s_hat)?;
    let res = searching_ci(&rf, &s_hat, opts.alpha, g)?;
    println!(
        "Confidence Interval for Causal Effect: [{},{}]",
        sig6(res.lower),
        sig6(res.upper)
    );
    write_json(&out.json, "search", Some(summary), interval_json(&ds, &s_hat, &res), &[])
}

fn cmd_sample(
    data: &DataArgs,
    tuning: &TuningArgs,
    grid: &GridArgs,
    resamples: usize,
    lambda: Option<f64>,
    out: &OutputArgs,
) -> Result<(), CliError> {
    let (ds, summary) = input::load_dataset(data)?;
    let opts = tuning.to_options();
    opts.validate()?;
    let rf = reduced_form_fit(&ds)?;
    let s_hat = select_relevant(&rf, opts.lambda1(ds.n()))?;
    let g = resolve_grid(grid, &rf, &s_hat)?;
    let sopts = SamplingOptions { m: resamples, lambda, seed: opts.seed, noise_scale: 1.0 };
    let res = sampling_ci(&rf, &s_hat, opts.alpha, g, &sopts)?;
    let mut warnings = Vec::new();
    if res.fell_back_to_searching {
        let w = "every resample rejected the whole grid; reporting the searching interval";
        eprintln!("warning: {w}");
        warnings.push(w.to_string());
    }
    println!(
        "Confidence Interval for Causal Effect: [{},{}]",
        sig6(res.lower),
        sig6(res.upper)
    );
    write_json(&out.json, "sample", Some(summary), interval_json(&ds, &s_hat, &res), &warnings)
}

fn cmd_endotest(
    data: &DataArgs,
    tuning: &TuningArgs,
    invalid: bool,
    bootstrap: Option<usize>,
    out: &OutputArgs,
) -> Result<(), CliError> {
    let (ds, summary) = input::load_dataset(data)?;
    let opts = tuning.to_options();
    let res = endo_test(&ds, invalid, bootstrap, &opts)?;
    let valid = names_of(&ds, &res.valid_set);

    let mut table = Table::new(&["P-value", "Test", "Valid IVs"]);
    table.row(vec![
        sig6(res.p_value),
        if res.rejected { "H0 rejected".into() } else { "H0 not rejected".into() },
        valid.join(" "),
    ]);
    print!("{}", table.render());
    println!("{}", divider());
    println!("Detected invalid IVs: {}", name_list(&res.invalid_names));

    let result = EndoJson {
        alpha: res.alpha,
        allow_invalid: invalid,
        sigma12_hat: res.sigma12_hat,
        std_error: res.se,
        z_stat: res.z_stat,
        p_value: res.p_value,
        rejected: res.rejected,
        beta_hat: res.beta_hat,
        valid_ivs: valid,
        invalid_ivs: res.invalid_names.clone(),
        bootstrap: res.bootstrap,
    };
    write_json(&out.json, "endotest", Some(summary), result, &[])
}

fn cmd_cf(
    data: &DataArgs,
    basis: &BasisArgs,
    effect: &EffectArgs,
    alpha: f64,
    out: &OutputArgs,
) -> Result<(), CliError> {
    check_alpha(alpha)?;
    let (ds, summary) = input::load_dataset(data)?;
    let fit = cf_fit(&ds, &basis.to_spec()?)?;
    let warnings = dropped_warnings(&fit.dropped);

    println!("{}", divider());
    println!("Coefficients of the control function estimators:");
    println!();
    print_fit(&fit.coef_names, &fit.coef, &fit.cov);
    let effect_json = effect.resolve(&ds).map(|(d1, d2)| {
        let est = fit.causal_effect(d1, d2, alpha);
        println!();
        print!("{}", effect_block(&est, alpha));
        effect_from(d1, d2, &est)
    });

    let result =
        fit_json(&fit.coef_names, &fit.coef, &fit.cov, fit.sigma2, fit.n, &fit.dropped, effect_json);
    write_json(&out.json, "cf", Some(summary), result, &warnings)
}

fn cmd_tsls(
    data: &DataArgs,
    basis: &BasisArgs,
    effect: &EffectArgs,
    alpha: f64,
    out: &OutputArgs,
) -> Result<(), CliError> {
    check_alpha(alpha)?;
    let (ds, summary) = input::load_dataset(data)?;
    let fit = tsls_fit(&ds, &basis.to_spec()?)?;
    let warnings = dropped_warnings(&fit.dropped);

    println!("{}", divider());
    println!("Coefficients of the TSLS estimators:");
    println!();
    print_fit(&fit.coef_names, &fit.coef, &fit.cov);
    let effect_json = effect.resolve(&ds).map(|(d1, d2)| {
        let est = fit.causal_effect(d1, d2, alpha);
        println!();
        print!("{}", effect_block(&est, alpha));
        effect_from(d1, d2, &est)
    });

    let result =
        fit_json(&fit.coef_names, &fit.coef, &fit.cov, fit.sigma2, fit.n, &fit.dropped, effect_json);
    write_json(&out.json, "tsls", Some(summary), result, &warnings)
}

fn cmd_pretest(
    data: &DataArgs,
    basis: &BasisArgs,
    effect: &EffectArgs,
    alpha: f64,
    out: &OutputArgs,
) -> Result<(), CliError> {
    check_alpha(alpha)?;
    let (ds, summary) = input::load_dataset(data)?;
    let res = hausman_pretest(&ds, &basis.to_spec()?, alpha)?;
    let warnings = dropped_warnings(&res.cf.dropped);

    let label = match res.chosen {
        PretestChoice::ControlFunction => "control function",
        PretestChoice::Tsls => "TSLS",
    };
    println!("Level {} pretest estimator is {label} estimator.", sig6(alpha));
    println!("{}", divider());
    println!("Coefficients of the pretest estimators:");
    println!();
    let contrast = effect.resolve(&ds);
    let mut effect_json = None;
    match res.chosen {
        PretestChoice::ControlFunction => {
            print_fit(&res.cf.coef_names, &res.cf.coef, &res.cf.cov);
            if let Some((d1, d2)) = contrast {
                let est = res.cf.causal_effect(d1, d2, alpha);
                println!();
                print!("{}", effect_block(&est, alpha));
                effect_json = Some(effect_from(d1, d2, &est));
            }
        }
        PretestChoice::Tsls => {
            print_fit(&res.tsls.coef_names, &res.tsls.coef, &res.tsls.cov);
            if let Some((d1, d2)) = contrast {
                let est = res.tsls.causal_effect(d1, d2, alpha);
                println!();
                print!("{}", effect_block(&est, alpha));
                effect_json = Some(effect_from(d1, d2, &est));
            }
        }
    }

    let (cf_effect, tsls_effect) = match res.chosen {
        PretestChoice::ControlFunction => (effect_json, None),
        PretestChoice::Tsls => (None, effect_json),
    };
    let result = PretestJson {
        alpha: res.alpha,
        hausman_stat: res.hausman_stat,
        p_value: res.p_value,
        chosen: res.chosen,
        control_function: fit_json(
            &res.cf.coef_names,
            &res.cf.coef,
            &res.cf.cov,
            res.cf.sigma2,
            res.cf.n,
            &res.cf.dropped,
            cf_effect,
        ),
        tsls: fit_json(
            &res.tsls.coef_names,
            &res.tsls.coef,
            &res.tsls.cov,
            res.tsls.sigma2,
            res.tsls.n,
            &res.tsls.dropped,
            tsls_effect,
        ),
    };
    write_json(&out.json, "pretest", Some(summary), result, &warnings)
}

#[allow(clippy::too_many_arguments)]
fn cmd_probitcf(
    data: &DataArgs,
    tuning: &TuningArgs,
    d1: Option<f64>,
    d2: Option<f64>,
    w0: &str,
    bootstrap: usize,
    invalid: bool,
    out: &OutputArgs,
) -> Result<(), CliError> {
    let (ds, summary) = input::load_dataset(data)?;
    let opts = tuning.to_options();
    let d2 = d2.unwrap_or_else(|| median(ds.d().as_slice()));
    let d1 = d1.unwrap_or(d2 + 1.0);
    let w0 = match w0 {
        "auto" => None,
        list => Some(parse_vector(list, ds.p_z() + ds.p_x(), "w0")?),
    };
    let inf = cate_ci(&ds, d1, d2, w0, bootstrap, invalid, &opts)?;
    let fit = &inf.fit;

    let mut warnings = Vec::new();
    if inf.cate.n_failed > 0 {
        let w = format!(
            "{} of {} bootstrap replicates failed and were skipped",
            inf.cate.n_failed, inf.cate.b
        );
        eprintln!("note: {w}");
        warnings.push(w);
    }

    let valid: Vec<String> = match &fit.invalid {
        Some(flagged) => fit
            .s_hat
            .iter()
            .filter(|j| !flagged.contains(j))
            .map(|&j| ds.z_names()[j].clone())
            .collect(),
        None => names_of(&ds, &fit.s_hat),
    };

    let lo = ci_label_lo(opts.alpha);
    let hi = ci_label_hi(opts.alpha);
    let mut table = Table::bare(&["", "Estimate", "Std.Error", &lo, &hi, "Valid IVs"]);
    table.row(vec![
        "Beta".into(),
        sig6(fit.beta_hat),
        sig6(inf.beta_se),
        sig6(inf.beta_ci.0),
        sig6(inf.beta_ci.1),
        valid.join(" "),
    ]);
    table.row(vec![
        "CATE".into(),
        sig6(inf.cate.estimate),
        sig6(inf.cate.se),
        sig6(inf.cate.ci.0),
        sig6(inf.cate.ci.1),
        valid.join(" "),
    ]);
    print!("{}", table.render());
    if let Some(flagged) = &fit.invalid {
        println!("{}", divider());
        if flagged.is_empty() {
            println!("No invalid IV is detected");
        } else {
            println!("Detected invalid IVs: {}", names_of(&ds, flagged).join(" "));
        }
    }

    let result = ProbitJson {
        alpha: opts.alpha,
        relevant_ivs: names_of(&ds, &fit.s_hat),
        valid_ivs: valid,
        detected_invalid_ivs: fit.invalid.as_ref().map(|f| names_of(&ds, f)),
        beta: BlockJson { estimate: fit.beta_hat, std_error: inf.beta_se, ci: inf.beta_ci },
        cate: BlockJson { estimate: inf.cate.estimate, std_error: inf.cate.se, ci: inf.cate.ci },
        d1,
        d2,
        w0: inf.cate.w0.clone(),
        rho_hat: fit.rho_hat,
        sigma_v_hat: fit.sigma_v_hat,
        bootstrap: inf.cate.b,
        failed_replicates: inf.cate.n_failed,
    };
    write_json(&out.json, "probitcf", Some(summary), result, &warnings)
}

fn cmd_simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let truth_path = args
        .truth
        .clone()
        .unwrap_or_else(|| args.out.with_extension("truth.json"));
    match args.model {
        ModelArg::Linear => {
            let cfg = LinearSimConfig {
                n: args.n,
                p_z: args.p_z,
                p_x: args.p_x,
                beta: args.beta,
                gamma: parse_vector(&args.gamma, args.p_z, "gamma")?,
                pi: parse_vector(&args.pi, args.p_z, "pi")?,
                psi: parse_vector(&args.psi, args.p_x, "psi")?,
                phi: parse_vector(&args.phi, args.p_x, "phi")?,
                err_corr: args.err_corr,
                heteroscedastic: args.heteroscedastic,
                seed: args.seed,
            };
            let (ds, truth) = robustiv::simulate::gen_linear_iv(&cfg)?;
            write_dataset_csv(&args.out, &ds)?;
            write_json(
                &Some(truth_path.clone()),
                "simulate",
                None,
                SimJson { config: cfg, truth },
                &[],
            )?;
            println!(
                "wrote {} rows to {} (truth in {})",
                ds.n(),
                args.out.display(),
                truth_path.display()
            );
        }
        ModelArg::Probit => {
            let cfg = ProbitSimConfig {
                n: args.n,
                p_z: args.p_z,
                p_x: args.p_x,
                beta: args.beta,
                gamma: parse_vector(&args.gamma, args.p_z, "gamma")?,
                kappa: parse_vector(&args.kappa, args.p_z, "kappa")?,
                psi: parse_vector(&args.psi, args.p_x, "psi")?,
                phi: parse_vector(&args.phi, args.p_x, "phi")?,
                rho: args.rho,
                sigma_v: args.sigma_v,
                sigma_e: args.sigma_e,
                seed: args.seed,
            };
            let (ds, truth) = robustiv::simulate::gen_probit_iv(&cfg)?;
            write_dataset_csv(&args.out, &ds)?;
            write_json(
                &Some(truth_path.clone()),
                "simulate",
                None,
                SimJson { config: cfg, truth },
                &[],
            )?;
            println!(
                "wrote {} rows to {} (truth in {})",
                ds.n(),
                args.out.display(),
                truth_path.display()
            );
        }
    }
    Ok(())
}

// ------------------------------------------------------------------ shared

fn check_alpha(alpha: f64) -> Result<(), CliError> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("alpha must be in (0,1), got {alpha}")))
    }
}

fn names_of(ds: &Dataset, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&j| ds.z_names()[j].clone()).collect()
}

fn name_list(names: &[String]) -> String {
    if names.is_empty() {
        "none".into()
    } else {
        names.join(" ")
    }
}

fn ci_label_lo(alpha: f64) -> String {
    format!("CI({}%)", sig6(100.0 * alpha / 2.0))
}

fn ci_label_hi(alpha: f64) -> String {
    format!("CI({}%)", sig6(100.0 * (1.0 - alpha / 2.0)))
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(|a, b| a.total_cmp(b));
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        0.5 * (s[n / 2 - 1] + s[n / 2])
    }
}

fn parse_powers(arg: &str, flag: &str) -> Result<Vec<u32>, CliError> {
    arg.split(',')
        .map(|t| t.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("--{flag} expects integers, got `{arg}`")))
}

/// Comma list of numbers; a single value broadcasts to the requested length.
fn parse_vector(arg: &str, len: usize, flag: &str) -> Result<Vec<f64>, CliError> {
    let vals: Vec<f64> = arg
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("--{flag} expects numbers, got `{arg}`")))?;
    if vals.len() == len {
        Ok(vals)
    } else if vals.len() == 1 {
        Ok(vec![vals[0]; len])
    } else {
        Err(CliError::Usage(format!(
            "--{flag} has {} entries, expected {len} (or one value to broadcast)",
            vals.len()
        )))
    }
}

fn resolve_grid(args: &GridArgs, rf: &ReducedForm, s_hat: &[usize]) -> Result<Option<Grid>, CliError> {
    match (args.grid_lo, args.grid_hi) {
        (None, None) => {
            if args.grid_points == 4001 {
                Ok(None)
            } else {
                let d = Grid::default_for(rf, s_hat)?;
                Ok(Some(Grid::new(d.lo, d.hi, args.grid_points)?))
            }
        }
        (Some(lo), Some(hi)) => Ok(Some(Grid::new(lo, hi, args.grid_points)?)),
        _ => Err(CliError::Usage("--grid-lo and --grid-hi must be given together".into())),
    }
}

fn interval_json(ds: &Dataset, s_hat: &[usize], res: &IntervalResult) -> IntervalJson {
    IntervalJson {
        alpha: res.alpha,
        method: res.method,
        ci: (res.lower, res.upper),
        relevant_ivs: names_of(ds, s_hat),
        grid_lo: res.grid.lo,
        grid_hi: res.grid.hi,
        grid_points: res.grid.n_points,
        accepted_points: res.accepted.iter().filter(|&&b| b).count(),
        m_resamples: res.m_resamples,
        lambda: res.lambda,
        nonempty_count: res.nonempty_count,
        fell_back_to_searching: res.fell_back_to_searching,
    }
}

fn print_fit(names: &[String], coef: &DVector<f64>, cov: &DMatrix<f64>) {
    let coefs: Vec<f64> = coef.iter().cloned().collect();
    let se: Vec<f64> = (0..coef.len()).map(|i| cov[(i, i)].sqrt()).collect();
    print!("{}", coef_table(names, &coefs, &se));
}

fn effect_block(est: &EffectEstimate, alpha: f64) -> String {
    let lo = ci_label_lo(alpha);
    let hi = ci_label_hi(alpha);
    let mut t = Table::bare(&["", "Estimate", "Std.Error", &lo, &hi]);
    t.row(vec![
        "CE".into(),
        sig6(est.beta_hat),
        sig6(est.se),
        sig6(est.ci.0),
        sig6(est.ci.1),
    ]);
    t.render()
}

fn effect_from(d1: f64, d2: f64, est: &EffectEstimate) -> EffectJson {
    EffectJson { d1, d2, estimate: est.beta_hat, std_error: est.se, ci: est.ci }
}

fn fit_json(
    names: &[String],
    coef: &DVector<f64>,
    cov: &DMatrix<f64>,
    sigma2: f64,
    n: usize,
    dropped: &[String],
    effect: Option<EffectJson>,
) -> FitJson {
    let coefficients = (0..coef.len())
        .map(|i| {
            let se = cov[(i, i)].sqrt();
            let t = if se > 0.0 { coef[i] / se } else { f64::NAN };
            CoefJson {
                name: names[i].clone(),
                estimate: coef[i],
                std_error: se,
                t_value: t,
                p_value: two_sided_p(t),
            }
        })
        .collect();
    FitJson { coefficients, sigma2, n, dropped_basis_columns: dropped.to_vec(), effect }
}

fn dropped_warnings(dropped: &[String]) -> Vec<String> {
    if dropped.is_empty() {
        return Vec::new();
    }
    let w = format!("dropped collinear basis columns: {}", dropped.join(" "));
    eprintln!("note: {w}");
    vec![w]
}

fn write_dataset_csv(path: &Path, ds: &Dataset) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    let mut header = vec!["y".to_string(), "d".to_string()];
    header.extend(ds.z_names().iter().cloned());
    header.extend(ds.x_names().iter().cloned());
    let io_err = |e: csv::Error| CliError::Usage(format!("cannot write {}: {e}", path.display()));
    w.write_record(&header).map_err(io_err)?;
    let mut record = Vec::with_capacity(header.len());
    for i in 0..ds.n() {
        record.clear();
        record.push(ds.y()[i].to_string());
        record.push(ds.d()[i].to_string());
        for j in 0..ds.p_z() {
            record.push(ds.z()[(i, j)].to_string());
        }
        for j in 0..ds.p_x() {
            record.push(ds.x()[(i, j)].to_string());
        }
        w.write_record(&record).map_err(io_err)?;
    }
    w.flush()?;
    Ok(())
}
