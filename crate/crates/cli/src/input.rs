//! CSV ingestion and column-name expansion.
//!
//! Input files are RFC-4180 with a mandatory header row. The cells of the
//! selected columns must be numeric except for the missing-value tokens
//! `NA`, `NaN` and the empty string.

use std::path::Path;

use robustiv::model::validate_dataset;
use robustiv::{ColumnSpec, Dataset, DatasetSummary, RawTable};

use crate::{CliError, DataArgs};

const NA_TOKENS: [&str; 3] = ["NA", "", "NaN"];

pub fn read_table(path: &Path) -> Result<RawTable, CliError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(path)
        .map_err(|e| CliError::Usage(format!("cannot open {}: {e}", path.display())))?;
    let names: Vec<String> = rdr
        .headers()
        .map_err(|e| CliError::Usage(format!("cannot read the header of {}: {e}", path.display())))?
        .iter()
        .map(str::to_string)
        .collect();
    if names.is_empty() || names.iter().all(|n| n.is_empty()) {
        return Err(CliError::Usage(format!("{} has no header row", path.display())));
    }
    let mut columns: Vec<Vec<Option<f64>>> = vec![Vec::new(); names.len()];
    for (i, record) in rdr.records().enumerate() {
        let row = i + 1;
        let record =
            record.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        if record.len() != names.len() {
            return Err(CliError::Usage(format!(
                "row {row} has {} fields, expected {}",
                record.len(),
                names.len()
            )));
        }
        for (j, cell) in record.iter().enumerate() {
            columns[j].push(parse_cell(cell, row, &names[j])?);
        }
    }
    Ok(RawTable { names, columns })
}

fn parse_cell(cell: &str, row: usize, column: &str) -> Result<Option<f64>, CliError> {
    if NA_TOKENS.contains(&cell) {
        return Ok(None);
    }
    cell.parse::<f64>().map(Some).map_err(|_| {
        CliError::Usage(format!("cannot parse `{cell}` as a number (row {row}, column {column})"))
    })
}

/// Splits a comma-separated column list, expanding `Z1..Z10` style ranges.
/// Range endpoints must share an alphabetic prefix; the numeric suffix is
/// formatted without padding, so `Z01..Z10` will not match padded headers.
pub fn expand_names(list: &str) -> Result<Vec<String>, CliError> {
    let mut out = Vec::new();
    for token in list.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        match token.split_once("..") {
            None => out.push(token.to_string()),
            Some((start, end)) => {
                let bad = || {
                    CliError::Usage(format!(
                        "cannot expand `{token}`: ranges look like Z1..Z10 \
                         (shared prefix, increasing numeric suffix)"
                    ))
                };
                let (pre_a, lo) = split_trailing_digits(start).ok_or_else(bad)?;
                let (pre_b, hi) = split_trailing_digits(end).ok_or_else(bad)?;
                if pre_a != pre_b || lo > hi {
                    return Err(bad());
                }
                for k in lo..=hi {
                    out.push(format!("{pre_a}{k}"));
                }
            }
        }
    }
    Ok(out)
}

fn split_trailing_digits(name: &str) -> Option<(&str, u64)> {
    let cut = name.rfind(|c: char| !c.is_ascii_digit()).map_or(0, |i| i + 1);
    if cut == name.len() {
        return None;
    }
    name[cut..].parse().ok().map(|k| (&name[..cut], k))
}

pub fn load_dataset(args: &DataArgs) -> Result<(Dataset, DatasetSummary), CliError> {
    let raw = read_table(&args.data)?;
    let spec = ColumnSpec {
        y: args.outcome.clone(),
        d: args.treatment.clone(),
        z: expand_names(&args.iv)?,
        x: expand_names(&args.covariates)?,
        drop_na: !args.fail_on_na,
    };
    if spec.z.is_empty() {
        return Err(CliError::Usage("--iv needs at least one column".into()));
    }
    let (ds, summary) = validate_dataset(&raw, &spec)?;
    if summary.dropped_rows > 0 {
        eprintln!("note: dropped {} incomplete rows", summary.dropped_rows);
    }
    Ok((ds, summary))
}
