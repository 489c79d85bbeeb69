//! Parsing of polynomial literals, measure specs and experiment configs.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use recip_lab::distributions::{ExperimentConfig, MeasureSeq, MeasureSpec};
use recip_lab::reciprocal::RecPoly;
use serde::Deserialize;

use crate::error::CliError;
use crate::Format;

/// How a comma-separated coefficient list is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    /// Full list if palindromic of odd length, else half coefficients.
    Auto,
    Half,
    Full,
}

/// Reads `arg` as a file if one exists at that path, else as a literal.
pub fn literal_or_file(arg: &str) -> Result<String, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        fs::read_to_string(path).map_err(CliError::io(path))
    } else {
        Ok(arg.to_string())
    }
}

pub fn parse_poly(text: &str, layout: Layout) -> Result<RecPoly, CliError> {
    let coeffs = text
        .trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(|s| s.trim().parse::<BigInt>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::usage(format!("cannot parse coefficients {text:?}: {e}")))?;
    if coeffs.len() < 2 {
        return Err(CliError::usage("need at least two coefficients"));
    }
    let palindromic = coeffs.iter().eq(coeffs.iter().rev());
    let full = match layout {
        Layout::Half => false,
        Layout::Full => true,
        Layout::Auto => palindromic && coeffs.len() % 2 == 1,
    };
    let half = if full {
        if !palindromic || coeffs.len() % 2 == 0 {
            return Err(CliError::usage(format!(
                "{text:?} is not reciprocal: a full coefficient list must be a palindrome of odd length"
            )));
        }
        let m = coeffs.len() / 2;
        coeffs[m..].to_vec()
    } else {
        coeffs
    };
    if half.last().is_some_and(|c| *c != BigInt::from(1)) {
        return Err(CliError::usage(
            "the polynomial must be monic: give half coefficients a_0..a_m with a_m = 1, \
             or a full palindromic list starting and ending with 1",
        ));
    }
    Ok(RecPoly::new(half)?)
}

pub fn parse_measure(arg: &str) -> Result<MeasureSeq, CliError> {
    let text = literal_or_file(arg)?;
    let spec: MeasureSpec =
        serde_json::from_str(&text).map_err(|e| CliError::usage(format!("invalid measure spec: {e}")))?;
    Ok(spec.build()?)
}

/// Experiment config file: an experiment config plus an optional output format.
#[derive(Clone, Debug)]
pub struct CliConfig {
    pub experiment: ExperimentConfig,
    pub format: Option<Format>,
}

pub fn load_config(path: &Path) -> Result<CliConfig, CliError> {
    let text = fs::read_to_string(path).map_err(CliError::io(path))?;
    let mut value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    let format = match value.as_object_mut().and_then(|o| o.remove("format")) {
        Some(v) => Some(Format::deserialize(v).map_err(|e| CliError::usage(format!("format: {e}")))?),
        None => None,
    };
    let experiment: ExperimentConfig =
        serde_json::from_value(value).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    Ok(CliConfig { experiment, format })
}
