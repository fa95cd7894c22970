//! `key = value` experiment files.
//!
//! Keys mirror [`ExperimentSpec`] fields and the search parameters; `#`
//! starts a comment. Only `n` is required.
//!
//! ```text
//! n = 10
//! density = 0.5
//! coeff_range = -1:1
//! replicas = 50
//! backend = exact      # exact | sa | random | remote:<url>
//! graph = complete     # complete | chimera:<m> | file:<path>
//! i_max = 200
//! seed = 7
//! ```

use std::collections::HashSet;
use std::str::FromStr;

use qals_core::SaScheduleParams;
use thiserror::Error;

use crate::harness::{BackendSpec, ExperimentSpec, GraphSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

/// Parses `lo:hi`.
pub fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got `{s}`"))?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("invalid number `{t}`"));
    Ok((num(lo)?, num(hi)?))
}

fn value<T: FromStr>(key: &str, raw: &str) -> Result<T, String> {
    raw.parse().map_err(|_| format!("invalid value `{raw}` for `{key}`"))
}

pub fn parse_experiment_config(text: &str) -> Result<ExperimentSpec, ConfigError> {
    let mut spec = ExperimentSpec::new(0);
    let mut schedule = SaScheduleParams::default();
    let mut schedule_line = None;
    let mut seen = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| ConfigError { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, val) = content
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| err(format!("expected `key = value`, got `{content}`")))?;
        let key = match key {
            "N" => "n_per_level",
            "sampler" => "backend",
            other => other,
        };
        if !seen.insert(key.to_string()) {
            return Err(err(format!("duplicate key `{key}`")));
        }
        match key {
            "n" => spec.n = value(key, val).map_err(err)?,
            "density" => spec.density = value(key, val).map_err(err)?,
            "coeff_range" => spec.coeff_range = parse_range(val).map_err(err)?,
            "replicas" => spec.replicas = value(key, val).map_err(err)?,
            "backend" => spec.backend = val.parse().map_err(err)?,
            "graph" => spec.graph = val.parse::<GraphSpec>().map_err(err)?,
            "oracle" => spec.oracle = value(key, val).map_err(err)?,
            "instance_seed" => spec.instance_seed = Some(value(key, val).map_err(err)?),
            "seed" => spec.params.seed = value(key, val).map_err(err)?,
            "k" => spec.params.k = value(key, val).map_err(err)?,
            "p_delta" => spec.params.p_delta = value(key, val).map_err(err)?,
            "eta" => spec.params.eta = value(key, val).map_err(err)?,
            "q" => spec.params.q = value(key, val).map_err(err)?,
            "n_per_level" => spec.params.n_per_level = value(key, val).map_err(err)?,
            "lambda0" => spec.params.lambda0 = value(key, val).map_err(err)?,
            "i_max" => spec.params.i_max = value(key, val).map_err(err)?,
            "n_max" => spec.params.n_max = value(key, val).map_err(err)?,
            "d_min" => spec.params.d_min = value(key, val).map_err(err)?,
            "sweeps" | "beta_start" | "beta_end" => {
                schedule_line.get_or_insert(line);
                match key {
                    "sweeps" => schedule.sweeps = value(key, val).map_err(err)?,
                    "beta_start" => schedule.beta_start = value(key, val).map_err(err)?,
                    _ => schedule.beta_end = value(key, val).map_err(err)?,
                }
            }
            _ => return Err(err(format!("unknown key `{key}`"))),
        }
    }
    if !seen.contains("n") {
        return Err(ConfigError { line: 0, message: "missing required key `n`".into() });
    }
    if let Some(line) = schedule_line {
        match &mut spec.backend {
            BackendSpec::Sa(s) => *s = schedule,
            _ => {
                return Err(ConfigError {
                    line,
                    message: "sweeps and beta settings apply only to the sa backend".into(),
                })
            }
        }
    }
    Ok(spec)
}
