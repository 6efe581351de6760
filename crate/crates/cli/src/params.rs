//! Named experiment parameters with defaults and override resolution.

use std::collections::BTreeMap;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Real,
    /// Whole number of grid points, at least 2.
    Points,
}

#[derive(Debug, Clone, Copy)]
pub struct ParamDef {
    pub name: &'static str,
    pub default: f64,
    pub kind: Kind,
    pub help: &'static str,
}

pub const fn real(name: &'static str, default: f64, help: &'static str) -> ParamDef {
    ParamDef { name, default, kind: Kind::Real, help }
}

pub const fn points(default: f64) -> ParamDef {
    ParamDef { name: "points", default, kind: Kind::Points, help: "number of grid points" }
}

const MAX_POINTS: f64 = 100_000.0;

/// Fully resolved parameter set, iterated in name order.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    values: BTreeMap<String, f64>,
}

impl Params {
    /// Defaults, then `file` values, then `overrides`; unknown names are
    /// rejected with the accepted list.
    pub fn resolve(id: &str, defs: &[ParamDef], file: &[(String, f64)], overrides: &[(String, f64)]) -> CliResult<Params> {
        let mut values: BTreeMap<String, f64> = defs.iter().map(|d| (d.name.to_string(), d.default)).collect();
        for (k, v) in file.iter().chain(overrides) {
            match values.get_mut(k) {
                Some(slot) => *slot = *v,
                None => {
                    let names: Vec<&str> = defs.iter().map(|d| d.name).collect();
                    return Err(CliError::Usage(format!(
                        "unknown parameter '{k}' for {id}; valid: {}",
                        names.join(", ")
                    )));
                }
            }
        }
        for d in defs {
            let v = values[d.name];
            if !v.is_finite() {
                return Err(CliError::Usage(format!("parameter {} must be finite, got {v}", d.name)));
            }
            if d.kind == Kind::Points && (v.fract() != 0.0 || !(2.0..=MAX_POINTS).contains(&v)) {
                return Err(CliError::Usage(format!("{} must be a whole number in [2, {MAX_POINTS}], got {v}", d.name)));
            }
        }
        Ok(Params { values })
    }

    pub fn get(&self, name: &str) -> f64 {
        *self.values.get(name).unwrap_or_else(|| panic!("parameter {name} is not declared"))
    }

    pub fn count(&self, name: &str) -> usize {
        self.get(name) as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

/// `key=value` from the command line.
pub fn parse_assignment(s: &str) -> CliResult<(String, f64)> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("expected key=value, got '{s}'")))?;
    let k = k.trim();
    let v: f64 = v
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("value for '{k}' is not a number: '{}'", v.trim())))?;
    Ok((k.to_string(), v))
}

/// Evenly spaced grid `lo + (hi − lo)k/(n − 1)`, hitting both ends exactly.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let last = (n - 1) as f64;
    (0..n)
        .map(|k| if k + 1 == n { hi } else { lo + (hi - lo) * k as f64 / last })
        .collect()
}

pub fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.log10(), hi.log10());
    linspace(a, b, n)
        .into_iter()
        .enumerate()
        .map(|(k, x)| if k == 0 { lo } else if k + 1 == n { hi } else { 10f64.powf(x) })
        .collect()
}
