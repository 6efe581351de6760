//! TOML parameter files: one `[experiment-id]` table per experiment with
//! numeric `key = value` entries.

use std::collections::BTreeMap;

use crate::error::{CliError, CliResult};
use crate::experiments::find;

pub type ConfigFile = BTreeMap<String, Vec<(String, f64)>>;

pub fn parse_config(text: &str) -> CliResult<ConfigFile> {
    let table: toml::Table = text.parse().map_err(|e| CliError::Usage(format!("invalid config: {e}")))?;
    let mut out = ConfigFile::new();
    for (section, value) in table {
        let toml::Value::Table(entries) = value else {
            return Err(CliError::Usage(format!("config key '{section}' must be an [experiment] table")));
        };
        find(&section)?;
        let mut pairs = Vec::with_capacity(entries.len());
        for (k, v) in entries {
            let x = match v {
                toml::Value::Float(x) => x,
                toml::Value::Integer(i) => i as f64,
                other => {
                    return Err(CliError::Usage(format!(
                        "[{section}] {k} must be a number, got {}",
                        other.type_str()
                    )))
                }
            };
            pairs.push((k, x));
        }
        out.insert(section, pairs);
    }
    Ok(out)
}
