//! Experiment runner for the `qheat` library. Each registered experiment
//! resolves its parameters, evaluates a fixed grid and renders a dataset.

pub mod config;
pub mod dataset;
pub mod error;
pub mod experiments;
pub mod params;

use std::path::PathBuf;

pub use dataset::{Dataset, Format};
pub use error::{CliError, CliResult};
pub use experiments::{find, Experiment, REGISTRY};
pub use params::Params;

#[derive(Debug, Clone)]
pub struct RunRequest {
    pub experiment: String,
    pub overrides: Vec<(String, f64)>,
    pub config: Option<PathBuf>,
    pub format: Format,
}

impl RunRequest {
    pub fn new(experiment: impl Into<String>) -> Self {
        RunRequest { experiment: experiment.into(), overrides: Vec::new(), config: None, format: Format::Csv }
    }
}

/// Resolves and runs one experiment, returning the rendered dataset.
pub fn run(req: &RunRequest) -> CliResult<String> {
    let exp = find(&req.experiment)?;
    let file = match &req.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            config::parse_config(&text)?.remove(exp.id).unwrap_or_default()
        }
        None => Vec::new(),
    };
    let params = Params::resolve(exp.id, exp.params, &file, &req.overrides)?;
    let data = (exp.run)(&params)?;
    Ok(dataset::render(exp.id, &params, &data, req.format))
}

/// Resolves parameters and runs an experiment without rendering.
pub fn run_dataset(id: &str, overrides: &[(String, f64)]) -> CliResult<Dataset> {
    let exp = find(id)?;
    let params = Params::resolve(exp.id, exp.params, &[], overrides)?;
    (exp.run)(&params)
}

pub fn list(format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::new();
            for e in REGISTRY {
                out.push_str(&format!("{:<20} {}\n", e.id, e.summary));
                for p in e.params {
                    out.push_str(&format!("    {:<14} = {:<10} {}\n", p.name, p.default, p.help));
                }
            }
            out
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = REGISTRY
                .iter()
                .map(|e| {
                    let params: Vec<serde_json::Value> = e
                        .params
                        .iter()
                        .map(|p| serde_json::json!({"name": p.name, "default": p.default, "help": p.help}))
                        .collect();
                    serde_json::json!({"id": e.id, "summary": e.summary, "params": params})
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&items).expect("static registry serializes");
            s.push('\n');
            s
        }
    }
}
