use serde::Serialize;
use serde_json::Value;

/// Envelope written to stdout for every JSON-producing subcommand.
///
/// `results` and `params` go through `serde_json::Value`, whose maps are
/// ordered by key, so repeated runs print byte-identical text.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub params: Value,
    pub results: Value,
    pub provenance: Vec<&'static str>,
    pub version: &'static str,
}

impl Report {
    pub fn new(command: &str, params: Value, results: Value, provenance: &[&'static str]) -> Self {
        Report {
            command: command.into(),
            params,
            results,
            provenance: provenance.to_vec(),
            version: env!("CARGO_PKG_VERSION"),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain JSON")
    }
}
