use serde::Serialize;

/// Echo of a run's command line and configuration, embedded in every JSON
/// artifact. Wall-clock runtime is printed to the console but kept out of
/// the artifact so that replaying a manifest reproduces it byte for byte.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub version: &'static str,
    pub config: serde_json::Value,
}

impl RunManifest {
    pub fn new(command: &str, config: serde_json::Value) -> Self {
        RunManifest { command: command.to_string(), version: env!("CARGO_PKG_VERSION"), config }
    }
}

/// `{"manifest": …, "report": …}` artifact written by the JSON outputs.
pub fn artifact<T: Serialize>(manifest: &RunManifest, report: &T) -> serde_json::Value {
    serde_json::json!({ "manifest": manifest, "report": report })
}

pub fn write_json(path: &std::path::Path, value: &serde_json::Value) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}
