use anyhow::{bail, Context, Result};
use qverify_core::Circuit;
use qverify_engine::builtin_circuit;
use qverify_qasm::parse_qasm_named;
use std::path::Path;

/// Loads a circuit from a QASM path or a `builtin:<name>` spec; parser
/// warnings go to stderr.
pub fn load_circuit(spec: &str) -> Result<Circuit> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return Ok(builtin_circuit(name)?);
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
    let program = parse_qasm_named(&text, spec).with_context(|| format!("parsing {spec}"))?;
    for warning in &program.warnings {
        eprintln!("{spec}: {warning}");
    }
    Ok(program.circuit)
}

fn split_bind(bind: &str) -> Result<(&str, f64)> {
    let Some((name, value)) = bind.split_once('=') else {
        bail!("--bind expects NAME=VALUE, got `{bind}`");
    };
    let value: f64 = value.parse().with_context(|| format!("--bind {bind}"))?;
    Ok((name, value))
}

/// Applies repeated `--bind name=value` flags to both circuits. A name that
/// is a free symbol of neither circuit is an error (likely a typo).
pub fn apply_binds_pair(
    reference: Circuit,
    generator: Circuit,
    binds: &[String],
) -> Result<(Circuit, Circuit)> {
    let mut reference = reference;
    let mut generator = generator;
    for bind in binds {
        let (name, value) = split_bind(bind)?;
        if !reference.has_symbol(name) && !generator.has_symbol(name) {
            bail!("`{name}` is not a free symbol of either circuit");
        }
        reference = reference.bind(name, value);
        generator = generator.bind(name, value);
    }
    Ok((reference, generator))
}
