use crate::args::PerturbArgs;
use anyhow::{bail, Context, Result};
use qverify_core::GateKind;
use qverify_qasm::{
    insert_perturbation, parse_qasm_named, to_qasm, InsertPosition, PerturbationKind,
    PerturbationSpec,
};

fn parse_insert(spec: &str) -> Result<PerturbationKind> {
    if spec == "id" {
        return Ok(PerturbationKind::InsertIdentity);
    }
    let (name, angle) = match spec.split_once(':') {
        Some((name, angle)) => (name, Some(angle.parse::<f64>().context("insert angle")?)),
        None => (spec, None),
    };
    let kind = match name {
        "x" => GateKind::X,
        "y" => GateKind::Y,
        "z" => GateKind::Z,
        "h" => GateKind::H,
        "s" => GateKind::S,
        "t" => GateKind::T,
        "rx" => GateKind::Rx,
        "ry" => GateKind::Ry,
        "rz" => GateKind::Rz,
        "u1" => GateKind::U1,
        other => bail!("unsupported insert gate `{other}`"),
    };
    let angles = match (kind.angle_count(), angle) {
        (0, None) => vec![],
        (1, Some(a)) => vec![a],
        (expected, _) => bail!("`{name}` takes {expected} angle(s), e.g. `rx:1.23`"),
    };
    Ok(PerturbationKind::InsertGate { kind, angles })
}

fn parse_position(spec: &str) -> Result<InsertPosition> {
    if let Some(seed) = spec.strip_prefix("random:") {
        return Ok(InsertPosition::Random { seed: seed.parse().context("position seed")? });
    }
    let Some((index, qubit)) = spec.split_once(':') else {
        bail!("--position expects random:<seed> or <gate_index>:<qubit>");
    };
    Ok(InsertPosition::Explicit {
        gate_index: index.parse().context("gate index")?,
        qubit: qubit.parse().context("qubit index")?,
    })
}

pub fn run(args: PerturbArgs) -> Result<u8> {
    let text = std::fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let program = parse_qasm_named(&text, &args.input.to_string_lossy())?;
    let spec =
        PerturbationSpec { kind: parse_insert(&args.insert)?, position: parse_position(&args.position)? };
    let perturbed = insert_perturbation(&program.circuit, &spec)?;
    std::fs::write(&args.out, to_qasm(&perturbed)?)?;
    println!(
        "wrote {} ({} gates, was {})",
        args.out.display(),
        perturbed.gate_count(),
        program.circuit.gate_count()
    );
    Ok(0)
}
