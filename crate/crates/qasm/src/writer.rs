//! Minimal QASM writer: enough to materialize perturbed variants on disk.
//! Only fully bound circuits over the parseable gate set are writable; the
//! written text round-trips through [`crate::parse_qasm`] exactly.

use crate::error::QasmError;
use qverify_core::{Circuit, Gate, GateKind, ParamExpr};

pub fn to_qasm(circuit: &Circuit) -> Result<String, QasmError> {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    out.push_str(&format!("qreg q[{}];\n", circuit.num_qubits()));
    for gate in circuit.gates() {
        out.push_str(&line_for(gate)?);
        out.push('\n');
    }
    Ok(out)
}

fn line_for(gate: &Gate) -> Result<String, QasmError> {
    let unwritable = |msg: &str| Err(QasmError::Unwritable(format!("{}: {msg}", gate.kind.name())));
    let mut angles = Vec::with_capacity(gate.args.len());
    for arg in &gate.args {
        match arg {
            ParamExpr::Literal(v) => angles.push(*v),
            ParamExpr::Symbol { name, .. } => {
                return Err(QasmError::Unwritable(format!("free symbol `{name}`")))
            }
        }
    }
    let params = if angles.is_empty() {
        String::new()
    } else {
        format!("({})", angles.iter().map(|a| format!("{a}")).collect::<Vec<_>>().join(","))
    };

    let name = match (gate.kind, gate.controls.len()) {
        (GateKind::U1, 1) => "cu1",
        (GateKind::CRy, _) => return unwritable("no QASM spelling in the accepted subset"),
        (GateKind::Swap, 0) => "swap",
        (GateKind::Swap, _) => return unwritable("controlled swap has no QASM spelling"),
        (kind, extra) if extra > kind.implied_controls() => {
            return unwritable("extra controls have no QASM spelling")
        }
        (kind, _) => kind.name(),
    };

    let qubits: Vec<String> =
        gate.controls.iter().chain(gate.targets.iter()).map(|q| format!("q[{q}]")).collect();
    Ok(format!("{name}{params} {};", qubits.join(",")))
}
