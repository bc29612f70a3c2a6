//! OpenQASM 2.0 front end.
//!
//! Parses the gate subset needed for unitary equivalence checking into
//! [`qverify_core::Circuit`] values, generates perturbed circuit variants,
//! and writes circuits back out as QASM text.
//!
//! Accepted statements: the `OPENQASM 2.0;` header, `include "qelib1.inc";`
//! (treated as built in), `qreg`/`creg` declarations, `gate` definitions
//! (expanded inline), gate applications with register broadcasting, and
//! `measure`/`barrier`, which are skipped with a warning since they do not
//! affect the realized unitary. `if`, `opaque`, and `reset` are rejected.
//!
//! Built-in gate names: `id x y z h s sdg t tdg rx ry rz u1 u2 u3 cx cz ccx
//! swap cu1`, plus `U` (alias of `u3`) and `CX` (alias of `cx`).

mod error;
mod lexer;
mod parser;
mod perturb;
mod writer;

pub use error::QasmError;
pub use parser::{parse_qasm, parse_qasm_named, QasmProgram};
pub use perturb::{insert_perturbation, InsertPosition, PerturbationKind, PerturbationSpec};
pub use writer::to_qasm;
