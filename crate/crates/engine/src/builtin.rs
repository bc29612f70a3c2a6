//! Built-in two-qubit circuit pairs used by the sweep, reconstruction, and
//! acceptance workloads, addressable by name from the CLI.
//!
//! * `flipper_a`: phase flipper for |01⟩, |10⟩, |11⟩; unitary
//!   diag(1, −1, −1, −1), built as Z⊗Z followed by CZ.
//! * `flipper_b`: phase flipper for |00⟩ (diag(−1, 1, 1, 1), which equals
//!   −flipper_a) with a distortion knob `Ry(delta)` appended on qubit 0; for
//!   `delta = 2kπ` it is equivalent to `flipper_a` up to a global phase.
//! * `flipper_ansatz`: trainable shallow alternative of Rz(beta_0), Rz(beta_1),
//!   CZ. Becomes −flipper_a at (π, π).
//! * `cry_d`: exact CRy(beta) decomposition, Ry(beta/2), CX, Ry(−beta/2), CX.
//! * `cry_e`: the mirrored exact CRy(beta) decomposition with a distortion
//!   knob `Ry(delta)` appended on the target; exact iff `delta = 2kπ`.

use crate::error::EngineError;
use qverify_core::{Circuit, ParamExpr};

pub const DELTA: &str = "delta";
pub const BETA: &str = "beta";
pub const BETA_0: &str = "beta_0";
pub const BETA_1: &str = "beta_1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinCircuit {
    FlipperA,
    FlipperB,
    FlipperAnsatz,
    CryD,
    CryE,
}

impl BuiltinCircuit {
    pub const ALL: [BuiltinCircuit; 5] = [
        BuiltinCircuit::FlipperA,
        BuiltinCircuit::FlipperB,
        BuiltinCircuit::FlipperAnsatz,
        BuiltinCircuit::CryD,
        BuiltinCircuit::CryE,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinCircuit::FlipperA => "flipper_a",
            BuiltinCircuit::FlipperB => "flipper_b",
            BuiltinCircuit::FlipperAnsatz => "flipper_ansatz",
            BuiltinCircuit::CryD => "cry_d",
            BuiltinCircuit::CryE => "cry_e",
        }
    }

    pub fn from_name(name: &str) -> Result<Self, EngineError> {
        Self::ALL
            .into_iter()
            .find(|b| b.name() == name)
            .ok_or_else(|| EngineError::UnknownBuiltin(name.to_string()))
    }

    /// Builds the circuit with its canonical free symbols
    /// (`delta`, `beta`, `beta_0`, `beta_1`) left unbound.
    pub fn circuit(self) -> Circuit {
        match self {
            BuiltinCircuit::FlipperA => Circuit::build(2)
                .z(0)
                .z(1)
                .cz(0, 1)
                .finish(),
            BuiltinCircuit::FlipperB => Circuit::build(2)
                .x(0)
                .x(1)
                .cz(0, 1)
                .x(0)
                .x(1)
                .ry(0, DELTA)
                .finish(),
            BuiltinCircuit::FlipperAnsatz => Circuit::build(2)
                .rz(0, BETA_0)
                .rz(1, BETA_1)
                .cz(0, 1)
                .finish(),
            BuiltinCircuit::CryD => Circuit::build(2)
                .ry(1, ParamExpr::scaled_sym(BETA, 0.5))
                .cx(0, 1)
                .ry(1, ParamExpr::scaled_sym(BETA, -0.5))
                .cx(0, 1)
                .finish(),
            BuiltinCircuit::CryE => Circuit::build(2)
                .cx(0, 1)
                .ry(1, ParamExpr::scaled_sym(BETA, -0.5))
                .cx(0, 1)
                .ry(1, ParamExpr::scaled_sym(BETA, 0.5))
                .ry(1, DELTA)
                .finish(),
        }
        .expect("builtin circuits are valid")
    }
}

/// Lookup by CLI name.
pub fn builtin_circuit(name: &str) -> Result<Circuit, EngineError> {
    Ok(BuiltinCircuit::from_name(name)?.circuit())
}

#[cfg(test)]
mod tests {
    use super::*;
    use qverify_core::{unitary_of, CMatrix, Circuit, Gate, ParamMap, C64};
    use std::f64::consts::{PI, TAU};

    fn diag(entries: [f64; 4]) -> CMatrix {
        let mut m = CMatrix::zeros(4);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, C64::new(e, 0.0));
        }
        m
    }

    /// Independent 4×4 oracle: multiply the gate matrices by hand.
    fn kron2(a: &CMatrix, b: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(4);
        for r0 in 0..2 {
            for c0 in 0..2 {
                for r1 in 0..2 {
                    for c1 in 0..2 {
                        out.set(2 * r0 + r1, 2 * c0 + c1, a.get(r0, c0) * b.get(r1, c1));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn flipper_a_unitary() {
        let u = unitary_of(&BuiltinCircuit::FlipperA.circuit(), &ParamMap::new()).unwrap();
        // Hand product: CZ · (Z ⊗ Z).
        let z = CMatrix::from_rows(&[
            vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            vec![C64::new(0.0, 0.0), C64::new(-1.0, 0.0)],
        ]);
        let cz = diag([1.0, 1.0, 1.0, -1.0]);
        let expected = cz.mul(&kron2(&z, &z));
        assert!(u.max_abs_diff(&expected) < 1e-15);
        assert!(u.max_abs_diff(&diag([1.0, -1.0, -1.0, -1.0])) < 1e-15);
    }

    #[test]
    fn flipper_b_at_zero_is_minus_flipper_a() {
        let params = ParamMap::from_pairs([(DELTA, 0.0)]);
        let u = unitary_of(&BuiltinCircuit::FlipperB.circuit(), &params).unwrap();
        assert!(u.max_abs_diff(&diag([-1.0, 1.0, 1.0, 1.0])) < 1e-15);
        let a = unitary_of(&BuiltinCircuit::FlipperA.circuit(), &ParamMap::new()).unwrap();
        assert!(u.max_abs_diff_up_to_phase(&a) < 1e-15);
    }

    #[test]
    fn flipper_b_at_two_pi_still_equivalent() {
        let params = ParamMap::from_pairs([(DELTA, TAU)]);
        let u = unitary_of(&BuiltinCircuit::FlipperB.circuit(), &params).unwrap();
        let a = unitary_of(&BuiltinCircuit::FlipperA.circuit(), &ParamMap::new()).unwrap();
        assert!(u.max_abs_diff_up_to_phase(&a) < 1e-12);
    }

    #[test]
    fn flipper_ansatz_at_pi_pi_matches_flipper_a() {
        let params = ParamMap::from_pairs([(BETA_0, PI), (BETA_1, PI)]);
        let u = unitary_of(&BuiltinCircuit::FlipperAnsatz.circuit(), &params).unwrap();
        let a = unitary_of(&BuiltinCircuit::FlipperA.circuit(), &ParamMap::new()).unwrap();
        assert!(u.max_abs_diff_up_to_phase(&a) < 1e-12);
    }

    #[test]
    fn cry_decompositions_are_exact() {
        for beta in [0.0, 0.7, PI, 4.2] {
            let params = ParamMap::from_pairs([(BETA, beta), (DELTA, 0.0)]);
            let reference =
                Circuit::from_gates(2, vec![Gate::cry(0, 1, beta)]).unwrap();
            let want = unitary_of(&reference, &ParamMap::new()).unwrap();
            let d = unitary_of(&BuiltinCircuit::CryD.circuit(), &params).unwrap();
            let e = unitary_of(&BuiltinCircuit::CryE.circuit(), &params).unwrap();
            assert!(d.max_abs_diff(&want) < 1e-12, "cry_d at beta={beta}");
            assert!(e.max_abs_diff(&want) < 1e-12, "cry_e at beta={beta}");
        }
    }

    #[test]
    fn cry_e_distorted_differs() {
        let params = ParamMap::from_pairs([(BETA, 1.1), (DELTA, 0.8)]);
        let d = unitary_of(&BuiltinCircuit::CryD.circuit(), &params).unwrap();
        let e = unitary_of(&BuiltinCircuit::CryE.circuit(), &params).unwrap();
        assert!(e.max_abs_diff_up_to_phase(&d) > 0.1);
    }

    #[test]
    fn unknown_name_rejected() {
        assert!(matches!(
            builtin_circuit("flipper_c"),
            Err(EngineError::UnknownBuiltin(_))
        ));
        for b in BuiltinCircuit::ALL {
            assert_eq!(BuiltinCircuit::from_name(b.name()).unwrap(), b);
        }
    }
}
