use crate::circuit::Circuit;
use crate::error::SimError;
use crate::gate::{single_qubit_matrix, Gate, GateKind};
use crate::matrix::CMatrix;
use crate::params::ParamMap;
use crate::state::Statevector;
use crate::C64;

/// Unitary extraction is capped here; beyond it the dense matrix is unusable.
pub const MAX_UNITARY_QUBITS: usize = 12;

/// Applies `circuit` to `initial` under the given bindings and returns the
/// resulting state. The input state is not modified. Gates are applied
/// strictly in sequence, so `run(A ∘ B) == run(B, run(A))` bit for bit.
pub fn run_circuit(
    circuit: &Circuit,
    params: &ParamMap,
    initial: &Statevector,
) -> Result<Statevector, SimError> {
    if circuit.num_qubits() != initial.num_qubits() {
        return Err(SimError::QubitCountMismatch {
            left: circuit.num_qubits(),
            right: initial.num_qubits(),
        });
    }
    for symbol in circuit.symbols() {
        if !params.contains(symbol) {
            return Err(SimError::UnboundSymbol(symbol.clone()));
        }
    }
    let mut state = initial.clone();
    for gate in circuit.gates() {
        apply_gate(&mut state, gate, params)?;
    }
    Ok(state)
}

fn control_mask(num_qubits: usize, controls: &[usize]) -> usize {
    controls.iter().fold(0usize, |m, &c| m | (1usize << (num_qubits - 1 - c)))
}

fn apply_gate(state: &mut Statevector, gate: &Gate, params: &ParamMap) -> Result<(), SimError> {
    let n = state.num_qubits();
    match gate.kind {
        // Identity is a no-op so that inserting one never perturbs amplitudes.
        GateKind::I if gate.controls.is_empty() => Ok(()),
        GateKind::Swap => {
            let cmask = control_mask(n, &gate.controls);
            apply_swap(state, gate.targets[0], gate.targets[1], cmask);
            Ok(())
        }
        _ => {
            let angles = gate.angles(params)?;
            for (k, a) in angles.iter().enumerate() {
                if !a.is_finite() {
                    return Err(SimError::NonFinite(format!("{} angle {k}", gate.kind.name())));
                }
            }
            let m = single_qubit_matrix(gate.kind, &angles);
            let cmask = control_mask(n, &gate.controls);
            apply_single(state, gate.targets[0], cmask, &m);
            Ok(())
        }
    }
}

/// 2×2 kernel on `target`, restricted to indices where every control bit is set.
fn apply_single(state: &mut Statevector, target: usize, cmask: usize, m: &[C64; 4]) {
    let n = state.num_qubits();
    let tmask = 1usize << (n - 1 - target);
    let dim = state.dim();
    let amps = state.amps_mut();
    let mut i = 0usize;
    while i < dim {
        if i & tmask == 0 && i & cmask == cmask {
            let j = i | tmask;
            let a = amps[i];
            let b = amps[j];
            amps[i] = m[0] * a + m[1] * b;
            amps[j] = m[2] * a + m[3] * b;
        }
        i += 1;
    }
}

fn apply_swap(state: &mut Statevector, qa: usize, qb: usize, cmask: usize) {
    let n = state.num_qubits();
    let ma = 1usize << (n - 1 - qa);
    let mb = 1usize << (n - 1 - qb);
    let dim = state.dim();
    let amps = state.amps_mut();
    for i in 0..dim {
        // Visit each swapped pair once, from its (a=1, b=0) member.
        if i & ma != 0 && i & mb == 0 && i & cmask == cmask {
            let j = (i & !ma) | mb;
            amps.swap(i, j);
        }
    }
}

/// Full unitary of a bound circuit: column `j` is the circuit applied to `|j⟩`.
pub fn unitary_of(circuit: &Circuit, params: &ParamMap) -> Result<CMatrix, SimError> {
    let n = circuit.num_qubits();
    if n > MAX_UNITARY_QUBITS {
        return Err(SimError::TooManyQubits { num_qubits: n, max: MAX_UNITARY_QUBITS });
    }
    let dim = 1usize << n;
    let mut out = CMatrix::zeros(dim);
    for col in 0..dim {
        let basis = Statevector::basis_state(n, col)?;
        let column = run_circuit(circuit, params, &basis)?;
        for row in 0..dim {
            out.set(row, col, column.amplitude(row));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn no_params() -> ParamMap {
        ParamMap::new()
    }

    #[test]
    fn empty_circuit_is_identity() {
        let c = Circuit::empty(3).unwrap();
        let s = Statevector::zero_state(3);
        assert_eq!(run_circuit(&c, &no_params(), &s).unwrap(), s);
    }

    #[test]
    fn hadamard_on_zero() {
        let c = Circuit::build(1).h(0).finish().unwrap();
        let out = run_circuit(&c, &no_params(), &Statevector::zero_state(1)).unwrap();
        assert!((out.amplitude(0).re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((out.amplitude(1).re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn double_x_is_involution() {
        let c = Circuit::build(1).x(0).x(0).finish().unwrap();
        let s = Statevector::zero_state(1);
        assert_eq!(run_circuit(&c, &no_params(), &s).unwrap(), s);
    }

    #[test]
    fn cx_msb_control() {
        // Control qubit 0 (MSB): |10⟩ → |11⟩, |00⟩ untouched.
        let c = Circuit::build(2).cx(0, 1).finish().unwrap();
        let s10 = Statevector::basis_state(2, 2).unwrap();
        let out = run_circuit(&c, &no_params(), &s10).unwrap();
        assert_eq!(out, Statevector::basis_state(2, 3).unwrap());
        let s00 = Statevector::zero_state(2);
        assert_eq!(run_circuit(&c, &no_params(), &s00).unwrap(), s00);
    }

    #[test]
    fn ry_pi_flips_zero_to_one() {
        let c = Circuit::build(1).ry(0, PI).finish().unwrap();
        let out = run_circuit(&c, &no_params(), &Statevector::zero_state(1)).unwrap();
        assert!(out.probability(1) > 1.0 - 1e-12);
    }

    #[test]
    fn unbound_symbol_is_an_error() {
        let c = Circuit::build(1).rz(0, "theta").finish().unwrap();
        let s = Statevector::zero_state(1);
        assert!(matches!(
            run_circuit(&c, &no_params(), &s),
            Err(SimError::UnboundSymbol(name)) if name == "theta"
        ));
    }

    #[test]
    fn unitary_of_empty_is_identity() {
        let c = Circuit::empty(1).unwrap();
        let u = unitary_of(&c, &no_params()).unwrap();
        assert!(u.max_abs_diff(&CMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn unitary_of_cz() {
        let c = Circuit::build(2).cz(0, 1).finish().unwrap();
        let u = unitary_of(&c, &no_params()).unwrap();
        let mut expected = CMatrix::identity(4);
        expected.set(3, 3, C64::new(-1.0, 0.0));
        assert!(u.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn unitary_cap_enforced() {
        let c = Circuit::empty(13).unwrap();
        assert!(matches!(
            unitary_of(&c, &no_params()),
            Err(SimError::TooManyQubits { .. })
        ));
    }

    #[test]
    fn swap_gate_exchanges_qubits() {
        let c = Circuit::build(2).swap(0, 1).finish().unwrap();
        let s01 = Statevector::basis_state(2, 1).unwrap();
        let out = run_circuit(&c, &no_params(), &s01).unwrap();
        assert_eq!(out, Statevector::basis_state(2, 2).unwrap());
    }

    #[test]
    fn controlled_swap_respects_control() {
        let g = Gate::new(GateKind::Swap, vec![1, 2], vec![0], vec![]).unwrap();
        let c = Circuit::from_gates(3, vec![g]).unwrap();
        // |011⟩ (idx 3): control 0 unset → unchanged.
        let s = Statevector::basis_state(3, 3).unwrap();
        assert_eq!(run_circuit(&c, &no_params(), &s).unwrap(), s);
        // |110⟩ (idx 6): control set → swaps to |101⟩ (idx 5).
        let s = Statevector::basis_state(3, 6).unwrap();
        let out = run_circuit(&c, &no_params(), &s).unwrap();
        assert_eq!(out, Statevector::basis_state(3, 5).unwrap());
    }

    #[test]
    fn cry_matches_its_cx_decomposition() {
        let beta = 1.234;
        let direct = Circuit::build(2).cry(0, 1, beta).finish().unwrap();
        let decomposed = Circuit::build(2)
            .ry(1, beta / 2.0)
            .cx(0, 1)
            .ry(1, -beta / 2.0)
            .cx(0, 1)
            .finish()
            .unwrap();
        let ud = unitary_of(&direct, &no_params()).unwrap();
        let ue = unitary_of(&decomposed, &no_params()).unwrap();
        assert!(ud.max_abs_diff(&ue) < 1e-12);
    }
}
