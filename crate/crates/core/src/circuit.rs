use crate::error::SimError;
use crate::gate::Gate;
use crate::params::{ParamExpr, ParamMap};

/// Ordered gate sequence over a fixed register, with the free parameter
/// symbols it references (in first-use order). Immutable after construction:
/// every edit produces a new `Circuit`.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
    symbols: Vec<String>,
}

impl Circuit {
    pub fn build(num_qubits: usize) -> CircuitBuilder {
        CircuitBuilder { num_qubits, gates: Vec::new() }
    }

    /// Empty circuit (identity).
    pub fn empty(num_qubits: usize) -> Result<Self, SimError> {
        Circuit::build(num_qubits).finish()
    }

    pub fn from_gates(num_qubits: usize, gates: Vec<Gate>) -> Result<Self, SimError> {
        let mut builder = Circuit::build(num_qubits);
        builder.gates = gates;
        builder.finish()
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    /// Free parameter symbols in first-use order.
    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn has_symbol(&self, name: &str) -> bool {
        self.symbols.iter().any(|s| s == name)
    }

    pub fn is_parameterized(&self) -> bool {
        !self.symbols.is_empty()
    }

    /// Circuit depth: length of the longest qubit-wise dependency chain.
    pub fn depth(&self) -> usize {
        let mut level = vec![0usize; self.num_qubits];
        for gate in &self.gates {
            let next = gate.qubits().map(|q| level[q]).max().unwrap_or(0) + 1;
            for q in gate.qubits() {
                level[q] = next;
            }
        }
        level.into_iter().max().unwrap_or(0)
    }

    /// New circuit with `name` substituted by `value` wherever it appears.
    /// Unknown names leave the circuit unchanged.
    pub fn bind(&self, name: &str, value: f64) -> Circuit {
        let gates = self
            .gates
            .iter()
            .map(|g| Gate {
                kind: g.kind,
                targets: g.targets.clone(),
                controls: g.controls.clone(),
                args: g.args.iter().map(|a| a.bind(name, value)).collect(),
            })
            .collect();
        Circuit::from_gates(self.num_qubits, gates).expect("binding preserves validity")
    }

    pub fn bind_all(&self, params: &ParamMap) -> Circuit {
        let mut out = self.clone();
        for (name, value) in params.iter() {
            out = out.bind(name, value);
        }
        out
    }

    pub fn appended(&self, gate: Gate) -> Result<Circuit, SimError> {
        let mut gates = self.gates.clone();
        gates.push(gate);
        Circuit::from_gates(self.num_qubits, gates)
    }

    /// New circuit with `gate` inserted before position `index`
    /// (`index == gate_count()` appends).
    pub fn with_gate_inserted(&self, index: usize, gate: Gate) -> Result<Circuit, SimError> {
        if index > self.gates.len() {
            return Err(SimError::InvalidState(format!(
                "insertion index {index} beyond {} gates",
                self.gates.len()
            )));
        }
        let mut gates = self.gates.clone();
        gates.insert(index, gate);
        Circuit::from_gates(self.num_qubits, gates)
    }

    /// `self` followed by `other` on the same register.
    pub fn concat(&self, other: &Circuit) -> Result<Circuit, SimError> {
        if self.num_qubits != other.num_qubits {
            return Err(SimError::QubitCountMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        let mut gates = self.gates.clone();
        gates.extend(other.gates.iter().cloned());
        Circuit::from_gates(self.num_qubits, gates)
    }

    /// Checks that every free symbol is eligible for the exact two-point shift
    /// rule: it must enter only through Rx/Ry/Rz/U1 angles, uncontrolled, with
    /// coefficient ±1.
    pub fn shift_rule_applicable(&self) -> Result<(), SimError> {
        for gate in &self.gates {
            for arg in &gate.args {
                let ParamExpr::Symbol { name, coeff, .. } = arg else { continue };
                if !gate.kind.is_shift_rule_rotation() {
                    return Err(SimError::UnsupportedGradient {
                        symbol: name.clone(),
                        reason: format!("enters a {} gate", gate.kind.name()),
                    });
                }
                if !gate.controls.is_empty() {
                    return Err(SimError::UnsupportedGradient {
                        symbol: name.clone(),
                        reason: "enters a controlled rotation".into(),
                    });
                }
                if coeff.abs() != 1.0 {
                    return Err(SimError::UnsupportedGradient {
                        symbol: name.clone(),
                        reason: format!("enters with coefficient {coeff}"),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Builder collecting gates; validation happens in [`CircuitBuilder::finish`].
#[derive(Debug, Clone)]
pub struct CircuitBuilder {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl CircuitBuilder {
    pub fn gate(mut self, gate: Gate) -> Self {
        self.gates.push(gate);
        self
    }

    pub fn x(self, q: usize) -> Self {
        self.gate(Gate::x(q))
    }
    pub fn y(self, q: usize) -> Self {
        self.gate(Gate::y(q))
    }
    pub fn z(self, q: usize) -> Self {
        self.gate(Gate::z(q))
    }
    pub fn h(self, q: usize) -> Self {
        self.gate(Gate::h(q))
    }
    pub fn s(self, q: usize) -> Self {
        self.gate(Gate::s(q))
    }
    pub fn t(self, q: usize) -> Self {
        self.gate(Gate::t(q))
    }

    pub fn rx(self, q: usize, angle: impl Into<ParamExpr>) -> Self {
        self.gate(Gate::rx(q, angle))
    }
    pub fn ry(self, q: usize, angle: impl Into<ParamExpr>) -> Self {
        self.gate(Gate::ry(q, angle))
    }
    pub fn rz(self, q: usize, angle: impl Into<ParamExpr>) -> Self {
        self.gate(Gate::rz(q, angle))
    }
    pub fn u1(self, q: usize, angle: impl Into<ParamExpr>) -> Self {
        self.gate(Gate::u1(q, angle))
    }

    pub fn cx(self, control: usize, target: usize) -> Self {
        self.gate(Gate::cx(control, target))
    }
    pub fn cz(self, a: usize, b: usize) -> Self {
        self.gate(Gate::cz(a, b))
    }
    pub fn cry(self, control: usize, target: usize, angle: impl Into<ParamExpr>) -> Self {
        self.gate(Gate::cry(control, target, angle))
    }
    pub fn ccx(self, c0: usize, c1: usize, target: usize) -> Self {
        self.gate(Gate::ccx(c0, c1, target))
    }
    pub fn swap(self, a: usize, b: usize) -> Self {
        self.gate(Gate::swap(a, b))
    }

    pub fn finish(self) -> Result<Circuit, SimError> {
        if self.num_qubits == 0 || self.num_qubits > crate::state::MAX_QUBITS {
            return Err(SimError::TooManyQubits {
                num_qubits: self.num_qubits,
                max: crate::state::MAX_QUBITS,
            });
        }
        let mut symbols: Vec<String> = Vec::new();
        for (index, gate) in self.gates.iter().enumerate() {
            gate.validate_shape()?;
            gate.validate_qubits(self.num_qubits, index)?;
            for name in gate.symbol_names() {
                if !symbols.iter().any(|s| s == name) {
                    symbols.push(name.to_string());
                }
            }
        }
        Ok(Circuit { num_qubits: self.num_qubits, gates: self.gates, symbols })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbols_in_first_use_order() {
        let c = Circuit::build(2)
            .rz(0, "beta_1")
            .rz(1, "beta_0")
            .ry(0, "beta_1")
            .finish()
            .unwrap();
        assert_eq!(c.symbols(), ["beta_1".to_string(), "beta_0".to_string()]);
    }

    #[test]
    fn bind_removes_symbol() {
        let c = Circuit::build(1).ry(0, "delta").finish().unwrap();
        let bound = c.bind("delta", 0.5);
        assert!(bound.symbols().is_empty());
        assert_eq!(bound.gates()[0].args[0], ParamExpr::Literal(0.5));
        // Original untouched.
        assert_eq!(c.symbols(), ["delta".to_string()]);
    }

    #[test]
    fn depth_counts_longest_chain() {
        let c = Circuit::build(3).h(0).h(1).cx(0, 1).h(2).finish().unwrap();
        assert_eq!(c.depth(), 2);
        assert_eq!(c.gate_count(), 4);
    }

    #[test]
    fn out_of_range_and_duplicates_rejected() {
        assert!(matches!(
            Circuit::build(1).cx(0, 1).finish(),
            Err(SimError::QubitOutOfRange { qubit: 1, .. })
        ));
        let dup = Circuit::from_gates(2, vec![Gate::cx(0, 0)]);
        assert!(matches!(dup, Err(SimError::DuplicateQubit { .. })));
    }

    #[test]
    fn shift_rule_validation() {
        let ok = Circuit::build(1).ry(0, "a").rz(0, ParamExpr::scaled_sym("a", -1.0)).finish().unwrap();
        assert!(ok.shift_rule_applicable().is_ok());

        let halved = Circuit::build(1).ry(0, ParamExpr::scaled_sym("a", 0.5)).finish().unwrap();
        assert!(matches!(
            halved.shift_rule_applicable(),
            Err(SimError::UnsupportedGradient { .. })
        ));

        let controlled = Circuit::build(2).cry(0, 1, "a").finish().unwrap();
        assert!(controlled.shift_rule_applicable().is_err());
    }
}
