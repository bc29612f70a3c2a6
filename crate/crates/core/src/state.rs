use crate::error::SimError;
use crate::C64;

/// Hard cap on register width; a dense vector beyond this is pointless here.
pub const MAX_QUBITS: usize = 24;

/// Dense complex amplitude vector over `n` qubits.
///
/// Qubit 0 is the most significant bit of the amplitude index: basis state
/// `|x_0 x_1 … x_{n-1}⟩` sits at index `Σ_k x_k · 2^(n-1-k)`, and
/// `a.tensor(&b)` therefore places `a`'s qubits before `b`'s.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    num_qubits: usize,
    amps: Vec<C64>,
}

impl Statevector {
    /// `|0…0⟩` on `num_qubits` qubits.
    pub fn zero_state(num_qubits: usize) -> Self {
        Self::basis_state(num_qubits, 0).expect("index 0 always valid")
    }

    /// Computational basis state `|index⟩`.
    pub fn basis_state(num_qubits: usize, index: usize) -> Result<Self, SimError> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(SimError::TooManyQubits { num_qubits, max: MAX_QUBITS });
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(SimError::InvalidState(format!(
                "basis index {index} out of range for {num_qubits} qubits"
            )));
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Ok(Statevector { num_qubits, amps })
    }

    /// Builds a state from raw amplitudes; the norm must already be 1 within 1e-9.
    pub fn from_amplitudes(num_qubits: usize, amps: Vec<C64>) -> Result<Self, SimError> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(SimError::TooManyQubits { num_qubits, max: MAX_QUBITS });
        }
        if amps.len() != 1usize << num_qubits {
            return Err(SimError::InvalidState(format!(
                "expected {} amplitudes for {num_qubits} qubits, got {}",
                1usize << num_qubits,
                amps.len()
            )));
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > 1e-9 {
            return Err(SimError::InvalidState(format!("state not normalized: ‖ψ‖² = {norm_sq}")));
        }
        Ok(Statevector { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amps[index]
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Statevector) -> Result<C64, SimError> {
        if self.num_qubits != other.num_qubits {
            return Err(SimError::QubitCountMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `self ⊗ other`, with `self`'s qubits first.
    pub fn tensor(&self, other: &Statevector) -> Result<Statevector, SimError> {
        let num_qubits = self.num_qubits + other.num_qubits;
        if num_qubits > MAX_QUBITS {
            return Err(SimError::TooManyQubits { num_qubits, max: MAX_QUBITS });
        }
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(Statevector { num_qubits, amps })
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }
}

/// Squared overlap `|⟨a|b⟩|²`: 1 for equivalent states, 0 for orthogonal ones.
/// Symmetric and invariant under global phases on either argument.
pub fn fidelity(a: &Statevector, b: &Statevector) -> Result<f64, SimError> {
    Ok(a.inner(b)?.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_state_shape() {
        let s = Statevector::zero_state(3);
        assert_eq!(s.num_qubits(), 3);
        assert_eq!(s.dim(), 8);
        assert_eq!(s.amplitude(0), C64::new(1.0, 0.0));
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn qubit0_is_most_significant() {
        // |10⟩ (qubit 0 = 1, qubit 1 = 0) must be index 2.
        let s = Statevector::basis_state(2, 2).unwrap();
        let one = Statevector::basis_state(1, 1).unwrap();
        let zero = Statevector::zero_state(1);
        assert_eq!(one.tensor(&zero).unwrap(), s);
    }

    #[test]
    fn fidelity_basics() {
        let zero = Statevector::zero_state(1);
        let one = Statevector::basis_state(1, 1).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let plus =
            Statevector::from_amplitudes(1, vec![C64::new(r, 0.0), C64::new(r, 0.0)]).unwrap();
        assert!((fidelity(&zero, &zero).unwrap() - 1.0).abs() < 1e-15);
        assert!(fidelity(&zero, &one).unwrap() < 1e-15);
        assert!((fidelity(&zero, &plus).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn fidelity_rejects_mismatched_registers() {
        let a = Statevector::zero_state(1);
        let b = Statevector::zero_state(2);
        assert!(matches!(fidelity(&a, &b), Err(SimError::QubitCountMismatch { .. })));
    }

    #[test]
    fn unnormalized_rejected() {
        let bad = Statevector::from_amplitudes(1, vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]);
        assert!(bad.is_err());
    }
}
