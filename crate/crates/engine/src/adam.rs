//! Adam with bias correction. Only the learning rate is workload-specific;
//! the moment decays and epsilon stay at the usual defaults.

use crate::error::EngineError;

#[derive(Debug, Clone, PartialEq)]
pub struct AdamState {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps_hat: f64,
    step: u64,
    m: Vec<f64>,
    v: Vec<f64>,
}

impl AdamState {
    pub fn new(num_params: usize, learning_rate: f64) -> Self {
        AdamState {
            learning_rate,
            beta1: 0.9,
            beta2: 0.999,
            eps_hat: 1e-8,
            step: 0,
            m: vec![0.0; num_params],
            v: vec![0.0; num_params],
        }
    }

    pub fn step_count(&self) -> u64 {
        self.step
    }

    /// One update in place. Deterministic; rejects mismatched lengths and
    /// non-finite gradients.
    pub fn apply(&mut self, params: &mut [f64], grads: &[f64]) -> Result<(), EngineError> {
        if params.len() != grads.len() || params.len() != self.m.len() {
            return Err(EngineError::LengthMismatch { params: params.len(), grads: grads.len() });
        }
        if let Some(index) = grads.iter().position(|g| !g.is_finite()) {
            return Err(EngineError::NonFiniteGradient { index });
        }
        self.step += 1;
        let bc1 = 1.0 - self.beta1.powi(self.step as i32);
        let bc2 = 1.0 - self.beta2.powi(self.step as i32);
        for i in 0..params.len() {
            self.m[i] = self.beta1 * self.m[i] + (1.0 - self.beta1) * grads[i];
            self.v[i] = self.beta2 * self.v[i] + (1.0 - self.beta2) * grads[i] * grads[i];
            let m_hat = self.m[i] / bc1;
            let v_hat = self.v[i] / bc2;
            params[i] -= self.learning_rate * m_hat / (v_hat.sqrt() + self.eps_hat);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_gradient_leaves_params() {
        let mut adam = AdamState::new(3, 0.1);
        let mut params = vec![1.0, -2.0, 0.5];
        adam.apply(&mut params, &[0.0, 0.0, 0.0]).unwrap();
        assert_eq!(params, vec![1.0, -2.0, 0.5]);
    }

    #[test]
    fn constant_gradient_descends() {
        let mut adam = AdamState::new(1, 0.1);
        let mut params = vec![0.0];
        for _ in 0..50 {
            adam.apply(&mut params, &[1.0]).unwrap();
        }
        assert!(params[0] < -1.0);
    }

    /// Scalar reference run on f(x) = x², x₀ = 1, lr = 0.1, 200 steps. The
    /// reference is written out independently here; the library state must
    /// reproduce it bit for bit and land below 1e-3.
    #[test]
    fn quadratic_bowl_matches_scalar_reference() {
        let (lr, b1, b2, eps) = (0.1, 0.9, 0.999, 1e-8);
        let mut x_ref = 1.0f64;
        let (mut m, mut v) = (0.0f64, 0.0f64);
        for step in 1..=200 {
            let g = 2.0 * x_ref;
            m = b1 * m + (1.0 - b1) * g;
            v = b2 * v + (1.0 - b2) * g * g;
            let m_hat = m / (1.0 - b1.powi(step));
            let v_hat = v / (1.0 - b2.powi(step));
            x_ref -= lr * m_hat / (v_hat.sqrt() + eps);
        }
        assert!(x_ref.abs() < 1e-3, "reference endpoint {x_ref}");

        let mut adam = AdamState::new(1, lr);
        let mut params = vec![1.0];
        for _ in 0..200 {
            let g = 2.0 * params[0];
            adam.apply(&mut params, &[g]).unwrap();
        }
        assert_eq!(params[0], x_ref);
    }

    #[test]
    fn errors_on_bad_input() {
        let mut adam = AdamState::new(2, 0.1);
        let mut params = vec![0.0, 0.0];
        assert!(matches!(
            adam.apply(&mut params, &[1.0]),
            Err(EngineError::LengthMismatch { .. })
        ));
        assert!(matches!(
            adam.apply(&mut params, &[1.0, f64::NAN]),
            Err(EngineError::NonFiniteGradient { index: 1 })
        ));
    }
}
