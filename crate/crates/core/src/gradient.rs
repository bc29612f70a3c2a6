//! Two-point shift-rule gradients of scalar costs.
//!
//! For a cost that is an expectation value in which each symbol enters only
//! through Rx/Ry/Rz/U1 angles (coefficient ±1), the derivative is exactly
//! `g_k = [cost(θ_k + π/2) − cost(θ_k − π/2)] / 2`. Whether a circuit meets
//! that precondition is checkable via [`Circuit::shift_rule_applicable`].
//!
//! [`Circuit::shift_rule_applicable`]: crate::circuit::Circuit::shift_rule_applicable

use crate::error::SimError;
use crate::params::ParamMap;
use std::f64::consts::FRAC_PI_2;

/// Gradient of `cost` with respect to every binding in `params`, in the map's
/// insertion order. An empty map yields an empty vector.
pub fn cost_gradient<F>(mut cost: F, params: &ParamMap) -> Result<Vec<f64>, SimError>
where
    F: FnMut(&ParamMap) -> Result<f64, SimError>,
{
    let mut grads = Vec::with_capacity(params.len());
    for name in params.names() {
        let plus = cost(&params.with_shifted(&name, FRAC_PI_2)?)?;
        let minus = cost(&params.with_shifted(&name, -FRAC_PI_2)?)?;
        grads.push((plus - minus) / 2.0);
    }
    Ok(grads)
}
