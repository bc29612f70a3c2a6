//! Cross-module properties: norm preservation, unitarity, gradient checks
//! against finite differences, and exact composition.

use qverify_core::{
    cost_gradient, fidelity, run_circuit, unitary_of, Circuit, Gate, GateKind, ParamExpr,
    ParamMap, Statevector, C64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

const ALL_KINDS: &[GateKind] = &[
    GateKind::X,
    GateKind::Y,
    GateKind::Z,
    GateKind::H,
    GateKind::S,
    GateKind::Sdg,
    GateKind::T,
    GateKind::Tdg,
    GateKind::I,
    GateKind::Rx,
    GateKind::Ry,
    GateKind::Rz,
    GateKind::U1,
    GateKind::U2,
    GateKind::U3,
    GateKind::Cx,
    GateKind::Cz,
    GateKind::CRy,
    GateKind::Ccx,
    GateKind::Swap,
];

fn random_gate(rng: &mut ChaCha8Rng, n: usize) -> Gate {
    loop {
        let kind = ALL_KINDS[rng.gen_range(0..ALL_KINDS.len())];
        let needed = kind.target_count() + kind.implied_controls();
        if needed > n {
            continue;
        }
        // Distinct qubits for targets+controls.
        let mut qubits: Vec<usize> = (0..n).collect();
        for i in (1..qubits.len()).rev() {
            qubits.swap(i, rng.gen_range(0..=i));
        }
        let picked: Vec<usize> = qubits.into_iter().take(needed).collect();
        let args: Vec<ParamExpr> =
            (0..kind.angle_count()).map(|_| ParamExpr::lit(rng.gen::<f64>() * TAU)).collect();
        let (targets, controls) = match kind {
            GateKind::Swap => (picked.clone(), vec![]),
            _ => (vec![picked[0]], picked[1..].to_vec()),
        };
        return Gate::new(kind, targets, controls, args).expect("valid random gate");
    }
}

fn random_circuit(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Circuit {
    let gates = (0..len).map(|_| random_gate(rng, n)).collect();
    Circuit::from_gates(n, gates).expect("valid random circuit")
}

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> Statevector {
    let dim = 1usize << n;
    let raw: Vec<C64> =
        (0..dim).map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)).collect();
    let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    Statevector::from_amplitudes(n, raw.into_iter().map(|a| a / norm).collect()).unwrap()
}

#[test]
fn norm_preserved_over_random_circuits() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=6);
        let len = rng.gen_range(1..=30);
        let circuit = random_circuit(&mut rng, n, len);
        let state = random_state(&mut rng, n);
        let out = run_circuit(&circuit, &ParamMap::new(), &state).unwrap();
        worst = worst.max((out.norm_sqr() - 1.0).abs());
    }
    assert!(worst < 1e-12, "worst norm deviation {worst}");
}

#[test]
fn every_builtin_gate_yields_unitary_circuits() {
    let params = ParamMap::new();
    for &kind in ALL_KINDS {
        let n = (kind.target_count() + kind.implied_controls()).max(1);
        let qubits: Vec<usize> = (0..n).collect();
        let args: Vec<ParamExpr> =
            (0..kind.angle_count()).map(|k| ParamExpr::lit(0.3 + 0.7 * k as f64)).collect();
        let (targets, controls) = match kind {
            GateKind::Swap => (qubits.clone(), vec![]),
            _ => (vec![qubits[0]], qubits[1..].to_vec()),
        };
        let gate = Gate::new(kind, targets, controls, args).unwrap();
        let circuit = Circuit::from_gates(n, vec![gate]).unwrap();
        let u = unitary_of(&circuit, &params).unwrap();
        let dev = u.dagger().mul(&u).max_deviation_from_identity();
        assert!(dev < 1e-10, "{} not unitary: {dev}", kind.name());
    }
}

/// Diagonal ±1 observable expectation used as a generic cost for gradient checks.
fn parity_cost(circuit: &Circuit, params: &ParamMap) -> f64 {
    let out = run_circuit(circuit, params, &Statevector::zero_state(circuit.num_qubits())).unwrap();
    (0..out.dim())
        .map(|i| {
            let sign = if (i.count_ones() & 1) == 0 { 1.0 } else { -1.0 };
            sign * out.probability(i)
        })
        .sum()
}

#[test]
fn shift_rule_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for case in 0..50 {
        let n = rng.gen_range(1..=4);
        let num_symbols = rng.gen_range(1..=6usize);
        let mut builder = Circuit::build(n);
        for s in 0..num_symbols {
            let name = format!("p{s}");
            let q = rng.gen_range(0..n);
            let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            let expr = ParamExpr::scaled_sym(&name, sign);
            builder = match rng.gen_range(0..4) {
                0 => builder.rx(q, expr),
                1 => builder.ry(q, expr),
                2 => builder.rz(q, expr),
                _ => builder.u1(q, expr),
            };
            if n > 1 && rng.gen::<bool>() {
                let a = rng.gen_range(0..n);
                let b = (a + 1 + rng.gen_range(0..n - 1)) % n;
                builder = builder.cx(a, b);
            }
        }
        let circuit = builder.finish().unwrap();
        circuit.shift_rule_applicable().unwrap();
        let params = ParamMap::from_pairs(
            (0..num_symbols).map(|s| (format!("p{s}"), rng.gen::<f64>() * TAU)),
        );

        let grads =
            cost_gradient(|p| Ok(parity_cost(&circuit, p)), &params).unwrap();

        let h = 1e-5;
        for (k, name) in params.names().iter().enumerate() {
            let plus = parity_cost(&circuit, &params.with_shifted(name, h).unwrap());
            let minus = parity_cost(&circuit, &params.with_shifted(name, -h).unwrap());
            let fd = (plus - minus) / (2.0 * h);
            assert!(
                (grads[k] - fd).abs() < 1e-6,
                "case {case}, symbol {name}: shift {} vs fd {fd}",
                grads[k]
            );
        }
    }
}

#[test]
fn composition_is_bit_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..50 {
        let n = rng.gen_range(1..=5);
        let (la, lb) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
        let a = random_circuit(&mut rng, n, la);
        let b = random_circuit(&mut rng, n, lb);
        let state = random_state(&mut rng, n);
        let params = ParamMap::new();

        let fused = run_circuit(&a.concat(&b).unwrap(), &params, &state).unwrap();
        let staged = run_circuit(&b, &params, &run_circuit(&a, &params, &state).unwrap()).unwrap();
        assert_eq!(fused, staged);
    }
}

#[test]
fn core_types_are_thread_shareable() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<Circuit>();
    assert_send_sync::<ParamMap>();
    assert_send_sync::<Statevector>();
    assert_send_sync::<Gate>();

    // Concurrent runs over a shared circuit read the same immutable data.
    let circuit = std::sync::Arc::new(Circuit::build(3).h(0).cx(0, 1).cx(1, 2).finish().unwrap());
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let circuit = circuit.clone();
            std::thread::spawn(move || {
                run_circuit(&circuit, &ParamMap::new(), &Statevector::zero_state(3)).unwrap()
            })
        })
        .collect();
    let outputs: Vec<Statevector> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn fidelity_is_symmetric_and_phase_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..200 {
        let n = rng.gen_range(1..=5);
        let a = random_state(&mut rng, n);
        let b = random_state(&mut rng, n);
        let fab = fidelity(&a, &b).unwrap();
        let fba = fidelity(&b, &a).unwrap();
        assert!((fab - fba).abs() < 1e-12);
        assert!((0.0..=1.0 + 1e-12).contains(&fab));

        let phase = C64::from_polar(1.0, rng.gen::<f64>() * TAU);
        let shifted = Statevector::from_amplitudes(
            n,
            a.amplitudes().iter().map(|&x| phase * x).collect(),
        )
        .unwrap();
        assert!((fidelity(&shifted, &b).unwrap() - fab).abs() < 1e-12);
    }
}
