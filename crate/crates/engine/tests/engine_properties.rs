//! Heavier cross-module properties: detection of every non-identity
//! difference in a perturbation library, absence of false positives, and two
//! independent oracles for the discriminator statistic: the ancilla-based
//! SWAP test and the rotated-overlap identity for the noisy circuit.

use qverify_engine::{
    build_local_random_circuit, check_equivalence, p_failure_analytic, sample_noise, CheckConfig,
    DiscriminatorParams, LocalRandomSpec, Verdict,
};
use qverify_core::{fidelity, run_circuit, Circuit, Gate, GateKind, ParamMap, Statevector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

fn random_state(n: usize, seed: u64) -> Statevector {
    let spec = LocalRandomSpec::new(n, seed);
    run_circuit(&build_local_random_circuit(&spec), &ParamMap::new(), &Statevector::zero_state(n))
        .unwrap()
}

fn random_base_circuit(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Circuit {
    let mut builder = Circuit::build(n);
    for _ in 0..len {
        let q = rng.gen_range(0..n);
        builder = match rng.gen_range(0..6) {
            0 => builder.h(q),
            1 => builder.rx(q, rng.gen::<f64>() * TAU),
            2 => builder.rz(q, rng.gen::<f64>() * TAU),
            3 => builder.s(q),
            4 if n > 1 => {
                let other = (q + 1 + rng.gen_range(0..n - 1)) % n;
                builder.cx(q, other)
            }
            _ if n > 1 => {
                let other = (q + 1 + rng.gen_range(0..n - 1)) % n;
                builder.cz(q, other)
            }
            _ => builder.h(q),
        };
    }
    builder.finish().unwrap()
}

/// Every non-identity single-gate perturbation in a 50-case library is
/// caught by at least one of 100 random states.
#[test]
fn perturbation_library_always_detected() {
    let mut rng = ChaCha8Rng::seed_from_u64(271);
    for case in 0..50 {
        let n = rng.gen_range(2..=6);
        let len = rng.gen_range(3..=14);
        let base = random_base_circuit(&mut rng, n, len);
        let qubit = rng.gen_range(0..n);
        let position = rng.gen_range(0..=base.gate_count());
        // Angles bounded away from 0 and 2π so the difference is genuine.
        let defect = match rng.gen_range(0..4) {
            0 => Gate::rx(qubit, rng.gen_range(0.5..5.7)),
            1 => Gate::ry(qubit, rng.gen_range(0.5..5.7)),
            2 => Gate::t(qubit),
            _ => Gate::x(qubit),
        };
        let perturbed = base.with_gate_inserted(position, defect).unwrap();

        let report =
            check_equivalence(&base, &perturbed, &CheckConfig::analytic(100, 9000 + case)).unwrap();
        let best = report
            .per_trial
            .iter()
            .map(|t| t.estimate.p_failure)
            .fold(0.0, f64::max);
        assert!(best > 1e-6, "case {case}: best per-trial p_failure {best}");
        assert_ne!(report.verdict, Verdict::Equivalent, "case {case}");
    }
}

/// Equivalent pairs (identical circuits and global-phase variants) never
/// produce a failure above double-precision dust.
#[test]
fn no_false_positives_for_equivalent_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(577);
    for case in 0..20 {
        let n = rng.gen_range(2..=5);
        let len = rng.gen_range(2..=12);
        let base = random_base_circuit(&mut rng, n, len);
        let variant = match case % 3 {
            0 => base.clone(),
            1 => base.appended(Gate::ry(0, TAU)).unwrap(), // global −1
            _ => {
                // X·Y·Z composes to a −i global phase.
                base.appended(Gate::x(0))
                    .unwrap()
                    .appended(Gate::y(0))
                    .unwrap()
                    .appended(Gate::z(0))
                    .unwrap()
            }
        };
        let report =
            check_equivalence(&base, &variant, &CheckConfig::analytic(100, 40_000 + case)).unwrap();
        assert_eq!(report.verdict, Verdict::Equivalent, "case {case}");
        assert!(report.max_p_failure < 1e-10, "case {case}: max {}", report.max_p_failure);
    }
}

/// Ancilla-based SWAP test as an independent oracle: H on the ancilla,
/// controlled-SWAP across every pair, H again; P(ancilla = 1) must equal
/// p_failure / 2.
#[test]
fn ancilla_swap_test_oracle_agrees() {
    for n in 1..=3usize {
        for trial in 0..10u64 {
            let a = random_state(n, 7_000 + trial);
            let b = random_state(n, 8_000 + trial);

            let total = 1 + 2 * n;
            let mut gates = vec![Gate::h(0)];
            for k in 0..n {
                gates.push(
                    Gate::new(GateKind::Swap, vec![1 + k, 1 + n + k], vec![0], vec![]).unwrap(),
                );
            }
            gates.push(Gate::h(0));
            let circuit = Circuit::from_gates(total, gates).unwrap();

            let ancilla = Statevector::zero_state(1);
            let joint = ancilla.tensor(&a.tensor(&b).unwrap()).unwrap();
            let out = run_circuit(&circuit, &ParamMap::new(), &joint).unwrap();

            // P(ancilla = 1): the ancilla is the most significant qubit.
            let half = out.dim() / 2;
            let p1: f64 = (half..out.dim()).map(|i| out.probability(i)).sum();

            let destructive =
                p_failure_analytic(&a, &b, &DiscriminatorParams::zeros(n), None).unwrap();
            assert!(
                (2.0 * p1 - destructive.p_failure).abs() < 1e-12,
                "n={n} trial={trial}: ancilla 2p1={} vs destructive {}",
                2.0 * p1,
                destructive.p_failure
            );
        }
    }
}

/// Algebraic identity for the noisy, θ-compensated discriminator: commuting
/// the post-CZ Rz angles out of the test gives
/// `p_failure = 1 − |⟨(⊗_k Rz(α_k)) φ | (⊗_k Rx(β_k)) ψ⟩|²`,
/// with α_k = θ_{2k}+ε_{2k} on the reference register and β_k = θ_{2k+1}+ε_{2k+1}
/// entering as Rx through the basis-change sandwich on the generator register.
#[test]
fn rotated_overlap_identity_matches_simulation() {
    let mut rng = ChaCha8Rng::seed_from_u64(901);
    for trial in 0..30u64 {
        let n = rng.gen_range(1..=3usize);
        let noise = sample_noise(n, 0.5, 300 + trial);
        let thetas: Vec<f64> = (0..2 * n).map(|_| rng.gen::<f64>() * TAU).collect();
        let params = DiscriminatorParams::new(thetas.clone());

        let a = random_state(n, 17_000 + trial);
        let b = random_state(n, 18_000 + trial);

        let simulated = p_failure_analytic(&a, &b, &params, Some(&noise)).unwrap();

        let mut rz_ref = Circuit::build(n);
        let mut rx_gen = Circuit::build(n);
        for k in 0..n {
            rz_ref = rz_ref.rz(k, thetas[2 * k] + noise.epsilons[2 * k]);
            rx_gen = rx_gen.rx(k, thetas[2 * k + 1] + noise.epsilons[2 * k + 1]);
        }
        let a_rot = run_circuit(&rz_ref.finish().unwrap(), &ParamMap::new(), &a).unwrap();
        let b_rot = run_circuit(&rx_gen.finish().unwrap(), &ParamMap::new(), &b).unwrap();
        let expected = 1.0 - fidelity(&a_rot, &b_rot).unwrap();

        assert!(
            (simulated.p_failure - expected).abs() < 1e-12,
            "trial {trial}: simulated {} vs overlap identity {expected}",
            simulated.p_failure
        );
        // The identity also proves the clip-free range.
        assert!((0.0..=1.0 + 1e-12).contains(&simulated.p_failure));
    }
}
