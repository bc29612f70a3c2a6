//! Shared helpers for the acceptance suite: fixture loading, independently
//! hand-built counterparts of every fixture, and the large scale-test
//! circuit builder.

use qverify_core::{Circuit, Gate, ParamMap, Statevector};
use qverify_engine::{build_local_random_circuit, seeds, LocalRandomSpec};
use qverify_qasm::{parse_qasm_named, QasmProgram};
use std::f64::consts::PI;
use std::path::PathBuf;

pub const FIXTURE_NAMES: [&str; 12] = [
    "grover_2.qasm",
    "ghz_3.qasm",
    "toffoli_3.qasm",
    "bv_4.qasm",
    "adder_n4.qasm",
    "qft_4.qasm",
    "rand_mix_4.qasm",
    "bv_5.qasm",
    "ghz_5.qasm",
    "pe_5.qasm",
    "ring_6.qasm",
    "custom_2.qasm",
];

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/qasm")
}

pub fn load_fixture(name: &str) -> QasmProgram {
    let path = fixtures_dir().join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{name}: {e}"));
    parse_qasm_named(&text, name).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Hand-built counterpart of each fixture, written from the intended gate
/// lists rather than the files.
pub fn hand_built(name: &str) -> Circuit {
    let c = match name {
        "grover_2.qasm" => Circuit::build(2)
            .h(0).h(1)
            .cz(0, 1)
            .h(0).h(1)
            .x(0).x(1)
            .cz(0, 1)
            .x(0).x(1)
            .h(0).h(1)
            .finish(),
        "ghz_3.qasm" => Circuit::build(3).h(0).cx(0, 1).cx(1, 2).finish(),
        "toffoli_3.qasm" => Circuit::build(3).h(0).h(1).ccx(0, 1, 2).s(2).finish(),
        "bv_4.qasm" => Circuit::build(4)
            .h(0).h(1).h(2)
            .x(3).h(3)
            .cx(0, 3)
            .cx(2, 3)
            .h(0).h(1).h(2)
            .finish(),
        "adder_n4.qasm" => Circuit::build(4).x(0).ccx(0, 1, 3).cx(0, 2).cx(1, 2).finish(),
        "qft_4.qasm" => Circuit::build(4)
            .h(0)
            .gate(Gate::cu1(1, 0, PI / 2.0))
            .gate(Gate::cu1(2, 0, PI / 4.0))
            .gate(Gate::cu1(3, 0, PI / 8.0))
            .h(1)
            .gate(Gate::cu1(2, 1, PI / 2.0))
            .gate(Gate::cu1(3, 1, PI / 4.0))
            .h(2)
            .gate(Gate::cu1(3, 2, PI / 2.0))
            .h(3)
            .swap(0, 3)
            .swap(1, 2)
            .finish(),
        "rand_mix_4.qasm" => Circuit::build(4)
            .h(0)
            .s(1)
            .cx(0, 1)
            .gate(Gate::sdg(2))
            .cx(1, 2)
            .h(3)
            .cz(2, 3)
            .t(0)
            .gate(Gate::tdg(1))
            .cx(3, 0)
            .s(3)
            .h(2)
            .finish(),
        "bv_5.qasm" => Circuit::build(5)
            .h(0).h(1).h(2).h(3)
            .x(4).h(4)
            .cx(0, 4)
            .cx(2, 4)
            .cx(3, 4)
            .h(0).h(1).h(2).h(3)
            .finish(),
        "ghz_5.qasm" => {
            Circuit::build(5).h(0).cx(0, 1).cx(1, 2).cx(2, 3).cx(3, 4).finish()
        }
        "pe_5.qasm" => Circuit::build(5)
            .h(0).h(1).h(2).h(3)
            .x(4)
            .gate(Gate::cu1(3, 4, PI))
            .gate(Gate::cu1(2, 4, PI / 2.0))
            .gate(Gate::cu1(1, 4, PI / 4.0))
            .gate(Gate::cu1(0, 4, PI / 8.0))
            .h(0)
            .gate(Gate::cu1(0, 1, -PI / 2.0))
            .h(1)
            .gate(Gate::cu1(0, 2, -PI / 4.0))
            .gate(Gate::cu1(1, 2, -PI / 2.0))
            .h(2)
            .gate(Gate::cu1(0, 3, -PI / 8.0))
            .gate(Gate::cu1(1, 3, -PI / 4.0))
            .gate(Gate::cu1(2, 3, -PI / 2.0))
            .h(3)
            .finish(),
        "ring_6.qasm" => Circuit::build(6)
            .h(0).h(1).h(2).h(3).h(4).h(5)
            .cx(0, 1)
            .cx(1, 2)
            .cx(2, 3)
            .cx(3, 4)
            .cx(4, 5)
            .cx(5, 0)
            .rz(0, 0.3).rz(1, 0.3).rz(2, 0.3).rz(3, 0.3).rz(4, 0.3).rz(5, 0.3)
            .finish(),
        "custom_2.qasm" => Circuit::build(2)
            .h(0)
            .cx(0, 1)
            .rz(1, 0.5)
            .cx(1, 0)
            .rz(0, 0.5)
            .finish(),
        other => panic!("no hand-built counterpart for {other}"),
    };
    c.expect("hand-built circuits are valid")
}

/// Layered test circuit in the style of volume benchmarks: one general
/// rotation per qubit then a brick of CX pairs, per layer. With n = 9 and
/// 15 layers this is 195 gates at depth 30.
pub fn quantum_volume_like(n: usize, layers: usize, seed: u64) -> Circuit {
    let mut builder = Circuit::build(n);
    for layer in 0..layers {
        for q in 0..n {
            let base = seeds::derive(seed, layer as u64, q as u64);
            builder = builder.gate(Gate::u3(
                q,
                seeds::uniform_angle(base),
                seeds::uniform_angle(seeds::splitmix64(base)),
                seeds::uniform_angle(seeds::splitmix64(seeds::splitmix64(base))),
            ));
        }
        let offset = layer % 2;
        let mut q = offset;
        while q + 1 < n {
            builder = builder.cx(q, q + 1);
            q += 2;
        }
    }
    builder.finish().expect("layered circuit is valid")
}

pub fn random_product_state(n: usize, seed: u64) -> Statevector {
    let spec = LocalRandomSpec::new(n, seed);
    qverify_core::run_circuit(
        &build_local_random_circuit(&spec),
        &ParamMap::new(),
        &Statevector::zero_state(n),
    )
    .unwrap()
}
