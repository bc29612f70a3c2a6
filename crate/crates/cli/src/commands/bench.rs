use crate::args::BenchArgs;
use anyhow::{bail, Result};
use qverify_engine::seeds::{derive, stream};
use qverify_engine::{check_equivalence, CheckConfig, EquivalenceReport};
use qverify_qasm::{insert_perturbation, parse_qasm_named, InsertPosition, PerturbationSpec};
use std::time::Instant;

/// Per file: parse, build an equivalent variant (identity insertion) and a
/// non-equivalent one (Rx(1.23) insertion), run both checks, emit one CSV
/// row. Files that fail to read or parse are reported and skipped.
pub fn run(args: BenchArgs) -> Result<u8> {
    let mut files: Vec<_> = std::fs::read_dir(&args.dir)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "qasm"))
        .collect();
    files.sort();
    if files.is_empty() {
        bail!("no .qasm files in {}", args.dir.display());
    }

    let mut csv = format!("{}\n", EquivalenceReport::csv_header());
    println!("{}", EquivalenceReport::csv_header());
    for (index, path) in files.iter().enumerate() {
        let name = path.file_stem().map(|s| s.to_string_lossy().to_string()).unwrap_or_default();
        let text = match std::fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) => {
                eprintln!("skipping {}: {e}", path.display());
                continue;
            }
        };
        let program = match parse_qasm_named(&text, &name) {
            Ok(program) => program,
            Err(e) => {
                eprintln!("skipping {}: {e}", path.display());
                continue;
            }
        };
        let circuit = &program.circuit;

        let file_start = Instant::now();
        let equal_variant = insert_perturbation(
            circuit,
            &PerturbationSpec::insert_identity(InsertPosition::Random {
                seed: derive(args.seed, stream::POSITION, 2 * index as u64),
            }),
        )?;
        let unequal_variant = insert_perturbation(
            circuit,
            &PerturbationSpec::insert_rx(
                1.23,
                InsertPosition::Random {
                    seed: derive(args.seed, stream::POSITION, 2 * index as u64 + 1),
                },
            ),
        )?;

        let config =
            CheckConfig::analytic(args.states, derive(args.seed, stream::BENCH, index as u64));
        let report_y = check_equivalence(circuit, &equal_variant, &config)?;
        let report_n = check_equivalence(circuit, &unequal_variant, &config)?;
        let seconds = file_start.elapsed().as_secs_f64();

        let row = format!(
            "{name},{},{},{},{:.6e},{:.6e},{seconds:.3}",
            circuit.num_qubits(),
            circuit.gate_count(),
            circuit.depth(),
            report_y.mean_p_failure,
            report_n.mean_p_failure,
        );
        println!("{row}");
        csv.push_str(&row);
        csv.push('\n');
    }

    if let Some(path) = &args.csv {
        std::fs::write(path, csv)?;
    }
    Ok(0)
}
