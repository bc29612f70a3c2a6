use crate::args::ReconstructArgs;
use crate::input::{apply_binds_pair, load_circuit};
use crate::manifest::{artifact, write_json, RunManifest};
use anyhow::Result;
use qverify_engine::{check_equivalence, train_generator, CheckConfig, GeneratorTraining};
use std::time::Instant;

pub fn run(args: ReconstructArgs) -> Result<u8> {
    let start = Instant::now();
    let reference = load_circuit(&args.reference)?;
    let ansatz_spec = if args.ansatz.contains(':') || args.ansatz.ends_with(".qasm") {
        args.ansatz.clone()
    } else {
        format!("builtin:{}", args.ansatz)
    };
    let ansatz = load_circuit(&ansatz_spec)?;
    let (reference, ansatz) = apply_binds_pair(reference, ansatz, &args.bind)?;

    let options = GeneratorTraining {
        steps: args.steps,
        learning_rate: args.lr,
        batch: args.batch,
        seed: args.seed,
    };
    let (params, log) = train_generator(&reference, &ansatz, None, None, &options)?;
    println!("initial p_failure: {:.6e}", log.initial_cost());
    println!("final p_failure:   {:.6e}", log.final_cost());
    println!("best p_failure:    {:.6e}", log.best().p_failure);
    println!("converged:         {}", log.converged);
    for (name, value) in params.iter() {
        println!("{name} = {value:+.9}");
    }

    let mut exit = 0u8;
    if args.check_states > 0 {
        let trained = ansatz.bind_all(&params);
        let report = check_equivalence(
            &reference,
            &trained,
            &CheckConfig::analytic(args.check_states, args.seed),
        )?;
        println!("final check:       {:?} (mean p_failure {:.6e})", report.verdict, report.mean_p_failure);
        if report.verdict != qverify_engine::Verdict::Equivalent {
            exit = 1;
        }
    }
    println!("runtime:           {:.3} s", start.elapsed().as_secs_f64());

    let config = serde_json::json!({
        "reference": args.reference,
        "ansatz": args.ansatz,
        "steps": args.steps,
        "lr": args.lr,
        "batch": args.batch,
        "seed": args.seed,
    });
    if let Some(path) = &args.log {
        let manifest = RunManifest::new("reconstruct", config.clone());
        write_json(path, &artifact(&manifest, &log))?;
    }
    if let Some(path) = &args.csv {
        std::fs::write(path, log.to_csv())?;
    }
    Ok(exit)
}
