use crate::args::{CheckArgs, FreeSymbolsArg, ModeArg};
use crate::input::{apply_binds_pair, load_circuit};
use crate::manifest::{artifact, write_json, RunManifest};
use anyhow::{Context, Result};
use qverify_engine::seeds::{derive, stream};
use qverify_engine::{
    check_equivalence, sample_noise, CheckConfig, DiscriminatorParams, EvalMode, FreeSymbolRule,
    Verdict,
};
use std::time::Instant;

pub fn run(args: CheckArgs) -> Result<u8> {
    let start = Instant::now();
    let reference = load_circuit(&args.reference)?;
    let generator = load_circuit(&args.generator)?;
    let (reference, generator) = apply_binds_pair(reference, generator, &args.bind)?;

    let n = reference.num_qubits();
    let mut config = CheckConfig::analytic(args.states, args.seed);
    config.mode = match args.mode {
        ModeArg::Analytic => EvalMode::Analytic,
        ModeArg::Sampled => EvalMode::Sampled { shots: args.shots },
    };
    config.free_symbols = match args.free_symbols {
        FreeSymbolsArg::Reject => FreeSymbolRule::Reject,
        FreeSymbolsArg::Shared => FreeSymbolRule::SharedUniform,
        FreeSymbolsArg::All => FreeSymbolRule::SampleAll,
    };
    if args.noise_sigma > 0.0 {
        config.noise = Some(sample_noise(n, args.noise_sigma, derive(args.seed, stream::NOISE, 0)));
    }
    if let Some(path) = &args.theta_file {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let params: DiscriminatorParams = serde_json::from_str(&text)
            .with_context(|| format!("parsing {}", path.display()))?;
        config.disc_params = Some(params);
    }

    let report = check_equivalence(&reference, &generator, &config)?;
    let runtime = start.elapsed().as_secs_f64();

    println!("verdict:          {:?}", report.verdict);
    println!("mean p_failure:   {:.6e}", report.mean_p_failure);
    println!("max p_failure:    {:.6e}", report.max_p_failure);
    println!("std dev:          {:.6e}", report.std_dev);
    match report.undetected_bound {
        Some(bound) => println!("undetected bound: {bound:.6e}"),
        None => println!("undetected bound: not applicable (analytic mode)"),
    }
    println!("runtime:          {runtime:.3} s");

    if let Some(path) = &args.json {
        let manifest = RunManifest::new(
            &format!("check {} {}", args.reference, args.generator),
            serde_json::to_value(&config)?,
        );
        write_json(path, &artifact(&manifest, &report))?;
    }

    Ok(match report.verdict {
        Verdict::Equivalent => 0,
        Verdict::NotEquivalent => 1,
        Verdict::Inconclusive => 2,
    })
}
