use crate::args::TrainDiscArgs;
use crate::manifest::{artifact, write_json, RunManifest};
use anyhow::Result;
use qverify_engine::seeds::{derive, stream};
use qverify_engine::{sample_noise, train_discriminator};
use std::time::Instant;

pub fn run(args: TrainDiscArgs) -> Result<u8> {
    let start = Instant::now();
    let noise = sample_noise(args.pairs, args.noise_sigma, derive(args.seed, stream::NOISE, 0));
    let (params, log) = train_discriminator(args.pairs, &noise, args.steps, args.lr, args.seed)?;
    let runtime = start.elapsed().as_secs_f64();

    println!("initial p_failure: {:.6e}", log.initial_cost());
    println!("final p_failure:   {:.6e}", log.final_cost());
    println!("best p_failure:    {:.6e}", log.best().p_failure);
    println!("converged:         {}", log.converged);
    for (i, (theta, eps)) in params.thetas.iter().zip(&noise.epsilons).enumerate() {
        println!("theta_{i} = {theta:+.6e}   noise_{i} = {eps:+.6e}   residual = {:+.3e}", theta + eps);
    }
    println!("runtime:           {runtime:.3} s");

    let config = serde_json::json!({
        "pairs": args.pairs,
        "noise_sigma": args.noise_sigma,
        "steps": args.steps,
        "lr": args.lr,
        "seed": args.seed,
        "noise": noise,
    });
    if let Some(path) = &args.log {
        let manifest = RunManifest::new("train-disc", config.clone());
        write_json(path, &artifact(&manifest, &log))?;
    }
    if let Some(path) = &args.csv {
        std::fs::write(path, log.to_csv())?;
    }
    if let Some(path) = &args.theta_out {
        let mut text = serde_json::to_string_pretty(&params)?;
        text.push('\n');
        std::fs::write(path, text)?;
    }
    Ok(0)
}
