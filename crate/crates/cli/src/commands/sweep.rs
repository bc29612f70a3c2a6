use crate::args::SweepArgs;
use anyhow::{bail, Context, Result};
use qverify_engine::{delta_sweep, sweep_pair, SweepConfig};
use std::time::Instant;

fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        bail!("--delta-grid expects start:end:points, got `{spec}`");
    }
    let start: f64 = parts[0].parse().context("grid start")?;
    let end: f64 = parts[1].parse().context("grid end")?;
    let points: usize = parts[2].parse().context("grid point count")?;
    if points == 0 {
        bail!("grid needs at least one point");
    }
    if points == 1 {
        return Ok(vec![start]);
    }
    let step = (end - start) / (points - 1) as f64;
    Ok((0..points).map(|k| start + step * k as f64).collect())
}

pub fn run(args: SweepArgs) -> Result<u8> {
    let start = Instant::now();
    let (reference, generator) = sweep_pair(&args.pair)?;
    let deltas = parse_grid(&args.delta_grid)?;
    let config = SweepConfig::analytic(args.states, args.betas.max(1), args.seed);
    let points = delta_sweep(&reference, &generator, "delta", &deltas, &config)?;

    let mut csv = String::from("delta,mean_p_failure,std_dev\n");
    println!("{:>10}  {:>14}  {:>14}", "delta", "mean_p_failure", "std_dev");
    for p in &points {
        println!("{:>10.6} {:>15.6e} {:>15.6e}", p.delta, p.mean_p_failure, p.std_dev);
        csv.push_str(&format!("{:.12},{:.12e},{:.12e}\n", p.delta, p.mean_p_failure, p.std_dev));
    }
    println!("runtime: {:.3} s", start.elapsed().as_secs_f64());

    if let Some(path) = &args.csv {
        std::fs::write(path, csv)?;
    }
    Ok(0)
}
