//! `zshsp bench`: time the unsigned search over a (p, n) grid on seeded
//! uniform input. One record per trial, every certificate re-verified.

use std::time::Instant;

use crate::{CmdResult, Failure};
use zsum::{
    find_zero_sum, required_length, verify_certificate, PrimeModulus, RandomSource,
};

/// Total vectors the whole grid may consume.
pub const BUDGET: u128 = 1 << 26;

#[derive(clap::Args)]
pub struct Args {
    /// Prime moduli, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    p: Vec<u16>,
    /// Dimensions, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Trials per grid point.
    #[arg(long, default_value_t = 3)]
    trials: usize,
    /// Seed for the single random stream feeding all trials.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

pub fn run(args: &Args) -> CmdResult {
    if args.trials == 0 {
        return Err(Failure::parse("trials must be positive"));
    }
    let mut grid = Vec::new();
    let mut total: u128 = 0;
    for &p in &args.p {
        let m = PrimeModulus::new(p)?;
        for &n in &args.n {
            if n == 0 {
                return Err(Failure::parse("dimension must be at least 1"));
            }
            let len = required_length(m, n)?;
            total += len * args.trials as u128;
            grid.push((m, n, len));
        }
    }
    if total > BUDGET {
        return Err(Failure::parse(format!(
            "budget exceeded: grid consumes {total} vectors, cap is {BUDGET}"
        )));
    }
    let mut rng = RandomSource::new(args.seed);
    for (m, n, len) in grid {
        for _ in 0..args.trials {
            let seq = rng.sequence(m, n, len as usize)?;
            let slice = seq.as_slice();
            let start = Instant::now();
            let cert = find_zero_sum(slice)?;
            let wall = start.elapsed();
            verify_certificate(slice, &cert)
                .map_err(|e| Failure::verify(format!("certificate rejected: {e}")))?;
            println!(
                "p={} n={} len={} wall_ms={:.3} cert_size={} verified=true",
                m.get(),
                n,
                len,
                wall.as_secs_f64() * 1e3,
                cert.indices().len()
            );
        }
    }
    Ok(())
}
