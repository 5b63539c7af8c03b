//! `zshsp zerosum`: run the deterministic searches on a file or on seeded
//! random input and print an independently verified certificate record.

use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use crate::{CmdResult, Failure};
use zsum::{
    find_signed_zero, find_zero_sum, read_sequence, required_length, required_signed_length,
    verify_certificate, verify_signed_zero, PrimeModulus, RandomSource, Sign, VecSequence,
};

#[derive(clap::Args)]
pub struct Args {
    /// Prime modulus.
    #[arg(long)]
    p: u16,
    /// Dimension of the vectors over Z_p.
    #[arg(long)]
    n: usize,
    /// Read the sequence from this file: a "p n" header line, then one
    /// space-separated vector per line.
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    input: Option<PathBuf>,
    /// Generate this many uniform random vectors instead of reading a file.
    #[arg(long)]
    random: Option<usize>,
    /// Seed for --random.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Search for a nonempty signed combination summing to zero, which
    /// needs a much shorter input than the plain search.
    #[arg(long)]
    signed_only: bool,
}

fn load(args: &Args, p: PrimeModulus) -> Result<VecSequence, Failure> {
    if let Some(count) = args.random {
        return Ok(RandomSource::new(args.seed).sequence(p, args.n, count)?);
    }
    let path = args.input.as_ref().expect("clap requires one source");
    let file = File::open(path)
        .map_err(|e| Failure::parse(format!("cannot open {}: {e}", path.display())))?;
    let seq = read_sequence(BufReader::new(file))?;
    if seq.p() != p || seq.dim() != args.n {
        return Err(Failure::parse(format!(
            "file holds vectors over Z_{}^{}, flags say Z_{}^{}",
            seq.p().get(),
            seq.dim(),
            p.get(),
            args.n
        )));
    }
    Ok(seq)
}

pub fn run(args: &Args) -> CmdResult {
    let p = PrimeModulus::new(args.p)?;
    if args.n == 0 {
        return Err(Failure::parse("dimension must be at least 1"));
    }
    let seq = load(args, p)?;
    let slice = seq.as_slice();
    if args.signed_only {
        let needed = required_signed_length(p, args.n)?;
        if (slice.len() as u128) < needed {
            return Err(Failure {
                code: crate::EXIT_TOO_SHORT,
                msg: format!(
                    "sequence too short for the signed search: required={needed} have={}",
                    slice.len()
                ),
            });
        }
        let subset = find_signed_zero(slice)?;
        verify_signed_zero(slice, &subset)
            .map_err(|e| Failure::verify(format!("signed certificate rejected: {e}")))?;
        let entries: Vec<String> = subset
            .iter()
            .map(|(i, s)| match s {
                Sign::Plus => format!("+{i}"),
                Sign::Minus => format!("-{i}"),
            })
            .collect();
        println!(
            "kind=signed p={} n={} len={} size={} entries={} verified=true",
            args.p,
            args.n,
            slice.len(),
            subset.len(),
            entries.join(",")
        );
        return Ok(());
    }
    let needed = required_length(p, args.n)?;
    if (slice.len() as u128) < needed {
        return Err(Failure {
            code: crate::EXIT_TOO_SHORT,
            msg: format!(
                "sequence too short: required={needed} have={}",
                slice.len()
            ),
        });
    }
    let cert = find_zero_sum(slice)?;
    verify_certificate(slice, &cert)
        .map_err(|e| Failure::verify(format!("certificate rejected: {e}")))?;
    let indices: Vec<String> = cert.indices().iter().map(u32::to_string).collect();
    println!(
        "kind=zerosum p={} n={} len={} size={} indices={} verified=true",
        args.p,
        args.n,
        slice.len(),
        cert.indices().len(),
        indices.join(",")
    );
    Ok(())
}
