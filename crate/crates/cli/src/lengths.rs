//! `zshsp lengths`: the exact input lengths both searches consume, next to
//! the extremal lower bound 1 + n(p-1) that any method must pay.

use crate::{CmdResult, Failure};
use zsum::{olson_bound, required_length, required_signed_length, PrimeModulus};

const PRIMES: [u16; 6] = [2, 3, 5, 7, 11, 13];
pub const MAX_P: u16 = 13;
pub const MAX_N: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Aligned human-readable table.
    Table,
    /// One key=value record per line.
    Records,
}

#[derive(clap::Args)]
pub struct Args {
    /// Smallest prime to include.
    #[arg(long, default_value_t = 2)]
    p_min: u16,
    /// Largest prime to include (at most 13).
    #[arg(long, default_value_t = 13)]
    p_max: u16,
    /// Smallest dimension to include.
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    /// Largest dimension to include (at most 64).
    #[arg(long, default_value_t = 8)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

pub fn run(args: &Args) -> CmdResult {
    if args.p_max > MAX_P || args.n_max > MAX_N {
        return Err(Failure::parse(format!(
            "range capped at p <= {MAX_P}, n <= {MAX_N}"
        )));
    }
    if args.p_min > args.p_max || args.n_min > args.n_max || args.n_min == 0 {
        return Err(Failure::parse("empty or inverted range"));
    }
    let mut rows = Vec::new();
    for &p in PRIMES.iter().filter(|&&p| p >= args.p_min && p <= args.p_max) {
        let m = PrimeModulus::new(p)?;
        for n in args.n_min..=args.n_max {
            let signed = required_signed_length(m, n)?;
            let unsigned = required_length(m, n)?;
            rows.push((p, n, signed, unsigned, olson_bound(p, n)));
        }
    }
    match args.format {
        Format::Records => {
            for (p, n, signed, unsigned, olson) in rows {
                println!("p={p} n={n} signed={signed} unsigned={unsigned} olson={olson}");
            }
        }
        Format::Table => {
            let header = ("p", "n", "signed", "unsigned", "olson");
            let mut w = [
                header.0.len(),
                header.1.len(),
                header.2.len(),
                header.3.len(),
                header.4.len(),
            ];
            let cells: Vec<[String; 5]> = rows
                .iter()
                .map(|&(p, n, s, u, o)| {
                    [
                        p.to_string(),
                        n.to_string(),
                        s.to_string(),
                        u.to_string(),
                        o.to_string(),
                    ]
                })
                .collect();
            for row in &cells {
                for (k, cell) in row.iter().enumerate() {
                    w[k] = w[k].max(cell.len());
                }
            }
            println!(
                "{:>w0$}  {:>w1$}  {:>w2$}  {:>w3$}  {:>w4$}",
                header.0,
                header.1,
                header.2,
                header.3,
                header.4,
                w0 = w[0],
                w1 = w[1],
                w2 = w[2],
                w3 = w[3],
                w4 = w[4]
            );
            for row in &cells {
                println!(
                    "{:>w0$}  {:>w1$}  {:>w2$}  {:>w3$}  {:>w4$}",
                    row[0],
                    row[1],
                    row[2],
                    row[3],
                    row[4],
                    w0 = w[0],
                    w1 = w[1],
                    w2 = w[2],
                    w3 = w[3],
                    w4 = w[4]
                );
            }
        }
    }
    Ok(())
}
