//! `zshsp`: one binary exposing the zero-sum solvers, the length schedule,
//! the benchmark harness, the hidden-subgroup reduction demo, and the
//! simulator verifier.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 input too short for the
//! schedule (the required length is printed), 4 a result failed independent
//! verification.

mod bench;
mod hspcmd;
mod lengths;
mod qsimcmd;
mod zerosum;

use clap::{Parser, Subcommand};
use std::process::ExitCode;

pub const EXIT_PARSE: u8 = 2;
pub const EXIT_TOO_SHORT: u8 = 3;
pub const EXIT_VERIFY: u8 = 4;

/// A command failure carrying the exit code the shell should see.
pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl Failure {
    pub fn parse(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            msg: msg.into(),
        }
    }

    pub fn verify(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_VERIFY,
            msg: msg.into(),
        }
    }
}

impl From<zsum::Error> for Failure {
    fn from(e: zsum::Error) -> Self {
        let code = match &e {
            zsum::Error::TooShort { .. } => EXIT_TOO_SHORT,
            zsum::Error::BadCertificate(_) | zsum::Error::SolverContract(_) => EXIT_VERIFY,
            _ => EXIT_PARSE,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<groups::Error> for Failure {
    fn from(e: groups::Error) -> Self {
        Failure::parse(e.to_string())
    }
}

impl From<hsp::Error> for Failure {
    fn from(e: hsp::Error) -> Self {
        Failure::parse(e.to_string())
    }
}

impl From<qsim::Error> for Failure {
    fn from(e: qsim::Error) -> Self {
        Failure::parse(e.to_string())
    }
}

pub type CmdResult = Result<(), Failure>;

#[derive(Parser)]
#[command(
    name = "zshsp",
    version,
    about = "Zero-sum subsequence solvers and hidden-subgroup tools over finite groups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Find a zero-sum (or signed zero-sum) subsequence and print a verified certificate.
    Zerosum(zerosum::Args),
    /// Tabulate solver input lengths against the extremal lower bound.
    Lengths(lengths::Args),
    /// Time the unsigned solver over a (p, n) grid and stream one record per trial.
    Bench(bench::Args),
    /// Hidden-subgroup reduction against a simulated oracle.
    Hsp {
        #[command(subcommand)]
        cmd: hspcmd::Cmd,
    },
    /// Exact simulator checks for subgroup states and conversions.
    Qsim {
        #[command(subcommand)]
        cmd: qsimcmd::Cmd,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Zerosum(args) => zerosum::run(&args),
        Cmd::Lengths(args) => lengths::run(&args),
        Cmd::Bench(args) => bench::run(&args),
        Cmd::Hsp { cmd } => hspcmd::run(&cmd),
        Cmd::Qsim { cmd } => qsimcmd::run(&cmd),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
