//! `zshsp hsp`: hide a subgroup behind the simulated oracle, run the
//! reduction, and print the audit trace; or sweep every subgroup of a group.

use clap::Subcommand;

use crate::{CmdResult, Failure};
use groups::{by_name, ElemId};
use hsp::{
    exhaustive_validation, simulated_hsmc, solve_hsp, HiddenSubgroupInstance, Verdict,
};

#[derive(Subcommand)]
pub enum Cmd {
    /// Hide the subgroup generated by --hidden, recover it, print the trace.
    Demo(DemoArgs),
    /// Recover every subgroup of the group and report oracle spend.
    Validate(ValidateArgs),
}

#[derive(clap::Args)]
pub struct DemoArgs {
    /// Group name, e.g. d8, q8, z2^4, heisenberg:3, ut4:2.
    #[arg(long)]
    group: String,
    /// Generator element ids of the hidden subgroup (comma separated;
    /// omit for the trivial subgroup).
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    hidden: Vec<ElemId>,
}

#[derive(clap::Args)]
pub struct ValidateArgs {
    /// Group name.
    #[arg(long)]
    group: String,
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Reduced => "reduced",
        Verdict::Shrank => "shrank",
        Verdict::Grew => "grew",
        Verdict::Final => "final",
    }
}

pub fn run(cmd: &Cmd) -> CmdResult {
    match cmd {
        Cmd::Demo(args) => demo(args),
        Cmd::Validate(args) => validate(args),
    }
}

fn demo(args: &DemoArgs) -> CmdResult {
    let g = by_name(&args.group)?;
    let instance = HiddenSubgroupInstance::new(&g, &args.hidden)?;
    let mut oracle = simulated_hsmc(&instance);
    let (answer, trace) = solve_hsp(&g, &mut oracle)?;
    println!(
        "group={} order={} hidden_order={}",
        args.group,
        g.order(),
        instance.hidden_order()
    );
    for (i, row) in trace.rows.iter().enumerate() {
        println!(
            "step={} prime={} round={} shrink={} k_order={} h0_order={} verdict={}",
            i + 1,
            row.prime,
            row.outer,
            row.inner,
            row.k_order,
            row.h0_order,
            verdict_name(row.verdict)
        );
    }
    for spend in &trace.spends {
        println!(
            "prime={} exponent={} calls={} bound={} within_bound={}",
            spend.prime,
            spend.exponent,
            spend.calls,
            spend.bound(),
            spend.within_bound()
        );
    }
    let correct = instance.check_answer(&answer);
    let gens: Vec<String> = answer
        .reduce_generators()
        .iter()
        .map(u32::to_string)
        .collect();
    println!(
        "recovered_order={} recovered_gens={} total_calls={} within_bounds={} correct={}",
        answer.order(),
        gens.join(","),
        trace.total_calls(),
        trace.within_bounds(),
        correct
    );
    if !correct {
        return Err(Failure::verify("recovered subgroup differs from the hidden one"));
    }
    if !trace.within_bounds() {
        return Err(Failure::verify("oracle spend exceeded the quadratic bound"));
    }
    Ok(())
}

fn validate(args: &ValidateArgs) -> CmdResult {
    let g = by_name(&args.group)?;
    let report = exhaustive_validation(&g)?;
    for row in &report.rows {
        if !row.ok() {
            println!(
                "hidden_order={} recovered={} calls={} within_bounds={} violations={}",
                row.hidden_order, row.recovered, row.calls, row.within_bounds, row.violations
            );
        }
    }
    println!(
        "group={} order={} subgroups={} total_calls={} max_calls={} all_ok={}",
        report.group_name,
        report.group_order,
        report.subgroup_count(),
        report.total_calls(),
        report.max_calls(),
        report.all_ok()
    );
    if !report.all_ok() {
        return Err(Failure::verify("at least one subgroup failed recovery"));
    }
    Ok(())
}
