//! `zshsp qsim`: run the exact-simulator invariant suite on a group and
//! print one line per check with the largest observed error.

use clap::Subcommand;

use crate::{CmdResult, Failure};
use groups::{
    all_subgroups, by_name, is_central, prime_factors, ElemId, GroupRef, Subgroup,
};
use qsim::{
    carry_subgroup, phase_cancellation_defect, projector_defect, purification_defect,
    push_conversion, push_subgroup, restrict_conversion, standard_purification, subgroup_state,
    CentralBasis, ZeroSumSelector, STEP_TOL,
};

#[derive(Subcommand)]
pub enum Cmd {
    /// Check projector laws, purifications, restriction, pushing, the
    /// character-operator identities, and phase cancellation.
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
pub struct VerifyArgs {
    /// Group name, e.g. d8, q8, z2^4, heisenberg:3.
    #[arg(long)]
    group: String,
    /// Generator ids of one subgroup to check (comma separated).
    #[arg(long, value_delimiter = ',', num_args = 0.., conflicts_with = "all")]
    subgroup: Option<Vec<ElemId>>,
    /// Sweep every subgroup of the group.
    #[arg(long)]
    all: bool,
}

/// Central subgroups on which the character operators are defined.
fn central_layers(g: &GroupRef) -> Vec<Subgroup> {
    all_subgroups(g)
        .into_iter()
        .filter(|l| l.order() > 1 && is_central(l))
        .filter(|l| {
            let factors = prime_factors(l.order());
            factors.len() == 1
                && l.elements()
                    .iter()
                    .all(|&x| g.pow(x, factors[0].0 as i64) == g.identity())
        })
        .collect()
}

struct Suite {
    failures: usize,
}

impl Suite {
    fn report(&mut self, check: &str, label: &str, err: f64) {
        let status = if err <= STEP_TOL { "pass" } else { "fail" };
        if err > STEP_TOL {
            self.failures += 1;
        }
        println!("check={check} {label} max_err={err:.2e} status={status}");
    }
}

fn gens_label(s: &Subgroup) -> String {
    let gens: Vec<String> = s.reduce_generators().iter().map(u32::to_string).collect();
    if gens.is_empty() {
        "-".into()
    } else {
        gens.join(",")
    }
}

pub fn run(cmd: &Cmd) -> CmdResult {
    let Cmd::Verify(args) = cmd;
    let g = by_name(&args.group)?;
    let scope: Vec<Subgroup> = if args.all {
        all_subgroups(&g)
    } else if let Some(gens) = &args.subgroup {
        vec![Subgroup::new(&g, gens)?]
    } else {
        vec![Subgroup::trivial(&g)]
    };
    let layers = central_layers(&g);
    let mut suite = Suite { failures: 0 };

    for l in &layers {
        let basis = CentralBasis::new(&g, l)?;
        let worst = basis
            .resolution_defect()
            .max(basis.family_defect())
            .max(basis.isometry_defect())
            .max(basis.left_translation_defect())
            .max(basis.right_translation_defect())
            .max(basis.eigenvalue_defect())
            .max(basis.coset_defect());
        suite.report(
            "operators",
            &format!("group={} l={}", args.group, gens_label(l)),
            worst,
        );
    }

    for h in &scope {
        let rho = subgroup_state(&g, h)?;
        let index = g.order() / h.order();
        let label = format!("group={} h={}", args.group, gens_label(h));
        suite.report("projector", &label, projector_defect(&rho, index));
        let psi = standard_purification(&g, h)?;
        suite.report("purification", &label, purification_defect(&psi, &g, h)?);

        for l in &layers {
            let pair = format!("{label} l={}", gens_label(l));
            let r = restrict_conversion(&psi, l)?;
            let meet = carry_subgroup(&r.group, &r.to_parent, &h.intersection(l))?;
            suite.report(
                "restriction",
                &pair,
                purification_defect(&r.state, &r.group, &meet)?,
            );
            if l.is_subgroup_of(h) {
                let p = push_conversion(&psi, l, h)?;
                let image = push_subgroup(&p.group, &p.proj, h)?;
                suite.report(
                    "push",
                    &pair,
                    purification_defect(&p.state, &p.group, &image)?,
                );
            }
            let basis = CentralBasis::new(&g, l)?;
            let selector = ZeroSumSelector::new(basis.p(), basis.n())?;
            suite.report(
                "phases",
                &pair,
                phase_cancellation_defect(&psi, &basis, &selector)?,
            );
        }
    }

    if suite.failures > 0 {
        return Err(Failure::verify(format!(
            "{} check(s) exceeded the single-step tolerance",
            suite.failures
        )));
    }
    Ok(())
}
