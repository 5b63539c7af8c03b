//! The reduction loop: recover a hidden subgroup of a nilpotent group from
//! oracle answers, one Sylow subgroup at a time.
//!
//! Within the Sylow p-subgroup P of order p^m the loop maintains a confirmed
//! part H0 and a candidate window K. Each round restarts K at the normalizer
//! of H0 inside P (which strictly contains any proper H0), then shrinks K
//! classically while K modulo its commutator-and-confirmed part is not
//! elementary abelian, and otherwise spends an oracle call. An answer equal
//! to K certifies K is entirely inside the hidden subgroup (the commutator
//! sits below the Frattini subgroup, so a generating answer generates), and
//! a smaller answer becomes the new window. The window hitting H0 certifies
//! H0 is the full intersection with P. Oracle spend per Sylow is at most m²:
//! at most m rounds, each shrinking K through at most m orders.

use crate::error::Result;
use crate::oracle::HsmcOracle;
use groups::{
    commutator_subgroup, elementary_quotient_reducer, is_elementary_abelian, normalizer,
    prime_factors, sylow, GroupRef, Subgroup,
};

/// What a trace row records about one step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// K was shrunk classically to the layer of low-order cosets.
    Reduced,
    /// The oracle answered a proper subgroup; K shrank to it.
    Shrank,
    /// The oracle answered K itself; H0 grew to K.
    Grew,
    /// K met H0; the Sylow intersection is settled.
    Final,
}

/// One logged step, with the sizes after the step's effect.
#[derive(Clone, Copy, Debug)]
pub struct TraceRow {
    pub prime: u32,
    pub outer: u32,
    pub inner: u32,
    pub k_order: usize,
    pub h0_order: usize,
    pub verdict: Verdict,
}

/// Per-prime oracle spend against the quadratic budget.
#[derive(Clone, Copy, Debug)]
pub struct SylowSpend {
    pub prime: u32,
    /// Exponent of the Sylow order.
    pub exponent: u32,
    pub calls: usize,
}

impl SylowSpend {
    pub fn bound(&self) -> usize {
        (self.exponent as usize).pow(2)
    }

    pub fn within_bound(&self) -> bool {
        self.calls <= self.bound()
    }
}

/// Full audit of one solve.
#[derive(Clone, Debug, Default)]
pub struct ReductionTrace {
    pub rows: Vec<TraceRow>,
    pub spends: Vec<SylowSpend>,
}

impl ReductionTrace {
    pub fn total_calls(&self) -> usize {
        self.spends.iter().map(|s| s.calls).sum()
    }

    pub fn within_bounds(&self) -> bool {
        self.spends.iter().all(SylowSpend::within_bound)
    }
}

/// Recover the hidden subgroup of g through an oracle, together with the
/// audit trace. The answer is generated by the per-Sylow intersections.
pub fn solve_hsp(g: &GroupRef, oracle: &mut dyn HsmcOracle) -> Result<(Subgroup, ReductionTrace)> {
    let mut trace = ReductionTrace::default();
    let mut answer = Subgroup::trivial(g);
    for (p, exponent) in prime_factors(g.order()) {
        let sylow_part = sylow(g, p)?;
        let calls_before = oracle.calls();
        let part = solve_in_sylow(g, &sylow_part, p, oracle, &mut trace)?;
        trace.spends.push(SylowSpend {
            prime: p,
            exponent,
            calls: oracle.calls() - calls_before,
        });
        answer = answer.join(&part);
    }
    Ok((answer, trace))
}

fn solve_in_sylow(
    g: &GroupRef,
    p_sylow: &Subgroup,
    prime: u32,
    oracle: &mut dyn HsmcOracle,
    trace: &mut ReductionTrace,
) -> Result<Subgroup> {
    let mut h0 = Subgroup::trivial(g);
    let mut outer = 0u32;
    loop {
        outer += 1;
        let mut k = normalizer(p_sylow, &h0)?;
        let mut inner = 0u32;
        loop {
            inner += 1;
            let mut row = TraceRow {
                prime,
                outer,
                inner,
                k_order: k.order(),
                h0_order: h0.order(),
                verdict: Verdict::Final,
            };
            if k.same_as(&h0) {
                trace.rows.push(row);
                return Ok(h0);
            }
            let kprime = commutator_subgroup(&k, &k)?;
            let b = kprime.join(&h0);
            if !is_elementary_abelian(&k, &b)? {
                k = elementary_quotient_reducer(&k, &b)?;
                row.k_order = k.order();
                row.verdict = Verdict::Reduced;
                trace.rows.push(row);
                continue;
            }
            let r = oracle.query(&k, &h0)?;
            if r.same_as(&k) {
                h0 = k.clone();
                row.h0_order = h0.order();
                row.verdict = Verdict::Grew;
                trace.rows.push(row);
                break;
            }
            k = r;
            row.k_order = k.order();
            row.verdict = Verdict::Shrank;
            trace.rows.push(row);
        }
    }
}
