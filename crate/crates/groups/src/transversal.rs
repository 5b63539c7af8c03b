//! Left-coset transversals along a chief-series chain, and the quotient and
//! subgroup groups realized on top of them.
//!
//! For a subgroup L of a nilpotent group G, pushing the chief series terms
//! K_i through L gives a descending chain M_i = K_i·L from G down to L in
//! which every step has prime index. Fixing one coset leader per step makes
//! every x in G a unique product a_1^(g_1)...a_s^(g_s)·l with l in L; the
//! digit vector is found by an iterated discrete logarithm, exhaustive over
//! each prime radix.

use crate::alg::chief_series;
use crate::error::{Error, Result};
use crate::group::{ElemId, GroupRef, MAX_TABLE_ORDER};
use crate::num::is_prime;
use crate::subgroup::Subgroup;
use std::rc::Rc;

/// Factorization x = alpha(x)·beta(x) with beta(x) in L and alpha constant
/// on left cosets xL.
#[derive(Clone, Debug)]
pub struct CosetTransversal {
    parent: GroupRef,
    sub: Subgroup,
    leaders: Vec<ElemId>,
    primes: Vec<u32>,
    chain: Vec<Vec<ElemId>>,
    reps: Vec<ElemId>,
}

/// Build the transversal of L in g along a chief-series chain.
pub fn transversal(g: &GroupRef, l: &Subgroup) -> Result<CosetTransversal> {
    if !Rc::ptr_eq(g, l.parent()) {
        return Err(Error::ParentMismatch);
    }
    let series = chief_series(g)?;
    let mut chain: Vec<Vec<ElemId>> = Vec::new();
    for k in series.terms() {
        let mut gens = k.generators().to_vec();
        gens.extend_from_slice(l.generators());
        let m = Subgroup::new(g, &gens)?;
        let els = m.elements().to_vec();
        if chain.last().map(|prev: &Vec<ElemId>| prev.len()) == Some(els.len()) {
            continue;
        }
        chain.push(els);
    }
    let mut leaders = Vec::new();
    let mut primes = Vec::new();
    for w in chain.windows(2) {
        let (big, small) = (&w[0], &w[1]);
        let a = *big
            .iter()
            .find(|x| small.binary_search(x).is_err())
            .expect("strict step has a leader");
        let p = big.len() / small.len();
        assert!(is_prime(p as u32), "chain step index {p} is not prime");
        leaders.push(a);
        primes.push(p as u32);
    }
    let index: usize = primes.iter().map(|&p| p as usize).product();
    let mut reps = Vec::with_capacity(index);
    for rank in 0..index {
        let mut rest = rank;
        let mut digits = vec![0u32; primes.len()];
        for (d, &p) in digits.iter_mut().zip(&primes).rev() {
            *d = (rest % p as usize) as u32;
            rest /= p as usize;
        }
        let mut acc = g.identity();
        for (&a, &d) in leaders.iter().zip(&digits) {
            acc = g.mul(acc, g.pow(a, d as i64));
        }
        reps.push(acc);
    }
    let t = CosetTransversal {
        parent: Rc::clone(g),
        sub: l.clone(),
        leaders,
        primes,
        chain,
        reps,
    };
    if g.order() <= 4096 {
        for (rank, &r) in t.reps.iter().enumerate() {
            debug_assert_eq!(t.coset_rank(r), rank, "rank map is not a bijection");
        }
        for x in g.elements() {
            debug_assert!(t.sub.contains(t.beta(x)), "beta landed outside the subgroup");
        }
    }
    Ok(t)
}

impl CosetTransversal {
    pub fn parent(&self) -> &GroupRef {
        &self.parent
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    /// Number of cosets [G : L].
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn leaders(&self) -> &[ElemId] {
        &self.leaders
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    /// The representative for a coset rank.
    pub fn rep(&self, rank: usize) -> ElemId {
        self.reps[rank]
    }

    pub fn reps(&self) -> &[ElemId] {
        &self.reps
    }

    /// Digit vector of x: per chain step, the exponent of the leader that
    /// pulls x down into the next chain term.
    pub fn digits(&self, x: ElemId) -> Vec<u32> {
        let g = &self.parent;
        let mut cur = x;
        let mut out = Vec::with_capacity(self.leaders.len());
        for (i, (&a, &p)) in self.leaders.iter().zip(&self.primes).enumerate() {
            let lower = &self.chain[i + 1];
            let a_inv = g.inv(a);
            let mut digit = None;
            let mut probe = cur;
            for d in 0..p {
                if lower.binary_search(&probe).is_ok() {
                    digit = Some(d);
                    break;
                }
                probe = g.mul(a_inv, probe);
            }
            out.push(digit.expect("cosets of a prime step cover the previous term"));
            cur = probe;
        }
        out
    }

    /// Mixed-radix rank of the coset xL; digit 0 is most significant.
    pub fn coset_rank(&self, x: ElemId) -> usize {
        let mut rank = 0usize;
        for (&d, &p) in self.digits(x).iter().zip(&self.primes) {
            rank = rank * p as usize + d as usize;
        }
        rank
    }

    /// The transversal representative of xL.
    pub fn alpha(&self, x: ElemId) -> ElemId {
        self.reps[self.coset_rank(x)]
    }

    /// The L-part of x: alpha(x)^(-1)·x.
    pub fn beta(&self, x: ElemId) -> ElemId {
        let g = &self.parent;
        g.mul(g.inv(self.alpha(x)), x)
    }
}

/// The factor group G/L on coset-rank ids, together with the projection map
/// from parent ids to quotient ids. Rank 0 is the identity coset.
pub fn quotient_group(g: &GroupRef, l: &Subgroup) -> Result<(GroupRef, Vec<ElemId>)> {
    if !Rc::ptr_eq(g, l.parent()) {
        return Err(Error::ParentMismatch);
    }
    if !l.is_normal_in(&Subgroup::whole(g)) {
        return Err(Error::NotNormal);
    }
    let t = transversal(g, l)?;
    let n = t.index();
    if n > MAX_TABLE_ORDER {
        return Err(Error::OrderBudget(n));
    }
    let mut proj = vec![0 as ElemId; g.order()];
    for x in g.elements() {
        proj[x as usize] = t.coset_rank(x) as ElemId;
    }
    let mut table = vec![0 as ElemId; n * n];
    for (i, &ri) in t.reps().iter().enumerate() {
        for (j, &rj) in t.reps().iter().enumerate() {
            table[i * n + j] = proj[g.mul(ri, rj) as usize];
        }
    }
    let mut gens: Vec<ElemId> = g.generators().iter().map(|&s| proj[s as usize]).collect();
    gens.retain(|&q| q != 0);
    gens.sort_unstable();
    gens.dedup();
    let name = format!("{}/{}", g.name(), l.order());
    let q = crate::group::from_table(n, table, gens, &name)?;
    Ok((q, proj))
}

/// A subgroup as a standalone table-backed group, with the map from local
/// ids back to parent element ids.
pub fn subgroup_as_group(h: &Subgroup) -> Result<(GroupRef, Vec<ElemId>)> {
    let g = h.parent();
    let els = h.elements();
    let n = els.len();
    if n > MAX_TABLE_ORDER {
        return Err(Error::OrderBudget(n));
    }
    let local = |x: ElemId| els.binary_search(&x).expect("closed under mul") as ElemId;
    let mut table = vec![0 as ElemId; n * n];
    for (i, &a) in els.iter().enumerate() {
        for (j, &b) in els.iter().enumerate() {
            table[i * n + j] = local(g.mul(a, b));
        }
    }
    let gens: Vec<ElemId> = h.generators().iter().map(|&s| local(s)).collect();
    let name = format!("{}[{}]", g.name(), n);
    let sub = crate::group::from_table(n, table, gens, &name)?;
    Ok((sub, els.to_vec()))
}
