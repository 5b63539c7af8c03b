//! Structure algorithms: commutator subgroups, central and chief series,
//! Sylow decomposition, normalizers, centers, and elementary-abelian quotient
//! tests and reducers.

use crate::error::{Error, Result};
use crate::group::{ElemId, GroupRef};
use crate::num::{factorize, is_prime};
use crate::subgroup::Subgroup;
use std::rc::Rc;

/// Descending series G = T_0 > T_1 > ... > T_c = 1 with T_{i+1} = [G, T_i].
#[derive(Clone, Debug)]
pub struct CentralSeries {
    terms: Vec<Subgroup>,
}

impl CentralSeries {
    pub fn terms(&self) -> &[Subgroup] {
        &self.terms
    }

    /// Number of strict steps down to the trivial subgroup.
    pub fn class(&self) -> usize {
        self.terms.len() - 1
    }
}

/// Descending series with prime-order factors, every term normal in the
/// whole group.
#[derive(Clone, Debug)]
pub struct ChiefSeries {
    terms: Vec<Subgroup>,
    primes: Vec<u32>,
}

impl ChiefSeries {
    pub fn terms(&self) -> &[Subgroup] {
        &self.terms
    }

    /// Factor sizes from the top step down; `primes()[i]` is
    /// `|terms[i]| / |terms[i+1]|`.
    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

/// Prime factorization of a subgroup-order-sized integer.
pub fn prime_factors(n: usize) -> Vec<(u32, u32)> {
    factorize(n)
}

fn assert_same_parent(a: &Subgroup, b: &Subgroup) -> Result<()> {
    if !Rc::ptr_eq(a.parent(), b.parent()) {
        return Err(Error::ParentMismatch);
    }
    Ok(())
}

/// Commutator subgroup [A, B] for B normal in A: the normal closure in A of
/// the generator commutators, grown by conjugation until stable.
pub fn commutator_subgroup(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    assert_same_parent(a, b)?;
    if !b.is_subgroup_of(a) {
        return Err(Error::NotContained);
    }
    if !b.is_normal_in(a) {
        return Err(Error::NotNormal);
    }
    let g = Rc::clone(a.parent());
    let mut gens: Vec<ElemId> = Vec::new();
    for &s in a.generators() {
        for &t in b.generators() {
            gens.push(g.commutator(s, t));
        }
    }
    let mut current = Subgroup::new(&g, &gens)?;
    loop {
        let mut fresh = Vec::new();
        for &c in current.elements() {
            for &s in a.generators() {
                let y = g.conj(s, c);
                if !current.contains(y) {
                    fresh.push(y);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        gens.extend(fresh);
        current = Subgroup::new(&g, &gens)?;
    }
    // Exhaustive cross-check at small scale: every elementwise commutator
    // must already be inside.
    if a.order() * b.order() <= 65_536 {
        for &x in a.elements() {
            for &y in b.elements() {
                debug_assert!(
                    current.contains(g.commutator(x, y)),
                    "commutator closure missed an element pair"
                );
            }
        }
    }
    Ok(Subgroup::from_elements(&g, current.elements().to_vec()))
}

/// [G, G].
pub fn derived_subgroup(g: &GroupRef) -> Result<Subgroup> {
    let whole = Subgroup::whole(g);
    commutator_subgroup(&whole, &whole)
}

/// Lower central series; errors when the descent stalls above the trivial
/// subgroup (the group is not nilpotent).
pub fn lower_central_series(g: &GroupRef) -> Result<CentralSeries> {
    let whole = Subgroup::whole(g);
    let mut terms = vec![whole.clone()];
    loop {
        let last = terms.last().expect("series is never empty");
        if last.is_trivial() {
            break;
        }
        let next = commutator_subgroup(&whole, last)?;
        if next.order() == last.order() {
            return Err(Error::NotNilpotent(last.order()));
        }
        terms.push(next);
    }
    Ok(CentralSeries { terms })
}

/// Length of the lower central series.
pub fn nilpotency_class(g: &GroupRef) -> Result<usize> {
    Ok(lower_central_series(g)?.class())
}

/// Elements commuting with everything, as a subgroup.
pub fn center(g: &GroupRef) -> Subgroup {
    let els: Vec<ElemId> = g
        .elements()
        .filter(|&x| g.generators().iter().all(|&s| g.mul(x, s) == g.mul(s, x)))
        .collect();
    Subgroup::from_elements(g, els)
}

/// True when every element of the subgroup commutes with the whole parent.
pub fn is_central(sub: &Subgroup) -> bool {
    let g = sub.parent();
    sub.elements()
        .iter()
        .all(|&x| g.generators().iter().all(|&s| g.mul(x, s) == g.mul(s, x)))
}

/// The unique Sylow p-subgroup spanned by the p-parts of the generators.
/// Errors when p does not divide the order or when the p-parts fail to close
/// into a full Sylow subgroup (no normal Sylow structure).
pub fn sylow(g: &GroupRef, p: u32) -> Result<Subgroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let order = g.order();
    let mult = factorize(order)
        .into_iter()
        .find(|&(q, _)| q == p)
        .map(|(_, e)| e)
        .ok_or(Error::PrimeDoesNotDivide { p, order })?;
    let mut gens = Vec::new();
    for &s in g.generators() {
        let mut rest = g.element_order(s);
        while rest.is_multiple_of(p as usize) {
            rest /= p as usize;
        }
        gens.push(g.pow(s, rest as i64));
    }
    let sub = Subgroup::new(g, &gens)?;
    let want = (p as usize).pow(mult);
    if sub.order() != want {
        return Err(Error::SylowNotNormal { p, got: sub.order(), want });
    }
    Ok(sub)
}

/// N_ambient(h) = { a in ambient : a h a^(-1) = h }, by enumeration.
pub fn normalizer(ambient: &Subgroup, h: &Subgroup) -> Result<Subgroup> {
    assert_same_parent(ambient, h)?;
    if !h.is_subgroup_of(ambient) {
        return Err(Error::NotContained);
    }
    let els: Vec<ElemId> = ambient
        .elements()
        .iter()
        .copied()
        .filter(|&a| h.normalized_by(a))
        .collect();
    Ok(Subgroup::from_elements(ambient.parent(), els))
}

/// Least t >= 1 with x^t inside the subgroup; divides the element order.
fn coset_order(x: ElemId, sub: &Subgroup) -> usize {
    let g = sub.parent();
    let full = g.element_order(x);
    let mut divs: Vec<usize> = (1..=full).filter(|d| full.is_multiple_of(*d)).collect();
    divs.sort_unstable();
    for d in divs {
        if sub.contains(g.pow(x, d as i64)) {
            return d;
        }
    }
    unreachable!("x^order(x) is the identity");
}

/// Chief series: the lower central series refined into prime-order steps.
/// Every intermediate term sits between consecutive central-series terms and
/// is therefore normal in the whole group. Each refinement step adjoins the
/// least-id element whose coset order is prime.
pub fn chief_series(g: &GroupRef) -> Result<ChiefSeries> {
    let lcs = lower_central_series(g)?;
    let mut ascending = vec![Subgroup::trivial(g)];
    for pair in lcs.terms().windows(2).rev() {
        let upper = &pair[0];
        let mut current = ascending.last().expect("nonempty").clone();
        while current.order() < upper.order() {
            let pick = upper
                .elements()
                .iter()
                .copied()
                .find(|&x| !current.contains(x) && is_prime(coset_order(x, &current) as u32))
                .expect("some coset has prime order");
            let mut gens = current.generators().to_vec();
            gens.push(pick);
            current = Subgroup::new(g, &gens)?;
            ascending.push(current.clone());
        }
    }
    ascending.reverse();
    let terms = ascending;
    let whole = Subgroup::whole(g);
    let mut primes = Vec::new();
    for pair in terms.windows(2) {
        let ratio = pair[0].order() / pair[1].order();
        debug_assert!(is_prime(ratio as u32), "chief factor {ratio} is not prime");
        debug_assert!(pair[1].is_normal_in(&whole), "chief term escapes normality");
        primes.push(ratio as u32);
    }
    Ok(ChiefSeries { terms, primes })
}

/// For a p-power quotient K/B (B normal in K), the subgroup L between B and K
/// generated by B and the elements of coset order p: x with x^(p^a) in B gets
/// contributed as x^(p^(a-1)). Contributions are collected from every element
/// of K rather than a fixed generating set, so L/B provably contains every
/// order-p element of K/B regardless of how K was presented. When B contains
/// [K, K], L = K exactly when K/B is elementary abelian.
pub fn elementary_quotient_reducer(k: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    assert_same_parent(k, b)?;
    if !b.is_subgroup_of(k) {
        return Err(Error::NotContained);
    }
    if !b.is_normal_in(k) {
        return Err(Error::NotNormal);
    }
    let m = k.order() / b.order();
    if m == 1 {
        return Ok(k.clone());
    }
    let factors = factorize(m);
    if factors.len() != 1 {
        return Err(Error::BadQuotient(format!("quotient order {m} is not a prime power")));
    }
    let p = factors[0].0 as i64;
    let g = Rc::clone(k.parent());
    let mut gens = b.generators().to_vec();
    for &x in k.elements() {
        if b.contains(x) {
            continue;
        }
        let mut prev = x;
        let mut cur = g.pow(x, p);
        while !b.contains(cur) {
            prev = cur;
            cur = g.pow(cur, p);
        }
        gens.push(prev);
    }
    Subgroup::new(&g, &gens)
}

/// True when K/B is an elementary abelian p-group: [K, K] inside B and every
/// p-th power inside B.
pub fn is_elementary_abelian(k: &Subgroup, b: &Subgroup) -> Result<bool> {
    assert_same_parent(k, b)?;
    if !b.is_subgroup_of(k) {
        return Err(Error::NotContained);
    }
    if !b.is_normal_in(k) {
        return Err(Error::NotNormal);
    }
    let m = k.order() / b.order();
    if m == 1 {
        return Ok(true);
    }
    let factors = factorize(m);
    if factors.len() != 1 {
        return Ok(false);
    }
    let p = factors[0].0 as i64;
    let derived = commutator_subgroup(k, k)?;
    if !derived.is_subgroup_of(b) {
        return Ok(false);
    }
    let g = k.parent();
    Ok(k.elements().iter().all(|&x| b.contains(g.pow(x, p))))
}
