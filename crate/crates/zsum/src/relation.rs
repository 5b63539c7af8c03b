//! Linear dependencies among vectors, and their rewrite into the standard
//! form the halving step consumes.

use crate::error::{Error, Result};
use crate::signed::{Sign, SignedSubset, SignedSubsetSum, StandardRelation};
use crate::vec::SeqSlice;

/// Find a non-trivial coefficient map `c` with `sum_j c_j v_j = 0` among the
/// first vectors of `seq`, by forward elimination with first-nonzero-entry
/// pivoting. At most the first `n + 1` vectors are touched; a dependency is
/// guaranteed within them. Returned pairs are sorted by index and every
/// coefficient is nonzero; the largest participating index always carries
/// coefficient 1.
pub fn linear_relation(seq: SeqSlice<'_>) -> Result<Vec<(u32, u16)>> {
    let n = seq.dim();
    if seq.len() < n + 1 {
        return Err(Error::TooShort {
            required: n as u128 + 1,
            have: seq.len(),
        });
    }
    let m = seq.p().modops();

    // Each pivot row is fully reduced against the earlier ones, so its
    // recorded position is zero in every later row that passes through here.
    let mut pivots: Vec<(usize, Vec<u16>, Vec<u16>)> = Vec::with_capacity(n);

    for j in 0..=n {
        let mut row = seq.row(j).to_vec();
        let mut comb = vec![0u16; j + 1];
        comb[j] = 1;
        for (pos, prow, pcomb) in &pivots {
            let lead = row[*pos];
            if lead == 0 {
                continue;
            }
            let f = m.mul(lead, m.inv(prow[*pos]));
            for (r, &pv) in row.iter_mut().zip(prow.iter()) {
                *r = m.sub(*r, m.mul(f, pv));
            }
            for (c, &pc) in comb.iter_mut().zip(pcomb.iter()) {
                *c = m.sub(*c, m.mul(f, pc));
            }
        }
        match row.iter().position(|&c| c != 0) {
            None => {
                let rel: Vec<(u32, u16)> = comb
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (i as u32, c))
                    .collect();
                debug_assert!(!rel.is_empty());
                return Ok(rel);
            }
            Some(pos) => pivots.push((pos, row, comb)),
        }
    }
    // n + 1 vectors in an n-dimensional space cannot all be independent.
    Err(Error::SolverContract(
        "elimination found no dependency in n + 1 vectors".into(),
    ))
}

/// Substitute a coefficient map back into the sequence. Used by tests and
/// the halving step to confirm relations independently.
pub fn relation_holds(seq: SeqSlice<'_>, rel: &[(u32, u16)]) -> bool {
    let m = seq.p().modops();
    let mut acc = vec![0u16; seq.dim()];
    for &(i, c) in rel {
        if i as usize >= seq.len() {
            return false;
        }
        for (a, &v) in acc.iter_mut().zip(seq.row(i as usize)) {
            *a = m.add(*a, m.mul(c, v));
        }
    }
    !rel.is_empty() && acc.iter().all(|&c| c == 0)
}

/// Rewrite a relation into standard form with coefficient bound
/// `d = (p-1)/2`: a coefficient `c <= d` keeps its index with sign `+1`
/// under `c`; a larger one moves to `p - c` with sign `-1`. Odd moduli only.
pub fn to_standard(
    rel: &[(u32, u16)],
    seq: SeqSlice<'_>,
) -> Result<StandardRelation> {
    let p = seq.p();
    if p.get() == 2 {
        return Err(Error::EvenModulus(2));
    }
    let m = p.modops();
    let d = p.half() as usize;
    let mut entries: Vec<Vec<(u32, Sign)>> = vec![Vec::new(); d];
    for &(i, c) in rel {
        let c = m.reduce(c as u32);
        if c == 0 {
            continue;
        }
        if c <= d as u16 {
            entries[c as usize - 1].push((i, Sign::Plus));
        } else {
            entries[(p.get() - c) as usize - 1].push((i, Sign::Minus));
        }
    }
    let mut parts = Vec::with_capacity(d);
    for bucket in entries {
        let subset = SignedSubset::from_sorted(bucket)?;
        parts.push(SignedSubsetSum::compute(subset, seq)?);
    }
    Ok(StandardRelation::new(parts))
}
