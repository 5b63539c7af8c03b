//! Entry points of the deterministic searches: a signed zero sum from the
//! halving chain, and a plain zero-sum subsequence from collision doubling
//! on top of it. GF(2) short-circuits to plain elimination.

use crate::error::{Error, Result};
use crate::halving::{BaseSolver, HalvingSolver, RelationSolver};
use crate::relation::linear_relation;
use crate::schedule::{doubling_levels, required_length, LengthSchedule};
use crate::signed::{
    verify_certificate, verify_signed_zero, SignedSubset, ZeroSumCertificate,
};
use crate::vec::{PrimeModulus, SeqSlice, VecSequence};

/// The full halving chain for odd `p`: coefficient bounds run from
/// `(p-1)/2` down to 1, one solver per level.
pub fn signed_chain(p: PrimeModulus) -> Result<Box<dyn RelationSolver>> {
    let mut solver: Box<dyn RelationSolver> = Box::new(BaseSolver::new(p)?);
    for _ in 0..LengthSchedule::new(p).levels() {
        solver = Box::new(HalvingSolver::new(solver)?);
    }
    Ok(solver)
}

/// Find a non-empty signed subset of the first `required_signed_length(p, n)`
/// vectors whose signed sum is zero. Deterministic; odd moduli only.
pub fn find_signed_zero(seq: SeqSlice<'_>) -> Result<SignedSubset> {
    let chain = signed_chain(seq.p())?;
    find_signed_zero_with(chain.as_ref(), seq)
}

fn find_signed_zero_with(
    chain: &dyn RelationSolver,
    seq: SeqSlice<'_>,
) -> Result<SignedSubset> {
    let required = chain.input_length(seq.dim() as u128)?;
    if (seq.len() as u128) < required {
        return Err(Error::TooShort {
            required,
            have: seq.len(),
        });
    }
    let window = seq.window(0, required as usize);
    let rel = chain.solve(window)?;
    debug_assert_eq!(rel.bound(), 1);
    let subset = rel.into_vec().remove(0).into_parts().0;
    verify_signed_zero(window, &subset)?;
    Ok(subset)
}

/// A family of pairwise disjoint index sets sharing one subset sum.
struct Family {
    sets: Vec<Vec<u32>>,
    sum: Vec<u16>,
}

/// Turn signed zeros into a plain zero sum: each signed zero is a collision
/// of two subset sums; colliding the collision values doubles the number of
/// equal-sum sets per level until there are at least `p` of them, whose
/// union then sums to `p` times the common value, which is zero.
fn double_collisions_with(
    chain: &dyn RelationSolver,
    seq: SeqSlice<'_>,
) -> Result<ZeroSumCertificate> {
    let p = seq.p();
    let n = seq.dim();
    let m = p.modops();
    let levels = doubling_levels(p.get()) as usize;
    let s = chain.input_length(n as u128)? as usize;

    // Level 0: one signed zero per block of `s` vectors gives two disjoint
    // sets with equal sums inside that block.
    let block_count = seq.len() / s;
    let mut families: Vec<Family> = Vec::with_capacity(block_count);
    for b in 0..block_count {
        let off = b * s;
        let subset = find_signed_zero_with(chain, seq.window(off, s))?;
        let (plus, minus) = subset.split();
        let mut sum = vec![0u16; n];
        for &i in &plus {
            for (a, &v) in sum.iter_mut().zip(seq.row(off + i as usize)) {
                *a = m.add(*a, v);
            }
        }
        let lift = |ids: Vec<u32>| ids.into_iter().map(|i| i + off as u32).collect();
        families.push(Family {
            sets: vec![lift(plus), lift(minus)],
            sum,
        });
    }

    // Each later level runs the signed search on the common sums of `s`
    // consecutive families and splits every family set along the result.
    while families.len() > 1 {
        let mut next = Vec::with_capacity(families.len() / s);
        for group in families.chunks_exact(s) {
            let mut sums = VecSequence::empty(p, n)?;
            for fam in group {
                sums.push_row(&fam.sum)?;
            }
            let subset = find_signed_zero_with(chain, sums.as_slice())?;
            let (kp, km) = subset.split();
            let roles = group[0].sets.len();
            let mut sets = Vec::with_capacity(roles * 2);
            for side in [&kp, &km] {
                for r in 0..roles {
                    let mut merged = Vec::new();
                    for &k in side.iter() {
                        merged.extend_from_slice(&group[k as usize].sets[r]);
                    }
                    sets.push(merged);
                }
            }
            let mut sum = vec![0u16; n];
            for &k in &kp {
                for (a, &v) in sum.iter_mut().zip(&group[k as usize].sum) {
                    *a = m.add(*a, v);
                }
            }
            next.push(Family { sets, sum });
        }
        families = next;
    }

    let fam = &families[0];
    debug_assert_eq!(fam.sets.len(), 1 << levels);
    debug_assert!(1u32 << levels >= p.get() as u32);

    if fam.sets.iter().any(|set| set.is_empty()) {
        // An empty set shares the common sum, so that sum is zero and any
        // single non-empty set is already a certificate.
        if fam.sum.iter().any(|&c| c != 0) {
            return Err(Error::SolverContract(
                "empty collision set next to a nonzero common sum".into(),
            ));
        }
        let first = fam
            .sets
            .iter()
            .find(|set| !set.is_empty())
            .ok_or_else(|| Error::SolverContract("all collision sets empty".into()))?;
        return ZeroSumCertificate::from_unsorted(first.clone());
    }

    // No empty set: the first p sets are disjoint and each sums to the
    // common value, so their union sums to p times it, which vanishes.
    let mut union = Vec::new();
    for set in fam.sets.iter().take(p.get() as usize) {
        union.extend_from_slice(set);
    }
    ZeroSumCertificate::from_unsorted(union)
}

/// Find a non-empty subsequence of the first `required_length(p, n)` vectors
/// summing to zero. Deterministic. A zero vector in the consumed prefix is
/// returned as a singleton immediately; GF(2) reduces to elimination; odd
/// moduli go through collision doubling. The certificate is re-verified
/// before being returned.
pub fn find_zero_sum(seq: SeqSlice<'_>) -> Result<ZeroSumCertificate> {
    let p = seq.p();
    let required = required_length(p, seq.dim())?;
    if (seq.len() as u128) < required {
        return Err(Error::TooShort {
            required,
            have: seq.len(),
        });
    }
    let window = seq.window(0, required as usize);
    let mut cert = None;
    for i in 0..window.len() {
        if window.row(i).iter().all(|&c| c == 0) {
            cert = Some(ZeroSumCertificate::new(vec![i as u32])?);
            break;
        }
    }
    let cert = match cert {
        Some(c) => c,
        None if p.get() == 2 => {
            let rel = linear_relation(window)?;
            ZeroSumCertificate::new(rel.into_iter().map(|(i, _)| i).collect())?
        }
        None => {
            let chain = signed_chain(p)?;
            double_collisions_with(chain.as_ref(), window)?
        }
    };
    verify_certificate(window, &cert)?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::required_signed_length;
    use crate::signed::StandardRelation;
    use proptest::prelude::*;
    use std::cell::Cell;

    fn pm(p: u16) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn random_seq(p: u16, n: usize, len: usize, mut state: u64) -> VecSequence {
        let mut seq = VecSequence::empty(pm(p), n).unwrap();
        for _ in 0..len {
            let mut row = Vec::with_capacity(n);
            for _ in 0..n {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                row.push(((state >> 33) % p as u64) as u16);
            }
            seq.push_row(&row).unwrap();
        }
        seq
    }

    #[test]
    fn signed_zero_on_fixed_input() {
        let seq = VecSequence::from_rows(pm(3), 1, &[vec![1], vec![1]]).unwrap();
        let subset = find_signed_zero(seq.as_slice()).unwrap();
        assert!(verify_signed_zero(seq.as_slice(), &subset).is_ok());
        let entries: Vec<_> = subset.iter().collect();
        assert_eq!(
            entries,
            vec![(0, crate::signed::Sign::Minus), (1, crate::signed::Sign::Plus)]
        );
    }

    #[test]
    fn signed_zero_rejects_even_and_short() {
        let seq = VecSequence::from_rows(pm(2), 1, &[vec![1], vec![1]]).unwrap();
        assert!(find_signed_zero(seq.as_slice()).is_err());
        let seq = VecSequence::from_rows(pm(5), 2, &[vec![1, 2]]).unwrap();
        match find_signed_zero(seq.as_slice()) {
            Err(Error::TooShort { required, have }) => {
                assert_eq!(required, 9);
                assert_eq!(have, 1);
            }
            other => panic!("expected TooShort, got {other:?}"),
        }
    }

    #[test]
    fn zero_sum_all_ones_p3() {
        let seq =
            VecSequence::from_rows(pm(3), 1, &[vec![1], vec![1], vec![1], vec![1]]).unwrap();
        let cert = find_zero_sum(seq.as_slice()).unwrap();
        assert!(verify_certificate(seq.as_slice(), &cert).is_ok());
        // Hand-traced run: the final family has no empty set and the first
        // three sets are {3}, {2}, {1}.
        assert_eq!(cert.indices(), &[1, 2, 3]);
    }

    #[test]
    fn zero_sum_with_empty_collision_set() {
        // Block {2, 3} sums to zero on its own, so its minus side is empty
        // and the common sum collapses to zero at the top level.
        let seq =
            VecSequence::from_rows(pm(3), 1, &[vec![1], vec![1], vec![1], vec![2]]).unwrap();
        let cert = find_zero_sum(seq.as_slice()).unwrap();
        assert!(verify_certificate(seq.as_slice(), &cert).is_ok());
        assert_eq!(cert.indices(), &[2, 3]);
    }

    #[test]
    fn zero_vector_early_exit() {
        let seq =
            VecSequence::from_rows(pm(3), 1, &[vec![1], vec![2], vec![0], vec![2]]).unwrap();
        let cert = find_zero_sum(seq.as_slice()).unwrap();
        assert_eq!(cert.indices(), &[2]);
    }

    #[test]
    fn gf2_uses_elimination() {
        let seq = VecSequence::from_rows(
            pm(2),
            3,
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]],
        )
        .unwrap();
        let cert = find_zero_sum(seq.as_slice()).unwrap();
        assert_eq!(cert.indices(), &[0, 1, 2, 3]);
        assert!(verify_certificate(seq.as_slice(), &cert).is_ok());
    }

    #[test]
    fn too_short_is_rejected() {
        let seq = VecSequence::from_rows(pm(3), 1, &[vec![1], vec![1], vec![1]]).unwrap();
        match find_zero_sum(seq.as_slice()) {
            Err(Error::TooShort { required, have }) => {
                assert_eq!(required, 4);
                assert_eq!(have, 3);
            }
            other => panic!("expected TooShort, got {other:?}"),
        }
    }

    #[test]
    fn deterministic_across_runs() {
        let seq = random_seq(5, 1, 64, 0xabcdef);
        let a = find_zero_sum(seq.as_slice()).unwrap();
        let b = find_zero_sum(seq.as_slice()).unwrap();
        assert_eq!(a, b);
    }

    /// Forwarding solver that counts `solve` invocations.
    struct Counting<'a> {
        inner: &'a dyn RelationSolver,
        calls: Cell<usize>,
    }

    impl RelationSolver for Counting<'_> {
        fn modulus(&self) -> PrimeModulus {
            self.inner.modulus()
        }
        fn bound(&self) -> usize {
            self.inner.bound()
        }
        fn input_length(&self, dim: u128) -> Result<u128> {
            self.inner.input_length(dim)
        }
        fn solve(&self, seq: SeqSlice<'_>) -> Result<StandardRelation> {
            self.calls.set(self.calls.get() + 1);
            self.inner.solve(seq)
        }
    }

    #[test]
    fn collision_doubling_call_counts() {
        // Top-level signed searches per run: s^(l-1) + ... + s + 1 < s^l.
        for (p, n, expected) in [(3u16, 1usize, 3usize), (5, 1, 21)] {
            let prime = pm(p);
            let chain = signed_chain(prime).unwrap();
            let s = chain.input_length(n as u128).unwrap();
            let l = doubling_levels(p);
            let len = s.pow(l) as usize;
            let seq = random_seq(p, n, len, 42 + p as u64);
            let counter = Counting {
                inner: chain.as_ref(),
                calls: Cell::new(0),
            };
            let cert = double_collisions_with(&counter, seq.as_slice()).unwrap();
            assert!(verify_certificate(seq.as_slice(), &cert).is_ok());
            // The counter sits atop the whole chain, so each signed search
            // counts once.
            assert_eq!(counter.calls.get(), expected, "p={p}");
            assert!((counter.calls.get() as u128) < (s.pow(l) as u128), "p={p}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn signed_zero_verifies_on_random_input(
            p in prop::sample::select(vec![3u16, 5, 7]),
            n in 1usize..=2,
            state in any::<u64>(),
        ) {
            let len = required_signed_length(pm(p), n).unwrap() as usize;
            let seq = random_seq(p, n, len, state);
            let subset = find_signed_zero(seq.as_slice()).unwrap();
            prop_assert!(verify_signed_zero(seq.as_slice(), &subset).is_ok());
        }

        #[test]
        fn zero_sum_verifies_on_random_input(
            p in prop::sample::select(vec![2u16, 3, 5]),
            n in 1usize..=2,
            state in any::<u64>(),
        ) {
            let len = required_length(pm(p), n).unwrap() as usize;
            let seq = random_seq(p, n, len, state);
            let cert = find_zero_sum(seq.as_slice()).unwrap();
            prop_assert!(verify_certificate(seq.as_slice(), &cert).is_ok());
        }

        #[test]
        fn zero_sum_handles_excess_input(
            state in any::<u64>(),
        ) {
            // Extra vectors beyond the required prefix are ignored.
            let seq = random_seq(3, 1, 10, state);
            let cert = find_zero_sum(seq.as_slice()).unwrap();
            prop_assert!(verify_certificate(seq.as_slice(), &cert).is_ok());
            prop_assert!(cert.indices().iter().all(|&i| i < 4));
        }
    }
}
