//! Coefficient-halving step: combine relations of bound `d` on blocks of a
//! sequence into one relation of bound `floor(d/2)` on the whole sequence.

use crate::error::{Error, Result};
use crate::relation::{linear_relation, to_standard};
use crate::signed::{Sign, SignedSubset, SignedSubsetSum, StandardRelation};
use crate::vec::{PrimeModulus, SeqSlice, VecSequence, ZpVec};

/// A deterministic producer of standard relations with a fixed coefficient
/// bound. `solve` consumes exactly `input_length(dim)` vectors.
pub trait RelationSolver {
    fn modulus(&self) -> PrimeModulus;
    /// Largest coefficient appearing in produced relations.
    fn bound(&self) -> usize;
    /// Exact number of input vectors consumed at dimension `dim`.
    fn input_length(&self, dim: u128) -> Result<u128>;
    fn solve(&self, seq: SeqSlice<'_>) -> Result<StandardRelation>;
}

/// Elimination-based solver: bound `(p-1)/2` from `dim + 1` vectors.
pub struct BaseSolver {
    p: PrimeModulus,
}

impl BaseSolver {
    pub fn new(p: PrimeModulus) -> Result<Self> {
        if p.get() == 2 {
            return Err(Error::EvenModulus(2));
        }
        Ok(BaseSolver { p })
    }
}

impl RelationSolver for BaseSolver {
    fn modulus(&self) -> PrimeModulus {
        self.p
    }

    fn bound(&self) -> usize {
        self.p.half() as usize
    }

    fn input_length(&self, dim: u128) -> Result<u128> {
        dim.checked_add(1).ok_or(Error::LengthOverflow(dim))
    }

    fn solve(&self, seq: SeqSlice<'_>) -> Result<StandardRelation> {
        let rel = linear_relation(seq)?;
        to_standard(&rel, seq)
    }
}

/// Wraps an inner solver of bound `d >= 2` into one of bound `floor(d/2)`.
pub struct HalvingSolver {
    inner: Box<dyn RelationSolver>,
}

impl HalvingSolver {
    pub fn new(inner: Box<dyn RelationSolver>) -> Result<Self> {
        if inner.bound() < 2 {
            return Err(Error::SolverContract(
                "halving needs an inner coefficient bound of at least 2".into(),
            ));
        }
        Ok(HalvingSolver { inner })
    }
}

impl RelationSolver for HalvingSolver {
    fn modulus(&self) -> PrimeModulus {
        self.inner.modulus()
    }

    fn bound(&self) -> usize {
        self.inner.bound() / 2
    }

    fn input_length(&self, dim: u128) -> Result<u128> {
        let d = self.inner.bound();
        let high = (d - d / 2) as u128;
        let inner_dim = high
            .checked_mul(dim)
            .ok_or(Error::LengthOverflow(dim))?;
        let blocks = self.inner.input_length(inner_dim)?;
        self.inner
            .input_length(dim)?
            .checked_mul(blocks)
            .ok_or(Error::LengthOverflow(dim))
    }

    fn solve(&self, seq: SeqSlice<'_>) -> Result<StandardRelation> {
        halve(self.inner.as_ref(), seq)
    }
}

fn contract(stage: &str, err: Error) -> Error {
    Error::SolverContract(format!("{stage}: {err}"))
}

/// One halving step. Splits the first `input_length` vectors into blocks,
/// solves each block with `inner`, solves once more across per-block
/// summaries, and recombines into a relation with half the coefficient
/// bound. Inner outputs are re-verified; a failure is a contract error.
pub fn halve(inner: &dyn RelationSolver, seq: SeqSlice<'_>) -> Result<StandardRelation> {
    let d = inner.bound();
    if d < 2 {
        return Err(Error::SolverContract(
            "halving needs an inner coefficient bound of at least 2".into(),
        ));
    }
    let p = seq.p();
    let n = seq.dim();
    let half = d / 2;
    let high = d - half;

    let block_len_w = inner.input_length(n as u128)?;
    let block_count_w = inner.input_length((high * n) as u128)?;
    let required = block_len_w
        .checked_mul(block_count_w)
        .ok_or(Error::LengthOverflow(n as u128))?;
    if (seq.len() as u128) < required {
        return Err(Error::TooShort {
            required,
            have: seq.len(),
        });
    }
    let block_len = block_len_w as usize;
    let block_count = block_count_w as usize;

    // Per-block relations, verified locally then lifted to global indices.
    let mut block_rels = Vec::with_capacity(block_count);
    for k in 0..block_count {
        let window = seq.window(k * block_len, block_len);
        let rel = inner.solve(window)?;
        if rel.bound() != d {
            return Err(Error::SolverContract(format!(
                "inner solver returned bound {} instead of {d}",
                rel.bound()
            )));
        }
        rel.verify(window)
            .map_err(|e| contract("block relation", e))?;
        block_rels.push(rel.shifted((k * block_len) as u32));
    }

    // Summary vector of block k: the high-coefficient part sums, stacked.
    let mut summary = VecSequence::empty(p, high * n)?;
    for rel in &block_rels {
        let mut row = Vec::with_capacity(high * n);
        for j in half..d {
            row.extend_from_slice(rel.parts()[j].value().coords());
        }
        summary.push_row(&row)?;
    }
    let outer = inner.solve(summary.as_slice())?;
    if outer.bound() != d {
        return Err(Error::SolverContract(format!(
            "inner solver returned bound {} instead of {d}",
            outer.bound()
        )));
    }
    outer
        .verify(summary.as_slice())
        .map_err(|e| contract("summary relation", e))?;

    // w[i][j]: block part j joined over the outer part i, signs composed.
    // Supports are pairwise disjoint across all (i, j) by construction.
    let mut w: Vec<Vec<SignedSubsetSum>> = Vec::with_capacity(d);
    for i in 0..d {
        let picked = outer.parts()[i].subset();
        let mut row = Vec::with_capacity(d);
        for j in 0..d {
            let pieces: Vec<(Sign, &SignedSubset)> = picked
                .iter()
                .map(|(k, s)| (s, block_rels[k as usize].parts()[j].subset()))
                .collect();
            let subset = SignedSubset::merge_disjoint(pieces)
                .map_err(|e| contract("join of block parts", e))?;
            let joined = SignedSubsetSum::compute(subset, seq)?;
            let mut expect = ZpVec::zero(p, n)?;
            for (k, s) in picked.iter() {
                let v = block_rels[k as usize].parts()[j].value();
                expect = match s {
                    Sign::Plus => expect.add(v)?,
                    Sign::Minus => expect.add(&v.negate())?,
                };
            }
            if expect != *joined.value() {
                return Err(Error::SolverContract(
                    "joined part sum disagrees with stored block sums".into(),
                ));
            }
            row.push(joined);
        }
        w.push(row);
    }

    // Cross terms bucketed by the coefficient they carry in the combined
    // identity; the two i = j > half diagonals cancel out of it entirely.
    let mut buckets: Vec<Vec<(Sign, &SignedSubset)>> = vec![Vec::new(); half];
    for (i, wrow) in w.iter().enumerate() {
        let ci = i + 1;
        for (j, wij) in wrow.iter().enumerate() {
            let cj = j + 1;
            let (coeff, sign) = if ci <= half && cj > half {
                (ci, Sign::Plus)
            } else if ci > half && cj <= half {
                (cj, Sign::Minus)
            } else if ci > half && cj > half && ci != cj {
                if ci > cj {
                    (ci - cj, Sign::Plus)
                } else {
                    (cj - ci, Sign::Minus)
                }
            } else {
                continue;
            };
            buckets[coeff - 1].push((sign, wij.subset()));
        }
    }
    let mut parts = Vec::with_capacity(half);
    let mut any = false;
    for bucket in buckets {
        let subset = SignedSubset::merge_disjoint(bucket)
            .map_err(|e| contract("bucket join", e))?;
        any |= !subset.is_empty();
        parts.push(SignedSubsetSum::compute(subset, seq)?);
    }
    if any {
        let rel = StandardRelation::new(parts);
        rel.verify(seq).map_err(|e| contract("combined relation", e))?;
        return Ok(rel);
    }

    // Every cross term empty: a non-empty high diagonal must sum to zero on
    // its own and stands alone under coefficient 1.
    for (i, wrow) in w.iter().enumerate() {
        if i < half || wrow[i].subset().is_empty() {
            continue;
        }
        if !wrow[i].value().is_zero() {
            return Err(Error::SolverContract(
                "isolated diagonal part has a nonzero sum".into(),
            ));
        }
        let mut parts = vec![SignedSubsetSum::empty(seq)?; half];
        parts[0] = wrow[i].clone();
        let rel = StandardRelation::new(parts);
        rel.verify(seq).map_err(|e| contract("diagonal relation", e))?;
        return Ok(rel);
    }

    // Everything with a high row or column is empty, so the low block of w
    // already satisfies the halved relation on its own.
    let mut parts = Vec::with_capacity(half);
    for j in 0..half {
        let pieces: Vec<(Sign, &SignedSubset)> = w
            .iter()
            .take(half)
            .map(|wrow| (Sign::Plus, wrow[j].subset()))
            .collect();
        let subset = SignedSubset::merge_disjoint(pieces)
            .map_err(|e| contract("low block join", e))?;
        parts.push(SignedSubsetSum::compute(subset, seq)?);
    }
    let rel = StandardRelation::new(parts);
    rel.verify(seq).map_err(|e| contract("low block relation", e))?;
    Ok(rel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::{required_signed_length, LengthSchedule};
    use crate::vec::VecSequence;
    use proptest::prelude::*;
    use std::cell::RefCell;

    fn pm(p: u16) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn chain(p: u16) -> Box<dyn RelationSolver> {
        let p = pm(p);
        let mut solver: Box<dyn RelationSolver> = Box::new(BaseSolver::new(p).unwrap());
        for _ in 0..LengthSchedule::new(p).levels() {
            solver = Box::new(HalvingSolver::new(solver).unwrap());
        }
        solver
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
    fn chain_length_matches_schedule() {
        for p in [3u16, 5, 7, 11, 13] {
            let solver = chain(p);
            for n in 1..=8usize {
                assert_eq!(
                    solver.input_length(n as u128).unwrap(),
                    required_signed_length(pm(p), n).unwrap(),
                    "p={p} n={n}"
                );
            }
        }
    }

    #[test]
    fn chain_ends_at_bound_one() {
        for p in [3u16, 5, 7, 11, 13] {
            assert_eq!(chain(p).bound(), 1, "p={p}");
        }
    }

    #[test]
    fn single_halving_step_verifies() {
        // p = 5: bound 2 from elimination, one step down to bound 1.
        let solver = chain(5);
        for n in 1..=3usize {
            let len = solver.input_length(n as u128).unwrap() as usize;
            let seq = random_seq(5, n, len, 0xfeed + n as u64);
            let rel = solver.solve(seq.as_slice()).unwrap();
            assert_eq!(rel.bound(), 1);
            rel.verify(seq.as_slice()).unwrap();
        }
    }

    #[test]
    fn two_halving_steps_verify() {
        // p = 11: bounds run 5 -> 2 -> 1.
        let solver = chain(11);
        let len = solver.input_length(1).unwrap() as usize;
        assert_eq!(len, 64);
        let seq = random_seq(11, 1, len, 99);
        let rel = solver.solve(seq.as_slice()).unwrap();
        assert_eq!(rel.bound(), 1);
        rel.verify(seq.as_slice()).unwrap();
    }

    #[test]
    fn all_zero_input_takes_degenerate_paths() {
        let solver = chain(11);
        let len = solver.input_length(1).unwrap() as usize;
        let seq = VecSequence::from_rows(pm(11), 1, &vec![vec![0u16]; len]).unwrap();
        let rel = solver.solve(seq.as_slice()).unwrap();
        rel.verify(seq.as_slice()).unwrap();
        assert!(!rel.parts()[0].subset().is_empty());
    }

    #[test]
    fn too_short_input_is_rejected() {
        let solver = chain(5);
        let seq = random_seq(5, 2, 4, 7);
        match solver.solve(seq.as_slice()) {
            Err(Error::TooShort { required, have }) => {
                assert_eq!(required, 9);
                assert_eq!(have, 4);
            }
            other => panic!("expected TooShort, got {other:?}"),
        }
    }

    /// Scripted solver that replays canned relations, for steering `halve`
    /// into branches the elimination base never reaches on its own.
    struct Scripted {
        p: PrimeModulus,
        bound: usize,
        outputs: RefCell<Vec<StandardRelation>>,
    }

    impl RelationSolver for Scripted {
        fn modulus(&self) -> PrimeModulus {
            self.p
        }
        fn bound(&self) -> usize {
            self.bound
        }
        fn input_length(&self, _dim: u128) -> Result<u128> {
            Ok(1)
        }
        fn solve(&self, _seq: SeqSlice<'_>) -> Result<StandardRelation> {
            Ok(self.outputs.borrow_mut().remove(0))
        }
    }

    fn one_part_relation(bound: usize, part: usize, seq: SeqSlice<'_>) -> StandardRelation {
        let mut parts = vec![SignedSubsetSum::empty(seq).unwrap(); bound];
        parts[part] = SignedSubsetSum::compute(SignedSubset::singleton(0, Sign::Plus), seq)
            .unwrap();
        StandardRelation::new(parts)
    }

    #[test]
    fn isolated_diagonal_branch() {
        // Bound 5, one block of one zero vector. The block relation uses
        // only coefficient 4 and the outer relation only coefficient 4, so
        // every bucket is empty and w[3][3] = {+0} carries the answer.
        let p = pm(11);
        let seq = VecSequence::from_rows(p, 1, &[vec![0u16]]).unwrap();
        let zero3 = VecSequence::from_rows(p, 3, &[vec![0, 0, 0]]).unwrap();
        let block = one_part_relation(5, 3, seq.as_slice());
        let outer = one_part_relation(5, 3, zero3.as_slice());
        let mock = Scripted {
            p,
            bound: 5,
            outputs: RefCell::new(vec![block, outer]),
        };
        let rel = halve(&mock, seq.as_slice()).unwrap();
        assert_eq!(rel.bound(), 2);
        let entries: Vec<_> = rel.parts()[0].subset().iter().collect();
        assert_eq!(entries, vec![(0, Sign::Plus)]);
        assert!(rel.parts()[1].subset().is_empty());
        rel.verify(seq.as_slice()).unwrap();
    }

    #[test]
    fn low_block_fallback_branch() {
        // Bound 4, both scripted relations live entirely in coefficient 1,
        // so buckets and high diagonals are all empty and the low block of
        // w is returned as-is.
        let p = pm(11);
        let seq = VecSequence::from_rows(p, 1, &[vec![0u16]]).unwrap();
        let zero2 = VecSequence::from_rows(p, 2, &[vec![0, 0]]).unwrap();
        let block = one_part_relation(4, 0, seq.as_slice());
        let outer = one_part_relation(4, 0, zero2.as_slice());
        let mock = Scripted {
            p,
            bound: 4,
            outputs: RefCell::new(vec![block, outer]),
        };
        let rel = halve(&mock, seq.as_slice()).unwrap();
        assert_eq!(rel.bound(), 2);
        let entries: Vec<_> = rel.parts()[0].subset().iter().collect();
        assert_eq!(entries, vec![(0, Sign::Plus)]);
        rel.verify(seq.as_slice()).unwrap();
    }

    #[test]
    fn lying_inner_solver_is_a_contract_error() {
        // The scripted block relation claims 1 * v0 = 0 over a nonzero v0.
        let p = pm(11);
        let seq = VecSequence::from_rows(p, 1, &[vec![3u16]]).unwrap();
        let block = one_part_relation(4, 0, seq.as_slice());
        let mock = Scripted {
            p,
            bound: 4,
            outputs: RefCell::new(vec![block]),
        };
        match halve(&mock, seq.as_slice()) {
            Err(Error::SolverContract(msg)) => {
                assert!(msg.contains("block relation"), "{msg}");
            }
            other => panic!("expected SolverContract, got {other:?}"),
        }
    }

    #[test]
    fn wrong_bound_from_inner_is_a_contract_error() {
        let p = pm(11);
        let seq = VecSequence::from_rows(p, 1, &[vec![0u16]]).unwrap();
        let block = one_part_relation(3, 0, seq.as_slice());
        let mock = Scripted {
            p,
            bound: 4,
            outputs: RefCell::new(vec![block]),
        };
        match halve(&mock, seq.as_slice()) {
            Err(Error::SolverContract(msg)) => assert!(msg.contains("bound"), "{msg}"),
            other => panic!("expected SolverContract, got {other:?}"),
        }
    }

    #[test]
    fn base_solver_rejects_p2_and_bound_one_rejects_halving() {
        assert!(BaseSolver::new(pm(2)).is_err());
        let base = Box::new(BaseSolver::new(pm(3)).unwrap());
        assert_eq!(base.bound(), 1);
        assert!(HalvingSolver::new(base).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn full_chains_verify_on_random_input(
            p in prop::sample::select(vec![3u16, 5, 7]),
            n in 1usize..=2,
            state in any::<u64>(),
        ) {
            let solver = chain(p);
            let len = solver.input_length(n as u128).unwrap() as usize;
            let seq = random_seq(p, n, len, state);
            let rel = solver.solve(seq.as_slice()).unwrap();
            prop_assert_eq!(rel.bound(), 1);
            prop_assert!(rel.verify(seq.as_slice()).is_ok());
            prop_assert!(!rel.parts()[0].subset().is_empty());
        }
    }
}
