//! Signed index subsets, their sums, and the certificate types the solvers
//! emit. Verification here is independent of how a certificate was found: it
//! recomputes sums straight from the sequence.

use std::fmt;

use crate::error::{Error, Result};
use crate::vec::{SeqSlice, ZpVec};

#[derive(Copy, Clone, PartialEq, Eq, Debug, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    #[inline]
    pub fn compose(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// A map from input indices to signs, kept as a sorted list of pairs.
/// Indices are positions in the input sequence (zero based).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SignedSubset {
    entries: Vec<(u32, Sign)>,
}

impl SignedSubset {
    pub fn empty() -> Self {
        SignedSubset::default()
    }

    pub fn singleton(index: u32, sign: Sign) -> Self {
        SignedSubset {
            entries: vec![(index, sign)],
        }
    }

    /// Build from pairs that must be strictly increasing in index.
    pub fn from_sorted(entries: Vec<(u32, Sign)>) -> Result<Self> {
        for w in entries.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::BadCertificate(format!(
                    "indices not strictly increasing at {}",
                    w[1].0
                )));
            }
        }
        Ok(SignedSubset { entries })
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, Sign)> + '_ {
        self.entries.iter().copied()
    }

    pub fn sign_of(&self, index: u32) -> Option<Sign> {
        self.entries
            .binary_search_by_key(&index, |e| e.0)
            .ok()
            .map(|i| self.entries[i].1)
    }

    /// Indices carrying `Plus`, then indices carrying `Minus`.
    pub fn split(&self) -> (Vec<u32>, Vec<u32>) {
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for &(i, s) in &self.entries {
            match s {
                Sign::Plus => plus.push(i),
                Sign::Minus => minus.push(i),
            }
        }
        (plus, minus)
    }

    /// Shift every index by `offset`; used to lift block-local results into
    /// the enclosing sequence.
    pub fn shifted(&self, offset: u32) -> SignedSubset {
        SignedSubset {
            entries: self.entries.iter().map(|&(i, s)| (i + offset, s)).collect(),
        }
    }

    pub fn negated(&self) -> SignedSubset {
        SignedSubset {
            entries: self.entries.iter().map(|&(i, s)| (i, s.flip())).collect(),
        }
    }

    /// Union of subsets with pairwise disjoint supports, each multiplied by
    /// an outer sign. Duplicate indices are a hard error: the callers build
    /// these unions from constructions whose supports are disjoint by design,
    /// so a collision means a bug upstream.
    pub fn merge_disjoint<'a>(
        pieces: impl IntoIterator<Item = (Sign, &'a SignedSubset)>,
    ) -> Result<SignedSubset> {
        let mut entries: Vec<(u32, Sign)> = Vec::new();
        for (outer, piece) in pieces {
            entries.extend(piece.entries.iter().map(|&(i, s)| (i, s.compose(outer))));
        }
        entries.sort_unstable_by_key(|e| e.0);
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::SolverContract(format!(
                    "support collision at index {}",
                    w[0].0
                )));
            }
        }
        Ok(SignedSubset { entries })
    }

    /// The signed sum over `seq`, as raw reduced coordinates.
    pub fn sum_coords(&self, seq: SeqSlice<'_>) -> Vec<u16> {
        let m = seq.p().modops();
        let mut acc = vec![0u16; seq.dim()];
        for &(i, s) in &self.entries {
            let row = seq.row(i as usize);
            match s {
                Sign::Plus => {
                    for (a, &b) in acc.iter_mut().zip(row) {
                        *a = m.add(*a, b);
                    }
                }
                Sign::Minus => {
                    for (a, &b) in acc.iter_mut().zip(row) {
                        *a = m.sub(*a, b);
                    }
                }
            }
        }
        acc
    }

    pub fn sum(&self, seq: SeqSlice<'_>) -> Result<ZpVec> {
        ZpVec::new(seq.p(), self.sum_coords(seq))
    }
}

impl fmt::Debug for SignedSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (i, s)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            match s {
                Sign::Plus => write!(f, "+{i}")?,
                Sign::Minus => write!(f, "-{i}")?,
            }
        }
        write!(f, "}}")
    }
}

/// Check that `subset` is non-empty and that its signed sum over `seq`
/// vanishes. Plain recomputation, shared by tests and the command line.
pub fn verify_signed_zero(seq: SeqSlice<'_>, subset: &SignedSubset) -> Result<()> {
    if subset.is_empty() {
        return Err(Error::BadCertificate("empty signed subset".into()));
    }
    if let Some((last, _)) = subset.entries.last() {
        if *last as usize >= seq.len() {
            return Err(Error::BadCertificate(format!(
                "index {last} out of range for sequence of length {}",
                seq.len()
            )));
        }
    }
    let s = subset.sum_coords(seq);
    if s.iter().any(|&c| c != 0) {
        return Err(Error::BadCertificate(format!(
            "signed sum is {s:?}, not zero"
        )));
    }
    Ok(())
}

/// A signed subset together with its sum over a fixed sequence. The sum is
/// computed at construction, so the two fields can never disagree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedSubsetSum {
    subset: SignedSubset,
    value: ZpVec,
}

impl SignedSubsetSum {
    pub fn compute(subset: SignedSubset, seq: SeqSlice<'_>) -> Result<Self> {
        let value = subset.sum(seq)?;
        Ok(SignedSubsetSum { subset, value })
    }

    pub fn empty(seq: SeqSlice<'_>) -> Result<Self> {
        SignedSubsetSum::compute(SignedSubset::empty(), seq)
    }

    #[inline]
    pub fn subset(&self) -> &SignedSubset {
        &self.subset
    }

    #[inline]
    pub fn value(&self) -> &ZpVec {
        &self.value
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.subset.is_empty()
    }

    pub fn into_parts(self) -> (SignedSubset, ZpVec) {
        (self.subset, self.value)
    }

    /// Recompute the sum from `seq` and compare with the stored value.
    pub fn verify(&self, seq: SeqSlice<'_>) -> Result<()> {
        let fresh = self.subset.sum_coords(seq);
        if fresh != self.value.coords() {
            return Err(Error::SolverContract(
                "stored subset sum disagrees with recomputation".into(),
            ));
        }
        Ok(())
    }
}

/// Subset sums `v_1, ..., v_d` with pairwise disjoint supports, not all
/// empty, satisfying `sum_i i * v_i = 0`. `parts[k]` carries coefficient
/// `k + 1`.
#[derive(Clone, Debug)]
pub struct StandardRelation {
    parts: Vec<SignedSubsetSum>,
}

impl StandardRelation {
    pub fn new(parts: Vec<SignedSubsetSum>) -> Self {
        StandardRelation { parts }
    }

    /// The coefficient bound `d`.
    #[inline]
    pub fn bound(&self) -> usize {
        self.parts.len()
    }

    #[inline]
    pub fn parts(&self) -> &[SignedSubsetSum] {
        &self.parts
    }

    pub fn into_vec(self) -> Vec<SignedSubsetSum> {
        self.parts
    }

    /// Lift block-local indices by `offset`.
    pub fn shifted(&self, offset: u32) -> StandardRelation {
        StandardRelation {
            parts: self
                .parts
                .iter()
                .map(|part| SignedSubsetSum {
                    subset: part.subset.shifted(offset),
                    value: part.value.clone(),
                })
                .collect(),
        }
    }

    /// Full contract check against the sequence the relation talks about:
    /// stored sums correct, supports pairwise disjoint, not all parts empty,
    /// and the weighted sum of the part values zero.
    pub fn verify(&self, seq: SeqSlice<'_>) -> Result<()> {
        if self.parts.is_empty() {
            return Err(Error::SolverContract("relation with no parts".into()));
        }
        let m = seq.p().modops();
        let mut weighted = vec![0u16; seq.dim()];
        let mut any = false;
        let mut all_indices: Vec<u32> = Vec::new();
        for (k, part) in self.parts.iter().enumerate() {
            part.verify(seq)?;
            any |= !part.is_empty();
            all_indices.extend(part.subset.iter().map(|(i, _)| i));
            let coeff = m.reduce(k as u32 + 1);
            for (acc, &v) in weighted.iter_mut().zip(part.value.coords()) {
                *acc = m.add(*acc, m.mul(coeff, v));
            }
        }
        if !any {
            return Err(Error::SolverContract("all relation parts empty".into()));
        }
        all_indices.sort_unstable();
        for w in all_indices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::SolverContract(format!(
                    "parts share index {}",
                    w[0]
                )));
            }
        }
        if weighted.iter().any(|&c| c != 0) {
            return Err(Error::SolverContract(format!(
                "weighted part sum is {weighted:?}, not zero"
            )));
        }
        Ok(())
    }
}

/// A plain (unsigned) zero-sum witness: strictly increasing indices whose
/// vectors sum to zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZeroSumCertificate {
    indices: Vec<u32>,
}

impl ZeroSumCertificate {
    pub fn new(indices: Vec<u32>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::BadCertificate("no indices".into()));
        }
        for w in indices.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::BadCertificate(format!(
                    "indices not strictly increasing at {}",
                    w[1]
                )));
            }
        }
        Ok(ZeroSumCertificate { indices })
    }

    pub fn from_unsorted(mut indices: Vec<u32>) -> Result<Self> {
        indices.sort_unstable();
        ZeroSumCertificate::new(indices)
    }

    #[inline]
    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Independent checker for unsigned certificates: indices in range, strictly
/// increasing (guaranteed by the type), and summing to zero over `seq`.
pub fn verify_certificate(seq: SeqSlice<'_>, cert: &ZeroSumCertificate) -> Result<()> {
    let m = seq.p().modops();
    let mut acc = vec![0u16; seq.dim()];
    for &i in cert.indices() {
        if i as usize >= seq.len() {
            return Err(Error::BadCertificate(format!(
                "index {i} out of range for sequence of length {}",
                seq.len()
            )));
        }
        for (a, &b) in acc.iter_mut().zip(seq.row(i as usize)) {
            *a = m.add(*a, b);
        }
    }
    if acc.iter().any(|&c| c != 0) {
        return Err(Error::BadCertificate(format!("sum is {acc:?}, not zero")));
    }
    Ok(())
}
