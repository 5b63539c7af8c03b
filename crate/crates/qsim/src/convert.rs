//! Copy-consuming conversion of purifications across a central layer.
//!
//! Given purifications of `rho(G, H)` and a central elementary abelian
//! subgroup `L` with labels `Z_p^n`, the conversion Fourier-expands `S`
//! copies, adjoins a fresh uniform register over `G`, and right-multiplies
//! the copies picked by a zero-sum selector by the inverse of the fresh
//! register's value. Because the picked labels sum to zero, every residual
//! phase `omega^{<y_j, x>}` cancels for `x` in `L`, so the conditional junk
//! depends only on the coset `x L H`: the result purifies `rho(G, L H)`,
//! and pushing by `L` lands on `rho(G/L, HL/L)` using `S = 1 + n(p-1)`
//! copies. Iterating down the lower central series reaches the
//! abelianization.
//!
//! Two evaluation strategies produce the output. The dense path materializes
//! the joint state and performs the steps literally; it is the reference
//! but its dimension is exponential in `S`. The factorized path never forms
//! the joint state: junk vectors for different label tuples are orthogonal,
//! so the Gram matrix of the conditional states is a sum over label tuples
//! of per-copy inner products, and an eigendecomposition of that Gram
//! matrix rebuilds a purifier of the smallest possible dimension. Both
//! paths yield the same reduced state, which is all a purification is
//! judged by.

use crate::error::{Error, Result};
use crate::fourier::{label_digits, CentralBasis};
use crate::linalg::Matrix;
use crate::ops::{
    purification_defect, push_conversion, push_subgroup, PIPELINE_TOL,
};
use crate::state::{PureState, Register};
use groups::{lower_central_series, ElemId, GroupRef, Subgroup};
use num_complex::Complex64;
use std::collections::HashMap;
use std::rc::Rc;
use zsum::{brute_force_zero_sum, olson_bound, PrimeModulus, VecSequence};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest joint dimension the dense path will materialize.
pub const DENSE_LIMIT: usize = 1 << 20;

/// Largest label-tuple count the factorized contraction will sum over.
pub const TUPLE_LIMIT: u128 = 1 << 22;

/// Label-tuple count up to which the selector is verified total by
/// exhaustive enumeration at construction time.
pub const SELECTOR_EXHAUSTIVE_LIMIT: u128 = 1 << 20;

/// Deterministic choice of a zero-sum subset of every length-`S` label
/// sequence over `Z_p^n`, with `S` the Olson bound `1 + n(p-1)`: every
/// such sequence has a zero-sum subsequence, so the map is total. The
/// choice is the lexicographically least subset of minimal size, found by
/// exhaustive search, and every returned subset is re-verified to sum to
/// zero before it is handed out.
pub struct ZeroSumSelector {
    p: u32,
    n: usize,
    copies: usize,
    exhausted: bool,
}

impl ZeroSumSelector {
    pub fn new(p: u32, n: usize) -> Result<ZeroSumSelector> {
        let copies = olson_bound(p as u16, n) as usize;
        let sel = ZeroSumSelector {
            p,
            n,
            copies,
            exhausted: false,
        };
        let label_count = (p as u128).pow(n as u32);
        let total = label_count.checked_pow(copies as u32);
        let mut sel = sel;
        if let Some(t) = total {
            if t <= SELECTOR_EXHAUSTIVE_LIMIT {
                let count = label_count as u32;
                let mut seq = vec![0u32; copies];
                'sweep: loop {
                    sel.select(&seq)?;
                    for slot in seq.iter_mut().rev() {
                        *slot += 1;
                        if *slot < count {
                            continue 'sweep;
                        }
                        *slot = 0;
                    }
                    break;
                }
                sel.exhausted = true;
            }
        }
        Ok(sel)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of copies the conversion consumes.
    pub fn copies(&self) -> usize {
        self.copies
    }

    /// Whether totality was verified over every label sequence.
    pub fn exhaustively_verified(&self) -> bool {
        self.exhausted
    }

    /// The chosen zero-sum subset, as sorted positions into `labels`.
    pub fn select(&self, labels: &[u32]) -> Result<Vec<usize>> {
        if labels.len() != self.copies {
            return Err(Error::BadSequenceLength {
                got: labels.len(),
                want: self.copies,
            });
        }
        let rows: Vec<Vec<u16>> = labels
            .iter()
            .map(|&l| label_digits(l as usize, self.p, self.n))
            .collect();
        let pm = PrimeModulus::new(self.p as u16)?;
        let seq = VecSequence::from_rows(pm, self.n, &rows)?;
        let cert = brute_force_zero_sum(seq.as_slice(), None)?
            .ok_or_else(|| Error::SelectorGap(labels.to_vec()))?;
        let picks: Vec<usize> = cert.indices().iter().map(|&i| i as usize).collect();
        let mut acc = vec![0u32; self.n];
        for &i in &picks {
            for (a, &d) in acc.iter_mut().zip(&rows[i]) {
                *a = (*a + d as u32) % self.p;
            }
        }
        if picks.is_empty() || acc.iter().any(|&c| c != 0) {
            return Err(Error::SelectorGap(labels.to_vec()));
        }
        Ok(picks)
    }
}

/// Output of one conversion step.
pub struct Conversion {
    /// Purification of the target pair.
    pub state: PureState,
    /// The quotient `G/L`.
    pub group: GroupRef,
    /// Quotient id of every parent element.
    pub proj: Vec<ElemId>,
    /// Image of `HL` in the quotient: the pair the output purifies.
    pub target: Subgroup,
    /// Copies consumed, the Olson bound for the layer.
    pub copies: usize,
    /// Whether the dense reference path was used.
    pub dense: bool,
    /// Measured distance of the output from its target purification.
    pub defect: f64,
}

/// Converts a purification of `rho(G, H)` into one of `rho(G/L, HL/L)`.
pub fn main_conversion(psi: &PureState, h: &Subgroup, l: &Subgroup) -> Result<Conversion> {
    let g = psi.group_at(0)?;
    if !Rc::ptr_eq(g, l.parent()) {
        return Err(Error::ParentMismatch);
    }
    let basis = CentralBasis::new(g, l)?;
    let selector = ZeroSumSelector::new(basis.p(), basis.n())?;
    main_conversion_with(psi, h, &basis, &selector)
}

/// Same as [`main_conversion`], reusing a prebuilt layer basis and selector.
pub fn main_conversion_with(
    psi: &PureState,
    h: &Subgroup,
    basis: &CentralBasis,
    selector: &ZeroSumSelector,
) -> Result<Conversion> {
    let g = psi.group_at(0)?.clone();
    let l = basis.subgroup();
    if !Rc::ptr_eq(&g, basis.group()) || !Rc::ptr_eq(&g, h.parent()) {
        return Err(Error::ParentMismatch);
    }
    debug_assert!(
        purification_defect(psi, &g, h).map(|d| d < 1e-6).unwrap_or(false),
        "input does not purify the stated pair"
    );
    let hl = h.join(l);
    let copy_dim = psi.dim() as u128 * basis.size() as u128;
    let joint = copy_dim
        .checked_pow(selector.copies() as u32)
        .and_then(|c| c.checked_mul(g.order() as u128));
    let dense = matches!(joint, Some(d) if d <= DENSE_LIMIT as u128);
    let pre = if dense {
        dense_path(psi, basis, selector)?
    } else {
        factorized_path(psi, basis, selector)?
    };
    let pushed = push_conversion(&pre, l, &hl)?;
    let target = push_subgroup(&pushed.group, &pushed.proj, &hl)?;
    let defect = purification_defect(&pushed.state, &pushed.group, &target)?;
    assert!(
        defect <= PIPELINE_TOL,
        "conversion output misses its target by {defect:.3e}"
    );
    Ok(Conversion {
        state: pushed.state,
        group: pushed.group,
        proj: pushed.proj,
        target,
        copies: selector.copies(),
        dense,
        defect,
    })
}

/// Literal construction: `S` expanded copies, a fresh uniform register,
/// conditional right multiplication, everything materialized.
pub(crate) fn dense_path(
    psi: &PureState,
    basis: &CentralBasis,
    selector: &ZeroSumSelector,
) -> Result<PureState> {
    let g = basis.group().clone();
    let order = g.order();
    let s = selector.copies();
    let expanded = basis.fourier_expand(psi, 0)?;
    let mut joint = expanded.clone();
    for _ in 1..s {
        joint = joint.tensor(&expanded)?;
    }
    let jdim = joint.dim();
    let dim = jdim
        .checked_mul(order)
        .filter(|&d| d <= DENSE_LIMIT)
        .ok_or(Error::DimensionBudget(
            jdim as u128 * order as u128,
            DENSE_LIMIT as u128,
        ))?;
    let regs_per_copy = expanded.registers().len();
    let strides = joint.strides();
    let group_stride: Vec<usize> = (0..s).map(|j| strides[j * regs_per_copy]).collect();
    let label_stride: Vec<usize> = (0..s).map(|j| strides[j * regs_per_copy + 1]).collect();
    let size = basis.size();
    let amp = Complex64::new(1.0 / (order as f64).sqrt(), 0.0);
    let mut memo: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    let mut amps = vec![ZERO; dim];
    let mut labels = vec![0u32; s];
    for (jidx, &a) in joint.amplitudes().iter().enumerate() {
        if a == ZERO {
            continue;
        }
        for (slot, &st) in labels.iter_mut().zip(&label_stride) {
            *slot = ((jidx / st) % size) as u32;
        }
        let picks = match memo.get(&labels) {
            Some(p) => p.clone(),
            None => {
                let p = selector.select(&labels)?;
                memo.insert(labels.clone(), p.clone());
                p
            }
        };
        for x in 0..order as ElemId {
            let xinv = g.inv(x);
            let mut out = jidx;
            for &j in &picks {
                let st = group_stride[j];
                let cur = (jidx / st) % order;
                let moved = g.mul(cur as ElemId, xinv) as usize;
                out = out - cur * st + moved * st;
            }
            amps[x as usize * jdim + out] += a * amp;
        }
    }
    let mut regs = vec![Register::Group(g)];
    regs.extend(joint.registers().iter().cloned());
    let mut state = PureState::new(regs, amps)?;
    for i in 1..state.registers().len() {
        state.demote(i);
    }
    Ok(state)
}

/// `Pi_y` applied to the leading register of `psi`, for every label `y`,
/// together with the squared norms of the results.
fn projected_copies(psi: &PureState, basis: &CentralBasis) -> (Vec<Vec<Complex64>>, Vec<f64>) {
    let g = basis.group();
    let order = g.order();
    let size = basis.size();
    let dim = psi.dim();
    let rest = dim / order;
    let weight = Complex64::new(1.0 / size as f64, 0.0);
    let mut phi = vec![vec![ZERO; dim]; size];
    for (idx, &a) in psi.amplitudes().iter().enumerate() {
        if a == ZERO {
            continue;
        }
        let r = idx % rest;
        let x = (idx / rest) as ElemId;
        for z in 0..size {
            let xz = g.mul(x, basis.element(z)) as usize;
            let spread = a * weight;
            for (y, slot) in phi.iter_mut().enumerate() {
                slot[xz * rest + r] += spread * basis.phase(y, z);
            }
        }
    }
    let norms = phi
        .iter()
        .map(|v| v.iter().map(|a| a.norm_sqr()).sum())
        .collect();
    (phi, norms)
}

/// Right translation `|v> -> |v a>` on the leading register.
fn right_translate(
    g: &GroupRef,
    v: &[Complex64],
    rest: usize,
    a: ElemId,
) -> Vec<Complex64> {
    let mut out = vec![ZERO; v.len()];
    for (idx, &amp) in v.iter().enumerate() {
        if amp == ZERO {
            continue;
        }
        let r = idx % rest;
        let x = (idx / rest) as ElemId;
        out[g.mul(x, a) as usize * rest + r] = amp;
    }
    out
}

fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Gram-based construction: sums the junk-state inner products over all
/// label tuples and rebuilds a purifier of dimension `|G|` from the
/// eigendecomposition. Output agrees with the dense path on the reduced
/// state, which is the only thing a purification is judged by.
pub(crate) fn factorized_path(
    psi: &PureState,
    basis: &CentralBasis,
    selector: &ZeroSumSelector,
) -> Result<PureState> {
    let g = basis.group().clone();
    let order = g.order();
    let size = basis.size();
    let s = selector.copies();
    let tuples = (size as u128).pow(s as u32);
    if tuples > TUPLE_LIMIT {
        return Err(Error::DimensionBudget(tuples, TUPLE_LIMIT));
    }
    let dim = psi.dim();
    let rest = dim / order;
    let (phi, norms) = projected_copies(psi, basis);
    // Per-label Gram of right-translated copies:
    // t[y][i][j] = <R_{i^{-1}} phi_y, R_{j^{-1}} phi_y>.
    let mut t: Vec<Matrix> = Vec::with_capacity(size);
    for slot in &phi {
        let trans: Vec<Vec<Complex64>> = (0..order as ElemId)
            .map(|x| right_translate(&g, slot, rest, g.inv(x)))
            .collect();
        let mut m = Matrix::zeros(order);
        for i in 0..order {
            for j in i..order {
                let v = inner(&trans[i], &trans[j]);
                m.set(i, j, v);
                m.set(j, i, v.conj());
            }
        }
        t.push(m);
    }
    // Gram of the conditional junk states over all label tuples.
    let mut gram = Matrix::zeros(order);
    let mut tuple = vec![0u32; s];
    let mut in_pick = vec![false; s];
    'tuples: loop {
        let picks = selector.select(&tuple)?;
        in_pick.iter_mut().for_each(|b| *b = false);
        for &j in &picks {
            in_pick[j] = true;
        }
        let base: f64 = tuple
            .iter()
            .zip(&in_pick)
            .filter(|&(_, &picked)| !picked)
            .map(|(&lab, _)| norms[lab as usize])
            .product();
        for i in 0..order {
            for j in 0..order {
                let mut term = Complex64::new(base, 0.0);
                for &jj in &picks {
                    term *= t[tuple[jj] as usize].get(i, j);
                }
                gram.add_to(i, j, term);
            }
        }
        for slot in tuple.iter_mut().rev() {
            *slot += 1;
            if (*slot as usize) < size {
                continue 'tuples;
            }
            *slot = 0;
        }
        break;
    }
    // Each conditional state is a unit vector; its Gram has unit diagonal.
    for i in 0..order {
        debug_assert!((gram.get(i, i).re - 1.0).abs() < 1e-9);
    }
    // Compress: v_x with <v_x, v_y> = gram[x][y] via the spectral square
    // root. Replacing the junk by v_x preserves the reduced state exactly.
    let (w, u) = gram.eigh();
    let scale = 1.0 / (order as f64).sqrt();
    let mut amps = vec![ZERO; order * order];
    for x in 0..order {
        for k in 0..order {
            let lam = w[k].max(0.0).sqrt();
            amps[x * order + k] = u.get(x, k).conj() * lam * scale;
        }
    }
    PureState::new(
        vec![Register::Group(g), Register::Purifier(order)],
        amps,
    )
}

/// Certified upper bound on the worst distance between the conditional junk
/// state at `x` in `L` and the one at the identity.
///
/// The zero-sum choice of picks makes the two states equal in exact
/// arithmetic: every handed-out subset is re-verified to sum to zero digit
/// by digit in integers, so each branch's residual phase is exactly 1 and
/// only floating-point error can separate the states. Branches with distinct
/// label tuples stay orthogonal under right translation, so telescoping the
/// per-copy deviation gives the bound `S * eps * (1 + eps)^(S - 1)`, where
/// `eps` is the worst relative deviation of a right-translated projected
/// copy from its predicted phase multiple. A difference of accumulated Gram
/// sums would estimate the same quantity only up to noise near the square
/// root of machine epsilon; the bound has no such floor.
pub fn phase_cancellation_defect(
    psi: &PureState,
    basis: &CentralBasis,
    selector: &ZeroSumSelector,
) -> Result<f64> {
    let g = psi.group_at(0)?.clone();
    if !Rc::ptr_eq(&g, basis.group()) {
        return Err(Error::ParentMismatch);
    }
    if selector.p() != basis.p() || selector.n() != basis.n() {
        return Err(Error::ParentMismatch);
    }
    let order = g.order();
    let dim = psi.dim();
    let rest = dim / order;
    let s = selector.copies();
    let (phi, norms) = projected_copies(psi, basis);
    let layer = basis.subgroup().elements();
    // eps bounds || R_{x^{-1}} phi_y - omega^{<y,x>} phi_y || / ||phi_y||.
    let mut eps = 0.0f64;
    for (y, slot) in phi.iter().enumerate() {
        let nu = norms[y].sqrt();
        if nu <= f64::EPSILON {
            continue;
        }
        for &x in layer {
            let trans = right_translate(&g, slot, rest, g.inv(x));
            let lab = basis.label_of(x).expect("layer element");
            let scale = basis.phase(y, lab);
            let err: f64 = trans
                .iter()
                .zip(slot)
                .map(|(&a, &b)| (a - b * scale).norm_sqr())
                .sum();
            eps = eps.max(err.sqrt() / nu);
        }
    }
    Ok(s as f64 * eps * (1.0 + eps).powi(s as i32 - 1))
}

/// One conversion step of an iterated descent.
pub struct IterationStep {
    pub group_order: usize,
    pub layer_order: usize,
    pub copies: usize,
    pub dense: bool,
    pub defect: f64,
}

/// Result of pushing a purification all the way to the abelianization.
pub struct Iteration {
    pub state: PureState,
    /// The final abelian quotient.
    pub group: GroupRef,
    /// Image of the original subgroup in the final quotient.
    pub target: Subgroup,
    /// Composite projection from the original group.
    pub proj: Vec<ElemId>,
    pub steps: Vec<IterationStep>,
}

impl Iteration {
    /// Copies of the original purification consumed, multiplied across steps.
    pub fn total_copies(&self) -> usize {
        self.steps.iter().map(|s| s.copies).product()
    }
}

/// Repeatedly converts along the deepest remaining term of the lower
/// central series until the group is abelian. Abelian input is returned
/// unchanged with zero steps.
pub fn iterate_conversion(psi: &PureState, h: &Subgroup) -> Result<Iteration> {
    let g = psi.group_at(0)?.clone();
    if !Rc::ptr_eq(&g, h.parent()) {
        return Err(Error::ParentMismatch);
    }
    let mut proj: Vec<ElemId> = (0..g.order() as ElemId).collect();
    let mut state = psi.clone();
    let mut group = g;
    let mut target = h.clone();
    let mut steps = Vec::new();
    while !group.is_abelian() {
        let lcs = lower_central_series(&group)?;
        let terms = lcs.terms();
        // Deepest nontrivial term: central, and elementary abelian for
        // every group this simulator accepts (checked when the layer basis
        // is built).
        let layer = terms[terms.len() - 2].clone();
        let conv = main_conversion(&state, &target, &layer)?;
        steps.push(IterationStep {
            group_order: group.order(),
            layer_order: layer.order(),
            copies: conv.copies,
            dense: conv.dense,
            defect: conv.defect,
        });
        proj = proj.iter().map(|&x| conv.proj[x as usize]).collect();
        state = conv.state;
        group = conv.group;
        target = conv.target;
    }
    Ok(Iteration {
        state,
        group,
        target,
        proj,
        steps,
    })
}
