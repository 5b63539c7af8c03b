//! Subgroup states, purifications, and the two register rewrites that
//! change which group the leading register ranges over.
//!
//! The state `rho(G, H)` is the uniform mixture of left-coset
//! superpositions of `H` in `G`. It is `1/[G:H]` times the projector onto
//! the span of the coset states, and a pure state on (group register,
//! anything) purifies it exactly when its conditional vectors agree on each
//! left coset and are orthogonal across cosets. Both facts are what the
//! checks here compute.
//!
//! Restriction rewrites `|x>` as `|beta(x)>|alpha(x)>` for a subgroup `L`,
//! turning a purification over `G` into one over `L` with the coset label
//! absorbed into the purifier. Pushing does the opposite split for a normal
//! `L` contained in `H`, leaving a purification over `G/L`. Both are basis
//! permutations: no amplitude arithmetic, only reindexing.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::state::{DensityMatrix, PureState, Register};
use groups::{quotient_group, subgroup_as_group, transversal, ElemId, GroupRef, Subgroup};
use num_complex::Complex64;
use std::rc::Rc;

/// Largest group order the state-level simulator accepts.
pub const MAX_STATE_GROUP: usize = 64;

/// Single-step tolerance: exact constructions measured against exact targets.
pub const STEP_TOL: f64 = 1e-12;

/// Composite tolerance: multi-stage pipelines accumulate rounding.
pub const PIPELINE_TOL: f64 = 1e-9;

fn check_size(g: &GroupRef) -> Result<()> {
    if g.order() > MAX_STATE_GROUP {
        return Err(Error::GroupTooLarge(g.order(), MAX_STATE_GROUP));
    }
    Ok(())
}

fn check_parent(g: &GroupRef, sub: &Subgroup) -> Result<()> {
    if !Rc::ptr_eq(g, sub.parent()) {
        return Err(Error::ParentMismatch);
    }
    Ok(())
}

/// The mixture of coset projectors for the given coset representatives.
fn mixture_over_reps(g: &GroupRef, h: &Subgroup, reps: &[ElemId]) -> Matrix {
    let n = g.order();
    let hs = h.elements();
    let weight = 1.0 / (reps.len() * hs.len()) as f64;
    let mut m = Matrix::zeros(n);
    for &a in reps {
        for &x in hs {
            let row = g.mul(a, x) as usize;
            for &y in hs {
                let col = g.mul(a, y) as usize;
                m.add_to(row, col, Complex64::new(weight, 0.0));
            }
        }
    }
    m
}

/// Uniform mixture of left-coset superpositions of `h` in `g`.
///
/// Computed twice, from two independently chosen transversals, and the two
/// results must agree entrywise: the state depends only on the cosets, so
/// any daylight between them is a bug in the coset machinery.
pub fn subgroup_state(g: &GroupRef, h: &Subgroup) -> Result<DensityMatrix> {
    check_size(g)?;
    check_parent(g, h)?;
    let t = transversal(g, h)?;
    let first = mixture_over_reps(g, h, t.reps());
    // Second transversal: greedy scan from the top element downward.
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::with_capacity(t.index());
    for x in (0..g.order() as ElemId).rev() {
        if seen[x as usize] {
            continue;
        }
        reps.push(x);
        for &z in h.elements() {
            seen[g.mul(x, z) as usize] = true;
        }
    }
    let second = mixture_over_reps(g, h, &reps);
    assert!(
        first.max_diff(&second) <= STEP_TOL,
        "coset mixture depends on the transversal"
    );
    DensityMatrix::new(first)
}

/// How far `rho` is from `1/index` times a projector.
pub fn projector_defect(rho: &DensityMatrix, index: usize) -> f64 {
    let scaled = rho.matrix().scale(Complex64::new(index as f64, 0.0));
    scaled.mul(&scaled).max_diff(&scaled)
}

/// The canonical purification: uniform over `x` with the coset index of `x`
/// recorded in a second register.
pub fn standard_purification(g: &GroupRef, h: &Subgroup) -> Result<PureState> {
    check_size(g)?;
    check_parent(g, h)?;
    let t = transversal(g, h)?;
    let n = g.order();
    let idx = t.index();
    let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); n * idx];
    for x in 0..n as ElemId {
        amps[x as usize * idx + t.coset_rank(x)] = amp;
    }
    PureState::new(
        vec![Register::Group(g.clone()), Register::Purifier(idx)],
        amps,
    )
}

/// Entrywise distance between the reduction of `psi` to its leading group
/// register and the subgroup state of `(g, h)`.
pub fn purification_defect(psi: &PureState, g: &GroupRef, h: &Subgroup) -> Result<f64> {
    let lead = psi.group_at(0)?;
    if lead.order() != g.order() {
        return Err(Error::RegisterShape {
            index: 0,
            got: lead.order(),
            want: g.order(),
        });
    }
    let target = subgroup_state(g, h)?;
    Ok(psi.reduced_first().max_diff(target.matrix()))
}

/// Whether `psi` purifies the subgroup state of `(g, h)` within `tol`.
pub fn is_purification(psi: &PureState, g: &GroupRef, h: &Subgroup, tol: f64) -> Result<bool> {
    Ok(purification_defect(psi, g, h)? <= tol)
}

/// Result of rewriting a state over `G` as a state over a subgroup `L`.
pub struct Restricted {
    /// Leading register now ranges over `L` as a standalone group.
    pub state: PureState,
    /// `L` with elements renumbered `0..|L|`.
    pub group: GroupRef,
    /// Parent element for each local id.
    pub to_parent: Vec<ElemId>,
}

/// Maps a subgroup of the parent into the local ids of `subgroup_as_group`.
/// `to_parent` must be the id table returned alongside `local`.
pub fn carry_subgroup(
    local: &GroupRef,
    to_parent: &[ElemId],
    sub: &Subgroup,
) -> Result<Subgroup> {
    let mut gens = Vec::with_capacity(sub.generators().len());
    for &g in sub.generators() {
        let pos = to_parent
            .binary_search(&g)
            .map_err(|_| Error::NotContained(to_parent.len(), sub.order()))?;
        gens.push(pos as ElemId);
    }
    Ok(Subgroup::new(local, &gens)?)
}

/// Splits every basis element as `beta * alpha` over the subgroup `l` and
/// reindexes: the leading register shrinks to `l`, the coset index joins
/// the purifier side. A purification of `rho(G, H)` becomes one of
/// `rho(L, H meet L)`.
pub fn restrict_conversion(psi: &PureState, l: &Subgroup) -> Result<Restricted> {
    let g = psi.group_at(0)?.clone();
    check_parent(&g, l)?;
    let t = transversal(&g, l)?;
    let (local, to_parent) = subgroup_as_group(l)?;
    let n = g.order();
    let idx = t.index();
    let rest: usize = psi.dim() / n;
    let mut amps = vec![Complex64::new(0.0, 0.0); psi.dim()];
    for x in 0..n as ElemId {
        let b = t.beta(x);
        let pos = to_parent
            .binary_search(&b)
            .expect("beta lands in the subgroup");
        let new_block = (pos * idx + t.coset_rank(x)) * rest;
        let old_block = x as usize * rest;
        amps[new_block..new_block + rest]
            .copy_from_slice(&psi.amplitudes()[old_block..old_block + rest]);
    }
    let mut regs = vec![Register::Group(local.clone()), Register::Purifier(idx)];
    regs.extend(psi.registers()[1..].iter().cloned());
    Ok(Restricted {
        state: PureState::new(regs, amps)?,
        group: local,
        to_parent,
    })
}

/// Result of collapsing a normal subgroup `L <= H` out of the leading
/// register.
pub struct Pushed {
    /// Leading register now ranges over the quotient group.
    pub state: PureState,
    /// The quotient `G/L`, with ids equal to coset ranks.
    pub group: GroupRef,
    /// Quotient id of every parent element.
    pub proj: Vec<ElemId>,
}

/// Image of a parent subgroup under the quotient projection.
pub fn push_subgroup(quot: &GroupRef, proj: &[ElemId], sub: &Subgroup) -> Result<Subgroup> {
    let gens: Vec<ElemId> = sub
        .generators()
        .iter()
        .map(|&g| proj[g as usize])
        .collect();
    Ok(Subgroup::new(quot, &gens)?)
}

/// Splits every basis element as `alpha * beta` over the normal subgroup
/// `l` and reindexes: the leading register becomes the quotient `G/L`, the
/// `L`-part joins the purifier side. For `l` inside `h`, a purification of
/// `rho(G, H)` becomes one of `rho(G/L, H/L)`.
pub fn push_conversion(psi: &PureState, l: &Subgroup, h: &Subgroup) -> Result<Pushed> {
    let g = psi.group_at(0)?.clone();
    check_parent(&g, l)?;
    check_parent(&g, h)?;
    if !l.is_subgroup_of(h) {
        return Err(Error::NotContained(h.order(), l.order()));
    }
    if !l.is_normal_in(&Subgroup::whole(&g)) {
        return Err(Error::NotNormal(l.order()));
    }
    let t = transversal(&g, l)?;
    let (quot, proj) = quotient_group(&g, l)?;
    let n = g.order();
    let lsize = l.order();
    let rest: usize = psi.dim() / n;
    let mut amps = vec![Complex64::new(0.0, 0.0); psi.dim()];
    for x in 0..n as ElemId {
        let b = t.beta(x);
        let pos = l
            .elements()
            .binary_search(&b)
            .expect("beta lands in the subgroup");
        let new_block = ((proj[x as usize] as usize) * lsize + pos) * rest;
        let old_block = x as usize * rest;
        amps[new_block..new_block + rest]
            .copy_from_slice(&psi.amplitudes()[old_block..old_block + rest]);
    }
    let mut regs = vec![Register::Group(quot.clone()), Register::Purifier(lsize)];
    regs.extend(psi.registers()[1..].iter().cloned());
    Ok(Pushed {
        state: PureState::new(regs, amps)?,
        group: quot,
        proj,
    })
}
