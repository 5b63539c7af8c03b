//! Character projectors over a central elementary abelian subgroup.
//!
//! For a subgroup `L` of `G` isomorphic to a power of `Z_p` and sitting in
//! the center, each label `y` (a coordinate vector over the chosen basis of
//! `L`) has a projector
//!
//! ```text
//! Pi_y |x> = (1/|L|) sum_z omega^{<y,z>} |xz>,    omega = e^{2 pi i / p},
//! ```
//!
//! the spectral projector of the right-translation action of `L` for the
//! character `z -> omega^{-<y,z>}`. The family resolves the identity, and
//! attaching the label register turns it into an isometry
//! `V|x> = sum_y Pi_y|x> |y>`, which is the unitary content of the scaled
//! operator `P_y = sqrt(|L|) Pi_y` (a single `P_y` is a scaled projector,
//! not unitary on its own). Centrality is what makes every `Pi_y` commute
//! with both left and right translations by the whole group; dropping it
//! breaks the right-translation half, and the defect functions here measure
//! exactly that.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::state::{strides_of, PureState, Register, AMPLITUDE_BUDGET};
use groups::{is_central, prime_factors, ElemId, GroupRef, Subgroup};
use num_complex::Complex64;
use std::rc::Rc;

/// Digits of `label` in base `p`, most significant first, `n` digits.
pub(crate) fn label_digits(label: usize, p: u32, n: usize) -> Vec<u16> {
    let mut digits = vec![0u16; n];
    let mut rest = label;
    for d in digits.iter_mut().rev() {
        *d = (rest % p as usize) as u16;
        rest /= p as usize;
    }
    digits
}

pub struct CentralBasis {
    group: GroupRef,
    sub: Subgroup,
    p: u32,
    n: usize,
    basis: Vec<ElemId>,
    /// Label to parent element, label = mixed-radix rank of the coordinates.
    elems: Vec<ElemId>,
    /// Position in `sub.elements()` to label.
    label_by_pos: Vec<usize>,
    /// `omega^k` for `k` in `0..p`, computed once.
    omega: Vec<Complex64>,
}

impl CentralBasis {
    /// Builds the label structure for a central elementary abelian `l`.
    pub fn new(g: &GroupRef, l: &Subgroup) -> Result<CentralBasis> {
        if !is_central(l) {
            return Err(Error::NotCentral(l.order()));
        }
        Self::build(g, l)
    }

    /// Skips the centrality test; used to demonstrate that the operator
    /// identities genuinely fail without it.
    #[cfg(test)]
    pub(crate) fn unchecked(g: &GroupRef, l: &Subgroup) -> Result<CentralBasis> {
        Self::build(g, l)
    }

    fn build(g: &GroupRef, l: &Subgroup) -> Result<CentralBasis> {
        if !Rc::ptr_eq(g, l.parent()) {
            return Err(Error::ParentMismatch);
        }
        let order = l.order();
        let factors = prime_factors(order);
        if factors.len() != 1 {
            return Err(Error::NotElementaryAbelian(order));
        }
        let (p, n) = (factors[0].0, factors[0].1 as usize);
        for &x in l.elements() {
            if g.pow(x, p as i64) != g.identity() {
                return Err(Error::NotElementaryAbelian(order));
            }
        }
        // Greedy basis: take any element outside the span so far.
        let mut basis: Vec<ElemId> = Vec::with_capacity(n);
        let mut span = vec![g.identity()];
        for &x in l.elements() {
            if span.binary_search(&x).is_err() {
                basis.push(x);
                span = groups::closure(g, &basis)?;
                if span.len() == order {
                    break;
                }
            }
        }
        assert_eq!(basis.len(), n, "independent basis of the layer");
        let mut elems = vec![g.identity(); order];
        let mut label_by_pos = vec![0usize; order];
        for (label, slot) in elems.iter_mut().enumerate() {
            let digits = label_digits(label, p, n);
            let mut e = g.identity();
            for (&b, &d) in basis.iter().zip(&digits) {
                e = g.mul(e, g.pow(b, d as i64));
            }
            *slot = e;
            let pos = l.elements().binary_search(&e).expect("closure covers L");
            label_by_pos[pos] = label;
        }
        let omega = (0..p)
            .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / p as f64))
            .collect();
        Ok(CentralBasis {
            group: g.clone(),
            sub: l.clone(),
            p,
            n,
            basis,
            elems,
            label_by_pos,
            omega,
        })
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of labels, equal to `|L|`.
    pub fn size(&self) -> usize {
        self.elems.len()
    }

    pub fn basis_elements(&self) -> &[ElemId] {
        &self.basis
    }

    /// Parent element carrying the given label.
    pub fn element(&self, label: usize) -> ElemId {
        self.elems[label]
    }

    /// Label of a parent element of `L`, if it lies in `L`.
    pub fn label_of(&self, e: ElemId) -> Option<usize> {
        self.sub
            .elements()
            .binary_search(&e)
            .ok()
            .map(|pos| self.label_by_pos[pos])
    }

    /// Standard scalar product of two labels, mod p.
    pub fn pairing(&self, y: usize, z: usize) -> u32 {
        let yd = label_digits(y, self.p, self.n);
        let zd = label_digits(z, self.p, self.n);
        yd.iter()
            .zip(&zd)
            .map(|(&a, &b)| a as u32 * b as u32)
            .sum::<u32>()
            % self.p
    }

    /// `omega^k`, reduced mod p; accepts negative exponents.
    pub fn omega_pow(&self, k: i64) -> Complex64 {
        self.omega[k.rem_euclid(self.p as i64) as usize]
    }

    /// `omega^{<y,z>}` for two labels.
    pub fn phase(&self, y: usize, z: usize) -> Complex64 {
        self.omega[self.pairing(y, z) as usize]
    }

    /// The projector `Pi_y` as a dense matrix over the parent group.
    pub fn projector(&self, y: usize) -> Matrix {
        let g = &self.group;
        let order = g.order();
        let size = self.size();
        let weight = 1.0 / size as f64;
        let mut m = Matrix::zeros(order);
        for x in 0..order as ElemId {
            for z in 0..size {
                let row = g.mul(x, self.elems[z]) as usize;
                m.add_to(row, x as usize, self.phase(y, z) * weight);
            }
        }
        m
    }

    /// The scaled operator `P_y = sqrt(|L|) Pi_y` as a matrix.
    pub fn scaled_p(&self, y: usize) -> Matrix {
        self.projector(y)
            .scale(Complex64::new((self.size() as f64).sqrt(), 0.0))
    }

    fn projectors(&self) -> Vec<Matrix> {
        (0..self.size()).map(|y| self.projector(y)).collect()
    }

    /// `sum_y Pi_y` against the identity.
    pub fn resolution_defect(&self) -> f64 {
        let order = self.group.order();
        let mut sum = Matrix::zeros(order);
        for y in 0..self.size() {
            let p = self.projector(y);
            for i in 0..order {
                for j in 0..order {
                    sum.add_to(i, j, p.get(i, j));
                }
            }
        }
        sum.max_diff(&Matrix::identity(order))
    }

    /// Worst deviation of `Pi_y Pi_y'` from `delta_{yy'} Pi_y` over all
    /// label pairs, Hermiticity of each `Pi_y` included.
    pub fn family_defect(&self) -> f64 {
        let ps = self.projectors();
        let mut worst = 0.0f64;
        for (y, py) in ps.iter().enumerate() {
            worst = worst.max(py.hermiticity_defect());
            for (z, pz) in ps.iter().enumerate() {
                let prod = py.mul(pz);
                let target = if y == z {
                    py.clone()
                } else {
                    Matrix::zeros(py.n())
                };
                worst = worst.max(prod.max_diff(&target));
            }
        }
        worst
    }

    /// `V^dagger V` against the identity for the label-attaching isometry
    /// `V|x> = sum_y Pi_y|x> |y>`.
    pub fn isometry_defect(&self) -> f64 {
        let order = self.group.order();
        let mut sum = Matrix::zeros(order);
        for y in 0..self.size() {
            let p = self.projector(y);
            let prod = p.adjoint().mul(&p);
            for i in 0..order {
                for j in 0..order {
                    sum.add_to(i, j, prod.get(i, j));
                }
            }
        }
        sum.max_diff(&Matrix::identity(order))
    }

    /// Worst failure of `Pi_y` to commute with left translations.
    pub fn left_translation_defect(&self) -> f64 {
        let g = &self.group;
        let order = g.order();
        let ps = self.projectors();
        let mut worst = 0.0f64;
        for py in &ps {
            for a in 0..order as ElemId {
                let ainv = g.inv(a);
                for i in 0..order as ElemId {
                    for j in 0..order as ElemId {
                        let right = py.get(i as usize, g.mul(a, j) as usize);
                        let left = py.get(g.mul(ainv, i) as usize, j as usize);
                        worst = worst.max((right - left).norm());
                    }
                }
            }
        }
        worst
    }

    /// Worst failure of `Pi_y` to commute with right translations. Nonzero
    /// exactly when `L` fails to be central.
    pub fn right_translation_defect(&self) -> f64 {
        let g = &self.group;
        let order = g.order();
        let ps = self.projectors();
        let mut worst = 0.0f64;
        for py in &ps {
            for a in 0..order as ElemId {
                let ainv = g.inv(a);
                for i in 0..order as ElemId {
                    for j in 0..order as ElemId {
                        let right = py.get(i as usize, g.mul(j, a) as usize);
                        let left = py.get(g.mul(i, ainv) as usize, j as usize);
                        worst = worst.max((right - left).norm());
                    }
                }
            }
        }
        worst
    }

    /// Worst failure of the eigenvalue law: translating by `w` in `L`
    /// rescales `Pi_y` by `omega^{-<y,w>}`, on either side.
    pub fn eigenvalue_defect(&self) -> f64 {
        let g = &self.group;
        let order = g.order();
        let mut worst = 0.0f64;
        for y in 0..self.size() {
            let py = self.projector(y);
            for w in 0..self.size() {
                let we = self.elems[w];
                let winv = g.inv(we);
                let scale = self.omega_pow(-(self.pairing(y, w) as i64));
                for i in 0..order as ElemId {
                    for j in 0..order as ElemId {
                        let want = py.get(i as usize, j as usize) * scale;
                        let via_right = py.get(i as usize, g.mul(j, we) as usize);
                        let via_left = py.get(g.mul(winv, i) as usize, j as usize);
                        worst = worst.max((via_right - want).norm());
                        worst = worst.max((via_left - want).norm());
                    }
                }
            }
        }
        worst
    }

    /// `P_0` maps each basis state to its coset superposition.
    pub fn coset_defect(&self) -> f64 {
        let g = &self.group;
        let order = g.order();
        let p0 = self.scaled_p(0);
        let amp = 1.0 / (self.size() as f64).sqrt();
        let mut worst = 0.0f64;
        for x in 0..order as ElemId {
            for i in 0..order {
                let in_coset = self
                    .label_of(g.mul(g.inv(x), i as ElemId))
                    .is_some();
                let want = if in_coset { amp } else { 0.0 };
                worst = worst.max((p0.get(i, x as usize) - want).norm());
            }
        }
        worst
    }

    /// Applies the label-attaching isometry to the group register `reg`,
    /// inserting a label register right after it.
    pub fn fourier_expand(&self, psi: &PureState, reg: usize) -> Result<PureState> {
        let g = psi.group_at(reg)?;
        if !Rc::ptr_eq(g, &self.group) {
            return Err(Error::ParentMismatch);
        }
        let size = self.size();
        let new_dim = psi.dim() as u128 * size as u128;
        if new_dim > AMPLITUDE_BUDGET as u128 {
            return Err(Error::DimensionBudget(new_dim, AMPLITUDE_BUDGET as u128));
        }
        let strides = psi.strides();
        let low = strides[reg];
        let order = self.group.order();
        let weight = Complex64::new(1.0 / size as f64, 0.0);
        // Old index = hi * order * low + x * low + lo;
        // new index = ((hi * order + x') * size + y) * low + lo.
        let mut amps = vec![Complex64::new(0.0, 0.0); new_dim as usize];
        for (idx, &a) in psi.amplitudes().iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let lo = idx % low;
            let x = (idx / low) % order;
            let hi = idx / (low * order);
            for z in 0..size {
                let xz = self.group.mul(x as ElemId, self.elems[z]) as usize;
                for y in 0..size {
                    let out = ((hi * order + xz) * size + y) * low + lo;
                    amps[out] += a * self.phase(y, z) * weight;
                }
            }
        }
        let mut regs = psi.registers().to_vec();
        regs.insert(reg + 1, Register::Labels(size));
        debug_assert_eq!(strides_of(&regs)[reg + 1], low);
        PureState::new(regs, amps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::standard_purification;
    use groups::by_name;

    fn sub(g: &GroupRef, gens: &[ElemId]) -> Subgroup {
        Subgroup::new(g, gens).unwrap()
    }

    #[test]
    fn labels_are_coordinates_over_the_greedy_basis() {
        let g = by_name("z2xz2").unwrap();
        let basis = CentralBasis::new(&g, &Subgroup::whole(&g)).unwrap();
        assert_eq!((basis.p(), basis.n(), basis.size()), (2, 2, 4));
        assert_eq!(basis.element(0), g.identity());
        // Round trip between labels and elements.
        for y in 0..4 {
            assert_eq!(basis.label_of(basis.element(y)), Some(y));
        }
        // Pairing is the dot product of digit vectors.
        assert_eq!(basis.pairing(3, 3), 0);
        assert_eq!(basis.pairing(1, 1), 1);
        assert_eq!(basis.pairing(2, 1), 0);
    }

    #[test]
    fn operator_identities_hold_over_an_abelian_group() {
        let g = by_name("z2xz2").unwrap();
        let basis = CentralBasis::new(&g, &Subgroup::whole(&g)).unwrap();
        assert!(basis.resolution_defect() < 1e-14);
        assert!(basis.family_defect() < 1e-14);
        assert!(basis.isometry_defect() < 1e-14);
        assert!(basis.left_translation_defect() < 1e-14);
        assert!(basis.right_translation_defect() < 1e-14);
        assert!(basis.eigenvalue_defect() < 1e-14);
        assert!(basis.coset_defect() < 1e-14);
    }

    #[test]
    fn operator_identities_hold_over_the_heisenberg_center() {
        let g = by_name("heisenberg3").unwrap();
        let center = groups::center(&g);
        assert_eq!(center.order(), 3);
        let basis = CentralBasis::new(&g, &center).unwrap();
        assert_eq!((basis.p(), basis.n()), (3, 1));
        assert!(basis.resolution_defect() < 1e-13);
        assert!(basis.family_defect() < 1e-13);
        assert!(basis.isometry_defect() < 1e-13);
        assert!(basis.left_translation_defect() < 1e-13);
        assert!(basis.right_translation_defect() < 1e-13);
        assert!(basis.eigenvalue_defect() < 1e-13);
        assert!(basis.coset_defect() < 1e-13);
    }

    #[test]
    fn non_central_layers_are_rejected_and_really_do_fail() {
        let g = by_name("d8").unwrap();
        let refl = sub(&g, &[1]);
        assert!(matches!(
            CentralBasis::new(&g, &refl),
            Err(Error::NotCentral(2))
        ));
        // Build anyway: left translations still commute, right ones break.
        let forced = CentralBasis::unchecked(&g, &refl).unwrap();
        assert!(forced.left_translation_defect() < 1e-14);
        assert!(forced.right_translation_defect() > 0.1);
    }

    #[test]
    fn non_elementary_layers_are_rejected() {
        let g = by_name("z4").unwrap();
        assert!(matches!(
            CentralBasis::new(&g, &Subgroup::whole(&g)),
            Err(Error::NotElementaryAbelian(4))
        ));
        // The order-2 layer inside is fine.
        assert!(CentralBasis::new(&g, &sub(&g, &[2])).is_ok());
    }

    #[test]
    fn scaled_operator_is_a_scaled_projector_not_unitary() {
        let g = by_name("z2").unwrap();
        let basis = CentralBasis::new(&g, &Subgroup::whole(&g)).unwrap();
        let p1 = basis.scaled_p(1);
        let gram = p1.adjoint().mul(&p1);
        // P_y^dagger P_y = |L| Pi_y, which is not the identity.
        assert!(gram.max_diff(&Matrix::identity(2)) > 0.9);
        let pi = basis.projector(1);
        assert!(gram.max_diff(&pi.scale(Complex64::new(2.0, 0.0))) < 1e-14);
    }

    #[test]
    fn fourier_expand_is_norm_preserving_and_reversible_on_average() {
        let g = by_name("z2xz2").unwrap();
        let l = sub(&g, &[2]);
        let basis = CentralBasis::new(&g, &l).unwrap();
        let psi = standard_purification(&g, &sub(&g, &[3])).unwrap();
        let expanded = basis.fourier_expand(&psi, 0).unwrap();
        assert_eq!(expanded.dim(), psi.dim() * 2);
        assert_eq!(expanded.registers().len(), 3);
        // Norm preservation is checked by the PureState constructor. The
        // reduced state on the group register is unchanged because the
        // projectors commute with it: dephasing in an eigenbasis is lossless.
        let before = psi.reduced_first();
        let after = expanded.reduced_first();
        assert!(before.max_diff(&after) < 1e-13);
    }
}
