//! Typed registers, pure states, and density matrices.
//!
//! A pure state is a unit vector over an ordered list of registers. Each
//! register is tagged with what its basis ranges over: the elements of a
//! concrete group, a set of Fourier labels, or an opaque purifier kept only
//! for inner products. Conversions relabel registers rather than moving
//! amplitudes whenever the underlying map is a basis permutation, so the
//! tags are bookkeeping with no numerical cost.
//!
//! Index convention: register 0 is most significant, the last register is
//! least significant. The partial trace down to register 0 therefore reads
//! contiguous blocks.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use groups::GroupRef;
use num_complex::Complex64;

/// Unit-norm slack for freshly built states.
pub const NORM_TOL: f64 = 1e-12;

/// Hermiticity and trace slack for density matrices.
pub const DENSITY_TOL: f64 = 1e-12;

/// Eigenvalues of a density matrix may dip this far below zero.
pub const EIG_FLOOR: f64 = -1e-10;

/// Hard cap on the amplitude count of any materialized state.
pub const AMPLITUDE_BUDGET: usize = 1 << 22;

#[derive(Clone, Debug)]
pub enum Register {
    /// Basis states are the elements of this group, by element id.
    Group(GroupRef),
    /// Fourier labels of a fixed count.
    Labels(usize),
    /// Environment register carried along only for inner products.
    Purifier(usize),
}

impl Register {
    pub fn dim(&self) -> usize {
        match self {
            Register::Group(g) => g.order(),
            Register::Labels(d) | Register::Purifier(d) => *d,
        }
    }
}

#[derive(Clone)]
pub struct PureState {
    regs: Vec<Register>,
    amps: Vec<Complex64>,
}

impl PureState {
    /// Builds a state and enforces the unit-norm and budget invariants.
    pub fn new(regs: Vec<Register>, amps: Vec<Complex64>) -> Result<PureState> {
        let dim: usize = regs.iter().map(Register::dim).product();
        if dim > AMPLITUDE_BUDGET {
            return Err(Error::DimensionBudget(
                dim as u128,
                AMPLITUDE_BUDGET as u128,
            ));
        }
        if dim != amps.len() || dim == 0 {
            return Err(Error::RegisterShape {
                index: 0,
                got: amps.len(),
                want: dim,
            });
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { dim, norm });
        }
        Ok(PureState { regs, amps })
    }

    pub fn registers(&self) -> &[Register] {
        &self.regs
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    /// Strides per register under the register-0-most-significant layout.
    pub fn strides(&self) -> Vec<usize> {
        strides_of(&self.regs)
    }

    /// The group indexed by register `i`, if that register is a group one.
    pub fn group_at(&self, i: usize) -> Result<&GroupRef> {
        match self.regs.get(i) {
            Some(Register::Group(g)) => Ok(g),
            _ => Err(Error::NotGroupRegister(i)),
        }
    }

    /// Retags register `i` as a purifier. Metadata only.
    pub fn demote(&mut self, i: usize) {
        let d = self.regs[i].dim();
        self.regs[i] = Register::Purifier(d);
    }

    /// Density matrix on register 0 after tracing out everything else.
    pub fn reduced_first(&self) -> Matrix {
        let d0 = self.regs[0].dim();
        let rest = self.dim() / d0;
        let mut m = Matrix::zeros(d0);
        for i in 0..d0 {
            for j in 0..d0 {
                let mut acc = Complex64::new(0.0, 0.0);
                for r in 0..rest {
                    acc += self.amps[i * rest + r] * self.amps[j * rest + r].conj();
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    /// Probability of each outcome when measuring register 0.
    pub fn measurement_distribution(&self) -> Vec<f64> {
        let d0 = self.regs[0].dim();
        let rest = self.dim() / d0;
        (0..d0)
            .map(|i| {
                (0..rest)
                    .map(|r| self.amps[i * rest + r].norm_sqr())
                    .sum()
            })
            .collect()
    }

    /// Kronecker product, `self` most significant.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let dim = (self.dim() as u128) * (other.dim() as u128);
        if dim > AMPLITUDE_BUDGET as u128 {
            return Err(Error::DimensionBudget(dim, AMPLITUDE_BUDGET as u128));
        }
        let mut regs = self.regs.clone();
        regs.extend(other.regs.iter().cloned());
        let mut amps = Vec::with_capacity(dim as usize);
        for &a in &self.amps {
            for &b in &other.amps {
                amps.push(a * b);
            }
        }
        PureState::new(regs, amps)
    }
}

pub(crate) fn strides_of(regs: &[Register]) -> Vec<usize> {
    let mut strides = vec![1usize; regs.len()];
    for i in (0..regs.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * regs[i + 1].dim();
    }
    strides
}

#[derive(Clone)]
pub struct DensityMatrix {
    m: Matrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace, and near-positivity.
    pub fn new(m: Matrix) -> Result<DensityMatrix> {
        let dim = m.n();
        let herm = m.hermiticity_defect();
        if herm > DENSITY_TOL {
            return Err(Error::NotDensity {
                what: "hermiticity",
                dim,
                err: herm,
            });
        }
        let tr = m.trace();
        let terr = (tr - Complex64::new(1.0, 0.0)).norm();
        if terr > DENSITY_TOL {
            return Err(Error::NotDensity {
                what: "unit trace",
                dim,
                err: terr,
            });
        }
        let (w, _) = m.eigh();
        let low = w.iter().cloned().fold(0.0f64, f64::min);
        if low < EIG_FLOOR {
            return Err(Error::NotDensity {
                what: "positivity",
                dim,
                err: -low,
            });
        }
        Ok(DensityMatrix { m })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.n()
    }

    pub fn max_diff(&self, other: &DensityMatrix) -> f64 {
        self.m.max_diff(&other.m)
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.m.n()).map(|i| self.m.get(i, i).re).collect()
    }
}
