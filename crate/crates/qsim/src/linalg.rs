//! Dense complex matrices sized for the desk-scale groups this simulator
//! accepts. Everything is row-major and square; the only nontrivial routine
//! is a cyclic Jacobi eigensolver for Hermitian input, which is plenty for
//! dimensions up to a few hundred and has no external dependencies.

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    n: usize,
    a: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Matrix {
        Matrix {
            n,
            a: vec![ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.set(i, i, ONE);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.a[i * self.n + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: Complex64) {
        self.a[i * self.n + j] += v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "matrix size mismatch");
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let v = self.get(i, k);
                if v == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.a[i * n + j] += v * other.a[k * n + j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(j, i).conj());
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Matrix {
        Matrix {
            n: self.n,
            a: self.a.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.n, other.n, "matrix size mismatch");
        self.a
            .iter()
            .zip(&other.a)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// Largest deviation from `A = A^dagger`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.n, "vector length mismatch");
        let n = self.n;
        let mut out = vec![ZERO; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = ZERO;
            for (j, x) in v.iter().enumerate() {
                acc += self.a[i * n + j] * x;
            }
            *slot = acc;
        }
        out
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations:
    /// returns `(w, u)` with `self = u diag(w) u^dagger` and unitary `u`.
    /// The input is symmetrized first, so tiny Hermiticity drift is absorbed
    /// rather than amplified.
    pub fn eigh(&self) -> (Vec<f64>, Matrix) {
        let n = self.n;
        let mut a = self.clone();
        for i in 0..n {
            let d = a.get(i, i);
            a.set(i, i, Complex64::new(d.re, 0.0));
            for j in 0..i {
                let m = 0.5 * (a.get(i, j) + a.get(j, i).conj());
                a.set(i, j, m);
                a.set(j, i, m.conj());
            }
        }
        let mut u = Matrix::identity(n);
        let scale = a
            .a
            .iter()
            .map(|v| v.norm())
            .fold(f64::MIN_POSITIVE, f64::max);
        for _ in 0..100 {
            let mut off = 0.0f64;
            for i in 0..n {
                for j in (i + 1)..n {
                    off = off.max(a.get(i, j).norm());
                }
            }
            if off <= 1e-15 * scale {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a.get(p, q);
                    let r = apq.norm();
                    if r <= 1e-300 {
                        continue;
                    }
                    let phase = apq / r;
                    let app = a.get(p, p).re;
                    let aqq = a.get(q, q).re;
                    let tau = (aqq - app) / (2.0 * r);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // Unitary G: G[p][p]=G[q][q]=c, G[p][q]=s*phase,
                    // G[q][p]=-s*conj(phase). Update A <- G^dagger A G.
                    for k in 0..n {
                        let akp = a.get(k, p);
                        let akq = a.get(k, q);
                        a.set(k, p, akp * c - akq * s * phase.conj());
                        a.set(k, q, akp * s * phase + akq * c);
                    }
                    for k in 0..n {
                        let apk = a.get(p, k);
                        let aqk = a.get(q, k);
                        a.set(p, k, apk * c - aqk * s * phase);
                        a.set(q, k, apk * s * phase.conj() + aqk * c);
                    }
                    a.set(p, q, ZERO);
                    a.set(q, p, ZERO);
                    let dp = a.get(p, p);
                    let dq = a.get(q, q);
                    a.set(p, p, Complex64::new(dp.re, 0.0));
                    a.set(q, q, Complex64::new(dq.re, 0.0));
                    for k in 0..n {
                        let ukp = u.get(k, p);
                        let ukq = u.get(k, q);
                        u.set(k, p, ukp * c - ukq * s * phase.conj());
                        u.set(k, q, ukp * s * phase + ukq * c);
                    }
                }
            }
        }
        let w = (0..n).map(|i| a.get(i, i).re).collect();
        (w, u)
    }
}
