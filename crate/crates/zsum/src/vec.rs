//! Vectors over Z_p^n and sequences of them.
//!
//! Residues are stored as `u16` values strictly below the modulus, and
//! sequences keep their items in one flat row-major buffer so the search
//! routines can walk them without pointer chasing.

use std::fmt;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// A prime modulus `p` with `2 <= p < 2^16`.
///
/// Primality is established once at construction by trial division, so a
/// value of this type is always safe to divide by.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct PrimeModulus(u16);

impl PrimeModulus {
    pub fn new(p: u16) -> Result<Self> {
        if is_prime(p) {
            Ok(PrimeModulus(p))
        } else {
            Err(Error::NotPrime(p as u32))
        }
    }

    #[inline]
    pub fn get(self) -> u16 {
        self.0
    }

    /// Largest coefficient kept positive by the standard-relation rewrite.
    #[inline]
    pub fn half(self) -> u16 {
        (self.0 - 1) / 2
    }

    #[inline]
    pub fn modops(self) -> Mod {
        Mod::new(self.0)
    }
}

impl fmt::Debug for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimeModulus({})", self.0)
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(p: u16) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p as u32 {
        if (p as u32).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic mod a fixed `p`, with reduction by multiply-shift instead of
/// hardware division. The search loops reduce hundreds of millions of
/// products, so the few cycles saved per reduction matter.
#[derive(Copy, Clone)]
pub struct Mod {
    p: u32,
    magic: u64,
}

impl Mod {
    #[inline]
    pub fn new(p: u16) -> Self {
        debug_assert!(p >= 2);
        Mod {
            p: p as u32,
            magic: u64::MAX / p as u64 + 1,
        }
    }

    #[inline]
    pub fn p(self) -> u16 {
        self.p as u16
    }

    /// `a mod p` for any 32-bit `a`.
    #[inline]
    pub fn reduce(self, a: u32) -> u16 {
        let low = self.magic.wrapping_mul(a as u64);
        ((low as u128 * self.p as u128) >> 64) as u16
    }

    #[inline]
    pub fn add(self, a: u16, b: u16) -> u16 {
        let s = a as u32 + b as u32;
        if s >= self.p {
            (s - self.p) as u16
        } else {
            s as u16
        }
    }

    #[inline]
    pub fn sub(self, a: u16, b: u16) -> u16 {
        if a >= b {
            a - b
        } else {
            (a as u32 + self.p - b as u32) as u16
        }
    }

    #[inline]
    pub fn neg(self, a: u16) -> u16 {
        if a == 0 {
            0
        } else {
            (self.p - a as u32) as u16
        }
    }

    #[inline]
    pub fn mul(self, a: u16, b: u16) -> u16 {
        self.reduce(a as u32 * b as u32)
    }

    pub fn pow(self, mut base: u16, mut exp: u32) -> u16 {
        let mut acc = 1u16;
        base = self.reduce(base as u32);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero mod p.
    pub fn inv(self, a: u16) -> u16 {
        debug_assert!(self.reduce(a as u32) != 0);
        self.pow(a, self.p - 2)
    }
}

/// One vector in Z_p^n. Coordinates are always reduced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZpVec {
    p: PrimeModulus,
    coords: Vec<u16>,
}

impl ZpVec {
    pub fn new(p: PrimeModulus, coords: Vec<u16>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyVector);
        }
        for &c in &coords {
            if c >= p.get() {
                return Err(Error::ResidueRange {
                    value: c as u32,
                    p: p.get(),
                });
            }
        }
        Ok(ZpVec { p, coords })
    }

    pub fn zero(p: PrimeModulus, n: usize) -> Result<Self> {
        ZpVec::new(p, vec![0; n]).map_err(|_| Error::EmptyVector)
    }

    #[inline]
    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[u16] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn check_compatible(&self, other: &ZpVec) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch {
                left: self.p.get(),
                right: other.p.get(),
            });
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &ZpVec) -> Result<ZpVec> {
        self.check_compatible(other)?;
        let m = self.p.modops();
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| m.add(a, b))
            .collect();
        Ok(ZpVec { p: self.p, coords })
    }

    pub fn negate(&self) -> ZpVec {
        let m = self.p.modops();
        ZpVec {
            p: self.p,
            coords: self.coords.iter().map(|&a| m.neg(a)).collect(),
        }
    }

    pub fn scale(&self, c: u16) -> ZpVec {
        let m = self.p.modops();
        let c = m.reduce(c as u32);
        ZpVec {
            p: self.p,
            coords: self.coords.iter().map(|&a| m.mul(a, c)).collect(),
        }
    }
}

impl fmt::Debug for ZpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZpVec(p={}, {:?})", self.p, self.coords)
    }
}

/// Concatenation of one or more vectors over the same modulus; the result has
/// the sum of the dimensions. Rejects an empty argument list because vectors
/// of dimension zero do not exist here.
pub fn concat(parts: &[ZpVec]) -> Result<ZpVec> {
    let first = parts.first().ok_or(Error::EmptyConcat)?;
    let mut coords = Vec::with_capacity(parts.iter().map(|v| v.dim()).sum());
    for part in parts {
        if part.p() != first.p() {
            return Err(Error::ModulusMismatch {
                left: first.p().get(),
                right: part.p().get(),
            });
        }
        coords.extend_from_slice(part.coords());
    }
    Ok(ZpVec {
        p: first.p(),
        coords,
    })
}

/// A borrowed window onto a run of vectors: the unit the solvers recurse on.
#[derive(Copy, Clone)]
pub struct SeqSlice<'a> {
    p: PrimeModulus,
    n: usize,
    data: &'a [u16],
}

impl<'a> SeqSlice<'a> {
    #[inline]
    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len() / self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn row(&self, i: usize) -> &'a [u16] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn get(&self, i: usize) -> ZpVec {
        ZpVec {
            p: self.p,
            coords: self.row(i).to_vec(),
        }
    }

    /// Sub-window over vector positions `range` (half open).
    pub fn window(&self, start: usize, len: usize) -> SeqSlice<'a> {
        SeqSlice {
            p: self.p,
            n: self.n,
            data: &self.data[start * self.n..(start + len) * self.n],
        }
    }
}

/// An owned, ordered sequence of vectors from one Z_p^n.
///
/// May be empty; every vector has the same dimension `n >= 1`. Indexing is
/// zero based everywhere, including in serialized certificates.
#[derive(Clone, PartialEq, Eq)]
pub struct VecSequence {
    p: PrimeModulus,
    n: usize,
    data: Vec<u16>,
}

impl VecSequence {
    pub fn empty(p: PrimeModulus, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyVector);
        }
        Ok(VecSequence {
            p,
            n,
            data: Vec::new(),
        })
    }

    pub fn from_rows(p: PrimeModulus, n: usize, rows: &[Vec<u16>]) -> Result<Self> {
        let mut seq = VecSequence::empty(p, n)?;
        for row in rows {
            seq.push_row(row)?;
        }
        Ok(seq)
    }

    pub fn push(&mut self, v: &ZpVec) -> Result<()> {
        if v.p() != self.p {
            return Err(Error::ModulusMismatch {
                left: self.p.get(),
                right: v.p().get(),
            });
        }
        self.push_row(v.coords())
    }

    pub fn push_row(&mut self, row: &[u16]) -> Result<()> {
        if row.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: row.len(),
            });
        }
        for &c in row {
            if c >= self.p.get() {
                return Err(Error::ResidueRange {
                    value: c as u32,
                    p: self.p.get(),
                });
            }
        }
        self.data.extend_from_slice(row);
        Ok(())
    }

    /// Append storage for `extra` vectors and return the writable tail.
    /// Callers must fill it with reduced residues.
    pub(crate) fn push_raw(&mut self, extra: usize) -> &mut [u16] {
        let old = self.data.len();
        self.data.resize(old + extra * self.n, 0);
        &mut self.data[old..]
    }

    #[inline]
    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len() / self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u16] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn get(&self, i: usize) -> ZpVec {
        ZpVec {
            p: self.p,
            coords: self.row(i).to_vec(),
        }
    }

    #[inline]
    pub fn as_slice(&self) -> SeqSlice<'_> {
        SeqSlice {
            p: self.p,
            n: self.n,
            data: &self.data,
        }
    }

    pub fn window(&self, start: usize, len: usize) -> SeqSlice<'_> {
        self.as_slice().window(start, len)
    }
}

impl fmt::Debug for VecSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "VecSequence(p={}, n={}, len={})",
            self.p,
            self.n,
            self.len()
        )
    }
}

/// Parse a sequence from the line-oriented text form.
///
/// The first non-empty line is the header `p n`; every later non-empty line
/// holds exactly `n` residues separated by whitespace. Line order defines
/// index order. A file that ends right after the header is the empty
/// sequence.
pub fn read_sequence<R: BufRead>(reader: R) -> Result<VecSequence> {
    let mut lines = reader.lines().enumerate();
    let (header_line, header) = loop {
        match lines.next() {
            Some((idx, line)) => {
                let line = line.map_err(|e| Error::Parse {
                    line: idx + 1,
                    msg: e.to_string(),
                })?;
                if !line.trim().is_empty() {
                    break (idx + 1, line);
                }
            }
            None => {
                return Err(Error::Parse {
                    line: 1,
                    msg: "missing header".into(),
                })
            }
        }
    };

    let mut parts = header.split_whitespace();
    let p: u16 = parse_token(parts.next(), header_line, "modulus")?;
    let n: usize = parse_token(parts.next(), header_line, "dimension")?;
    if parts.next().is_some() {
        return Err(Error::Parse {
            line: header_line,
            msg: "header must be exactly `p n`".into(),
        });
    }
    let p = PrimeModulus::new(p)?;
    if n == 0 {
        return Err(Error::EmptyVector);
    }

    let mut seq = VecSequence::empty(p, n)?;
    for (idx, line) in lines {
        let line = line.map_err(|e| Error::Parse {
            line: idx + 1,
            msg: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::with_capacity(n);
        for tok in line.split_whitespace() {
            let value: u16 = tok.parse().map_err(|_| Error::Parse {
                line: idx + 1,
                msg: format!("bad residue `{tok}`"),
            })?;
            row.push(value);
        }
        if row.len() != n {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("expected {n} residues, found {}", row.len()),
            });
        }
        seq.push_row(&row).map_err(|e| Error::Parse {
            line: idx + 1,
            msg: e.to_string(),
        })?;
    }
    Ok(seq)
}

/// Inverse of [`read_sequence`]; reading the output back yields an equal
/// sequence.
pub fn write_sequence<W: Write>(seq: &VecSequence, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{} {}", seq.p(), seq.dim())?;
    for i in 0..seq.len() {
        let row = seq.row(i);
        let mut line = String::with_capacity(row.len() * 3);
        for (k, c) in row.iter().enumerate() {
            if k > 0 {
                line.push(' ');
            }
            line.push_str(&c.to_string());
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn parse_token<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing {what}"),
    })?
    .parse()
    .map_err(|_| Error::Parse {
        line,
        msg: format!("bad {what}"),
    })
}
