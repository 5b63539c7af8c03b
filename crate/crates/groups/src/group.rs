//! Finite group models with dense element ids.
//!
//! A `Group` enumerates its elements as mixed-radix coordinate vectors and
//! addresses them by dense ids `0..order`. Construction verifies the axioms:
//! identity and inverses exhaustively up to order 512, associativity
//! exhaustively up to order 64 and by Light's test against the generating set
//! up to order 512, and the declared generators must generate every element.
//! Multiplication is table-backed for orders up to 512.

use std::rc::Rc;

use crate::error::{Error, Result};
use crate::num::{is_prime, is_prime_power};

/// Hard cap on the number of elements a group may enumerate.
pub const MAX_GROUP_ORDER: usize = 100_000;
/// Hard cap on explicit multiplication tables (inputs, quotients, subgroup copies).
pub const MAX_TABLE_ORDER: usize = 512;
const FULL_ASSOC_ORDER: usize = 64;
const FULL_AXIOM_ORDER: usize = 512;

/// Dense element id within a fixed group.
pub type ElemId = u32;
/// Shared handle to an immutable group.
pub type GroupRef = Rc<Group>;

#[derive(Clone, Debug)]
enum Backend {
    Abelian { cycles: Vec<u16> },
    Heisenberg { p: u16 },
    Unitriangular4 { p: u16 },
    Dihedral { half: u16 },
    Product { left: Box<Backend>, right: Box<Backend>, split: usize },
    Table { mul: Vec<u32>, order: usize, identity: u32 },
}

impl Backend {
    fn push_ranges(&self, out: &mut Vec<u32>) {
        match self {
            Backend::Abelian { cycles } => out.extend(cycles.iter().map(|&c| c as u32)),
            Backend::Heisenberg { p } => out.extend([*p as u32; 3]),
            Backend::Unitriangular4 { p } => out.extend([*p as u32; 6]),
            Backend::Dihedral { half } => out.extend([*half as u32, 2]),
            Backend::Product { left, right, .. } => {
                left.push_ranges(out);
                right.push_ranges(out);
            }
            Backend::Table { order, .. } => out.push(*order as u32),
        }
    }

    fn identity_repr(&self, out: &mut Vec<u16>) {
        match self {
            Backend::Abelian { cycles } => out.extend(std::iter::repeat_n(0, cycles.len())),
            Backend::Heisenberg { .. } => out.extend([0; 3]),
            Backend::Unitriangular4 { .. } => out.extend([0; 6]),
            Backend::Dihedral { .. } => out.extend([0; 2]),
            Backend::Product { left, right, .. } => {
                left.identity_repr(out);
                right.identity_repr(out);
            }
            Backend::Table { identity, .. } => out.push(*identity as u16),
        }
    }

    fn compose(&self, a: &[u16], b: &[u16], out: &mut Vec<u16>) {
        match self {
            Backend::Abelian { cycles } => {
                for (i, &c) in cycles.iter().enumerate() {
                    out.push(((a[i] as u32 + b[i] as u32) % c as u32) as u16);
                }
            }
            Backend::Heisenberg { p } => {
                let m = *p as u64;
                let (a0, a1, a2) = (a[0] as u64, a[1] as u64, a[2] as u64);
                let (b0, b1, b2) = (b[0] as u64, b[1] as u64, b[2] as u64);
                out.push(((a0 + b0) % m) as u16);
                out.push(((a1 + b1) % m) as u16);
                out.push(((a2 + b2 + a0 * b1) % m) as u16);
            }
            Backend::Unitriangular4 { p } => {
                // Coordinates above the diagonal in row order:
                // (x12, x13, x14, x23, x24, x34).
                let m = *p as u64;
                let v = |x: &[u16], i: usize| x[i] as u64;
                let (a12, a13, a14, a23, a24, a34) =
                    (v(a, 0), v(a, 1), v(a, 2), v(a, 3), v(a, 4), v(a, 5));
                let (b12, b13, b14, b23, b24, b34) =
                    (v(b, 0), v(b, 1), v(b, 2), v(b, 3), v(b, 4), v(b, 5));
                out.push(((a12 + b12) % m) as u16);
                out.push(((a13 + b13 + a12 * b23) % m) as u16);
                out.push(((a14 + b14 + a12 * b24 + a13 * b34) % m) as u16);
                out.push(((a23 + b23) % m) as u16);
                out.push(((a24 + b24 + a23 * b34) % m) as u16);
                out.push(((a34 + b34) % m) as u16);
            }
            Backend::Dihedral { half } => {
                let m = *half as u32;
                let (r1, s1) = (a[0] as u32, a[1] as u32);
                let (r2, s2) = (b[0] as u32, b[1] as u32);
                let r = if s1 == 0 { (r1 + r2) % m } else { (r1 + m - r2) % m };
                out.push(r as u16);
                out.push(((s1 + s2) % 2) as u16);
            }
            Backend::Product { left, right, split } => {
                left.compose(&a[..*split], &b[..*split], out);
                right.compose(&a[*split..], &b[*split..], out);
            }
            Backend::Table { mul, order, .. } => {
                out.push(mul[a[0] as usize * order + b[0] as usize] as u16);
            }
        }
    }

    fn invert(&self, a: &[u16], out: &mut Vec<u16>) {
        match self {
            Backend::Abelian { cycles } => {
                for (i, &c) in cycles.iter().enumerate() {
                    out.push(((c as u32 - a[i] as u32) % c as u32) as u16);
                }
            }
            Backend::Heisenberg { p } => {
                let m = *p as u64;
                let (a0, a1, a2) = (a[0] as u64, a[1] as u64, a[2] as u64);
                out.push(((m - a0) % m) as u16);
                out.push(((m - a1) % m) as u16);
                out.push(((a0 * a1 % m + m - a2) % m) as u16);
            }
            Backend::Unitriangular4 { p } => {
                // (I + N)^(-1) = I - N + N^2 - N^3 for strictly upper N.
                let m = *p as i64;
                let v = |i: usize| a[i] as i64;
                let (a12, a13, a14, a23, a24, a34) = (v(0), v(1), v(2), v(3), v(4), v(5));
                let i12 = -a12;
                let i13 = -a13 + a12 * a23;
                let i14 = -a14 + a12 * a24 + a13 * a34 - a12 * a23 * a34;
                let i23 = -a23;
                let i24 = -a24 + a23 * a34;
                let i34 = -a34;
                for x in [i12, i13, i14, i23, i24, i34] {
                    out.push(x.rem_euclid(m) as u16);
                }
            }
            Backend::Dihedral { half } => {
                let m = *half as u32;
                let (r, s) = (a[0] as u32, a[1] as u32);
                if s == 0 {
                    out.push(((m - r) % m) as u16);
                    out.push(0);
                } else {
                    out.push(r as u16);
                    out.push(1);
                }
            }
            Backend::Product { left, right, split } => {
                left.invert(&a[..*split], out);
                right.invert(&a[*split..], out);
            }
            Backend::Table { mul, order, identity } => {
                let row = a[0] as usize * order;
                let y = (0..*order)
                    .find(|&y| mul[row + y] == *identity)
                    .expect("Latin row contains the identity");
                out.push(y as u16);
            }
        }
    }
}

/// A finite group with elements addressed by dense ids.
#[derive(Debug)]
pub struct Group {
    name: String,
    backend: Backend,
    ranges: Vec<u32>,
    strides: Vec<usize>,
    order: usize,
    identity: ElemId,
    generators: Vec<ElemId>,
    inverse: Vec<ElemId>,
    table: Option<Vec<ElemId>>,
}

impl Group {
    fn build(name: String, backend: Backend, generators: Vec<ElemId>) -> Result<GroupRef> {
        let mut ranges = Vec::new();
        backend.push_ranges(&mut ranges);
        let mut order = 1usize;
        for &r in &ranges {
            if r == 0 {
                return Err(Error::BadTable("empty coordinate range".into()));
            }
            order = order
                .checked_mul(r as usize)
                .filter(|&o| o <= MAX_GROUP_ORDER)
                .ok_or(Error::OrderBudget(MAX_GROUP_ORDER))?;
        }
        let mut strides = vec![1usize; ranges.len()];
        for i in (0..ranges.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * ranges[i + 1] as usize;
        }
        for &g in &generators {
            if g as usize >= order {
                return Err(Error::NoSuchElement(g));
            }
        }

        let mut g = Group {
            name,
            backend,
            ranges,
            strides,
            order,
            identity: 0,
            generators,
            inverse: Vec::new(),
            table: None,
        };
        let mut id_repr = Vec::new();
        g.backend.identity_repr(&mut id_repr);
        g.identity = g.encode(&id_repr);

        if order <= MAX_TABLE_ORDER {
            let mut table = vec![0u32; order * order];
            for a in 0..order as u32 {
                for b in 0..order as u32 {
                    table[a as usize * order + b as usize] = g.raw_mul(a, b);
                }
            }
            g.table = Some(table);
        }

        // Identity law.
        let e = g.identity;
        if order <= FULL_AXIOM_ORDER {
            for x in 0..order as u32 {
                if g.mul(e, x) != x || g.mul(x, e) != x {
                    return Err(Error::AxiomFailure(format!("{x} is moved by the identity")));
                }
            }
        } else {
            for &x in &g.generators {
                if g.mul(e, x) != x || g.mul(x, e) != x {
                    return Err(Error::AxiomFailure(format!("{x} is moved by the identity")));
                }
            }
        }

        // Two-sided inverses for every element.
        let mut inverse = Vec::with_capacity(order);
        for x in 0..order as u32 {
            let mut out = Vec::new();
            g.backend.invert(&g.decode(x), &mut out);
            let y = g.encode(&out);
            if g.mul(x, y) != e || g.mul(y, x) != e {
                return Err(Error::AxiomFailure(format!("{x} has no two-sided inverse")));
            }
            inverse.push(y);
        }
        g.inverse = inverse;

        // Generation before associativity: Light's test is only conclusive
        // over a generating set.
        let reached = bfs_closure_raw(&g, &g.generators);
        if reached.len() != order {
            return Err(Error::AxiomFailure(format!(
                "generators reach {} of {} elements",
                reached.len(),
                order
            )));
        }

        // Associativity.
        if order <= FULL_ASSOC_ORDER {
            for a in 0..order as u32 {
                for b in 0..order as u32 {
                    let ab = g.mul(a, b);
                    for c in 0..order as u32 {
                        if g.mul(ab, c) != g.mul(a, g.mul(b, c)) {
                            return Err(Error::AxiomFailure(format!(
                                "associativity fails on ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else if order <= FULL_AXIOM_ORDER {
            for &t in &g.generators {
                for a in 0..order as u32 {
                    let at = g.mul(a, t);
                    for b in 0..order as u32 {
                        if g.mul(at, b) != g.mul(a, g.mul(t, b)) {
                            return Err(Error::AxiomFailure(format!(
                                "associativity fails on ({a}, {t}, {b})"
                            )));
                        }
                    }
                }
            }
        }

        Ok(Rc::new(g))
    }

    fn decode(&self, id: ElemId) -> Vec<u16> {
        let mut rest = id as usize;
        let mut out = Vec::with_capacity(self.ranges.len());
        for &stride in &self.strides {
            out.push((rest / stride) as u16);
            rest %= stride;
        }
        out
    }

    fn encode(&self, repr: &[u16]) -> ElemId {
        repr.iter()
            .zip(&self.strides)
            .map(|(&d, &stride)| d as usize * stride)
            .sum::<usize>() as ElemId
    }

    fn raw_mul(&self, a: ElemId, b: ElemId) -> ElemId {
        let mut out = Vec::with_capacity(self.ranges.len());
        self.backend.compose(&self.decode(a), &self.decode(b), &mut out);
        self.encode(&out)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> ElemId {
        self.identity
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.generators
    }

    /// All element ids in ascending order.
    pub fn elements(&self) -> std::ops::Range<ElemId> {
        0..self.order as ElemId
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        debug_assert!((a as usize) < self.order && (b as usize) < self.order);
        match &self.table {
            Some(t) => t[a as usize * self.order + b as usize],
            None => self.raw_mul(a, b),
        }
    }

    pub fn inv(&self, a: ElemId) -> ElemId {
        self.inverse[a as usize]
    }

    /// `g` raised to an integer power, negative exponents through the inverse.
    pub fn pow(&self, g: ElemId, e: i64) -> ElemId {
        let mut base = if e < 0 { self.inv(g) } else { g };
        let mut exp = e.unsigned_abs();
        let mut acc = self.identity;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Least positive m with g^m = identity, found over the divisors of the
    /// group order.
    pub fn element_order(&self, g: ElemId) -> usize {
        for d in divisors(self.order) {
            if self.pow(g, d as i64) == self.identity {
                return d;
            }
        }
        unreachable!("element order divides the group order");
    }

    /// g x g^(-1).
    pub fn conj(&self, g: ElemId, x: ElemId) -> ElemId {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// a b a^(-1) b^(-1).
    pub fn commutator(&self, a: ElemId, b: ElemId) -> ElemId {
        self.mul(self.mul(self.mul(a, b), self.inv(a)), self.inv(b))
    }

    /// Coordinate vector of an element.
    pub fn repr(&self, g: ElemId) -> Vec<u16> {
        self.decode(g)
    }

    /// Element id for a coordinate vector.
    pub fn element_from_coords(&self, coords: &[u16]) -> Result<ElemId> {
        if coords.len() != self.ranges.len() {
            return Err(Error::BadCoordinates(format!(
                "expected {} coordinates, got {}",
                self.ranges.len(),
                coords.len()
            )));
        }
        for (i, &d) in coords.iter().enumerate() {
            if d as u32 >= self.ranges[i] {
                return Err(Error::BadCoordinates(format!(
                    "coordinate {i} is {d}, range is {}",
                    self.ranges[i]
                )));
            }
        }
        Ok(self.encode(coords))
    }

    /// Human-readable coordinates, e.g. "(1,0,2)".
    pub fn describe(&self, g: ElemId) -> String {
        let parts: Vec<String> = self.decode(g).iter().map(|d| d.to_string()).collect();
        format!("({})", parts.join(","))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// Sorted closure of a generating set under right multiplication.
pub(crate) fn bfs_closure_raw(g: &Group, gens: &[ElemId]) -> Vec<ElemId> {
    let mut seen = vec![false; g.order()];
    seen[g.identity() as usize] = true;
    let mut queue = std::collections::VecDeque::from([g.identity()]);
    let mut out = vec![g.identity()];
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y as usize] {
                seen[y as usize] = true;
                queue.push_back(y);
                out.push(y);
            }
        }
    }
    out.sort_unstable();
    out
}

fn divisors(n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 1usize;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Direct product of prime-power cyclic groups, one coordinate per cycle.
pub fn make_abelian(cycles: &[u32]) -> Result<GroupRef> {
    for &c in cycles {
        if !(2..=65_535).contains(&c) || !is_prime_power(c) {
            return Err(Error::NotPrimePower(c));
        }
    }
    let name = if cycles.is_empty() {
        "z1".to_string()
    } else {
        cycles.iter().map(|c| format!("z{c}")).collect::<Vec<_>>().join("x")
    };
    let backend = Backend::Abelian { cycles: cycles.iter().map(|&c| c as u16).collect() };
    let mut stride = 1usize;
    let mut gens = vec![0u32; cycles.len()];
    for i in (0..cycles.len()).rev() {
        gens[i] = stride as u32;
        stride *= cycles[i] as usize;
    }
    Group::build(name, backend, gens)
}

/// Upper unitriangular 3x3 matrices over Z_p; order p^3, class 2 for p odd.
pub fn make_heisenberg(p: u32) -> Result<GroupRef> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let backend = Backend::Heisenberg { p: p as u16 };
    let gens = vec![p * p, p];
    Group::build(format!("heisenberg:{p}"), backend, gens)
}

/// Upper unitriangular 4x4 matrices over Z_p; order p^6, class 3.
pub fn make_unitriangular4(p: u32) -> Result<GroupRef> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let backend = Backend::Unitriangular4 { p: p as u16 };
    let p = p as usize;
    let gens = vec![(p * p * p * p * p) as u32, (p * p) as u32, 1];
    Group::build(format!("ut4:{}", p), backend, gens)
}

/// Dihedral group of the given order, which must be a power of two >= 4.
/// Elements are (rotation, flip) pairs.
pub fn make_dihedral(order: u32) -> Result<GroupRef> {
    if order < 4 || !order.is_power_of_two() {
        return Err(Error::BadDihedralOrder(order));
    }
    let backend = Backend::Dihedral { half: (order / 2) as u16 };
    Group::build(format!("d{order}"), backend, vec![2, 1])
}

/// Direct product; left coordinates are most significant.
pub fn direct_product(a: &GroupRef, b: &GroupRef) -> Result<GroupRef> {
    let backend = Backend::Product {
        left: Box::new(a.backend.clone()),
        right: Box::new(b.backend.clone()),
        split: a.ranges.len(),
    };
    let mut gens: Vec<ElemId> =
        a.generators.iter().map(|&g| g * b.order as u32).collect();
    gens.extend(&b.generators);
    Group::build(format!("{}x{}", a.name, b.name), backend, gens)
}

/// Group from an explicit row-major multiplication table.
///
/// The table is checked to be a Latin square with a two-sided identity before
/// the shared construction path re-verifies inverses, associativity, and
/// generation.
pub fn from_table(order: usize, mul: Vec<u32>, gens: Vec<ElemId>, name: &str) -> Result<GroupRef> {
    if order == 0 {
        return Err(Error::BadTable("empty table".into()));
    }
    if order > MAX_TABLE_ORDER {
        return Err(Error::OrderBudget(MAX_TABLE_ORDER));
    }
    if mul.len() != order * order {
        return Err(Error::BadTable(format!(
            "expected {} entries, got {}",
            order * order,
            mul.len()
        )));
    }
    for r in 0..order {
        let mut seen_row = vec![false; order];
        let mut seen_col = vec![false; order];
        for c in 0..order {
            let v = mul[r * order + c] as usize;
            let w = mul[c * order + r] as usize;
            if v >= order || w >= order {
                return Err(Error::BadTable("entry out of range".into()));
            }
            if seen_row[v] {
                return Err(Error::BadTable(format!("row {r} repeats {v}")));
            }
            if seen_col[w] {
                return Err(Error::BadTable(format!("column {r} repeats {w}")));
            }
            seen_row[v] = true;
            seen_col[w] = true;
        }
    }
    let identity = (0..order)
        .find(|&e| (0..order).all(|x| mul[e * order + x] == x as u32 && mul[x * order + e] == x as u32))
        .ok_or_else(|| Error::BadTable("no two-sided identity".into()))?;
    let backend = Backend::Table { mul, order, identity: identity as u32 };
    Group::build(name.to_string(), backend, gens)
}

/// Parse the textual table format: a header line `order k`, then k*k
/// whitespace-separated entries in row-major order, then a line
/// `generators g1 g2 ...`.
pub fn read_table(text: &str, name: &str) -> Result<GroupRef> {
    let mut tokens: Vec<(usize, &str)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            tokens.push((i + 1, tok));
        }
    }
    let mut pos = 0usize;
    let mut expect = |what: &str| -> Result<(usize, &str)> {
        let t = tokens.get(pos).copied().ok_or_else(|| Error::Parse {
            line: tokens.last().map_or(1, |t| t.0),
            msg: format!("unexpected end of input, expected {what}"),
        })?;
        pos += 1;
        Ok(t)
    };
    let (line, kw) = expect("the keyword 'order'")?;
    if kw != "order" {
        return Err(Error::Parse { line, msg: format!("expected 'order', got '{kw}'") });
    }
    let (line, k) = expect("the table order")?;
    let order: usize = k
        .parse()
        .map_err(|_| Error::Parse { line, msg: format!("bad order '{k}'") })?;
    if order == 0 || order > MAX_TABLE_ORDER {
        return Err(Error::Parse { line, msg: format!("order {order} out of range") });
    }
    let mut mul = Vec::with_capacity(order * order);
    for _ in 0..order * order {
        let (line, t) = expect("a table entry")?;
        let v: u32 = t
            .parse()
            .map_err(|_| Error::Parse { line, msg: format!("bad table entry '{t}'") })?;
        mul.push(v);
    }
    let (line, kw) = expect("the keyword 'generators'")?;
    if kw != "generators" {
        return Err(Error::Parse { line, msg: format!("expected 'generators', got '{kw}'") });
    }
    let mut gens = Vec::new();
    while pos < tokens.len() {
        let (line, t) = tokens[pos];
        pos += 1;
        let v: u32 = t
            .parse()
            .map_err(|_| Error::Parse { line, msg: format!("bad generator id '{t}'") })?;
        gens.push(v);
    }
    from_table(order, mul, gens, name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_z6_structure() {
        let g = make_abelian(&[2, 3]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.name(), "z2xz3");
        // Ranges (2,3): id = 3a + b for coordinates (a, b).
        assert_eq!(g.element_from_coords(&[1, 0]).unwrap(), 3);
        assert_eq!(g.element_order(3), 2);
        assert_eq!(g.element_order(1), 3);
        assert_eq!(g.element_order(4), 6);
        assert!(g.is_abelian());
        assert_eq!(g.describe(4), "(1,1)");
    }

    #[test]
    fn abelian_rejects_non_prime_power_cycles() {
        assert!(matches!(make_abelian(&[6]), Err(Error::NotPrimePower(6))));
        assert!(matches!(make_abelian(&[2, 12]), Err(Error::NotPrimePower(12))));
        assert!(matches!(make_abelian(&[1]), Err(Error::NotPrimePower(1))));
        assert!(make_abelian(&[4]).is_ok());
    }

    #[test]
    fn order_budget_is_enforced() {
        let cycles = [2u32; 17];
        assert!(matches!(make_abelian(&cycles), Err(Error::OrderBudget(_))));
        assert!(matches!(make_heisenberg(47), Err(Error::OrderBudget(_))));
        assert!(matches!(make_unitriangular4(7), Err(Error::OrderBudget(_))));
    }

    #[test]
    fn heisenberg_structure() {
        let g = make_heisenberg(3).unwrap();
        assert_eq!(g.order(), 27);
        let x = g.element_from_coords(&[1, 0, 0]).unwrap();
        let y = g.element_from_coords(&[0, 1, 0]).unwrap();
        let z = g.element_from_coords(&[0, 0, 1]).unwrap();
        assert_eq!(g.generators(), [x, y]);
        assert_eq!(g.commutator(x, y), z);
        for e in g.elements() {
            let o = g.element_order(e);
            assert!(o == 1 || o == 3, "element {e} has order {o}");
        }
        assert!(matches!(make_heisenberg(4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn unitriangular_inverse_formula() {
        for p in [2u32, 3] {
            let g = make_unitriangular4(p).unwrap();
            assert_eq!(g.order(), (p as usize).pow(6));
            // Construction already verifies two-sided inverses exhaustively;
            // spot-check a conjugation identity on top.
            let a = g.elements().nth(g.order() / 2).unwrap();
            let b = g.elements().nth(7).unwrap();
            assert_eq!(g.inv(g.mul(a, b)), g.mul(g.inv(b), g.inv(a)));
        }
    }

    #[test]
    fn dihedral_relations() {
        let g = make_dihedral(8).unwrap();
        assert_eq!(g.order(), 8);
        let r = 2;
        let s = 1;
        assert_eq!(g.generators(), [r, s]);
        assert_eq!(g.element_order(r), 4);
        assert_eq!(g.element_order(s), 2);
        // s r s^(-1) = r^(-1)
        assert_eq!(g.conj(s, r), g.inv(r));
        assert!(matches!(make_dihedral(6), Err(Error::BadDihedralOrder(6))));
        assert!(matches!(make_dihedral(2), Err(Error::BadDihedralOrder(2))));
    }

    #[test]
    fn direct_product_matches_componentwise_orders() {
        let a = make_abelian(&[2]).unwrap();
        let b = make_abelian(&[3]).unwrap();
        let p = direct_product(&a, &b).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.name(), "z2xz3");
        let mut orders: Vec<usize> = p.elements().map(|e| p.element_order(e)).collect();
        orders.sort_unstable();
        assert_eq!(orders, [1, 2, 3, 3, 6, 6]);
    }

    fn cyclic_table(n: usize) -> Vec<u32> {
        let mut t = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                t[a * n + b] = ((a + b) % n) as u32;
            }
        }
        t
    }

    #[test]
    fn table_group_roundtrip() {
        let g = from_table(5, cyclic_table(5), vec![1], "c5").unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.element_order(1), 5);
        assert_eq!(g.inv(2), 3);
    }

    #[test]
    fn table_light_associativity_path() {
        // Order 70 exceeds the exhaustive-associativity cap, so Light's test
        // over the generator runs instead.
        let g = from_table(70, cyclic_table(70), vec![1], "c70").unwrap();
        assert_eq!(g.element_order(1), 70);
    }

    #[test]
    fn table_rejections() {
        let mut bad = cyclic_table(4);
        bad.swap(1, 2);
        assert!(matches!(from_table(4, bad, vec![1], "x"), Err(Error::BadTable(_))));

        let no_gen = from_table(4, cyclic_table(4), vec![2], "x");
        assert!(matches!(no_gen, Err(Error::AxiomFailure(_))));

        let short = from_table(3, vec![0; 8], vec![1], "x");
        assert!(matches!(short, Err(Error::BadTable(_))));
    }

    /// Chein double of a group: elements (g, 0) and (g, 1) with the twisted
    /// product. Nonassociative whenever the base group is nonabelian, while
    /// keeping identity, two-sided inverses, and the Latin property.
    fn chein_double(base: &[Vec<usize>]) -> Vec<u32> {
        let n = base.len();
        let inv = |g: usize| (0..n).find(|&h| base[g][h] == 0).unwrap();
        let order = 2 * n;
        let mut t = vec![0u32; order * order];
        for g in 0..n {
            for h in 0..n {
                t[g * order + h] = base[g][h] as u32;
                t[g * order + (n + h)] = (n + base[h][g]) as u32;
                t[(n + g) * order + h] = (n + base[g][inv(h)]) as u32;
                t[(n + g) * order + (n + h)] = base[inv(h)][g] as u32;
            }
        }
        t
    }

    fn s3_base() -> Vec<Vec<usize>> {
        let perms: [[usize; 3]; 6] =
            [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let compose = |a: [usize; 3], b: [usize; 3]| [a[b[0]], a[b[1]], a[b[2]]];
        (0..6)
            .map(|i| {
                (0..6)
                    .map(|j| {
                        let c = compose(perms[i], perms[j]);
                        perms.iter().position(|p| *p == c).unwrap()
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn nonassociative_loop_is_rejected_exhaustively() {
        // The Chein double of S3 has order 12, inside the full-associativity
        // range.
        let t = chein_double(&s3_base());
        let r = from_table(12, t, vec![1, 2, 6], "m12");
        match r {
            Err(Error::AxiomFailure(msg)) => assert!(msg.contains("assoc"), "{msg}"),
            other => panic!("expected an associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn nonassociative_loop_is_rejected_by_lights_test() {
        // Product of the order-12 loop with Z_7 lands in the Light's-test
        // range (order 84 > 64).
        let loop12 = chein_double(&s3_base());
        let order = 84;
        let mut t = vec![0u32; order * order];
        for a in 0..12 {
            for b in 0..12 {
                for x in 0..7u32 {
                    for y in 0..7u32 {
                        let row = (a as u32 * 7 + x) as usize;
                        let col = (b as u32 * 7 + y) as usize;
                        t[row * order + col] = loop12[a * 12 + b] * 7 + (x + y) % 7;
                    }
                }
            }
        }
        let r = from_table(order, t, vec![7, 14, 42, 1], "m12xz7");
        match r {
            Err(Error::AxiomFailure(msg)) => assert!(msg.contains("assoc"), "{msg}"),
            other => panic!("expected an associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn read_table_formats() {
        let text = "order 3\n0 1 2\n1 2 0\n2 0 1\ngenerators 1\n";
        let g = read_table(text, "c3").unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.element_order(1), 3);

        let with_comments = "# cyclic\norder 2\n0 1  # first row\n1 0\ngenerators 1\n";
        assert!(read_table(with_comments, "c2").is_ok());

        assert!(matches!(
            read_table("order x\n", "bad"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            read_table("order 2\n0 1 1 0\n", "bad"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            read_table("order 2\n0 1 1 0\ngenerators q\n", "bad"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn pow_handles_negative_exponents() {
        let g = make_abelian(&[5]).unwrap();
        assert_eq!(g.pow(2, 3), 1);
        assert_eq!(g.pow(2, -1), 3);
        assert_eq!(g.pow(2, 0), 0);
        assert_eq!(g.pow(2, -7), g.inv(g.pow(2, 7)));
    }

    #[test]
    fn element_coordinate_roundtrip() {
        let g = make_dihedral(16).unwrap();
        for e in g.elements() {
            let coords = g.repr(e);
            assert_eq!(g.element_from_coords(&coords).unwrap(), e);
        }
        assert!(g.element_from_coords(&[8, 0]).is_err());
        assert!(g.element_from_coords(&[0]).is_err());
    }
}
