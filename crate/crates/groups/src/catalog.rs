//! Named group constructors and the standard test catalog.
//!
//! `by_name` accepts short aliases ("d8", "q8", "z2^4") and a prefixed
//! grammar for the structured families: `heisenberg:p`, `ut4:p`,
//! `dihedral:N` with N a power of two, and `abelian:c1,c2,...` with each
//! cycle a prime power written as `n` or `p^e`.

use crate::error::{Error, Result};
use crate::group::{
    from_table, make_abelian, make_dihedral, make_heisenberg, make_unitriangular4, GroupRef,
};

/// The quaternion group of order 8. Ids are axis*2 + sign: 0..1 are +-1,
/// 2..3 are +-i, 4..5 are +-j, 6..7 are +-k. Generators i and j.
pub fn q8() -> GroupRef {
    // (sign, axis) product for the unit axes 1=i, 2=j, 3=k.
    let axis_mul = |a: usize, b: usize| -> (u32, usize) {
        match (a, b) {
            (0, _) => (0, b),
            (_, 0) => (0, a),
            _ if a == b => (1, 0),
            (1, 2) => (0, 3),
            (2, 3) => (0, 1),
            (3, 1) => (0, 2),
            (2, 1) => (1, 3),
            (3, 2) => (1, 1),
            (1, 3) => (1, 2),
            _ => unreachable!("axes are 0..4"),
        }
    };
    let mut table = vec![0u32; 64];
    for x in 0..8 {
        for y in 0..8 {
            let (sx, ax) = (x as u32 & 1, x / 2);
            let (sy, ay) = (y as u32 & 1, y / 2);
            let (sp, ap) = axis_mul(ax, ay);
            table[x * 8 + y] = (ap as u32) * 2 + (sx ^ sy ^ sp);
        }
    }
    from_table(8, table, vec![2, 4], "q8").expect("quaternion table is a group")
}

/// The symmetric group on three points, table-backed, ids in lexicographic
/// permutation order. Not nilpotent; used for error-path coverage.
pub fn s3() -> GroupRef {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut table = vec![0u32; 36];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            let c = [p[q[0]], p[q[1]], p[q[2]]];
            table[i * 6 + j] = perms.iter().position(|r| *r == c).unwrap() as u32;
        }
    }
    from_table(6, table, vec![2, 3], "s3").expect("permutation table is a group")
}

fn parse_pow(token: &str) -> Result<u32> {
    let bad = || Error::UnknownName(format!("bad integer token '{token}'"));
    if let Some((base, exp)) = token.split_once('^') {
        let b: u32 = base.parse().map_err(|_| bad())?;
        let e: u32 = exp.parse().map_err(|_| bad())?;
        b.checked_pow(e).ok_or_else(bad)
    } else {
        token.parse().map_err(|_| bad())
    }
}

/// Resolve a group name from the alias list or the prefixed grammar.
pub fn by_name(name: &str) -> Result<GroupRef> {
    match name {
        "z1" => return make_abelian(&[]),
        "z2" => return make_abelian(&[2]),
        "z3" => return make_abelian(&[3]),
        "z4" => return make_abelian(&[4]),
        "z6" => return make_abelian(&[2, 3]),
        "z8" => return make_abelian(&[8]),
        "z2xz2" => return make_abelian(&[2, 2]),
        "z4xz2" => return make_abelian(&[4, 2]),
        "z12xz2" => return make_abelian(&[4, 3, 2]),
        "z2^4" => return make_abelian(&[2, 2, 2, 2]),
        "z3^3" => return make_abelian(&[3, 3, 3]),
        "d8" => return make_dihedral(8),
        "d16" => return make_dihedral(16),
        "d32" => return make_dihedral(32),
        "q8" => return Ok(q8()),
        "s3" => return Ok(s3()),
        "heisenberg3" => return make_heisenberg(3),
        _ => {}
    }
    if let Some((family, arg)) = name.split_once(':') {
        return match family {
            "heisenberg" => make_heisenberg(parse_pow(arg)?),
            "ut4" => make_unitriangular4(parse_pow(arg)?),
            "dihedral" => make_dihedral(parse_pow(arg)?),
            "abelian" => {
                let cycles: Result<Vec<u32>> = arg.split(',').map(parse_pow).collect();
                make_abelian(&cycles?)
            }
            _ => Err(Error::UnknownName(name.to_string())),
        };
    }
    Err(Error::UnknownName(name.to_string()))
}

/// A named catalog group.
pub struct CatalogEntry {
    pub name: &'static str,
    pub group: GroupRef,
}

/// Nilpotent groups of order at most 64 exercised by the integration suites:
/// abelian groups across several shapes, three dihedral 2-groups, the
/// quaternion group, and the class-2 and class-3 structured families.
pub fn standard_catalog() -> Vec<CatalogEntry> {
    const NAMES: [&str; 15] = [
        "z2",
        "z4",
        "z2xz2",
        "z6",
        "z8",
        "z4xz2",
        "z2^4",
        "z12xz2",
        "z3^3",
        "d8",
        "d16",
        "d32",
        "q8",
        "heisenberg3",
        "ut4:2",
    ];
    NAMES
        .iter()
        .map(|&name| CatalogEntry {
            name,
            group: by_name(name).expect("catalog names resolve"),
        })
        .collect()
}
