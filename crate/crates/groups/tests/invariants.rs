//! Catalog-wide structural invariants, each checked against an independent
//! brute-force enumeration rather than the production algorithm.

use groups::{
    all_subgroups, center, chief_series, closure, derived_subgroup, elementary_quotient_reducer,
    is_elementary_abelian, lower_central_series, normalizer, prime_factors, standard_catalog,
    sylow, transversal, ElemId, GroupRef, Subgroup,
};
use proptest::prelude::*;

/// Closure of every elementwise commutator [x, y], x in G, y in T.
fn brute_commutator(g: &GroupRef, t: &Subgroup) -> Vec<ElemId> {
    let mut gens = Vec::new();
    for x in g.elements() {
        for &y in t.elements() {
            gens.push(g.commutator(x, y));
        }
    }
    gens.sort_unstable();
    gens.dedup();
    closure(g, &gens).unwrap()
}

#[test]
fn central_series_terms_match_brute_commutators() {
    for e in standard_catalog() {
        let lcs = lower_central_series(&e.group).unwrap();
        for w in lcs.terms().windows(2) {
            let brute = brute_commutator(&e.group, &w[0]);
            assert_eq!(
                w[1].elements(),
                brute.as_slice(),
                "central series step mismatch in {}",
                e.name
            );
        }
    }
}

#[test]
fn sylow_subgroups_are_the_p_power_order_elements() {
    for e in standard_catalog() {
        let g = &e.group;
        let mut product = 1usize;
        for (p, _) in prime_factors(g.order()) {
            let s = sylow(g, p).unwrap();
            let brute: Vec<ElemId> = g
                .elements()
                .filter(|&x| {
                    let mut o = g.element_order(x);
                    while o % p as usize == 0 {
                        o /= p as usize;
                    }
                    o == 1
                })
                .collect();
            assert_eq!(s.elements(), brute.as_slice(), "sylow({}, {p})", e.name);
            product *= s.order();
        }
        assert_eq!(product, g.order(), "sylow orders must multiply out in {}", e.name);
    }
}

#[test]
fn chief_series_has_prime_normal_steps_refining_the_central_series() {
    for e in standard_catalog() {
        let g = &e.group;
        let cs = chief_series(g).unwrap();
        let lcs = lower_central_series(g).unwrap();
        assert_eq!(cs.terms().first().unwrap().order(), g.order());
        assert!(cs.terms().last().unwrap().is_trivial());
        for (i, w) in cs.terms().windows(2).enumerate() {
            let ratio = w[0].order() / w[1].order();
            assert_eq!(ratio as u32, cs.primes()[i], "recorded prime in {}", e.name);
            // Normality in the whole group, by conjugating every element by
            // every element.
            for a in g.elements() {
                for &h in w[1].elements() {
                    assert!(
                        w[1].contains(g.conj(a, h)),
                        "chief term not normal in {}",
                        e.name
                    );
                }
            }
        }
        for t in lcs.terms() {
            assert!(
                cs.terms().iter().any(|c| c.same_as(t)),
                "central series term of order {} missing from chief series of {}",
                t.order(),
                e.name
            );
        }
    }
}

#[test]
fn normalizers_match_brute_enumeration_and_grow_strictly() {
    for e in standard_catalog() {
        let g = &e.group;
        let whole = Subgroup::whole(g);
        for h in all_subgroups(g) {
            let n = normalizer(&whole, &h).unwrap();
            let brute: Vec<ElemId> = g
                .elements()
                .filter(|&a| h.conjugate_by(a).same_as(&h))
                .collect();
            assert_eq!(n.elements(), brute.as_slice(), "normalizer in {}", e.name);
            assert!(h.is_normal_in(&n));
            if !h.is_whole() {
                assert!(
                    n.order() > h.order(),
                    "proper subgroup of {} with non-growing normalizer",
                    e.name
                );
            }
        }
    }
}

fn check_transversal_invariants(g: &GroupRef, l: &Subgroup) {
    let t = transversal(g, l).unwrap();
    assert_eq!(t.index() * l.order(), g.order());
    for x in g.elements() {
        let a = t.alpha(x);
        let b = t.beta(x);
        assert!(l.contains(b));
        assert_eq!(g.mul(a, b), x);
        for &w in l.elements() {
            assert_eq!(t.alpha(g.mul(x, w)), a, "alpha not constant on a coset");
        }
    }
}

#[test]
fn transversal_invariants_hold_for_every_subgroup_of_small_groups() {
    for e in standard_catalog() {
        let g = &e.group;
        if g.order() <= 27 {
            for l in all_subgroups(g) {
                check_transversal_invariants(g, &l);
            }
        } else {
            let mut picks = vec![
                Subgroup::trivial(g),
                center(g),
                derived_subgroup(g).unwrap(),
                Subgroup::whole(g),
            ];
            picks.extend(lower_central_series(g).unwrap().terms().iter().cloned());
            for l in picks {
                check_transversal_invariants(g, &l);
            }
        }
    }
}

#[test]
fn reducer_collects_exactly_the_low_order_layer() {
    for e in standard_catalog() {
        let g = &e.group;
        let factors = prime_factors(g.order());
        if factors.len() != 1 {
            continue;
        }
        let p = factors[0].0 as i64;
        let k = Subgroup::whole(g);
        for b in all_subgroups(g) {
            if !b.is_normal_in(&k) {
                continue;
            }
            let l = elementary_quotient_reducer(&k, &b).unwrap();
            assert!(b.is_subgroup_of(&l));
            // Every element whose p-th power falls into B must be in L.
            for x in g.elements() {
                if b.contains(g.pow(x, p)) {
                    assert!(l.contains(x), "(order p mod B) element missing in {}", e.name);
                }
            }
            // The fixed-point characterization is specific to abelian
            // quotients, the only shape the reduction loop ever feeds in.
            if derived_subgroup(g).unwrap().is_subgroup_of(&b) {
                assert_eq!(
                    l.same_as(&k),
                    is_elementary_abelian(&k, &b).unwrap(),
                    "reducer fixed point must coincide with elementary quotient in {}",
                    e.name
                );
            }
        }
    }
}

#[test]
fn closure_is_idempotent_across_the_catalog() {
    for e in standard_catalog() {
        let g = &e.group;
        for h in all_subgroups(g) {
            let once = closure(g, h.generators()).unwrap();
            let twice = closure(g, &once).unwrap();
            assert_eq!(once, twice);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_generating_sets_close_consistently(
        idx in 0usize..15,
        raw in proptest::collection::vec(0u32..64, 0..4),
    ) {
        let entries = standard_catalog();
        let g = &entries[idx].group;
        let gens: Vec<ElemId> = raw.iter().map(|&x| x % g.order() as u32).collect();
        let h = Subgroup::new(g, &gens).unwrap();
        prop_assert_eq!(g.order() % h.order(), 0);
        let again = Subgroup::new(g, h.elements()).unwrap();
        prop_assert_eq!(again.elements(), h.elements());
        for &a in h.elements() {
            prop_assert!(h.contains(g.inv(a)));
            for &b in h.generators() {
                prop_assert!(h.contains(g.mul(a, b)));
            }
        }
    }
}
