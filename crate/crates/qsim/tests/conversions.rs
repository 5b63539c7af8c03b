//! Catalog-wide exercises of the simulator: single-step rewrites checked at
//! 1e-12, composite conversions at 1e-9, against independently computed
//! targets.

use groups::{
    all_subgroups, by_name, is_central, prime_factors, standard_catalog, ElemId, GroupRef,
    Subgroup,
};
use qsim::{
    carry_subgroup, is_purification, iterate_conversion, main_conversion,
    phase_cancellation_defect, projector_defect, purification_defect, push_conversion,
    push_subgroup, restrict_conversion, standard_purification, subgroup_state, CentralBasis,
    ZeroSumSelector, PIPELINE_TOL, STEP_TOL,
};

fn sub(g: &GroupRef, gens: &[ElemId]) -> Subgroup {
    Subgroup::new(g, gens).unwrap()
}

/// Central subgroups isomorphic to a power of a single prime, the layers
/// the Fourier step accepts.
fn central_elementary(g: &GroupRef) -> Vec<Subgroup> {
    all_subgroups(g)
        .into_iter()
        .filter(|l| l.order() > 1 && is_central(l))
        .filter(|l| {
            let factors = prime_factors(l.order());
            factors.len() == 1
                && l.elements()
                    .iter()
                    .all(|&x| g.pow(x, factors[0].0 as i64) == g.identity())
        })
        .collect()
}

#[test]
fn subgroup_states_and_purifications_hold_across_the_catalog() {
    for entry in standard_catalog() {
        let g = &entry.group;
        for h in all_subgroups(g) {
            let rho = subgroup_state(g, &h).unwrap();
            let index = g.order() / h.order();
            assert!(
                projector_defect(&rho, index) <= STEP_TOL,
                "projector law fails for {} / order {}",
                entry.name,
                h.order()
            );
            let psi = standard_purification(g, &h).unwrap();
            let defect = purification_defect(&psi, g, &h).unwrap();
            assert!(
                defect <= STEP_TOL,
                "purification defect {defect} for {} / order {}",
                entry.name,
                h.order()
            );
        }
    }
}

#[test]
fn restriction_sweep_over_small_groups() {
    for entry in standard_catalog() {
        let g = &entry.group;
        if g.order() > 27 {
            continue;
        }
        for h in all_subgroups(g) {
            let psi = standard_purification(g, &h).unwrap();
            for l in all_subgroups(g) {
                let r = restrict_conversion(&psi, &l).unwrap();
                let meet = carry_subgroup(&r.group, &r.to_parent, &h.intersection(&l)).unwrap();
                let defect = purification_defect(&r.state, &r.group, &meet).unwrap();
                assert!(
                    defect <= STEP_TOL,
                    "restriction defect {defect} in {} with |H|={} |L|={}",
                    entry.name,
                    h.order(),
                    l.order()
                );
            }
        }
    }
}

#[test]
fn push_sweep_over_small_groups() {
    let whole_check = |g: &GroupRef, l: &Subgroup| l.is_normal_in(&Subgroup::whole(g));
    for entry in standard_catalog() {
        let g = &entry.group;
        if g.order() > 27 {
            continue;
        }
        for h in all_subgroups(g) {
            let psi = standard_purification(g, &h).unwrap();
            for l in all_subgroups(g) {
                if !l.is_subgroup_of(&h) || !whole_check(g, &l) {
                    continue;
                }
                let p = push_conversion(&psi, &l, &h).unwrap();
                let image = push_subgroup(&p.group, &p.proj, &h).unwrap();
                let defect = purification_defect(&p.state, &p.group, &image).unwrap();
                assert!(
                    defect <= STEP_TOL,
                    "push defect {defect} in {} with |H|={} |L|={}",
                    entry.name,
                    h.order(),
                    l.order()
                );
            }
        }
    }
}

#[test]
fn operator_identities_hold_for_every_central_layer() {
    for entry in standard_catalog() {
        let g = &entry.group;
        for l in central_elementary(g) {
            let basis = CentralBasis::new(g, &l).unwrap();
            let worst = basis
                .resolution_defect()
                .max(basis.family_defect())
                .max(basis.isometry_defect())
                .max(basis.left_translation_defect())
                .max(basis.right_translation_defect())
                .max(basis.eigenvalue_defect())
                .max(basis.coset_defect());
            assert!(
                worst <= STEP_TOL,
                "operator defect {worst} in {} for |L|={}",
                entry.name,
                l.order()
            );
        }
    }
}

#[test]
fn phase_cancellation_holds_on_representative_layers() {
    let cases = [
        ("z2xz2", vec![3u32], vec![2u32]),
        ("z4xz2", vec![2], vec![4]),
        ("d8", vec![1], vec![4]),
        ("q8", vec![2], vec![1]),
        ("heisenberg3", vec![], vec![]), // filled below: center layer
    ];
    for (name, hgens, lgens) in cases {
        let g = by_name(name).unwrap();
        let (h, l) = if name == "heisenberg3" {
            (sub(&g, &[g.generators()[0]]), groups::center(&g))
        } else {
            (sub(&g, &hgens), sub(&g, &lgens))
        };
        let basis = CentralBasis::new(&g, &l).unwrap();
        let sel = ZeroSumSelector::new(basis.p(), basis.n()).unwrap();
        let psi = standard_purification(&g, &h).unwrap();
        let defect = phase_cancellation_defect(&psi, &basis, &sel).unwrap();
        assert!(defect <= STEP_TOL, "{name}: phase defect {defect}");
    }
}

#[test]
fn main_conversion_triples_reach_their_targets() {
    // (group, H generators, L generators); targets verified inside
    // main_conversion and re-checked here.
    let triples: Vec<(&str, Vec<u32>, Vec<u32>)> = vec![
        ("z2xz2", vec![], vec![2]),
        ("z2xz2", vec![3], vec![2]),
        ("z4", vec![2], vec![2]),
        ("z4xz2", vec![2], vec![4]),
        ("z8", vec![4], vec![4]),
        ("d8", vec![1], vec![4]),
        ("q8", vec![2], vec![1]),
        ("d16", vec![2], vec![8]),
    ];
    for (name, hgens, lgens) in triples {
        let g = by_name(name).unwrap();
        let h = sub(&g, &hgens);
        let l = sub(&g, &lgens);
        let psi = standard_purification(&g, &h).unwrap();
        let conv = main_conversion(&psi, &h, &l).unwrap();
        assert!(
            conv.defect <= PIPELINE_TOL,
            "{name}: defect {}",
            conv.defect
        );
        assert_eq!(conv.group.order(), g.order() / l.order());
        let hl = h.join(&l);
        assert_eq!(conv.target.order(), hl.order() / l.order());
        assert!(
            is_purification(&conv.state, &conv.group, &conv.target, PIPELINE_TOL).unwrap()
        );
    }
}

#[test]
fn heisenberg_conversion_runs_factorized() {
    let g = by_name("heisenberg3").unwrap();
    let h = sub(&g, &[g.generators()[0]]);
    assert_eq!(h.order(), 3);
    let center = groups::center(&g);
    let psi = standard_purification(&g, &h).unwrap();
    let conv = main_conversion(&psi, &h, &center).unwrap();
    assert!(!conv.dense, "joint state is far past the dense budget");
    assert_eq!(conv.copies, 3);
    assert_eq!(conv.group.order(), 9);
    // H meets the center trivially, so HL/L keeps the order of H.
    assert_eq!(conv.target.order(), 3);
    assert!(conv.defect <= PIPELINE_TOL);
}

#[test]
fn iteration_on_heisenberg_matches_the_exact_quotient() {
    let g = by_name("heisenberg3").unwrap();
    let h = sub(&g, &[g.generators()[0]]);
    let psi = standard_purification(&g, &h).unwrap();
    let it = iterate_conversion(&psi, &h).unwrap();
    assert_eq!(it.steps.len(), 1);
    assert_eq!(it.total_copies(), 3);
    assert_eq!(it.group.order(), 9);
    assert_eq!(it.target.order(), 3);
    assert!(
        is_purification(&it.state, &it.group, &it.target, PIPELINE_TOL).unwrap()
    );
    // Measuring the quotient register agrees with the exact subgroup state
    // built directly on the quotient, to total-variation 1e-9.
    let probs = it.state.measurement_distribution();
    let exact = subgroup_state(&it.group, &it.target).unwrap();
    let tv: f64 = probs
        .iter()
        .zip(exact.diagonal())
        .map(|(p, q)| (p - q).abs())
        .sum::<f64>()
        / 2.0;
    assert!(tv <= PIPELINE_TOL, "total variation {tv}");
    // The composite projection collapses exactly the center's cosets.
    let center = groups::center(&g);
    for &z in center.elements() {
        for x in 0..g.order() as ElemId {
            assert_eq!(it.proj[x as usize], it.proj[g.mul(x, z) as usize]);
        }
    }
}

#[test]
fn unitriangular_iteration_descends_two_layers() {
    let g = by_name("ut4:2").unwrap();
    let h = sub(&g, &[g.generators()[0]]);
    let psi = standard_purification(&g, &h).unwrap();
    let it = iterate_conversion(&psi, &h).unwrap();
    assert_eq!(it.steps.len(), 2);
    assert_eq!(it.steps[0].layer_order, 2);
    assert_eq!(it.steps[1].layer_order, 4);
    assert_eq!(it.group.order(), 8);
    assert!(it.group.is_abelian());
    assert!(
        is_purification(&it.state, &it.group, &it.target, PIPELINE_TOL).unwrap()
    );
}
