//! Property suites for the structural invariants: subgroup closure, the
//! double-coset partition laws, orbit enumeration against naive closure,
//! the equivalence-relation laws of push-out isomorphism, and the genus
//! comparison inequalities.

use std::sync::Arc;

use proptest::prelude::*;

use amalgenus_core::amalgam::{
    count_classes_fixed_subgroups_ctx, is_double, pushout_isomorphic, FixedPairContext, PushOut,
};
use amalgenus_core::catalog;
use amalgenus_core::coset::{c2_orbits, double_cosets, generic_orbits, TwistedInvolution};
use amalgenus_core::genus::{derive_genus_input_ctx, genus_fixed, GenusOverrides, NplusPolicy};
use amalgenus_core::group::{enumerate_subgroups, FiniteGroup, Subgroup};
use amalgenus_core::morphism::{compose_tables, Morphism, MorphismKind};
use amalgenus_core::Limits;

fn limits() -> Limits {
    Limits::default()
}

fn small_groups() -> Vec<Arc<FiniteGroup>> {
    catalog::builtin_catalog()
        .into_iter()
        .filter(|e| e.group.order() <= 16)
        .map(|e| e.group)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_subgroups_are_closed_and_satisfy_lagrange(
        gi in 0usize..26,
        seeds in prop::collection::vec(0usize..16, 0..4),
    ) {
        let groups = small_groups();
        let g = &groups[gi % groups.len()];
        let seed: Vec<usize> = seeds.iter().map(|&s| s % g.order()).collect();
        let s = Subgroup::generated(g, &seed).unwrap();
        prop_assert!(s.contains(g.identity()));
        for &a in s.elements() {
            prop_assert!(s.contains(g.inv(a)));
            for &b in s.elements() {
                prop_assert!(s.contains(g.mul(a, b)));
            }
        }
        prop_assert_eq!(g.order() % s.len(), 0);
    }

    #[test]
    fn double_cosets_partition_the_carrier(
        gi in 0usize..26,
        sa in prop::collection::vec(0usize..16, 0..3),
        sb in prop::collection::vec(0usize..16, 0..3),
    ) {
        let groups = small_groups();
        let g = &groups[gi % groups.len()];
        let a = Subgroup::generated(g, &sa.iter().map(|&s| s % g.order()).collect::<Vec<_>>()).unwrap();
        let b = Subgroup::generated(g, &sb.iter().map(|&s| s % g.order()).collect::<Vec<_>>()).unwrap();
        let carrier: Vec<usize> = (0..g.order()).collect();
        let d = double_cosets(g, &a, &b, &carrier).unwrap();
        // Disjoint cover.
        let mut seen = vec![false; g.order()];
        for class in d.classes() {
            for &m in &class.members {
                prop_assert!(!seen[m]);
                seen[m] = true;
            }
        }
        prop_assert!(seen.iter().all(|&s| s));
        // Representative independence: recomputing from any member gives the
        // same member set.
        for class in d.classes() {
            for &m in &class.members {
                let mut rebuilt: Vec<usize> = Vec::new();
                for &x in a.elements() {
                    for &y in b.elements() {
                        rebuilt.push(g.mul(g.mul(x, m), y));
                    }
                }
                rebuilt.sort_unstable();
                rebuilt.dedup();
                prop_assert_eq!(&rebuilt, &class.members);
            }
        }
    }

    #[test]
    fn union_find_orbits_match_naive_closure(
        n in 1usize..40,
        swaps in prop::collection::vec((0usize..40, 0usize..40), 0..6),
    ) {
        // Actors built from transposition lists are always bijections.
        let actors: Vec<Vec<usize>> = swaps
            .chunks(2)
            .map(|chunk| {
                let mut p: Vec<usize> = (0..n).collect();
                for &(i, j) in chunk {
                    p.swap(i % n, j % n);
                }
                p
            })
            .collect();
        let fast = generic_orbits(n, &actors).unwrap();
        let mut seen = vec![false; n];
        let mut naive = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut frontier = vec![start];
            while let Some(x) = frontier.pop() {
                for a in &actors {
                    if !seen[a[x]] {
                        seen[a[x]] = true;
                        orbit.push(a[x]);
                        frontier.push(a[x]);
                    }
                }
            }
            orbit.sort_unstable();
            naive.push(orbit);
        }
        prop_assert_eq!(fast, naive);
    }
}

/// All push-outs `(embed1, embed2_mu . alpha)` over one fixed pair.
fn family_of(ctx: &FixedPairContext) -> Vec<PushOut> {
    (0..ctx.aut_h.len())
        .map(|a| ctx.pushout_for_alpha(a).unwrap())
        .collect()
}

#[test]
fn pushout_isomorphism_is_an_equivalence_relation() {
    let d8 = catalog::builtin_entry("d8").unwrap();
    let klein = d8.subgroups.get("klein").unwrap();
    let ctx = FixedPairContext::new(&d8.group, klein, &d8.group, klein, &limits()).unwrap();
    let family = family_of(&ctx);
    let n = family.len();
    assert_eq!(n, 6);
    let mut related = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            related[i][j] = pushout_isomorphic(&family[i], &family[j], true, &limits())
                .unwrap()
                .is_some();
        }
    }
    for i in 0..n {
        assert!(related[i][i], "reflexive");
        for j in 0..n {
            assert_eq!(related[i][j], related[j][i], "symmetric at ({i},{j})");
            for k in 0..n {
                if related[i][j] && related[j][k] {
                    assert!(related[i][k], "transitive at ({i},{j},{k})");
                }
            }
        }
    }
    // The number of equivalence classes equals the double-coset count.
    let mut class_of = vec![usize::MAX; n];
    let mut classes = 0;
    for i in 0..n {
        if class_of[i] == usize::MAX {
            for j in i..n {
                if related[i][j] {
                    class_of[j] = classes;
                }
            }
            classes += 1;
        }
    }
    let report = count_classes_fixed_subgroups_ctx(&ctx).unwrap();
    assert_eq!(classes, report.count);
    assert_eq!(classes, 2);
}

#[test]
fn symmetric_quotient_is_bounded_by_the_plain_count() {
    // For each symmetric catalog amalgam: quotient <= plain <= 2 * quotient.
    let entries = catalog::builtin_catalog();
    let groups: Vec<&catalog::CatalogEntry> =
        entries.iter().filter(|e| e.group.order() <= 10).collect();
    let mut checked = 0;
    for i in 0..groups.len() {
        for j in i..groups.len() {
            let (g1, g2) = (&groups[i].group, &groups[j].group);
            for h in
                amalgenus_core::amalgam::common_subgroup_types(g1, g2, 6, &limits()).unwrap()
            {
                let subs1 = amalgenus_core::amalgam::subgroup_images(&h, g1, &limits()).unwrap();
                let subs2 = amalgenus_core::amalgam::subgroup_images(&h, g2, &limits()).unwrap();
                let ctx = FixedPairContext::new(g1, &subs1[0], g2, &subs2[0], &limits()).unwrap();
                if ctx.gamma.is_none() {
                    continue;
                }
                let out_g = ctx.out_h.group();
                let carrier: Vec<usize> = (0..out_g.order()).collect();
                let decomp =
                    double_cosets(out_g, &ctx.ri2.tilde_image, &ctx.ri1.tilde_image, &carrier)
                        .unwrap();
                let tw = TwistedInvolution::new(out_g, ctx.xi_out.unwrap()).unwrap();
                let orbits = c2_orbits(&decomp, &tw).unwrap();
                let plain = decomp.class_count();
                let quotient = orbits.orbit_count;
                assert!(quotient <= plain && plain <= 2 * quotient);
                checked += 1;
            }
        }
    }
    assert!(checked > 10, "exercised {checked} symmetric instances");
}

#[test]
fn doubles_are_isomorphic_to_the_canonical_double() {
    // Wherever is_double holds, the push-out is isomorphic to the double
    // built from an independently chosen identification of the factors.
    let d8 = catalog::builtin_entry("d8").unwrap();
    let c4 = d8.subgroups.get("c4").unwrap();
    let ctx = FixedPairContext::new(&d8.group, c4, &d8.group, c4, &limits()).unwrap();
    let delta = amalgenus_core::morphism::find_isomorphism(&d8.group, &d8.group, &limits())
        .unwrap()
        .unwrap();
    for p in family_of(&ctx) {
        let gamma = is_double(&p, &limits()).unwrap();
        assert!(gamma.is_some());
        let canonical = PushOut::new(
            p.lambda().clone(),
            Morphism::new(
                Arc::clone(p.h()),
                Arc::clone(p.g2()),
                compose_tables(delta.map(), p.lambda().map()),
                MorphismKind::Injection,
            )
            .unwrap(),
        )
        .unwrap();
        assert!(pushout_isomorphic(&p, &canonical, true, &limits())
            .unwrap()
            .is_some());
    }
}

#[test]
fn genus_never_exceeds_the_isomorphism_class_count() {
    let entries = catalog::builtin_catalog();
    let groups: Vec<&catalog::CatalogEntry> =
        entries.iter().filter(|e| e.group.order() <= 10).collect();
    let mut checked = 0;
    for i in 0..groups.len() {
        for j in i..groups.len() {
            let (g1, g2) = (&groups[i].group, &groups[j].group);
            for h in
                amalgenus_core::amalgam::common_subgroup_types(g1, g2, 4, &limits()).unwrap()
            {
                let subs1 = amalgenus_core::amalgam::subgroup_images(&h, g1, &limits()).unwrap();
                let subs2 = amalgenus_core::amalgam::subgroup_images(&h, g2, &limits()).unwrap();
                let ctx = FixedPairContext::new(g1, &subs1[0], g2, &subs2[0], &limits()).unwrap();
                let classes = count_classes_fixed_subgroups_ctx(&ctx).unwrap().count;
                for policy in [NplusPolicy::LowerProxy, NplusPolicy::UpperProxy] {
                    let input = derive_genus_input_ctx(&ctx, policy, None).unwrap();
                    let value = genus_fixed(&input).unwrap().value;
                    assert!(value >= 1, "counts are always at least 1");
                    assert!(
                        value <= classes,
                        "genus {value} exceeds class count {classes} for {}/{}",
                        groups[i].name,
                        groups[j].name
                    );
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 20, "exercised {checked} instances");
}

#[test]
fn nplus_is_irrelevant_when_out_is_abelian() {
    // With abelian Out(H) the generated normalizer image is already the
    // plain product, so every policy yields the same carrier count.
    let entries = catalog::builtin_catalog();
    let groups: Vec<&catalog::CatalogEntry> =
        entries.iter().filter(|e| e.group.order() <= 12).collect();
    let mut checked = 0;
    for i in 0..groups.len() {
        for j in i..groups.len() {
            let (g1, g2) = (&groups[i].group, &groups[j].group);
            for h in
                amalgenus_core::amalgam::common_subgroup_types(g1, g2, 6, &limits()).unwrap()
            {
                let subs1 = amalgenus_core::amalgam::subgroup_images(&h, g1, &limits()).unwrap();
                let subs2 = amalgenus_core::amalgam::subgroup_images(&h, g2, &limits()).unwrap();
                let ctx = FixedPairContext::new(g1, &subs1[0], g2, &subs2[0], &limits()).unwrap();
                if !ctx.out_h.group().is_abelian() {
                    continue;
                }
                let lower = derive_genus_input_ctx(&ctx, NplusPolicy::LowerProxy, None).unwrap();
                let upper = derive_genus_input_ctx(&ctx, NplusPolicy::UpperProxy, None).unwrap();
                let lower_value = genus_fixed(&lower).unwrap().value;
                let upper_value = genus_fixed(&upper).unwrap().value;
                assert_eq!(lower_value, upper_value);
                // An arbitrary intermediate subset behaves the same.
                if upper.nplus.len() > 1 {
                    let mid: Vec<usize> = upper.nplus.iter().copied().take(2).collect();
                    let input = derive_genus_input_ctx(
                        &ctx,
                        NplusPolicy::Exact,
                        Some(GenusOverrides {
                            nplus: Some(mid),
                            ..Default::default()
                        }),
                    )
                    .unwrap();
                    assert_eq!(genus_fixed(&input).unwrap().value, upper_value);
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 20, "exercised {checked} abelian-out instances");
}

#[test]
fn enumerated_subgroup_counts_match_known_values() {
    // Known subgroup counts for a few classical groups.
    for (name, count) in [("c12", 6), ("a4", 10), ("d12", 16), ("q8", 6), ("s3", 6)] {
        let g = catalog::builtin_group(name).unwrap();
        assert_eq!(
            enumerate_subgroups(&g, &limits()).unwrap().len(),
            count,
            "{name}"
        );
    }
}

#[test]
fn validator_handles_large_tables_via_the_generator_test() {
    // Orders above 128 take the Light's-test path.
    let n = 150;
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let g = amalgenus_core::group::validate_group(table, &limits()).unwrap();
    assert_eq!(g.order(), n);
    assert_eq!(g.elem_order(1), n);

    // A corrupted entry breaks associativity (or the Latin property) and is
    // still caught on the large path.
    let mut bad: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    bad[3].swap(10, 20);
    assert!(amalgenus_core::group::validate_group(bad, &limits()).is_err());
}

#[test]
fn aut_level_and_out_level_counts_agree() {
    // Factoring the inner automorphisms out of the double-coset count does
    // not change it: the Aut(H)-level count (with the Aut-level twist)
    // equals the Out(H)-level count on every symmetric catalog instance.
    let entries = catalog::builtin_catalog();
    let groups: Vec<&catalog::CatalogEntry> =
        entries.iter().filter(|e| e.group.order() <= 10).collect();
    let mut checked = 0;
    for i in 0..groups.len() {
        for j in i..groups.len() {
            let (g1, g2) = (&groups[i].group, &groups[j].group);
            for h in
                amalgenus_core::amalgam::common_subgroup_types(g1, g2, 6, &limits()).unwrap()
            {
                let subs1 = amalgenus_core::amalgam::subgroup_images(&h, g1, &limits()).unwrap();
                let subs2 = amalgenus_core::amalgam::subgroup_images(&h, g2, &limits()).unwrap();
                let ctx = FixedPairContext::new(g1, &subs1[0], g2, &subs2[0], &limits()).unwrap();

                let aut_g = ctx.aut_h.group();
                let aut_carrier: Vec<usize> = (0..aut_g.order()).collect();
                let aut_decomp =
                    double_cosets(aut_g, &ctx.ri2.bar_image, &ctx.ri1.bar_image, &aut_carrier)
                        .unwrap();
                let out_g = ctx.out_h.group();
                let out_carrier: Vec<usize> = (0..out_g.order()).collect();
                let out_decomp =
                    double_cosets(out_g, &ctx.ri2.tilde_image, &ctx.ri1.tilde_image, &out_carrier)
                        .unwrap();
                assert_eq!(aut_decomp.class_count(), out_decomp.class_count());

                if ctx.gamma.is_some() {
                    let aut_tw = TwistedInvolution::new(aut_g, ctx.xi_aut.unwrap()).unwrap();
                    let out_tw = TwistedInvolution::new(out_g, ctx.xi_out.unwrap()).unwrap();
                    let aut_orbits = c2_orbits(&aut_decomp, &aut_tw).unwrap();
                    let out_orbits = c2_orbits(&out_decomp, &out_tw).unwrap();
                    assert_eq!(aut_orbits.orbit_count, out_orbits.orbit_count);
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 30, "exercised {checked} instances");
}

#[test]
fn twisted_carrier_identity_and_normalizer_conjugation_hold_when_symmetric() {
    use amalgenus_core::coset::{inverse_set, product_set, twisted_inverse_set};
    let entries = catalog::builtin_catalog();
    let groups: Vec<&catalog::CatalogEntry> =
        entries.iter().filter(|e| e.group.order() <= 10).collect();
    let mut checked = 0;
    for i in 0..groups.len() {
        for j in i..groups.len() {
            let (g1, g2) = (&groups[i].group, &groups[j].group);
            for h in
                amalgenus_core::amalgam::common_subgroup_types(g1, g2, 6, &limits()).unwrap()
            {
                let subs1 = amalgenus_core::amalgam::subgroup_images(&h, g1, &limits()).unwrap();
                let subs2 = amalgenus_core::amalgam::subgroup_images(&h, g2, &limits()).unwrap();
                let ctx = FixedPairContext::new(g1, &subs1[0], g2, &subs2[0], &limits()).unwrap();
                if ctx.gamma.is_none() {
                    continue;
                }
                let xi = ctx.xi_out.unwrap();
                let out_g = ctx.out_h.group();
                let input = derive_genus_input_ctx(&ctx, NplusPolicy::UpperProxy, None).unwrap();

                // Twisting the inverse of the carrier factors through the
                // profinite images: xi K^-1 xi = Ahat2 xi Nplus^-1 xi Ahat1.
                let k_set = product_set(
                    out_g,
                    &[input.ahat2.elements(), &input.nplus, input.ahat1.elements()],
                );
                let lhs = twisted_inverse_set(out_g, xi, &k_set);
                let xi_set = [xi];
                let nplus_inv = inverse_set(out_g, &input.nplus);
                let rhs = product_set(
                    out_g,
                    &[
                        input.ahat2.elements(),
                        &xi_set,
                        &nplus_inv,
                        &xi_set,
                        input.ahat1.elements(),
                    ],
                );
                assert_eq!(lhs, rhs);

                // The twist conjugates one normalizer image onto the other,
                // so both generate the same subgroup.
                let n1 = input.n1.as_ref().unwrap();
                let n2 = input.n2.as_ref().unwrap();
                let mut conj: Vec<usize> = n2
                    .elements()
                    .iter()
                    .map(|&x| out_g.mul(out_g.mul(out_g.inv(xi), x), xi))
                    .collect();
                conj.sort_unstable();
                assert_eq!(conj, n1.elements());
                let mut seed_a: Vec<usize> = n1.elements().to_vec();
                seed_a.extend_from_slice(n2.elements());
                let mut seed_b: Vec<usize> = n2.elements().to_vec();
                seed_b.extend_from_slice(&conj);
                let gen_a = Subgroup::generated(out_g, &seed_a).unwrap();
                let gen_b = Subgroup::generated(out_g, &seed_b).unwrap();
                assert!(gen_a.set_eq(&gen_b));
                checked += 1;
            }
        }
    }
    assert!(checked > 10, "exercised {checked} symmetric instances");
}

#[test]
fn profinitely_symmetric_nonsymmetric_mode_counts_over_the_extended_carrier() {
    use amalgenus_core::genus::{genus_double, GenusInput, SymmetryMode};
    use amalgenus_core::morphism::{compute_aut, out_quotient};
    // Out(C7) is cyclic of order 6.
    let c7 = catalog::builtin_group("c7").unwrap();
    let aut = Arc::new(compute_aut(&c7, &limits()).unwrap());
    let out = Arc::new(out_quotient(&aut).unwrap());
    let out_g = Arc::clone(out.group());
    let trivial = Subgroup::trivial(&out_g);
    let order3 = (0..6).find(|&x| out_g.elem_order(x) == 3).unwrap();
    let input = GenusInput {
        out: Arc::clone(&out),
        a1: trivial.clone(),
        a2: trivial.clone(),
        ahat1: trivial.clone(),
        ahat2: trivial.clone(),
        nplus: vec![out_g.identity()],
        nplus_policy: NplusPolicy::Exact,
        xi: Some(order3),
        mode: SymmetryMode::ProfinitelySymmetricNonsymmetric,
        n1: None,
        n2: None,
    };
    // K = {e}; S = {e, xi^2}; no quotient in this mode.
    let report = genus_fixed(&input).unwrap();
    assert_eq!(report.k_set.len(), 1);
    assert_eq!(report.s_set.len(), 2);
    assert_eq!(report.value, 2);

    // The profinite-double branch drops the order-two quotient: plain count 6
    // versus 4 orbits under inversion in the symmetric double.
    let whole = Subgroup::whole(&out_g);
    let mk = |mode: SymmetryMode| GenusInput {
        out: Arc::clone(&out),
        a1: trivial.clone(),
        a2: trivial.clone(),
        ahat1: whole.clone(),
        ahat2: whole.clone(),
        nplus: vec![out_g.identity()],
        nplus_policy: NplusPolicy::Exact,
        xi: Some(out_g.identity()),
        mode,
        n1: None,
        n2: None,
    };
    let plain = genus_double(&mk(SymmetryMode::ProfinitelySymmetricNonsymmetric)).unwrap();
    assert_eq!(plain.value, 6);
    let quotiented = genus_double(&mk(SymmetryMode::Double)).unwrap();
    assert_eq!(quotiented.value, 4);
}

#[test]
fn nonisomorphic_subgroups_are_rejected() {
    let d8 = catalog::builtin_entry("d8").unwrap();
    let c4 = d8.subgroups.get("c4").unwrap();
    let klein = d8.subgroups.get("klein").unwrap();
    let err = FixedPairContext::new(&d8.group, c4, &d8.group, klein, &limits()).unwrap_err();
    assert_eq!(err, amalgenus_core::error::Error::NotIsomorphicSubgroups);
}

#[test]
fn core_values_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<FiniteGroup>();
    assert_send_sync::<Subgroup>();
    assert_send_sync::<amalgenus_core::morphism::Morphism>();
    assert_send_sync::<amalgenus_core::morphism::AutGroup>();
    assert_send_sync::<amalgenus_core::morphism::OutQuotient>();
    assert_send_sync::<amalgenus_core::coset::DoubleCosetDecomposition>();
    assert_send_sync::<PushOut>();
}
