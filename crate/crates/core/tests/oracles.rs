//! Library results checked against the brute-force references in `oracle`.

mod oracle;

use std::collections::{BTreeMap, BTreeSet};

use chainbundle::backends::{FinGrp, FinGrpHom, SubZ, SubgroupId};
use chainbundle::bundle::{
    build_chain_bundle, compose_maps, induce_groupoid_map, map_equals, validate_chain_bundle_map, HomsetKey, HomsetMap,
};
use chainbundle::category::{is_epi_by_cancellation, is_mono_by_cancellation};
use chainbundle::chains::extract_complexes;
use chainbundle::presented::PresentedCategory;
use chainbundle::rational::rat;
use chainbundle::report::rules;
use chainbundle::Category;
use oracle::{IDENTITY, P};
use proptest::prelude::*;

fn s3() -> FinGrp {
    FinGrp::symmetric(3).unwrap()
}

fn as_p(g: &FinGrp, i: usize) -> P {
    let im = g.element(i).images();
    [im[0], im[1], im[2]]
}

fn subgroup_set(g: &FinGrp, id: SubgroupId) -> BTreeSet<P> {
    g.subgroup(id).elements.iter().map(|&i| as_p(g, i)).collect()
}

fn hom_as_map(g: &FinGrp, f: &FinGrpHom) -> oracle::Map {
    let src = &g.subgroup(f.source).elements;
    src.iter()
        .zip(&f.table)
        .map(|(&x, &y)| (as_p(g, x), as_p(g, y)))
        .collect()
}

#[test]
fn subgroups_match_subset_closure() {
    let g = s3();
    let expected = oracle::subgroups();
    assert_eq!(expected.len(), 6);
    let found: Vec<BTreeSet<P>> = g.subgroup_ids().into_iter().map(|id| subgroup_set(&g, id)).collect();
    assert_eq!(found, expected);
}

#[test]
fn homomorphisms_match_all_maps() {
    let g = s3();
    let mut total = 0;
    for h in g.subgroup_ids() {
        for k in g.subgroup_ids() {
            let mut ours: Vec<oracle::Map> = g.homomorphisms(h, k).iter().map(|f| hom_as_map(&g, f)).collect();
            let mut theirs = oracle::homomorphisms(&subgroup_set(&g, h), &subgroup_set(&g, k));
            ours.sort();
            theirs.sort();
            assert_eq!(ours, theirs, "Hom({h:?}, {k:?})");
            total += ours.len();
        }
    }
    let a3 = SubgroupId(4);
    assert_eq!(g.homomorphisms(a3, g.whole()).len(), 3);
    assert_eq!(g.homomorphisms(g.whole(), a3).len(), 1);
    assert_eq!(g.homomorphisms(g.whole(), g.whole()).len(), 10);
    assert_eq!(total, 70);
}

#[test]
fn homomorphism_tables_are_multiplicative() {
    let g = s3();
    for h in g.subgroup_ids() {
        for k in g.subgroup_ids() {
            for f in g.homomorphisms(h, k) {
                let elems = &g.subgroup(h).elements;
                assert_eq!(g.apply(f, 0), Some(0));
                for &x in elems {
                    for &y in elems {
                        let lhs = g.apply(f, g.mul(x, y));
                        let rhs = g.mul(g.apply(f, x).unwrap(), g.apply(f, y).unwrap());
                        assert_eq!(lhs, Some(rhs));
                    }
                }
            }
        }
    }
}

/// Family members with numerator and denominator at most 24.
fn subz_scope() -> Vec<(u64, u64, (i64, i64))> {
    let mut out = Vec::new();
    for n in 0..=24i64 {
        for m in 0..=24i64 {
            if n == 0 || m == 0 {
                out.push((n as u64, m as u64, (0, 1)));
                continue;
            }
            for k in -24..=24i64 {
                let q = oracle::reduce(m * k, n);
                if q.0.abs() <= 24 && q.1 <= 24 {
                    out.push((n as u64, m as u64, q));
                }
            }
        }
    }
    out
}

#[test]
fn subz_mono_epi_agree_with_cancellation() {
    let scope = subz_scope();
    assert!(scope.len() > 1000);
    for (n, m, q) in scope {
        let f = SubZ.morphism(n, m, rat(q.0, q.1)).unwrap();
        assert_eq!(SubZ.is_mono(&f), oracle::subz_mono(n as i64, m as i64, q), "mono {f:?}");
        assert_eq!(SubZ.is_epi(&f), oracle::subz_epi(n as i64, m as i64, q), "epi {f:?}");
    }
}

#[test]
fn presented_cancellation_matches_brute_force_on_groups() {
    let g = s3();
    let cat = PresentedCategory::group_with_zero(&g, g.whole()).unwrap();
    let objects = cat.all_objects();
    for a in &objects {
        for b in &objects {
            for f in cat.homset(a, b).explicit().unwrap() {
                assert_eq!(cat.is_mono(f), is_mono_by_cancellation(&cat, f, &objects, 0));
                assert_eq!(cat.is_epi(f), is_epi_by_cancellation(&cat, f, &objects, 0));
            }
        }
    }
}

#[test]
fn complexes_match_nested_loops_over_s3() {
    let g = s3();
    let ids = g.subgroup_ids();
    let nonzero: Vec<SubgroupId> = ids.iter().copied().filter(|&i| i != g.trivial()).collect();
    let mut shapes: Vec<Vec<SubgroupId>> = Vec::new();
    for &a in &nonzero {
        shapes.push(vec![a]);
        for &b in &nonzero {
            shapes.push(vec![a, b]);
            for &c in &nonzero {
                shapes.push(vec![a, b, c]);
            }
        }
    }
    for shape in shapes {
        let bundle = build_chain_bundle(&g, &shape).unwrap();
        let ours: Vec<Vec<oracle::Map>> = extract_complexes(&g, &bundle)
            .unwrap()
            .iter()
            .map(|c| c.arrows.iter().rev().map(|f| hom_as_map(&g, f)).collect())
            .collect();
        let mut levels: Vec<BTreeSet<P>> = shape.iter().map(|&id| subgroup_set(&g, id)).collect();
        levels.push(BTreeSet::from([IDENTITY]));
        let theirs = oracle::complexes(&levels);
        let sorted = |mut v: Vec<Vec<oracle::Map>>| {
            v.sort();
            v
        };
        assert_eq!(sorted(ours), sorted(theirs), "{shape:?}");
    }
    let (s, a) = (g.whole(), SubgroupId(4));
    assert_eq!(
        extract_complexes(&g, &build_chain_bundle(&g, &[s, s, a]).unwrap())
            .unwrap()
            .len(),
        10
    );
    assert_eq!(
        extract_complexes(&g, &build_chain_bundle(&g, &[s, a]).unwrap())
            .unwrap()
            .len(),
        1
    );
}

#[test]
fn induced_groupoid_maps_are_the_unique_square_solutions() {
    let g = s3();
    let cat = PresentedCategory::group_with_zero(&g, g.whole()).unwrap();
    let big = cat.object_by_label("G").unwrap();
    let bundle = build_chain_bundle(&cat, &[big, big]).unwrap();
    let scope = cat.all_objects();
    let hom = cat.homset(&big, &big).explicit().unwrap().to_vec();
    let units: Vec<usize> = hom.iter().copied().filter(|f| cat.inverse(f).is_some()).collect();
    assert_eq!(units.len(), 6);

    let mut induced = BTreeMap::new();
    for &f2 in &units {
        for &f1 in &units {
            let map = induce_groupoid_map(&cat, &bundle, &bundle, vec![f1, f2], &scope).unwrap();
            assert!(validate_chain_bundle_map(&cat, &map, 0).unwrap().is_valid());
            for (key, (top, bottom)) in [
                (HomsetKey::consecutive(2), (f2, f1)),
                (HomsetKey::endo(2), (f2, f2)),
                (HomsetKey::endo(1), (f1, f1)),
            ] {
                let HomsetMap::Table(table) = &map.homset_maps[&key] else {
                    panic!("table")
                };
                for &x in &hom {
                    // x ; bottom = top ; v, solved by trying every v
                    let lhs = cat.compose(&x, &bottom).unwrap();
                    let solutions: Vec<usize> = hom
                        .iter()
                        .copied()
                        .filter(|v| cat.compose(&top, v).unwrap() == lhs)
                        .collect();
                    assert_eq!(solutions, vec![table[&x]], "{key} at {x}");
                }
            }
            induced.insert((f1, f2), map);
        }
    }
    for (&(f1, f2), m) in &induced {
        for (&(h1, h2), n) in &induced {
            let composed = compose_maps(&cat, m, n).unwrap();
            let (c1, c2) = (cat.compose(&f1, &h1).unwrap(), cat.compose(&f2, &h2).unwrap());
            assert!(map_equals(&cat, &composed, &induced[&(c1, c2)]));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn symbolic_squares_agree_with_enumeration(case in oracle::subz_maps::map_case()) {
        let map = oracle::subz_maps::build(&case);
        let report = validate_chain_bundle_map(&SubZ, &map, 3).unwrap();
        prop_assert_eq!(report.with_rule(rules::HOMSET_MAP).count(), 0);
        let symbolic = report.with_rule(rules::SQUARE).count() == 0;
        prop_assert_eq!(symbolic, oracle::subz_maps::squares_hold(&map, 20));
    }
}
