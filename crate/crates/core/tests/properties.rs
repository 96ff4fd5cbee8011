//! Algebraic laws over generated instances.

mod oracle;

use std::collections::BTreeMap;

use chainbundle::backends::{SubZ, SubZObject};
use chainbundle::bundle::{
    compose_maps, factorize_map, is_subchain_bundle, validate_chain_bundle_map, ChainBundle, ChainBundleMap, HomsetKey,
    HomsetMap, MapOf, SubchainVerdict,
};
use chainbundle::category::validate_category;
use chainbundle::chains::{extract_chains, Selector};
use chainbundle::rational::{int, integer_quotient, rat};
use chainbundle::{Category, Opposite, Rational, Subobjects};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use oracle::bundles::{bundle, triple, Keys};
use proptest::prelude::*;

fn subchain(a: &ChainBundle<SubZObject>, b: &ChainBundle<SubZObject>) -> bool {
    match is_subchain_bundle(&SubZ, a, b, false).unwrap() {
        SubchainVerdict::Accepted(witness) => {
            assert!(validate_chain_bundle_map(&SubZ, &witness, 3).unwrap().is_valid());
            true
        }
        SubchainVerdict::Rejected(_) => false,
    }
}

fn padded_keys(a: &ChainBundle<SubZObject>, len: usize) -> Vec<u64> {
    a.padded(len).levels().iter().map(|o| o.0).collect()
}

/// `c → d` with every vertex scalar `u`, where `d` has levels `u·c_i`.
fn scaling(c: &ChainBundle<SubZObject>, u: u64) -> MapOf<SubZ> {
    let keys: Keys = c.display_order().iter().map(|o| o.0 * u).collect();
    let d = bundle(&keys);
    let vertex: Vec<_> = (1..c.length())
        .map(|i| SubZ.morphism(c.level(i).0, d.level(i).0, int(u as i64)).unwrap())
        .collect();
    let homset_maps: BTreeMap<HomsetKey, HomsetMap<_>> = (1..c.length())
        .map(|i| {
            let g = SubZ::generator(*c.level(i), *c.level(i - 1));
            (
                HomsetKey::consecutive(i),
                HomsetMap::Scaled {
                    index_scale: BigInt::one(),
                    target_generator: g,
                },
            )
        })
        .collect();
    ChainBundleMap::new(&SubZ, c, &d, vertex, homset_maps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn subchain_relation_is_a_partial_order((a, b, c) in triple()) {
        let (a, b, c) = (bundle(&a), bundle(&b), bundle(&c));
        prop_assert!(subchain(&a, &a));
        if subchain(&a, &b) && subchain(&b, &c) {
            prop_assert!(subchain(&a, &c));
        }
        if subchain(&a, &b) && subchain(&b, &a) {
            let len = a.length().max(b.length());
            prop_assert_eq!(padded_keys(&a, len), padded_keys(&b, len));
        }
    }

    #[test]
    fn composites_of_valid_maps_are_valid(keys in prop::collection::vec(1u64..=12, 1..=4), u in 1u64..=3, v in 1u64..=3) {
        let c = bundle(&keys);
        let f = scaling(&c, u);
        let g = scaling(&f.target, v);
        prop_assert!(validate_chain_bundle_map(&SubZ, &f, 3).unwrap().is_valid());
        let fg = compose_maps(&SubZ, &f, &g).unwrap();
        prop_assert!(validate_chain_bundle_map(&SubZ, &fg, 3).unwrap().is_valid());
        // an inclusion witness followed by a scaling
        let small = bundle(&keys.iter().map(|k| k * u).collect::<Vec<_>>());
        if let SubchainVerdict::Accepted(j) = is_subchain_bundle(&SubZ, &small, &c, false).unwrap() {
            let jf = compose_maps(&SubZ, &j, &f).unwrap();
            prop_assert!(validate_chain_bundle_map(&SubZ, &jf, 3).unwrap().is_valid());
        }
    }

    #[test]
    fn full_maps_recompose(keys in prop::collection::vec(1u64..=12, 1..=4), u in 1u64..=4) {
        let f = scaling(&bundle(&keys), u);
        let fac = factorize_map(&SubZ, &f).unwrap();
        prop_assert!(chainbundle::bundle::map_equals(&SubZ, &compose_maps(&SubZ, &fac.epi, &fac.inclusion).unwrap(), &f));
        for (i, m) in fac.middle.levels().iter().enumerate() {
            prop_assert_eq!(*m, SubZ.factorize(&f.vertex_maps[i]).unwrap().image);
        }
    }

    #[test]
    fn inclusion_chains_split_soundly(keys in prop::collection::vec(0u64..=24, 1..=7)) {
        let b = bundle(&keys);
        let chains = extract_chains(&SubZ, &b, &Selector::InclusionsOnly).unwrap();
        let seen: Vec<u64> = chains.iter().flat_map(|c| c.vertices[1..].iter().rev().map(|o| o.0)).collect();
        let expected: Vec<u64> = keys.iter().copied().filter(|&k| k != 0).collect();
        prop_assert_eq!(&seen, &expected);
        for c in &chains {
            for i in 2..c.length() {
                prop_assert!(SubZ.is_inclusion(&c.arrows[i - 1]));
            }
        }
        // adjacent nonzero levels share a chain exactly when the upper one is included
        let chain_of: Vec<usize> = chains.iter().enumerate().flat_map(|(i, c)| vec![i; c.length() - 1]).collect();
        let mut position = 0;
        let mut ids = Vec::new();
        for &k in &keys {
            ids.push((k != 0).then(|| {
                position += 1;
                chain_of[position - 1]
            }));
        }
        for j in 1..keys.len() {
            if let (Some(x), Some(y)) = (ids[j - 1], ids[j]) {
                let included = SubZ.is_subobject(&SubZObject(keys[j - 1]), &SubZObject(keys[j]));
                prop_assert_eq!(x == y, included);
            }
        }
    }

    #[test]
    fn family_members_land_in_the_target(n in 1i64..=24, m in 1i64..=24, k in -10i64..=10, num in -30i64..=30, den in 1i64..=12) {
        let g = SubZ::generator(SubZObject(n as u64), SubZObject(m as u64));
        let q = &g * Rational::from_integer(BigInt::from(k));
        for s in [n, 2 * n, 5 * n] {
            prop_assert!((&q * Rational::from_integer(BigInt::from(s))).is_integer()
                && (&q * Rational::from_integer(BigInt::from(s))).to_integer() % BigInt::from(m) == BigInt::zero());
        }
        let r = rat(num, den);
        let member = integer_quotient(&r, &g).is_some();
        let lands = [n, 2 * n, 5 * n].iter().all(|&s| {
            let x = &r * Rational::from_integer(BigInt::from(s));
            x.is_integer() && x.to_integer() % BigInt::from(m) == BigInt::zero()
        });
        prop_assert_eq!(member, lands);
    }

    #[test]
    fn closed_form_corestriction_matches_divisibility(a in 1u64..=12, b in 1u64..=12, x in 1u64..=4, y in 1u64..=4, k in -6i64..=6) {
        // small pair (a·x, b·y) inside (a, b)
        let (sa, sb) = (a * x, b * y);
        let q = SubZ::generator(SubZObject(sa), SubZObject(sb)) * Rational::from_integer(BigInt::from(k));
        let f = SubZ.morphism(sa, sb, q.clone()).unwrap();
        let ours = SubZ.corestricts(&f, &SubZObject(a), &SubZObject(b), false).unwrap();
        // q = (b/a)·j for an integer j
        let direct = (&q * Rational::new(BigInt::from(a), BigInt::from(b))).is_integer();
        prop_assert_eq!(ours, direct);
    }
}

#[test]
fn subz_axioms_hold_on_a_sampled_scope() {
    let scope: Vec<SubZObject> = [0u64, 1, 2, 3, 4, 6].into_iter().map(SubZObject).collect();
    assert!(validate_category(&SubZ, &scope, 2).is_valid());
    assert!(validate_category(&Opposite(&SubZ), &scope, 2).is_valid());
}

#[test]
fn subz_factorizations_round_trip() {
    for n in 0..=12u64 {
        for m in 0..=12u64 {
            for k in -3..=3 {
                let f = SubZ::family_member(SubZObject(n), SubZObject(m), k);
                let fac = SubZ.factorize(&f).unwrap();
                assert_eq!(SubZ.compose(&fac.epi_part, &fac.inclusion_part).unwrap(), f);
                assert!(SubZ.is_epi(&fac.epi_part));
                assert!(SubZ.is_inclusion(&fac.inclusion_part));
                // unique: recomputation agrees
                assert_eq!(SubZ.factorize(&f).unwrap(), fac);
            }
        }
    }
}
