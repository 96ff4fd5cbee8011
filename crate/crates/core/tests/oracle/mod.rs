//! Brute-force references. They work on raw permutation arrays and integer
//! arithmetic and share no enumeration code with the library.
#![allow(dead_code)]

use std::collections::BTreeSet;

/// A permutation of `{0, 1, 2}` as its image array.
pub type P = [usize; 3];

pub const IDENTITY: P = [0, 1, 2];

/// `p` first, then `q`.
pub fn then(p: P, q: P) -> P {
    [q[p[0]], q[p[1]], q[p[2]]]
}

pub fn s3() -> Vec<P> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                if a != b && b != c && a != c {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Subsets of S₃ closed under products that contain the identity, smallest first.
pub fn subgroups() -> Vec<BTreeSet<P>> {
    let elems = s3();
    let mut out = Vec::new();
    for mask in 0u32..(1 << elems.len()) {
        let set: BTreeSet<P> = (0..elems.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| elems[i])
            .collect();
        if !set.contains(&IDENTITY) {
            continue;
        }
        if set.iter().all(|&x| set.iter().all(|&y| set.contains(&then(x, y)))) {
            out.push(set);
        }
    }
    out.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));
    out
}

pub type Map = Vec<(P, P)>;

/// Every function `h → k` preserving products, by trying all `|k|^|h|` functions.
pub fn homomorphisms(h: &BTreeSet<P>, k: &BTreeSet<P>) -> Vec<Map> {
    let src: Vec<P> = h.iter().copied().collect();
    let tgt: Vec<P> = k.iter().copied().collect();
    let total = tgt.len().pow(src.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let map: Map = src
            .iter()
            .map(|&x| {
                let y = tgt[c % tgt.len()];
                c /= tgt.len();
                (x, y)
            })
            .collect();
        let look = |x: P| map.iter().find(|(a, _)| *a == x).expect("total").1;
        if src
            .iter()
            .all(|&x| src.iter().all(|&y| look(then(x, y)) == then(look(x), look(y))))
        {
            out.push(map);
        }
    }
    out
}

pub fn apply(map: &Map, x: P) -> P {
    map.iter().find(|(a, _)| *a == x).expect("total").1
}

/// Sequences `(∂_top, …, ∂_1)` over subgroups listed top first and ending
/// with the trivial group, keeping those whose consecutive composites are
/// trivial. Plain nested enumeration of every selection.
pub fn complexes(levels: &[BTreeSet<P>]) -> Vec<Vec<Map>> {
    complexes_with(levels, homomorphisms)
}

/// [`complexes`] with the homset enumeration supplied by the caller.
pub fn complexes_with(
    levels: &[BTreeSet<P>],
    mut homs: impl FnMut(&BTreeSet<P>, &BTreeSet<P>) -> Vec<Map>,
) -> Vec<Vec<Map>> {
    let homsets: Vec<Vec<Map>> = levels.windows(2).map(|w| homs(&w[0], &w[1])).collect();
    let sizes: Vec<usize> = homsets.iter().map(Vec::len).collect();
    let total: usize = sizes.iter().product();
    let mut out = Vec::new();
    for code in 0..total {
        // most significant digit first, top homset first
        let mut digits = vec![0; sizes.len()];
        let mut c = code;
        for i in (0..sizes.len()).rev() {
            digits[i] = c % sizes[i];
            c /= sizes[i];
        }
        let pick: Vec<Map> = digits.iter().enumerate().map(|(i, &d)| homsets[i][d].clone()).collect();
        let ok = (1..pick.len()).all(|i| {
            levels[i - 1]
                .iter()
                .all(|&x| apply(&pick[i], apply(&pick[i - 1], x)) == IDENTITY)
        });
        if ok {
            out.push(pick);
        }
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// A rational `num/den` with `den > 0` in lowest terms.
pub fn reduce(num: i64, den: i64) -> (i64, i64) {
    let g = gcd(num, den).max(1);
    let s = if den < 0 { -1 } else { 1 };
    (s * num / g, s * den / g)
}

/// Mono by cancellation: probes `g, h: ℤ → nℤ` sending `1` to `a, a'`
/// in `{-3n, …, 3n}`; `f` is mono iff `g ; f = h ; f` forces `a = a'`.
pub fn subz_mono(n: i64, _m: i64, q: (i64, i64)) -> bool {
    let samples: Vec<i64> = (-3..=3).map(|k| k * n).collect();
    for &a in &samples {
        for &b in &samples {
            // q·a = q·b with a ≠ b
            if a != b && q.0 * a == q.0 * b {
                return false;
            }
        }
    }
    true
}

/// Epi by cancellation: probes `g, h: mℤ → ℤ/d` determined by the residues
/// `r, r'` of the generator `m`, for `d = 2..=24`; `f` is epi iff equal
/// composites with `f` force `r = r'`. The only probe on `mℤ = 0` is trivial.
pub fn subz_epi(n: i64, m: i64, q: (i64, i64)) -> bool {
    if m == 0 {
        return true;
    }
    // f sends the generator n to q·n = t·m
    let image = q.0 * n;
    assert_eq!(image % (q.1 * m), 0, "q is in the family");
    let t = image / (q.1 * m);
    for d in 2..=24i64 {
        for diff in 1..d {
            // r - r' = diff: composites agree iff t·diff ≡ 0 (mod d)
            if (t * diff).rem_euclid(d) == 0 {
                return false;
            }
        }
    }
    true
}

pub mod subz_maps {
    //! Random SubZ chain-bundle maps and a square-law check by enumeration.

    use std::collections::BTreeMap;

    use chainbundle::backends::{SubZ, SubZObject};
    use chainbundle::bundle::{build_chain_bundle, ChainBundleMap, HomsetKey, HomsetMap, MapOf};
    use chainbundle::rational::integer_quotient;
    use chainbundle::{Category, Rational};
    use num_bigint::BigInt;
    use num_traits::Zero;
    use proptest::prelude::*;

    #[derive(Debug, Clone)]
    pub struct MapCase {
        pub source: Vec<u64>,
        pub target: Vec<u64>,
        /// Vertex indices, top first.
        pub vertex_k: Vec<i64>,
        /// Per consecutive level, top first: `None` solves the square, `Some(c)` forces `c`.
        pub forced: Vec<Option<i64>>,
    }

    pub fn map_case() -> impl Strategy<Value = MapCase> {
        (1usize..=4).prop_flat_map(|len| {
            (
                prop::collection::vec(prop_oneof![9 => 1u64..=12, 1 => Just(0u64)], len),
                prop::collection::vec(prop_oneof![9 => 1u64..=12, 1 => Just(0u64)], len),
                prop::collection::vec(-3i64..=3, len),
                prop::collection::vec(prop_oneof![3 => Just(None), 1 => (-2i64..=2).prop_map(Some)], len),
            )
                .prop_map(|(source, target, vertex_k, forced)| MapCase {
                    source,
                    target,
                    vertex_k,
                    forced,
                })
        })
    }

    fn objs(keys: &[u64]) -> Vec<SubZObject> {
        keys.iter().map(|&k| SubZObject(k)).collect()
    }

    pub fn build(case: &MapCase) -> MapOf<SubZ> {
        let c = build_chain_bundle(&SubZ, &objs(&case.source)).unwrap();
        let d = build_chain_bundle(&SubZ, &objs(&case.target)).unwrap();
        let len = c.length().max(d.length());
        let (c, d) = (c.padded(len), d.padded(len));
        let mut vertex = vec![SubZ.zero_morphism(c.level(0), d.level(0)).unwrap()];
        for i in 1..len {
            let k = case.vertex_k[len - 1 - i];
            vertex.push(SubZ::family_member(*c.level(i), *d.level(i), k));
        }
        let mut homset_maps = BTreeMap::new();
        for i in 1..len {
            let gs = SubZ::generator(*c.level(i), *c.level(i - 1));
            let gt = SubZ::generator(*d.level(i), *d.level(i - 1));
            let (top, bottom) = (&vertex[i].scalar, &vertex[i - 1].scalar);
            let solved = {
                let denom = top * &gt;
                if denom.is_zero() {
                    None
                } else {
                    integer_quotient(&(&gs * bottom), &denom)
                }
            };
            let c_index = match (case.forced[len - 1 - i], solved) {
                (None, Some(c)) => c,
                (None, None) => BigInt::from(1),
                (Some(c), _) => BigInt::from(c),
            };
            homset_maps.insert(
                HomsetKey::consecutive(i),
                HomsetMap::Scaled {
                    index_scale: c_index,
                    target_generator: gt,
                },
            );
        }
        ChainBundleMap::new(&SubZ, &c, &d, vertex, homset_maps).unwrap()
    }

    /// Every square for family indices `|k| ≤ bound`, by direct arithmetic.
    pub fn squares_hold(map: &MapOf<SubZ>, bound: i64) -> bool {
        for (key, hm) in &map.homset_maps {
            let HomsetMap::Scaled {
                index_scale,
                target_generator,
            } = hm
            else {
                panic!("scaled maps only")
            };
            let gs = SubZ::generator(*map.source.level(key.level), *map.source.level(key.level - 1));
            let top = &map.vertex_maps[key.level].scalar;
            let bottom = &map.vertex_maps[key.level - 1].scalar;
            // a zero family has the single member 0 = 0·0
            let range = if gs.is_zero() { 0..=0 } else { -bound..=bound };
            for k in range {
                let k = Rational::from_integer(BigInt::from(k));
                let g = &gs * &k;
                let image = target_generator * Rational::from_integer(index_scale.clone()) * &k;
                if &g * bottom != top * &image {
                    return false;
                }
            }
        }
        true
    }
}

pub mod bundles {
    //! Desk-scale SubZ bundle triples, half of them built as refinements so
    //! that the subchain relation actually holds somewhere.

    use chainbundle::backends::{SubZ, SubZObject};
    use chainbundle::bundle::{build_chain_bundle, ChainBundle};
    use proptest::prelude::*;

    pub type Keys = Vec<u64>;

    fn refine(keys: &Keys, factors: &[u64]) -> Keys {
        keys.iter().zip(factors).map(|(k, f)| k * f).collect()
    }

    /// Keys stay at most 48 and lengths at most 5.
    pub fn triple() -> impl Strategy<Value = (Keys, Keys, Keys)> {
        let free = (
            prop::collection::vec(0u64..=48, 1..=5),
            prop::collection::vec(0u64..=48, 1..=5),
            prop::collection::vec(0u64..=48, 1..=5),
        );
        let chained = (1usize..=5).prop_flat_map(|len| {
            (
                prop::collection::vec(1u64..=8, len),
                prop::collection::vec(1u64..=3, len),
                prop::collection::vec(1u64..=2, len),
            )
                .prop_map(|(base, f1, f2)| {
                    let middle = refine(&base, &f1);
                    let small = refine(&middle, &f2);
                    (small, middle, base)
                })
        });
        prop_oneof![free, chained]
    }

    pub fn bundle(keys: &Keys) -> ChainBundle<SubZObject> {
        let objs: Vec<SubZObject> = keys.iter().map(|&k| SubZObject(k)).collect();
        build_chain_bundle(&SubZ, &objs).unwrap()
    }
}
