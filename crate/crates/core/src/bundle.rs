//! Chain bundles, chain-bundle maps and the constructions on them.
//!
//! Levels are indexed from the bottom: `levels[0]` is the zero object and
//! `levels[i]` is `M_i`. "Level `i`" of a map refers to the consecutive
//! homset `Hom(M_i, M_{i-1})`, or to `Hom(M_i, M_i)` for endo keys.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::category::{is_groupoid_with_zero, members_within, Category, HomsetBody, Opposite, Subobjects};
use crate::error::{Error, Result};
use crate::rational::{integer_quotient, Rational};
use crate::report::{rules, ValidationReport, Violation};

/// `M_L ⇛ … ⇛ M_1 ⇛ 0`, stored bottom-up.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainBundle<O> {
    levels: Vec<O>,
}

impl<O: Clone + Eq> ChainBundle<O> {
    /// Bottom-up levels; the caller guarantees `levels[0]` is the zero object.
    pub fn from_levels(levels: Vec<O>) -> Self {
        assert!(!levels.is_empty(), "a chain bundle has at least the zero level");
        ChainBundle { levels }
    }

    pub fn levels(&self) -> &[O] {
        &self.levels
    }

    /// Number of levels, counting the zero level.
    pub fn length(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, i: usize) -> &O {
        &self.levels[i]
    }

    /// Levels top first, as a bundle is written.
    pub fn display_order(&self) -> Vec<O> {
        self.levels.iter().rev().cloned().collect()
    }

    /// Adds zero levels on the left until the bundle has `length` levels.
    pub fn padded(&self, length: usize) -> Self {
        let mut levels = self.levels.clone();
        while levels.len() < length {
            levels.push(self.levels[0].clone());
        }
        ChainBundle { levels }
    }
}

/// Builds a bundle from levels written top first, appending `0` if absent.
pub fn build_chain_bundle<C: Category + ?Sized>(cat: &C, display: &[C::Object]) -> Result<ChainBundle<C::Object>> {
    let zero = cat.zero_object().ok_or(Error::NoZeroObject)?;
    if display.is_empty() {
        return Err(Error::ShapeMismatch { expected: 1, found: 0 });
    }
    if let Some(bad) = display.iter().find(|o| !cat.contains_object(o)) {
        return Err(Error::UnknownObject(format!("{bad:?}")));
    }
    let mut levels: Vec<C::Object> = display.iter().rev().cloned().collect();
    if levels[0] != zero {
        levels.insert(0, zero);
    }
    Ok(ChainBundle { levels })
}

/// `3ℤ ⇛ 2ℤ ⇛ 5ℤ ⇛ 0`
pub fn bundle_name<C: Category + ?Sized>(cat: &C, bundle: &ChainBundle<C::Object>) -> String {
    bundle
        .display_order()
        .iter()
        .map(|o| cat.object_name(o))
        .collect::<Vec<_>>()
        .join(" ⇛ ")
}

/// Names a homset of a bundle: consecutive `Hom(M_i, M_{i-1})` or endo `Hom(M_i, M_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomsetKey {
    pub level: usize,
    pub endo: bool,
}

impl HomsetKey {
    pub fn consecutive(level: usize) -> Self {
        HomsetKey { level, endo: false }
    }

    pub fn endo(level: usize) -> Self {
        HomsetKey { level, endo: true }
    }

    pub fn endpoints<'a, O>(&self, bundle: &'a ChainBundle<O>) -> (&'a O, &'a O) {
        let top = &bundle.levels[self.level];
        if self.endo {
            (top, top)
        } else {
            (top, &bundle.levels[self.level - 1])
        }
    }

    /// `3` or `3 (endo)`.
    pub fn short(&self) -> String {
        if self.endo {
            format!("{} (endo)", self.level)
        } else {
            self.level.to_string()
        }
    }

    fn fits<O>(&self, bundle: &ChainBundle<O>) -> bool {
        self.level < bundle.levels.len() && (self.endo || self.level >= 1)
    }
}

impl fmt::Display for HomsetKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.endo {
            write!(f, "level {} (endo)", self.level)
        } else {
            write!(f, "level {}", self.level)
        }
    }
}

/// A morphism map on one homset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomsetMap<M> {
    /// Explicit lookup table on a finite homset.
    Table(BTreeMap<M, M>),
    /// On a scalar family `g·k`: `g·k ↦ h·(c·k)` with `c = index_scale`
    /// and `h = target_generator`.
    Scaled {
        index_scale: BigInt,
        target_generator: Rational,
    },
}

impl<M> HomsetMap<M> {
    /// `h·c` for scaled maps: the scalar that the family generator is sent to.
    pub fn coefficient(&self) -> Option<Rational> {
        match self {
            HomsetMap::Scaled {
                index_scale,
                target_generator,
            } => Some(target_generator * Rational::from_integer(index_scale.clone())),
            HomsetMap::Table(_) => None,
        }
    }

    pub fn scaled(index_scale: i64, target_generator: Rational) -> Self {
        HomsetMap::Scaled {
            index_scale: BigInt::from(index_scale),
            target_generator,
        }
    }
}

/// Vertex maps `f_i: M_i → N_i` plus morphism maps on homsets of the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainBundleMap<O, M> {
    pub source: ChainBundle<O>,
    pub target: ChainBundle<O>,
    /// Bottom-up: `vertex_maps[0]` is `f_0: 0 → 0`.
    pub vertex_maps: Vec<M>,
    pub homset_maps: BTreeMap<HomsetKey, HomsetMap<M>>,
}

pub type MapOf<C> = ChainBundleMap<<C as Category>::Object, <C as Category>::Morphism>;

impl<O: Clone + Eq, M: Clone + Ord> ChainBundleMap<O, M> {
    /// Pads both bundles to a common length. `vertex_maps` is bottom-up and
    /// may omit `f_0`. Consecutive maps into singleton homsets are filled
    /// in when omitted.
    pub fn new<C>(
        cat: &C,
        source: &ChainBundle<O>,
        target: &ChainBundle<O>,
        mut vertex_maps: Vec<M>,
        mut homset_maps: BTreeMap<HomsetKey, HomsetMap<M>>,
    ) -> Result<Self>
    where
        C: Category<Object = O, Morphism = M> + ?Sized,
    {
        let len = source.length().max(target.length());
        let source = source.padded(len);
        let target = target.padded(len);
        if vertex_maps.len() + 1 == len {
            vertex_maps.insert(0, cat.zero_morphism(&source.levels[0], &target.levels[0])?);
        }
        if vertex_maps.len() != len {
            return Err(Error::ShapeMismatch {
                expected: len,
                found: vertex_maps.len(),
            });
        }
        for i in 1..len {
            let key = HomsetKey::consecutive(i);
            if homset_maps.contains_key(&key) {
                continue;
            }
            if let Some(forced) = forced_map(cat, &source, &target, key) {
                homset_maps.insert(key, forced);
            }
        }
        Ok(ChainBundleMap {
            source,
            target,
            vertex_maps,
            homset_maps,
        })
    }

    pub fn length(&self) -> usize {
        self.vertex_maps.len()
    }
}

/// The only possible map into a singleton target homset.
fn forced_map<C: Category + ?Sized>(
    cat: &C,
    source: &ChainBundle<C::Object>,
    target: &ChainBundle<C::Object>,
    key: HomsetKey,
) -> Option<HomsetMap<C::Morphism>> {
    let (a, b) = key.endpoints(source);
    let (x, y) = key.endpoints(target);
    let tgt = cat.homset(x, y);
    let src = cat.homset(a, b);
    match (&src.body, &tgt.body) {
        (HomsetBody::ScalarFamily { .. }, HomsetBody::ScalarFamily { generator }) if generator.is_zero() => {
            Some(HomsetMap::scaled(0, Rational::zero()))
        }
        (HomsetBody::Explicit(list), _) if tgt.is_finite() => {
            let only = members_within(cat, x, y, 0);
            (only.len() == 1).then(|| HomsetMap::Table(list.iter().map(|g| (g.clone(), only[0].clone())).collect()))
        }
        _ => None,
    }
}

/// Image of `g` under a homset map, landing in `Hom(x, y)`.
pub fn apply_homset_map<C: Category + ?Sized>(
    cat: &C,
    map: &HomsetMap<C::Morphism>,
    g: &C::Morphism,
    x: &C::Object,
    y: &C::Object,
) -> Option<C::Morphism> {
    match map {
        HomsetMap::Table(t) => t.get(g).cloned(),
        HomsetMap::Scaled { .. } => {
            let q = cat.scalar(g)?;
            let hom = cat.homset(&cat.source(g), &cat.target(g));
            let gs = hom.generator()?;
            let k = if gs.is_zero() {
                if !q.is_zero() {
                    return None;
                }
                BigInt::zero()
            } else {
                integer_quotient(&q, gs)?
            };
            let image = map.coefficient()? * Rational::from_integer(k);
            cat.scalar_morphism(x, y, &image)
        }
    }
}

fn hom_label<C: Category + ?Sized>(cat: &C, a: &C::Object, b: &C::Object) -> String {
    format!("Hom({}, {})", cat.object_name(a), cat.object_name(b))
}

/// Checks vertex maps, totality of homset maps, every square and functoriality.
/// Squares on scalar families are checked symbolically for all indices;
/// functoriality samples family members with `|k| ≤ bound`.
pub fn validate_chain_bundle_map<C: Category + ?Sized>(
    cat: &C,
    map: &MapOf<C>,
    bound: u64,
) -> Result<ValidationReport> {
    let len = map.source.length();
    if map.target.length() != len || map.vertex_maps.len() != len {
        return Err(Error::ShapeMismatch {
            expected: len,
            found: if map.target.length() != len {
                map.target.length()
            } else {
                map.vertex_maps.len()
            },
        });
    }
    let mut report = ValidationReport::new();
    for (i, f) in map.vertex_maps.iter().enumerate() {
        let (m, n) = (&map.source.levels[i], &map.target.levels[i]);
        if cat.source(f) != *m || cat.target(f) != *n || !cat.is_member(f) {
            report.push(Violation::new(
                rules::VERTEX,
                vec![format!("level {i}"), cat.morphism_name(f)],
                format!(
                    "vertex map {} at level {i} is not a morphism {} → {}",
                    cat.morphism_name(f),
                    cat.object_name(m),
                    cat.object_name(n)
                ),
            ));
        }
    }
    if !report.is_valid() {
        return Ok(report);
    }

    for i in 1..len {
        let key = HomsetKey::consecutive(i);
        if !map.homset_maps.contains_key(&key) {
            let (a, b) = key.endpoints(&map.source);
            report.push(Violation::new(
                rules::HOMSET_MAP,
                vec![key.to_string()],
                format!("no morphism map on {} at {key}", hom_label(cat, a, b)),
            ));
        }
    }
    for (key, hm) in &map.homset_maps {
        if !key.fits(&map.source) {
            report.push(Violation::new(
                rules::HOMSET_MAP,
                vec![key.to_string()],
                format!("{key} is not a homset of the source bundle"),
            ));
            continue;
        }
        if check_homset_map(cat, map, *key, hm, &mut report) {
            check_square(cat, map, *key, hm, &mut report);
        }
    }
    if report.is_valid() {
        check_functoriality(cat, map, bound, &mut report);
    }
    Ok(report)
}

fn check_homset_map<C: Category + ?Sized>(
    cat: &C,
    map: &MapOf<C>,
    key: HomsetKey,
    hm: &HomsetMap<C::Morphism>,
    report: &mut ValidationReport,
) -> bool {
    let (a, b) = key.endpoints(&map.source);
    let (x, y) = key.endpoints(&map.target);
    let src = cat.homset(a, b);
    let tgt = cat.homset(x, y);
    let before = report.violations.len();
    let mut bad = |msg: String| report.push(Violation::new(rules::HOMSET_MAP, vec![key.to_string()], msg));
    match hm {
        HomsetMap::Table(table) => {
            if !src.is_finite() {
                bad(format!("a table cannot cover the infinite {}", hom_label(cat, a, b)));
                return false;
            }
            let members: BTreeSet<C::Morphism> = members_within(cat, a, b, 0).into_iter().collect();
            for g in &members {
                if !table.contains_key(g) {
                    bad(format!(
                        "morphism map at {key} is undefined on {}",
                        cat.morphism_name(g)
                    ));
                }
            }
            for (g, v) in table {
                if !members.contains(g) {
                    bad(format!("{} is not in {}", cat.morphism_name(g), hom_label(cat, a, b)));
                }
                if cat.source(v) != *x || cat.target(v) != *y || !cat.is_member(v) {
                    bad(format!(
                        "image {} of {} is not in {}",
                        cat.morphism_name(v),
                        cat.morphism_name(g),
                        hom_label(cat, x, y)
                    ));
                }
            }
        }
        HomsetMap::Scaled { .. } => {
            let coefficient = hm.coefficient().expect("scaled");
            match (src.generator(), tgt.generator()) {
                (Some(_), Some(gt)) => {
                    let member = if gt.is_zero() {
                        coefficient.is_zero()
                    } else {
                        integer_quotient(&coefficient, gt).is_some()
                    };
                    if !member {
                        bad(format!(
                            "{coefficient}·k leaves the family {gt}·k of {}",
                            hom_label(cat, x, y)
                        ));
                    }
                }
                _ => bad(format!("a scaled map needs scalar families at {key}")),
            }
        }
    }
    report.violations.len() == before
}

fn check_square<C: Category + ?Sized>(
    cat: &C,
    map: &MapOf<C>,
    key: HomsetKey,
    hm: &HomsetMap<C::Morphism>,
    report: &mut ValidationReport,
) {
    let i = key.level;
    let f_top = &map.vertex_maps[i];
    let f_bottom = if key.endo { f_top } else { &map.vertex_maps[i - 1] };
    match hm {
        HomsetMap::Table(table) => {
            for (g, v) in table {
                let lhs = cat.compose(g, f_bottom);
                let rhs = cat.compose(f_top, v);
                if lhs.is_err() || lhs != rhs {
                    let show = |r: &Result<C::Morphism>| match r {
                        Ok(m) => cat.morphism_name(m),
                        Err(e) => e.to_string(),
                    };
                    report.push(Violation::new(
                        rules::SQUARE,
                        vec![key.to_string(), cat.morphism_name(g)],
                        format!(
                            "square fails at {key} for {}: {} ; {} = {} but {} ; {} = {}",
                            cat.morphism_name(g),
                            cat.morphism_name(g),
                            cat.morphism_name(f_bottom),
                            show(&lhs),
                            cat.morphism_name(f_top),
                            cat.morphism_name(v),
                            show(&rhs)
                        ),
                    ));
                }
            }
        }
        HomsetMap::Scaled { .. } => {
            let (a, b) = key.endpoints(&map.source);
            let gs = cat.homset(a, b).generator().cloned().unwrap_or_default();
            if gs.is_zero() {
                return;
            }
            let (Some(top), Some(bottom)) = (cat.scalar(f_top), cat.scalar(f_bottom)) else {
                report.push(Violation::new(
                    rules::SQUARE,
                    vec![key.to_string()],
                    format!("vertex maps at {key} carry no scalar"),
                ));
                return;
            };
            let hc = hm.coefficient().expect("scaled");
            // both sides are linear in k, so k = 1 decides every index
            let lhs = &gs * &bottom;
            let rhs = &top * &hc;
            if lhs != rhs {
                report.push(Violation::new(
                    rules::SQUARE,
                    vec![key.to_string(), "k = 1".to_string()],
                    format!("square fails at {key}, k = 1: {gs}·{bottom} = {lhs} but {top}·{hc} = {rhs}"),
                ));
            }
        }
    }
}

/// First pair `(g, h)` seen for a composite, with its image if defined.
type CompositeImage<M> = (M, M, Option<M>);

fn check_functoriality<C: Category + ?Sized>(cat: &C, map: &MapOf<C>, bound: u64, report: &mut ValidationReport) {
    let len = map.length();
    let apply = |key: HomsetKey, g: &C::Morphism| {
        let hm = map.homset_maps.get(&key)?;
        let (x, y) = key.endpoints(&map.target);
        apply_homset_map(cat, hm, g, x, y)
    };
    let members = |key: HomsetKey| {
        let (a, b) = key.endpoints(&map.source);
        members_within(cat, a, b, bound)
    };
    let name = |m: &Option<C::Morphism>| m.as_ref().map_or("undefined".to_string(), |m| cat.morphism_name(m));

    for i in 0..len {
        let key = HomsetKey::endo(i);
        if !map.homset_maps.contains_key(&key) {
            continue;
        }
        let id = cat.identity(&map.source.levels[i]);
        let image = apply(key, &id);
        if image.as_ref() != Some(&cat.identity(&map.target.levels[i])) {
            report.push(Violation::new(
                rules::FUNCTOR_IDENTITY,
                vec![key.to_string()],
                format!("identity at level {i} is sent to {}", name(&image)),
            ));
        }
    }

    // F(g ; h) = F(g) ; F(h) whenever g, h and g ; h all lie in mapped homsets
    let mut check = |k1: HomsetKey, k2: HomsetKey, k3: HomsetKey| {
        if !(map.homset_maps.contains_key(&k1)
            && map.homset_maps.contains_key(&k2)
            && map.homset_maps.contains_key(&k3))
        {
            return;
        }
        for g in members(k1) {
            for h in members(k2) {
                let Ok(gh) = cat.compose(&g, &h) else { continue };
                let lhs = apply(k3, &gh);
                let rhs = match (apply(k1, &g), apply(k2, &h)) {
                    (Some(x), Some(y)) => cat.compose(&x, &y).ok(),
                    _ => None,
                };
                if lhs.is_none() || lhs != rhs {
                    report.push(Violation::new(
                        rules::FUNCTOR_COMPOSITE,
                        vec![k1.to_string(), cat.morphism_name(&g), cat.morphism_name(&h)],
                        format!(
                            "F({} ; {}) = {} but F({}) ; F({}) = {}",
                            cat.morphism_name(&g),
                            cat.morphism_name(&h),
                            name(&lhs),
                            cat.morphism_name(&g),
                            cat.morphism_name(&h),
                            name(&rhs)
                        ),
                    ));
                }
            }
        }
    };
    for i in 0..len {
        check(HomsetKey::endo(i), HomsetKey::endo(i), HomsetKey::endo(i));
        if i >= 1 {
            check(HomsetKey::endo(i), HomsetKey::consecutive(i), HomsetKey::consecutive(i));
            check(
                HomsetKey::consecutive(i),
                HomsetKey::endo(i - 1),
                HomsetKey::consecutive(i),
            );
        }
    }

    // composites M_{i+1} → M_i → M_{i-1} must have a well-defined image
    for i in 1..len.saturating_sub(1) {
        let (upper, lower) = (HomsetKey::consecutive(i + 1), HomsetKey::consecutive(i));
        if !(map.homset_maps.contains_key(&upper) && map.homset_maps.contains_key(&lower)) {
            continue;
        }
        let mut images: HashMap<C::Morphism, CompositeImage<C::Morphism>> = HashMap::new();
        for g in members(upper) {
            for h in members(lower) {
                let Ok(gh) = cat.compose(&g, &h) else { continue };
                let image = match (apply(upper, &g), apply(lower, &h)) {
                    (Some(x), Some(y)) => cat.compose(&x, &y).ok(),
                    _ => None,
                };
                match images.get(&gh) {
                    Some((g0, h0, prev)) if *prev != image => {
                        report.push(Violation::new(
                            rules::FUNCTOR_COMPOSITE,
                            vec![format!("level {}", i + 1), cat.morphism_name(&gh)],
                            format!(
                                "{} = {} ; {} = {} ; {} has images {} and {}",
                                cat.morphism_name(&gh),
                                cat.morphism_name(g0),
                                cat.morphism_name(h0),
                                cat.morphism_name(&g),
                                cat.morphism_name(&h),
                                name(prev),
                                name(&image)
                            ),
                        ));
                    }
                    Some(_) => {}
                    None => {
                        images.insert(gh, (g.clone(), h, image));
                    }
                }
            }
        }
    }
}

/// Homset maps agree as functions. Scaled maps are compared by coefficient;
/// mixed pairs by evaluation on a few members.
fn homset_maps_agree<C: Category + ?Sized>(
    cat: &C,
    source: &ChainBundle<C::Object>,
    target: &ChainBundle<C::Object>,
    key: HomsetKey,
    p: &HomsetMap<C::Morphism>,
    q: &HomsetMap<C::Morphism>,
) -> bool {
    match (p, q) {
        (HomsetMap::Table(a), HomsetMap::Table(b)) => a == b,
        (HomsetMap::Scaled { .. }, HomsetMap::Scaled { .. }) => p.coefficient() == q.coefficient(),
        _ => {
            let (a, b) = key.endpoints(source);
            let (x, y) = key.endpoints(target);
            members_within(cat, a, b, 1)
                .iter()
                .all(|g| apply_homset_map(cat, p, g, x, y) == apply_homset_map(cat, q, g, x, y))
        }
    }
}

/// Equal as functors: same object images and the same morphism maps.
pub fn functor_equals<C: Category + ?Sized>(cat: &C, f: &MapOf<C>, g: &MapOf<C>) -> bool {
    f.source == g.source
        && f.target == g.target
        && f.homset_maps.keys().eq(g.homset_maps.keys())
        && f.homset_maps
            .iter()
            .all(|(key, p)| homset_maps_agree(cat, &f.source, &f.target, *key, p, &g.homset_maps[key]))
}

/// Equal as chain-bundle maps: functor equality plus equal vertex maps.
pub fn map_equals<C: Category + ?Sized>(cat: &C, f: &MapOf<C>, g: &MapOf<C>) -> bool {
    f.vertex_maps == g.vertex_maps && functor_equals(cat, f, g)
}

/// Identity map of a bundle.
pub fn identity_map<C: Category + ?Sized>(cat: &C, bundle: &ChainBundle<C::Object>) -> MapOf<C> {
    let mut homset_maps = BTreeMap::new();
    for i in 1..bundle.length() {
        let key = HomsetKey::consecutive(i);
        let (a, b) = key.endpoints(bundle);
        let hom = cat.homset(a, b);
        let hm = match &hom.body {
            HomsetBody::Explicit(list) => HomsetMap::Table(list.iter().map(|g| (g.clone(), g.clone())).collect()),
            HomsetBody::ScalarFamily { generator } => HomsetMap::Scaled {
                index_scale: BigInt::one(),
                target_generator: generator.clone(),
            },
        };
        homset_maps.insert(key, hm);
    }
    ChainBundleMap {
        source: bundle.clone(),
        target: bundle.clone(),
        vertex_maps: bundle.levels.iter().map(|o| cat.identity(o)).collect(),
        homset_maps,
    }
}

/// `f` then `g`, levelwise on vertices and homset by homset. Keys mapped by
/// only one factor are dropped.
pub fn compose_maps<C: Category + ?Sized>(cat: &C, f: &MapOf<C>, g: &MapOf<C>) -> Result<MapOf<C>> {
    let len = f.length().max(g.length());
    if f.length() != g.length() || f.target != g.source {
        return Err(Error::ShapeMismatch {
            expected: len,
            found: f.length().min(g.length()),
        });
    }
    let vertex_maps = f
        .vertex_maps
        .iter()
        .zip(&g.vertex_maps)
        .map(|(a, b)| cat.compose(a, b))
        .collect::<Result<Vec<_>>>()?;
    let mut homset_maps = BTreeMap::new();
    for (key, p) in &f.homset_maps {
        let Some(q) = g.homset_maps.get(key) else { continue };
        let (mid_a, mid_b) = key.endpoints(&f.target);
        let (x, y) = key.endpoints(&g.target);
        let composite = match (p, q) {
            (HomsetMap::Table(a), HomsetMap::Table(b)) => HomsetMap::Table(
                a.iter()
                    .map(|(k, v)| {
                        b.get(v)
                            .map(|w| (k.clone(), w.clone()))
                            .ok_or_else(|| Error::MissingHomsetMap {
                                level: key.short(),
                                reason: format!("{} has no image", cat.morphism_name(v)),
                            })
                    })
                    .collect::<Result<_>>()?,
            ),
            (
                HomsetMap::Scaled {
                    index_scale: c1,
                    target_generator: h1,
                },
                HomsetMap::Scaled {
                    index_scale: c2,
                    target_generator: h2,
                },
            ) => {
                let g_mid = cat.homset(mid_a, mid_b).generator().cloned().unwrap_or_default();
                let t = if g_mid.is_zero() {
                    BigInt::zero()
                } else {
                    let scaled = h1 * Rational::from_integer(c1.clone());
                    integer_quotient(&scaled, &g_mid).ok_or_else(|| Error::MissingHomsetMap {
                        level: key.short(),
                        reason: format!("{scaled} is not in the family {g_mid}·k"),
                    })?
                };
                HomsetMap::Scaled {
                    index_scale: c2 * t,
                    target_generator: h2.clone(),
                }
            }
            _ => {
                let (a, b) = key.endpoints(&f.source);
                if !cat.homset(a, b).is_finite() {
                    return Err(Error::Unsupported(format!(
                        "cannot compose a table with a scaled map on the infinite {}",
                        hom_label(cat, a, b)
                    )));
                }
                let mut table = BTreeMap::new();
                for k in members_within(cat, a, b, 0) {
                    let v = apply_homset_map(cat, p, &k, mid_a, mid_b)
                        .and_then(|v| apply_homset_map(cat, q, &v, x, y))
                        .ok_or_else(|| Error::MissingHomsetMap {
                            level: key.short(),
                            reason: format!("{} has no image", cat.morphism_name(&k)),
                        })?;
                    table.insert(k, v);
                }
                HomsetMap::Table(table)
            }
        };
        homset_maps.insert(*key, composite);
    }
    Ok(ChainBundleMap {
        source: f.source.clone(),
        target: g.target.clone(),
        vertex_maps,
        homset_maps,
    })
}

/// Why a bundle is not a subchain bundle of another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubchainFailure {
    pub level: usize,
    /// The two objects naming the failing spot, e.g. `("9ℤ", "4ℤ")`.
    pub pair: (String, String),
    pub reason: String,
}

impl fmt::Display for SubchainFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "level ({}, {}): {}", self.pair.0, self.pair.1, self.reason)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubchainVerdict<O, M> {
    /// Carries the inclusion map of the small bundle into the big one.
    Accepted(ChainBundleMap<O, M>),
    Rejected(SubchainFailure),
}

impl<O, M> SubchainVerdict<O, M> {
    pub fn is_accepted(&self) -> bool {
        matches!(self, SubchainVerdict::Accepted(_))
    }
}

/// Levelwise subobjects whose consecutive homset morphisms all corestrict
/// from the big bundle. With `strict`, each corestriction must also be epi.
pub fn is_subchain_bundle<C: Subobjects + ?Sized>(
    cat: &C,
    small: &ChainBundle<C::Object>,
    big: &ChainBundle<C::Object>,
    strict: bool,
) -> Result<SubchainVerdict<C::Object, C::Morphism>> {
    let len = small.length().max(big.length());
    let small = small.padded(len);
    let big = big.padded(len);
    for i in (0..len).rev() {
        let (s, b) = (&small.levels[i], &big.levels[i]);
        if !cat.is_subobject(s, b) {
            return Ok(SubchainVerdict::Rejected(SubchainFailure {
                level: i,
                pair: (cat.object_name(s), cat.object_name(b)),
                reason: format!("{} is not a subobject of {}", cat.object_name(s), cat.object_name(b)),
            }));
        }
    }
    let mut homset_maps = BTreeMap::new();
    for i in (1..len).rev() {
        let key = HomsetKey::consecutive(i);
        let (a, b) = key.endpoints(&small);
        let (big_a, big_b) = key.endpoints(&big);
        let hom = cat.homset(a, b);
        let tests = match &hom.body {
            HomsetBody::Explicit(list) => list.clone(),
            HomsetBody::ScalarFamily { generator } => {
                // the big family is an additive group: the generator decides
                // every member, and 0 is the member that strictness can reject
                let mut tests: Vec<C::Morphism> = cat.scalar_morphism(a, b, &Rational::zero()).into_iter().collect();
                tests.extend(cat.scalar_morphism(a, b, generator));
                tests
            }
        };
        for m in &tests {
            let plain = cat.corestricts(m, big_a, big_b, false)?;
            let ok = plain && (!strict || cat.corestricts(m, big_a, big_b, true)?);
            if ok {
                continue;
            }
            let big_hom = cat.homset(big_a, big_b);
            let shown = cat.scalar(m).map_or_else(|| cat.morphism_name(m), |q| q.to_string());
            let reason = if !plain {
                match big_hom.generator() {
                    Some(g) => format!("{shown} not in family {g}·k"),
                    None => format!(
                        "{shown} is not a corestriction of any morphism in {}",
                        hom_label(cat, big_a, big_b)
                    ),
                }
            } else {
                format!("{shown} is not an epimorphism onto {}", cat.object_name(b))
            };
            return Ok(SubchainVerdict::Rejected(SubchainFailure {
                level: i,
                pair: (cat.object_name(a), cat.object_name(b)),
                reason,
            }));
        }
        let hm = match &hom.body {
            HomsetBody::ScalarFamily { generator } => HomsetMap::Scaled {
                index_scale: BigInt::one(),
                target_generator: generator.clone(),
            },
            HomsetBody::Explicit(list) => HomsetMap::Table(
                list.iter()
                    .map(|m| {
                        cat.extend(m, big_a, big_b)
                            .map(|h| (m.clone(), h))
                            .ok_or_else(|| Error::MissingHomsetMap {
                                level: key.short(),
                                reason: format!("{} has no extension", cat.morphism_name(m)),
                            })
                    })
                    .collect::<Result<_>>()?,
            ),
        };
        homset_maps.insert(key, hm);
    }
    let vertex_maps = (0..len)
        .map(|i| cat.inclusion(&small.levels[i], &big.levels[i]).expect("checked above"))
        .collect();
    Ok(SubchainVerdict::Accepted(ChainBundleMap {
        source: small,
        target: big,
        vertex_maps,
        homset_maps,
    }))
}

/// Epi part, inclusion part and middle bundle of a full map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapFactorization<O, M> {
    pub epi: ChainBundleMap<O, M>,
    pub inclusion: ChainBundleMap<O, M>,
    pub middle: ChainBundle<O>,
}

/// A map whose morphism maps are onto their target homsets.
pub fn check_full<C: Category + ?Sized>(cat: &C, map: &MapOf<C>) -> Result<()> {
    for i in 1..map.length() {
        if !map.homset_maps.contains_key(&HomsetKey::consecutive(i)) {
            let (a, b) = HomsetKey::consecutive(i).endpoints(&map.source);
            return Err(Error::MissingHomsetMap {
                level: i.to_string(),
                reason: format!("no morphism map on {}", hom_label(cat, a, b)),
            });
        }
    }
    for (key, hm) in &map.homset_maps {
        let (x, y) = key.endpoints(&map.target);
        let tgt = cat.homset(x, y);
        let full = match (hm, &tgt.body) {
            (HomsetMap::Scaled { .. }, HomsetBody::ScalarFamily { generator }) => {
                hm.coefficient().expect("scaled").abs() == generator.abs()
            }
            (HomsetMap::Table(t), HomsetBody::Explicit(list)) => {
                let image: BTreeSet<&C::Morphism> = t.values().collect();
                list.iter().all(|m| image.contains(m))
            }
            (HomsetMap::Table(t), HomsetBody::ScalarFamily { generator }) => generator.is_zero() && !t.is_empty(),
            _ => false,
        };
        if !full {
            return Err(Error::NotFull {
                level: format!("{}, {}", key.short(), hom_label(cat, x, y)),
            });
        }
    }
    Ok(())
}

/// Factorizes a full map `F` as an epimorphic map onto the levelwise images
/// followed by the inclusion of that middle bundle.
pub fn factorize_map<C: Subobjects + ?Sized>(
    cat: &C,
    map: &MapOf<C>,
) -> Result<MapFactorization<C::Object, C::Morphism>> {
    check_full(cat, map)?;
    let mut epi_vertices = Vec::new();
    let mut incl_vertices = Vec::new();
    let mut middle_levels = Vec::new();
    for (i, f) in map.vertex_maps.iter().enumerate() {
        let fac = cat.factorize(f).map_err(|e| Error::VertexNotFactorizable {
            level: i,
            reason: e.to_string(),
        })?;
        epi_vertices.push(fac.epi_part);
        incl_vertices.push(fac.inclusion_part);
        middle_levels.push(fac.image);
    }
    let middle = ChainBundle { levels: middle_levels };
    let mut epi_maps = BTreeMap::new();
    let mut incl_maps = BTreeMap::new();
    for (key, hm) in &map.homset_maps {
        let (p, q) = key.endpoints(&middle);
        let (x, y) = key.endpoints(&map.target);
        let mid = cat.homset(p, q);
        let missing = |reason: String| Error::MissingHomsetMap {
            level: key.short(),
            reason,
        };
        match hm {
            HomsetMap::Table(table) => {
                let mut e = BTreeMap::new();
                for (g, v) in table {
                    let r = cat.restrict(v, p, q).ok_or_else(|| {
                        missing(format!(
                            "{} does not corestrict to {}",
                            cat.morphism_name(v),
                            hom_label(cat, p, q)
                        ))
                    })?;
                    e.insert(g.clone(), r);
                }
                let mut j = BTreeMap::new();
                for m in members_within(cat, p, q, 0) {
                    let ext = cat.extend(&m, x, y).ok_or_else(|| {
                        missing(format!(
                            "{} does not extend to {}",
                            cat.morphism_name(&m),
                            hom_label(cat, x, y)
                        ))
                    })?;
                    j.insert(m, ext);
                }
                epi_maps.insert(*key, HomsetMap::Table(e));
                incl_maps.insert(*key, HomsetMap::Table(j));
            }
            HomsetMap::Scaled { .. } => {
                let g_mid = mid.generator().cloned().unwrap_or_default();
                let hc = hm.coefficient().expect("scaled");
                let in_family = |q: &Rational, fam: &Rational| {
                    if fam.is_zero() {
                        q.is_zero()
                    } else {
                        integer_quotient(q, fam).is_some()
                    }
                };
                if !in_family(&hc, &g_mid) {
                    return Err(missing(format!(
                        "{hc}·k leaves the family {g_mid}·k of {}",
                        hom_label(cat, p, q)
                    )));
                }
                let g_tgt = cat.homset(x, y).generator().cloned().unwrap_or_default();
                if !in_family(&g_mid, &g_tgt) {
                    return Err(missing(format!("{g_mid}·k does not extend to the family {g_tgt}·k")));
                }
                epi_maps.insert(*key, hm.clone());
                incl_maps.insert(
                    *key,
                    HomsetMap::Scaled {
                        index_scale: BigInt::one(),
                        target_generator: g_mid,
                    },
                );
            }
        }
    }
    let epi = ChainBundleMap {
        source: map.source.clone(),
        target: middle.clone(),
        vertex_maps: epi_vertices,
        homset_maps: epi_maps,
    };
    let inclusion = ChainBundleMap {
        source: middle.clone(),
        target: map.target.clone(),
        vertex_maps: incl_vertices,
        homset_maps: incl_maps,
    };
    let recomposed = compose_maps(cat, &epi, &inclusion)?;
    if !map_equals(cat, &recomposed, map) {
        return Err(Error::NoFactorization("the recomposed map differs".into()));
    }
    Ok(MapFactorization { epi, inclusion, middle })
}

/// A termwise product with its two projections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductBundle<O, M> {
    pub bundle: ChainBundle<O>,
    pub left: ChainBundleMap<O, M>,
    pub right: ChainBundleMap<O, M>,
}

/// Termwise product after zero-padding the shorter bundle.
pub fn product<C: Subobjects + ?Sized>(
    cat: &C,
    c: &ChainBundle<C::Object>,
    d: &ChainBundle<C::Object>,
) -> Result<ProductBundle<C::Object, C::Morphism>> {
    let len = c.length().max(d.length());
    let (c, d) = (c.padded(len), d.padded(len));
    let mut cones = Vec::with_capacity(len);
    for i in 0..len {
        let cone = cat
            .product(&c.levels[i], &d.levels[i])
            .ok_or_else(|| Error::ProductsUnsupported {
                left: cat.object_name(&c.levels[i]),
                right: cat.object_name(&d.levels[i]),
            })?;
        cones.push(cone);
    }
    if Some(&cones[0].object) != cat.zero_object().as_ref() {
        return Err(Error::Unsupported(
            "the product of the zero levels is not the zero object".into(),
        ));
    }
    let bundle = ChainBundle {
        levels: cones.iter().map(|p| p.object.clone()).collect(),
    };
    let left_vertices: Vec<C::Morphism> = cones.iter().map(|p| p.left.clone()).collect();
    let right_vertices: Vec<C::Morphism> = cones.iter().map(|p| p.right.clone()).collect();
    let left = projection(cat, &bundle, &c, left_vertices)?;
    let right = projection(cat, &bundle, &d, right_vertices)?;
    Ok(ProductBundle { bundle, left, right })
}

/// Finds, for every product morphism `k`, the first factor morphism `m`
/// with `k ; π_{i-1} = π_i ; m`.
fn projection<C: Category + ?Sized>(
    cat: &C,
    product: &ChainBundle<C::Object>,
    factor: &ChainBundle<C::Object>,
    vertices: Vec<C::Morphism>,
) -> Result<MapOf<C>> {
    let mut homset_maps = BTreeMap::new();
    for i in 1..product.length() {
        let key = HomsetKey::consecutive(i);
        let (a, b) = key.endpoints(product);
        let (x, y) = key.endpoints(factor);
        let hom = cat.homset(a, b);
        let list = hom.explicit().ok_or_else(|| Error::InfiniteHomset {
            level: i,
            homset: hom_label(cat, a, b),
        })?;
        let targets = cat.homset(x, y);
        let candidates = targets.explicit().ok_or_else(|| Error::InfiniteHomset {
            level: i,
            homset: hom_label(cat, x, y),
        })?;
        let mut table = BTreeMap::new();
        for k in list {
            let lhs = cat.compose(k, &vertices[i - 1])?;
            let m = candidates
                .iter()
                .find(|m| cat.compose(&vertices[i], m).ok().as_ref() == Some(&lhs))
                .ok_or_else(|| Error::MissingHomsetMap {
                    level: key.short(),
                    reason: format!("no image for {} under the projection", cat.morphism_name(k)),
                })?;
            table.insert(k.clone(), m.clone());
        }
        homset_maps.insert(key, HomsetMap::Table(table));
    }
    Ok(ChainBundleMap {
        source: product.clone(),
        target: factor.clone(),
        vertex_maps: vertices,
        homset_maps,
    })
}

/// Outcome of the mediating-map search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductVerdict<O, M> {
    pub exists: bool,
    pub unique: bool,
    /// Number of valid mediating maps found.
    pub count: u64,
    pub mediating: Option<ChainBundleMap<O, M>>,
    /// Where the search ran dry, when no mediating map exists.
    pub failure: Option<String>,
}

/// Searches every map `L: l → candidate` with `L ; left = f` and
/// `L ; right = g` on vertices and consecutive homsets.
pub fn verify_product<C: Category + ?Sized>(
    cat: &C,
    candidate: &ProductBundle<C::Object, C::Morphism>,
    l: &ChainBundle<C::Object>,
    f: &MapOf<C>,
    g: &MapOf<C>,
    bound: u64,
) -> Result<ProductVerdict<C::Object, C::Morphism>> {
    let len = candidate.bundle.length();
    let l = l.padded(len);
    for m in [f, g, &candidate.left, &candidate.right] {
        if m.length() != len {
            return Err(Error::ShapeMismatch {
                expected: len,
                found: m.length(),
            });
        }
    }
    let explicit = |a: &C::Object, b: &C::Object, level: usize| {
        let hom = cat.homset(a, b);
        match hom.body {
            HomsetBody::Explicit(list) => Ok(list),
            HomsetBody::ScalarFamily { .. } => Err(Error::InfiniteHomset {
                level,
                homset: hom_label(cat, a, b),
            }),
        }
    };
    let no = |failure: String| ProductVerdict {
        exists: false,
        unique: false,
        count: 0,
        mediating: None,
        failure: Some(failure),
    };

    let mut slots: Vec<Vec<C::Morphism>> = Vec::new();
    for i in 0..len {
        let cands: Vec<C::Morphism> = explicit(&l.levels[i], &candidate.bundle.levels[i], i)?
            .into_iter()
            .filter(|v| {
                cat.compose(v, &candidate.left.vertex_maps[i]).ok().as_ref() == Some(&f.vertex_maps[i])
                    && cat.compose(v, &candidate.right.vertex_maps[i]).ok().as_ref() == Some(&g.vertex_maps[i])
            })
            .collect();
        if cands.is_empty() {
            return Ok(no(format!("no vertex map at level {i} commutes with both projections")));
        }
        slots.push(cands);
    }
    let mut homset_slots: Vec<(HomsetKey, C::Morphism)> = Vec::new();
    for i in 1..len {
        let key = HomsetKey::consecutive(i);
        let (a, b) = key.endpoints(&l);
        let (p, q) = key.endpoints(&candidate.bundle);
        let (cx, cy) = key.endpoints(&f.target);
        let (dx, dy) = key.endpoints(&g.target);
        let targets = explicit(p, q, i)?;
        for k in explicit(a, b, i)? {
            let want_left = f
                .homset_maps
                .get(&key)
                .and_then(|hm| apply_homset_map(cat, hm, &k, cx, cy));
            let want_right = g
                .homset_maps
                .get(&key)
                .and_then(|hm| apply_homset_map(cat, hm, &k, dx, dy));
            let cands: Vec<C::Morphism> = targets
                .iter()
                .filter(|v| {
                    let l_img = candidate
                        .left
                        .homset_maps
                        .get(&key)
                        .and_then(|hm| apply_homset_map(cat, hm, v, cx, cy));
                    let r_img = candidate
                        .right
                        .homset_maps
                        .get(&key)
                        .and_then(|hm| apply_homset_map(cat, hm, v, dx, dy));
                    l_img.is_some() && l_img == want_left && r_img == want_right
                })
                .cloned()
                .collect();
            if cands.is_empty() {
                return Ok(no(format!(
                    "no image for {} at level {i} matches both projections",
                    cat.morphism_name(&k)
                )));
            }
            homset_slots.push((key, k));
            slots.push(cands);
        }
    }

    let size = slots.iter().try_fold(1u64, |acc, s| acc.checked_mul(s.len() as u64));
    match size {
        Some(n) if n <= bound => {}
        _ => {
            let exact = slots.iter().fold(BigInt::one(), |acc, s| acc * BigInt::from(s.len()));
            return Err(Error::SearchSpaceTooLarge {
                size: exact.to_string(),
                bound,
            });
        }
    }

    let mut choice = vec![0usize; slots.len()];
    let mut count = 0u64;
    let mut first = None;
    loop {
        let vertex_maps: Vec<C::Morphism> = (0..len).map(|i| slots[i][choice[i]].clone()).collect();
        let mut homset_maps: BTreeMap<HomsetKey, HomsetMap<C::Morphism>> = BTreeMap::new();
        for (j, (key, k)) in homset_slots.iter().enumerate() {
            let v = slots[len + j][choice[len + j]].clone();
            match homset_maps
                .entry(*key)
                .or_insert_with(|| HomsetMap::Table(BTreeMap::new()))
            {
                HomsetMap::Table(t) => {
                    t.insert(k.clone(), v);
                }
                HomsetMap::Scaled { .. } => unreachable!("tables only"),
            }
        }
        for i in 1..len {
            homset_maps
                .entry(HomsetKey::consecutive(i))
                .or_insert_with(|| HomsetMap::Table(BTreeMap::new()));
        }
        let m = ChainBundleMap {
            source: l.clone(),
            target: candidate.bundle.clone(),
            vertex_maps,
            homset_maps,
        };
        if validate_chain_bundle_map(cat, &m, 0)?.is_valid() {
            count += 1;
            if first.is_none() {
                first = Some(m);
            }
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return Ok(ProductVerdict {
                    exists: count > 0,
                    unique: count == 1,
                    count,
                    failure: (count == 0).then(|| "no candidate passes the square laws".to_string()),
                    mediating: first,
                });
            }
            choice[pos] += 1;
            if choice[pos] < slots[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// Over a groupoid with zero, the map forced by invertible vertex maps:
/// `F(f) = f_i⁻¹ ; f ; f_{i-1}` on `Hom(M_i, M_{i-1})` and conjugation
/// `e ↦ f_i⁻¹ ; e ; f_i` on endo-homsets.
pub fn induce_groupoid_map<C: Category + ?Sized>(
    cat: &C,
    source: &ChainBundle<C::Object>,
    target: &ChainBundle<C::Object>,
    vertex_maps: Vec<C::Morphism>,
    scope: &[C::Object],
) -> Result<MapOf<C>> {
    is_groupoid_with_zero(cat, scope).map_err(Error::NotAGroupoid)?;
    let shell = ChainBundleMap::new(cat, source, target, vertex_maps, BTreeMap::new())?;
    let inverses = shell
        .vertex_maps
        .iter()
        .map(|f| {
            cat.inverse(f)
                .ok_or_else(|| Error::NotAGroupoid(format!("vertex map {} has no inverse", cat.morphism_name(f))))
        })
        .collect::<Result<Vec<_>>>()?;
    let len = shell.length();
    let mut homset_maps = BTreeMap::new();
    let keys = (1..len)
        .map(HomsetKey::consecutive)
        .chain((0..len).map(HomsetKey::endo));
    for key in keys {
        let (a, b) = key.endpoints(&shell.source);
        let hom = cat.homset(a, b);
        let list = hom.explicit().ok_or_else(|| Error::InfiniteHomset {
            level: key.level,
            homset: hom_label(cat, a, b),
        })?;
        let bottom = if key.endo { key.level } else { key.level - 1 };
        let mut table = BTreeMap::new();
        for g in list {
            let image = cat.compose(&cat.compose(&inverses[key.level], g)?, &shell.vertex_maps[bottom])?;
            table.insert(g.clone(), image);
        }
        homset_maps.insert(key, HomsetMap::Table(table));
    }
    let map = ChainBundleMap { homset_maps, ..shell };
    let report = validate_chain_bundle_map(cat, &map, 0)?;
    if let Some(v) = report.violations.first() {
        return Err(Error::NotAGroupoid(format!(
            "induced map is not a chain-bundle map: {v}"
        )));
    }
    Ok(map)
}

/// `0 = M_0 ⇛ M_1 ⇛ … ⇛ M_L` in the opposite category, stored bottom-up.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CochainBundle<O> {
    levels: Vec<O>,
}

impl<O: Clone> CochainBundle<O> {
    pub fn levels(&self) -> &[O] {
        &self.levels
    }

    pub fn length(&self) -> usize {
        self.levels.len()
    }
}

pub fn cochain_name<C: Category + ?Sized>(cat: &C, bundle: &CochainBundle<C::Object>) -> String {
    bundle
        .levels
        .iter()
        .map(|o| cat.object_name(o))
        .collect::<Vec<_>>()
        .join(" ⇛ ")
}

pub fn dualize<O: Clone>(bundle: &ChainBundle<O>) -> CochainBundle<O> {
    CochainBundle {
        levels: bundle.levels.clone(),
    }
}

/// Inverse of [`dualize`].
pub fn undualize<O: Clone>(bundle: &CochainBundle<O>) -> ChainBundle<O> {
    ChainBundle {
        levels: bundle.levels.clone(),
    }
}

/// Correspondence between homsets of a dualized map: `F(g) ↦ g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomsetRelation<M> {
    Pairs(Vec<(M, M)>),
    /// `(h·c)·k ↦ g·k` between scalar families.
    Scaled {
        coefficient: Rational,
        source_generator: Rational,
    },
}

/// A map of cochain bundles in the opposite category. Its vertex maps are
/// the original `f_i`, read as arrows `N_i → M_i` there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainBundleMap<O, M> {
    pub source: CochainBundle<O>,
    pub target: CochainBundle<O>,
    pub vertex_maps: Vec<M>,
    pub relations: BTreeMap<HomsetKey, HomsetRelation<M>>,
}

/// Turns `F: c → d` into a map `dual(d) → dual(c)` of cochain bundles.
pub fn dualize_map<C: Category + ?Sized>(cat: &C, map: &MapOf<C>) -> Result<CochainBundleMap<C::Object, C::Morphism>> {
    let mut relations = BTreeMap::new();
    for (key, hm) in &map.homset_maps {
        let (a, b) = key.endpoints(&map.source);
        let rel = match hm {
            HomsetMap::Table(t) => HomsetRelation::Pairs(t.iter().map(|(g, v)| (v.clone(), g.clone())).collect()),
            HomsetMap::Scaled { .. } => HomsetRelation::Scaled {
                coefficient: hm.coefficient().expect("scaled"),
                source_generator: cat.homset(a, b).generator().cloned().ok_or_else(|| {
                    Error::Unsupported(format!("scaled map on the explicit {}", hom_label(cat, a, b)))
                })?,
            },
        };
        relations.insert(*key, rel);
    }
    Ok(CochainBundleMap {
        source: dualize(&map.target),
        target: dualize(&map.source),
        vertex_maps: map.vertex_maps.clone(),
        relations,
    })
}

/// Square law of a cochain map, computed in the opposite category: for each
/// related pair `(x, y)` at level `i`, `x ; φ_i = φ_{i-1} ; y` there.
pub fn validate_cochain_map<C: Category + ?Sized>(
    op: &Opposite<'_, C>,
    map: &CochainBundleMap<C::Object, C::Morphism>,
) -> Result<ValidationReport> {
    let len = map.source.length();
    if map.target.length() != len || map.vertex_maps.len() != len {
        return Err(Error::ShapeMismatch {
            expected: len,
            found: map.vertex_maps.len(),
        });
    }
    let mut report = ValidationReport::new();
    for (i, phi) in map.vertex_maps.iter().enumerate() {
        if op.source(phi) != map.source.levels[i] || op.target(phi) != map.target.levels[i] || !op.is_member(phi) {
            report.push(Violation::new(
                rules::VERTEX,
                vec![format!("level {i}")],
                format!("{} is not an arrow between level {i} objects", op.morphism_name(phi)),
            ));
        }
    }
    if !report.is_valid() {
        return Ok(report);
    }
    for (key, rel) in &map.relations {
        let upper = &map.vertex_maps[key.level];
        let lower = if key.endo {
            upper
        } else {
            &map.vertex_maps[key.level - 1]
        };
        match rel {
            HomsetRelation::Pairs(pairs) => {
                for (x, y) in pairs {
                    let lhs = op.compose(x, upper).ok();
                    let rhs = op.compose(lower, y).ok();
                    if lhs.is_none() || lhs != rhs {
                        report.push(Violation::new(
                            rules::SQUARE,
                            vec![key.to_string(), op.morphism_name(y)],
                            format!("dual square fails at {key} for {}", op.morphism_name(y)),
                        ));
                    }
                }
            }
            HomsetRelation::Scaled {
                coefficient,
                source_generator,
            } => {
                let (Some(u), Some(w)) = (op.scalar(upper), op.scalar(lower)) else {
                    report.push(Violation::new(
                        rules::SQUARE,
                        vec![key.to_string()],
                        "vertex maps carry no scalar",
                    ));
                    continue;
                };
                // x = (h·c)·k, y = g·k; in the opposite category x ; φ is φ·x
                if &u * coefficient != source_generator * &w {
                    report.push(Violation::new(
                        rules::SQUARE,
                        vec![key.to_string(), "k = 1".to_string()],
                        format!("dual square fails at {key}, k = 1"),
                    ));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::subz::{SubZ, SubZObject};
    use crate::rational::{int, rat};

    fn bundle(keys: &[u64]) -> ChainBundle<SubZObject> {
        let objs: Vec<SubZObject> = keys.iter().map(|&k| SubZObject(k)).collect();
        build_chain_bundle(&SubZ, &objs).unwrap()
    }

    fn vertex(
        src: &ChainBundle<SubZObject>,
        tgt: &ChainBundle<SubZObject>,
        scalars: &[Rational],
    ) -> Vec<crate::backends::SubZMorphism> {
        // scalars given top first, without f_0
        let len = src.length();
        let mut out = vec![SubZ.zero_morphism(&src.levels[0], &tgt.levels[0]).unwrap()];
        for i in 1..len {
            let q = scalars[len - 1 - i].clone();
            out.push(SubZ.scalar_morphism(&src.levels[i], &tgt.levels[i], &q).unwrap());
        }
        out
    }

    fn example_map(scalars: &[Rational]) -> MapOf<SubZ> {
        let c = bundle(&[3, 2, 5]);
        let d = bundle(&[6, 4, 1]);
        let vm = vertex(&c, &d, scalars);
        let hm = BTreeMap::from([
            (HomsetKey::consecutive(3), HomsetMap::scaled(1, rat(2, 3))),
            (HomsetKey::consecutive(2), HomsetMap::scaled(1, rat(1, 4))),
        ]);
        ChainBundleMap::new(&SubZ, &c, &d, vm, hm).unwrap()
    }

    #[test]
    fn bundles_append_zero() {
        let b = bundle(&[3, 2, 5]);
        assert_eq!(bundle_name(&SubZ, &b), "3ℤ ⇛ 2ℤ ⇛ 5ℤ ⇛ 0");
        assert_eq!(bundle(&[0]).length(), 1);
        assert_eq!(bundle(&[3, 0]).length(), 2);
        assert_eq!(b.padded(5).display_order()[0], SubZObject::ZERO);
    }

    #[test]
    fn example_maps_validate() {
        let f = example_map(&[int(2), int(2), rat(1, 5)]);
        let g = example_map(&[int(4), int(4), rat(2, 5)]);
        assert!(validate_chain_bundle_map(&SubZ, &f, 3).unwrap().is_valid());
        assert!(validate_chain_bundle_map(&SubZ, &g, 3).unwrap().is_valid());
        assert!(functor_equals(&SubZ, &f, &g));
        assert!(!map_equals(&SubZ, &f, &g));
        assert!(map_equals(&SubZ, &f, &f));
    }

    #[test]
    fn tampered_vertex_is_caught_at_level_two() {
        let f = example_map(&[int(2), int(2), rat(3, 5)]);
        let report = validate_chain_bundle_map(&SubZ, &f, 3).unwrap();
        let v = report.with_rule(rules::SQUARE).next().unwrap();
        assert_eq!(v.witness, vec!["level 2".to_string(), "k = 1".to_string()]);
    }

    #[test]
    fn negated_homset_map_differs() {
        let f = example_map(&[int(2), int(2), rat(1, 5)]);
        let mut g = f.clone();
        g.homset_maps
            .insert(HomsetKey::consecutive(3), HomsetMap::scaled(-1, rat(2, 3)));
        assert!(!functor_equals(&SubZ, &f, &g));
        assert!(!map_equals(&SubZ, &f, &g));
    }

    #[test]
    fn subchain_examples() {
        let c = bundle(&[3, 2, 8]);
        let verdict = is_subchain_bundle(&SubZ, &bundle(&[6, 4, 16]), &c, false).unwrap();
        let SubchainVerdict::Accepted(witness) = verdict else {
            panic!("c′ rejected")
        };
        assert!(validate_chain_bundle_map(&SubZ, &witness, 3).unwrap().is_valid());
        let verdict = is_subchain_bundle(&SubZ, &bundle(&[9, 4, 16]), &c, false).unwrap();
        let SubchainVerdict::Rejected(failure) = verdict else {
            panic!("c″ accepted")
        };
        assert_eq!(failure.to_string(), "level (9ℤ, 4ℤ): 4/9 not in family 2/3·k");
        assert!(is_subchain_bundle(&SubZ, &c, &c, false).unwrap().is_accepted());
        assert!(!is_subchain_bundle(&SubZ, &c, &c, true).unwrap().is_accepted());
    }

    #[test]
    fn factorization_of_full_map() {
        let f = example_map(&[int(4), int(4), rat(2, 5)]);
        let fac = factorize_map(&SubZ, &f).unwrap();
        assert_eq!(bundle_name(&SubZ, &fac.middle), "12ℤ ⇛ 8ℤ ⇛ 2ℤ ⇛ 0");
        let scalars: Vec<Rational> = fac.epi.vertex_maps[1..]
            .iter()
            .rev()
            .map(|m| m.scalar.clone())
            .collect();
        assert_eq!(scalars, vec![int(4), int(4), rat(2, 5)]);
        assert!(fac.inclusion.vertex_maps[1..].iter().all(|m| m.scalar == int(1)));
        assert!(validate_chain_bundle_map(&SubZ, &fac.epi, 3).unwrap().is_valid());
        assert!(validate_chain_bundle_map(&SubZ, &fac.inclusion, 3).unwrap().is_valid());
    }

    #[test]
    fn identity_factorizes_through_itself() {
        let c = bundle(&[3, 2, 5]);
        let id = identity_map(&SubZ, &c);
        let fac = factorize_map(&SubZ, &id).unwrap();
        assert_eq!(fac.middle, c);
        assert!(map_equals(&SubZ, &fac.epi, &id));
        assert!(map_equals(&SubZ, &fac.inclusion, &id));
    }

    #[test]
    fn non_full_map_refused() {
        let mut f = example_map(&[int(4), int(4), rat(2, 5)]);
        f.homset_maps
            .insert(HomsetKey::consecutive(3), HomsetMap::scaled(2, rat(2, 3)));
        assert!(matches!(factorize_map(&SubZ, &f), Err(Error::NotFull { .. })));
    }

    #[test]
    fn subz_products_unsupported() {
        let err = product(&SubZ, &bundle(&[2]), &bundle(&[3, 6])).unwrap_err();
        assert!(matches!(err, Error::ProductsUnsupported { .. }));
    }

    #[test]
    fn composition_of_example_maps() {
        let f = example_map(&[int(2), int(2), rat(1, 5)]);
        let d = f.target.clone();
        let id = identity_map(&SubZ, &d);
        let composed = compose_maps(&SubZ, &f, &id).unwrap();
        assert!(map_equals(&SubZ, &composed, &f));
    }

    #[test]
    fn dual_of_example_map_is_valid() {
        let f = example_map(&[int(2), int(2), rat(1, 5)]);
        let dual = dualize_map(&SubZ, &f).unwrap();
        assert_eq!(cochain_name(&SubZ, &dual.target), "0 ⇛ 5ℤ ⇛ 2ℤ ⇛ 3ℤ");
        assert!(validate_cochain_map(&Opposite(&SubZ), &dual).unwrap().is_valid());
        assert_eq!(undualize(&dualize(&f.source)), f.source);
        let bad = example_map(&[int(2), int(2), rat(3, 5)]);
        let dual = dualize_map(&SubZ, &bad).unwrap();
        assert!(!validate_cochain_map(&Opposite(&SubZ), &dual).unwrap().is_valid());
    }
}
