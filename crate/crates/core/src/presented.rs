//! Finite categories given by explicit composition tables.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::backends::fingrp::{FinGrp, SubgroupId};
use crate::category::{
    is_epi_by_cancellation, is_mono_by_cancellation, validate_category, Category, Factorization, Homset, HomsetBody,
    ProductCone, Subobjects,
};
use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// Label-level description of a presented category, as read from a document.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PresentedSpec {
    pub objects: Vec<String>,
    /// `(label, src, dst)`
    pub arrows: Vec<(String, String, String)>,
    /// `(left, right, result)`: `left` then `right` is `result`.
    pub compose: Vec<(String, String, String)>,
    pub identities: BTreeMap<String, String>,
    pub zero: Option<String>,
    pub inclusions: Vec<String>,
    pub products: Vec<ProductSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSpec {
    pub left: String,
    pub right: String,
    pub object: String,
    pub left_projection: String,
    pub right_projection: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeclaredProduct {
    pub left: usize,
    pub right: usize,
    pub object: usize,
    pub left_projection: usize,
    pub right_projection: usize,
}

/// A finite category with objects and arrows referred to by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    table: BTreeMap<(usize, usize), usize>,
    identities: Vec<usize>,
    zero: Option<usize>,
    inclusions: BTreeSet<usize>,
    products: Vec<DeclaredProduct>,
}

impl PresentedCategory {
    /// Resolves labels and fills in missing composites with identities.
    /// Structural problems (unknown or duplicate labels, non-composable
    /// table entries, conflicting entries) are errors; closure and law
    /// violations are left for [`PresentedCategory::validate`].
    pub fn new(spec: &PresentedSpec) -> Result<Self> {
        let mut object_index = HashMap::new();
        for (i, o) in spec.objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                return Err(Error::UnknownObject(format!("object {o} declared twice")));
            }
        }
        let obj = |label: &str| {
            object_index
                .get(label)
                .copied()
                .ok_or_else(|| Error::UnknownObject(label.to_string()))
        };
        let mut arrows = Vec::with_capacity(spec.arrows.len());
        let mut arrow_index = HashMap::new();
        for (label, src, dst) in &spec.arrows {
            if arrow_index.insert(label.clone(), arrows.len()).is_some() {
                return Err(Error::InvalidMorphism(format!("arrow {label} declared twice")));
            }
            arrows.push(Arrow {
                label: label.clone(),
                src: obj(src)?,
                dst: obj(dst)?,
            });
        }
        let arrow = |label: &str| {
            arrow_index
                .get(label)
                .copied()
                .ok_or_else(|| Error::InvalidMorphism(format!("unknown arrow {label}")))
        };

        let mut identities = vec![usize::MAX; spec.objects.len()];
        for (o, label) in &spec.identities {
            let (a, f) = (obj(o)?, arrow(label)?);
            if arrows[f].src != a || arrows[f].dst != a {
                return Err(Error::InvalidMorphism(format!(
                    "identity {label} is not an endomorphism of {o}"
                )));
            }
            identities[a] = f;
        }
        if let Some(a) = identities.iter().position(|&f| f == usize::MAX) {
            return Err(Error::InvalidMorphism(format!(
                "object {} has no identity",
                spec.objects[a]
            )));
        }

        let mut table = BTreeMap::new();
        for (l, r, x) in &spec.compose {
            let (l, r, x) = (arrow(l)?, arrow(r)?, arrow(x)?);
            if arrows[l].dst != arrows[r].src {
                return Err(Error::NonComposable {
                    left: arrows[l].label.clone(),
                    right: arrows[r].label.clone(),
                });
            }
            if let Some(prev) = table.insert((l, r), x) {
                if prev != x {
                    return Err(Error::InvalidMorphism(format!(
                        "composite of {} and {} given twice",
                        arrows[l].label, arrows[r].label
                    )));
                }
            }
        }
        for (f, a) in arrows.iter().enumerate() {
            table.entry((identities[a.src], f)).or_insert(f);
            table.entry((f, identities[a.dst])).or_insert(f);
        }

        let zero = spec.zero.as_deref().map(obj).transpose()?;
        let inclusions = spec
            .inclusions
            .iter()
            .map(|l| arrow(l))
            .collect::<Result<BTreeSet<_>>>()?;
        let products = spec
            .products
            .iter()
            .map(|p| {
                Ok(DeclaredProduct {
                    left: obj(&p.left)?,
                    right: obj(&p.right)?,
                    object: obj(&p.object)?,
                    left_projection: arrow(&p.left_projection)?,
                    right_projection: arrow(&p.right_projection)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        for p in &products {
            let lp = &arrows[p.left_projection];
            let rp = &arrows[p.right_projection];
            if lp.src != p.object || lp.dst != p.left || rp.src != p.object || rp.dst != p.right {
                return Err(Error::InvalidMorphism(format!(
                    "projections of {} do not match its factors",
                    spec.objects[p.object]
                )));
            }
        }
        Ok(PresentedCategory {
            objects: spec.objects.clone(),
            arrows,
            table,
            identities,
            zero,
            inclusions,
            products,
        })
    }

    /// Label-level description; `new(&c.to_spec())` rebuilds `c`.
    pub fn to_spec(&self) -> PresentedSpec {
        let label = |f: usize| self.arrows[f].label.clone();
        PresentedSpec {
            objects: self.objects.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| {
                    (
                        a.label.clone(),
                        self.objects[a.src].clone(),
                        self.objects[a.dst].clone(),
                    )
                })
                .collect(),
            compose: self
                .table
                .iter()
                .map(|(&(l, r), &x)| (label(l), label(r), label(x)))
                .collect(),
            identities: self
                .identities
                .iter()
                .enumerate()
                .map(|(a, &f)| (self.objects[a].clone(), label(f)))
                .collect(),
            zero: self.zero.map(|z| self.objects[z].clone()),
            inclusions: self.inclusions.iter().map(|&f| label(f)).collect(),
            products: self
                .products
                .iter()
                .map(|p| ProductSpec {
                    left: self.objects[p.left].clone(),
                    right: self.objects[p.right].clone(),
                    object: self.objects[p.object].clone(),
                    left_projection: label(p.left_projection),
                    right_projection: label(p.right_projection),
                })
                .collect(),
        }
    }

    pub fn object_labels(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn object_by_label(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == label)
    }

    pub fn arrow_by_label(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn all_objects(&self) -> Vec<usize> {
        (0..self.objects.len()).collect()
    }

    pub fn declared_products(&self) -> &[DeclaredProduct] {
        &self.products
    }

    /// Associativity, unit laws, closure, disjointness and the zero object.
    pub fn validate(&self) -> ValidationReport {
        validate_category(self, &self.all_objects(), 0)
    }

    /// Same objects, arrows reversed, composition table transposed.
    /// Inclusions and declared products are carried over unchanged.
    pub fn opposite(&self) -> PresentedCategory {
        PresentedCategory {
            objects: self.objects.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    label: a.label.clone(),
                    src: a.dst,
                    dst: a.src,
                })
                .collect(),
            table: self.table.iter().map(|(&(l, r), &x)| ((r, l), x)).collect(),
            identities: self.identities.clone(),
            zero: self.zero,
            inclusions: self.inclusions.clone(),
            products: self.products.clone(),
        }
    }

    /// Exports the full subcategory on `objects` of a backend with finite homsets.
    pub fn export<C: Subobjects + ?Sized>(cat: &C, objects: &[C::Object]) -> Result<PresentedCategory> {
        let mut spec = PresentedSpec::default();
        let mut used = BTreeSet::new();
        let mut labels: HashMap<C::Morphism, String> = HashMap::new();
        let mut members = Vec::new();
        for a in objects {
            let name = cat.object_name(a);
            if !used.insert(name.clone()) {
                return Err(Error::UnknownObject(format!("object name {name} is not unique")));
            }
            spec.objects.push(name);
        }
        for a in objects {
            for b in objects {
                let hom = cat.homset(a, b);
                let list = hom.explicit().ok_or_else(|| {
                    Error::Unsupported(format!(
                        "Hom({}, {}) is infinite",
                        cat.object_name(a),
                        cat.object_name(b)
                    ))
                })?;
                for f in list {
                    let mut label = cat.morphism_name(f);
                    let mut n = 2;
                    while used.contains(&label) {
                        label = format!("{} #{n}", cat.morphism_name(f));
                        n += 1;
                    }
                    used.insert(label.clone());
                    spec.arrows
                        .push((label.clone(), cat.object_name(a), cat.object_name(b)));
                    if cat.is_inclusion(f) && cat.source(f) != cat.target(f) {
                        spec.inclusions.push(label.clone());
                    }
                    labels.insert(f.clone(), label);
                    members.push(f.clone());
                }
            }
            spec.identities
                .insert(cat.object_name(a), labels[&cat.identity(a)].clone());
        }
        for f in &members {
            for g in &members {
                if cat.target(f) != cat.source(g) {
                    continue;
                }
                let h = cat.compose(f, g)?;
                if let Some(l) = labels.get(&h) {
                    spec.compose.push((labels[f].clone(), labels[g].clone(), l.clone()));
                }
            }
        }
        spec.zero = cat
            .zero_object()
            .filter(|z| objects.contains(z))
            .map(|z| cat.object_name(&z));
        PresentedCategory::new(&spec)
    }

    /// A subgroup as a one-object category; arrows are its elements.
    pub fn from_group(group: &FinGrp, h: SubgroupId) -> Result<PresentedCategory> {
        let spec = group_spec(group, h, false);
        PresentedCategory::new(&spec)
    }

    /// The one-object groupoid of a subgroup with a zero object adjoined:
    /// objects `G` and `0`, the elements as automorphisms of `G`, and the
    /// zero arrows `0_G0`, `0_0G`, `0_GG` and `1_0`.
    pub fn group_with_zero(group: &FinGrp, h: SubgroupId) -> Result<PresentedCategory> {
        let spec = group_spec(group, h, true);
        PresentedCategory::new(&spec)
    }

    /// The product category `C × C`. Pairs with a zero component in each
    /// coordinate have declared products, so `(x, 0) × (0, y) = (x, y)`.
    pub fn pair(base: &PresentedCategory) -> Result<PresentedCategory> {
        let zero = base.zero.ok_or(Error::NoZeroObject)?;
        let n = base.objects.len();
        let obj_label = |a: usize, b: usize| format!("({}, {})", base.objects[a], base.objects[b]);
        let arr_label = |f: usize, g: usize| format!("({}, {})", base.arrows[f].label, base.arrows[g].label);
        let mut spec = PresentedSpec::default();
        for a in 0..n {
            for b in 0..n {
                spec.objects.push(obj_label(a, b));
                spec.identities
                    .insert(obj_label(a, b), arr_label(base.identities[a], base.identities[b]));
            }
        }
        let m = base.arrows.len();
        for f in 0..m {
            for g in 0..m {
                let (af, ag) = (&base.arrows[f], &base.arrows[g]);
                spec.arrows
                    .push((arr_label(f, g), obj_label(af.src, ag.src), obj_label(af.dst, ag.dst)));
                let incl_or_id = |x: usize| base.is_inclusion(&x);
                let both_id = base.identities[af.src] == f && base.identities[ag.src] == g;
                if incl_or_id(f) && incl_or_id(g) && !both_id {
                    spec.inclusions.push(arr_label(f, g));
                }
            }
        }
        for (&(f1, f2), &f) in &base.table {
            for (&(g1, g2), &g) in &base.table {
                spec.compose
                    .push((arr_label(f1, g1), arr_label(f2, g2), arr_label(f, g)));
            }
        }
        spec.zero = Some(obj_label(zero, zero));
        let zero_arrow = |a: usize| {
            base.homset(&a, &zero)
                .explicit()
                .and_then(|l| (l.len() == 1).then(|| l[0]))
                .ok_or(Error::NoZeroObject)
        };
        let project = |from: usize, to: usize| -> Result<usize> {
            if from == to {
                Ok(base.identities[from])
            } else {
                zero_arrow(from)
            }
        };
        for a1 in 0..n {
            for a2 in 0..n {
                for b1 in 0..n {
                    for b2 in 0..n {
                        let p1 = match (a1 == zero, b1 == zero) {
                            (true, _) => b1,
                            (false, true) => a1,
                            (false, false) => continue,
                        };
                        let p2 = match (a2 == zero, b2 == zero) {
                            (true, _) => b2,
                            (false, true) => a2,
                            (false, false) => continue,
                        };
                        spec.products.push(ProductSpec {
                            left: obj_label(a1, a2),
                            right: obj_label(b1, b2),
                            object: obj_label(p1, p2),
                            left_projection: arr_label(project(p1, a1)?, project(p2, a2)?),
                            right_projection: arr_label(project(p1, b1)?, project(p2, b2)?),
                        });
                    }
                }
            }
        }
        PresentedCategory::new(&spec)
    }

    /// Object `(a, b)` of a pair category built by [`PresentedCategory::pair`].
    pub fn pair_object(&self, base: &PresentedCategory, a: usize, b: usize) -> Option<usize> {
        self.object_by_label(&format!("({}, {})", base.objects[a], base.objects[b]))
    }

    /// Arrow `(f, g)` of a pair category built by [`PresentedCategory::pair`].
    pub fn pair_arrow(&self, base: &PresentedCategory, f: usize, g: usize) -> Option<usize> {
        self.arrow_by_label(&format!("({}, {})", base.arrows[f].label, base.arrows[g].label))
    }

    fn all_arrows(&self) -> impl Iterator<Item = usize> {
        0..self.arrows.len()
    }
}

fn group_spec(group: &FinGrp, h: SubgroupId, with_zero: bool) -> PresentedSpec {
    let elements = group.subgroup(h).elements.clone();
    let name = |x: usize| group.element(x).to_string();
    let g = "G".to_string();
    let mut spec = PresentedSpec {
        objects: vec![g.clone()],
        ..PresentedSpec::default()
    };
    for &x in &elements {
        spec.arrows.push((name(x), g.clone(), g.clone()));
        for &y in &elements {
            spec.compose.push((name(x), name(y), name(group.mul(x, y))));
        }
    }
    spec.identities.insert(g.clone(), name(0));
    if with_zero {
        let z = "0".to_string();
        spec.objects.push(z.clone());
        for (label, src, dst) in [("0_G0", &g, &z), ("0_0G", &z, &g), ("0_GG", &g, &g), ("1_0", &z, &z)] {
            spec.arrows.push((label.to_string(), src.clone(), dst.clone()));
        }
        spec.identities.insert(z.clone(), "1_0".to_string());
        let mut push = |l: &str, r: &str, x: &str| spec.compose.push((l.to_string(), r.to_string(), x.to_string()));
        for &x in &elements {
            push(&name(x), "0_GG", "0_GG");
            push("0_GG", &name(x), "0_GG");
            push(&name(x), "0_G0", "0_G0");
            push("0_0G", &name(x), "0_0G");
        }
        push("0_GG", "0_GG", "0_GG");
        push("0_GG", "0_G0", "0_G0");
        push("0_0G", "0_GG", "0_0G");
        push("0_G0", "0_0G", "0_GG");
        push("0_0G", "0_G0", "1_0");
        spec.zero = Some(z);
        spec.inclusions.push("0_0G".to_string());
    }
    spec
}

impl Category for PresentedCategory {
    type Object = usize;
    type Morphism = usize;

    fn object_name(&self, a: &usize) -> String {
        self.objects[*a].clone()
    }

    fn morphism_name(&self, f: &usize) -> String {
        self.arrows[*f].label.clone()
    }

    fn contains_object(&self, a: &usize) -> bool {
        *a < self.objects.len()
    }

    fn objects(&self) -> Option<Vec<usize>> {
        Some(self.all_objects())
    }

    fn source(&self, f: &usize) -> usize {
        self.arrows[*f].src
    }

    fn target(&self, f: &usize) -> usize {
        self.arrows[*f].dst
    }

    fn identity(&self, a: &usize) -> usize {
        self.identities[*a]
    }

    fn compose(&self, f: &usize, g: &usize) -> Result<usize> {
        if self.arrows[*f].dst != self.arrows[*g].src {
            return Err(Error::NonComposable {
                left: self.morphism_name(f),
                right: self.morphism_name(g),
            });
        }
        self.table.get(&(*f, *g)).copied().ok_or_else(|| Error::NotClosed {
            left: self.morphism_name(f),
            right: self.morphism_name(g),
        })
    }

    fn homset(&self, a: &usize, b: &usize) -> Homset<usize, usize> {
        Homset {
            source: *a,
            target: *b,
            body: HomsetBody::Explicit(
                self.all_arrows()
                    .filter(|&f| self.arrows[f].src == *a && self.arrows[f].dst == *b)
                    .collect(),
            ),
        }
    }

    fn is_member(&self, f: &usize) -> bool {
        *f < self.arrows.len()
    }

    fn zero_object(&self) -> Option<usize> {
        self.zero
    }

    fn is_mono(&self, f: &usize) -> bool {
        is_mono_by_cancellation(self, f, &self.all_objects(), 0)
    }

    fn is_epi(&self, f: &usize) -> bool {
        is_epi_by_cancellation(self, f, &self.all_objects(), 0)
    }
}

impl Subobjects for PresentedCategory {
    fn is_subobject(&self, a: &usize, b: &usize) -> bool {
        self.inclusion(a, b).is_some()
    }

    fn inclusion(&self, a: &usize, b: &usize) -> Option<usize> {
        if a == b {
            return Some(self.identities[*a]);
        }
        self.inclusions
            .iter()
            .copied()
            .find(|&f| self.arrows[f].src == *a && self.arrows[f].dst == *b)
    }

    fn is_inclusion(&self, f: &usize) -> bool {
        self.inclusions.contains(f) || self.identities[self.arrows[*f].src] == *f
    }

    /// Exhaustive search for `f = e ; j` with `e` epi and `j` an inclusion,
    /// preferring a factorization whose image lies below every other image.
    fn factorize(&self, f: &usize) -> Result<Factorization<usize, usize>> {
        let (a, b) = (self.source(f), self.target(f));
        let mut found = Vec::new();
        for m in self.all_objects() {
            let Some(j) = self.inclusion(&m, &b) else { continue };
            let hom = self.homset(&a, &m);
            for e in hom.explicit().unwrap_or_default() {
                if self.compose(e, &j).ok() == Some(*f) && self.is_epi(e) {
                    found.push(Factorization {
                        epi_part: *e,
                        inclusion_part: j,
                        image: m,
                    });
                }
            }
        }
        let minimal = found
            .iter()
            .position(|x| found.iter().all(|y| self.is_subobject(&x.image, &y.image)));
        match (minimal, found.first()) {
            (Some(i), _) => Ok(found.swap_remove(i)),
            (None, Some(first)) => Ok(first.clone()),
            (None, None) => Err(Error::NoFactorization(self.morphism_name(f))),
        }
    }

    fn product(&self, a: &usize, b: &usize) -> Option<ProductCone<usize, usize>> {
        self.products
            .iter()
            .find(|p| p.left == *a && p.right == *b)
            .map(|p| ProductCone {
                object: p.object,
                left: p.left_projection,
                right: p.right_projection,
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::rules;

    fn s(x: &str) -> String {
        x.to_string()
    }

    fn one_object() -> PresentedSpec {
        PresentedSpec {
            objects: vec![s("a")],
            arrows: vec![(s("1a"), s("a"), s("a"))],
            identities: BTreeMap::from([(s("a"), s("1a"))]),
            ..PresentedSpec::default()
        }
    }

    /// Objects a, b, 0 with f: a → b and zero arrows.
    fn arrow_with_zero() -> PresentedSpec {
        let arrows = [
            ("1a", "a", "a"),
            ("1b", "b", "b"),
            ("10", "0", "0"),
            ("f", "a", "b"),
            ("za0", "a", "0"),
            ("zb0", "b", "0"),
            ("z0a", "0", "a"),
            ("z0b", "0", "b"),
            ("zab", "a", "b"),
            ("zba", "b", "a"),
            ("zaa", "a", "a"),
            ("zbb", "b", "b"),
        ];
        let compose = [
            ("f", "zb0", "za0"),
            ("za0", "z0b", "zab"),
            ("za0", "z0a", "zaa"),
            ("zb0", "z0a", "zba"),
            ("zb0", "z0b", "zbb"),
            ("z0a", "za0", "10"),
            ("z0b", "zb0", "10"),
            ("z0a", "f", "z0b"),
            ("z0a", "zab", "z0b"),
            ("z0a", "zaa", "z0a"),
            ("z0b", "zba", "z0a"),
            ("z0b", "zbb", "z0b"),
            ("f", "zba", "zaa"),
            ("f", "zbb", "zab"),
            ("zab", "zba", "zaa"),
            ("zab", "zbb", "zab"),
            ("zab", "zb0", "za0"),
            ("zba", "f", "zbb"),
            ("zba", "zab", "zbb"),
            ("zba", "zaa", "zba"),
            ("zba", "za0", "zb0"),
            ("zaa", "f", "zab"),
            ("zaa", "zab", "zab"),
            ("zaa", "zaa", "zaa"),
            ("zaa", "za0", "za0"),
            ("zbb", "zba", "zba"),
            ("zbb", "zbb", "zbb"),
            ("zbb", "zb0", "zb0"),
        ];
        PresentedSpec {
            objects: vec![s("a"), s("b"), s("0")],
            arrows: arrows.iter().map(|(l, x, y)| (s(l), s(x), s(y))).collect(),
            compose: compose.iter().map(|(l, r, x)| (s(l), s(r), s(x))).collect(),
            identities: BTreeMap::from([(s("a"), s("1a")), (s("b"), s("1b")), (s("0"), s("10"))]),
            zero: Some(s("0")),
            inclusions: vec![s("z0a"), s("z0b")],
            products: Vec::new(),
        }
    }

    #[test]
    fn one_object_category_is_valid() {
        let c = PresentedCategory::new(&one_object()).unwrap();
        assert!(c.validate().is_valid());
        assert!(c.opposite().validate().is_valid());
    }

    #[test]
    fn arrow_with_zero_is_valid() {
        let c = PresentedCategory::new(&arrow_with_zero()).unwrap();
        let report = c.validate();
        assert!(report.is_valid(), "{:?}", report.violations);
        let op = c.opposite();
        assert!(op.validate().is_valid());
        assert_eq!(op.opposite(), c);
        let f = c.arrow_by_label("f").unwrap();
        assert_eq!(op.source(&f), c.target(&f));
    }

    #[test]
    fn broken_associativity_is_reported() {
        let mut spec = PresentedSpec {
            objects: vec![s("a")],
            arrows: vec![
                (s("1"), s("a"), s("a")),
                (s("x"), s("a"), s("a")),
                (s("y"), s("a"), s("a")),
            ],
            identities: BTreeMap::from([(s("a"), s("1"))]),
            ..PresentedSpec::default()
        };
        for (l, r, x) in [("x", "x", "y"), ("x", "y", "x"), ("y", "x", "y"), ("y", "y", "y")] {
            spec.compose.push((s(l), s(r), s(x)));
        }
        let c = PresentedCategory::new(&spec).unwrap();
        let report = c.validate();
        // (x;y);x = x;x = y but x;(y;x) = x;y = x
        let bad: Vec<_> = report.with_rule(rules::ASSOCIATIVITY).collect();
        assert!(!bad.is_empty());
        assert!(bad.iter().any(|v| v.witness == vec![s("x"), s("y"), s("x")]));
    }

    #[test]
    fn structural_errors_rejected() {
        let mut spec = one_object();
        spec.arrows.push((s("1a"), s("a"), s("a")));
        assert!(PresentedCategory::new(&spec).is_err());
        let mut spec = one_object();
        spec.compose.push((s("1a"), s("nope"), s("1a")));
        assert!(PresentedCategory::new(&spec).is_err());
        let mut spec = one_object();
        spec.identities.clear();
        assert!(PresentedCategory::new(&spec).is_err());
    }

    #[test]
    fn missing_composite_is_a_closure_violation() {
        let mut spec = arrow_with_zero();
        spec.compose.retain(|(l, r, _)| !(l == "f" && r == "zb0"));
        let c = PresentedCategory::new(&spec).unwrap();
        assert!(c.validate().with_rule(rules::CLOSURE).next().is_some());
    }

    #[test]
    fn cancellation_mono_epi() {
        let c = PresentedCategory::new(&arrow_with_zero()).unwrap();
        let za0 = c.arrow_by_label("za0").unwrap();
        let z0a = c.arrow_by_label("z0a").unwrap();
        assert!(!c.is_mono(&za0));
        assert!(c.is_epi(&za0));
        assert!(c.is_mono(&z0a));
    }

    #[test]
    fn factorization_search() {
        let c = PresentedCategory::new(&arrow_with_zero()).unwrap();
        let zab = c.arrow_by_label("zab").unwrap();
        let fac = c.factorize(&zab).unwrap();
        assert_eq!(c.compose(&fac.epi_part, &fac.inclusion_part).unwrap(), zab);
        assert_eq!(c.object_name(&fac.image), "0");
        // f is epi (only 1b, zbb leave b and they differ after f) but not an inclusion
        let f = c.arrow_by_label("f").unwrap();
        let fac = c.factorize(&f).unwrap();
        assert_eq!(fac.epi_part, f);
    }

    #[test]
    fn groups_as_categories() {
        let s3 = FinGrp::symmetric(3).unwrap();
        let g = PresentedCategory::from_group(&s3, s3.whole()).unwrap();
        assert!(g.validate().is_valid());
        let gz = PresentedCategory::group_with_zero(&s3, s3.whole()).unwrap();
        let report = gz.validate();
        assert!(report.is_valid(), "{:?}", report.violations);
        assert!(crate::category::is_groupoid_with_zero(&gz, &gz.all_objects()).is_ok());
    }

    #[test]
    fn pair_category_has_products() {
        let base = PresentedCategory::new(&arrow_with_zero()).unwrap();
        let p = PresentedCategory::pair(&base).unwrap();
        assert!(p.validate().is_valid());
        let (a, z) = (base.object_by_label("a").unwrap(), base.object_by_label("0").unwrap());
        let b = base.object_by_label("b").unwrap();
        let left = p.pair_object(&base, a, z).unwrap();
        let right = p.pair_object(&base, z, b).unwrap();
        let cone = p.product(&left, &right).unwrap();
        assert_eq!(p.object_name(&cone.object), "(a, b)");
        assert_eq!(p.target(&cone.left), left);
        assert!(p.product(&p.pair_object(&base, a, a).unwrap(), &left).is_none());
    }

    #[test]
    fn export_round_trips_through_labels() {
        let s3 = FinGrp::symmetric(3).unwrap();
        let c = PresentedCategory::export(&s3, &s3.subgroup_ids()).unwrap();
        assert_eq!(c.arrows().len(), 70);
        assert_eq!(PresentedCategory::new(&c.to_spec()).unwrap(), c);
    }
}
