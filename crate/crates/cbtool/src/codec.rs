//! Translation between JSON values and backend objects and morphisms.

use std::collections::BTreeMap;
use std::path::Path;

use chainbundle::backends::{FinGrp, FinGrpHom, Perm, SubZ, SubZMorphism, SubZObject, SubgroupId, DEFAULT_ORDER_BOUND};
use chainbundle::bundle::{build_chain_bundle, ChainBundle, ChainBundleMap, HomsetKey, HomsetMap, MapOf};
use chainbundle::chains::{Chain, ChainMap};
use chainbundle::presented::{PresentedCategory, PresentedSpec, ProductSpec};
use chainbundle::rational::parse_rational;
use chainbundle::Subobjects;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::Value;

use crate::doc::{
    ArrowDoc, BackendDoc, CategoryDoc, CategoryRef, ChainDoc, ComposeDoc, Document, HomsetMapDoc, MapBody, ProductDoc,
};
use crate::CliError;

/// JSON encoding of one backend's objects and morphisms.
pub trait Codec: Subobjects {
    fn decode_object(&self, v: &Value) -> Result<Self::Object, String>;
    fn encode_object(&self, o: &Self::Object) -> Value;
    /// A morphism of `Hom(src, tgt)`.
    fn decode_morphism(&self, v: &Value, src: &Self::Object, tgt: &Self::Object) -> Result<Self::Morphism, String>;
    fn encode_morphism(&self, m: &Self::Morphism) -> Value;
}

impl Codec for SubZ {
    fn decode_object(&self, v: &Value) -> Result<SubZObject, String> {
        v.as_u64()
            .map(SubZObject)
            .ok_or_else(|| format!("expected a non-negative integer key, found {v}"))
    }

    fn encode_object(&self, o: &SubZObject) -> Value {
        Value::from(o.0)
    }

    fn decode_morphism(&self, v: &Value, src: &SubZObject, tgt: &SubZObject) -> Result<SubZMorphism, String> {
        let q = match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => n.as_i64().map(chainbundle::rational::int),
            _ => None,
        }
        .ok_or_else(|| format!("expected a rational scalar such as \"2/3\", found {v}"))?;
        SubZMorphism::new(*src, *tgt, q).map_err(|e| e.to_string())
    }

    fn encode_morphism(&self, m: &SubZMorphism) -> Value {
        Value::from(m.scalar.to_string())
    }
}

fn cycle(g: &FinGrp, v: &Value) -> Result<usize, String> {
    let text = v
        .as_str()
        .ok_or_else(|| format!("expected a permutation in cycle notation, found {v}"))?;
    let p = Perm::parse(text, g.degree()).map_err(|e| e.to_string())?;
    g.element_index(&p)
        .ok_or_else(|| format!("{text} is not in the ambient group"))
}

impl Codec for FinGrp {
    /// A list of generators in cycle notation, or a subgroup index.
    fn decode_object(&self, v: &Value) -> Result<SubgroupId, String> {
        match v {
            Value::Number(n) => {
                let i = n.as_u64().ok_or_else(|| format!("bad subgroup index {v}"))? as usize;
                if i < self.subgroups().len() {
                    Ok(SubgroupId(i))
                } else {
                    Err(format!("subgroup index {i} out of range"))
                }
            }
            Value::Array(items) => {
                let gens = items
                    .iter()
                    .map(|x| cycle(self, x).map(|i| self.element(i).clone()))
                    .collect::<Result<Vec<_>, _>>()?;
                self.subgroup_generated_by(&gens).map_err(|e| e.to_string())
            }
            _ => Err(format!("expected a generator list or subgroup index, found {v}")),
        }
    }

    fn encode_object(&self, o: &SubgroupId) -> Value {
        let gens = &self.subgroup(*o).generators;
        Value::Array(gens.iter().map(|&g| Value::from(self.element(g).to_string())).collect())
    }

    /// `[[x, f(x)], ...]` for elements generating the source.
    fn decode_morphism(&self, v: &Value, src: &SubgroupId, tgt: &SubgroupId) -> Result<FinGrpHom, String> {
        let pairs = v
            .as_array()
            .ok_or_else(|| format!("expected a list of [element, image] pairs, found {v}"))?;
        let assignment = pairs
            .iter()
            .map(|p| match p.as_array().map(Vec::as_slice) {
                Some([x, y]) => Ok((cycle(self, x)?, cycle(self, y)?)),
                _ => Err(format!("expected an [element, image] pair, found {p}")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.hom_from_assignment(*src, *tgt, &assignment)
            .map_err(|e| e.to_string())
    }

    fn encode_morphism(&self, m: &FinGrpHom) -> Value {
        let src = self.subgroup(m.source);
        Value::Array(
            src.generators
                .iter()
                .map(|&g| {
                    let image = self.apply(m, g).expect("generator of the source");
                    Value::Array(vec![
                        Value::from(self.element(g).to_string()),
                        Value::from(self.element(image).to_string()),
                    ])
                })
                .collect(),
        )
    }
}

impl Codec for PresentedCategory {
    fn decode_object(&self, v: &Value) -> Result<usize, String> {
        let label = v
            .as_str()
            .ok_or_else(|| format!("expected an object label, found {v}"))?;
        self.object_by_label(label)
            .ok_or_else(|| format!("unknown object {label:?}"))
    }

    fn encode_object(&self, o: &usize) -> Value {
        Value::from(self.object_labels()[*o].clone())
    }

    fn decode_morphism(&self, v: &Value, src: &usize, tgt: &usize) -> Result<usize, String> {
        let label = v
            .as_str()
            .ok_or_else(|| format!("expected an arrow label, found {v}"))?;
        let f = self
            .arrow_by_label(label)
            .ok_or_else(|| format!("unknown arrow {label:?}"))?;
        let arrow = &self.arrows()[f];
        if arrow.src != *src || arrow.dst != *tgt {
            return Err(format!(
                "arrow {label:?} is not in Hom({}, {})",
                self.object_labels()[*src],
                self.object_labels()[*tgt]
            ));
        }
        Ok(f)
    }

    fn encode_morphism(&self, m: &usize) -> Value {
        Value::from(self.arrows()[*m].label.clone())
    }
}

pub enum Backend {
    SubZ(SubZ),
    FinGrp(FinGrp),
    Presented(PresentedCategory),
}

/// Runs `$body` with `$cat` bound to the concrete backend.
#[macro_export]
macro_rules! with_backend {
    ($backend:expr, $cat:ident => $body:expr) => {
        match $backend {
            $crate::codec::Backend::SubZ($cat) => $body,
            $crate::codec::Backend::FinGrp($cat) => $body,
            $crate::codec::Backend::Presented($cat) => $body,
        }
    };
}

pub fn category_from_doc(doc: &CategoryDoc) -> Result<PresentedCategory, CliError> {
    let spec = PresentedSpec {
        objects: doc.objects.clone(),
        arrows: doc
            .arrows
            .iter()
            .map(|a| (a.label.clone(), a.src.clone(), a.dst.clone()))
            .collect(),
        compose: doc
            .compose
            .iter()
            .map(|c| (c.left.clone(), c.right.clone(), c.result.clone()))
            .collect(),
        identities: doc.identities.clone(),
        zero: doc.zero.clone(),
        inclusions: doc.inclusions.clone(),
        products: doc
            .products
            .iter()
            .map(|p| ProductSpec {
                left: p.left.clone(),
                right: p.right.clone(),
                object: p.object.clone(),
                left_projection: p.left_projection.clone(),
                right_projection: p.right_projection.clone(),
            })
            .collect(),
    };
    PresentedCategory::new(&spec).map_err(|e| CliError::Parse(format!("category: {e}")))
}

pub fn category_to_doc(cat: &PresentedCategory) -> CategoryDoc {
    let spec = cat.to_spec();
    CategoryDoc {
        objects: spec.objects,
        arrows: spec
            .arrows
            .into_iter()
            .map(|(label, src, dst)| ArrowDoc { label, src, dst })
            .collect(),
        compose: spec
            .compose
            .into_iter()
            .map(|(left, right, result)| ComposeDoc { left, right, result })
            .collect(),
        identities: spec.identities,
        zero: spec.zero,
        inclusions: spec.inclusions,
        products: spec
            .products
            .into_iter()
            .map(|p| ProductDoc {
                left: p.left,
                right: p.right,
                object: p.object,
                left_projection: p.left_projection,
                right_projection: p.right_projection,
            })
            .collect(),
    }
}

fn resolve_category(r: &CategoryRef, base: &Path) -> Result<PresentedCategory, CliError> {
    match r {
        CategoryRef::Inline(doc) => match doc.as_ref() {
            Document::Category(c) => category_from_doc(c),
            other => Err(CliError::Parse(format!(
                "expected a category document, found kind {:?}",
                other.kind()
            ))),
        },
        CategoryRef::Path(p) => match crate::read_document(&base.join(p))? {
            Document::Category(c) => category_from_doc(&c),
            other => Err(CliError::Parse(format!(
                "{p}: expected a category document, found kind {:?}",
                other.kind()
            ))),
        },
    }
}

/// `bound` caps the ambient group order.
pub fn load_backend(doc: &BackendDoc, base: &Path, bound: Option<u64>) -> Result<Backend, CliError> {
    match doc {
        BackendDoc::Subz => Ok(Backend::SubZ(SubZ)),
        BackendDoc::Fingrp { generators } => {
            let gens: Vec<&str> = generators.iter().map(String::as_str).collect();
            let cap = bound.map_or(DEFAULT_ORDER_BOUND, |b| b as usize);
            FinGrp::from_cycle_strings(&gens, cap)
                .map(Backend::FinGrp)
                .map_err(|e| match e {
                    chainbundle::Error::AmbientTooLarge { .. } => CliError::Unsupported(e.to_string()),
                    other => CliError::Parse(other.to_string()),
                })
        }
        BackendDoc::Presented(r) => resolve_category(r, base).map(Backend::Presented),
        BackendDoc::Pair(r) => {
            let base_cat = resolve_category(r, base)?;
            PresentedCategory::pair(&base_cat)
                .map(Backend::Presented)
                .map_err(|e| CliError::Invalid(e.to_string()))
        }
    }
}

fn parse_err(context: &str) -> impl Fn(String) -> CliError + '_ {
    move |e| CliError::Parse(format!("{context}: {e}"))
}

pub fn decode_bundle<C: Codec + ?Sized>(cat: &C, levels: &[Value]) -> Result<ChainBundle<C::Object>, CliError> {
    let objs = levels
        .iter()
        .map(|v| cat.decode_object(v))
        .collect::<Result<Vec<_>, _>>()
        .map_err(parse_err("levels"))?;
    build_chain_bundle(cat, &objs).map_err(|e| CliError::Parse(format!("levels: {e}")))
}

/// Top first, always ending with the zero level.
pub fn encode_bundle<C: Codec + ?Sized>(cat: &C, bundle: &ChainBundle<C::Object>) -> Vec<Value> {
    bundle.display_order().iter().map(|o| cat.encode_object(o)).collect()
}

pub fn decode_map<C: Codec + ?Sized>(cat: &C, body: &MapBody) -> Result<MapOf<C>, CliError> {
    let source = decode_bundle(cat, &body.source)?;
    let target = decode_bundle(cat, &body.target)?;
    let len = source.length().max(target.length());
    let (source, target) = (source.padded(len), target.padded(len));
    let given = body.vertex_maps.len();
    if given != len && given + 1 != len {
        return Err(CliError::Parse(format!(
            "vertex_maps: expected {} or {} entries, found {given}",
            len - 1,
            len
        )));
    }
    // display order: vertex_maps[j] sits at level len - 1 - j
    let mut vertex = Vec::with_capacity(given);
    for (j, v) in body.vertex_maps.iter().enumerate() {
        let i = len - 1 - j;
        vertex.push(
            cat.decode_morphism(v, source.level(i), target.level(i))
                .map_err(|e| CliError::Parse(format!("vertex_maps[{j}] (level {i}): {e}")))?,
        );
    }
    vertex.reverse();
    let mut homset_maps = BTreeMap::new();
    for entry in &body.homset_maps {
        let key = HomsetKey {
            level: entry.level,
            endo: entry.endo,
        };
        if key.level >= len || (!key.endo && key.level == 0) {
            return Err(CliError::Parse(format!("homset_maps: no homset at {key}")));
        }
        let hm = match (&entry.index_scale, &entry.target_generator, &entry.table) {
            (Some(c), Some(h), None) => HomsetMap::Scaled {
                index_scale: BigInt::from(*c),
                target_generator: parse_rational(h)
                    .ok_or_else(|| CliError::Parse(format!("homset_maps: bad rational {h:?} at {key}")))?,
            },
            (None, None, Some(rows)) => {
                let (a, b) = key.endpoints(&source);
                let (x, y) = key.endpoints(&target);
                let mut table = BTreeMap::new();
                for (m, n) in rows {
                    let m = cat.decode_morphism(m, a, b).map_err(parse_err("homset_maps"))?;
                    let n = cat.decode_morphism(n, x, y).map_err(parse_err("homset_maps"))?;
                    if table.insert(m, n).is_some() {
                        return Err(CliError::Parse(format!("homset_maps: repeated entry at {key}")));
                    }
                }
                HomsetMap::Table(table)
            }
            _ => {
                return Err(CliError::Parse(format!(
                    "homset_maps at {key}: give either index_scale with target_generator, or table"
                )))
            }
        };
        if homset_maps.insert(key, hm).is_some() {
            return Err(CliError::Parse(format!("homset_maps: {key} given twice")));
        }
    }
    ChainBundleMap::new(cat, &source, &target, vertex, homset_maps).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn encode_map<C: Codec + ?Sized>(cat: &C, map: &MapOf<C>) -> MapBody {
    MapBody {
        source: encode_bundle(cat, &map.source),
        target: encode_bundle(cat, &map.target),
        vertex_maps: map.vertex_maps.iter().rev().map(|m| cat.encode_morphism(m)).collect(),
        homset_maps: map
            .homset_maps
            .iter()
            .map(|(key, hm)| match hm {
                HomsetMap::Scaled {
                    index_scale,
                    target_generator,
                } => HomsetMapDoc {
                    level: key.level,
                    endo: key.endo,
                    index_scale: Some(index_scale.to_i64().expect("desk-scale index")),
                    target_generator: Some(target_generator.to_string()),
                    table: None,
                },
                HomsetMap::Table(t) => HomsetMapDoc {
                    level: key.level,
                    endo: key.endo,
                    index_scale: None,
                    target_generator: None,
                    table: Some(
                        t.iter()
                            .map(|(m, n)| (cat.encode_morphism(m), cat.encode_morphism(n)))
                            .collect(),
                    ),
                },
            })
            .collect(),
    }
}

pub fn encode_chain<C: Codec + ?Sized>(cat: &C, chain: &Chain<C::Object, C::Morphism>) -> ChainDoc {
    ChainDoc {
        vertices: chain.vertices.iter().rev().map(|o| cat.encode_object(o)).collect(),
        arrows: chain.arrows.iter().rev().map(|m| cat.encode_morphism(m)).collect(),
    }
}

pub fn decode_chain<C: Codec + ?Sized>(cat: &C, doc: &ChainDoc) -> Result<Chain<C::Object, C::Morphism>, CliError> {
    let mut vertices = doc
        .vertices
        .iter()
        .map(|v| cat.decode_object(v))
        .collect::<Result<Vec<_>, _>>()
        .map_err(parse_err("chain vertices"))?;
    vertices.reverse();
    if vertices.first() != cat.zero_object().as_ref() {
        return Err(CliError::Parse("a chain must end at the zero object".into()));
    }
    if doc.arrows.len() + 1 != vertices.len() {
        return Err(CliError::Parse(format!(
            "a chain with {} vertices needs {} arrows, found {}",
            vertices.len(),
            vertices.len() - 1,
            doc.arrows.len()
        )));
    }
    let mut arrows = Vec::new();
    for i in 1..vertices.len() {
        let v = &doc.arrows[vertices.len() - 1 - i];
        arrows.push(
            cat.decode_morphism(v, &vertices[i], &vertices[i - 1])
                .map_err(parse_err("chain arrows"))?,
        );
    }
    Ok(Chain { vertices, arrows })
}

pub fn decode_chain_map<C: Codec + ?Sized>(
    cat: &C,
    components: &[Value],
    from: &Chain<C::Object, C::Morphism>,
    to: &Chain<C::Object, C::Morphism>,
) -> Result<ChainMap<C::Morphism>, CliError> {
    let len = from.length().max(to.length());
    if components.len() != len {
        return Err(CliError::Parse(format!(
            "expected {len} components, found {}",
            components.len()
        )));
    }
    let zero = cat.zero_object().expect("backends have zero");
    let at = |c: &Chain<C::Object, C::Morphism>, i: usize| c.vertices.get(i).cloned().unwrap_or_else(|| zero.clone());
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let v = &components[len - 1 - i];
        out.push(
            cat.decode_morphism(v, &at(from, i), &at(to, i))
                .map_err(parse_err("components"))?,
        );
    }
    Ok(ChainMap { components: out })
}

pub fn encode_chain_map<C: Codec + ?Sized>(cat: &C, map: &ChainMap<C::Morphism>) -> Vec<Value> {
    map.components.iter().rev().map(|m| cat.encode_morphism(m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use chainbundle::Category;

    #[test]
    fn fingrp_values_survive_encoding() {
        let g = FinGrp::symmetric(3).unwrap();
        for h in g.subgroup_ids() {
            assert_eq!(g.decode_object(&g.encode_object(&h)).unwrap(), h);
            for k in g.subgroup_ids() {
                for f in g.homomorphisms(h, k) {
                    assert_eq!(&g.decode_morphism(&g.encode_morphism(f), &h, &k).unwrap(), f);
                }
            }
        }
        assert_eq!(g.decode_object(&Value::from(4)).unwrap(), SubgroupId(4));
        assert!(g.decode_object(&Value::from(6)).is_err());
    }

    #[test]
    fn subz_values_survive_encoding() {
        let f = SubZ.morphism(6, 4, chainbundle::rational::rat(-4, 3)).unwrap();
        let back = SubZ
            .decode_morphism(&SubZ.encode_morphism(&f), &SubZObject(6), &SubZObject(4))
            .unwrap();
        assert_eq!(back, f);
        assert!(SubZ
            .decode_morphism(&Value::from("1/3"), &SubZObject(3), &SubZObject(6))
            .is_err());
        assert!(SubZ
            .decode_morphism(&Value::from(2), &SubZObject(3), &SubZObject(6))
            .is_ok());
        assert!(SubZ.decode_object(&Value::from(-1)).is_err());
    }

    #[test]
    fn maps_survive_encoding() {
        let body: MapBody = serde_json::from_value(serde_json::json!({
            "source": [3, 2, 5],
            "target": [6, 4, 1],
            "vertex_maps": ["2", "2", "1/5"],
            "homset_maps": [
                {"level": 3, "index_scale": 1, "target_generator": "2/3"},
                {"level": 2, "index_scale": 1, "target_generator": "1/4"},
                {"level": 1, "endo": true, "index_scale": 1, "target_generator": "1"}
            ]
        }))
        .unwrap();
        let map = decode_map(&SubZ, &body).unwrap();
        assert_eq!(map.length(), 4);
        let again = decode_map(&SubZ, &encode_map(&SubZ, &map)).unwrap();
        assert_eq!(again, map);
    }

    #[test]
    fn malformed_homset_maps_are_parse_errors() {
        let body = |hm: Value| -> MapBody {
            serde_json::from_value(serde_json::json!({
                "source": [3, 2], "target": [6, 4], "vertex_maps": ["2", "2"], "homset_maps": [hm]
            }))
            .unwrap()
        };
        for hm in [
            serde_json::json!({"level": 2, "index_scale": 1}),
            serde_json::json!({"level": 5, "index_scale": 1, "target_generator": "1"}),
            serde_json::json!({"level": 0, "index_scale": 1, "target_generator": "1"}),
            serde_json::json!({"level": 2, "index_scale": 1, "target_generator": "x"}),
        ] {
            assert!(
                matches!(decode_map(&SubZ, &body(hm.clone())), Err(CliError::Parse(_))),
                "{hm}"
            );
        }
    }

    #[test]
    fn presented_morphisms_check_endpoints() {
        let doc: CategoryDoc = serde_json::from_value(serde_json::json!({
            "objects": ["0", "A"],
            "arrows": [
                {"label": "1_0", "src": "0", "dst": "0"},
                {"label": "1_A", "src": "A", "dst": "A"},
                {"label": "t", "src": "A", "dst": "0"},
                {"label": "s", "src": "0", "dst": "A"},
                {"label": "z", "src": "A", "dst": "A"}
            ],
            "compose": [{"left": "t", "right": "s", "result": "z"}],
            "identities": {"0": "1_0", "A": "1_A"},
            "zero": "0"
        }))
        .unwrap();
        let cat = category_from_doc(&doc).unwrap();
        let (z, a) = (
            cat.decode_object(&Value::from("0")).unwrap(),
            cat.decode_object(&Value::from("A")).unwrap(),
        );
        let t = cat.decode_morphism(&Value::from("t"), &a, &z).unwrap();
        assert_eq!(cat.encode_morphism(&t), Value::from("t"));
        assert!(cat.decode_morphism(&Value::from("t"), &z, &a).is_err());
        assert_eq!(category_from_doc(&category_to_doc(&cat)).unwrap(), cat);
        assert!(cat.is_zero_morphism(&t));
    }
}
