//! JSON documents. Every top-level document carries a `"kind"` tag.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Category(CategoryDoc),
    Bundle(BundleDoc),
    Map(MapDoc),
    Selector(SelectorDoc),
    Chains(ChainsDoc),
    Factorization(FactorizationDoc),
    ChainMap(ChainMapDoc),
    Report(ReportDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Category(_) => "category",
            Document::Bundle(_) => "bundle",
            Document::Map(_) => "map",
            Document::Selector(_) => "selector",
            Document::Chains(_) => "chains",
            Document::Factorization(_) => "factorization",
            Document::ChainMap(_) => "chain_map",
            Document::Report(_) => "report",
        }
    }
}

/// `"subz"`, `{"fingrp": {"generators": [...]}}`, `{"presented": ...}` or `{"pair": ...}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum BackendDoc {
    Subz,
    Fingrp {
        generators: Vec<String>,
    },
    Presented(CategoryRef),
    /// The product category `C × C` of a presented category.
    Pair(CategoryRef),
}

/// A path relative to the referring document, or an inline category document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategoryRef {
    Path(String),
    Inline(Box<Document>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    #[serde(default)]
    pub compose: Vec<ComposeDoc>,
    #[serde(default)]
    pub identities: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inclusions: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub products: Vec<ProductDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub label: String,
    pub src: String,
    pub dst: String,
}

/// `left` then `right` is `result`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeDoc {
    pub left: String,
    pub right: String,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductDoc {
    pub left: String,
    pub right: String,
    pub object: String,
    pub left_projection: String,
    pub right_projection: String,
}

/// Levels top first; the trailing zero may be omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleDoc {
    pub backend: BackendDoc,
    pub levels: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub backend: BackendDoc,
    pub source: Vec<Value>,
    pub target: Vec<Value>,
    /// Top first; `f_0` may be omitted.
    pub vertex_maps: Vec<Value>,
    #[serde(default)]
    pub homset_maps: Vec<HomsetMapDoc>,
}

impl MapDoc {
    pub fn body(&self) -> MapBody {
        MapBody {
            source: self.source.clone(),
            target: self.target.clone(),
            vertex_maps: self.vertex_maps.clone(),
            homset_maps: self.homset_maps.clone(),
        }
    }

    pub fn from_body(backend: BackendDoc, body: MapBody) -> Self {
        MapDoc {
            backend,
            source: body.source,
            target: body.target,
            vertex_maps: body.vertex_maps,
            homset_maps: body.homset_maps,
        }
    }
}

/// A map nested inside another document, sharing its backend.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapBody {
    pub source: Vec<Value>,
    pub target: Vec<Value>,
    pub vertex_maps: Vec<Value>,
    #[serde(default)]
    pub homset_maps: Vec<HomsetMapDoc>,
}

/// Either `index_scale` with `target_generator`, or `table`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomsetMapDoc {
    pub level: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub endo: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_scale: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<(Value, Value)>>,
}

/// Chosen morphisms keyed by level index (`"3"` is `Hom(M_3, M_2)`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectorDoc {
    pub choices: BTreeMap<String, Value>,
}

/// Vertices and arrows top first, ending at `0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainDoc {
    pub vertices: Vec<Value>,
    pub arrows: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainsDoc {
    pub backend: BackendDoc,
    pub chains: Vec<ChainDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorizationDoc {
    pub backend: BackendDoc,
    pub middle: Vec<Value>,
    pub epi: MapBody,
    pub inclusion: MapBody,
}

/// Components top first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainMapDoc {
    pub backend: BackendDoc,
    pub from: ChainDoc,
    pub to: ChainDoc,
    pub components: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDoc {
    pub command: String,
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<ViolationDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub backend: Option<BackendDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<MapBody>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ViolationDoc {
    pub rule: String,
    pub witness: Vec<String>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FailureDoc {
    pub level: usize,
    pub pair: (String, String),
    pub reason: String,
}
