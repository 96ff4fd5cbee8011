//! One function per subcommand. Each returns the exit code and appends its
//! report to `out`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use chainbundle::bundle::{
    bundle_name, factorize_map, is_subchain_bundle, product, validate_chain_bundle_map, ChainBundle, MapOf,
    SubchainVerdict,
};
use chainbundle::chains::{
    build_gamma, chain_name, extract_chains, extract_complexes, validate_chain_map, Chain, Selector,
};
use chainbundle::{ValidationReport, Violation};
use serde_json::Value;

use crate::codec::{
    category_from_doc, category_to_doc, decode_bundle, decode_chain, decode_chain_map, decode_map, encode_bundle,
    encode_chain, encode_map, load_backend, Backend, Codec,
};
use crate::doc::{BackendDoc, BundleDoc, ChainsDoc, Document, FactorizationDoc, FailureDoc, ReportDoc, ViolationDoc};
use crate::{read_document, render_document, with_backend, Cli, CliError, Command, Format, Output};

/// Family indices sampled by functoriality checks when no bound is given.
const SAMPLE_BOUND: u64 = 3;
/// Search cap for Γ when no bound is given.
const SEARCH_BOUND: u64 = 4096;

struct Ctx {
    format: Format,
    strict: bool,
    bound: Option<u64>,
}

impl Ctx {
    fn sample_bound(&self) -> u64 {
        self.bound.map_or(SAMPLE_BOUND, |b| b.min(SAMPLE_BOUND))
    }

    fn search_bound(&self) -> u64 {
        self.bound.unwrap_or(SEARCH_BOUND)
    }

    fn machine(&self) -> bool {
        self.format == Format::Machine
    }
}

pub fn run(cli: &Cli) -> Output {
    let ctx = Ctx {
        format: cli.format,
        strict: cli.strict_corestriction,
        bound: cli.bound,
    };
    let mut out = String::new();
    let result = match &cli.command {
        Command::Check { doc } => check(&ctx, doc, &mut out),
        Command::Subchain { small, big } => subchain(&ctx, small, big, &mut out),
        Command::Factorize { map } => factorize(&ctx, map, &mut out),
        Command::Chains { bundle, selector } => chains(&ctx, bundle, selector, &mut out),
        Command::Product { left, right } => product_cmd(&ctx, left, right, &mut out),
        Command::Complexes { bundle } => complexes(&ctx, bundle, &mut out),
        Command::Gamma { bundles, selector } => gamma(&ctx, bundles, selector, &mut out),
    };
    match result {
        Ok(code) => Output {
            code,
            stdout: out,
            stderr: String::new(),
        },
        Err(e) => Output {
            code: e.exit_code(),
            stdout: out,
            stderr: format!("cbtool: {e}\n"),
        },
    }
}

fn base_dir(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new("."))
}

/// Human text for a morphism: the document form when it is a plain string.
fn morphism_text<C: Codec + ?Sized>(cat: &C, m: &C::Morphism) -> String {
    match cat.encode_morphism(m) {
        Value::String(s) => s,
        _ => cat.morphism_name(m),
    }
}

fn report_doc(command: &str, report: &ValidationReport) -> ReportDoc {
    ReportDoc {
        command: command.to_string(),
        valid: report.is_valid(),
        violations: report.violations.iter().map(violation_doc).collect(),
        failure: None,
        backend: None,
        witness: None,
    }
}

fn violation_doc(v: &Violation) -> ViolationDoc {
    ViolationDoc {
        rule: v.rule.clone(),
        witness: v.witness.clone(),
        message: v.message.clone(),
    }
}

fn emit_report(ctx: &Ctx, what: &str, report: &ValidationReport, out: &mut String) -> i32 {
    if ctx.machine() {
        out.push_str(&render_document(&Document::Report(report_doc("check", report))));
    } else if report.is_valid() {
        let _ = writeln!(out, "valid {what}");
    } else {
        let n = report.violations.len();
        let _ = writeln!(out, "invalid {what}: {n} violation{}", if n == 1 { "" } else { "s" });
        for v in &report.violations {
            let _ = writeln!(out, "[{}] {}", v.rule, v.message);
            let _ = writeln!(out, "  witness: {}", v.witness.join(", "));
        }
    }
    if report.is_valid() {
        0
    } else {
        1
    }
}

/// A bundle document with its backend loaded.
struct LoadedBundle {
    backend_doc: BackendDoc,
    backend: Backend,
    levels: Vec<Value>,
}

fn load_bundle(path: &Path, bound: Option<u64>) -> Result<LoadedBundle, CliError> {
    match read_document(path)? {
        Document::Bundle(BundleDoc { backend, levels }) => Ok(LoadedBundle {
            backend: load_backend(&backend, base_dir(path), bound)?,
            backend_doc: backend,
            levels,
        }),
        other => Err(CliError::Parse(format!(
            "{}: expected a bundle document, found kind {:?}",
            path.display(),
            other.kind()
        ))),
    }
}

fn same_backend(a: &BackendDoc, b: &BackendDoc) -> Result<(), CliError> {
    if a == b {
        Ok(())
    } else {
        Err(CliError::Parse("documents use different backends".into()))
    }
}

fn check(ctx: &Ctx, path: &Path, out: &mut String) -> Result<i32, CliError> {
    let base = base_dir(path);
    let doc = read_document(path)?;
    let what = doc.kind();
    let report = match &doc {
        Document::Category(c) => category_from_doc(c)?.validate(),
        Document::Bundle(b) => {
            let backend = load_backend(&b.backend, base, ctx.bound)?;
            with_backend!(&backend, cat => decode_bundle(cat, &b.levels).map(|_| ()))?;
            ValidationReport::new()
        }
        Document::Map(m) => {
            let backend = load_backend(&m.backend, base, ctx.bound)?;
            let bound = ctx.sample_bound();
            with_backend!(&backend, cat => {
                let map = decode_map(cat, &m.body())?;
                validate_chain_bundle_map(cat, &map, bound)?
            })
        }
        Document::Chains(c) => {
            let backend = load_backend(&c.backend, base, ctx.bound)?;
            with_backend!(&backend, cat => {
                for chain in &c.chains {
                    decode_chain(cat, chain)?;
                }
            });
            ValidationReport::new()
        }
        Document::ChainMap(m) => {
            let backend = load_backend(&m.backend, base, ctx.bound)?;
            with_backend!(&backend, cat => {
                let from = decode_chain(cat, &m.from)?;
                let to = decode_chain(cat, &m.to)?;
                let map = decode_chain_map(cat, &m.components, &from, &to)?;
                validate_chain_map(cat, &map, &from, &to)?
            })
        }
        Document::Factorization(f) => {
            let backend = load_backend(&f.backend, base, ctx.bound)?;
            let bound = ctx.sample_bound();
            with_backend!(&backend, cat => {
                let middle = decode_bundle(cat, &f.middle)?;
                let epi = decode_map(cat, &f.epi)?;
                let inclusion = decode_map(cat, &f.inclusion)?;
                let mut report = validate_chain_bundle_map(cat, &epi, bound)?;
                report.extend(validate_chain_bundle_map(cat, &inclusion, bound)?);
                let len = epi.length();
                if epi.target != middle.padded(len) || inclusion.source != middle.padded(inclusion.length()) {
                    report.push(Violation::new(
                        "middle",
                        vec![bundle_name(cat, &middle)],
                        "middle bundle does not join the epi part to the inclusion part",
                    ));
                }
                report
            })
        }
        Document::Selector(_) | Document::Report(_) => ValidationReport::new(),
    };
    Ok(emit_report(ctx, what, &report, out))
}

fn subchain(ctx: &Ctx, small: &Path, big: &Path, out: &mut String) -> Result<i32, CliError> {
    let s = load_bundle(small, ctx.bound)?;
    let b = load_bundle(big, ctx.bound)?;
    same_backend(&s.backend_doc, &b.backend_doc)?;
    with_backend!(&s.backend, cat => {
        let sb = decode_bundle(cat, &s.levels)?;
        let bb = decode_bundle(cat, &b.levels)?;
        let verdict = is_subchain_bundle(cat, &sb, &bb, ctx.strict)?;
        let (code, failure, witness) = match &verdict {
            SubchainVerdict::Accepted(map) => (0, None, Some(map)),
            SubchainVerdict::Rejected(f) => (1, Some(f), None),
        };
        if ctx.machine() {
            let doc = ReportDoc {
                command: "subchain".into(),
                valid: code == 0,
                violations: Vec::new(),
                failure: failure.map(|f| FailureDoc {
                    level: f.level,
                    pair: f.pair.clone(),
                    reason: f.reason.clone(),
                }),
                backend: Some(s.backend_doc.clone()),
                witness: witness.map(|m| encode_map(cat, m)),
            };
            out.push_str(&render_document(&Document::Report(doc)));
        } else if let Some(map) = witness {
            let _ = writeln!(out, "subchain: {} ⊑ {}", bundle_name(cat, &sb), bundle_name(cat, &bb));
            let _ = writeln!(out, "inclusion witness: {}", vertex_text(cat, map));
        } else if let Some(f) = failure {
            let _ = writeln!(out, "not a subchain: {f}");
        }
        Ok(code)
    })
}

/// Vertex maps top first, without `f_0`.
fn vertex_text<C: Codec + ?Sized>(cat: &C, map: &MapOf<C>) -> String {
    let parts: Vec<String> = map.vertex_maps[1..]
        .iter()
        .rev()
        .map(|m| morphism_text(cat, m))
        .collect();
    parts.join(", ")
}

fn factorize(ctx: &Ctx, path: &Path, out: &mut String) -> Result<i32, CliError> {
    let doc = read_document(path)?;
    let Document::Map(m) = doc else {
        return Err(CliError::Parse(format!("{}: expected a map document", path.display())));
    };
    let backend = load_backend(&m.backend, base_dir(path), ctx.bound)?;
    with_backend!(&backend, cat => {
        let map = decode_map(cat, &m.body())?;
        let report = validate_chain_bundle_map(cat, &map, ctx.sample_bound())?;
        if !report.is_valid() {
            return Ok(emit_report(ctx, "map", &report, out));
        }
        let f = factorize_map(cat, &map)?;
        if ctx.machine() {
            let doc = FactorizationDoc {
                backend: m.backend.clone(),
                middle: encode_bundle(cat, &f.middle),
                epi: encode_map(cat, &f.epi),
                inclusion: encode_map(cat, &f.inclusion),
            };
            out.push_str(&render_document(&Document::Factorization(doc)));
        } else {
            let _ = writeln!(out, "middle: {}", bundle_name(cat, &f.middle));
            let _ = writeln!(out, "epi vertex maps: {}", vertex_text(cat, &f.epi));
            let _ = writeln!(out, "inclusion vertex maps: {}", vertex_text(cat, &f.inclusion));
        }
        Ok(0)
    })
}

fn parse_selector<C: Codec + ?Sized>(
    cat: &C,
    text: &str,
    bundle: &ChainBundle<C::Object>,
) -> Result<Selector<C::Morphism>, CliError> {
    match text {
        "inclusions" => return Ok(Selector::InclusionsOnly),
        "boundary" => return Ok(Selector::BoundaryCondition),
        _ => {}
    }
    let path = Path::new(text);
    let Document::Selector(doc) = read_document(path)? else {
        return Err(CliError::Parse(format!("{text}: expected a selector document")));
    };
    let mut choices = BTreeMap::new();
    for (key, v) in &doc.choices {
        let level: usize = key
            .parse()
            .map_err(|_| CliError::Parse(format!("selector: bad level index {key:?}")))?;
        if level == 0 || level >= bundle.length() {
            return Err(CliError::Parse(format!("selector: no homset at level {level}")));
        }
        let f = cat
            .decode_morphism(v, bundle.level(level), bundle.level(level - 1))
            .map_err(|e| CliError::Parse(format!("selector level {level}: {e}")))?;
        choices.insert(level, f);
    }
    Ok(Selector::ExplicitChoice(choices))
}

fn emit_chains<C: Codec + ?Sized>(
    ctx: &Ctx,
    cat: &C,
    backend: &BackendDoc,
    chains: &[Chain<C::Object, C::Morphism>],
    with_arrows: bool,
    out: &mut String,
) {
    if ctx.machine() {
        let doc = ChainsDoc {
            backend: backend.clone(),
            chains: chains.iter().map(|c| encode_chain(cat, c)).collect(),
        };
        out.push_str(&render_document(&Document::Chains(doc)));
        return;
    }
    for c in chains {
        if with_arrows {
            let arrows: Vec<String> = c.arrows.iter().rev().map(|m| morphism_text(cat, m)).collect();
            let _ = writeln!(out, "{}  [{}]", chain_name(cat, c), arrows.join("; "));
        } else {
            let _ = writeln!(out, "{}", chain_name(cat, c));
        }
    }
}

fn chains(ctx: &Ctx, path: &Path, selector: &str, out: &mut String) -> Result<i32, CliError> {
    let b = load_bundle(path, ctx.bound)?;
    with_backend!(&b.backend, cat => {
        let bundle = decode_bundle(cat, &b.levels)?;
        let selector = parse_selector(cat, selector, &bundle)?;
        let chains = extract_chains(cat, &bundle, &selector)?;
        emit_chains(ctx, cat, &b.backend_doc, &chains, false, out);
        Ok(0)
    })
}

fn product_cmd(ctx: &Ctx, left: &Path, right: &Path, out: &mut String) -> Result<i32, CliError> {
    let l = load_bundle(left, ctx.bound)?;
    let r = load_bundle(right, ctx.bound)?;
    same_backend(&l.backend_doc, &r.backend_doc)?;
    with_backend!(&l.backend, cat => {
        let c = decode_bundle(cat, &l.levels)?;
        let d = decode_bundle(cat, &r.levels)?;
        let p = product(cat, &c, &d)?;
        if ctx.machine() {
            let doc = BundleDoc {
                backend: l.backend_doc.clone(),
                levels: encode_bundle(cat, &p.bundle),
            };
            out.push_str(&render_document(&Document::Bundle(doc)));
        } else {
            let _ = writeln!(out, "{}", bundle_name(cat, &p.bundle));
        }
        Ok(0)
    })
}

fn complexes(ctx: &Ctx, path: &Path, out: &mut String) -> Result<i32, CliError> {
    let b = load_bundle(path, ctx.bound)?;
    with_backend!(&b.backend, cat => {
        let bundle = decode_bundle(cat, &b.levels)?;
        let found = extract_complexes(cat, &bundle)?;
        emit_chains(ctx, cat, &b.backend_doc, &found, true, out);
        Ok(0)
    })
}

fn gamma(ctx: &Ctx, paths: &[std::path::PathBuf], selector: &str, out: &mut String) -> Result<i32, CliError> {
    let loaded = paths
        .iter()
        .map(|p| load_bundle(p, ctx.bound))
        .collect::<Result<Vec<_>, _>>()?;
    for other in &loaded[1..] {
        same_backend(&loaded[0].backend_doc, &other.backend_doc)?;
    }
    with_backend!(&loaded[0].backend, cat => {
        let bundles = loaded
            .iter()
            .map(|b| decode_bundle(cat, &b.levels))
            .collect::<Result<Vec<_>, _>>()?;
        // explicit selector documents are read against the first bundle
        let selector = parse_selector(cat, selector, &bundles[0])?;
        let g = build_gamma(cat, &bundles, &selector, ctx.search_bound())?;
        if ctx.machine() {
            out.push_str(&render_document(&Document::Category(category_to_doc(&g.category))));
        } else {
            let _ = writeln!(out, "objects: {}", g.chains.len());
            for c in &g.chains {
                let _ = writeln!(out, "  {}", chain_name(cat, c));
            }
            let _ = writeln!(out, "arrows: {}", g.maps.len());
            for a in g.category.arrows() {
                let _ = writeln!(out, "  {}", a.label);
            }
        }
        Ok(0)
    })
}
