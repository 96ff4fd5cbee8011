//! Chains picked out of a chain bundle by choosing at most one morphism per
//! consecutive homset, chain maps between them, and the chain category.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::backends::subz::{SubZ, SubZObject};
use crate::bundle::{ChainBundle, HomsetKey};
use crate::category::{Category, HomsetBody, Subobjects};
use crate::error::{Error, Result};
use crate::presented::{PresentedCategory, PresentedSpec};
use crate::rational::{lcm, Rational};
use crate::report::{rules, ValidationReport, Violation};

/// How a morphism is chosen from each consecutive homset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selector<M> {
    /// The inclusion, when the upper level is a subobject of the lower one.
    InclusionsOnly,
    /// Level index to chosen morphism; unlisted levels choose nothing.
    ExplicitChoice(BTreeMap<usize, M>),
    /// The boundary morphism shared by every complex structure on the bundle,
    /// when there is exactly one.
    BoundaryCondition,
}

/// `V_n → … → V_1 → 0`, stored bottom-up like a bundle:
/// `arrows[i - 1]` goes from `vertices[i]` to `vertices[i - 1]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain<O, M> {
    pub vertices: Vec<O>,
    pub arrows: Vec<M>,
}

impl<O: Clone, M: Clone> Chain<O, M> {
    pub fn length(&self) -> usize {
        self.vertices.len()
    }

    /// The chain `0` with no arrows.
    pub fn zero(zero: O) -> Self {
        Chain {
            vertices: vec![zero],
            arrows: Vec::new(),
        }
    }

    /// Vertex `i` and the arrow leaving it, with zero padding above the top.
    fn padded<C>(&self, cat: &C, length: usize) -> Result<Chain<O, M>>
    where
        C: Category<Object = O, Morphism = M> + ?Sized,
    {
        let mut out = self.clone();
        let zero = self.vertices[0].clone();
        while out.vertices.len() < length {
            let below = out.vertices.last().expect("nonempty").clone();
            out.arrows.push(cat.zero_morphism(&zero, &below)?);
            out.vertices.push(zero.clone());
        }
        Ok(out)
    }
}

/// `18ℤ → 9ℤ → 3ℤ → 0`
pub fn chain_name<C: Category + ?Sized>(cat: &C, chain: &Chain<C::Object, C::Morphism>) -> String {
    chain
        .vertices
        .iter()
        .rev()
        .map(|o| cat.object_name(o))
        .collect::<Vec<_>>()
        .join(" → ")
}

fn hom_label<C: Category + ?Sized>(cat: &C, a: &C::Object, b: &C::Object) -> String {
    format!("Hom({}, {})", cat.object_name(a), cat.object_name(b))
}

/// The chosen morphism of `Hom(M_i, M_{i-1})` for every level `i ≥ 2`
/// between nonzero objects.
fn choices<C: Subobjects + ?Sized>(
    cat: &C,
    bundle: &ChainBundle<C::Object>,
    selector: &Selector<C::Morphism>,
) -> Result<BTreeMap<usize, C::Morphism>> {
    let zero = cat.zero_object().ok_or(Error::NoZeroObject)?;
    let levels = bundle.levels();
    let mut out = BTreeMap::new();
    match selector {
        Selector::InclusionsOnly => {
            for i in 2..levels.len() {
                let (a, b) = (&levels[i], &levels[i - 1]);
                if *a == zero || *b == zero {
                    continue;
                }
                if cat.is_subobject(a, b) {
                    let j = cat.inclusion(a, b).ok_or(Error::AmbiguousChoice { level: i })?;
                    out.insert(i, j);
                }
            }
        }
        Selector::ExplicitChoice(table) => {
            for (&i, m) in table {
                if i == 0 || i >= levels.len() {
                    return Err(Error::InvalidChoice {
                        level: i,
                        reason: format!("the bundle has no homset at level {i}"),
                    });
                }
                let (a, b) = (&levels[i], &levels[i - 1]);
                if cat.source(m) != *a || cat.target(m) != *b || !cat.is_member(m) {
                    return Err(Error::InvalidChoice {
                        level: i,
                        reason: format!("{} is not in {}", cat.morphism_name(m), hom_label(cat, a, b)),
                    });
                }
                if i >= 2 && *a != zero && *b != zero {
                    out.insert(i, m.clone());
                }
            }
        }
        Selector::BoundaryCondition => {
            let complexes = extract_complexes(cat, bundle)?;
            for i in 2..levels.len() {
                if levels[i] == zero || levels[i - 1] == zero {
                    continue;
                }
                let used: BTreeSet<&C::Morphism> = complexes.iter().map(|c| &c.arrows[i - 1]).collect();
                match used.len() {
                    0 => {}
                    1 => {
                        out.insert(i, (*used.iter().next().expect("one")).clone());
                    }
                    _ => return Err(Error::AmbiguousChoice { level: i }),
                }
            }
        }
    }
    Ok(out)
}

/// Splits the nonzero levels into maximal runs joined by chosen arrows,
/// top run first. Every run ends with its zero arrow to `0`.
pub fn extract_chains<C: Subobjects + ?Sized>(
    cat: &C,
    bundle: &ChainBundle<C::Object>,
    selector: &Selector<C::Morphism>,
) -> Result<Vec<Chain<C::Object, C::Morphism>>> {
    let zero = cat.zero_object().ok_or(Error::NoZeroObject)?;
    let chosen = choices(cat, bundle, selector)?;
    let levels = bundle.levels();
    let mut chains = Vec::new();
    // runs collected top-down as (vertex, arrow to the next vertex)
    let mut run: Vec<(C::Object, Option<C::Morphism>)> = Vec::new();
    let finish = |run: &mut Vec<(C::Object, Option<C::Morphism>)>,
                  chains: &mut Vec<Chain<C::Object, C::Morphism>>|
     -> Result<()> {
        if run.is_empty() {
            return Ok(());
        }
        let last = run.last().expect("nonempty").0.clone();
        let mut vertices = vec![zero.clone()];
        let mut arrows = vec![cat.zero_morphism(&last, &zero)?];
        for (idx, (v, _)) in run.iter().enumerate().rev() {
            vertices.push(v.clone());
            if idx > 0 {
                arrows.push(run[idx - 1].1.clone().expect("joined by a chosen arrow"));
            }
        }
        chains.push(Chain { vertices, arrows });
        run.clear();
        Ok(())
    };
    for i in (1..levels.len()).rev() {
        if levels[i] == zero {
            finish(&mut run, &mut chains)?;
            continue;
        }
        if let Some(last) = run.last_mut() {
            match chosen.get(&(i + 1)) {
                Some(m) => last.1 = Some(m.clone()),
                None => finish(&mut run, &mut chains)?,
            }
        }
        run.push((levels[i].clone(), None));
    }
    finish(&mut run, &mut chains)?;
    Ok(chains)
}

/// All choices of one `∂_i` per consecutive homset with every `∂_{i+1} ; ∂_i`
/// zero, each as a chain spanning the bundle. Selections are listed in
/// lexicographic order of their homset positions, top level most significant.
pub fn extract_complexes<C: Category + ?Sized>(
    cat: &C,
    bundle: &ChainBundle<C::Object>,
) -> Result<Vec<Chain<C::Object, C::Morphism>>> {
    let levels = bundle.levels();
    let len = levels.len();
    // homsets[i] lists Hom(M_i, M_{i-1}); index 0 unused
    let mut homsets: Vec<Vec<C::Morphism>> = vec![Vec::new()];
    for i in 1..len {
        let (a, b) = HomsetKey::consecutive(i).endpoints(bundle);
        let hom = cat.homset(a, b);
        let list = match hom.body {
            HomsetBody::Explicit(list) => list,
            HomsetBody::ScalarFamily { ref generator } if generator.is_zero() => {
                cat.scalar_morphism(a, b, generator).into_iter().collect()
            }
            HomsetBody::ScalarFamily { .. } => {
                return Err(Error::InfiniteHomset {
                    level: i,
                    homset: hom_label(cat, a, b),
                })
            }
        };
        homsets.push(list);
    }
    let mut out = Vec::new();
    if len == 1 {
        out.push(Chain {
            vertices: levels.to_vec(),
            arrows: Vec::new(),
        });
        return Ok(out);
    }
    // picked[i] is the boundary at level i; fill from the top down
    let mut picked: Vec<Option<C::Morphism>> = vec![None; len];
    search_complexes(cat, &homsets, len - 1, &mut picked, levels, &mut out);
    Ok(out)
}

fn search_complexes<C: Category + ?Sized>(
    cat: &C,
    homsets: &[Vec<C::Morphism>],
    level: usize,
    picked: &mut Vec<Option<C::Morphism>>,
    levels: &[C::Object],
    out: &mut Vec<Chain<C::Object, C::Morphism>>,
) {
    for d in &homsets[level] {
        if let Some(above) = picked.get(level + 1).and_then(|p| p.as_ref()) {
            match cat.compose(above, d) {
                Ok(c) if cat.is_zero_morphism(&c) => {}
                _ => continue,
            }
        }
        picked[level] = Some(d.clone());
        if level == 1 {
            out.push(Chain {
                vertices: levels.to_vec(),
                arrows: picked[1..].iter().map(|p| p.clone().expect("filled")).collect(),
            });
        } else {
            search_complexes(cat, homsets, level - 1, picked, levels, out);
        }
        picked[level] = None;
    }
}

/// Levelwise morphisms between two chains, bottom-up, padded to the longer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainMap<M> {
    pub components: Vec<M>,
}

/// Checks that each component runs between the matching vertices and that
/// every square `a_i ; f_{i-1} = f_i ; b_i` commutes.
pub fn validate_chain_map<C: Category + ?Sized>(
    cat: &C,
    map: &ChainMap<C::Morphism>,
    from: &Chain<C::Object, C::Morphism>,
    to: &Chain<C::Object, C::Morphism>,
) -> Result<ValidationReport> {
    let len = from.length().max(to.length());
    if map.components.len() != len {
        return Err(Error::ShapeMismatch {
            expected: len,
            found: map.components.len(),
        });
    }
    let from = from.padded(cat, len)?;
    let to = to.padded(cat, len)?;
    let mut report = ValidationReport::new();
    for (i, f) in map.components.iter().enumerate() {
        if cat.source(f) != from.vertices[i] || cat.target(f) != to.vertices[i] || !cat.is_member(f) {
            report.push(Violation::new(
                rules::VERTEX,
                vec![format!("level {i}"), cat.morphism_name(f)],
                format!(
                    "component {} at level {i} is not a morphism {} → {}",
                    cat.morphism_name(f),
                    cat.object_name(&from.vertices[i]),
                    cat.object_name(&to.vertices[i])
                ),
            ));
        }
    }
    if !report.is_valid() {
        return Ok(report);
    }
    for i in 1..len {
        let lhs = cat.compose(&from.arrows[i - 1], &map.components[i - 1]);
        let rhs = cat.compose(&map.components[i], &to.arrows[i - 1]);
        if lhs.is_err() || lhs != rhs {
            report.push(Violation::new(
                rules::SQUARE,
                vec![format!("level {i}")],
                format!(
                    "square fails at level {i}: {} ; {} differs from {} ; {}",
                    cat.morphism_name(&from.arrows[i - 1]),
                    cat.morphism_name(&map.components[i - 1]),
                    cat.morphism_name(&map.components[i]),
                    cat.morphism_name(&to.arrows[i - 1])
                ),
            ));
        }
    }
    Ok(report)
}

/// Every chain map between two chains, found level by level from the bottom.
/// A level whose homset has more than `bound` members (or is infinite) is
/// refused rather than truncated.
pub fn chain_maps<C: Category + ?Sized>(
    cat: &C,
    from: &Chain<C::Object, C::Morphism>,
    to: &Chain<C::Object, C::Morphism>,
    bound: u64,
) -> Result<Vec<ChainMap<C::Morphism>>> {
    let len = from.length().max(to.length());
    let from = from.padded(cat, len)?;
    let to = to.padded(cat, len)?;
    let mut candidates = Vec::with_capacity(len);
    for i in 0..len {
        let (a, b) = (&from.vertices[i], &to.vertices[i]);
        let hom = cat.homset(a, b);
        let list = match hom.body {
            HomsetBody::Explicit(list) => list,
            HomsetBody::ScalarFamily { ref generator } if generator.is_zero() => {
                cat.scalar_morphism(a, b, generator).into_iter().collect()
            }
            HomsetBody::ScalarFamily { .. } => {
                return Err(Error::SearchSpaceTooLarge {
                    size: format!("infinite {}", hom_label(cat, a, b)),
                    bound,
                })
            }
        };
        if list.len() as u64 > bound {
            return Err(Error::SearchSpaceTooLarge {
                size: list.len().to_string(),
                bound,
            });
        }
        candidates.push(list);
    }
    let mut partial: Vec<Vec<C::Morphism>> = candidates[0].iter().map(|f| vec![f.clone()]).collect();
    for i in 1..len {
        let mut next = Vec::new();
        for p in &partial {
            let lhs = cat.compose(&from.arrows[i - 1], &p[i - 1])?;
            for f in &candidates[i] {
                if cat.compose(f, &to.arrows[i - 1]).ok().as_ref() == Some(&lhs) {
                    let mut q = p.clone();
                    q.push(f.clone());
                    next.push(q);
                }
            }
        }
        partial = next;
    }
    Ok(partial.into_iter().map(|components| ChainMap { components }).collect())
}

/// The chain category: chains as objects, chain maps as arrows.
#[derive(Debug, Clone)]
pub struct Gamma<O, M> {
    pub category: PresentedCategory,
    /// Object `i` of `category` is `chains[i]`; the last is the zero chain.
    pub chains: Vec<Chain<O, M>>,
    /// Arrow `k` of `category` is `(source, target, map)`.
    pub maps: Vec<(usize, usize, ChainMap<M>)>,
}

/// Chains of every bundle under `selector`, deduplicated, plus the zero
/// chain; arrows are all chain maps between them.
pub fn build_gamma<C: Subobjects + ?Sized>(
    cat: &C,
    bundles: &[ChainBundle<C::Object>],
    selector: &Selector<C::Morphism>,
    bound: u64,
) -> Result<Gamma<C::Object, C::Morphism>> {
    let zero = cat.zero_object().ok_or(Error::NoZeroObject)?;
    let mut chains: Vec<Chain<C::Object, C::Morphism>> = Vec::new();
    for b in bundles {
        for c in extract_chains(cat, b, selector)? {
            if !chains.contains(&c) {
                chains.push(c);
            }
        }
    }
    let zero_chain = Chain::zero(zero.clone());
    if !chains.contains(&zero_chain) {
        chains.push(zero_chain);
    }

    let mut maps = Vec::new();
    let mut index: HashMap<(usize, usize, Vec<C::Morphism>), usize> = HashMap::new();
    for s in 0..chains.len() {
        for t in 0..chains.len() {
            for m in chain_maps(cat, &chains[s], &chains[t], bound)? {
                index.insert((s, t, m.components.clone()), maps.len());
                maps.push((s, t, m));
            }
        }
    }

    let mut object_labels: Vec<String> = Vec::new();
    for c in &chains {
        let base = chain_name(cat, c);
        let mut label = base.clone();
        let mut n = 2;
        while object_labels.contains(&label) {
            label = format!("{base} #{n}");
            n += 1;
        }
        object_labels.push(label);
    }
    let arrow_label = |k: usize| {
        let (s, t, m) = &maps[k];
        let parts: Vec<String> = m.components.iter().rev().map(|f| cat.morphism_name(f)).collect();
        format!("{}⇒{} [{}]", s, t, parts.join("; "))
    };

    let mut spec = PresentedSpec {
        objects: object_labels.clone(),
        zero: Some(object_labels[chains.len() - 1].clone()),
        ..PresentedSpec::default()
    };
    for (k, (s, t, _)) in maps.iter().enumerate() {
        spec.arrows
            .push((arrow_label(k), object_labels[*s].clone(), object_labels[*t].clone()));
    }
    for (s, c) in chains.iter().enumerate() {
        let id: Vec<C::Morphism> = c.vertices.iter().map(|v| cat.identity(v)).collect();
        let k = index
            .get(&(s, s, id))
            .ok_or_else(|| Error::Unsupported(format!("identity of {} is not a chain map", object_labels[s])))?;
        spec.identities.insert(object_labels[s].clone(), arrow_label(*k));
    }
    for (k1, (s, t, m1)) in maps.iter().enumerate() {
        for (k2, (t2, u, m2)) in maps.iter().enumerate() {
            if t != t2 {
                continue;
            }
            let composite = compose_chain_maps(cat, &chains[*s], &chains[*t], &chains[*u], m1, m2)?;
            let k3 = index.get(&(*s, *u, composite.components)).ok_or_else(|| {
                Error::Unsupported("a composite of chain maps is missing from the enumeration".into())
            })?;
            spec.compose.push((arrow_label(k1), arrow_label(k2), arrow_label(*k3)));
        }
    }
    let category = PresentedCategory::new(&spec)?;
    Ok(Gamma { category, chains, maps })
}

/// Levelwise composite `f` then `g`, trimmed to the length of its endpoints.
pub fn compose_chain_maps<C: Category + ?Sized>(
    cat: &C,
    a: &Chain<C::Object, C::Morphism>,
    b: &Chain<C::Object, C::Morphism>,
    c: &Chain<C::Object, C::Morphism>,
    f: &ChainMap<C::Morphism>,
    g: &ChainMap<C::Morphism>,
) -> Result<ChainMap<C::Morphism>> {
    let full = a.length().max(b.length()).max(c.length());
    let zero = a.vertices[0].clone();
    let pad = |m: &ChainMap<C::Morphism>| -> Result<Vec<C::Morphism>> {
        let mut v = m.components.clone();
        while v.len() < full {
            v.push(cat.zero_morphism(&zero, &zero)?);
        }
        Ok(v)
    };
    let (f, g) = (pad(f)?, pad(g)?);
    let mut components = f
        .iter()
        .zip(&g)
        .map(|(x, y)| cat.compose(x, y))
        .collect::<Result<Vec<_>>>()?;
    components.truncate(a.length().max(c.length()));
    Ok(ChainMap { components })
}

/// A one-parameter family of SubZ chain maps: components `generator·k·coefficients[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarLadder {
    pub generator: Rational,
    /// Bottom-up, one per level.
    pub coefficients: Vec<Rational>,
}

impl fmt::Display for ScalarLadder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coefficients: Vec<String> = self.coefficients[1..].iter().rev().map(|c| c.to_string()).collect();
        write!(f, "({})ℤ·({})", self.generator, coefficients.join(", "))
    }
}

/// Solves the square constraints between two SubZ chains symbolically. Every
/// chain map is a sum of integer multiples of the returned ladders.
pub fn scalar_chain_map_basis(
    from: &Chain<SubZObject, crate::backends::SubZMorphism>,
    to: &Chain<SubZObject, crate::backends::SubZMorphism>,
) -> Result<Vec<ScalarLadder>> {
    let len = from.length().max(to.length());
    let from = from.padded(&SubZ, len)?;
    let to = to.padded(&SubZ, len)?;
    // level i carries q_i = coefficient[i]·t_{param[i]}; None means q_i = 0
    let mut param: Vec<Option<usize>> = vec![None; len];
    let mut coefficient: Vec<Rational> = vec![Rational::zero(); len];
    let mut killed: Vec<bool> = Vec::new();
    let fresh = |killed: &mut Vec<bool>| {
        killed.push(false);
        killed.len() - 1
    };
    if len > 1 {
        param[len - 1] = Some(fresh(&mut killed));
        coefficient[len - 1] = Rational::one();
    }
    for i in (2..len).rev() {
        let a = &from.arrows[i - 1].scalar;
        let b = &to.arrows[i - 1].scalar;
        // a·q_{i-1} = q_i·b
        if !a.is_zero() {
            param[i - 1] = param[i];
            coefficient[i - 1] = &coefficient[i] * b / a;
        } else {
            if !b.is_zero() {
                if let Some(p) = param[i] {
                    killed[p] = true;
                }
            }
            param[i - 1] = Some(fresh(&mut killed));
            coefficient[i - 1] = Rational::one();
        }
    }
    let mut ladders = Vec::new();
    for (p, &dead) in killed.iter().enumerate() {
        if dead {
            continue;
        }
        let mut generator = Rational::one();
        let mut first = true;
        let mut zero = false;
        for i in 1..len {
            if param[i] != Some(p) || coefficient[i].is_zero() {
                continue;
            }
            let g = SubZ::generator(from.vertices[i], to.vertices[i]);
            if g.is_zero() {
                zero = true;
                break;
            }
            let step = g / num_traits::Signed::abs(&coefficient[i]);
            generator = if first { step } else { lcm(&generator, &step) };
            first = false;
        }
        if zero || first {
            continue;
        }
        let coefficients = (0..len)
            .map(|i| {
                if param[i] == Some(p) {
                    coefficient[i].clone()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        ladders.push(ScalarLadder {
            generator,
            coefficients,
        });
    }
    Ok(ladders)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::fingrp::FinGrp;
    use crate::backends::SubgroupId;
    use crate::bundle::build_chain_bundle;
    use crate::rational::rat;

    fn subz_bundle(keys: &[u64]) -> ChainBundle<SubZObject> {
        let objs: Vec<SubZObject> = keys.iter().map(|&k| SubZObject(k)).collect();
        build_chain_bundle(&SubZ, &objs).unwrap()
    }

    #[test]
    fn inclusion_chains_of_the_worked_example() {
        let b = subz_bundle(&[18, 9, 3, 8, 4, 2, 5]);
        let chains = extract_chains(&SubZ, &b, &Selector::InclusionsOnly).unwrap();
        let names: Vec<String> = chains.iter().map(|c| chain_name(&SubZ, c)).collect();
        assert_eq!(names, ["18ℤ → 9ℤ → 3ℤ → 0", "8ℤ → 4ℤ → 2ℤ → 0", "5ℤ → 0"]);
    }

    #[test]
    fn empty_choice_gives_singletons() {
        let b = subz_bundle(&[18, 9, 3]);
        let chains = extract_chains(&SubZ, &b, &Selector::ExplicitChoice(BTreeMap::new())).unwrap();
        assert_eq!(chains.len(), 3);
        assert!(chains.iter().all(|c| c.length() == 2));
    }

    #[test]
    fn explicit_generators_span_the_bundle() {
        let b = subz_bundle(&[3, 2, 5]);
        let table = BTreeMap::from([
            (3, SubZ.morphism(3, 2, rat(2, 3)).unwrap()),
            (2, SubZ.morphism(2, 5, rat(5, 2)).unwrap()),
        ]);
        let chains = extract_chains(&SubZ, &b, &Selector::ExplicitChoice(table)).unwrap();
        assert_eq!(chains.len(), 1);
        assert_eq!(chain_name(&SubZ, &chains[0]), "3ℤ → 2ℤ → 5ℤ → 0");
    }

    #[test]
    fn bad_explicit_choice_is_refused() {
        let b = subz_bundle(&[3, 2]);
        let table = BTreeMap::from([(1, SubZ.morphism(3, 2, rat(2, 3)).unwrap())]);
        assert!(matches!(
            extract_chains(&SubZ, &b, &Selector::ExplicitChoice(table)),
            Err(Error::InvalidChoice { level: 1, .. })
        ));
    }

    #[test]
    fn complexes_over_s3() {
        let g = FinGrp::symmetric(3).unwrap();
        let (s3, a3) = (g.whole(), SubgroupId(4));
        let b = build_chain_bundle(&g, &[s3, a3]).unwrap();
        assert_eq!(extract_complexes(&g, &b).unwrap().len(), 1);
        let b = build_chain_bundle(&g, &[s3, s3, a3]).unwrap();
        assert_eq!(extract_complexes(&g, &b).unwrap().len(), 10);
        let chains = extract_chains(&g, &b, &Selector::BoundaryCondition);
        assert!(matches!(chains, Err(Error::AmbiguousChoice { .. })));
    }

    #[test]
    fn complexes_refuse_infinite_homsets() {
        let b = subz_bundle(&[3, 2]);
        assert!(matches!(
            extract_complexes(&SubZ, &b),
            Err(Error::InfiniteHomset { level: 2, .. })
        ));
        assert_eq!(extract_complexes(&SubZ, &subz_bundle(&[3])).unwrap().len(), 1);
    }

    #[test]
    fn chain_map_squares() {
        let b = subz_bundle(&[18, 9, 3]);
        let chain = extract_chains(&SubZ, &b, &Selector::InclusionsOnly).unwrap().remove(0);
        let id = ChainMap {
            components: chain.vertices.iter().map(|v| SubZ.identity(v)).collect(),
        };
        assert!(validate_chain_map(&SubZ, &id, &chain, &chain).unwrap().is_valid());
        let mut broken = id.clone();
        broken.components[2] = SubZ.morphism(9, 9, rat(0, 1)).unwrap();
        let report = validate_chain_map(&SubZ, &broken, &chain, &chain).unwrap();
        assert!(!report.with_rule(rules::SQUARE).collect::<Vec<_>>().is_empty());
    }

    #[test]
    fn symbolic_ladders_between_inclusion_chains() {
        let b = subz_bundle(&[18, 9, 3, 8, 4, 2, 5]);
        let chains = extract_chains(&SubZ, &b, &Selector::InclusionsOnly).unwrap();
        let basis = scalar_chain_map_basis(&chains[0], &chains[1]).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].to_string(), "(4/3)ℤ·(1, 1, 1)");
        assert!(matches!(
            build_gamma(&SubZ, &[b], &Selector::InclusionsOnly, 100),
            Err(Error::SearchSpaceTooLarge { .. })
        ));
    }

    #[test]
    fn gamma_over_group_complexes_is_a_category() {
        let g = FinGrp::symmetric(3).unwrap();
        let b = build_chain_bundle(&g, &[g.whole(), SubgroupId(4)]).unwrap();
        let gamma = build_gamma(&g, &[b], &Selector::BoundaryCondition, 1000).unwrap();
        assert_eq!(gamma.chains.len(), 2);
        assert!(gamma.category.validate().is_valid());
        for (s, t, m) in &gamma.maps {
            assert!(validate_chain_map(&g, m, &gamma.chains[*s], &gamma.chains[*t])
                .unwrap()
                .is_valid());
        }
    }
}
