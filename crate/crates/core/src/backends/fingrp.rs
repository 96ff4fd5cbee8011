//! The category of subgroups of a small permutation group with all group
//! homomorphisms between them. The trivial subgroup is the zero object.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::backends::perm::Perm;
use crate::category::{Category, Factorization, Homset, HomsetBody, Subobjects};
use crate::error::{Error, Result};

/// Default cap on the ambient group order for brute-force enumeration.
pub const DEFAULT_ORDER_BOUND: usize = 24;

/// Index of a subgroup in the canonical subgroup list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubgroupId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    /// Sorted ambient element indices.
    pub elements: Vec<usize>,
    /// Greedy generating set in canonical element order.
    pub generators: Vec<usize>,
}

/// A homomorphism stored as the images of the source subgroup's elements,
/// listed in the source's element order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinGrpHom {
    pub source: SubgroupId,
    pub target: SubgroupId,
    pub table: Vec<usize>,
}

pub struct FinGrp {
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    mult: Vec<Vec<usize>>,
    subgroups: Vec<Subgroup>,
    by_elements: HashMap<Vec<usize>, SubgroupId>,
    homs: Vec<OnceLock<Vec<FinGrpHom>>>,
}

impl fmt::Debug for FinGrp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinGrp")
            .field("order", &self.elements.len())
            .field("subgroups", &self.subgroups.len())
            .finish()
    }
}

impl FinGrp {
    /// The group generated by `generators`, refusing orders above `bound`.
    pub fn generated_by(generators: &[Perm], bound: usize) -> Result<Self> {
        let degree = generators.iter().map(Perm::degree).max().unwrap_or(1);
        let gens: Vec<Perm> = generators.iter().map(|g| pad(g, degree)).collect();
        let identity = Perm::identity(degree);
        let mut seen: BTreeSet<Perm> = BTreeSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    if seen.len() > bound {
                        return Err(Error::AmbientTooLarge {
                            found: seen.len(),
                            bound,
                        });
                    }
                    queue.push_back(y);
                }
            }
        }
        let elements: Vec<Perm> = seen.into_iter().collect();
        let index: HashMap<Perm, usize> = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mult = elements
            .iter()
            .map(|x| elements.iter().map(|y| index[&x.then(y)]).collect())
            .collect();
        let mut group = FinGrp {
            elements,
            index,
            mult,
            subgroups: Vec::new(),
            by_elements: HashMap::new(),
            homs: Vec::new(),
        };
        group.enumerate_subgroups();
        Ok(group)
    }

    /// Parses generators in cycle notation, e.g. `["(1 2)", "(1 2 3)"]`.
    pub fn from_cycle_strings(generators: &[&str], bound: usize) -> Result<Self> {
        let degree = generators
            .iter()
            .map(|g| Perm::max_point(g))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .unwrap_or(1)
            .max(1);
        let gens = generators
            .iter()
            .map(|g| Perm::parse(g, degree))
            .collect::<Result<Vec<_>>>()?;
        FinGrp::generated_by(&gens, bound)
    }

    /// The symmetric group on `n` points.
    pub fn symmetric(n: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::parse("(1 2)", n)?);
            let cycle: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            gens.push(Perm::parse(&format!("({})", cycle.join(" ")), n)?);
        }
        if gens.is_empty() {
            gens.push(Perm::identity(1));
        }
        FinGrp::generated_by(&gens, DEFAULT_ORDER_BOUND)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.elements[0].degree()
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn element_index(&self, p: &Perm) -> Option<usize> {
        self.index.get(&pad(p, self.degree())).copied()
    }

    /// Ambient product: `x` then `y`.
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mult[x][y]
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, id: SubgroupId) -> &Subgroup {
        &self.subgroups[id.0]
    }

    pub fn subgroup_ids(&self) -> Vec<SubgroupId> {
        (0..self.subgroups.len()).map(SubgroupId).collect()
    }

    pub fn whole(&self) -> SubgroupId {
        SubgroupId(self.subgroups.len() - 1)
    }

    pub fn trivial(&self) -> SubgroupId {
        SubgroupId(0)
    }

    /// Subgroup with exactly these ambient elements.
    pub fn find_subgroup(&self, elements: &BTreeSet<usize>) -> Option<SubgroupId> {
        let key: Vec<usize> = elements.iter().copied().collect();
        self.by_elements.get(&key).copied()
    }

    /// Subgroup generated by the given permutations.
    pub fn subgroup_generated_by(&self, gens: &[Perm]) -> Result<SubgroupId> {
        let idx = gens
            .iter()
            .map(|g| {
                self.element_index(g)
                    .ok_or_else(|| Error::UnknownObject(format!("{g} is not in the ambient group")))
            })
            .collect::<Result<Vec<_>>>()?;
        let span = self.span(&idx);
        Ok(self.find_subgroup(&span).expect("every span is an enumerated subgroup"))
    }

    fn span(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([0]);
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mult[x][g];
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    fn enumerate_subgroups(&mut self) {
        let cyclic: BTreeSet<BTreeSet<usize>> = (0..self.order()).map(|g| self.span(&[g])).collect();
        let mut all = cyclic.clone();
        let mut frontier: Vec<BTreeSet<usize>> = all.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    let gens: Vec<usize> = h.union(c).copied().collect();
                    let joined = self.span(&gens);
                    if all.insert(joined.clone()) {
                        next.push(joined);
                    }
                }
            }
            frontier = next;
        }
        let mut subgroups: Vec<Vec<usize>> = all.into_iter().map(|s| s.into_iter().collect()).collect();
        subgroups.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        self.subgroups = subgroups
            .into_iter()
            .map(|elements| {
                let generators = self.greedy_generators(&elements);
                Subgroup { elements, generators }
            })
            .collect();
        self.by_elements = self
            .subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.elements.clone(), SubgroupId(i)))
            .collect();
        let n = self.subgroups.len();
        self.homs = (0..n * n).map(|_| OnceLock::new()).collect();
    }

    fn greedy_generators(&self, elements: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = BTreeSet::from([0]);
        for &x in elements {
            if !span.contains(&x) {
                gens.push(x);
                span = self.span(&gens);
            }
        }
        gens
    }

    /// All homomorphisms `H → K` in canonical order. Computed once per pair.
    pub fn homomorphisms(&self, h: SubgroupId, k: SubgroupId) -> &[FinGrpHom] {
        let n = self.subgroups.len();
        self.homs[h.0 * n + k.0].get_or_init(|| self.search_homomorphisms(h, k))
    }

    /// Brute force over images of the source generators, extending each
    /// assignment along words and rejecting inconsistent ones.
    fn search_homomorphisms(&self, h: SubgroupId, k: SubgroupId) -> Vec<FinGrpHom> {
        let src = &self.subgroups[h.0];
        let tgt = &self.subgroups[k.0];
        let gens = &src.generators;
        let mut found = BTreeSet::new();
        let mut choice = vec![0usize; gens.len()];
        loop {
            let images: Vec<usize> = choice.iter().map(|&c| tgt.elements[c]).collect();
            if let Some(table) = self.extend_assignment(src, gens, &images) {
                found.insert(FinGrpHom {
                    source: h,
                    target: k,
                    table,
                });
            }
            // odometer over target elements
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    return found.into_iter().collect();
                }
                choice[pos] += 1;
                if choice[pos] < tgt.elements.len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }

    fn extend_assignment(&self, src: &Subgroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map: HashMap<usize, usize> = HashMap::from([(0, 0)]);
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            let fx = map[&x];
            for (g, &img) in gens.iter().zip(images) {
                let y = self.mult[x][*g];
                let fy = self.mult[fx][img];
                match map.get(&y) {
                    Some(&prev) if prev != fy => return None,
                    Some(_) => {}
                    None => {
                        map.insert(y, fy);
                        queue.push_back(y);
                    }
                }
            }
        }
        let table: Vec<usize> = src.elements.iter().map(|x| map[x]).collect();
        let hom_ok = src.elements.iter().enumerate().all(|(i, &x)| {
            src.elements.iter().enumerate().all(|(j, &y)| {
                let xy = self.mult[x][y];
                let pos = src.elements.binary_search(&xy).expect("subgroup is closed");
                table[pos] == self.mult[table[i]][table[j]]
            })
        });
        hom_ok.then_some(table)
    }

    /// Builds a homomorphism from images of some generating elements of the
    /// source; fails if they do not generate it or are inconsistent.
    pub fn hom_from_assignment(
        &self,
        source: SubgroupId,
        target: SubgroupId,
        assignment: &[(usize, usize)],
    ) -> Result<FinGrpHom> {
        let src = &self.subgroups[source.0];
        let tgt = &self.subgroups[target.0];
        let gens: Vec<usize> = assignment.iter().map(|(x, _)| *x).collect();
        let images: Vec<usize> = assignment.iter().map(|(_, y)| *y).collect();
        if gens.iter().any(|x| src.elements.binary_search(x).is_err()) {
            return Err(Error::InvalidMorphism(
                "assignment mentions elements outside the source".into(),
            ));
        }
        if images.iter().any(|y| tgt.elements.binary_search(y).is_err()) {
            return Err(Error::InvalidMorphism("assignment leaves the target subgroup".into()));
        }
        if self.span(&gens).len() != src.elements.len() {
            return Err(Error::InvalidMorphism(
                "assigned elements do not generate the source".into(),
            ));
        }
        let table = self
            .extend_assignment(src, &gens, &images)
            .ok_or_else(|| Error::InvalidMorphism("assignment does not extend to a homomorphism".into()))?;
        Ok(FinGrpHom { source, target, table })
    }

    /// Image of an ambient element of the source under `f`.
    pub fn apply(&self, f: &FinGrpHom, x: usize) -> Option<usize> {
        let pos = self.subgroups[f.source.0].elements.binary_search(&x).ok()?;
        Some(f.table[pos])
    }

    pub fn subgroup_name(&self, id: SubgroupId) -> String {
        let s = &self.subgroups[id.0];
        if s.elements.len() == 1 {
            return "0".to_string();
        }
        let gens: Vec<String> = s.generators.iter().map(|&g| self.elements[g].to_string()).collect();
        format!("⟨{}⟩", gens.join(", "))
    }

    fn image_set(&self, f: &FinGrpHom) -> BTreeSet<usize> {
        f.table.iter().copied().collect()
    }

    fn check_shape(&self, f: &FinGrpHom) -> bool {
        f.source.0 < self.subgroups.len()
            && f.target.0 < self.subgroups.len()
            && f.table.len() == self.subgroups[f.source.0].elements.len()
    }
}

fn pad(p: &Perm, degree: usize) -> Perm {
    if p.degree() >= degree {
        return p.clone();
    }
    let mut images = p.images().to_vec();
    images.extend(p.degree()..degree);
    Perm::from_images(images).expect("padding keeps a permutation")
}

impl Category for FinGrp {
    type Object = SubgroupId;
    type Morphism = FinGrpHom;

    fn object_name(&self, a: &SubgroupId) -> String {
        self.subgroup_name(*a)
    }

    fn morphism_name(&self, f: &FinGrpHom) -> String {
        let src = &self.subgroups[f.source.0];
        let images: Vec<String> = src
            .generators
            .iter()
            .map(|&g| {
                let img = self.apply(f, g).expect("generator lies in source");
                format!("{}↦{}", self.elements[g], self.elements[img])
            })
            .collect();
        format!(
            "{} → {} {{{}}}",
            self.subgroup_name(f.source),
            self.subgroup_name(f.target),
            images.join(", ")
        )
    }

    fn contains_object(&self, a: &SubgroupId) -> bool {
        a.0 < self.subgroups.len()
    }

    fn objects(&self) -> Option<Vec<SubgroupId>> {
        Some(self.subgroup_ids())
    }

    fn source(&self, f: &FinGrpHom) -> SubgroupId {
        f.source
    }

    fn target(&self, f: &FinGrpHom) -> SubgroupId {
        f.target
    }

    fn identity(&self, a: &SubgroupId) -> FinGrpHom {
        FinGrpHom {
            source: *a,
            target: *a,
            table: self.subgroups[a.0].elements.clone(),
        }
    }

    fn compose(&self, f: &FinGrpHom, g: &FinGrpHom) -> Result<FinGrpHom> {
        if f.target != g.source {
            return Err(Error::NonComposable {
                left: self.morphism_name(f),
                right: self.morphism_name(g),
            });
        }
        let table = f
            .table
            .iter()
            .map(|&y| self.apply(g, y))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidMorphism("image leaves the target subgroup".into()))?;
        Ok(FinGrpHom {
            source: f.source,
            target: g.target,
            table,
        })
    }

    fn homset(&self, a: &SubgroupId, b: &SubgroupId) -> Homset<SubgroupId, FinGrpHom> {
        Homset {
            source: *a,
            target: *b,
            body: HomsetBody::Explicit(self.homomorphisms(*a, *b).to_vec()),
        }
    }

    fn is_member(&self, f: &FinGrpHom) -> bool {
        self.check_shape(f) && self.homomorphisms(f.source, f.target).binary_search(f).is_ok()
    }

    fn zero_object(&self) -> Option<SubgroupId> {
        Some(self.trivial())
    }

    fn zero_morphism(&self, a: &SubgroupId, b: &SubgroupId) -> Result<FinGrpHom> {
        Ok(FinGrpHom {
            source: *a,
            target: *b,
            table: vec![0; self.subgroups[a.0].elements.len()],
        })
    }

    fn is_zero_morphism(&self, f: &FinGrpHom) -> bool {
        f.table.iter().all(|&x| x == 0)
    }

    fn is_mono(&self, f: &FinGrpHom) -> bool {
        self.image_set(f).len() == f.table.len()
    }

    fn is_epi(&self, f: &FinGrpHom) -> bool {
        self.image_set(f).len() == self.subgroups[f.target.0].elements.len()
    }

    fn inverse(&self, f: &FinGrpHom) -> Option<FinGrpHom> {
        if !(self.is_mono(f) && self.is_epi(f)) {
            return None;
        }
        let src = &self.subgroups[f.source.0];
        let tgt = &self.subgroups[f.target.0];
        let mut table = vec![0; tgt.elements.len()];
        for (i, &y) in f.table.iter().enumerate() {
            let pos = tgt.elements.binary_search(&y).ok()?;
            table[pos] = src.elements[i];
        }
        Some(FinGrpHom {
            source: f.target,
            target: f.source,
            table,
        })
    }
}

impl Subobjects for FinGrp {
    fn is_subobject(&self, a: &SubgroupId, b: &SubgroupId) -> bool {
        let big = &self.subgroups[b.0].elements;
        self.subgroups[a.0]
            .elements
            .iter()
            .all(|x| big.binary_search(x).is_ok())
    }

    fn inclusion(&self, a: &SubgroupId, b: &SubgroupId) -> Option<FinGrpHom> {
        self.is_subobject(a, b).then(|| FinGrpHom {
            source: *a,
            target: *b,
            table: self.subgroups[a.0].elements.clone(),
        })
    }

    fn is_inclusion(&self, f: &FinGrpHom) -> bool {
        f.table == self.subgroups[f.source.0].elements && self.is_subobject(&f.source, &f.target)
    }

    fn factorize(&self, f: &FinGrpHom) -> Result<Factorization<SubgroupId, FinGrpHom>> {
        let image = self
            .find_subgroup(&self.image_set(f))
            .ok_or_else(|| Error::NoFactorization(self.morphism_name(f)))?;
        Ok(Factorization {
            epi_part: FinGrpHom {
                source: f.source,
                target: image,
                table: f.table.clone(),
            },
            inclusion_part: self.inclusion(&image, &f.target).expect("image lies in target"),
            image,
        })
    }

    fn restrict(&self, f: &FinGrpHom, src: &SubgroupId, tgt: &SubgroupId) -> Option<FinGrpHom> {
        if !self.is_subobject(src, &f.source) || !self.is_subobject(tgt, &f.target) {
            return None;
        }
        let allowed = &self.subgroups[tgt.0].elements;
        let table = self.subgroups[src.0]
            .elements
            .iter()
            .map(|&x| self.apply(f, x).filter(|y| allowed.binary_search(y).is_ok()))
            .collect::<Option<Vec<_>>>()?;
        Some(FinGrpHom {
            source: *src,
            target: *tgt,
            table,
        })
    }
}
