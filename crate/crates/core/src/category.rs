//! The backend contract for categories with zero, and checks that only use
//! that contract: category axioms, cancellation-based mono/epi, subobject
//! choices, groupoid detection and the opposite category.
//!
//! Composition is written in diagrammatic order throughout: `compose(f, g)`
//! applies `f` first, so `f: a → b`, `g: b → c` gives `a → c`.

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::report::{rules, ValidationReport, Violation};

/// Body of a homset: either a finite list or the integer multiples of one
/// rational generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomsetBody<M> {
    Explicit(Vec<M>),
    ScalarFamily { generator: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homset<O, M> {
    pub source: O,
    pub target: O,
    pub body: HomsetBody<M>,
}

impl<O, M> Homset<O, M> {
    pub fn is_finite(&self) -> bool {
        match &self.body {
            HomsetBody::Explicit(_) => true,
            // the zero family {0} is a singleton
            HomsetBody::ScalarFamily { generator } => generator.is_zero(),
        }
    }

    pub fn explicit(&self) -> Option<&[M]> {
        match &self.body {
            HomsetBody::Explicit(list) => Some(list),
            HomsetBody::ScalarFamily { .. } => None,
        }
    }

    pub fn generator(&self) -> Option<&Rational> {
        match &self.body {
            HomsetBody::ScalarFamily { generator } => Some(generator),
            HomsetBody::Explicit(_) => None,
        }
    }
}

/// A category backend. Objects and morphisms are plain values; the backend
/// owns composition, identities and homset membership.
pub trait Category {
    type Object: Clone + Eq + Ord + Hash + Debug;
    type Morphism: Clone + Eq + Ord + Hash + Debug;

    fn object_name(&self, a: &Self::Object) -> String;
    fn morphism_name(&self, f: &Self::Morphism) -> String;

    fn contains_object(&self, a: &Self::Object) -> bool;

    /// All objects, when the category is finite.
    fn objects(&self) -> Option<Vec<Self::Object>> {
        None
    }

    fn source(&self, f: &Self::Morphism) -> Self::Object;
    fn target(&self, f: &Self::Morphism) -> Self::Object;
    fn identity(&self, a: &Self::Object) -> Self::Morphism;

    /// Diagrammatic composite: `f` then `g`.
    fn compose(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism>;

    fn homset(&self, a: &Self::Object, b: &Self::Object) -> Homset<Self::Object, Self::Morphism>;

    /// Membership of `f` in `Hom(source f, target f)`.
    fn is_member(&self, f: &Self::Morphism) -> bool;

    fn zero_object(&self) -> Option<Self::Object>;

    /// The composite `a → 0 → b`.
    fn zero_morphism(&self, a: &Self::Object, b: &Self::Object) -> Result<Self::Morphism> {
        let zero = self.zero_object().ok_or(Error::NoZeroObject)?;
        let to_zero = unique_member(self, a, &zero)?;
        let from_zero = unique_member(self, &zero, b)?;
        self.compose(&to_zero, &from_zero)
    }

    fn is_zero_morphism(&self, f: &Self::Morphism) -> bool {
        self.zero_morphism(&self.source(f), &self.target(f))
            .map(|z| &z == f)
            .unwrap_or(false)
    }

    /// Rational scalar carried by `f`, for backends whose homsets are scalar families.
    fn scalar(&self, _f: &Self::Morphism) -> Option<Rational> {
        None
    }

    /// The morphism `a → b` acting by scalar `q`, if it is a member.
    fn scalar_morphism(&self, _a: &Self::Object, _b: &Self::Object, _q: &Rational) -> Option<Self::Morphism> {
        None
    }

    fn is_mono(&self, f: &Self::Morphism) -> bool;
    fn is_epi(&self, f: &Self::Morphism) -> bool;

    /// Two-sided inverse, searched in the explicit reverse homset.
    fn inverse(&self, f: &Self::Morphism) -> Option<Self::Morphism> {
        let (a, b) = (self.source(f), self.target(f));
        let back = self.homset(&b, &a);
        let candidates = back.explicit()?;
        let id_a = self.identity(&a);
        let id_b = self.identity(&b);
        candidates
            .iter()
            .find(|g| {
                self.compose(f, g).ok().as_ref() == Some(&id_a) && self.compose(g, f).ok().as_ref() == Some(&id_b)
            })
            .cloned()
    }
}

fn unique_member<C: Category + ?Sized>(cat: &C, a: &C::Object, b: &C::Object) -> Result<C::Morphism> {
    let hom = cat.homset(a, b);
    match &hom.body {
        HomsetBody::Explicit(list) if list.len() == 1 => Ok(list[0].clone()),
        HomsetBody::ScalarFamily { generator } if generator.is_zero() => {
            cat.scalar_morphism(a, b, generator).ok_or(Error::NoZeroObject)
        }
        _ => Err(Error::NoZeroObject),
    }
}

/// Epi part, inclusion part and image of a canonical factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization<O, M> {
    pub epi_part: M,
    pub inclusion_part: M,
    pub image: O,
}

/// A declared binary product with its two projections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductCone<O, M> {
    pub object: O,
    pub left: M,
    pub right: M,
}

/// A category with a choice of subobjects and canonical factorizations.
pub trait Subobjects: Category {
    /// `a ⊆ b` in the subobject preorder.
    fn is_subobject(&self, a: &Self::Object, b: &Self::Object) -> bool;

    /// The inclusion `j_a^b`, when `a ⊆ b`.
    fn inclusion(&self, a: &Self::Object, b: &Self::Object) -> Option<Self::Morphism>;

    fn is_inclusion(&self, f: &Self::Morphism) -> bool;

    fn factorize(&self, f: &Self::Morphism) -> Result<Factorization<Self::Object, Self::Morphism>>;

    /// Restriction of `f` to the subobject `src` of its source, corestricted
    /// to the subobject `tgt` of its target; `None` if the restricted image
    /// leaves `tgt`.
    fn restrict(&self, f: &Self::Morphism, src: &Self::Object, tgt: &Self::Object) -> Option<Self::Morphism> {
        let incl_src = self.inclusion(src, &self.source(f))?;
        let incl_tgt = self.inclusion(tgt, &self.target(f))?;
        let lhs = self.compose(&incl_src, f).ok()?;
        let hom = self.homset(src, tgt);
        hom.explicit()?
            .iter()
            .find(|k| self.compose(k, &incl_tgt).ok().as_ref() == Some(&lhs))
            .cloned()
    }

    /// Some `h: src → tgt` whose restriction along the inclusions is `g`.
    fn extend(&self, g: &Self::Morphism, src: &Self::Object, tgt: &Self::Object) -> Option<Self::Morphism> {
        let incl_src = self.inclusion(&self.source(g), src)?;
        let incl_tgt = self.inclusion(&self.target(g), tgt)?;
        let rhs = self.compose(g, &incl_tgt).ok()?;
        let hom = self.homset(src, tgt);
        hom.explicit()?
            .iter()
            .find(|h| self.compose(&incl_src, h).ok().as_ref() == Some(&rhs))
            .cloned()
    }

    /// Whether `f_small` is the corestriction of some member of
    /// `Hom(big_src, big_tgt)`. With `strict`, the restriction's epimorphic
    /// component must equal `f_small` (so `f_small` must itself be epi).
    fn corestricts(
        &self,
        f_small: &Self::Morphism,
        big_src: &Self::Object,
        big_tgt: &Self::Object,
        strict: bool,
    ) -> Result<bool> {
        let (src, tgt) = (self.source(f_small), self.target(f_small));
        check_subobject_pair(self, &src, big_src)?;
        check_subobject_pair(self, &tgt, big_tgt)?;
        let hom = self.homset(big_src, big_tgt);
        let Some(list) = hom.explicit() else {
            return Err(Error::Unsupported(
                "corestriction search needs an explicit homset".into(),
            ));
        };
        let found = list
            .iter()
            .any(|g| self.restrict(g, &src, &tgt).as_ref() == Some(f_small));
        Ok(found && (!strict || self.is_epi(f_small)))
    }

    fn product(&self, _a: &Self::Object, _b: &Self::Object) -> Option<ProductCone<Self::Object, Self::Morphism>> {
        None
    }
}

pub(crate) fn check_subobject_pair<C: Subobjects + ?Sized>(cat: &C, small: &C::Object, big: &C::Object) -> Result<()> {
    if cat.is_subobject(small, big) {
        Ok(())
    } else {
        Err(Error::NotSubobjectPair {
            small: cat.object_name(small),
            big: cat.object_name(big),
        })
    }
}

/// Members of `Hom(a, b)`; scalar families are truncated to indices `|k| ≤ bound`.
pub fn members_within<C: Category + ?Sized>(cat: &C, a: &C::Object, b: &C::Object, bound: u64) -> Vec<C::Morphism> {
    let hom = cat.homset(a, b);
    match hom.body {
        HomsetBody::Explicit(list) => list,
        HomsetBody::ScalarFamily { generator } => {
            if generator.is_zero() {
                return cat.scalar_morphism(a, b, &generator).into_iter().collect();
            }
            let bound = bound as i64;
            (-bound..=bound)
                .filter_map(|k| {
                    let q = &generator * Rational::from_integer(BigInt::from(k));
                    cat.scalar_morphism(a, b, &q)
                })
                .collect()
        }
    }
}

/// `a ≠ b` composite witnesses as strings.
fn names<C: Category + ?Sized>(cat: &C, ms: &[&C::Morphism]) -> Vec<String> {
    ms.iter().map(|m| cat.morphism_name(m)).collect()
}

/// Checks identities, closure, associativity, unit laws, homset disjointness
/// and the zero object over a finite scope of objects. Scalar-family homsets
/// are sampled with `|k| ≤ bound`.
pub fn validate_category<C: Category + ?Sized>(cat: &C, scope: &[C::Object], bound: u64) -> ValidationReport {
    let mut report = ValidationReport::new();
    let mut homs = Vec::with_capacity(scope.len());
    let mut seen: BTreeSet<C::Morphism> = BTreeSet::new();

    for a in scope {
        let id = cat.identity(a);
        if cat.source(&id) != *a || cat.target(&id) != *a || !cat.is_member(&id) {
            report.push(Violation::new(
                rules::IDENTITY,
                vec![cat.object_name(a)],
                format!("identity of {} is not an endomorphism of it", cat.object_name(a)),
            ));
        }
        let mut row = Vec::with_capacity(scope.len());
        for b in scope {
            let members = members_within(cat, a, b, bound);
            for f in &members {
                if cat.source(f) != *a || cat.target(f) != *b {
                    report.push(Violation::new(
                        rules::DISJOINT,
                        vec![cat.morphism_name(f), cat.object_name(a), cat.object_name(b)],
                        format!(
                            "{} is listed in Hom({}, {}) but has other endpoints",
                            cat.morphism_name(f),
                            cat.object_name(a),
                            cat.object_name(b)
                        ),
                    ));
                }
                if !seen.insert(f.clone()) {
                    report.push(Violation::new(
                        rules::DISJOINT,
                        vec![cat.morphism_name(f)],
                        format!("{} occurs in more than one homset slot", cat.morphism_name(f)),
                    ));
                }
            }
            row.push(members);
        }
        homs.push(row);
    }

    // unit laws
    for (i, a) in scope.iter().enumerate() {
        let id = cat.identity(a);
        for (j, _) in scope.iter().enumerate() {
            for f in &homs[i][j] {
                match cat.compose(&id, f) {
                    Ok(r) if &r == f => {}
                    _ => report.push(Violation::new(
                        rules::LEFT_UNIT,
                        names(cat, &[&id, f]),
                        format!(
                            "{} then {} is not {}",
                            cat.morphism_name(&id),
                            cat.morphism_name(f),
                            cat.morphism_name(f)
                        ),
                    )),
                }
            }
            for g in &homs[j][i] {
                match cat.compose(g, &id) {
                    Ok(r) if &r == g => {}
                    _ => report.push(Violation::new(
                        rules::RIGHT_UNIT,
                        names(cat, &[g, &id]),
                        format!(
                            "{} then {} is not {}",
                            cat.morphism_name(g),
                            cat.morphism_name(&id),
                            cat.morphism_name(g)
                        ),
                    )),
                }
            }
        }
    }

    // closure
    let n = scope.len();
    let mut composites = std::collections::HashMap::new();
    for (i, row) in homs.iter().enumerate() {
        for (j, fs) in row.iter().enumerate() {
            for (k, gs) in homs[j].iter().enumerate() {
                for f in fs {
                    for g in gs {
                        match cat.compose(f, g) {
                            Ok(h) => {
                                let in_scope =
                                    cat.source(&h) == scope[i] && cat.target(&h) == scope[k] && cat.is_member(&h);
                                if !in_scope {
                                    report.push(Violation::new(
                                        rules::CLOSURE,
                                        names(cat, &[f, g]),
                                        format!(
                                            "composite of {} and {} leaves Hom({}, {})",
                                            cat.morphism_name(f),
                                            cat.morphism_name(g),
                                            cat.object_name(&scope[i]),
                                            cat.object_name(&scope[k])
                                        ),
                                    ));
                                } else {
                                    composites.insert((f.clone(), g.clone()), h);
                                }
                            }
                            Err(e) => report.push(Violation::new(rules::CLOSURE, names(cat, &[f, g]), e.to_string())),
                        }
                    }
                }
            }
        }
    }

    // associativity
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    for f in &homs[i][j] {
                        for g in &homs[j][k] {
                            let Some(fg) = composites.get(&(f.clone(), g.clone())) else {
                                continue;
                            };
                            for h in &homs[k][l] {
                                let Some(gh) = composites.get(&(g.clone(), h.clone())) else {
                                    continue;
                                };
                                let left = composites.get(&(fg.clone(), h.clone()));
                                let right = composites.get(&(f.clone(), gh.clone()));
                                if let (Some(left), Some(right)) = (left, right) {
                                    if left != right {
                                        report.push(Violation::new(
                                            rules::ASSOCIATIVITY,
                                            names(cat, &[f, g, h]),
                                            format!(
                                                "({} ; {}) ; {} = {} but {} ; ({} ; {}) = {}",
                                                cat.morphism_name(f),
                                                cat.morphism_name(g),
                                                cat.morphism_name(h),
                                                cat.morphism_name(left),
                                                cat.morphism_name(f),
                                                cat.morphism_name(g),
                                                cat.morphism_name(h),
                                                cat.morphism_name(right)
                                            ),
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // zero object
    if let Some(zero) = cat.zero_object() {
        if let Some(z) = scope.iter().position(|o| *o == zero) {
            for (i, a) in scope.iter().enumerate() {
                let name = cat.object_name(a);
                let zero_name = cat.object_name(&zero);
                for (count, message) in [
                    (homs[i][z].len(), format!("from {name} to {zero_name}")),
                    (homs[z][i].len(), format!("from {zero_name} to {name}")),
                ] {
                    if count != 1 {
                        report.push(Violation::new(
                            rules::ZERO,
                            vec![name.clone()],
                            format!("{count} morphisms {message}"),
                        ));
                    }
                }
            }
        }
    }
    report
}

/// Right cancellation over a finite scope: `g ; f = h ; f` forces `g = h`.
pub fn is_mono_by_cancellation<C: Category + ?Sized>(
    cat: &C,
    f: &C::Morphism,
    scope: &[C::Object],
    bound: u64,
) -> bool {
    let a = cat.source(f);
    scope.iter().all(|x| {
        let tests = members_within(cat, x, &a, bound);
        pairs_cancel(&tests, |g| cat.compose(g, f).ok())
    })
}

/// Left cancellation over a finite scope: `f ; g = f ; h` forces `g = h`.
pub fn is_epi_by_cancellation<C: Category + ?Sized>(cat: &C, f: &C::Morphism, scope: &[C::Object], bound: u64) -> bool {
    let b = cat.target(f);
    scope.iter().all(|y| {
        let tests = members_within(cat, &b, y, bound);
        pairs_cancel(&tests, |g| cat.compose(f, g).ok())
    })
}

fn pairs_cancel<M: Eq + Hash + Clone, R: Eq + Hash>(tests: &[M], apply: impl Fn(&M) -> Option<R>) -> bool {
    let mut seen = std::collections::HashMap::new();
    for g in tests {
        let Some(r) = apply(g) else { continue };
        if let Some(prev) = seen.insert(r, g.clone()) {
            if prev != *g {
                return false;
            }
        }
    }
    true
}

/// Checks conditions (a)–(c) of a choice of subobjects over a finite scope.
pub fn validate_subobject_choice<C, P>(cat: &C, is_member: P, scope: &[C::Object], bound: u64) -> ValidationReport
where
    C: Category + ?Sized,
    P: Fn(&C::Morphism) -> bool,
{
    let mut report = ValidationReport::new();
    let n = scope.len();
    let mut chosen: Vec<Vec<Vec<C::Morphism>>> = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            chosen[i][j] = members_within(cat, &scope[i], &scope[j], bound)
                .into_iter()
                .filter(|m| is_member(m))
                .collect();
        }
    }
    for i in 0..n {
        let a = &scope[i];
        if !chosen[i][i].contains(&cat.identity(a)) {
            report.push(Violation::new(
                rules::CHOICE_REFLEXIVE,
                vec![cat.object_name(a)],
                format!("identity of {} is not chosen", cat.object_name(a)),
            ));
        }
        for j in 0..n {
            if chosen[i][j].len() > 1 {
                report.push(Violation::new(
                    rules::CHOICE_AT_MOST_ONE,
                    vec![cat.object_name(a), cat.object_name(&scope[j])],
                    format!(
                        "{} chosen morphisms from {} to {}",
                        chosen[i][j].len(),
                        cat.object_name(a),
                        cat.object_name(&scope[j])
                    ),
                ));
            }
            if i < j && !chosen[i][j].is_empty() && !chosen[j][i].is_empty() {
                report.push(Violation::new(
                    rules::CHOICE_ANTISYMMETRY,
                    vec![cat.object_name(a), cat.object_name(&scope[j])],
                    format!(
                        "{} and {} are chosen subobjects of each other",
                        cat.object_name(a),
                        cat.object_name(&scope[j])
                    ),
                ));
            }
            for f in &chosen[i][j] {
                if !cat.is_mono(f) {
                    report.push(Violation::new(
                        rules::CHOICE_MONO,
                        vec![cat.morphism_name(f)],
                        format!("{} is not a monomorphism", cat.morphism_name(f)),
                    ));
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for f in &chosen[i][j] {
                    for g in &chosen[j][k] {
                        if let Ok(h) = cat.compose(f, g) {
                            if !is_member(&h) {
                                report.push(Violation::new(
                                    rules::CHOICE_COMPOSITION,
                                    names(cat, &[f, g]),
                                    format!(
                                        "composite of {} and {} is not chosen",
                                        cat.morphism_name(f),
                                        cat.morphism_name(g)
                                    ),
                                ));
                            }
                        }
                    }
                }
                // f: a → c and g: b → c chosen, f = h ; g  ⇒  h chosen
                for f in &chosen[i][k] {
                    for g in &chosen[j][k] {
                        for h in members_within(cat, &scope[i], &scope[j], bound) {
                            if is_member(&h) {
                                continue;
                            }
                            if cat.compose(&h, g).ok().as_ref() == Some(f) {
                                report.push(Violation::new(
                                    rules::CHOICE_DIVISOR,
                                    names(cat, &[f, g, &h]),
                                    format!(
                                        "{} = {} ; {} but {} is not chosen",
                                        cat.morphism_name(f),
                                        cat.morphism_name(&h),
                                        cat.morphism_name(g),
                                        cat.morphism_name(&h)
                                    ),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

/// Result of [`groupoid_report`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidReport {
    pub is_groupoid: bool,
    /// Every endo-homset is nonempty (the literal connectivity condition).
    pub endo_nonempty: bool,
    /// Every homset is nonempty (the usual notion of a connected groupoid).
    pub connected: bool,
    /// First morphism without a two-sided inverse.
    pub witness: Option<String>,
}

pub fn groupoid_report<C: Category + ?Sized>(cat: &C, scope: &[C::Object]) -> GroupoidReport {
    let mut witness = None;
    let mut endo_nonempty = true;
    let mut connected = true;
    for a in scope {
        for b in scope {
            let members = members_within(cat, a, b, 0);
            if members.is_empty() {
                connected = false;
                if a == b {
                    endo_nonempty = false;
                }
            }
            if witness.is_none() {
                if let Some(f) = members.iter().find(|f| cat.inverse(f).is_none()) {
                    witness = Some(cat.morphism_name(f));
                }
            }
        }
    }
    GroupoidReport {
        is_groupoid: witness.is_none(),
        endo_nonempty,
        connected,
        witness,
    }
}

/// Every morphism that is not a zero morphism has an inverse: a groupoid
/// with a formal zero object adjoined.
pub fn is_groupoid_with_zero<C: Category + ?Sized>(cat: &C, scope: &[C::Object]) -> std::result::Result<(), String> {
    for a in scope {
        for b in scope {
            for f in members_within(cat, a, b, 0) {
                if !cat.is_zero_morphism(&f) && cat.inverse(&f).is_none() {
                    return Err(format!("{} has no inverse", cat.morphism_name(&f)));
                }
            }
        }
    }
    Ok(())
}

/// The opposite of a backend: homsets swapped, composition reversed.
#[derive(Debug, Clone, Copy)]
pub struct Opposite<'a, C: ?Sized>(pub &'a C);

impl<C: Category + ?Sized> Category for Opposite<'_, C> {
    type Object = C::Object;
    type Morphism = C::Morphism;

    fn object_name(&self, a: &Self::Object) -> String {
        self.0.object_name(a)
    }
    fn morphism_name(&self, f: &Self::Morphism) -> String {
        format!("{}^op", self.0.morphism_name(f))
    }
    fn contains_object(&self, a: &Self::Object) -> bool {
        self.0.contains_object(a)
    }
    fn objects(&self) -> Option<Vec<Self::Object>> {
        self.0.objects()
    }
    fn source(&self, f: &Self::Morphism) -> Self::Object {
        self.0.target(f)
    }
    fn target(&self, f: &Self::Morphism) -> Self::Object {
        self.0.source(f)
    }
    fn identity(&self, a: &Self::Object) -> Self::Morphism {
        self.0.identity(a)
    }
    fn compose(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism> {
        self.0.compose(g, f)
    }
    fn homset(&self, a: &Self::Object, b: &Self::Object) -> Homset<Self::Object, Self::Morphism> {
        let hom = self.0.homset(b, a);
        Homset {
            source: a.clone(),
            target: b.clone(),
            body: hom.body,
        }
    }
    fn is_member(&self, f: &Self::Morphism) -> bool {
        self.0.is_member(f)
    }
    fn zero_object(&self) -> Option<Self::Object> {
        self.0.zero_object()
    }
    fn zero_morphism(&self, a: &Self::Object, b: &Self::Object) -> Result<Self::Morphism> {
        self.0.zero_morphism(b, a)
    }
    fn scalar(&self, f: &Self::Morphism) -> Option<Rational> {
        self.0.scalar(f)
    }
    fn scalar_morphism(&self, a: &Self::Object, b: &Self::Object, q: &Rational) -> Option<Self::Morphism> {
        self.0.scalar_morphism(b, a, q)
    }
    fn is_mono(&self, f: &Self::Morphism) -> bool {
        self.0.is_epi(f)
    }
    fn is_epi(&self, f: &Self::Morphism) -> bool {
        self.0.is_mono(f)
    }
    fn inverse(&self, f: &Self::Morphism) -> Option<Self::Morphism> {
        self.0.inverse(f)
    }
}
