//! Subgroups `nℤ` of the integers as ℤ-modules. The object `0` is the trivial
//! module. A morphism `nℤ → mℤ` is multiplication by a rational `q` with
//! `q·n/m` an integer, so `Hom(nℤ, mℤ)` is the family `(m/n)·k`, `k ∈ ℤ`.
//!
//! Mono and epi follow the ambient category of ℤ-modules: mono is
//! injectivity and epi is surjectivity onto the target.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::category::{Category, Factorization, Homset, HomsetBody, Subobjects};
use crate::error::{Error, Result};
use crate::rational::{from_u64, integer_quotient, Rational};

/// `nℤ` for `n ≥ 1`; `0` is the zero object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubZObject(pub u64);

impl SubZObject {
    pub const ZERO: SubZObject = SubZObject(0);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for SubZObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "0"),
            1 => write!(f, "ℤ"),
            n => write!(f, "{n}ℤ"),
        }
    }
}

/// `x ↦ scalar·x` from `source` to `target`. Morphisms touching `0` carry scalar 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubZMorphism {
    pub source: SubZObject,
    pub target: SubZObject,
    pub scalar: Rational,
}

impl SubZMorphism {
    /// Builds the morphism after checking membership.
    pub fn new(source: SubZObject, target: SubZObject, scalar: Rational) -> Result<Self> {
        let f = SubZMorphism::canonical(source, target, scalar);
        if SubZ.is_member(&f) {
            Ok(f)
        } else {
            Err(Error::InvalidMorphism(format!(
                "{} does not map {} into {}",
                f.scalar, source, target
            )))
        }
    }

    fn canonical(source: SubZObject, target: SubZObject, scalar: Rational) -> Self {
        let scalar = if source.is_zero() || target.is_zero() {
            Rational::zero()
        } else {
            scalar
        };
        SubZMorphism { source, target, scalar }
    }
}

impl fmt::Display for SubZMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} → {}", self.scalar, self.source, self.target)
    }
}

/// The SubZ backend. Stateless; every instance is the same category.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SubZ;

impl SubZ {
    /// Generator `m/n` of `Hom(nℤ, mℤ)`; 0 for homsets touching the zero object.
    pub fn generator(a: SubZObject, b: SubZObject) -> Rational {
        if a.is_zero() || b.is_zero() {
            Rational::zero()
        } else {
            Rational::new(BigInt::from(b.0), BigInt::from(a.0))
        }
    }

    pub fn morphism(&self, a: u64, b: u64, scalar: Rational) -> Result<SubZMorphism> {
        SubZMorphism::new(SubZObject(a), SubZObject(b), scalar)
    }

    /// The family member `(m/n)·k`.
    pub fn family_member(a: SubZObject, b: SubZObject, k: i64) -> SubZMorphism {
        let q = SubZ::generator(a, b) * Rational::from_integer(BigInt::from(k));
        SubZMorphism::canonical(a, b, q)
    }
}

impl Category for SubZ {
    type Object = SubZObject;
    type Morphism = SubZMorphism;

    fn object_name(&self, a: &SubZObject) -> String {
        a.to_string()
    }

    fn morphism_name(&self, f: &SubZMorphism) -> String {
        f.to_string()
    }

    fn contains_object(&self, _a: &SubZObject) -> bool {
        true
    }

    fn source(&self, f: &SubZMorphism) -> SubZObject {
        f.source
    }

    fn target(&self, f: &SubZMorphism) -> SubZObject {
        f.target
    }

    fn identity(&self, a: &SubZObject) -> SubZMorphism {
        SubZMorphism::canonical(*a, *a, Rational::one())
    }

    fn compose(&self, f: &SubZMorphism, g: &SubZMorphism) -> Result<SubZMorphism> {
        if f.target != g.source {
            return Err(Error::NonComposable {
                left: f.to_string(),
                right: g.to_string(),
            });
        }
        Ok(SubZMorphism::canonical(f.source, g.target, &f.scalar * &g.scalar))
    }

    fn homset(&self, a: &SubZObject, b: &SubZObject) -> Homset<SubZObject, SubZMorphism> {
        Homset {
            source: *a,
            target: *b,
            body: HomsetBody::ScalarFamily {
                generator: SubZ::generator(*a, *b),
            },
        }
    }

    fn is_member(&self, f: &SubZMorphism) -> bool {
        if f.source.is_zero() || f.target.is_zero() {
            return f.scalar.is_zero();
        }
        (&f.scalar * from_u64(f.source.0) / from_u64(f.target.0)).is_integer()
    }

    fn zero_object(&self) -> Option<SubZObject> {
        Some(SubZObject::ZERO)
    }

    fn zero_morphism(&self, a: &SubZObject, b: &SubZObject) -> Result<SubZMorphism> {
        Ok(SubZMorphism {
            source: *a,
            target: *b,
            scalar: Rational::zero(),
        })
    }

    fn is_zero_morphism(&self, f: &SubZMorphism) -> bool {
        f.scalar.is_zero()
    }

    fn scalar(&self, f: &SubZMorphism) -> Option<Rational> {
        Some(f.scalar.clone())
    }

    fn scalar_morphism(&self, a: &SubZObject, b: &SubZObject, q: &Rational) -> Option<SubZMorphism> {
        SubZMorphism::new(*a, *b, q.clone()).ok()
    }

    fn is_mono(&self, f: &SubZMorphism) -> bool {
        f.source.is_zero() || !f.scalar.is_zero()
    }

    fn is_epi(&self, f: &SubZMorphism) -> bool {
        // |q|·n = m, with 0 standing for the trivial module
        f.scalar.abs() * from_u64(f.source.0) == from_u64(f.target.0)
    }

    fn inverse(&self, f: &SubZMorphism) -> Option<SubZMorphism> {
        if f.source.is_zero() && f.target.is_zero() {
            return Some(f.clone());
        }
        if f.scalar.is_zero() {
            return None;
        }
        SubZMorphism::new(f.target, f.source, f.scalar.recip()).ok()
    }
}

impl Subobjects for SubZ {
    /// `aℤ ⊆ bℤ` iff `b` divides `a`; `0` is below everything.
    fn is_subobject(&self, a: &SubZObject, b: &SubZObject) -> bool {
        if a.is_zero() {
            return true;
        }
        !b.is_zero() && a.0.is_multiple_of(b.0)
    }

    fn inclusion(&self, a: &SubZObject, b: &SubZObject) -> Option<SubZMorphism> {
        self.is_subobject(a, b)
            .then(|| SubZMorphism::canonical(*a, *b, Rational::one()))
    }

    fn is_inclusion(&self, f: &SubZMorphism) -> bool {
        self.is_subobject(&f.source, &f.target) && (f.source.is_zero() || f.scalar.is_one())
    }

    fn factorize(&self, f: &SubZMorphism) -> Result<Factorization<SubZObject, SubZMorphism>> {
        let image = if f.scalar.is_zero() || f.source.is_zero() {
            SubZObject::ZERO
        } else {
            let key = f.scalar.abs() * from_u64(f.source.0);
            // membership makes q·n a multiple of m, hence an integer
            let key = key.to_integer();
            SubZObject(u64::try_from(key).map_err(|_| Error::NoFactorization(f.to_string()))?)
        };
        Ok(Factorization {
            epi_part: SubZMorphism::canonical(f.source, image, f.scalar.clone()),
            inclusion_part: SubZMorphism::canonical(image, f.target, Rational::one()),
            image,
        })
    }

    fn restrict(&self, f: &SubZMorphism, src: &SubZObject, tgt: &SubZObject) -> Option<SubZMorphism> {
        if !self.is_subobject(src, &f.source) || !self.is_subobject(tgt, &f.target) {
            return None;
        }
        SubZMorphism::new(*src, *tgt, f.scalar.clone()).ok()
    }

    fn extend(&self, g: &SubZMorphism, src: &SubZObject, tgt: &SubZObject) -> Option<SubZMorphism> {
        if !self.is_subobject(&g.source, src) || !self.is_subobject(&g.target, tgt) {
            return None;
        }
        if g.source.is_zero() {
            return self.zero_morphism(src, tgt).ok();
        }
        SubZMorphism::new(*src, *tgt, g.scalar.clone()).ok()
    }

    /// Closed form: the scalar of `f_small` must lie in the family of
    /// `Hom(big_src, big_tgt)`.
    fn corestricts(
        &self,
        f_small: &SubZMorphism,
        big_src: &SubZObject,
        big_tgt: &SubZObject,
        strict: bool,
    ) -> Result<bool> {
        crate::category::check_subobject_pair(self, &f_small.source, big_src)?;
        crate::category::check_subobject_pair(self, &f_small.target, big_tgt)?;
        let member = if f_small.scalar.is_zero() {
            true
        } else {
            integer_quotient(&f_small.scalar, &SubZ::generator(*big_src, *big_tgt)).is_some()
        };
        Ok(member && (!strict || self.is_epi(f_small)))
    }
}
