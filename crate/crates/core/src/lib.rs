//! Chain bundles over categories with zero.
//!
//! A chain bundle is a finite descending sequence of objects
//! `M_L ⇛ … ⇛ M_1 ⇛ 0` together with every morphism of each consecutive
//! homset. This crate validates bundles and bundle maps over pluggable
//! backends, decides the subchain-bundle preorder, factorizes full maps
//! through their images, forms termwise products and extracts chains and
//! chain complexes.
//!
//! Composition is diagrammatic: `compose(f, g)` is "`f` then `g`".

pub mod backends;
pub mod bundle;
pub mod category;
pub mod chains;
pub mod error;
pub mod presented;
pub mod rational;
pub mod report;

pub use category::{Category, Factorization, Homset, HomsetBody, Opposite, ProductCone, Subobjects};
pub use error::{Error, Result};
pub use rational::Rational;
pub use report::{ValidationReport, Violation};
