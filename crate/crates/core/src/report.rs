use std::fmt;

/// Rule identifiers used in [`Violation::rule`].
pub mod rules {
    pub const ASSOCIATIVITY: &str = "cat.1";
    pub const LEFT_UNIT: &str = "cat.2.left";
    pub const RIGHT_UNIT: &str = "cat.2.right";
    pub const CLOSURE: &str = "closure";
    pub const DISJOINT: &str = "disjoint";
    pub const IDENTITY: &str = "identity";
    pub const ZERO: &str = "zero";
    pub const CHOICE_AT_MOST_ONE: &str = "choice.a.unique";
    pub const CHOICE_ANTISYMMETRY: &str = "choice.a.antisymmetric";
    pub const CHOICE_REFLEXIVE: &str = "choice.a.identity";
    pub const CHOICE_COMPOSITION: &str = "choice.a.composition";
    pub const CHOICE_MONO: &str = "choice.b";
    pub const CHOICE_DIVISOR: &str = "choice.c";
    pub const VERTEX: &str = "vertex";
    pub const HOMSET_MAP: &str = "homset-map";
    pub const SQUARE: &str = "square";
    pub const FUNCTOR_IDENTITY: &str = "functor.identity";
    pub const FUNCTOR_COMPOSITE: &str = "functor.composite";
}

/// One violated rule instance together with the objects that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: String,
    pub witness: Vec<String>,
    pub message: String,
}

impl Violation {
    pub fn new(rule: &str, witness: Vec<String>, message: impl Into<String>) -> Self {
        Violation {
            rule: rule.to_string(),
            witness,
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.rule, self.message)
    }
}

/// Ordered list of violations; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, violation: Violation) {
        self.violations.push(violation);
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    /// Violations for a given rule id.
    pub fn with_rule<'a>(&'a self, rule: &'a str) -> impl Iterator<Item = &'a Violation> + 'a {
        self.violations.iter().filter(move |v| v.rule == rule)
    }
}
