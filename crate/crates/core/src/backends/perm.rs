use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, …, n-1}` stored as its image vector. Printed and
/// parsed in 1-based cycle notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidMorphism(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Largest point mentioned in cycle notation such as `"(1 2)(3 4 5)"`.
    pub fn max_point(text: &str) -> Result<usize> {
        Ok(parse_cycles(text)?.into_iter().flatten().max().unwrap_or(0))
    }

    /// Parses 1-based cycle notation; `"()"` or `"e"` is the identity.
    /// Cycles are applied left to right.
    pub fn parse(text: &str, degree: usize) -> Result<Perm> {
        let mut perm = Perm::identity(degree);
        for cycle in parse_cycles(text)? {
            let mut images: Vec<usize> = (0..degree).collect();
            let mut seen = std::collections::BTreeSet::new();
            for (pos, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(Error::InvalidMorphism(format!(
                        "point {p} outside 1..={degree} in {text}"
                    )));
                }
                if !seen.insert(p) {
                    return Err(Error::InvalidMorphism(format!("point {p} repeated in {text}")));
                }
                let next = cycle[(pos + 1) % cycle.len()];
                images[p - 1] = next - 1;
            }
            perm = perm.then(&Perm(images));
        }
        Ok(perm)
    }
}

fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let text = text.trim();
    if text == "e" || text.is_empty() {
        return Ok(Vec::new());
    }
    let bad = || Error::InvalidMorphism(format!("malformed cycle notation {text:?}"));
    let mut cycles = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        rest = rest.trim_start();
        let inner_start = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = inner_start.find(')').ok_or_else(bad)?;
        let inner = &inner_start[..close];
        let points = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = inner_start[close + 1..].trim_start();
    }
    Ok(cycles)
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut wrote = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
                first = false;
                p = self.0[p];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}
