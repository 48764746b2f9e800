//! Arrows of the simplex category as extensional monotone maps.
//!
//! An arrow `[n] -> [m]` is stored as its value list, so the simplicial
//! identities are facts about functions rather than rewrite rules. Cofaces,
//! codegeneracies, composition, enumeration, and the unique epi-mono
//! factorization all live here.

use crate::error::{Error, Result};

/// A weakly increasing map `[source] -> [target]`, where `[n]` is the
/// ordered set `{0, ..., n}`. `values[j]` is the image of `j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonotoneMap {
    source: usize,
    target: usize,
    values: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(target: usize, values: Vec<usize>) -> Result<MonotoneMap> {
        if values.is_empty() {
            return Err(Error::MalformedWord(
                "a monotone map needs at least one value".to_string(),
            ));
        }
        for pair in values.windows(2) {
            if pair[0] > pair[1] {
                return Err(Error::MalformedWord(format!(
                    "values {values:?} are not weakly increasing"
                )));
            }
        }
        if *values.last().unwrap() > target {
            return Err(Error::MalformedWord(format!(
                "value {} exceeds target object [{}]",
                values.last().unwrap(),
                target
            )));
        }
        Ok(MonotoneMap {
            source: values.len() - 1,
            target,
            values,
        })
    }

    pub fn identity(n: usize) -> MonotoneMap {
        MonotoneMap {
            source: n,
            target: n,
            values: (0..=n).collect(),
        }
    }

    /// The coface `[level] -> [level + 1]` missing the value `i`,
    /// for `0 <= i <= level + 1`.
    pub fn coface(i: usize, level: usize) -> MonotoneMap {
        assert!(i <= level + 1, "coface index {i} out of range at level {level}");
        MonotoneMap {
            source: level,
            target: level + 1,
            values: (0..=level).map(|j| if j < i { j } else { j + 1 }).collect(),
        }
    }

    /// The codegeneracy `[level + 1] -> [level]` hitting the value `i`
    /// twice, for `0 <= i <= level`.
    pub fn codegeneracy(i: usize, level: usize) -> MonotoneMap {
        assert!(i <= level, "codegeneracy index {i} out of range at level {level}");
        MonotoneMap {
            source: level + 1,
            target: level,
            values: (0..=level + 1).map(|j| if j <= i { j } else { j - 1 }).collect(),
        }
    }

    /// The unique map `[n] -> [0]`.
    pub fn constant(n: usize) -> MonotoneMap {
        MonotoneMap {
            source: n,
            target: 0,
            values: vec![0; n + 1],
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, j: usize) -> usize {
        self.values[j]
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.values.iter().enumerate().all(|(j, &v)| j == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|p| p[0] < p[1])
    }

    pub fn is_surjective(&self) -> bool {
        // Monotone maps are surjective iff they hit 0, the target, and never
        // jump by more than one.
        self.values[0] == 0
            && *self.values.last().unwrap() == self.target
            && self.values.windows(2).all(|p| p[1] - p[0] <= 1)
    }

    /// Diagrammatic composite: `self` then `g`.
    pub fn compose(&self, g: &MonotoneMap) -> Result<MonotoneMap> {
        if self.target != g.source {
            return Err(Error::Composability(format!(
                "[{}]->[{}] then [{}]->[{}]",
                self.source, self.target, g.source, g.target
            )));
        }
        Ok(MonotoneMap {
            source: self.source,
            target: g.target,
            values: self.values.iter().map(|&v| g.values[v]).collect(),
        })
    }

    /// The unique epi-mono factorization, reported as generator indices.
    ///
    /// The first list holds codegeneracy indices (positions `j` with
    /// `f(j) = f(j+1)`), the second the values missed by `f`; both are
    /// strictly decreasing. Applying the codegeneracies largest index first
    /// and then the cofaces smallest index first recomposes `f`.
    pub fn epi_mono_factorize(&self) -> (Vec<usize>, Vec<usize>) {
        let mut degens: Vec<usize> = (0..self.source)
            .filter(|&j| self.values[j] == self.values[j + 1])
            .collect();
        degens.reverse();
        let mut faces: Vec<usize> = (0..=self.target)
            .filter(|v| !self.values.contains(v))
            .collect();
        faces.reverse();
        (degens, faces)
    }
}

impl std::fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", vals.join(","))
    }
}

/// All monotone maps `[n] -> [m]` in lexicographic order on value lists.
pub fn enumerate_hom(n: usize, m: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut stack = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == n + 1 {
            out.push(MonotoneMap {
                source: n,
                target: m,
                values: prefix,
            });
            continue;
        }
        let low = prefix.last().copied().unwrap_or(0);
        // Push in reverse so the stack pops in increasing order.
        for v in (low..=m).rev() {
            let mut next = prefix.clone();
            next.push(v);
            stack.push(next);
        }
    }
    out
}

/// `C(n + m + 1, n + 1)`, the size of `Hom([n], [m])`.
pub fn hom_count(n: usize, m: usize) -> usize {
    let mut c: usize = 1;
    for k in 0..n + 1 {
        c = c * (m + 1 + k) / (k + 1);
    }
    c
}
