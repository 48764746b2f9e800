//! Families of groups acting on the simplex levels, behind a common trait
//! so that callers select cyclic or symmetric behaviour by name at run
//! time. Each family knows its elements, a generating set with defining
//! relations, and how to pull a permutation out of an arbitrary set map so
//! that a monotone map remains.

use crate::delta::MonotoneMap;
use crate::error::{Error, Result};

/// A bijection of `{0, .., points-1}` in one line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Permutation> {
        let mut seen = vec![false; values.len()];
        for &v in &values {
            if v >= values.len() || seen[v] {
                return Err(Error::Structural(format!(
                    "{values:?} is not a permutation"
                )));
            }
            seen[v] = true;
        }
        if values.is_empty() {
            return Err(Error::Structural("a permutation needs a point".into()));
        }
        Ok(Permutation { values })
    }

    pub fn identity(points: usize) -> Permutation {
        Permutation {
            values: (0..points).collect(),
        }
    }

    /// The cycle sending each point to its successor, wrapping at the top.
    pub fn rotation(points: usize) -> Permutation {
        Permutation {
            values: (0..points).map(|i| (i + 1) % points).collect(),
        }
    }

    /// The adjacent transposition swapping `i` and `i + 1`.
    pub fn transposition(i: usize, points: usize) -> Permutation {
        let mut values: Vec<usize> = (0..points).collect();
        values.swap(i, i + 1);
        Permutation { values }
    }

    pub fn points(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Diagrammatic composite: first `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.points(), other.points(), "point counts differ");
        Permutation {
            values: self.values.iter().map(|&v| other.values[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut values = vec![0; self.values.len()];
        for (i, &v) in self.values.iter().enumerate() {
            values[v] = i;
        }
        Permutation { values }
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// An arbitrary function `[source] -> [target]`, with no monotonicity
/// assumed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetMap {
    target: usize,
    values: Vec<usize>,
}

impl SetMap {
    pub fn new(target: usize, values: Vec<usize>) -> Result<SetMap> {
        if values.is_empty() {
            return Err(Error::Structural("a set map needs a source point".into()));
        }
        for &v in &values {
            if v > target {
                return Err(Error::Structural(format!(
                    "value {v} exceeds target [{target}]"
                )));
            }
        }
        Ok(SetMap { target, values })
    }

    pub fn from_monotone(f: &MonotoneMap) -> SetMap {
        SetMap {
            target: f.target(),
            values: f.values().to_vec(),
        }
    }

    pub fn source(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// Diagrammatic composite: first `self`, then `other`.
    pub fn then(&self, other: &SetMap) -> Result<SetMap> {
        if self.target != other.source() {
            return Err(Error::Composability(format!(
                "[{}]->[{}] then [{}]->[{}]",
                self.source(),
                self.target,
                other.source(),
                other.target
            )));
        }
        Ok(SetMap {
            target: other.target,
            values: self.values.iter().map(|&v| other.values[v]).collect(),
        })
    }

    pub fn is_monotone(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn to_monotone(&self) -> Result<MonotoneMap> {
        MonotoneMap::new(self.target, self.values.clone())
    }
}

impl std::fmt::Display for SetMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// The stable factorization of a set map `u` as a monotone map after a
/// permutation, `u = mono o perm` in classical order. The permutation is
/// the unique one preserving the relative order inside every fiber of `u`.
pub fn stable_factorize(u: &SetMap) -> (MonotoneMap, Permutation) {
    let points = u.source() + 1;
    let mut order: Vec<usize> = (0..points).collect();
    order.sort_by_key(|&i| (u.apply(i), i));
    let mono_values: Vec<usize> = order.iter().map(|&i| u.apply(i)).collect();
    let mut perm_values = vec![0; points];
    for (slot, &i) in order.iter().enumerate() {
        perm_values[i] = slot;
    }
    let mono = MonotoneMap::new(u.target(), mono_values).expect("sorted values are monotone");
    let perm = Permutation::new(perm_values).expect("slots form a permutation");
    (mono, perm)
}

/// A family of groups indexed by simplex level, together with the
/// factorization rule that moves its elements past monotone maps.
pub trait GroupFamily {
    fn name(&self) -> &'static str;

    /// The group order at a given level.
    fn order(&self, level: usize) -> usize;

    /// All elements at a level, in a fixed canonical order.
    fn elements(&self, level: usize) -> Vec<Permutation>;

    fn contains(&self, p: &Permutation) -> bool;

    /// Named generators at a level. Levels without generators return an
    /// empty list.
    fn generators(&self, level: usize) -> Vec<(String, Permutation)>;

    /// Writes an element as a sequence of generator indices, listed in
    /// application order, so an empty word is the identity.
    fn generator_word(&self, p: &Permutation) -> Result<Vec<usize>>;

    /// Pairs of generator index words that compose to the same element,
    /// presenting the group at this level.
    fn relation_words(&self, level: usize) -> Vec<(Vec<usize>, Vec<usize>)>;

    /// Splits `u` as a monotone map after a family element, erroring when
    /// no family element works.
    fn factorize(&self, u: &SetMap) -> Result<(MonotoneMap, Permutation)>;
}

pub struct CyclicFamily;

impl GroupFamily for CyclicFamily {
    fn name(&self) -> &'static str {
        "cyclic"
    }

    fn order(&self, level: usize) -> usize {
        level + 1
    }

    fn elements(&self, level: usize) -> Vec<Permutation> {
        let rotation = Permutation::rotation(level + 1);
        let mut out = vec![Permutation::identity(level + 1)];
        for _ in 0..level {
            out.push(out.last().unwrap().then(&rotation));
        }
        out
    }

    fn contains(&self, p: &Permutation) -> bool {
        let mut candidate = Permutation::identity(p.points());
        let rotation = Permutation::rotation(p.points());
        for _ in 0..p.apply(0) {
            candidate = candidate.then(&rotation);
        }
        candidate == *p
    }

    fn generators(&self, level: usize) -> Vec<(String, Permutation)> {
        vec![("t".to_string(), Permutation::rotation(level + 1))]
    }

    fn generator_word(&self, p: &Permutation) -> Result<Vec<usize>> {
        if !self.contains(p) {
            return Err(Error::ClosureViolation {
                family: self.name().to_string(),
                level: p.points() - 1,
            });
        }
        Ok(vec![0; p.apply(0)])
    }

    fn relation_words(&self, level: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
        vec![(vec![0; level + 1], Vec::new())]
    }

    fn factorize(&self, u: &SetMap) -> Result<(MonotoneMap, Permutation)> {
        let points = u.source() + 1;
        let rotation = Permutation::rotation(points);
        let mut g = Permutation::identity(points);
        for _ in 0..points {
            let inverse = g.inverse();
            let values: Vec<usize> = (0..points).map(|x| u.apply(inverse.apply(x))).collect();
            if values.windows(2).all(|w| w[0] <= w[1]) {
                let mono = MonotoneMap::new(u.target(), values)?;
                return Ok((mono, g));
            }
            g = g.then(&rotation);
        }
        Err(Error::ClosureViolation {
            family: self.name().to_string(),
            level: u.source(),
        })
    }
}

pub struct SymmetricFamily;

fn lexicographic_permutations(points: usize) -> Vec<Permutation> {
    fn rec(remaining: &mut Vec<usize>, prefix: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if remaining.is_empty() {
            out.push(Permutation::new(prefix.clone()).expect("built from distinct values"));
            return;
        }
        for k in 0..remaining.len() {
            let v = remaining.remove(k);
            prefix.push(v);
            rec(remaining, prefix, out);
            prefix.pop();
            remaining.insert(k, v);
        }
    }
    let mut remaining: Vec<usize> = (0..points).collect();
    let mut out = Vec::new();
    rec(&mut remaining, &mut Vec::new(), &mut out);
    out
}

impl GroupFamily for SymmetricFamily {
    fn name(&self) -> &'static str {
        "symmetric"
    }

    fn order(&self, level: usize) -> usize {
        (1..=level + 1).product()
    }

    fn elements(&self, level: usize) -> Vec<Permutation> {
        lexicographic_permutations(level + 1)
    }

    fn contains(&self, _p: &Permutation) -> bool {
        true
    }

    fn generators(&self, level: usize) -> Vec<(String, Permutation)> {
        (0..level)
            .map(|i| (format!("s{i}"), Permutation::transposition(i, level + 1)))
            .collect()
    }

    fn generator_word(&self, p: &Permutation) -> Result<Vec<usize>> {
        let mut word = Vec::new();
        let mut current = p.clone();
        let points = p.points();
        loop {
            let descent =
                (0..points.saturating_sub(1)).find(|&i| current.apply(i) > current.apply(i + 1));
            match descent {
                Some(i) => {
                    word.push(i);
                    current = Permutation::transposition(i, points).then(&current);
                }
                None => break,
            }
        }
        Ok(word)
    }

    fn relation_words(&self, level: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut out = Vec::new();
        for i in 0..level {
            out.push((vec![i, i], Vec::new()));
        }
        for i in 0..level.saturating_sub(1) {
            out.push((vec![i, i + 1, i], vec![i + 1, i, i + 1]));
        }
        for i in 0..level {
            for j in i + 2..level {
                out.push((vec![i, j], vec![j, i]));
            }
        }
        out
    }

    fn factorize(&self, u: &SetMap) -> Result<(MonotoneMap, Permutation)> {
        Ok(stable_factorize(u))
    }
}

/// Every registered family, in a fixed order.
pub fn registry() -> Vec<Box<dyn GroupFamily>> {
    vec![Box::new(CyclicFamily), Box::new(SymmetricFamily)]
}

/// Finds a registered family by its name.
pub fn lookup(name: &str) -> Result<Box<dyn GroupFamily>> {
    registry()
        .into_iter()
        .find(|f| f.name() == name)
        .ok_or_else(|| Error::UnknownFamily(name.to_string()))
}
