//! Modules over a simplex category enlarged by a group family: morphism
//! normal forms, their composition, representable examples, a structural
//! validator, and the passage to invariants.
//!
//! A morphism in the enlarged category is a pair of a permutation from the
//! family followed by a monotone map. Composition realizes the middle
//! section as a plain set map and splits it again through the family's
//! factorization rule.

use std::collections::BTreeMap;

use crate::delta::MonotoneMap;
use crate::error::{Error, Result};
use crate::family::{lookup, GroupFamily, Permutation, SetMap};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::simplicial::{SimplicialMap, SimplicialModule};

/// A normal form morphism: apply the permutation first, the monotone map
/// second.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrossedMorphism {
    label: Permutation,
    mono: MonotoneMap,
}

impl CrossedMorphism {
    pub fn new(label: Permutation, mono: MonotoneMap) -> Result<CrossedMorphism> {
        if label.points() != mono.source() + 1 {
            return Err(Error::Composability(format!(
                "permutation on {} points cannot precede a map out of [{}]",
                label.points(),
                mono.source()
            )));
        }
        Ok(CrossedMorphism { label, mono })
    }

    pub fn identity(n: usize) -> CrossedMorphism {
        CrossedMorphism {
            label: Permutation::identity(n + 1),
            mono: MonotoneMap::identity(n),
        }
    }

    pub fn from_set_map(u: &SetMap, family: &dyn GroupFamily) -> Result<CrossedMorphism> {
        let (mono, label) = family.factorize(u)?;
        Ok(CrossedMorphism { label, mono })
    }

    pub fn label(&self) -> &Permutation {
        &self.label
    }

    pub fn mono(&self) -> &MonotoneMap {
        &self.mono
    }

    pub fn source(&self) -> usize {
        self.mono.source()
    }

    pub fn target(&self) -> usize {
        self.mono.target()
    }

    /// The underlying set map.
    pub fn realize(&self) -> SetMap {
        let values = (0..self.label.points())
            .map(|x| self.mono.apply(self.label.apply(x)))
            .collect();
        SetMap::new(self.mono.target(), values).expect("realized values are bounded")
    }
}

impl std::fmt::Display for CrossedMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "mono {}, perm {}", self.mono, self.label)
    }
}

/// Diagrammatic composition of normal forms: the middle permutation is
/// pushed through the first monotone part with the family's factorization
/// rule, which may fail for families that are not closed over the
/// composite.
pub fn crossed_compose(
    a: &CrossedMorphism,
    b: &CrossedMorphism,
    family: &dyn GroupFamily,
) -> Result<CrossedMorphism> {
    if a.target() != b.source() {
        return Err(Error::Composability(format!(
            "[{}]->[{}] then [{}]->[{}]",
            a.source(),
            a.target(),
            b.source(),
            b.target()
        )));
    }
    let middle_values = (0..=a.source())
        .map(|x| b.label.apply(a.mono.apply(x)))
        .collect();
    let middle = SetMap::new(a.target(), middle_values)?;
    let (mono_part, pushed) = family.factorize(&middle)?;
    CrossedMorphism::new(a.label.then(&pushed), mono_part.compose(&b.mono)?)
}

/// A simplicial module with a compatible family action: one matrix per
/// family generator in every degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedModule {
    base: SimplicialModule,
    family_name: String,
    actions: Vec<Vec<Matrix>>,
}

impl CrossedModule {
    /// Checks shapes and the family name; the group relations and the
    /// compatibility with faces and degeneracies are left to [`validate`].
    ///
    /// [`validate`]: CrossedModule::validate
    pub fn new(
        base: SimplicialModule,
        family_name: &str,
        actions: Vec<Vec<Matrix>>,
    ) -> Result<CrossedModule> {
        let family = lookup(family_name)?;
        if !base.is_full() {
            return Err(Error::DegeneracyRequired);
        }
        if actions.len() != base.dims().len() {
            return Err(Error::DimensionMismatch(format!(
                "expected action families for degrees 0..={}, got {}",
                base.max_degree(),
                actions.len()
            )));
        }
        for (n, level_actions) in actions.iter().enumerate() {
            let generators = family.generators(n);
            if level_actions.len() != generators.len() {
                return Err(Error::DimensionMismatch(format!(
                    "degree {n} needs {} generator actions, got {}",
                    generators.len(),
                    level_actions.len()
                )));
            }
            for ((name, _), m) in generators.iter().zip(level_actions) {
                if m.field() != base.field() {
                    return Err(Error::FieldMismatch(
                        base.field().descriptor(),
                        m.field().descriptor(),
                    ));
                }
                if m.rows() != base.dim(n) || m.cols() != base.dim(n) {
                    return Err(Error::DimensionMismatch(format!(
                        "action of {name} at degree {n} should be square of size {}",
                        base.dim(n)
                    )));
                }
            }
        }
        Ok(CrossedModule {
            base,
            family_name: family_name.to_string(),
            actions,
        })
    }

    /// Equips a module with identity actions. The result always has well
    /// defined invariants, though the compatibility law only holds when
    /// the underlying structure maps are themselves symmetric enough.
    pub fn trivial_action(base: &SimplicialModule, family_name: &str) -> Result<CrossedModule> {
        let family = lookup(family_name)?;
        let actions = (0..=base.max_degree())
            .map(|n| {
                family
                    .generators(n)
                    .iter()
                    .map(|_| Matrix::identity(base.field(), base.dim(n)))
                    .collect()
            })
            .collect();
        CrossedModule::new(base.clone(), family_name, actions)
    }

    pub fn base(&self) -> &SimplicialModule {
        &self.base
    }

    pub fn family_name(&self) -> &str {
        &self.family_name
    }

    pub fn family(&self) -> Box<dyn GroupFamily> {
        lookup(&self.family_name).expect("family checked at construction")
    }

    pub fn generator_actions(&self, level: usize) -> &[Matrix] {
        &self.actions[level]
    }

    /// The action matrix of an arbitrary family element, multiplied out
    /// along a generator word.
    pub fn action_of(&self, p: &Permutation) -> Result<Matrix> {
        let level = p.points() - 1;
        if level > self.base.max_degree() {
            return Err(Error::DegreeOutOfRange {
                degree: level,
                max: self.base.max_degree(),
            });
        }
        let word = self.family().generator_word(p)?;
        let mut out = Matrix::identity(self.base.field(), self.base.dim(level));
        for idx in word {
            out = out.mul(&self.actions[level][idx])?;
        }
        Ok(out)
    }

    /// Validates the whole structure: the base module, the group relations
    /// of every level's action, and the exchange law against each face and
    /// degeneracy.
    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        let family = self.family();
        for n in 0..=self.base.max_degree() {
            for (left, right) in family.relation_words(n) {
                let product = |word: &[usize]| -> Result<Matrix> {
                    let mut m = Matrix::identity(self.base.field(), self.base.dim(n));
                    for &idx in word {
                        m = m.mul(&self.actions[n][idx])?;
                    }
                    Ok(m)
                };
                if product(&left)? != product(&right)? {
                    return Err(Error::Structural(format!(
                        "group relation fails at degree {n}"
                    )));
                }
            }
        }
        let top = self.base.max_degree();
        let mut monotone_gens = Vec::new();
        for n in 0..top {
            for i in 0..=n + 1 {
                monotone_gens.push(MonotoneMap::coface(i, n));
            }
            for i in 0..=n {
                monotone_gens.push(MonotoneMap::codegeneracy(i, n));
            }
        }
        for c in &monotone_gens {
            let (a, b) = (c.source(), c.target());
            for (k, (name, g)) in family.generators(b).iter().enumerate() {
                let values = (0..=a).map(|x| g.apply(c.apply(x))).collect();
                let u = SetMap::new(b, values)?;
                let (c_prime, g_prime) = family.factorize(&u)?;
                let lhs = self.base.action(c)?.mul(&self.actions[b][k])?;
                let rhs = self
                    .action_of(&g_prime)?
                    .mul(&self.base.action(&c_prime)?)?;
                if lhs != rhs {
                    return Err(Error::Structural(format!(
                        "action of {name} at degree {b} fails the exchange law against {c}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// A basis of the subspace fixed by the whole group at one level.
    pub fn invariant_basis(&self, level: usize) -> Matrix {
        let field = self.base.field();
        let dim = self.base.dim(level);
        let differences: Vec<Matrix> = self.actions[level]
            .iter()
            .map(|s| {
                s.sub(&Matrix::identity(field, dim))
                    .expect("action shapes agree")
            })
            .collect();
        if differences.is_empty() {
            return Matrix::identity(field, dim);
        }
        let refs: Vec<&Matrix> = differences.iter().collect();
        Matrix::vstack(&refs)
            .expect("stacked shapes agree")
            .kernel_basis()
    }

    pub fn invariant_dims(&self) -> Vec<usize> {
        (0..=self.base.max_degree())
            .map(|n| self.invariant_basis(n).cols())
            .collect()
    }

    /// Dimensions of the coinvariant quotients, for the report alongside
    /// the invariants.
    pub fn coinvariant_dims(&self) -> Vec<usize> {
        let field = self.base.field();
        (0..=self.base.max_degree())
            .map(|n| {
                let dim = self.base.dim(n);
                let differences: Vec<Matrix> = self.actions[n]
                    .iter()
                    .map(|s| {
                        s.sub(&Matrix::identity(field, dim))
                            .expect("action shapes agree")
                    })
                    .collect();
                if differences.is_empty() {
                    return dim;
                }
                let refs: Vec<&Matrix> = differences.iter().collect();
                dim - Matrix::hstack(&refs).expect("stacked shapes agree").rank()
            })
            .collect()
    }

    /// Restricts the simplicial structure to the invariant subspaces. The
    /// restriction fails, with the offending structure map named, whenever
    /// some face or degeneracy moves an invariant vector out of the
    /// invariants; the group actions of interesting examples genuinely do
    /// this.
    pub fn invariants(&self) -> Result<SimplicialModule> {
        let bases: Vec<Matrix> = (0..=self.base.max_degree())
            .map(|n| self.invariant_basis(n))
            .collect();
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let top = self.base.max_degree();
        let mut faces = Vec::new();
        for n in 1..=top {
            let mut level = Vec::new();
            for i in 0..=n {
                let moved = self.base.face(n, i).mul(&bases[n])?;
                let restricted = bases[n - 1].solve(&moved)?.ok_or_else(|| {
                    Error::Structural(format!(
                        "invariants are not closed under face {i} out of degree {n}"
                    ))
                })?;
                level.push(restricted);
            }
            faces.push(level);
        }
        let mut degeneracies = Vec::new();
        for n in 0..top {
            let mut level = Vec::new();
            for i in 0..=n {
                let moved = self.base.degeneracy(n, i)?.mul(&bases[n])?;
                let restricted = bases[n + 1].solve(&moved)?.ok_or_else(|| {
                    Error::Structural(format!(
                        "invariants are not closed under degeneracy {i} out of degree {n}"
                    ))
                })?;
                level.push(restricted);
            }
            degeneracies.push(level);
        }
        SimplicialModule::new(self.base.field(), dims, faces, Some(degeneracies))
    }
}

/// The linearized representable module: degree `n` is spanned by the group
/// at level `n`, monotone maps act through the family factorization, and
/// the group acts by translation on the labels.
pub fn representable_crossed(
    field: Field,
    family_name: &str,
    max_degree: usize,
) -> Result<CrossedModule> {
    let family = lookup(family_name)?;
    let elements: Vec<Vec<Permutation>> = (0..=max_degree).map(|n| family.elements(n)).collect();
    let positions: Vec<BTreeMap<&Permutation, usize>> = elements
        .iter()
        .map(|level| level.iter().enumerate().map(|(i, p)| (p, i)).collect())
        .collect();
    let dims: Vec<usize> = elements.iter().map(Vec::len).collect();
    let structure = |c: &MonotoneMap| -> Result<Matrix> {
        let (a, b) = (c.source(), c.target());
        let mut m = Matrix::zeros(field, dims[a], dims[b]);
        for (col, p) in elements[b].iter().enumerate() {
            let values = (0..=a).map(|x| p.apply(c.apply(x))).collect();
            let u = SetMap::new(b, values)?;
            let (_, g) = family.factorize(&u)?;
            let row = *positions[a]
                .get(&g)
                .expect("factorization stays in the family");
            m.set(row, col, field.one());
        }
        Ok(m)
    };
    let mut faces = Vec::new();
    for n in 1..=max_degree {
        let mut level = Vec::new();
        for i in 0..=n {
            level.push(structure(&MonotoneMap::coface(i, n - 1))?);
        }
        faces.push(level);
    }
    let mut degeneracies = Vec::new();
    for n in 0..max_degree {
        let mut level = Vec::new();
        for i in 0..=n {
            level.push(structure(&MonotoneMap::codegeneracy(i, n))?);
        }
        degeneracies.push(level);
    }
    let mut actions = Vec::new();
    for n in 0..=max_degree {
        let mut level = Vec::new();
        for (_, g) in family.generators(n) {
            let mut m = Matrix::zeros(field, dims[n], dims[n]);
            for (col, p) in elements[n].iter().enumerate() {
                let translated = g.then(p);
                let row = *positions[n]
                    .get(&translated)
                    .expect("translation stays in the group");
                m.set(row, col, field.one());
            }
            level.push(m);
        }
        actions.push(level);
    }
    let base = SimplicialModule::new(field, dims, faces, Some(degeneracies))?;
    CrossedModule::new(base, family_name, actions)
}

/// An equivariant degreewise map of crossed modules over the same family.
#[derive(Debug, Clone)]
pub struct CrossedMap {
    source: CrossedModule,
    target: CrossedModule,
    components: Vec<Matrix>,
}

impl CrossedMap {
    pub fn new(
        source: CrossedModule,
        target: CrossedModule,
        components: Vec<Matrix>,
    ) -> Result<CrossedMap> {
        if source.family_name() != target.family_name() {
            return Err(Error::Structural(format!(
                "cannot map a {} module to a {} module",
                source.family_name(),
                target.family_name()
            )));
        }
        SimplicialMap::new(
            source.base().clone(),
            target.base().clone(),
            components.clone(),
        )?;
        Ok(CrossedMap {
            source,
            target,
            components,
        })
    }

    pub fn identity(module: &CrossedModule) -> CrossedMap {
        let components = module
            .base()
            .dims()
            .iter()
            .map(|&d| Matrix::identity(module.base().field(), d))
            .collect();
        CrossedMap::new(module.clone(), module.clone(), components)
            .expect("identity components match")
    }

    pub fn zero(source: &CrossedModule, target: &CrossedModule) -> Result<CrossedMap> {
        let components = (0..=source.base().max_degree())
            .map(|n| {
                Matrix::zeros(
                    source.base().field(),
                    target.base().dim(n),
                    source.base().dim(n),
                )
            })
            .collect();
        CrossedMap::new(source.clone(), target.clone(), components)
    }

    pub fn source(&self) -> &CrossedModule {
        &self.source
    }

    pub fn target(&self) -> &CrossedModule {
        &self.target
    }

    fn base_map(&self) -> SimplicialMap {
        SimplicialMap::new(
            self.source.base().clone(),
            self.target.base().clone(),
            self.components.clone(),
        )
        .expect("shapes checked at construction")
    }

    pub fn validate(&self) -> Result<()> {
        self.base_map().validate()?;
        for n in 0..=self.source.base().max_degree() {
            for (k, s) in self.source.generator_actions(n).iter().enumerate() {
                let left = self.components[n].mul(s)?;
                let right = self.target.generator_actions(n)[k].mul(&self.components[n])?;
                if left != right {
                    return Err(Error::Structural(format!(
                        "component {n} is not equivariant for generator {k}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The restriction of the map to invariant subspaces, as a simplicial
    /// map. Both modules must have closed invariants and the components
    /// must preserve them.
    pub fn invariant_restriction(&self) -> Result<SimplicialMap> {
        let inv_source = self.source.invariants()?;
        let inv_target = self.target.invariants()?;
        let mut restricted = Vec::new();
        for n in 0..=self.source.base().max_degree() {
            let moved = self.components[n].mul(&self.source.invariant_basis(n))?;
            let r = self
                .target
                .invariant_basis(n)
                .solve(&moved)?
                .ok_or_else(|| {
                    Error::Structural(format!(
                        "component {n} does not preserve the invariants"
                    ))
                })?;
            restricted.push(r);
        }
        SimplicialMap::new(inv_source, inv_target, restricted)
    }

    /// True when the invariant restriction induces isomorphisms on chain
    /// homology below the truncation.
    pub fn is_equivariant_weak_equivalence(&self) -> Result<bool> {
        self.invariant_restriction()?.is_chain_equivalence()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{constant_module, free_standard};

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn representable_dimensions() {
        let c = representable_crossed(q(), "cyclic", 3).unwrap();
        assert_eq!(c.base().dims(), &[1, 2, 3, 4]);
        let s = representable_crossed(q(), "symmetric", 3).unwrap();
        assert_eq!(s.base().dims(), &[1, 2, 6, 24]);
    }

    #[test]
    fn representables_validate() {
        for name in ["cyclic", "symmetric"] {
            let m = representable_crossed(q(), name, 3).unwrap();
            m.validate().unwrap();
        }
    }

    #[test]
    fn representable_invariants_are_lines_but_do_not_close() {
        for name in ["cyclic", "symmetric"] {
            let m = representable_crossed(q(), name, 3).unwrap();
            assert_eq!(m.invariant_dims(), vec![1, 1, 1, 1], "{name}");
            assert!(m.invariants().is_err(), "{name}");
        }
    }

    #[test]
    fn trivial_action_on_the_constant_module_validates() {
        let m = CrossedModule::trivial_action(&constant_module(q(), 3), "cyclic").unwrap();
        m.validate().unwrap();
        assert_eq!(m.invariant_dims(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn invariants_of_a_trivial_action_return_the_module() {
        let base = free_standard(q(), 1, 3);
        for name in ["cyclic", "symmetric"] {
            let m = CrossedModule::trivial_action(&base, name).unwrap();
            assert_eq!(m.invariants().unwrap(), base);
        }
    }

    #[test]
    fn equivariant_predicate_on_identity_and_zero() {
        let m = CrossedModule::trivial_action(&constant_module(q(), 3), "symmetric").unwrap();
        let id = CrossedMap::identity(&m);
        id.validate().unwrap();
        assert!(id.is_equivariant_weak_equivalence().unwrap());
        let z = CrossedMap::zero(&m, &m).unwrap();
        z.validate().unwrap();
        assert!(!z.is_equivariant_weak_equivalence().unwrap());
    }

    #[test]
    fn composition_matches_the_underlying_set_maps() {
        let fam = lookup("symmetric").unwrap();
        let a = CrossedMorphism::new(
            Permutation::new(vec![2, 0, 1]).unwrap(),
            MonotoneMap::new(2, vec![0, 1, 1]).unwrap(),
        )
        .unwrap();
        let b = CrossedMorphism::new(
            Permutation::new(vec![1, 2, 0]).unwrap(),
            MonotoneMap::new(3, vec![0, 2, 3]).unwrap(),
        )
        .unwrap();
        let composite = crossed_compose(&a, &b, fam.as_ref()).unwrap();
        let direct = a.realize().then(&b.realize()).unwrap();
        assert_eq!(composite.realize(), direct);
    }

    #[test]
    fn identities_are_neutral_for_composition() {
        let fam = lookup("cyclic").unwrap();
        let a = CrossedMorphism::new(
            Permutation::new(vec![1, 2, 0]).unwrap(),
            MonotoneMap::new(3, vec![0, 1, 3]).unwrap(),
        )
        .unwrap();
        let left = crossed_compose(&CrossedMorphism::identity(2), &a, fam.as_ref()).unwrap();
        let right = crossed_compose(&a, &CrossedMorphism::identity(3), fam.as_ref()).unwrap();
        assert_eq!(left, a);
        assert_eq!(right, a);
    }
}
