//! Truncated simplicial and semi-simplicial modules presented by explicit
//! structure matrices, together with the contravariant action of arbitrary
//! monotone maps, the associated chain complex, combinatorial homotopy, and
//! degreewise maps between modules.
//!
//! Matrices act on column vectors, so a composite `f` then `g` of arrows in
//! the simplex category acts as `action(f) * action(g)`.

use std::collections::BTreeMap;

use crate::chain::{ChainComplex, ChainMap};
use crate::delta::{enumerate_hom, MonotoneMap};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{subquotient_map, Matrix};
use crate::operator::Operator;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialModule {
    field: Field,
    dims: Vec<usize>,
    faces: Vec<Vec<Matrix>>,
    degeneracies: Option<Vec<Vec<Matrix>>>,
}

impl SimplicialModule {
    /// Builds a module from structure matrices. `faces[n-1][i]` is the face
    /// out of degree `n` with index `i`; `degeneracies[n][i]` goes from
    /// degree `n` up, and `None` leaves a semi-simplicial module. Shapes are
    /// checked here, the simplicial identities by [`validate`].
    ///
    /// [`validate`]: SimplicialModule::validate
    pub fn new(
        field: Field,
        dims: Vec<usize>,
        faces: Vec<Vec<Matrix>>,
        degeneracies: Option<Vec<Vec<Matrix>>>,
    ) -> Result<SimplicialModule> {
        if dims.is_empty() {
            return Err(Error::DimensionMismatch(
                "a module needs at least degree zero".into(),
            ));
        }
        let top = dims.len() - 1;
        if faces.len() != top {
            return Err(Error::DimensionMismatch(format!(
                "expected face families for degrees 1..={top}, got {}",
                faces.len()
            )));
        }
        for n in 1..=top {
            if faces[n - 1].len() != n + 1 {
                return Err(Error::DimensionMismatch(format!(
                    "degree {n} needs {} faces, got {}",
                    n + 1,
                    faces[n - 1].len()
                )));
            }
            for (i, m) in faces[n - 1].iter().enumerate() {
                check_matrix(field, m, dims[n - 1], dims[n], || {
                    format!("face {i} out of degree {n}")
                })?;
            }
        }
        if let Some(degs) = &degeneracies {
            if degs.len() != top {
                return Err(Error::DimensionMismatch(format!(
                    "expected degeneracy families for degrees 0..{top}, got {}",
                    degs.len()
                )));
            }
            for n in 0..top {
                if degs[n].len() != n + 1 {
                    return Err(Error::DimensionMismatch(format!(
                        "degree {n} needs {} degeneracies, got {}",
                        n + 1,
                        degs[n].len()
                    )));
                }
                for (i, m) in degs[n].iter().enumerate() {
                    check_matrix(field, m, dims[n + 1], dims[n], || {
                        format!("degeneracy {i} out of degree {n}")
                    })?;
                }
            }
        }
        Ok(SimplicialModule {
            field,
            dims,
            faces,
            degeneracies,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn is_full(&self) -> bool {
        self.degeneracies.is_some()
    }

    /// The face with index `i` out of degree `n`, for `1 <= n <= N`.
    pub fn face(&self, n: usize, i: usize) -> &Matrix {
        &self.faces[n - 1][i]
    }

    /// The degeneracy with index `i` out of degree `n`, for `n < N`.
    pub fn degeneracy(&self, n: usize, i: usize) -> Result<&Matrix> {
        match &self.degeneracies {
            Some(degs) => Ok(&degs[n][i]),
            None => Err(Error::DegeneracyRequired),
        }
    }

    /// The matrix of the contravariant action of `f : [a] -> [b]`, a map
    /// `X_b -> X_a`, assembled from the epi-mono factorization.
    pub fn action(&self, f: &MonotoneMap) -> Result<Matrix> {
        let top = self.max_degree();
        for end in [f.source(), f.target()] {
            if end > top {
                return Err(Error::DegreeOutOfRange {
                    degree: end,
                    max: top,
                });
            }
        }
        let (degens, faces) = f.epi_mono_factorize();
        let mid = f.source() - degens.len();
        let mut out = Matrix::identity(self.field, self.dims[f.source()]);
        for (k, &i) in degens.iter().enumerate() {
            out = out.mul(self.degeneracy(f.source() - 1 - k, i)?)?;
        }
        for (k, &i) in faces.iter().rev().enumerate() {
            out = out.mul(self.face(mid + 1 + k, i))?;
        }
        Ok(out)
    }

    /// The action extended linearly over a formal operator.
    pub fn apply_operator(&self, op: &Operator) -> Result<Matrix> {
        if op.field() != self.field {
            return Err(Error::FieldMismatch(
                self.field.descriptor(),
                op.field().descriptor(),
            ));
        }
        let mut out = Matrix::zeros(self.field, self.dims[op.source()], self.dims[op.target()]);
        for (f, c) in op.terms() {
            out = out.add(&self.action(f)?.scale(c))?;
        }
        Ok(out)
    }

    /// Checks that the action is functorial on every composable pair of
    /// elementary generators inside the truncation. This covers each
    /// simplicial identity exactly once.
    pub fn validate(&self) -> Result<()> {
        let gens = self.generator_maps();
        for f in &gens {
            for g in &gens {
                if f.target() != g.source() {
                    continue;
                }
                let h = f.compose(g)?;
                let left = self.action(&h)?;
                let right = self.action(f)?.mul(&self.action(g)?)?;
                if left != right {
                    return Err(Error::Structural(format!(
                        "action is not functorial on {f} then {g}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn generator_maps(&self) -> Vec<MonotoneMap> {
        let top = self.max_degree();
        let mut gens = Vec::new();
        for level in 0..top {
            for i in 0..=level + 1 {
                gens.push(MonotoneMap::coface(i, level));
            }
        }
        if self.is_full() {
            for level in 0..top {
                for i in 0..=level {
                    gens.push(MonotoneMap::codegeneracy(i, level));
                }
            }
        }
        gens
    }

    /// The associated complex with the full alternating sum of faces as
    /// differential.
    pub fn chain(&self) -> ChainComplex {
        let mut differentials = Vec::new();
        for n in 1..=self.max_degree() {
            let mut d = Matrix::zeros(self.field, self.dims[n - 1], self.dims[n]);
            for i in 0..=n {
                let signed = if i % 2 == 0 {
                    self.face(n, i).clone()
                } else {
                    self.face(n, i).neg()
                };
                d = d.add(&signed).expect("face shapes agree");
            }
            differentials.push(d);
        }
        ChainComplex::new(self.field, self.dims.clone(), differentials)
            .expect("chain shapes agree")
    }

    /// A basis of the simultaneous kernel of all faces out of degree `n`.
    pub fn z_cycles(&self, n: usize) -> Matrix {
        if n == 0 {
            return Matrix::identity(self.field, self.dims[0]);
        }
        let stack: Vec<&Matrix> = (0..=n).map(|i| self.face(n, i)).collect();
        Matrix::vstack(&stack)
            .expect("face shapes agree")
            .kernel_basis()
    }

    /// Columns spanning the subspace of degree `n` cycles that the homotopy
    /// relation collapses: the image of the last two faces' difference on
    /// simplices killed by all earlier faces.
    fn homotopy_boundaries(&self, n: usize) -> Result<Matrix> {
        let above = n + 1;
        let killed = if n == 0 {
            Matrix::identity(self.field, self.dims[1])
        } else {
            let stack: Vec<&Matrix> = (0..n).map(|i| self.face(above, i)).collect();
            Matrix::vstack(&stack)?.kernel_basis()
        };
        let difference = self.face(above, n).sub(self.face(above, n + 1))?;
        let image = difference.mul(&killed)?;
        if !self.z_cycles(n).contains_columns(&image)? {
            return Err(Error::Structural(format!(
                "homotopy boundaries in degree {n} are not cycles"
            )));
        }
        Ok(image)
    }

    /// Dimensions of the combinatorial homotopy groups in degrees strictly
    /// below the truncation. Requires degeneracies, since only then does
    /// the quotient of cycles by the homotopy relation compute homotopy.
    pub fn pi_dims(&self) -> Result<Vec<usize>> {
        if !self.is_full() {
            return Err(Error::DegeneracyRequired);
        }
        (0..self.max_degree())
            .map(|n| {
                let z = self.z_cycles(n);
                let b = self.homotopy_boundaries(n)?;
                Ok(z.cols() - b.rank())
            })
            .collect()
    }

    pub fn direct_sum(&self, other: &SimplicialModule) -> Result<SimplicialModule> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.descriptor(),
                other.field.descriptor(),
            ));
        }
        if self.max_degree() != other.max_degree() {
            return Err(Error::DimensionMismatch(
                "summands must share the truncation degree".into(),
            ));
        }
        if self.is_full() != other.is_full() {
            return Err(Error::Structural(
                "cannot sum a full module with a semi-simplicial one".into(),
            ));
        }
        let top = self.max_degree();
        let dims = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(a, b)| a + b)
            .collect();
        let faces = (1..=top)
            .map(|n| {
                (0..=n)
                    .map(|i| {
                        self.face(n, i)
                            .direct_sum(other.face(n, i))
                            .expect("fields already checked")
                    })
                    .collect()
            })
            .collect();
        let degeneracies = if self.is_full() {
            Some(
                (0..top)
                    .map(|n| {
                        (0..=n)
                            .map(|i| {
                                self.degeneracy(n, i)
                                    .expect("full module")
                                    .direct_sum(other.degeneracy(n, i).expect("full module"))
                                    .expect("fields already checked")
                            })
                            .collect()
                    })
                    .collect(),
            )
        } else {
            None
        };
        SimplicialModule::new(self.field, dims, faces, degeneracies)
    }
}

fn check_matrix(
    field: Field,
    m: &Matrix,
    rows: usize,
    cols: usize,
    what: impl Fn() -> String,
) -> Result<()> {
    if m.field() != field {
        return Err(Error::FieldMismatch(
            field.descriptor(),
            m.field().descriptor(),
        ));
    }
    if m.rows() != rows || m.cols() != cols {
        return Err(Error::DimensionMismatch(format!(
            "{} should be {}x{}, got {}x{}",
            what(),
            rows,
            cols,
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Builds a module whose degree `m` basis is a set of monotone maps into a
/// fixed object, with structure maps given by precomposition. The bases
/// must be closed under precomposition with every generator.
fn module_from_map_bases(field: Field, bases: Vec<Vec<MonotoneMap>>) -> SimplicialModule {
    let top = bases.len() - 1;
    let positions: Vec<BTreeMap<&MonotoneMap, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, h)| (h, i)).collect())
        .collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let structure = |gen: MonotoneMap, from: usize, to: usize| -> Matrix {
        let mut m = Matrix::zeros(field, dims[to], dims[from]);
        for (col, h) in bases[from].iter().enumerate() {
            let image = gen.compose(h).expect("generator endpoints line up");
            let row = *positions[to]
                .get(&image)
                .expect("basis closed under precomposition");
            m.set(row, col, field.one());
        }
        m
    };
    let faces = (1..=top)
        .map(|n| {
            (0..=n)
                .map(|i| structure(MonotoneMap::coface(i, n - 1), n, n - 1))
                .collect()
        })
        .collect();
    let degeneracies = (0..top)
        .map(|n| {
            (0..=n)
                .map(|i| structure(MonotoneMap::codegeneracy(i, n), n, n + 1))
                .collect()
        })
        .collect();
    SimplicialModule::new(field, dims, faces, Some(degeneracies))
        .expect("free construction is well formed")
}

/// The module freely spanned in degree `m` by all monotone maps
/// `[m] -> [n]`, truncated at `max_degree`.
pub fn free_standard(field: Field, n: usize, max_degree: usize) -> SimplicialModule {
    let bases = (0..=max_degree).map(|m| enumerate_hom(m, n)).collect();
    module_from_map_bases(field, bases)
}

/// The submodule of [`free_standard`] spanned by the non-surjective maps.
pub fn boundary_module(field: Field, n: usize, max_degree: usize) -> SimplicialModule {
    let bases = (0..=max_degree)
        .map(|m| {
            enumerate_hom(m, n)
                .into_iter()
                .filter(|h| !h.is_surjective())
                .collect()
        })
        .collect();
    module_from_map_bases(field, bases)
}

/// The constant module with one generator in every degree.
pub fn constant_module(field: Field, max_degree: usize) -> SimplicialModule {
    free_standard(field, 0, max_degree)
}

/// The semi-simplicial module with one generator in degree zero only.
pub fn point_module(field: Field, max_degree: usize) -> SimplicialModule {
    let mut dims = vec![0; max_degree + 1];
    dims[0] = 1;
    let faces = (1..=max_degree)
        .map(|n| {
            (0..=n)
                .map(|_| Matrix::zeros(field, dims[n - 1], dims[n]))
                .collect()
        })
        .collect();
    SimplicialModule::new(field, dims, faces, None).expect("point module is well formed")
}

/// A degreewise linear map of simplicial modules. Face compatibility is
/// always required; degeneracy compatibility only when both sides have
/// degeneracies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    source: SimplicialModule,
    target: SimplicialModule,
    components: Vec<Matrix>,
}

impl SimplicialMap {
    pub fn new(
        source: SimplicialModule,
        target: SimplicialModule,
        components: Vec<Matrix>,
    ) -> Result<SimplicialMap> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(
                source.field().descriptor(),
                target.field().descriptor(),
            ));
        }
        if source.max_degree() != target.max_degree() {
            return Err(Error::DimensionMismatch(
                "source and target must share the truncation degree".into(),
            ));
        }
        if components.len() != source.dims().len() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} components, got {}",
                source.dims().len(),
                components.len()
            )));
        }
        for (n, f) in components.iter().enumerate() {
            check_matrix(source.field(), f, target.dim(n), source.dim(n), || {
                format!("component {n}")
            })?;
        }
        Ok(SimplicialMap {
            source,
            target,
            components,
        })
    }

    pub fn identity(module: &SimplicialModule) -> SimplicialMap {
        let components = module
            .dims()
            .iter()
            .map(|&d| Matrix::identity(module.field(), d))
            .collect();
        SimplicialMap::new(module.clone(), module.clone(), components)
            .expect("identity components match")
    }

    pub fn zero(source: &SimplicialModule, target: &SimplicialModule) -> Result<SimplicialMap> {
        let components = (0..source.dims().len())
            .map(|n| Matrix::zeros(source.field(), target.dim(n), source.dim(n)))
            .collect();
        SimplicialMap::new(source.clone(), target.clone(), components)
    }

    pub fn source(&self) -> &SimplicialModule {
        &self.source
    }

    pub fn target(&self) -> &SimplicialModule {
        &self.target
    }

    pub fn component(&self, n: usize) -> &Matrix {
        &self.components[n]
    }

    pub fn validate(&self) -> Result<()> {
        let top = self.source.max_degree();
        for n in 1..=top {
            for i in 0..=n {
                let left = self.components[n - 1].mul(self.source.face(n, i))?;
                let right = self.target.face(n, i).mul(&self.components[n])?;
                if left != right {
                    return Err(Error::Structural(format!(
                        "face {i} at degree {n} does not commute with the map"
                    )));
                }
            }
        }
        if self.source.is_full() && self.target.is_full() {
            for n in 0..top {
                for i in 0..=n {
                    let left = self.components[n + 1].mul(self.source.degeneracy(n, i)?)?;
                    let right = self.target.degeneracy(n, i)?.mul(&self.components[n])?;
                    if left != right {
                        return Err(Error::Structural(format!(
                            "degeneracy {i} at degree {n} does not commute with the map"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The same components viewed as a map of the associated chain
    /// complexes.
    pub fn to_chain_map(&self) -> ChainMap {
        ChainMap::new(
            self.source.chain(),
            self.target.chain(),
            self.components.clone(),
        )
        .expect("components carry over")
    }

    /// The induced map on degree `n` homotopy, in the canonical quotient
    /// bases. Both sides need degeneracies.
    pub fn induced_on_pi(&self, n: usize) -> Result<Matrix> {
        if !self.source.is_full() || !self.target.is_full() {
            return Err(Error::DegeneracyRequired);
        }
        subquotient_map(
            &self.components[n],
            &self.source.z_cycles(n),
            &self.source.homotopy_boundaries(n)?,
            &self.target.z_cycles(n),
            &self.target.homotopy_boundaries(n)?,
        )
    }

    /// True when the induced maps on homotopy below the truncation are all
    /// isomorphisms.
    pub fn is_pi_equivalence(&self) -> Result<bool> {
        for n in 0..self.source.max_degree() {
            let induced = self.induced_on_pi(n)?;
            if induced.rows() != induced.cols() || induced.rank() != induced.rows() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when the induced maps on chain homology below the truncation
    /// are all isomorphisms. Over a field this is the same as having a
    /// homotopy inverse after passing to chains.
    pub fn is_chain_equivalence(&self) -> Result<bool> {
        self.to_chain_map().is_quasi_isomorphism()
    }
}
