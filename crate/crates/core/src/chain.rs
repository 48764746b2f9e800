//! Bounded chain complexes with exact coefficients, their homology, and
//! chain maps with induced maps on homology.
//!
//! A complex is stored through a truncation degree `N`: `dims[n]` for
//! `0 <= n <= N` and `differentials[n-1]` for the map out of degree `n`.
//! Degree `N` homology only sees the boundaries that exist inside the
//! truncation, so callers treat the top degree as informational.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{subquotient_map, Matrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    field: Field,
    dims: Vec<usize>,
    differentials: Vec<Matrix>,
}

impl ChainComplex {
    /// Builds a complex from its dimensions and differentials, checking
    /// shapes and fields but not `d * d = 0`; call [`validate`] for that.
    ///
    /// [`validate`]: ChainComplex::validate
    pub fn new(field: Field, dims: Vec<usize>, differentials: Vec<Matrix>) -> Result<ChainComplex> {
        if dims.is_empty() {
            return Err(Error::DimensionMismatch(
                "a complex needs at least degree zero".into(),
            ));
        }
        if differentials.len() + 1 != dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} degrees need {} differentials, got {}",
                dims.len(),
                dims.len() - 1,
                differentials.len()
            )));
        }
        for (n, d) in differentials.iter().enumerate() {
            if d.field() != field {
                return Err(Error::FieldMismatch(
                    field.descriptor(),
                    d.field().descriptor(),
                ));
            }
            if d.rows() != dims[n] || d.cols() != dims[n + 1] {
                return Err(Error::DimensionMismatch(format!(
                    "differential out of degree {} should be {}x{}, got {}x{}",
                    n + 1,
                    dims[n],
                    dims[n + 1],
                    d.rows(),
                    d.cols()
                )));
            }
        }
        Ok(ChainComplex {
            field,
            dims,
            differentials,
        })
    }

    /// The complex with a single one dimensional module in degree zero.
    pub fn point(field: Field, max_degree: usize) -> ChainComplex {
        let mut dims = vec![0; max_degree + 1];
        dims[0] = 1;
        let mut differentials = Vec::new();
        for n in 1..=max_degree {
            differentials.push(Matrix::zeros(field, dims[n - 1], dims[n]));
        }
        ChainComplex::new(field, dims, differentials).expect("point complex is well formed")
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

    /// The differential out of degree `n`, for `1 <= n <= N`.
    pub fn differential(&self, n: usize) -> Option<&Matrix> {
        if n == 0 || n > self.max_degree() {
            None
        } else {
            Some(&self.differentials[n - 1])
        }
    }

    pub fn validate(&self) -> Result<()> {
        for n in 1..self.max_degree() {
            let square = self.differentials[n - 1].mul(&self.differentials[n])?;
            if !square.is_zero() {
                return Err(Error::Structural(format!(
                    "differentials out of degrees {} and {} do not compose to zero",
                    n + 1,
                    n
                )));
            }
        }
        Ok(())
    }

    /// A basis of the cycles in degree `n`, as matrix columns.
    pub fn cycles(&self, n: usize) -> Matrix {
        match self.differential(n) {
            Some(d) => d.kernel_basis(),
            None => Matrix::identity(self.field, self.dims[n]),
        }
    }

    /// A basis of the boundaries in degree `n`. At the top degree nothing
    /// bounds inside the truncation.
    pub fn boundaries(&self, n: usize) -> Matrix {
        match self.differential(n + 1) {
            Some(d) => d.image_basis(),
            None => Matrix::zeros(self.field, self.dims[n], 0),
        }
    }

    /// Homology dimensions in degrees `0..=N`. The degree `N` entry counts
    /// cycles only, since higher boundaries are cut off.
    pub fn betti(&self) -> Vec<usize> {
        (0..=self.max_degree())
            .map(|n| self.cycles(n).cols() - self.boundaries(n).rank())
            .collect()
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
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
        let dims = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(a, b)| a + b)
            .collect();
        let differentials = self
            .differentials
            .iter()
            .zip(&other.differentials)
            .map(|(a, b)| a.direct_sum(b).expect("fields already checked"))
            .collect();
        ChainComplex::new(self.field, dims, differentials)
    }
}

/// A degreewise linear map between complexes of the same truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    components: Vec<Matrix>,
}

impl ChainMap {
    /// Builds a map from its components, checking shapes but not the
    /// commuting squares; call [`validate`] for that.
    ///
    /// [`validate`]: ChainMap::validate
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        components: Vec<Matrix>,
    ) -> Result<ChainMap> {
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
            if f.field() != source.field() {
                return Err(Error::FieldMismatch(
                    source.field().descriptor(),
                    f.field().descriptor(),
                ));
            }
            if f.rows() != target.dim(n) || f.cols() != source.dim(n) {
                return Err(Error::DimensionMismatch(format!(
                    "component {} should be {}x{}, got {}x{}",
                    n,
                    target.dim(n),
                    source.dim(n),
                    f.rows(),
                    f.cols()
                )));
            }
        }
        Ok(ChainMap {
            source,
            target,
            components,
        })
    }

    pub fn identity(complex: &ChainComplex) -> ChainMap {
        let components = complex
            .dims()
            .iter()
            .map(|&d| Matrix::identity(complex.field(), d))
            .collect();
        ChainMap::new(complex.clone(), complex.clone(), components)
            .expect("identity components match")
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Result<ChainMap> {
        let components = (0..source.dims().len())
            .map(|n| Matrix::zeros(source.field(), target.dim(n), source.dim(n)))
            .collect();
        ChainMap::new(source.clone(), target.clone(), components)
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn component(&self, n: usize) -> &Matrix {
        &self.components[n]
    }

    pub fn validate(&self) -> Result<()> {
        for n in 1..=self.source.max_degree() {
            let d_src = self.source.differential(n).expect("degree in range");
            let d_tgt = self.target.differential(n).expect("degree in range");
            let left = d_tgt.mul(&self.components[n])?;
            let right = self.components[n - 1].mul(d_src)?;
            if left != right {
                return Err(Error::Structural(format!(
                    "component square at degree {n} does not commute"
                )));
            }
        }
        Ok(())
    }

    /// The induced map on degree `n` homology, written in the canonical
    /// complement bases picked by [`crate::matrix::quotient_complement`].
    pub fn induced_on_homology(&self, n: usize) -> Result<Matrix> {
        subquotient_map(
            &self.components[n],
            &self.source.cycles(n),
            &self.source.boundaries(n),
            &self.target.cycles(n),
            &self.target.boundaries(n),
        )
    }

    /// True when every induced map on homology strictly below the
    /// truncation degree is an isomorphism. Over a field this coincides
    /// with the existence of a homotopy inverse, so the same predicate
    /// answers both questions.
    pub fn is_quasi_isomorphism(&self) -> Result<bool> {
        for n in 0..self.source.max_degree() {
            let induced = self.induced_on_homology(n)?;
            if induced.rows() != induced.cols() || induced.rank() != induced.rows() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn interval() -> ChainComplex {
        // The normalized chains of the 1-simplex: k^2 <- k.
        let d = Matrix::from_ints(q(), &[&[-1], &[1]]);
        ChainComplex::new(q(), vec![2, 1, 0], vec![d, Matrix::zeros(q(), 1, 0)]).unwrap()
    }

    #[test]
    fn point_complex_has_unit_homology() {
        let p = ChainComplex::point(q(), 3);
        p.validate().unwrap();
        assert_eq!(p.betti(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn interval_collapses_to_a_point() {
        let c = interval();
        c.validate().unwrap();
        assert_eq!(c.betti(), vec![1, 0, 0]);
    }

    #[test]
    fn validation_rejects_nonzero_squares() {
        let d2 = Matrix::from_ints(q(), &[&[1]]);
        let d1 = Matrix::from_ints(q(), &[&[1]]);
        let c = ChainComplex::new(q(), vec![1, 1, 1], vec![d1, d2]).unwrap();
        assert!(c.validate().is_err());
    }

    #[test]
    fn identity_induces_identity_on_homology() {
        let c = interval();
        let id = ChainMap::identity(&c);
        id.validate().unwrap();
        assert_eq!(id.induced_on_homology(0).unwrap(), Matrix::identity(q(), 1));
        assert!(id.is_quasi_isomorphism().unwrap());
    }

    #[test]
    fn point_inclusion_into_interval_is_a_quasi_isomorphism() {
        let p = ChainComplex::point(q(), 2);
        let c = interval();
        let components = vec![
            Matrix::from_ints(q(), &[&[1], &[0]]),
            Matrix::zeros(q(), 1, 0),
            Matrix::zeros(q(), 0, 0),
        ];
        let f = ChainMap::new(p, c, components).unwrap();
        f.validate().unwrap();
        assert!(f.is_quasi_isomorphism().unwrap());
    }

    #[test]
    fn zero_map_fails_on_nontrivial_homology() {
        let p = ChainComplex::point(q(), 2);
        let f = ChainMap::zero(&p, &p).unwrap();
        f.validate().unwrap();
        assert!(!f.is_quasi_isomorphism().unwrap());
    }

    #[test]
    fn direct_sum_adds_homology() {
        let a = interval();
        let b = ChainComplex::point(q(), 2);
        let s = a.direct_sum(&b).unwrap();
        s.validate().unwrap();
        assert_eq!(s.betti(), vec![2, 0, 0]);
    }
}
