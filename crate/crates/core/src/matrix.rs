//! Dense exact matrices with the elimination routines everything else is
//! built on: rank, kernel, image, solving, and induced maps on subquotients.
//!
//! Matrices act on column vectors. All algorithms are plain Gaussian
//! elimination with the first nonzero entry as pivot, which keeps results
//! deterministic and exact over any of the supported fields.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    /// Row-major entries, length `rows * cols`.
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows, validating shape and field uniformity.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in &rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "ragged rows: {} vs {}",
                    row.len(),
                    ncols
                )));
            }
            for entry in row {
                if entry.field() != field {
                    return Err(Error::FieldMismatch(
                        field.descriptor(),
                        entry.field().descriptor(),
                    ));
                }
                data.push(entry.clone());
            }
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    /// Builds a matrix of integer entries, mapped into the field.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Matrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Matrix::zeros(field, nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged integer rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, field.integer(v));
            }
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "entry field mismatch");
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// The matrix whose columns are the given columns of `self`, in order.
    pub fn select_columns(&self, indices: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, indices.len(), |i, k| {
            self.get(i, indices[k]).clone()
        })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.descriptor(),
                other.field.descriptor(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "add {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            self.get(i, j).clone() + other.get(i, j).clone()
        }))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "subtract {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            self.get(i, j).clone() - other.get(i, j).clone()
        }))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            self.get(i, j).clone() * c.clone()
        })
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            -self.get(i, j).clone()
        })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).clone() + a.clone() * b.clone();
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "apply {}x{} to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![self.field.zero(); self.rows];
        for (i, slot) in out.iter_mut().enumerate() {
            for (j, b) in v.iter().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() && !b.is_zero() {
                    *slot = slot.clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn hstack(blocks: &[&Matrix]) -> Result<Matrix> {
        let first = blocks.first().expect("hstack of no blocks");
        let rows = first.rows;
        let field = first.field;
        let mut cols = 0;
        for b in blocks {
            first.check_field(b)?;
            if b.rows != rows {
                return Err(Error::DimensionMismatch(format!(
                    "hstack rows {} vs {}",
                    rows, b.rows
                )));
            }
            cols += b.cols;
        }
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    out.set(i, offset + j, b.get(i, j).clone());
                }
            }
            offset += b.cols;
        }
        Ok(out)
    }

    pub fn vstack(blocks: &[&Matrix]) -> Result<Matrix> {
        let first = blocks.first().expect("vstack of no blocks");
        let cols = first.cols;
        let field = first.field;
        let mut rows = 0;
        for b in blocks {
            first.check_field(b)?;
            if b.cols != cols {
                return Err(Error::DimensionMismatch(format!(
                    "vstack cols {} vs {}",
                    cols, b.cols
                )));
            }
            rows += b.rows;
        }
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..cols {
                    out.set(offset + i, j, b.get(i, j).clone());
                }
            }
            offset += b.rows;
        }
        Ok(out)
    }

    /// Block-diagonal sum of two matrices.
    pub fn direct_sum(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        let mut out = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let pivot_row = (row..m.rows).find(|&r| !m.get(r, col).is_zero());
            let Some(p) = pivot_row else { continue };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, row * m.cols + j);
                }
            }
            let inv = m.get(row, col).inverse().expect("nonzero pivot");
            for j in col..m.cols {
                let v = m.get(row, j).clone() * inv.clone();
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    let v = m.get(r, j).clone() - factor.clone() * m.get(row, j).clone();
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the null space, one column per free variable.
    ///
    /// The construction sets the free variable to 1 and reads the pivot
    /// coordinates off the reduced form, so the zero matrix (and the empty
    /// matrix with no rows) yields exactly the identity.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.field, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, self.field.one());
            for (prow, &pcol) in pivots.iter().enumerate() {
                let v = -r.get(prow, fc).clone();
                out.set(pcol, k, v);
            }
        }
        out
    }

    /// A basis of the column space: the original columns at pivot positions.
    pub fn image_basis(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Solves `self * X = rhs` columnwise. Returns `Ok(None)` when some
    /// column is inconsistent; free variables are set to zero.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        self.check_field(rhs)?;
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve {}x{} against rhs with {} rows",
                self.rows, self.cols, rhs.rows
            )));
        }
        let aug = Matrix::hstack(&[self, rhs])?;
        let (r, pivots) = aug.rref();
        // A pivot in the appended block means the system is inconsistent.
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut out = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (prow, &pcol) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                out.set(pcol, j, r.get(prow, self.cols + j).clone());
            }
        }
        Ok(Some(out))
    }

    pub fn solve_vector(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        let rhs = Matrix::from_rows(self.field, b.iter().map(|x| vec![x.clone()]).collect())?;
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve {}x{} against vector of length {}",
                self.rows,
                self.cols,
                b.len()
            )));
        }
        Ok(self.solve(&rhs)?.map(|m| m.column(0)))
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn invert(&self) -> Result<Option<Matrix>> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "invert non-square {}x{}",
                self.rows, self.cols
            )));
        }
        let id = Matrix::identity(self.field, self.rows);
        match self.solve(&id)? {
            Some(inv) if self.mul(&inv)? == id => Ok(Some(inv)),
            _ => Ok(None),
        }
    }

    /// True when every column of `other` lies in the column span of `self`.
    pub fn contains_columns(&self, other: &Matrix) -> Result<bool> {
        self.check_field(other)?;
        if other.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "span test {}x{} against {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.solve(other)?.is_some())
    }
}

/// Columns of `z` extending a basis of `span(b)` to a basis of `span(z)`,
/// chosen greedily left to right by rank growth.
///
/// Errors when `span(b)` is not contained in `span(z)`.
pub fn quotient_complement(z: &Matrix, b: &Matrix) -> Result<Matrix> {
    if b.cols() > 0 && !z.contains_columns(b)? {
        return Err(Error::Structural(
            "subspace is not contained in the ambient span".to_string(),
        ));
    }
    let mut current = b.image_basis();
    let mut chosen = Vec::new();
    for j in 0..z.cols() {
        let col = z.select_columns(&[j]);
        let candidate = Matrix::hstack(&[&current, &col])?;
        if candidate.rank() > current.rank() {
            chosen.push(j);
            current = candidate;
        }
    }
    Ok(z.select_columns(&chosen))
}

/// The matrix of the induced map `span(z_src)/span(b_src) ->
/// span(z_tgt)/span(b_tgt)` in the bases picked by [`quotient_complement`].
pub fn subquotient_map(
    f: &Matrix,
    z_src: &Matrix,
    b_src: &Matrix,
    z_tgt: &Matrix,
    b_tgt: &Matrix,
) -> Result<Matrix> {
    let c_src = quotient_complement(z_src, b_src)?;
    let c_tgt = quotient_complement(z_tgt, b_tgt)?;
    let b_tgt_basis = b_tgt.image_basis();
    let target_frame = Matrix::hstack(&[&c_tgt, &b_tgt_basis])?;
    let mapped = f.mul(&c_src)?;
    let coords = target_frame.solve(&mapped)?.ok_or_else(|| {
        Error::Structural("map does not respect the given subquotients".to_string())
    })?;
    // Discard the boundary coordinates; the quotient only sees the rest.
    let mut out = Matrix::zeros(f.field(), c_tgt.cols(), c_src.cols());
    for i in 0..c_tgt.cols() {
        for j in 0..c_src.cols() {
            out.set(i, j, coords.get(i, j).clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(q(), 2).rank(), 2);
        assert_eq!(Matrix::zeros(q(), 3, 3).rank(), 0);
        let m = Matrix::from_ints(q(), &[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(q(), 3).kernel_basis().cols(), 0);
        let z = Matrix::zeros(q(), 2, 3);
        assert_eq!(z.kernel_basis(), Matrix::identity(q(), 3));
        let m = Matrix::from_ints(q(), &[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).unwrap().is_zero());
        // Canonical form: free coordinate 1, pivot coordinate -1.
        assert_eq!(k, Matrix::from_ints(q(), &[&[-1], &[1]]));
    }

    #[test]
    fn image_examples() {
        assert_eq!(Matrix::identity(q(), 2).image_basis(), Matrix::identity(q(), 2));
        assert_eq!(Matrix::zeros(q(), 2, 2).image_basis().cols(), 0);
        let m = Matrix::from_ints(q(), &[&[1, 2], &[2, 4]]);
        let im = m.image_basis();
        assert_eq!(im.cols(), 1);
        assert_eq!(im, Matrix::from_ints(q(), &[&[1], &[2]]));
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(q(), 2);
        let b = vec![q().integer(5), q().integer(-3)];
        assert_eq!(id.solve_vector(&b).unwrap().unwrap(), b);

        let z = Matrix::zeros(q(), 2, 2);
        assert!(z.solve_vector(&b).unwrap().is_none());

        let m = Matrix::from_ints(q(), &[&[2]]);
        let x = m.solve_vector(&[q().integer(3)]).unwrap().unwrap();
        assert_eq!(x, vec![q().parse_scalar("3/2").unwrap()]);

        assert!(m.solve_vector(&[q().zero(), q().zero()]).is_err());
    }

    #[test]
    fn rank_nullity_on_prime_field() {
        let f5 = Field::prime(5).unwrap();
        let m = Matrix::from_ints(f5, &[&[1, 2, 3], &[4, 0, 1]]);
        assert_eq!(m.rank() + m.kernel_basis().cols(), m.cols());
        assert!(m.mul(&m.kernel_basis()).unwrap().is_zero());
    }

    #[test]
    fn invert_round_trips() {
        let m = Matrix::from_ints(q(), &[&[1, 2], &[3, 5]]);
        let inv = m.invert().unwrap().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(q(), 2));
        let singular = Matrix::from_ints(q(), &[&[1, 2], &[2, 4]]);
        assert!(singular.invert().unwrap().is_none());
    }

    #[test]
    fn subquotient_identity_and_zero() {
        let id = Matrix::identity(q(), 3);
        let z = Matrix::from_ints(q(), &[&[1, 0], &[0, 1], &[0, 0]]);
        let b = Matrix::from_ints(q(), &[&[1], &[0], &[0]]);
        let induced = subquotient_map(&id, &z, &b, &z, &b).unwrap();
        assert_eq!(induced, Matrix::identity(q(), 1));

        // Boundaries spanning the cycles leave a zero quotient.
        let full = subquotient_map(&id, &z, &z, &z, &z).unwrap();
        assert_eq!(full.rows(), 0);
        assert_eq!(full.cols(), 0);

        let zero_map = Matrix::zeros(q(), 3, 3);
        let induced = subquotient_map(&zero_map, &z, &b, &z, &b).unwrap();
        assert!(induced.is_zero());
        assert_eq!(induced.rows(), 1);
    }

    #[test]
    fn subquotient_rejects_bad_subspaces() {
        let id = Matrix::identity(q(), 2);
        let z = Matrix::from_ints(q(), &[&[1], &[0]]);
        let b = Matrix::from_ints(q(), &[&[0], &[1]]);
        assert!(subquotient_map(&id, &z, &b, &z, &b).is_err());
    }
}
