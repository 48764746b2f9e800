//! The resolution of the point object by free modules over the algebra of
//! partial alternating sums: one column of generators per word, connected
//! by right multiplication with the lowest generator.

use std::collections::BTreeMap;

use crate::chain::ChainComplex;
use crate::error::Result;
use crate::field::Field;
use crate::matrix::Matrix;
use crate::operator::{enumerate_d_words, DWord};

/// The generating words in resolution degree `r` at a fixed internal
/// degree: all normal `d`-words `[r] -> [m]`. Above the internal degree
/// there are none.
pub fn resolution_basis(resolution_degree: usize, internal_degree: usize) -> Vec<DWord> {
    if resolution_degree > internal_degree {
        Vec::new()
    } else {
        enumerate_d_words(resolution_degree, internal_degree - resolution_degree)
    }
}

/// The complex in a fixed internal degree. The differential takes a word
/// to the word extended below by `d_{0,r-1}`; when the word already ends
/// in a zero index, the relation `d_{0,r} d_{0,r-1} = 0` kills the
/// product. Squaring the differential extends by two zero indices in a
/// row, so it vanishes identically.
pub fn point_resolution(field: Field, internal_degree: usize, length: usize) -> Result<ChainComplex> {
    let bases: Vec<Vec<DWord>> = (0..=length)
        .map(|r| resolution_basis(r, internal_degree))
        .collect();
    let positions: Vec<BTreeMap<&DWord, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, w)| (w, i)).collect())
        .collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let mut differentials = Vec::new();
    for r in 1..=length {
        let mut d = Matrix::zeros(field, dims[r - 1], dims[r]);
        for (col, w) in bases[r].iter().enumerate() {
            if w.bottom_index() == Some(0) {
                continue;
            }
            let mut indices = w.indices().to_vec();
            indices.push(0);
            let extended = DWord::new(r - 1, indices)?;
            let row = positions[r - 1][&extended];
            d.set(row, col, field.one());
        }
        differentials.push(d);
    }
    ChainComplex::new(field, dims, differentials)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn basis_sizes_at_internal_degree_three() {
        assert_eq!(resolution_basis(0, 3).len(), 1);
        assert_eq!(resolution_basis(1, 3).len(), 3);
        assert_eq!(resolution_basis(2, 3).len(), 3);
        assert_eq!(resolution_basis(3, 3).len(), 1);
        assert!(resolution_basis(4, 3).is_empty());
    }

    #[test]
    fn lowest_degree_is_always_one_dimensional() {
        for m in 0..=6 {
            assert_eq!(resolution_basis(0, m).len(), 1);
        }
    }

    #[test]
    fn squares_vanish_and_positive_homology_dies() {
        for m in 0..=5 {
            let c = point_resolution(q(), m, 4).unwrap();
            c.validate().unwrap();
            let betti = c.betti();
            for (r, b) in betti.iter().enumerate().take(4).skip(1) {
                assert_eq!(*b, 0, "internal degree {m}, resolution degree {r}");
            }
        }
    }
}
