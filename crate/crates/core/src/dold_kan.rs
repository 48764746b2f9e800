//! The normalized chains functor, its inverse built from sums over
//! surjections, and the comparison maps between a module and the round
//! trip through chain complexes.

use std::collections::BTreeMap;

use crate::chain::{ChainComplex, ChainMap};
use crate::delta::MonotoneMap;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::operator::{enumerate_sigma_words, SigmaWord};
use crate::simplicial::{SimplicialMap, SimplicialModule};

/// Kernel bases of all faces with positive index, one matrix of columns
/// per degree. Degree zero has no such faces, so its basis is the
/// identity.
fn moore_bases(x: &SimplicialModule) -> Vec<Matrix> {
    (0..=x.max_degree())
        .map(|n| {
            if n == 0 {
                Matrix::identity(x.field(), x.dim(0))
            } else {
                let stack: Vec<&Matrix> = (1..=n).map(|i| x.face(n, i)).collect();
                Matrix::vstack(&stack)
                    .expect("face shapes agree")
                    .kernel_basis()
            }
        })
        .collect()
}

fn moore_with_bases(x: &SimplicialModule) -> Result<(ChainComplex, Vec<Matrix>)> {
    let bases = moore_bases(x);
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let mut differentials = Vec::new();
    for n in 1..=x.max_degree() {
        let restricted = x.face(n, 0).mul(&bases[n])?;
        let solved = bases[n - 1].solve(&restricted)?.ok_or_else(|| {
            Error::Structural(format!(
                "zeroth face does not preserve the normalized part in degree {n}"
            ))
        })?;
        differentials.push(solved);
    }
    Ok((ChainComplex::new(x.field(), dims, differentials)?, bases))
}

/// The normalized chain complex: intersection of the kernels of all faces
/// with positive index, with the zeroth face as differential.
pub fn moore(x: &SimplicialModule) -> Result<ChainComplex> {
    Ok(moore_with_bases(x)?.0)
}

/// The inclusion of the normalized complex into the full alternating-sum
/// complex. On the normalized part all positive faces vanish, so the two
/// differentials agree and the kernel bases form a chain map.
pub fn moore_inclusion(x: &SimplicialModule) -> Result<ChainMap> {
    let (normalized, bases) = moore_with_bases(x)?;
    ChainMap::new(normalized, x.chain(), bases)
}

/// Degree `n` of the inverse construction: one summand of `C_k` for every
/// order preserving surjection `[n] -> [k]`.
struct GammaBasis {
    summands: Vec<(MonotoneMap, usize)>,
    offsets: Vec<usize>,
    position: BTreeMap<MonotoneMap, usize>,
    total: usize,
}

fn gamma_basis(c: &ChainComplex, n: usize) -> GammaBasis {
    let mut summands = Vec::new();
    for k in 0..=n {
        for w in enumerate_sigma_words(n, n - k) {
            summands.push((w.to_monotone(), k));
        }
    }
    let mut offsets = Vec::with_capacity(summands.len());
    let mut position = BTreeMap::new();
    let mut total = 0;
    for (s, (eta, k)) in summands.iter().enumerate() {
        offsets.push(total);
        position.insert(eta.clone(), s);
        total += c.dim(*k);
    }
    GammaBasis {
        summands,
        offsets,
        position,
        total,
    }
}

fn insert_block(m: &mut Matrix, row: usize, col: usize, block: &Matrix) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let v = block.get(i, j);
            if !v.is_zero() {
                m.set(row + i, col + j, v.clone());
            }
        }
    }
}

/// The action of `alpha : [m] -> [n]` on the inverse construction. Each
/// summand `eta` routes through the epi-mono factorization of `alpha` then
/// `eta`: an identity block when the injective part is an identity, the
/// differential when the injective part misses exactly the value zero, and
/// zero otherwise.
fn gamma_action(
    c: &ChainComplex,
    from: &GammaBasis,
    to: &GammaBasis,
    alpha: &MonotoneMap,
) -> Matrix {
    let mut out = Matrix::zeros(c.field(), to.total, from.total);
    for (s, (eta, k)) in from.summands.iter().enumerate() {
        let g = alpha.compose(eta).expect("generator endpoints line up");
        let (degens, faces) = g.epi_mono_factorize();
        let pi = SigmaWord::new(g.source(), degens)
            .expect("factorization degeneracies are a valid word")
            .to_monotone();
        let dest = *to.position.get(&pi).expect("epi part is enumerated");
        let block = if faces.is_empty() {
            Matrix::identity(c.field(), c.dim(*k))
        } else if faces == [0] {
            c.differential(*k)
                .expect("a mono missing zero forces positive degree")
                .clone()
        } else {
            continue;
        };
        insert_block(&mut out, to.offsets[dest], from.offsets[s], &block);
    }
    out
}

/// The full simplicial module assembled from a complex, with one summand
/// of `C_k` for every surjection out of each degree. Normalizing it gives
/// back the complex on the nose, because the normalized part is exactly
/// the summand over the identity surjection.
pub fn inflate(c: &ChainComplex) -> Result<SimplicialModule> {
    let top = c.max_degree();
    let bases: Vec<GammaBasis> = (0..=top).map(|n| gamma_basis(c, n)).collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.total).collect();
    let faces = (1..=top)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    gamma_action(
                        c,
                        &bases[n],
                        &bases[n - 1],
                        &MonotoneMap::coface(i, n - 1),
                    )
                })
                .collect()
        })
        .collect();
    let degeneracies = (0..top)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    gamma_action(c, &bases[n], &bases[n + 1], &MonotoneMap::codegeneracy(i, n))
                })
                .collect()
        })
        .collect();
    SimplicialModule::new(c.field(), dims, faces, Some(degeneracies))
}

/// The comparison map from the round trip back to the module itself: on
/// the summand labelled `eta` it acts on normalized chains by `eta` and
/// includes the result. A full module is required since surjections act
/// through degeneracies.
pub fn counit(x: &SimplicialModule) -> Result<SimplicialMap> {
    let (normalized, kernels) = moore_with_bases(x)?;
    let inflated = inflate(&normalized)?;
    let mut components = Vec::new();
    for n in 0..=x.max_degree() {
        let basis = gamma_basis(&normalized, n);
        let mut component = Matrix::zeros(x.field(), x.dim(n), basis.total);
        for (s, (eta, k)) in basis.summands.iter().enumerate() {
            let block = x.action(eta)?.mul(&kernels[*k])?;
            insert_block(&mut component, 0, basis.offsets[s], &block);
        }
        components.push(component);
    }
    SimplicialMap::new(inflated, x.clone(), components)
}

/// A complex viewed as a semi-simplicial module: the zeroth face is the
/// differential and every other face is zero.
pub fn chain_to_semisimplicial(c: &ChainComplex) -> SimplicialModule {
    let top = c.max_degree();
    let faces = (1..=top)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    if i == 0 {
                        c.differential(n).expect("degree in range").clone()
                    } else {
                        Matrix::zeros(c.field(), c.dim(n - 1), c.dim(n))
                    }
                })
                .collect()
        })
        .collect();
    SimplicialModule::new(c.field(), c.dims().to_vec(), faces, None)
        .expect("chain shapes carry over")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::simplicial::{boundary_module, constant_module, free_standard};

    fn q() -> Field {
        Field::Rational
    }

    fn small_complex() -> ChainComplex {
        let d1 = Matrix::from_ints(q(), &[&[0, 1], &[0, 0]]);
        let d2 = Matrix::from_ints(q(), &[&[1], &[0]]);
        let d3 = Matrix::zeros(q(), 1, 0);
        ChainComplex::new(q(), vec![2, 2, 1, 0], vec![d1, d2, d3]).unwrap()
    }

    #[test]
    fn normalized_dimensions_of_standard_simplices() {
        assert_eq!(moore(&free_standard(q(), 1, 3)).unwrap().dims(), &[2, 1, 0, 0]);
        assert_eq!(
            moore(&free_standard(q(), 2, 4)).unwrap().dims(),
            &[3, 3, 1, 0, 0]
        );
        assert_eq!(moore(&constant_module(q(), 4)).unwrap().dims(), &[1, 0, 0, 0, 0]);
    }

    #[test]
    fn normalized_homology_of_the_hollow_triangle() {
        let n = moore(&boundary_module(q(), 2, 4)).unwrap();
        n.validate().unwrap();
        assert_eq!(n.betti(), vec![1, 1, 0, 0, 0]);
    }

    #[test]
    fn inclusion_into_unnormalized_chains_is_a_quasi_isomorphism() {
        for x in [
            free_standard(q(), 1, 3),
            free_standard(q(), 2, 3),
            boundary_module(q(), 2, 3),
            constant_module(q(), 3),
        ] {
            let inc = moore_inclusion(&x).unwrap();
            inc.validate().unwrap();
            assert!(inc.is_quasi_isomorphism().unwrap());
        }
    }

    #[test]
    fn inflating_the_point_gives_the_constant_module() {
        let inflated = inflate(&ChainComplex::point(q(), 3)).unwrap();
        assert_eq!(inflated, constant_module(q(), 3));
    }

    #[test]
    fn inflated_modules_satisfy_the_simplicial_identities() {
        let x = inflate(&small_complex()).unwrap();
        x.validate().unwrap();
        assert_eq!(x.dims(), &[2, 4, 7, 11]);
    }

    #[test]
    fn normalizing_an_inflation_returns_the_complex_exactly() {
        let c = small_complex();
        let back = moore(&inflate(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn counit_is_a_chain_equivalence() {
        for x in [free_standard(q(), 1, 3), boundary_module(q(), 2, 3)] {
            let e = counit(&x).unwrap();
            e.validate().unwrap();
            assert!(e.is_chain_equivalence().unwrap());
        }
    }

    #[test]
    fn complexes_embed_as_semi_simplicial_modules() {
        let c = small_complex();
        let x = chain_to_semisimplicial(&c);
        x.validate().unwrap();
        assert_eq!(x.chain(), c);
    }
}
