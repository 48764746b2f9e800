//! Seeded random complexes, modules, and maps for experiments.
//!
//! Everything here is deterministic in the seed. Chain complexes draw
//! their differentials from kernels so that the boundary condition holds
//! exactly, modules and maps are built from standard pieces and then
//! conjugated by random changes of basis, so validity is by construction
//! while the matrices look generic.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chain::ChainComplex;
use crate::delta::enumerate_hom;
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::simplicial::{boundary_module, free_standard, SimplicialMap, SimplicialModule};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small scalar, zero allowed.
pub fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        Field::Rational => field.integer(rng.gen_range(-3..=3)),
        Field::Prime(p) => field.integer(rng.gen_range(0..p) as i64),
    }
}

fn random_nonzero_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let s = random_scalar(field, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn random_matrix(field: Field, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, random_scalar(field, rng));
        }
    }
    m
}

/// A random invertible matrix, taken as a product of unitriangular
/// factors and a nonzero diagonal.
pub fn random_invertible(field: Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut lower = Matrix::identity(field, n);
    let mut upper = Matrix::identity(field, n);
    let mut diagonal = Matrix::zeros(field, n, n);
    for r in 0..n {
        diagonal.set(r, r, random_nonzero_scalar(field, rng));
        for c in 0..r {
            lower.set(r, c, random_scalar(field, rng));
            upper.set(c, r, random_scalar(field, rng));
        }
    }
    lower
        .mul(&diagonal)
        .and_then(|m| m.mul(&upper))
        .expect("square factors compose")
}

/// A random chain complex with exact boundary condition: each
/// differential is drawn inside the kernel of the previous one.
pub fn random_chain_complex(
    field: Field,
    max_degree: usize,
    max_dim: usize,
    rng: &mut ChaCha8Rng,
) -> ChainComplex {
    let dims: Vec<usize> = (0..=max_degree)
        .map(|_| rng.gen_range(0..=max_dim))
        .collect();
    let mut differentials: Vec<Matrix> = Vec::new();
    for n in 1..=max_degree {
        let d = match differentials.last() {
            None => random_matrix(field, dims[0], dims[1], rng),
            Some(previous) => {
                let kernel = previous.kernel_basis();
                let coefficients = random_matrix(field, kernel.cols(), dims[n], rng);
                kernel.mul(&coefficients).expect("kernel shapes agree")
            }
        };
        differentials.push(d);
    }
    ChainComplex::new(field, dims, differentials).expect("construction satisfies the boundary law")
}

fn conjugation_pair(
    field: Field,
    dims: &[usize],
    rng: &mut ChaCha8Rng,
) -> (Vec<Matrix>, Vec<Matrix>) {
    let p: Vec<Matrix> = dims
        .iter()
        .map(|&d| random_invertible(field, d, rng))
        .collect();
    let p_inv = p
        .iter()
        .map(|m| {
            m.invert()
                .expect("square input")
                .expect("factors are invertible")
        })
        .collect();
    (p, p_inv)
}

fn conjugate_with(x: &SimplicialModule, p: &[Matrix], p_inv: &[Matrix]) -> SimplicialModule {
    let top = x.max_degree();
    let faces = (1..=top)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    p[n - 1]
                        .mul(x.face(n, i))
                        .and_then(|m| m.mul(&p_inv[n]))
                        .expect("conjugation shapes agree")
                })
                .collect()
        })
        .collect();
    let degeneracies = if x.is_full() {
        Some(
            (0..top)
                .map(|n| {
                    (0..=n)
                        .map(|i| {
                            p[n + 1]
                                .mul(x.degeneracy(n, i).expect("module is full"))
                                .and_then(|m| m.mul(&p_inv[n]))
                                .expect("conjugation shapes agree")
                        })
                        .collect()
                })
                .collect(),
        )
    } else {
        None
    };
    SimplicialModule::new(x.field(), x.dims().to_vec(), faces, degeneracies)
        .expect("conjugation preserves validity")
}

fn random_summand(field: Field, max_degree: usize, rng: &mut ChaCha8Rng) -> SimplicialModule {
    match rng.gen_range(0..5) {
        0 => free_standard(field, 0, max_degree),
        1 => free_standard(field, 1, max_degree),
        2 => free_standard(field, 2, max_degree),
        3 => boundary_module(field, 1, max_degree),
        _ => boundary_module(field, 2, max_degree),
    }
}

/// A random full simplicial module: a direct sum of standard and boundary
/// pieces in a random basis.
pub fn random_full_module(
    field: Field,
    max_degree: usize,
    summands: usize,
    rng: &mut ChaCha8Rng,
) -> SimplicialModule {
    let count = rng.gen_range(1..=summands.max(1));
    let mut total = random_summand(field, max_degree, rng);
    for _ in 1..count {
        let next = random_summand(field, max_degree, rng);
        total = total.direct_sum(&next).expect("same field and truncation");
    }
    let (p, p_inv) = conjugation_pair(field, total.dims(), rng);
    conjugate_with(&total, &p, &p_inv)
}

fn position_of(maps: &[crate::delta::MonotoneMap], wanted: &crate::delta::MonotoneMap) -> usize {
    maps.iter()
        .position(|h| h == wanted)
        .expect("composite stays in the enumeration")
}

/// The natural map of standard modules induced by postcomposition.
fn postcomposition_block(
    field: Field,
    level: usize,
    h: &crate::delta::MonotoneMap,
) -> Matrix {
    let source_basis = enumerate_hom(level, h.source());
    let target_basis = enumerate_hom(level, h.target());
    let mut m = Matrix::zeros(field, target_basis.len(), source_basis.len());
    for (col, phi) in source_basis.iter().enumerate() {
        let composed = phi.compose(h).expect("endpoints match");
        m.set(position_of(&target_basis, &composed), col, field.one());
    }
    m
}

/// A random simplicial map, valid by construction: block sums of linear
/// combinations of natural maps between standard modules, conjugated on
/// both sides.
pub fn random_simplicial_map(
    field: Field,
    max_degree: usize,
    summands: usize,
    rng: &mut ChaCha8Rng,
) -> SimplicialMap {
    let count = rng.gen_range(1..=summands.max(1));
    let mut source: Option<SimplicialModule> = None;
    let mut target: Option<SimplicialModule> = None;
    let mut components: Vec<Option<Matrix>> = vec![None; max_degree + 1];
    for _ in 0..count {
        let n = rng.gen_range(0..=2);
        let m = rng.gen_range(0..=2);
        let s = free_standard(field, n, max_degree);
        let t = free_standard(field, m, max_degree);
        let hom = enumerate_hom(n, m);
        let terms: Vec<(Scalar, crate::delta::MonotoneMap)> = (0..rng.gen_range(0..=2))
            .map(|_| {
                let h = hom[rng.gen_range(0..hom.len())].clone();
                (random_scalar(field, rng), h)
            })
            .collect();
        for (level, slot) in components.iter_mut().enumerate() {
            let mut block = Matrix::zeros(field, t.dim(level), s.dim(level));
            for (c, h) in &terms {
                let piece = postcomposition_block(field, level, h).scale(c);
                block = block.add(&piece).expect("block shapes agree");
            }
            *slot = Some(match slot.take() {
                None => block,
                Some(existing) => existing
                    .direct_sum(&block)
                    .expect("same field across blocks"),
            });
        }
        source = Some(match source {
            None => s,
            Some(x) => x.direct_sum(&s).expect("same field and truncation"),
        });
        target = Some(match target {
            None => t,
            Some(x) => x.direct_sum(&t).expect("same field and truncation"),
        });
    }
    let source = source.expect("at least one summand");
    let target = target.expect("at least one summand");
    let (p, p_inv) = conjugation_pair(field, source.dims(), rng);
    let (q, q_inv) = conjugation_pair(field, target.dims(), rng);
    let components = components
        .into_iter()
        .enumerate()
        .map(|(level, block)| {
            q[level]
                .mul(&block.expect("all levels filled"))
                .and_then(|m| m.mul(&p_inv[level]))
                .expect("conjugation shapes agree")
        })
        .collect();
    SimplicialMap::new(
        conjugate_with(&source, &p, &p_inv),
        conjugate_with(&target, &q, &q_inv),
        components,
    )
    .expect("natural blocks remain simplicial after conjugation")
}
