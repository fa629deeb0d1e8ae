//! Seeded generators shared by the integration suites.
#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use stablecat::algebra::{mk_cyclic_group_algebra, mk_local_sq_zero, mk_trunc_poly, Algebra};
use stablecat::complexes::WindowedComplex;
use stablecat::exactla::FieldMatrix;
use stablecat::modrep::{cokernel, free_map, hom_space_matrix, Module, Morphism, Side};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A catalog ring of dimension at most 4 over `F_p`.
pub fn random_ring(rng: &mut impl Rng, p: u64) -> Arc<Algebra> {
    let mut choices: Vec<Box<dyn Fn() -> Arc<Algebra>>> = vec![
        Box::new(move || mk_local_sq_zero(1, p).unwrap()),
        Box::new(move || mk_local_sq_zero(2, p).unwrap()),
        Box::new(move || mk_local_sq_zero(3, p).unwrap()),
        Box::new(move || mk_trunc_poly(3, p).unwrap()),
        Box::new(move || mk_trunc_poly(4, p).unwrap()),
    ];
    if p <= 3 {
        choices.push(Box::new(move || mk_cyclic_group_algebra(p as usize, p).unwrap()));
    }
    if p == 2 {
        choices.push(Box::new(|| mk_cyclic_group_algebra(4, 2).unwrap()));
    }
    choices.choose(rng).unwrap()()
}

pub fn random_vector(rng: &mut impl Rng, p: u64, len: usize) -> Vec<u64> {
    (0..len).map(|_| rng.gen_range(0..p)).collect()
}

/// `A^t / (submodule generated by s random elements)`, retried until its
/// dimension is in `1 ..= max_dim`.
pub fn random_module(rng: &mut impl Rng, a: &Arc<Algebra>, side: Side, max_dim: usize) -> Module {
    let p = a.field().p();
    loop {
        let t = rng.gen_range(1..=2);
        let free = Module::free(a, side, t);
        let s = rng.gen_range(0..=3);
        let images: Vec<Vec<u64>> = (0..s).map(|_| random_vector(rng, p, free.dim())).collect();
        let m = if images.is_empty() {
            free
        } else {
            cokernel(&free_map(&free, &images)).0
        };
        if (1..=max_dim).contains(&m.dim()) {
            return m;
        }
    }
}

/// Random element of `Hom(X, Y)` subject to `post . f = 0`.
pub fn random_hom_killed_by(rng: &mut impl Rng, x: &Module, y: &Module, post: Option<&Morphism>) -> Morphism {
    let f = x.field();
    let h = hom_space_matrix(x, y).unwrap();
    let basis = match post {
        Some(g) => {
            let lift = FieldMatrix::identity(f, x.dim()).kron(g.matrix());
            h.mul(&lift.mul(&h).kernel_basis())
        }
        None => h,
    };
    let c = random_vector(rng, f.p(), basis.cols());
    let v = basis.mul(&FieldMatrix::column_vector(f, &c)).column(0);
    Morphism::new(x, y, FieldMatrix::unvectorize(f, y.dim(), x.dim(), &v)).unwrap()
}

/// Complex of arbitrary modules on `[lo, lo + len - 1]`, differentials
/// chosen bottom-up so that `d^2 = 0`.
pub fn random_complex(
    rng: &mut impl Rng,
    a: &Arc<Algebra>,
    side: Side,
    lo: i64,
    len: usize,
    max_dim: usize,
    bounded: bool,
) -> WindowedComplex {
    let terms: Vec<Module> = (0..len).map(|_| random_module(rng, a, side, max_dim)).collect();
    let mut diffs: Vec<Morphism> = Vec::new();
    for i in 1..len {
        let d = random_hom_killed_by(rng, &terms[i], &terms[i - 1], diffs.last());
        diffs.push(d);
    }
    WindowedComplex::new(lo, terms, diffs, bounded).unwrap()
}

/// Complex of free modules of rank `1 ..= max_rank`, with images of
/// generators drawn from the kernel of the next differential.
pub fn random_free_complex(rng: &mut impl Rng, a: &Arc<Algebra>, side: Side, len: usize, max_rank: usize) -> WindowedComplex {
    let f = a.field();
    let terms: Vec<Module> = (0..len).map(|_| Module::free(a, side, rng.gen_range(1..=max_rank))).collect();
    let mut diffs: Vec<Morphism> = Vec::new();
    for i in 1..len {
        let tgt = &terms[i - 1];
        let ker = match diffs.last() {
            Some(d) => d.matrix().kernel_basis(),
            None => FieldMatrix::identity(f, tgt.dim()),
        };
        let gens = terms[i].dim() / a.dim();
        let images: Vec<Vec<u64>> = (0..gens)
            .map(|_| {
                let c = random_vector(rng, f.p(), ker.cols());
                // Sparse draws keep some differentials far from generic.
                let c: Vec<u64> = c.into_iter().map(|x| if rng.gen_bool(0.5) { x } else { 0 }).collect();
                ker.mul(&FieldMatrix::column_vector(f, &c)).column(0)
            })
            .collect();
        let d = free_map(tgt, &images);
        diffs.push(Morphism::new(&terms[i], tgt, d.matrix().clone()).unwrap());
    }
    WindowedComplex::new(0, terms, diffs, false).unwrap()
}

