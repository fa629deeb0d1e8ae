//! Exhaustive catalogs of small modules over local algebras, up to
//! isomorphism.
//!
//! Over a local algebra every module has a basis adapted to its radical
//! filtration, in which each generator acts as its augmentation scalar plus a
//! strictly upper triangular matrix. Enumerating those tuples reaches every
//! isomorphism class; duplicates are removed by searching `Hom(M, N)` for an
//! invertible map.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::FieldMatrix;
use crate::modrep::{hom_space_matrix, socle_span, Module, Side};

/// Largest number of candidate homomorphisms tried by [`is_isomorphic`].
const MAX_HOM_SEARCH: u64 = 1 << 20;

/// Brute-force isomorphism test: tries every element of `Hom(M, N)`.
pub fn is_isomorphic(m: &Module, n: &Module) -> Result<bool> {
    if m.dim() != n.dim() {
        return Ok(false);
    }
    if m.dim() == 0 {
        return Ok(true);
    }
    let h = hom_space_matrix(m, n)?;
    let f = m.field();
    let p = f.p();
    let total = (0..h.cols()).try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|&t| t <= MAX_HOM_SEARCH));
    let Some(total) = total else {
        return Err(Error::Precondition("Hom space too large for brute-force search".into()));
    };
    let cols: Vec<Vec<u64>> = (0..h.cols()).map(|c| h.column(c)).collect();
    let mut digits = vec![0u64; cols.len()];
    let mut v = vec![0u64; h.rows()];
    for _ in 0..total {
        let g = FieldMatrix::unvectorize(f, n.dim(), m.dim(), &v);
        if g.rank() == m.dim() {
            return Ok(true);
        }
        // Odometer step: bump the lowest digit, carrying over.
        for (i, d) in digits.iter_mut().enumerate() {
            *d += 1;
            for (x, c) in v.iter_mut().zip(&cols[i]) {
                *x = f.add(*x, *c);
            }
            if *d < p {
                break;
            }
            *d = 0;
        }
    }
    Ok(false)
}

/// Isomorphism invariants used to bucket candidates.
fn invariants(m: &Module) -> Result<Vec<usize>> {
    let f = m.field();
    let mut key = vec![m.dim(), socle_span(m).cols(), hom_space_matrix(m, m)?.cols()];
    let k = Module::trivial(m.algebra(), m.side());
    key.push(hom_space_matrix(&k, m)?.cols());
    key.push(hom_space_matrix(m, &k)?.cols());
    for (a, t) in m.action().iter().zip(k.action()) {
        let nil = a.sub(&FieldMatrix::identity(f, m.dim()).scale(t.get(0, 0)));
        let mut pow = nil.clone();
        for _ in 0..m.dim() {
            key.push(pow.rank());
            pow = pow.mul(&nil);
        }
    }
    Ok(key)
}

/// Every module of dimension `1 ..= max_dim` up to isomorphism, ordered by
/// dimension and then by enumeration order.
pub fn enumerate_modules(a: &Arc<Algebra>, side: Side, max_dim: usize) -> Result<Vec<Module>> {
    if !a.is_local() {
        return Err(Error::Precondition("module enumeration needs a local algebra".into()));
    }
    let f = a.field();
    let gens = a.generators().len();
    let k = Module::trivial(a, side);
    let scalars: Vec<u64> = k.action().iter().map(|t| t.get(0, 0)).collect();
    let mut out = Vec::new();
    for d in 1..=max_dim {
        let slots: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
        let free_entries = slots.len() * gens;
        let total = (0..free_entries).try_fold(1u64, |acc, _| acc.checked_mul(f.p()).filter(|&t| t <= 1 << 24));
        let Some(total) = total else {
            return Err(Error::Precondition("enumeration space too large".into()));
        };
        let mut buckets: BTreeMap<Vec<usize>, Vec<Module>> = BTreeMap::new();
        let mut found = Vec::new();
        for code in 0..total {
            let mut c = code;
            let action: Vec<FieldMatrix> = (0..gens)
                .map(|g| {
                    let mut m = FieldMatrix::identity(f, d).scale(scalars[g]);
                    for &(i, j) in &slots {
                        m.set(i, j, c % f.p());
                        c /= f.p();
                    }
                    m
                })
                .collect();
            let Ok(m) = Module::new(a, side, d, action) else {
                continue;
            };
            let bucket = buckets.entry(invariants(&m)?).or_default();
            let mut seen = false;
            for rep in bucket.iter() {
                if is_isomorphic(rep, &m)? {
                    seen = true;
                    break;
                }
            }
            if !seen {
                bucket.push(m.clone());
                found.push(m);
            }
        }
        out.extend(found);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{mk_cyclic_group_algebra, mk_local_sq_zero, mk_trunc_poly};

    fn counts(mods: &[Module], max: usize) -> Vec<usize> {
        (1..=max).map(|d| mods.iter().filter(|m| m.dim() == d).count()).collect()
    }

    #[test]
    fn single_generator_counts_are_partition_counts() {
        // Jordan types: partitions of d with parts bounded by the nilpotency index.
        let t3 = mk_trunc_poly(3, 2).unwrap();
        assert_eq!(counts(&enumerate_modules(&t3, Side::Left, 4).unwrap(), 4), vec![1, 2, 3, 4]);
        let z4 = mk_cyclic_group_algebra(4, 2).unwrap();
        assert_eq!(counts(&enumerate_modules(&z4, Side::Left, 4).unwrap(), 4), vec![1, 2, 3, 5]);
        let z2 = mk_cyclic_group_algebra(2, 2).unwrap();
        assert_eq!(counts(&enumerate_modules(&z2, Side::Left, 3).unwrap(), 3), vec![1, 2, 2]);
    }

    #[test]
    fn local_sq_zero_small_dims() {
        let a = mk_local_sq_zero(2, 2).unwrap();
        let mods = enumerate_modules(&a, Side::Left, 3).unwrap();
        // dim 2: k+k and two uniserials R/(y), R/(x), plus R/(x+y) over F_2.
        let c = counts(&mods, 3);
        assert_eq!(c[0], 1);
        assert_eq!(c[1], 4);
        assert!(mods.iter().any(|m| is_isomorphic(m, &Module::regular(&a, Side::Left)).unwrap()));
        assert!(mods.iter().any(|m| is_isomorphic(m, &Module::injective_j(&a, Side::Left)).unwrap()));
    }

    #[test]
    fn isomorphism_detects_base_change() {
        let a = mk_local_sq_zero(2, 2).unwrap();
        let j = Module::injective_j(&a, Side::Left);
        let f = a.field();
        let t = FieldMatrix::from_rows(f, &[[1, 1, 0], [0, 1, 0], [1, 0, 1]]);
        let t_inv = t.inverse().unwrap();
        let j2 = j.change_basis(&t, &t_inv);
        assert!(is_isomorphic(&j, &j2).unwrap());
        assert!(!is_isomorphic(&j, &Module::regular(&a, Side::Left)).unwrap());
    }
}
