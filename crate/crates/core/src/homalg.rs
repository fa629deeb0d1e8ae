//! Minimal resolutions, syzygies, Ext and Tor.
//!
//! Resolutions are always minimal: each step takes a projective cover of
//! the current syzygy (or an injective hull of the current cosyzygy). Over a
//! local algebra this makes `dim Ext^n(M, k)` equal to the number of
//! generators of the n-th syzygy.

use serde::Serialize;

use crate::algebra::mk_local_sq_zero;
use crate::error::{Error, Result};
use crate::exactla::FieldMatrix;
use crate::modrep::{
    cokernel, hom_space_matrix, injective_hull, kernel, morphism_with_tensor, projective_cover, radical_span,
    tensor_over_r, tensor_with_morphism, top, Module, Morphism, Side,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Projective,
    Injective,
}

/// A minimal projective resolution `P_n -> .. -> P_0 -> M` or injective
/// coresolution `M -> E^0 -> .. -> E^n`.
#[derive(Clone, Debug)]
pub struct Resolution {
    base: Module,
    direction: Direction,
    terms: Vec<Module>,
    /// `P_0 -> M` (projective) or `M -> E^0` (injective).
    augmentation: Morphism,
    /// Projective: `maps[i]` is `d_{i+1}: P_{i+1} -> P_i`.
    /// Injective: `maps[i]` is `E^i -> E^{i+1}`.
    maps: Vec<Morphism>,
    /// `Omega^i M` for `i = 0..=length + 1` (cosyzygies in the injective case).
    syzygies: Vec<Module>,
}

impl Resolution {
    pub fn base(&self) -> &Module {
        &self.base
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Number of the last computed term.
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn terms(&self) -> &[Module] {
        &self.terms
    }

    pub fn augmentation(&self) -> &Morphism {
        &self.augmentation
    }

    pub fn maps(&self) -> &[Morphism] {
        &self.maps
    }

    pub fn syzygies(&self) -> &[Module] {
        &self.syzygies
    }

    pub fn minimal(&self) -> bool {
        true
    }

    pub fn term_dims(&self) -> Vec<usize> {
        self.terms.iter().map(Module::dim).collect()
    }

    /// Number of free (or `J`) summands in each term.
    pub fn generator_counts(&self) -> Vec<usize> {
        let d = self.base.algebra().dim();
        self.terms.iter().map(|t| t.dim() / d).collect()
    }

    /// Re-checks that consecutive maps compose to zero, that the sequence is
    /// exact at every joint, and minimality.
    pub fn verify(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Precondition(format!("resolution check failed: {msg}")));
        match self.direction {
            Direction::Projective => {
                let mut prev = self.augmentation.clone();
                if prev.rank() != self.base.dim() {
                    return bad("augmentation is not onto".into());
                }
                for (i, d) in self.maps.iter().enumerate() {
                    if !prev.compose(d)?.is_zero() {
                        return bad(format!("d_{} d_{} != 0", i, i + 1));
                    }
                    let ker = prev.source().dim() - prev.rank();
                    if d.rank() != ker {
                        return bad(format!("not exact at P_{i}"));
                    }
                    prev = d.clone();
                }
                let mut all = vec![self.augmentation.clone()];
                all.extend(self.maps.iter().cloned());
                for (i, m) in all.iter().enumerate() {
                    let rad = radical_span(m.source());
                    let ker = m.matrix().kernel_basis();
                    if !crate::exactla::in_span(&rad, &ker) {
                        return bad(format!("map out of P_{i} is not minimal"));
                    }
                }
            }
            Direction::Injective => {
                let mut prev = self.augmentation.clone();
                if prev.rank() != self.base.dim() {
                    return bad("coaugmentation is not injective".into());
                }
                for (i, d) in self.maps.iter().enumerate() {
                    if !d.compose(&prev)?.is_zero() {
                        return bad(format!("composite into E^{} is nonzero", i + 1));
                    }
                    let ker = d.source().dim() - d.rank();
                    if prev.rank() != ker {
                        return bad(format!("not exact at E^{i}"));
                    }
                    prev = d.clone();
                }
            }
        }
        Ok(())
    }
}

/// Minimal projective resolution through `P_length`.
pub fn projective_resolution(m: &Module, length: usize) -> Resolution {
    let (p0, eps) = projective_cover(m);
    let mut terms = vec![p0];
    let mut maps = Vec::new();
    let mut syzygies = vec![m.clone()];
    let mut to_prev = eps.clone();
    for _ in 0..=length {
        let (omega, inc) = kernel(&to_prev);
        syzygies.push(omega.clone());
        if terms.len() == length + 1 {
            break;
        }
        let (p, cover) = projective_cover(&omega);
        let d = inc.compose(&cover).expect("composable");
        terms.push(p);
        maps.push(d.clone());
        to_prev = d;
    }
    Resolution {
        base: m.clone(),
        direction: Direction::Projective,
        terms,
        augmentation: eps,
        maps,
        syzygies,
    }
}

/// Minimal injective coresolution through `E^length`.
pub fn injective_resolution(m: &Module, length: usize) -> Resolution {
    let (e0, eta) = injective_hull(m);
    let mut terms = vec![e0];
    let mut maps = Vec::new();
    let mut syzygies = vec![m.clone()];
    let mut from_prev = eta.clone();
    for _ in 0..=length {
        let (co, proj) = cokernel(&from_prev);
        syzygies.push(co.clone());
        if terms.len() == length + 1 {
            break;
        }
        let (e, hull) = injective_hull(&co);
        let d = hull.compose(&proj).expect("composable");
        terms.push(e);
        maps.push(d.clone());
        from_prev = d;
    }
    Resolution {
        base: m.clone(),
        direction: Direction::Injective,
        terms,
        augmentation: eta,
        maps,
        syzygies,
    }
}

/// `Omega^i M`, the kernel of the `(i-1)`-st map of the minimal resolution.
pub fn syzygy(m: &Module, i: usize) -> Module {
    let mut cur = m.clone();
    for _ in 0..i {
        cur = kernel(&projective_cover(&cur).1).0;
    }
    cur
}

/// `Omega^{-i} M`, the cokernel of the injective hull iterated `i` times.
pub fn cosyzygy(m: &Module, i: usize) -> Module {
    let mut cur = m.clone();
    for _ in 0..i {
        cur = cokernel(&injective_hull(&cur).1).0;
    }
    cur
}

/// Minimal number of generators, `dim top(M)`.
pub fn mu(m: &Module) -> usize {
    top(m).0.dim()
}

/// Matrix of `f -> f . d` from `Hom(B, N)` to `Hom(A, N)` for `d: A -> B`,
/// in the bases given by [`hom_space_matrix`].
pub(crate) fn precompose_matrix(d: &Morphism, hb: &FieldMatrix, ha: &FieldMatrix, n: &Module) -> FieldMatrix {
    let f = n.field();
    let lift = d.matrix().transpose().kron(&FieldMatrix::identity(f, n.dim()));
    let images = lift.mul(hb);
    ha.solve(&images)
        .expect("shape")
        .expect("precomposition stays in the hom space")
}

/// `dim Ext^n_A(M, N)`, from `Hom` of a minimal projective resolution of `M`.
pub fn ext(m: &Module, n: &Module, degree: usize) -> Result<usize> {
    if m.side() != n.side() {
        return Err(Error::Incompatible("Ext needs modules on the same side".into()));
    }
    let res = projective_resolution(m, degree + 1);
    let homs: Vec<FieldMatrix> = (0..=degree + 1)
        .map(|i| hom_space_matrix(&res.terms[i], n))
        .collect::<Result<_>>()?;
    // delta^i: Hom(P_i, N) -> Hom(P_{i+1}, N)
    let delta = |i: usize| precompose_matrix(&res.maps[i], &homs[i], &homs[i + 1], n);
    let d_out = delta(degree);
    let cycles = homs[degree].cols() - d_out.rank();
    let boundaries = if degree == 0 { 0 } else { delta(degree - 1).rank() };
    Ok(cycles - boundaries)
}

/// `dim Tor_n^A(M, N)` for `M` right and `N` left, resolving `M`.
pub fn tor(m: &Module, n: &Module, degree: usize) -> Result<usize> {
    check_tor_sides(m, n)?;
    let res = projective_resolution(m, degree + 1);
    let dims: Vec<usize> = res
        .terms
        .iter()
        .map(|p| tensor_over_r(p, n).map(|t| t.dim))
        .collect::<Result<_>>()?;
    let rank_of = |i: usize| -> Result<usize> { Ok(morphism_with_tensor(&res.maps[i], n)?.rank()) };
    // d_n (x) N: P_n (x) N -> P_{n-1} (x) N is maps[n - 1].
    let out_rank = if degree == 0 { 0 } else { rank_of(degree - 1)? };
    let in_rank = rank_of(degree)?;
    Ok(dims[degree] - out_rank - in_rank)
}

/// `dim Tor_n^A(M, N)` computed by resolving `N` instead; agrees with
/// [`tor`] by balance.
pub fn tor_via_left(m: &Module, n: &Module, degree: usize) -> Result<usize> {
    check_tor_sides(m, n)?;
    let res = projective_resolution(n, degree + 1);
    let dims: Vec<usize> = res
        .terms
        .iter()
        .map(|q| tensor_over_r(m, q).map(|t| t.dim))
        .collect::<Result<_>>()?;
    let rank_of = |i: usize| -> Result<usize> { Ok(tensor_with_morphism(m, &res.maps[i])?.rank()) };
    let out_rank = if degree == 0 { 0 } else { rank_of(degree - 1)? };
    let in_rank = rank_of(degree)?;
    Ok(dims[degree] - out_rank - in_rank)
}

fn check_tor_sides(m: &Module, n: &Module) -> Result<()> {
    if m.side() != Side::Right || n.side() != Side::Left {
        return Err(Error::Incompatible("Tor needs a right module and a left module".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    pub mu_omega1: usize,
    pub mu_omega2: usize,
}

/// Generator counts of the first two syzygies of `k` over
/// `local_sq_zero(n, p)` for each requested `n`: the kernel of a minimal
/// cover of `m R^t` is again a sum of copies of `m`, so the counts grow as
/// `n` and `n^2`.
pub fn fp_growth_probe(p: u64, ns: &[usize]) -> Result<Vec<GrowthRow>> {
    ns.iter()
        .map(|&n| {
            let a = mk_local_sq_zero(n, p)?;
            let k = Module::trivial(&a, Side::Left);
            let o1 = syzygy(&k, 1);
            let o2 = syzygy(&o1, 1);
            Ok(GrowthRow {
                n,
                mu_omega1: mu(&o1),
                mu_omega2: mu(&o2),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{mk_cyclic_group_algebra, mk_trunc_poly};
    use crate::modrep::dual;

    #[test]
    fn resolution_of_projective_stops() {
        let a = mk_local_sq_zero(2, 2).unwrap();
        let r = Module::regular(&a, Side::Left);
        let res = projective_resolution(&r, 3);
        assert_eq!(res.term_dims(), vec![3, 0, 0, 0]);
        res.verify().unwrap();
    }

    #[test]
    fn periodic_resolution_over_dual_numbers() {
        let a = mk_cyclic_group_algebra(2, 2).unwrap();
        let k = Module::trivial(&a, Side::Left);
        let res = projective_resolution(&k, 4);
        assert_eq!(res.term_dims(), vec![2; 5]);
        res.verify().unwrap();
    }

    #[test]
    fn doubling_resolution_over_sq_zero() {
        let a = mk_local_sq_zero(2, 2).unwrap();
        let k = Module::trivial(&a, Side::Left);
        let res = projective_resolution(&k, 3);
        assert_eq!(res.term_dims(), vec![3, 6, 12, 24]);
        assert_eq!(res.generator_counts(), vec![1, 2, 4, 8]);
        res.verify().unwrap();
        let inj = injective_resolution(&k, 2);
        assert_eq!(inj.term_dims(), vec![3, 6, 12]);
        inj.verify().unwrap();
    }

    #[test]
    fn syzygy_examples() {
        let a = mk_local_sq_zero(2, 2).unwrap();
        assert_eq!(syzygy(&Module::regular(&a, Side::Left), 1).dim(), 0);
        for p in [2, 3, 5] {
            let g = mk_cyclic_group_algebra(p as usize, p).unwrap();
            assert_eq!(syzygy(&Module::trivial(&g, Side::Left), 1).dim(), p as usize - 1);
        }
        for n in 1..=3 {
            let a = mk_local_sq_zero(n, 2).unwrap();
            let o = syzygy(&Module::trivial(&a, Side::Left), 1);
            assert_eq!(o.dim(), n);
            assert_eq!(radical_span(&o).cols(), 0);
        }
    }

    #[test]
    fn ext_examples() {
        let g = mk_cyclic_group_algebra(2, 2).unwrap();
        let k = Module::trivial(&g, Side::Left);
        for n in 0..5 {
            assert_eq!(ext(&k, &k, n).unwrap(), 1);
        }
        let a = mk_local_sq_zero(2, 2).unwrap();
        let k = Module::trivial(&a, Side::Left);
        for n in 0..4 {
            assert_eq!(ext(&k, &k, n).unwrap(), 1 << n);
        }
        let j = Module::injective_j(&a, Side::Left);
        let m = Module::radical_ideal(&a, Side::Left);
        for n in 1..3 {
            assert_eq!(ext(&m, &j, n).unwrap(), 0);
            assert_eq!(ext(&k, &j, n).unwrap(), 0);
        }
    }

    #[test]
    fn tor_examples() {
        let a = mk_local_sq_zero(2, 2).unwrap();
        let kr = Module::trivial(&a, Side::Right);
        let kl = Module::trivial(&a, Side::Left);
        assert_eq!(tor(&kr, &kl, 1).unwrap(), 2);
        assert_eq!(tor_via_left(&kr, &kl, 1).unwrap(), 2);
        let r = Module::regular(&a, Side::Left);
        assert_eq!(tor(&kr, &r, 1).unwrap(), 0);
        assert_eq!(tor(&kr, &r, 0).unwrap(), 1);
        let g = mk_trunc_poly(2, 2).unwrap();
        let kr = Module::trivial(&g, Side::Right);
        let kl = Module::trivial(&g, Side::Left);
        for n in 0..4 {
            assert_eq!(tor(&kr, &kl, n).unwrap(), 1);
        }
        assert!(tor(&kl, &kl, 0).is_err());
        // Tor_n(M, N) = Ext^n(N, dual M).
        let a = mk_local_sq_zero(2, 2).unwrap();
        let jr = Module::injective_j(&a, Side::Right);
        let kl = Module::trivial(&a, Side::Left);
        for n in 0..3 {
            assert_eq!(tor(&jr, &kl, n).unwrap(), ext(&kl, &dual(&jr), n).unwrap());
        }
    }

    #[test]
    fn growth_probe_small() {
        let rows = fp_growth_probe(2, &[1, 2, 4]).unwrap();
        assert_eq!(
            rows.iter().map(|r| (r.mu_omega1, r.mu_omega2)).collect::<Vec<_>>(),
            vec![(1, 1), (2, 4), (4, 16)]
        );
    }
}
