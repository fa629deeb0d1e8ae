mod common;

use stablecat::complexes::*;
use stablecat::counterexamples::{build, CounterexampleSpec, Kind};
use stablecat::modrep::{Module, Side};
use stablecat::Error;

fn top_seed(x: &WindowedComplex) -> Selection {
    let mut seed: Selection = x.terms().iter().map(|_| vec![]).collect();
    *seed.last_mut().unwrap() = vec![0];
    seed
}

#[test]
fn covering_of_proj_x_follows_one_branch() {
    let x = build(&CounterexampleSpec::new(Kind::ProjX, 2, 3, 1)).unwrap();
    let s = covering_subcomplex(&x, &top_seed(&x)).unwrap();
    assert_eq!(s.tag_counts(), vec![1, 1, 1, 1]);
    let again = covering_subcomplex(&x, &s.selection).unwrap();
    assert_eq!(again.selection, s.selection);
}

#[test]
fn exact_covering_sits_between_seed_closure_and_whole() {
    let x = build(&CounterexampleSpec::new(Kind::ProjX, 2, 3, 1)).unwrap();
    let seed = top_seed(&x);
    let small = covering_subcomplex(&x, &seed).unwrap();
    let e = exact_covering_subcomplex(&x, &seed).unwrap();
    assert!(e.complex.underlying().is_exact());
    assert_eq!(e.tag_counts(), vec![1, 1, 2, 4]);
    let total: usize = e.tag_counts().iter().sum();
    assert!(total > small.tag_counts().iter().sum::<usize>());
    assert!(total < x.tag_counts().unwrap().iter().sum::<usize>());
    for (a, b) in small.selection.iter().zip(&e.selection) {
        assert!(a.iter().all(|t| b.contains(t)));
    }
}

#[test]
fn exact_covering_needs_exact_ambient() {
    let y = build(&CounterexampleSpec::new(Kind::ProjY, 2, 3, 1)).unwrap();
    assert!(matches!(exact_covering_subcomplex(&y, &top_seed(&y)), Err(Error::Precondition(_))));
}

#[test]
fn inclusion_is_a_chain_map() {
    let x = build(&CounterexampleSpec::new(Kind::InjX, 3, 3, 1)).unwrap();
    let s = covering_subcomplex(&x, &top_seed(&x)).unwrap();
    ChainMap::new(&s.complex, &x, s.inclusion.components().to_vec()).unwrap();
}

#[test]
fn filtration_refuses_when_tensor_is_not_exact() {
    let x = build(&CounterexampleSpec::new(Kind::ProjX, 2, 3, 1)).unwrap();
    let j = Module::injective_j(x.algebra(), Side::Right);
    assert!(matches!(filtration_by_small(&x, &j), Err(Error::Precondition(_))));
}

#[test]
fn filtration_of_proj_y_against_j() {
    for base in 1..=3 {
        let y = build(&CounterexampleSpec::new(Kind::ProjY, 2, 3, base)).unwrap();
        let j = Module::injective_j(y.algebra(), Side::Right);
        let layers = filtration_by_small(&y, &j).unwrap();
        assert_eq!(layers.len(), base);
        stablecat::complexes::verify_filtration(&y, &j, &layers).unwrap();
    }
}

#[test]
fn filtration_of_proj_x_against_r() {
    for p in [2, 3] {
        let x = build(&CounterexampleSpec::new(Kind::ProjX, p, 3, 2)).unwrap();
        let r = Module::regular(x.algebra(), Side::Right);
        let layers = filtration_by_small(&x, &r).unwrap();
        assert!(layers.len() >= 2);
        stablecat::complexes::verify_filtration(&x, &r, &layers).unwrap();
    }
}

#[test]
fn hom_complex_signs_give_d_squared_zero() {
    let mut rng = common::rng(31);
    for _ in 0..20 {
        let a = common::random_ring(&mut rng, 3);
        let x = common::random_complex(&mut rng, &a, Side::Left, -1, 3, 3, true);
        let y = common::random_complex(&mut rng, &a, Side::Left, 0, 3, 3, true);
        // VectorComplex::new rejects d^2 != 0.
        hom_complex(&x, &y).unwrap();
        hom_complex(&shift(&x, 1), &y).unwrap();
    }
}

#[test]
fn hom_complex_cycles_are_chain_maps() {
    let mut rng = common::rng(32);
    for _ in 0..15 {
        let a = common::random_ring(&mut rng, 2);
        let x = common::random_complex(&mut rng, &a, Side::Left, 0, 3, 3, true);
        let y = common::random_complex(&mut rng, &a, Side::Left, 0, 3, 3, true);
        let h = hom_complex(&x, &y).unwrap();
        let (xp, yp) = common_window(&x, &y).unwrap();
        let maps = chain_map_space(&xp, &yp).unwrap();
        assert_eq!(h.complex.cycles(0).cols(), maps.len());
    }
}

#[test]
fn triple_on_spheres_is_ext() {
    // Hom(S^0 k, S^n k) has homology only where the spheres meet.
    let a = stablecat::algebra::mk_local_sq_zero(2, 2).unwrap();
    let k = Module::trivial(&a, Side::Left);
    let x = WindowedComplex::sphere(0, &k);
    for (ydeg, n, expect) in [(0, 0, 1), (0, 1, 0), (-1, -1, 1), (1, 1, 1)] {
        let y = WindowedComplex::sphere(ydeg, &k);
        let t = hom_triple(&x, &y, n).unwrap();
        assert_eq!(t, HomTriple { hom_homology: expect, maps_mod_homotopy: expect, extension_classes: expect });
    }
}

#[test]
fn extension_representatives_are_non_split() {
    let mut rng = common::rng(33);
    for _ in 0..20 {
        let a = common::random_ring(&mut rng, 2);
        let x = common::random_complex(&mut rng, &a, Side::Left, 0, 3, 2, true);
        let z = common::random_complex(&mut rng, &a, Side::Left, 0, 3, 2, true);
        let (xp, zp) = common_window(&x, &z).unwrap();
        let classes = extension_classes(&xp, &zp).unwrap();
        for f in &classes.representatives {
            let e = extension_from_chain_map(f).unwrap();
            assert!(is_degreewise_split_extension(&e));
            assert!(!is_split_extension(&e).unwrap());
        }
        for f in &classes.split_generators {
            assert!(is_split_extension(&extension_from_chain_map(f).unwrap()).unwrap());
        }
    }
}

#[test]
fn complex_file_round_trip() {
    let x = build(&CounterexampleSpec::new(Kind::InjY, 5, 3, 1)).unwrap();
    let json = serde_json::to_string(&x.to_file()).unwrap();
    let back: ComplexFile = serde_json::from_str(&json).unwrap();
    assert_eq!(WindowedComplex::from_file(&back).unwrap(), x);
}

#[test]
fn padding_preserves_homology() {
    let a = stablecat::algebra::mk_trunc_poly(3, 2).unwrap();
    let k = Module::trivial(&a, Side::Left);
    let s = WindowedComplex::sphere(1, &k);
    let p = s.padded(-3, 4).unwrap();
    for n in -3..=4 {
        let expect = usize::from(n == 1);
        assert_eq!(homology_at(&p, n).unwrap().0, expect);
    }
    let t = build(&CounterexampleSpec::new(Kind::ProjX, 2, 3, 1)).unwrap();
    assert!(t.padded(-1, 4).is_err());
}
