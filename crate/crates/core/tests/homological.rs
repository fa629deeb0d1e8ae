use stablecat::algebra::{is_quasi_frobenius, mk_cyclic_group_algebra, mk_local_sq_zero, mk_trunc_poly, RingSpec};
use stablecat::homalg::{ext, fp_growth_probe, injective_resolution, projective_resolution, tor};
use stablecat::modrep::{dual, injective_hull, is_injective, projective_cover, socle, top, Module, Side};
use stablecat::stable::{is_gorenstein_ac_injective, is_gorenstein_ac_projective, tate_cohomology, Detection};

#[test]
fn ring_specs_parse_and_print() {
    let s: RingSpec = " local_sq_zero( 2 , 3 )".parse().unwrap();
    assert_eq!(s.to_string(), "local_sq_zero(2,3)");
    assert!("Local_sq_zero(2,3)".parse::<RingSpec>().is_err());
    assert!("trunc_poly(2,4)".parse::<RingSpec>().unwrap().build().is_err());
    assert_eq!("cyclic_group(9,3)".parse::<RingSpec>().unwrap().build().unwrap().dim(), 9);
}

#[test]
fn quasi_frobenius_catalog() {
    assert!(is_quasi_frobenius(&mk_cyclic_group_algebra(4, 2).unwrap()));
    assert!(is_quasi_frobenius(&mk_trunc_poly(3, 5).unwrap()));
    assert!(is_quasi_frobenius(&mk_local_sq_zero(1, 3).unwrap()));
    assert!(!is_quasi_frobenius(&mk_local_sq_zero(2, 3).unwrap()));
}

#[test]
fn resolution_dimensions() {
    let a = mk_local_sq_zero(2, 2).unwrap();
    let k = Module::trivial(&a, Side::Left);
    assert_eq!(projective_resolution(&k, 2).term_dims(), vec![3, 6, 12]);
    let t = mk_trunc_poly(2, 2).unwrap();
    let kt = Module::trivial(&t, Side::Left);
    assert_eq!(projective_resolution(&kt, 4).term_dims(), vec![2; 5]);
    let r = Module::regular(&a, Side::Left);
    assert_eq!(projective_resolution(&r, 3).term_dims(), vec![3, 0, 0, 0]);
    let inj = injective_resolution(&k, 2);
    inj.verify().unwrap();
    assert_eq!(inj.term_dims(), vec![3, 6, 12]);
}

#[test]
fn ext_and_tor_tables() {
    let a = mk_local_sq_zero(2, 2).unwrap();
    let k = Module::trivial(&a, Side::Left);
    let j = Module::injective_j(&a, Side::Left);
    let dims: Vec<usize> = (0..4).map(|n| ext(&k, &k, n).unwrap()).collect();
    assert_eq!(dims, vec![1, 2, 4, 8]);
    for n in 1..4 {
        assert_eq!(ext(&k, &j, n).unwrap(), 0);
    }
    let t = mk_trunc_poly(2, 2).unwrap();
    let kl = Module::trivial(&t, Side::Left);
    let kr = Module::trivial(&t, Side::Right);
    assert_eq!((0..4).map(|n| tor(&kr, &kl, n).unwrap()).collect::<Vec<_>>(), vec![1; 4]);
}

#[test]
fn structure_of_j_and_hull() {
    let a = mk_local_sq_zero(2, 5).unwrap();
    let j = Module::injective_j(&a, Side::Left);
    assert_eq!(socle(&j).0.dim(), 1);
    assert_eq!(top(&j).0.dim(), 2);
    assert!(is_injective(&j));
    let (e, _) = injective_hull(&Module::regular(&a, Side::Left));
    assert_eq!(e.dim(), 6);
    assert_eq!(projective_cover(&dual(&j)).0.dim(), 3);
}

#[test]
fn growth_probe() {
    let rows = fp_growth_probe(3, &[1, 2, 3]).unwrap();
    assert_eq!(rows.iter().map(|r| (r.mu_omega1, r.mu_omega2)).collect::<Vec<_>>(), vec![(1, 1), (2, 4), (3, 9)]);
}

#[test]
fn tate_over_z4() {
    let dims = tate_cohomology(2, 2, (-3, 3)).unwrap();
    assert!(dims.iter().all(|&(_, d)| d == 1));
}

#[test]
fn detectors_on_qf_rings() {
    let a = mk_cyclic_group_algebra(5, 5).unwrap();
    let k = Module::trivial(&a, Side::Left);
    assert_eq!(is_gorenstein_ac_projective(&k, 2).unwrap(), Detection::Yes);
    assert_eq!(is_gorenstein_ac_injective(&k, 2).unwrap(), Detection::Yes);
    assert!(is_gorenstein_ac_injective(&k, 0).is_err());
}
