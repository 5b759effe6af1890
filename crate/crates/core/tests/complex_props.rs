use engelcov::bundles::{bundles_isomorphic, prolongation_euler, unit_sphere_euler, CircleBundle, ContactLabel};
use engelcov::{Chain, Cochain, SimplicialComplex};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn builtin(which: bool) -> SimplicialComplex {
    if which {
        SimplicialComplex::torus3()
    } else {
        SimplicialComplex::projective3()
    }
}

fn values(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, len)
}

fn cochain(x: &SimplicialComplex, k: usize, v: &[i64]) -> Cochain {
    Cochain::from_i64(x, k, &v[..x.count(k)]).unwrap()
}

/// Σ k_i g_i over all generators, plus δu.
fn cocycle(x: &SimplicialComplex, k: usize, coeffs: &[i64], u: &[i64]) -> Cochain {
    let h = x.cohomology(k).unwrap();
    let mut z = Cochain::zero(x, k).unwrap();
    for (g, &c) in h.generators().iter().zip(coeffs) {
        z = &z + &g.scale_i64(c);
    }
    if k > 0 {
        z = &z + &cochain(x, k - 1, u).coboundary().unwrap();
    }
    z
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn coboundary_squares_to_zero(which in any::<bool>(), k in 0usize..2, v in values(324)) {
        let x = builtin(which);
        let z = cochain(&x, k, &v);
        prop_assert!(z.coboundary().unwrap().coboundary().unwrap().is_zero());
    }

    #[test]
    fn evaluation_is_bilinear(which in any::<bool>(), k in 0usize..4, a in values(324), b in values(324), c in values(324), s in -5i64..=5) {
        let x = builtin(which);
        let (z1, z2) = (cochain(&x, k, &a), cochain(&x, k, &b));
        let ch = Chain::from_i64(&x, k, &c[..x.count(k)]).unwrap();
        let lhs = (&z1 + &z2.scale_i64(s)).evaluate(&ch).unwrap();
        let rhs = z1.evaluate(&ch).unwrap() + z2.evaluate(&ch).unwrap() * s;
        prop_assert_eq!(lhs, rhs);
        let ch2 = Chain::from_i64(&x, k, &b[..x.count(k)]).unwrap();
        prop_assert_eq!(z1.evaluate(&(&ch + &ch2)).unwrap(), z1.evaluate(&ch).unwrap() + z1.evaluate(&ch2).unwrap());
    }

    #[test]
    fn pairing_is_homotopy_invariant(which in any::<bool>(), coeffs in prop::collection::vec(-3i64..=3, 3), u in values(27), v in values(324)) {
        let x = builtin(which);
        let z = cocycle(&x, 1, &coeffs, &u);
        let z0 = cocycle(&x, 1, &coeffs, &[0; 27]);
        let boundary = Chain::from_i64(&x, 2, &v[..x.count(2)]).unwrap().boundary().unwrap();
        for gamma in x.cycle_basis(1).unwrap() {
            let shifted = &gamma + &boundary;
            prop_assert_eq!(x.evaluate(&z, &shifted).unwrap(), x.evaluate(&z0, &gamma).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn coordinates_ignore_coboundaries(which in any::<bool>(), k in 1usize..4, coeffs in prop::collection::vec(-4i64..=4, 4), u in values(324)) {
        let x = builtin(which);
        let z = cocycle(&x, k, &coeffs, &[0; 324]);
        let shifted = cocycle(&x, k, &coeffs, &u);
        prop_assert!(shifted.is_cocycle());
        let h = x.cohomology(k).unwrap();
        let a = x.coordinates(&z).unwrap();
        prop_assert_eq!(a.clone(), x.coordinates(&shifted).unwrap());
        let n = h.free_rank() + h.torsion_orders().len();
        let expected = h.class(
            coeffs[..h.free_rank()].iter().map(|&c| BigInt::from(c)).collect(),
            coeffs[h.free_rank()..n].iter().map(|&c| BigInt::from(c)).collect(),
        ).unwrap();
        prop_assert_eq!(a, expected);
    }

    #[test]
    fn coboundary_test_returns_primitives(which in any::<bool>(), k in 1usize..4, coeffs in prop::collection::vec(-4i64..=4, 4), u in values(324)) {
        let x = builtin(which);
        let z = cocycle(&x, k, &coeffs, &u);
        match x.is_coboundary(&z).unwrap() {
            Some(w) => prop_assert_eq!(w.coboundary().unwrap(), z),
            None => prop_assert!(!x.coordinates(&z).unwrap().is_zero()),
        }
    }

    #[test]
    fn bundle_isomorphism_is_an_equivalence(which in any::<bool>(), c in prop::collection::vec(prop::collection::vec(-1i64..=1, 3), 3), u in prop::collection::vec(values(189), 3)) {
        let x = builtin(which);
        let bundles: Vec<CircleBundle> = (0..3).map(|i| CircleBundle::new(cocycle(&x, 2, &c[i], &u[i])).unwrap()).collect();
        for a in &bundles {
            prop_assert!(bundles_isomorphic(a, a).unwrap());
            for b in &bundles {
                prop_assert_eq!(bundles_isomorphic(a, b).unwrap(), bundles_isomorphic(b, a).unwrap());
                for c in &bundles {
                    if bundles_isomorphic(a, b).unwrap() && bundles_isomorphic(b, c).unwrap() {
                        prop_assert!(bundles_isomorphic(a, c).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn prolongation_is_twice_the_unit_sphere(which in any::<bool>(), c in prop::collection::vec(-3i64..=3, 3), u in values(189)) {
        let x = builtin(which);
        let xi = ContactLabel::new("xi", cocycle(&x, 2, &c, &u)).unwrap();
        let e = unit_sphere_euler(&xi);
        prop_assert_eq!(prolongation_euler(&xi), e.checked_add(&e).unwrap());
    }
}

#[test]
fn builtin_euler_characteristics_vanish() {
    assert_eq!(SimplicialComplex::torus3().euler_characteristic(), 0);
    assert_eq!(SimplicialComplex::projective3().euler_characteristic(), 0);
}

#[test]
fn cycle_bases_are_dual_to_generators() {
    let circle = SimplicialComplex::from_top_simplices(1, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
    for x in [SimplicialComplex::torus3(), SimplicialComplex::projective3(), circle] {
        let h1 = x.cohomology(1).unwrap();
        let cycles = x.cycle_basis(1).unwrap();
        assert_eq!(cycles.len(), h1.free_rank());
        for (i, g) in h1.free_generators().iter().enumerate() {
            for (j, c) in cycles.iter().enumerate() {
                assert_eq!(x.evaluate(g, c).unwrap(), BigInt::from((i == j) as i64));
            }
        }
    }
}

#[test]
fn cycle_basis_without_reference_cycles() {
    // the same torus without pinned loops: generators come straight from the Smith forms
    let t3 = SimplicialComplex::torus3();
    let bare = SimplicialComplex::from_top_simplices(3, t3.simplices(3)).unwrap();
    for k in 0..=3 {
        let h = bare.cohomology(k).unwrap();
        let cycles = bare.cycle_basis(k).unwrap();
        for (i, g) in h.free_generators().iter().enumerate() {
            for (j, c) in cycles.iter().enumerate() {
                assert!(c.is_cycle());
                assert_eq!(bare.evaluate(g, c).unwrap(), BigInt::from((i == j) as i64));
            }
        }
    }
}

#[test]
fn top_boundary_rank_of_the_torus() {
    let t3 = SimplicialComplex::torus3();
    let d3 = t3.boundary_matrix(3).unwrap().transpose();
    let snf = engelcov::smith_normal_form(&d3);
    assert_eq!(snf.rank(), t3.count(3) - 1);
    assert!(snf.invariant_factors().iter().all(|d| *d == BigInt::from(1)));
    let zero = Cochain::zero(&t3, 2).unwrap();
    assert!(zero.values().iter().all(Zero::is_zero));
}

#[test]
fn rejects_foreign_and_mismatched_inputs() {
    let t3 = SimplicialComplex::torus3();
    let rp3 = SimplicialComplex::projective3();
    let z = Cochain::zero(&rp3, 1).unwrap();
    assert_eq!(t3.coordinates(&z).unwrap_err(), engelcov::Error::BaseMismatch);
    let g = t3.cohomology(1).unwrap().generators()[0].clone();
    let c = Chain::zero(&t3, 2).unwrap();
    assert!(matches!(t3.evaluate(&g, &c), Err(engelcov::Error::DegreeMismatch { .. })));
    let bad = SimplicialComplex::torus3().with_homology_basis(1, &engelcov::coordinate_loops()[..2]);
    assert!(matches!(bad, Err(engelcov::Error::InvalidHomologyBasis(_))));
}
