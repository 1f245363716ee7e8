use gradalg::homology::*;
use gradalg::local::*;
use gradalg::*;

fn ring(vars: &[&str]) -> RingRef {
    PolyRing::new(Field::Rationals, vars).unwrap()
}

fn ideal(r: &RingRef, gens: Vec<MultiPoly>) -> Submodule {
    Submodule::ideal(r, gens).unwrap()
}

fn quotient(r: &RingRef, gens: Vec<MultiPoly>) -> PresentedModule {
    PresentedModule::quotient(&ideal(r, gens)).unwrap()
}

#[test]
fn h0_of_embedded_point() {
    let r = ring(&["x", "y"]);
    let (x, y) = (r.var("x").unwrap(), r.var("y").unwrap());
    let m = quotient(&r, vec![&x * &x, &x * &y]);
    let irr = Submodule::irrelevant_ideal(&r);
    let h0 = h0_local(&irr, &m).unwrap();
    assert_eq!(h0.graded_dims(-3, 6).unwrap().to_string(), "{1:1}");
    let lc = local_cohomology_dims(0, &irr, &m, -3, 6, &LocalCohomologyConfig::default()).unwrap();
    assert_eq!(lc.dims, h0.graded_dims(-3, 6).unwrap());
    let a = PresentedModule::free(&r, vec![0]);
    assert!(h0_local(&irr, &a).unwrap().is_zero());
    let unit = ideal(&r, vec![r.one()]);
    assert!(h0_local(&unit, &m).unwrap().is_zero());
    let zero = ideal(&r, vec![r.zero()]);
    assert_eq!(h0_local(&zero, &m).unwrap().graded_dims(0, 5).unwrap(), m.graded_dims(0, 5).unwrap());
}

#[test]
fn top_local_cohomology_of_plane() {
    let r = ring(&["x", "y"]);
    let a = PresentedModule::free(&r, vec![0]);
    let irr = Submodule::irrelevant_ideal(&r);
    let all = local_cohomology_all(&irr, &a, 3, -8, 8, &LocalCohomologyConfig::default()).unwrap();
    assert!(all[0].dims.is_zero() && all[1].dims.is_zero() && all[3].dims.is_zero());
    for d in -8..=8 {
        assert_eq!(all[2].dims.get(d) as i64, if d <= -2 { -d - 1 } else { 0 });
    }
}

#[test]
fn single_degree_windows_far_below_the_generators() {
    let r = ring(&["x", "y"]);
    let irr = Submodule::irrelevant_ideal(&r);
    let cfg = LocalCohomologyConfig::default();
    for d in [-8, -5, -2, 0] {
        let a = PresentedModule::free(&r, vec![0]);
        let lc = local_cohomology_dims(2, &irr, &a, d, d, &cfg).unwrap();
        assert_eq!(lc.dims.get(d) as i64, (-d - 1).max(0), "degree {d}");
    }
    // torsion in degree 0 only killed by x^10
    let (x, y) = (r.var("x").unwrap(), r.var("y").unwrap());
    let m = quotient(&r, vec![x.pow(10), y]);
    let lc = local_cohomology_dims(0, &irr, &m, 0, 0, &cfg).unwrap();
    assert_eq!(lc.dims.get(0), 1);
}

#[test]
fn depth_examples() {
    let r = ring(&["x", "y"]);
    let (x, y) = (r.var("x").unwrap(), r.var("y").unwrap());
    let irr = Submodule::irrelevant_ideal(&r);
    let a = PresentedModule::free(&r, vec![0]);
    let c = depth(&irr, &a, 7).unwrap();
    assert_eq!(c.depth_value, 2);
    assert!(c.complete);
    assert!(is_regular_sequence(&c.regular_sequence, &a).unwrap());
    let m = quotient(&r, vec![&x * &x, &x * &y]);
    assert_eq!(depth(&irr, &m, 7).unwrap().depth_value, 0);
    let cm = cm_test(&m).unwrap();
    assert_eq!((cm.is_cm, cm.depth, cm.dim), (false, 0, 1));
    assert!(cm_test(&a).unwrap().is_cm);
}

#[test]
fn two_planes_are_not_cm() {
    let r = ring(&["t1", "t2", "t3", "t4"]);
    let t = |i: usize| r.var_at(i);
    let m = quotient(&r, vec![t(0) * t(2), t(0) * t(3), t(1) * t(2), t(1) * t(3)]);
    let cm = cm_test(&m).unwrap();
    assert_eq!((cm.is_cm, cm.depth, cm.dim), (false, 1, 2));
}

#[test]
fn mayer_vietoris_on_axes() {
    let r = ring(&["x", "y"]);
    let (x, y) = (r.var("x").unwrap(), r.var("y").unwrap());
    let a = PresentedModule::free(&r, vec![0]);
    let rep = mayer_vietoris_check(&ideal(&r, vec![x]), &ideal(&r, vec![y]), &a, 2, -6, 6, &LocalCohomologyConfig::default()).unwrap();
    assert!(rep.fine);
    assert!(rep.holds(), "{rep:?}");
}

#[test]
fn local_duality_small() {
    let r = ring(&["x", "y"]);
    let (x, y) = (r.var("x").unwrap(), r.var("y").unwrap());
    let cfg = LocalCohomologyConfig::default();
    for m in [PresentedModule::free(&r, vec![0]), quotient(&r, vec![x.clone(), y.clone()]), quotient(&r, vec![&x * &x, &x * &y])] {
        for p in 0..=2 {
            let d = local_duality_defect(&m, p, -6, 6, &cfg).unwrap();
            assert!(d.is_empty(), "p={p} {d:?}");
        }
    }
}

#[test]
fn local_duality_weighted() {
    let r = PolyRing::with_options(Field::Rationals, vec!["x".into(), "y".into()], vec![1, 2], MonomialOrder::GrevLex).unwrap();
    let (x, y) = (r.var("x").unwrap(), r.var("y").unwrap());
    let cfg = LocalCohomologyConfig::default();
    let cusp = &(&y * &y) - &(&x * &(&x * &(&x * &x)));
    for m in [PresentedModule::free(&r, vec![0]), quotient(&r, vec![cusp]), quotient(&r, vec![&x * &x, &x * &y])] {
        for p in 0..=2 {
            let d = local_duality_defect(&m, p, -4, 4, &cfg).unwrap();
            assert!(d.is_empty(), "p={p} {d:?}");
        }
    }
}
