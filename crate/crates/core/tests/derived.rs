use gradalg::homology::*;
use gradalg::*;

fn ring(vars: &[&str]) -> RingRef {
    PolyRing::new(Field::Rationals, vars).unwrap()
}

fn quotient(r: &RingRef, gens: Vec<MultiPoly>) -> PresentedModule {
    PresentedModule::quotient(&Submodule::ideal(r, gens).unwrap()).unwrap()
}

#[test]
fn ext_of_residue_field() {
    let r = ring(&["x", "y"]);
    let k = quotient(&r, vec![r.var("x").unwrap(), r.var("y").unwrap()]);
    let a = PresentedModule::free(&r, vec![0]);
    let e2 = ext_module(2, &k, &a);
    assert_eq!(e2.graded_dims(-6, 6).unwrap().dims.into_iter().collect::<Vec<_>>(), vec![(-2, 1)]);
    assert!(ext_module(1, &k, &a).is_zero());
    assert!(ext_module(0, &k, &a).is_zero());
    let kk = ext_module(1, &k, &k);
    assert_eq!(kk.graded_dims(-4, 4).unwrap().dims.into_iter().collect::<Vec<_>>(), vec![(-1, 2)]);
}

#[test]
fn ext_vanishes_above_pd() {
    let r = ring(&["x", "y"]);
    let (x, y) = (r.var("x").unwrap(), r.var("y").unwrap());
    let m = quotient(&r, vec![&x * &x, &x * &y]);
    let n = quotient(&r, vec![y.clone()]);
    assert!(ext_module(3, &m, &n).is_zero());
    assert!(!ext_module(2, &m, &quotient(&r, vec![x.clone(), y.clone()])).is_zero());
}

#[test]
fn hom_from_free_is_identity() {
    let r = ring(&["x", "y"]);
    let (x, y) = (r.var("x").unwrap(), r.var("y").unwrap());
    let n = quotient(&r, vec![&x * &x, &x * &y]);
    let a = PresentedModule::free(&r, vec![0]);
    assert_eq!(ext_module(0, &a, &n).graded_dims(-2, 6).unwrap(), n.graded_dims(-2, 6).unwrap());
    assert_eq!(tor_module(0, &a, &n).graded_dims(-2, 6).unwrap(), n.graded_dims(-2, 6).unwrap());
    assert!(tor_module(1, &a, &n).is_zero());
}

#[test]
fn tor_of_residue_fields() {
    let r = ring(&["x", "y"]);
    let k = quotient(&r, vec![r.var("x").unwrap(), r.var("y").unwrap()]);
    let t1 = tor_module(1, &k, &k);
    assert_eq!(t1.graded_dims(-3, 5).unwrap().dims.into_iter().collect::<Vec<_>>(), vec![(1, 2)]);
    let t2 = tor_module(2, &k, &k);
    assert_eq!(t2.graded_dims(-3, 5).unwrap().dims.into_iter().collect::<Vec<_>>(), vec![(2, 1)]);
}

#[test]
fn series_and_polynomials() {
    let r = ring(&["x", "y"]);
    let (x, y) = (r.var("x").unwrap(), r.var("y").unwrap());
    let m = quotient(&r, vec![&x * &x, &x * &y]);
    let s = hilbert_series(&m).unwrap();
    assert_eq!((s.low, s.numerator.clone(), s.denominator_exponent), (0, vec![1, 0, -2, 1], 2));
    for d in 0..10 {
        assert_eq!(s.coefficient(d) as usize, m.graded_dims(d, d).unwrap().get(d));
    }
    assert_eq!(krull_dimension(&m).unwrap(), 1);
    assert_eq!(hilbert_polynomial(&m).unwrap().to_string(), "1");
    let a2 = PresentedModule::free(&r, vec![2]);
    let s2 = hilbert_series(&a2).unwrap();
    assert_eq!((s2.low, s2.numerator.clone()), (2, vec![1]));

    let r3 = ring(&["x0", "x1", "x2"]);
    let p = hilbert_polynomial(&PresentedModule::free(&r3, vec![0])).unwrap();
    for t in -5..10 {
        assert_eq!(p.eval(t) as i128, (t as i128 + 2) * (t as i128 + 1) / 2);
    }
    let pt = quotient(&r3, vec![r3.var_at(0), r3.var_at(1)]);
    assert_eq!(hilbert_polynomial(&pt).unwrap().coeffs, vec![1]);
    let k = quotient(&r3, vec![r3.var_at(0), r3.var_at(1), r3.var_at(2)]);
    assert_eq!(krull_dimension(&k).unwrap(), 0);
    assert!(hilbert_polynomial(&k).unwrap().is_zero());
}
