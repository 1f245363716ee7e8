use gradalg::families::*;
use gradalg::homology::*;
use gradalg::local::LocalCohomologyConfig;
use gradalg::*;

fn family_ring(field: Field) -> RingRef {
    PolyRing::with_options(field, vec!["t".into(), "x0".into(), "x1".into()], vec![0, 1, 1], MonomialOrder::GrevLex).unwrap()
}

fn family(r: &RingRef, gens: Vec<MultiPoly>) -> FamilyModule {
    FamilyModule::quotient(&Submodule::ideal(r, gens).unwrap()).unwrap()
}

fn q(n: i64) -> Scalar {
    Field::Rationals.from_i64(n)
}

fn vars(r: &RingRef) -> (MultiPoly, MultiPoly, MultiPoly) {
    (r.var_at(0), r.var_at(1), r.var_at(2))
}

#[test]
fn flatness_examples() {
    let r = family_ring(Field::Rationals);
    let (t, x0, x1) = vars(&r);
    let line = family(&r, vec![&x0 - &(&t * &x1)]);
    assert!(flat_over_line(&line).unwrap().flat);

    let bad = family(&r, vec![&t * &x0, &t * &x1]);
    let rep = flat_over_line(&bad).unwrap();
    assert!(!rep.flat);
    let w = rep.torsion_witness.unwrap();
    assert_eq!(w.comps()[0], x0);
    assert!(!torsion_free_at(&bad, &q(0)).unwrap());
    assert!(torsion_free_at(&bad, &q(5)).unwrap());

    let free = FamilyModule::new(PresentedModule::free(&r, vec![0, 1])).unwrap();
    assert!(flat_over_line(&free).unwrap().flat);
}

#[test]
fn torsion_away_from_the_origin_is_found() {
    let r = family_ring(Field::Rationals);
    let (t, x0, x1) = vars(&r);
    let s = &t - &r.one();
    let fam = family(&r, vec![&s * &x0, &s * &x1]);
    assert!(torsion_free_at(&fam, &q(0)).unwrap());
    let rep = flat_over_line(&fam).unwrap();
    assert!(!rep.flat);
    assert_eq!(rep.generic_denominator, s);
}

#[test]
fn fiber_profiles() {
    let r = family_ring(Field::Rationals);
    let (t, x0, x1) = vars(&r);
    let pts: Vec<Scalar> = (0..4).map(q).collect();
    let line = family(&r, vec![&x0 - &(&t * &x1)]);
    let p = fiber_hilbert_profile(&line, &pts, 1).unwrap();
    assert_eq!(p.distinct_polynomials(), 1);
    assert_eq!(p.strata[0].0.to_string(), "1");
    assert_eq!(p.generic.to_string(), "1");

    let bad = family(&r, vec![&t * &x0, &t * &x1]);
    let p = fiber_hilbert_profile(&bad, &pts[..2], 1).unwrap();
    assert_eq!(p.distinct_polynomials(), 2);
    assert_eq!(p.samples[0].1.eval(7), 8);
    assert!(p.samples[1].1.is_zero());
    assert!(p.generic.is_zero());

    let double = family(&r, vec![&x0 * &x0]);
    let p = fiber_hilbert_profile(&double, &pts, 3).unwrap();
    assert_eq!(p.distinct_polynomials(), 1);
    assert_eq!(p.generic.to_string(), "2");

    assert!(matches!(fiber_hilbert_profile(&line, &[q(1), q(1)], 0), Err(Error::InvalidArgument(_))));
}

#[test]
fn flat_family_over_prime_field() {
    let f = Field::prime(10007).unwrap();
    let r = family_ring(f);
    let (t, x0, x1) = vars(&r);
    // a conic degenerating to a double line: every fiber has Hilbert polynomial 2s + 1
    let fam = family(&r, vec![&(&x0 * &x1) - &(&t * &(&x1 * &x1))]);
    assert!(flat_over_line(&fam).unwrap().flat);
    let pts: Vec<Scalar> = (0..5).map(|c| f.from_i64(c)).collect();
    let p = fiber_hilbert_profile(&fam, &pts, 9).unwrap();
    assert_eq!(p.distinct_polynomials(), 1);
    assert_eq!(p.generic.to_string(), "2");
}

#[test]
fn euler_characteristic_is_constant_on_flat_family() {
    let r = PolyRing::with_options(
        Field::Rationals,
        vec!["t".into(), "x0".into(), "x1".into(), "x2".into()],
        vec![0, 1, 1, 1],
        MonomialOrder::GrevLex,
    )
    .unwrap();
    let (t, x0, x1, x2) = (r.var_at(0), r.var_at(1), r.var_at(2), r.var_at(3));
    let conic = &(&x0 * &x1) - &(&t * &(&x2 * &x2));
    let fam = FamilyModule::quotient(&Submodule::ideal(&r, vec![conic]).unwrap()).unwrap();
    assert!(flat_over_line(&fam).unwrap().flat);
    let pts: Vec<Scalar> = (0..3).map(q).collect();
    for l in -3..=3 {
        let chi = fiber_euler_characteristics(&fam, &pts, l, &LocalCohomologyConfig::default()).unwrap();
        assert!(chi.values().all(|&v| v == 2 * l + 1), "{chi:?}");
    }
}

#[test]
fn hypersurface_polynomials() {
    assert_eq!(hypersurface_hilbert_polynomial(2, 2).unwrap().to_string(), "2*t + 1");
    let p = hypersurface_hilbert_polynomial(3, 2).unwrap();
    for s in -5..10 {
        assert_eq!(p.eval(s), (s + 1) * (s + 1));
    }
    let plane = hypersurface_hilbert_polynomial(3, 1).unwrap();
    for s in -5..10 {
        assert_eq!(plane.eval(s), (s + 2) * (s + 1) / 2);
    }
    let r = PolyRing::new(Field::Rationals, &["a", "b", "c"]).unwrap();
    let (a, b, c) = (r.var_at(0), r.var_at(1), r.var_at(2));
    let cubic = &(&(&a * &a) * &b) + &(&c * &(&c * &c));
    let m = PresentedModule::quotient(&Submodule::ideal(&r, vec![cubic]).unwrap()).unwrap();
    assert_eq!(hilbert_polynomial(&m).unwrap(), hypersurface_hilbert_polynomial(2, 3).unwrap());
    assert!(hypersurface_hilbert_polynomial(0, 2).is_err());
}
