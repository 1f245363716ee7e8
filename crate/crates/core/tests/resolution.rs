use gradalg::homology::*;
use gradalg::*;

fn ring(vars: &[&str]) -> RingRef {
    PolyRing::new(Field::Rationals, vars).unwrap()
}

fn quotient(r: &RingRef, gens: Vec<MultiPoly>) -> PresentedModule {
    PresentedModule::quotient(&Submodule::ideal(r, gens).unwrap()).unwrap()
}

#[test]
fn residue_field_has_koszul_shape() {
    let r = ring(&["x", "y"]);
    let k = quotient(&r, vec![r.var("x").unwrap(), r.var("y").unwrap()]);
    let res = minimal_free_resolution(&k, 10);
    let tw: Vec<Vec<i64>> = res.modules().iter().map(|f| f.twists().to_vec()).collect();
    assert_eq!(tw, vec![vec![0], vec![1, 1], vec![2]]);
    assert!(res.is_complex());
    assert!(res.is_minimal());
}

#[test]
fn twisted_cubic_betti() {
    let r = ring(&["x", "y", "z", "w"]);
    let v = |s: &str| r.var(s).unwrap();
    let (x, y, z, w) = (v("x"), v("y"), v("z"), v("w"));
    let m = quotient(&r, vec![&x * &z - &y * &y, &x * &w - &y * &z, &y * &w - &z * &z]);
    let b = betti_table(&m);
    assert_eq!(b.ranks(), vec![1, 3, 2]);
    assert_eq!(b.get(1, 2), 3);
    assert_eq!(b.get(2, 3), 2);
}

#[test]
fn small_examples() {
    let r = ring(&["x", "y"]);
    let (x, y) = (r.var("x").unwrap(), r.var("y").unwrap());
    let m = quotient(&r, vec![&x * &x, &x * &y]);
    assert_eq!(projective_dimension(&m), 2);
    assert_eq!(betti_table(&m).ranks(), vec![1, 2, 1]);
    assert_eq!(projective_dimension(&PresentedModule::free(&r, vec![0, 3])), 0);
    let d = m.graded_dims(0, 3).unwrap();
    assert_eq!(d.dense(), vec![(0, 1), (1, 2), (2, 1), (3, 1)]);
    let a = PresentedModule::free(&r, vec![0]);
    assert_eq!(a.graded_dims(0, 2).unwrap().dense(), vec![(0, 1), (1, 2), (2, 3)]);
}

#[test]
fn koszul_in_four_variables() {
    let r = ring(&["a", "b", "c", "d"]);
    let gens = (0..4).map(|i| r.var_at(i)).collect();
    let k = quotient(&r, gens);
    assert_eq!(betti_table(&k).ranks(), vec![1, 4, 6, 4, 1]);
}
