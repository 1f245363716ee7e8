//! Randomised checks of structural identities across the engine.

use gradalg::groebner::{colon, ideal_intersection, saturation};
use gradalg::homology::*;
use gradalg::local::*;
use gradalg::projective::*;
use gradalg::*;
use proptest::prelude::*;

fn ring3() -> RingRef {
    PolyRing::new(Field::Rationals, &["x", "y", "z"]).unwrap()
}

/// A form of degree `d` with the given exponent choices and coefficients.
fn form(r: &RingRef, d: u16, picks: &[(u16, i64)]) -> MultiPoly {
    let terms = picks
        .iter()
        .map(|&(a, c)| {
            let a = a % (d + 1);
            let b = (a * 7 + c.unsigned_abs() as u16) % (d - a + 1);
            (Monomial::from_exponents(&[a, b, d - a - b]), r.field().from_i64(c))
        })
        .collect();
    MultiPoly::from_terms(r, terms)
}

fn arb_ideal() -> impl Strategy<Value = Vec<MultiPoly>> {
    let gen = (1u16..=3, prop::collection::vec((0u16..4, prop_oneof![-2i64..=-1, 1i64..=2]), 1..=3));
    prop::collection::vec(gen, 1..=3).prop_map(|gs| {
        let r = ring3();
        gs.iter().map(|(d, p)| form(&r, *d, p)).filter(|f| !f.is_zero()).collect()
    })
}

fn quotient_of(gens: &[MultiPoly]) -> Option<PresentedModule> {
    let r = gens.first()?.ring().clone();
    Some(PresentedModule::quotient(&Submodule::ideal(&r, gens.to_vec()).unwrap()).unwrap())
}

fn columns_submodule(r: &RingRef, m: &GradedMap) -> Submodule {
    let gens = m.columns().into_iter().map(|c| FreeElement::new(r, c).unwrap()).collect();
    Submodule::new(r, m.nrows(), gens).unwrap()
}

/// Curves of higher degree need more powers before `H^1` settles in very negative degrees.
fn cfg() -> LocalCohomologyConfig {
    LocalCohomologyConfig { power_cap: 24, ..LocalCohomologyConfig::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn groebner_laws(gens in arb_ideal(), extra in arb_ideal()) {
        prop_assume!(!gens.is_empty() && !extra.is_empty());
        let r = ring3();
        let i = Submodule::ideal(&r, gens.clone()).unwrap();
        let j = Submodule::ideal(&r, extra.clone()).unwrap();
        let gb = groebner_basis(&i, ModuleOrder::default());
        let f = FreeElement::new(&r, vec![&(&extra[0] * &r.var_at(0)) + &gens[0]]).unwrap();
        let g = FreeElement::new(&r, vec![extra[0].clone()]).unwrap();
        let nf = gb.normal_form(&f).unwrap();
        prop_assert_eq!(gb.normal_form(&nf).unwrap(), nf.clone());
        let lin = gb.normal_form(&f.add(&g).unwrap()).unwrap();
        prop_assert_eq!(lin, nf.add(&gb.normal_form(&g).unwrap()).unwrap());

        let cap = ideal_intersection(&i, &j).unwrap();
        prop_assert!(i.contains_submodule(&cap).unwrap());
        prop_assert!(j.contains_submodule(&cap).unwrap());
        prop_assert!(cap.contains_submodule(&i.product(&j).unwrap()).unwrap());

        let sat = saturation(&i, &Submodule::irrelevant_ideal(&r)).unwrap().saturation;
        prop_assert!(sat.contains_submodule(&i).unwrap());
        let again = colon(&sat, &Submodule::irrelevant_ideal(&r)).unwrap();
        prop_assert!(again.same_submodule(&sat).unwrap());
    }

    #[test]
    fn resolutions_are_exact_and_minimal(gens in arb_ideal()) {
        let Some(m) = quotient_of(&gens) else { return Ok(()) };
        let r = m.ring().clone();
        let res = minimal_free_resolution(&m, 10);
        prop_assert!(res.is_complex());
        prop_assert!(res.is_minimal());
        prop_assert!(res.length() <= r.nvars());
        for map in res.maps() {
            for col in map.columns() {
                for e in col {
                    prop_assert!(!(e.is_constant() && !e.is_zero()));
                }
            }
        }
        for i in 1..res.maps().len() {
            let image = columns_submodule(&r, &res.maps()[i - 1]);
            let syz = syzygies(&image, ModuleOrder::default());
            let next = columns_submodule(&r, &res.maps()[i]);
            prop_assert!(syz.same_submodule(&next).unwrap());
        }
        if let Some(last) = res.maps().last() {
            let image = columns_submodule(&r, last);
            prop_assert!(syzygies(&image, ModuleOrder::default()).is_zero());
        }
    }

    #[test]
    fn hilbert_data_matches_graded_pieces(gens in arb_ideal()) {
        let Some(m) = quotient_of(&gens) else { return Ok(()) };
        let series = hilbert_series(&m).unwrap();
        let dims = m.graded_dims(-2, 12).unwrap();
        for d in -2..=12 {
            prop_assert_eq!(series.coefficient(d), dims.get(d) as i64, "degree {}", d);
        }
        let phi = hilbert_polynomial(&m).unwrap();
        let top = betti_table(&m).entries.keys().map(|&(_, j)| j).max().unwrap_or(0);
        for l in top..=top + 4 {
            prop_assert_eq!(phi.eval(l), m.graded_dims(l, l).unwrap().get(l) as i64);
        }
    }

    #[test]
    fn projective_dimension_is_detected_by_ext(gens in arb_ideal()) {
        let Some(m) = quotient_of(&gens) else { return Ok(()) };
        let r = m.ring().clone();
        let k = PresentedModule::quotient(&Submodule::irrelevant_ideal(&r)).unwrap();
        let pd = projective_dimension(&m);
        prop_assert!(!ext_module(pd, &m, &k).is_zero());
        for p in pd + 1..=r.nvars() + 1 {
            prop_assert!(ext_module(p, &m, &k).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn local_cohomology_and_depth_agree(gens in arb_ideal()) {
        let Some(m) = quotient_of(&gens) else { return Ok(()) };
        let r = m.ring().clone();
        let irr = Submodule::irrelevant_ideal(&r);
        let lc = local_cohomology_all(&irr, &m, 3, -6, 6, &cfg()).unwrap();
        let h0 = h0_local(&irr, &m).unwrap();
        prop_assert_eq!(&lc[0].dims, &h0.graded_dims(-6, 6).unwrap());
        let cert = depth(&irr, &m, 11).unwrap();
        prop_assert!(cert.complete);
        prop_assert_eq!(cert.regular_sequence.len(), cert.depth_value);
        prop_assert!(is_regular_sequence(&cert.regular_sequence, &m).unwrap());
        for p in 0..cert.depth_value {
            prop_assert!(lc[p].dims.is_zero());
        }
        // the window may miss the support, so only check when it is not empty
        let first = lc.iter().position(|x| !x.dims.is_zero());
        if let Some(first) = first {
            prop_assert_eq!(first, cert.depth_value);
        }
        for p in 0..=3 {
            prop_assert!(local_duality_defect(&m, p, -4, 4, &cfg()).unwrap().is_empty());
        }
    }

    #[test]
    fn sheaf_cohomology_identities(gens in arb_ideal()) {
        let Some(m) = quotient_of(&gens) else { return Ok(()) };
        let phi = hilbert_polynomial(&m).unwrap();
        let t = sheaf_cohomology_table(&m, -6, 6, &cfg()).unwrap();
        for l in -6..=6 {
            prop_assert_eq!(t.euler_characteristic(l), phi.eval(l), "l = {}", l);
            for p in 1..=2 {
                prop_assert_eq!(t.get(p, l), serre_dual_dim(&m, p, l).unwrap());
            }
        }
        if krull_dimension(&m).unwrap() >= 2 {
            let reg = regularity(&m, &cfg()).unwrap();
            let upper = betti_table(&m).max_shifted_degree().unwrap();
            prop_assert!(reg <= upper);
            for j in 0..=5 {
                prop_assert!(is_m_regular(&m, reg + j, &cfg()).unwrap());
            }
            prop_assert!(!is_m_regular(&m, reg - 1, &cfg()).unwrap());
        }
    }
}

#[test]
fn top_cohomology_of_free_modules_is_dual_hilbert_polynomial() {
    let r = ring3();
    for d in [-1i64, 0, 1] {
        let m = PresentedModule::free(&r, vec![d]);
        let phi = hilbert_polynomial(&m).unwrap();
        let t = sheaf_cohomology_table(&m, -8, -4, &cfg()).unwrap();
        for l in -8..=-4 {
            assert_eq!(t.get(2, l) as i64, phi.eval(l));
        }
    }
}

