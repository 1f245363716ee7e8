//! Families of graded modules over the affine line.
//!
//! A family lives over `k[t, x_0..x_n]` with `t` of weight 0. Flatness over `k[t]` is
//! torsion-freeness; fibers are obtained by substituting `t = c`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::groebner::{colon_element, groebner_basis, FreeElement, Submodule};
use crate::homology::{binom, hilbert_polynomial, GradedFreeModule, GradedMap, NumericalPolynomial, PresentedModule};
use crate::local::LocalCohomologyConfig;
use crate::monomial::{ModuleOrder, Monomial, MonomialOrder};
use crate::poly::{MultiPoly, PolyRing, RingRef};
use crate::projective::sheaf_cohomology_table;

/// A module over `k[t, x_0..x_n]`, variable 0 being the parameter `t`.
#[derive(Clone, Debug)]
pub struct FamilyModule {
    base: PresentedModule,
    fiber_ring: RingRef,
}

impl FamilyModule {
    pub fn new(base: PresentedModule) -> Result<Self> {
        let ring = base.ring();
        let w = ring.weights();
        if w.len() < 2 || w[0] != 0 || w[1..].iter().any(|&x| x != 1) {
            return Err(Error::InvalidRing("a family needs weights (0, 1, ..., 1)".into()));
        }
        let xs: Vec<String> = ring.vars()[1..].to_vec();
        let fiber_ring = PolyRing::with_options(ring.field(), xs, vec![1; w.len() - 1], MonomialOrder::GrevLex)?;
        Ok(FamilyModule { base, fiber_ring })
    }

    /// `k[t, xs] / I`.
    pub fn quotient(ideal: &Submodule) -> Result<Self> {
        let target = GradedFreeModule::new(vec![0]);
        Self::new(PresentedModule::from_submodule(target, ideal)?)
    }

    pub fn base(&self) -> &PresentedModule {
        &self.base
    }

    pub fn ring(&self) -> &RingRef {
        self.base.ring()
    }

    pub fn fiber_ring(&self) -> &RingRef {
        &self.fiber_ring
    }

    pub fn parameter(&self) -> MultiPoly {
        self.ring().var_at(0)
    }

    /// The fiber `M / (t - c) M` as a module over `k[xs]`.
    pub fn fiber(&self, c: &Scalar) -> Result<PresentedModule> {
        let ring = self.ring();
        if !ring.field().contains(c) {
            return Err(Error::RingMismatch);
        }
        let map: Vec<Option<usize>> = std::iter::once(None).chain((0..self.fiber_ring.nvars()).map(Some)).collect();
        let pres = self.base.presentation();
        let cols: Vec<Vec<MultiPoly>> = pres
            .columns()
            .into_iter()
            .map(|col| col.iter().map(|f| f.substitute_indices(&[(0, c.clone())]).transport(&self.fiber_ring, &map)).collect())
            .filter(|col: &Vec<MultiPoly>| col.iter().any(|f| !f.is_zero()))
            .collect();
        let target = GradedFreeModule::new(pres.target().twists().to_vec());
        Ok(PresentedModule::new(GradedMap::from_columns(&self.fiber_ring, target, cols)?))
    }
}

#[derive(Clone, Debug)]
pub struct FlatnessReport {
    pub flat: bool,
    /// A nonzero torsion class, given by a representative in the cover.
    pub torsion_witness: Option<FreeElement>,
    /// A nonzero `h` in `k[t]` such that `M_h` is free over `k[t]_h`.
    pub generic_denominator: MultiPoly,
}

/// Leading `k[t]`-coefficient of `v`, where `t` is the last variable and the order compares
/// the remaining variables first.
fn lead_coefficient(v: &FreeElement, ord: ModuleOrder) -> Option<MultiPoly> {
    let ring = v.ring();
    let k = ring.nvars() - 1;
    let x_part = |m: &Monomial| {
        let mut e = m.exponents().to_vec();
        e[k] = 0;
        Monomial::from_exponents(&e)
    };
    let mut best: Option<(Monomial, usize)> = None;
    for (i, f) in v.comps().iter().enumerate() {
        for (m, _) in f.terms() {
            let x = x_part(m);
            if best.as_ref().map_or(true, |(bx, bi)| ord.cmp_terms(&x, i, bx, *bi).is_gt()) {
                best = Some((x, i));
            }
        }
    }
    let (x, i) = best?;
    let terms = v.comps()[i]
        .terms()
        .iter()
        .filter(|(m, _)| x_part(m) == x)
        .map(|(m, c)| (x.quotient_of(m).expect("x part divides"), c.clone()))
        .collect();
    Some(MultiPoly::from_terms(ring, terms))
}

fn lead_term(v: &FreeElement, ord: ModuleOrder) -> (Monomial, usize) {
    let mut best: Option<(Monomial, usize)> = None;
    for (i, f) in v.comps().iter().enumerate() {
        for (m, _) in f.terms() {
            if best.as_ref().map_or(true, |(bm, bi)| ord.cmp_terms(m, i, bm, *bi).is_gt()) {
                best = Some((m.clone(), i));
            }
        }
    }
    best.expect("nonzero element")
}

/// Flatness over `k[t]`, that is, absence of `k[t]`-torsion.
pub fn flat_over_line(f: &FamilyModule) -> Result<FlatnessReport> {
    let ring = f.ring();
    let nv = ring.nvars();
    let n = f.base.relations();
    let mut h = ring.one();
    if !n.is_zero() {
        // move t last so that eliminating the first block compares the x part first
        let mut vars: Vec<String> = ring.vars()[1..].to_vec();
        vars.push(ring.vars()[0].clone());
        let mut weights = vec![1; nv - 1];
        weights.push(0);
        let moved = PolyRing::with_options(ring.field(), vars, weights, MonomialOrder::GrevLex)?;
        let fwd: Vec<Option<usize>> = std::iter::once(Some(nv - 1)).chain((0..nv - 1).map(Some)).collect();
        let back: Vec<Option<usize>> = (1..nv).map(Some).chain(std::iter::once(Some(0))).collect();
        let gens = n
            .generators()
            .iter()
            .map(|g| FreeElement::new(&moved, g.comps().iter().map(|p| p.transport(&moved, &fwd)).collect()))
            .collect::<Result<Vec<_>>>()?;
        let sub = Submodule::new(&moved, n.ambient_rank(), gens)?;
        let ord = ModuleOrder::TermOverPosition(MonomialOrder::Elimination(nv - 1));
        let gb = groebner_basis(&sub, ord);
        let mut seen: Vec<MultiPoly> = Vec::new();
        for g in gb.basis() {
            if let Some(c) = lead_coefficient(g, ord) {
                let c = c.transport(ring, &back).make_monic();
                if !c.is_constant() && !seen.contains(&c) {
                    h = &h * &c;
                    seen.push(c);
                }
            }
        }
    }
    h = h.make_monic();
    if h.is_constant() {
        return Ok(FlatnessReport { flat: true, torsion_witness: None, generic_denominator: h });
    }
    let col = colon_element(&n, &h)?;
    let gb = groebner_basis(&n, ModuleOrder::default());
    let mut witnesses = Vec::new();
    for g in col.generators() {
        let w = gb.normal_form(g)?;
        if !w.is_zero() {
            witnesses.push(w);
        }
    }
    let ord = ModuleOrder::default();
    let witness = witnesses.into_iter().max_by(|a, b| {
        let (la, lb) = (lead_term(a, ord), lead_term(b, ord));
        ord.cmp_terms(&la.0, la.1, &lb.0, lb.1)
    });
    Ok(FlatnessReport { flat: witness.is_none(), torsion_witness: witness, generic_denominator: h })
}

/// Whether `t - c` is a nonzerodivisor on the family.
pub fn torsion_free_at(f: &FamilyModule, c: &Scalar) -> Result<bool> {
    let ring = f.ring();
    let lin = &f.parameter() - &ring.constant(c.clone());
    let n = f.base.relations();
    n.contains_submodule(&colon_element(&n, &lin)?)
}

#[derive(Clone, Debug)]
pub struct FiberProfile {
    pub samples: Vec<(Scalar, NumericalPolynomial)>,
    /// Sample points grouped by Hilbert polynomial, in order of first appearance.
    pub strata: Vec<(NumericalPolynomial, Vec<Scalar>)>,
    /// The Hilbert polynomial at three random parameter values, which agreed.
    pub generic: NumericalPolynomial,
    pub generic_points: Vec<Scalar>,
}

impl FiberProfile {
    pub fn distinct_polynomials(&self) -> usize {
        self.strata.len()
    }
}

fn random_parameter(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        Field::Rationals => {
            let num = BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000));
            let den = BigInt::from(rng.gen_range(1i64..=997));
            field.from_ratio(&num, &den).expect("nonzero denominator")
        }
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
    }
}

pub fn fiber_hilbert_polynomial(f: &FamilyModule, c: &Scalar) -> Result<NumericalPolynomial> {
    hilbert_polynomial(&f.fiber(c)?)
}

pub fn fiber_hilbert_profile(f: &FamilyModule, points: &[Scalar], seed: u64) -> Result<FiberProfile> {
    for (i, c) in points.iter().enumerate() {
        if points[..i].contains(c) {
            return Err(Error::InvalidArgument(format!("repeated sample point {c}")));
        }
    }
    let mut samples = Vec::with_capacity(points.len());
    let mut strata: Vec<(NumericalPolynomial, Vec<Scalar>)> = Vec::new();
    for c in points {
        let phi = fiber_hilbert_polynomial(f, c)?;
        match strata.iter_mut().find(|(p, _)| *p == phi) {
            Some((_, pts)) => pts.push(c.clone()),
            None => strata.push((phi.clone(), vec![c.clone()])),
        }
        samples.push((c.clone(), phi));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let generic_points: Vec<Scalar> = (0..3).map(|_| random_parameter(f.ring().field(), &mut rng)).collect();
    let mut generic: Option<NumericalPolynomial> = None;
    for c in &generic_points {
        let phi = fiber_hilbert_polynomial(f, c)?;
        match &generic {
            None => generic = Some(phi),
            Some(g) if *g != phi => {
                return Err(Error::GenericFiberDisagreement(format!("{g} versus {phi} at t = {c}")));
            }
            _ => {}
        }
    }
    Ok(FiberProfile { samples, strata, generic: generic.unwrap(), generic_points })
}

/// `χ(M_c~(l))` for each sample point `c`.
pub fn fiber_euler_characteristics(f: &FamilyModule, points: &[Scalar], l: i64, cfg: &LocalCohomologyConfig) -> Result<BTreeMap<String, i64>> {
    let mut out = BTreeMap::new();
    for c in points {
        let t = sheaf_cohomology_table(&f.fiber(c)?, l, l, cfg)?;
        out.insert(c.to_string(), t.euler_characteristic(l));
    }
    Ok(out)
}

/// `C(n + t, n) - C(n - d + t, n)`, the Hilbert polynomial of a degree `d` hypersurface in `P^n`.
pub fn hypersurface_hilbert_polynomial(n: i64, d: i64) -> Result<NumericalPolynomial> {
    if n < 1 || d < 1 {
        return Err(Error::InvalidArgument(format!("need n >= 1 and d >= 1, got n = {n}, d = {d}")));
    }
    let values: Vec<i128> = (0..=n).map(|t| binom(n + t, n) - binom(n - d + t, n)).collect();
    Ok(NumericalPolynomial::from_values(&values))
}
