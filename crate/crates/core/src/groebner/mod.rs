//! Groebner bases of submodules of free modules, normal forms, syzygies, and ideal arithmetic.

mod buchberger;
mod ideal;
pub(crate) mod schreyer;
pub(crate) mod vector;

use crate::error::{Error, Result};
use crate::monomial::{ModuleOrder, Monomial};
use crate::poly::{MultiPoly, RingRef};

pub use ideal::{colon, colon_element, ideal_intersection, module_intersection, saturation, SaturationResult};

pub(crate) use buchberger::{groebner, satisfies_buchberger_criterion};
pub(crate) use vector::{Divider, SVec, Term, TermOrder};

/// An element of the free module `A^rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeElement {
    ring: RingRef,
    comps: Vec<MultiPoly>,
}

impl FreeElement {
    pub fn new(ring: &RingRef, comps: Vec<MultiPoly>) -> Result<Self> {
        if comps.iter().any(|p| p.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(FreeElement { ring: ring.clone(), comps })
    }

    pub fn zero(ring: &RingRef, rank: usize) -> Self {
        FreeElement { ring: ring.clone(), comps: vec![ring.zero(); rank] }
    }

    pub fn basis_vector(ring: &RingRef, rank: usize, i: usize) -> Self {
        let mut e = Self::zero(ring, rank);
        e.comps[i] = ring.one();
        e
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[MultiPoly] {
        &self.comps
    }

    pub fn into_comps(self) -> Vec<MultiPoly> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn scale_by(&self, f: &MultiPoly) -> FreeElement {
        FreeElement { ring: self.ring.clone(), comps: self.comps.iter().map(|c| c * f).collect() }
    }

    pub fn add(&self, other: &FreeElement) -> Result<FreeElement> {
        if other.rank() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), found: other.rank() });
        }
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.try_add(b)).collect::<Result<_>>()?;
        Ok(FreeElement { ring: self.ring.clone(), comps })
    }

    pub fn sub(&self, other: &FreeElement) -> Result<FreeElement> {
        if other.rank() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), found: other.rank() });
        }
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.try_sub(b)).collect::<Result<_>>()?;
        Ok(FreeElement { ring: self.ring.clone(), comps })
    }

    pub(crate) fn to_svec<O: TermOrder>(&self, ord: &O) -> SVec {
        SVec::from_column(&self.comps, ord)
    }

    pub(crate) fn from_svec(ring: &RingRef, rank: usize, v: &SVec) -> Self {
        FreeElement { ring: ring.clone(), comps: v.to_column(ring, rank) }
    }
}

/// A submodule of `A^ambient_rank` given by generators. Ideals have rank one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    ring: RingRef,
    ambient_rank: usize,
    generators: Vec<FreeElement>,
}

impl Submodule {
    pub fn new(ring: &RingRef, ambient_rank: usize, generators: Vec<FreeElement>) -> Result<Self> {
        for g in &generators {
            if g.rank() != ambient_rank {
                return Err(Error::RankMismatch { expected: ambient_rank, found: g.rank() });
            }
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Submodule { ring: ring.clone(), ambient_rank, generators })
    }

    pub fn ideal(ring: &RingRef, gens: Vec<MultiPoly>) -> Result<Self> {
        let generators = gens
            .into_iter()
            .map(|g| FreeElement::new(ring, vec![g]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, 1, generators)
    }

    /// The ideal generated by all variables.
    pub fn irrelevant_ideal(ring: &RingRef) -> Self {
        Self::ideal(ring, (0..ring.nvars()).map(|i| ring.var_at(i)).collect()).unwrap()
    }

    pub fn zero(ring: &RingRef, ambient_rank: usize) -> Self {
        Submodule { ring: ring.clone(), ambient_rank, generators: Vec::new() }
    }

    pub fn whole(ring: &RingRef, ambient_rank: usize) -> Self {
        let gens = (0..ambient_rank).map(|i| FreeElement::basis_vector(ring, ambient_rank, i)).collect();
        Submodule { ring: ring.clone(), ambient_rank, generators: gens }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[FreeElement] {
        &self.generators
    }

    pub fn is_ideal(&self) -> bool {
        self.ambient_rank == 1
    }

    /// Generators of an ideal as polynomials.
    pub fn ideal_generators(&self) -> Result<Vec<MultiPoly>> {
        if !self.is_ideal() {
            return Err(Error::NotAnIdeal(self.ambient_rank));
        }
        Ok(self.generators.iter().map(|g| g.comps()[0].clone()).collect())
    }

    pub(crate) fn svecs<O: TermOrder>(&self, ord: &O) -> Vec<SVec> {
        self.generators.iter().map(|g| g.to_svec(ord)).collect()
    }

    pub(crate) fn from_svecs(ring: &RingRef, rank: usize, vs: &[SVec]) -> Self {
        let generators = vs.iter().filter(|v| !v.is_zero()).map(|v| FreeElement::from_svec(ring, rank, v)).collect();
        Submodule { ring: ring.clone(), ambient_rank: rank, generators }
    }

    fn check_compatible(&self, other: &Submodule) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::RankMismatch { expected: self.ambient_rank, found: other.ambient_rank });
        }
        Ok(())
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_submodule(&self, other: &Submodule) -> Result<bool> {
        self.check_compatible(other)?;
        let gb = groebner_basis(self, ModuleOrder::default());
        for g in other.generators() {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as submodules (double inclusion).
    pub fn same_submodule(&self, other: &Submodule) -> Result<bool> {
        Ok(self.contains_submodule(other)? && other.contains_submodule(self)?)
    }

    pub fn is_zero(&self) -> bool {
        self.generators.iter().all(|g| g.is_zero())
    }

    /// Sum of two submodules of the same free module.
    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        self.check_compatible(other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Submodule::new(&self.ring, self.ambient_rank, gens)
    }

    /// `f * N`.
    pub fn scaled(&self, f: &MultiPoly) -> Submodule {
        let gens = self.generators.iter().map(|g| g.scale_by(f)).collect();
        Submodule { ring: self.ring.clone(), ambient_rank: self.ambient_rank, generators: gens }
    }

    /// `I * N` for an ideal `I`.
    pub fn product(&self, ideal: &Submodule) -> Result<Submodule> {
        let fs = ideal.ideal_generators()?;
        let mut gens = Vec::new();
        for f in &fs {
            for g in &self.generators {
                gens.push(g.scale_by(f));
            }
        }
        Submodule::new(&self.ring, self.ambient_rank, gens)
    }
}

/// A reduced Groebner basis with respect to a module order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    submodule: Submodule,
    basis: Vec<FreeElement>,
    order: ModuleOrder,
    internal: Vec<SVec>,
}

impl GroebnerBasis {
    pub fn submodule(&self) -> &Submodule {
        &self.submodule
    }

    pub fn basis(&self) -> &[FreeElement] {
        &self.basis
    }

    pub fn order(&self) -> ModuleOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Lead terms `(monomial, component)` of the basis elements.
    pub fn lead_terms(&self) -> Vec<(Monomial, usize)> {
        self.internal.iter().map(|v| (v.terms[0].mono.clone(), v.terms[0].comp)).collect()
    }

    pub(crate) fn internal(&self) -> &[SVec] {
        &self.internal
    }

    pub fn normal_form(&self, v: &FreeElement) -> Result<FreeElement> {
        if v.rank() != self.submodule.ambient_rank {
            return Err(Error::RankMismatch { expected: self.submodule.ambient_rank, found: v.rank() });
        }
        if v.ring() != self.submodule.ring() {
            return Err(Error::RingMismatch);
        }
        let div = Divider::new(&self.internal, &self.order);
        let r = div.reduce(&v.to_svec(&self.order), None);
        Ok(FreeElement::from_svec(self.submodule.ring(), v.rank(), &r))
    }

    pub fn contains(&self, v: &FreeElement) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    /// Post hoc check that all S-vectors reduce to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        satisfies_buchberger_criterion(&self.internal, &self.order)
    }
}

/// Reduced Groebner basis of `n`; deterministic for fixed input and order.
pub fn groebner_basis(n: &Submodule, order: ModuleOrder) -> GroebnerBasis {
    let gens = n.svecs(&order);
    let res = groebner(&gens, &order, n.is_ideal(), false);
    let basis = res.basis.iter().map(|v| FreeElement::from_svec(n.ring(), n.ambient_rank(), v)).collect();
    GroebnerBasis { submodule: n.clone(), basis, order, internal: res.basis }
}

/// Generators of the syzygies of `gens` (vectors in `A^gens.len()`, sorted by the default
/// module order).
///
/// Builds a Groebner basis while tracking each element's expression in the inputs, lifts the
/// Schreyer syzygies of that basis, and adds the relations expressing each input through it.
pub(crate) fn syzygies_of<O: TermOrder>(ring: &RingRef, gens: &[SVec], ord: &O, ideal_case: bool) -> Vec<SVec> {
    let out = ModuleOrder::default();
    let one = ring.field().one();
    let unit = Monomial::one(ring.nvars());
    let res = groebner(gens, ord, ideal_case, true);
    let reps = res.reps.expect("tracked");
    let mut result: Vec<SVec> = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        if g.is_zero() {
            result.push(SVec { terms: vec![Term { mono: unit.clone(), comp: k, coeff: one.clone() }] });
        }
    }
    let gb_syz = schreyer::gb_syzygies(&res.basis, ord, &out);
    for s in &gb_syz {
        let mut acc = SVec::zero();
        for t in &s.terms {
            acc = acc.sub_mul(&t.coeff.neg(), &t.mono, &reps[t.comp], &out);
        }
        if !acc.is_zero() {
            result.push(acc);
        }
    }
    let div = Divider::new(&res.basis, ord);
    for (k, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut qs = Vec::new();
        let r = div.reduce(g, Some(&mut qs));
        debug_assert!(r.is_zero());
        let mut acc = SVec { terms: vec![Term { mono: unit.clone(), comp: k, coeff: one.clone() }] };
        for q in qs {
            acc = acc.sub_mul(&q.coeff, &q.mono, &reps[q.index], &out);
        }
        if !acc.is_zero() {
            result.push(acc);
        }
    }
    dedup(result)
}

fn dedup(mut vs: Vec<SVec>) -> Vec<SVec> {
    for v in vs.iter_mut() {
        v.make_monic();
    }
    let mut out: Vec<SVec> = Vec::new();
    for v in vs {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Generators of the module of relations among the generators of `n`.
pub fn syzygies(n: &Submodule, order: ModuleOrder) -> Submodule {
    let m = n.generators().len();
    let ring = n.ring();
    if n.generators().iter().all(|g| g.is_zero()) {
        return Submodule::whole(ring, m);
    }
    let gens = n.svecs(&order);
    let syz = syzygies_of(ring, &gens, &order, n.is_ideal());
    Submodule::from_svecs(ring, m, &syz)
}
