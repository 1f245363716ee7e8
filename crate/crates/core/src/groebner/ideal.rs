//! Colon, intersection and saturation of submodules.

use crate::error::{Error, Result};
use crate::monomial::ModuleOrder;
use crate::poly::MultiPoly;

use super::vector::{SVec, Term};
use super::{groebner_basis, syzygies_of, FreeElement, Submodule};

/// Replace generators by a reduced Groebner basis (zero generators dropped).
fn tidy(n: Submodule) -> Submodule {
    let gb = groebner_basis(&n, ModuleOrder::default());
    Submodule::from_svecs(n.ring(), n.ambient_rank(), gb.internal())
}

/// `N : f = { v : f v in N }`.
pub fn colon_element(n: &Submodule, f: &MultiPoly) -> Result<Submodule> {
    if f.ring() != n.ring() {
        return Err(Error::RingMismatch);
    }
    let ring = n.ring();
    let r = n.ambient_rank();
    if f.is_zero() {
        return Ok(Submodule::whole(ring, r));
    }
    let ord = ModuleOrder::default();
    let mut cols: Vec<SVec> = (0..r).map(|i| FreeElement::basis_vector(ring, r, i).scale_by(f).to_svec(&ord)).collect();
    cols.extend(n.svecs(&ord));
    let syz = syzygies_of(ring, &cols, &ord, n.is_ideal());
    let proj: Vec<SVec> = syz.iter().map(|s| s.restrict(0..r)).collect();
    Ok(tidy(Submodule::from_svecs(ring, r, &proj)))
}

/// `N : I = { v : I v in N }`.
pub fn colon(n: &Submodule, ideal: &Submodule) -> Result<Submodule> {
    if ideal.ring() != n.ring() {
        return Err(Error::RingMismatch);
    }
    let fs = ideal.ideal_generators()?;
    let mut acc = Submodule::whole(n.ring(), n.ambient_rank());
    for f in fs.iter().filter(|f| !f.is_zero()) {
        let c = colon_element(n, f)?;
        acc = module_intersection(&acc, &c)?;
    }
    Ok(acc)
}

/// `N1 ∩ N2` inside a common free module.
pub fn module_intersection(a: &Submodule, b: &Submodule) -> Result<Submodule> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    if a.ambient_rank() != b.ambient_rank() {
        return Err(Error::RankMismatch { expected: a.ambient_rank(), found: b.ambient_rank() });
    }
    let ring = a.ring();
    let r = a.ambient_rank();
    if a.is_zero() || b.is_zero() {
        return Ok(Submodule::zero(ring, r));
    }
    let ord = ModuleOrder::default();
    let ga = a.svecs(&ord);
    let mut cols = ga.clone();
    cols.extend(b.svecs(&ord));
    let syz = syzygies_of(ring, &cols, &ord, a.is_ideal());
    let ka = ga.len();
    let mut out = Vec::new();
    for s in &syz {
        let mut v = SVec::zero();
        for Term { mono, comp, coeff } in &s.terms {
            if *comp < ka {
                v = v.sub_mul(&coeff.neg(), mono, &ga[*comp], &ord);
            }
        }
        if !v.is_zero() {
            out.push(v);
        }
    }
    Ok(tidy(Submodule::from_svecs(ring, r, &out)))
}

pub fn ideal_intersection(a: &Submodule, b: &Submodule) -> Result<Submodule> {
    a.ideal_generators()?;
    b.ideal_generators()?;
    module_intersection(a, b)
}

/// `N : I^∞` together with the number of colon steps taken to stabilise.
#[derive(Clone, Debug)]
pub struct SaturationResult {
    pub saturation: Submodule,
    pub steps: usize,
}

pub fn saturation(n: &Submodule, ideal: &Submodule) -> Result<SaturationResult> {
    let mut cur = tidy(n.clone());
    let mut steps = 0;
    loop {
        let next = colon(&cur, ideal)?;
        steps += 1;
        if cur.contains_submodule(&next)? {
            return Ok(SaturationResult { saturation: cur, steps });
        }
        cur = next;
    }
}
