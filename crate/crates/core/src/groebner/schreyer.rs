//! Schreyer orders and syzygies of a Groebner basis from its S-pair reductions.

use std::cmp::Ordering;

use crate::monomial::{Monomial, MonomialOrder};

use super::vector::{Divider, QuotientTerm, SVec, Term, TermOrder};

/// Term order on a free module `F_k` induced by the lead terms of the images of its basis.
///
/// Basis element `i` carries the ring monomial its lead term maps to in the base module, and the
/// chain of component indices along the way. `m*e_i > n*e_j` iff `m*lead_i > n*lead_j` in the base
/// order, ties broken by the chains (smaller index ranks higher).
#[derive(Clone, Debug)]
pub(crate) struct SchreyerOrder {
    base: MonomialOrder,
    leads: Vec<Monomial>,
    chains: Vec<Vec<u32>>,
}

impl SchreyerOrder {
    /// The term-over-position order on a free module of the given rank.
    pub fn top(base: MonomialOrder, nvars: usize, rank: usize) -> Self {
        SchreyerOrder {
            base,
            leads: vec![Monomial::one(nvars); rank],
            chains: (0..rank as u32).map(|i| vec![i]).collect(),
        }
    }

    /// The induced order on the free module whose basis maps to `gens`.
    pub fn induced(&self, gens: &[SVec]) -> Self {
        let mut leads = Vec::with_capacity(gens.len());
        let mut chains = Vec::with_capacity(gens.len());
        for (j, g) in gens.iter().enumerate() {
            let t = g.lead().expect("generators of a Schreyer level are nonzero");
            leads.push(t.mono.mul(&self.leads[t.comp]));
            let mut c = self.chains[t.comp].clone();
            c.push(j as u32);
            chains.push(c);
        }
        SchreyerOrder { base: self.base, leads, chains }
    }
}

impl TermOrder for SchreyerOrder {
    #[inline]
    fn cmp_terms(&self, a: &Monomial, ac: usize, b: &Monomial, bc: usize) -> Ordering {
        self.base
            .cmp_products(a, &self.leads[ac], b, &self.leads[bc])
            .then_with(|| self.chains[bc].cmp(&self.chains[ac]))
    }
}

/// Generators of the syzygy module of a Groebner basis `gens` (sorted by `ord`).
///
/// For each `i`, only pairs `(i, j)`, `j > i`, whose multiplier `lcm/lead_i` is minimal under
/// divisibility are used; their syzygies have lead terms `m_ji e_i` in the induced Schreyer order
/// and form a Groebner basis of the syzygy module there. The output vectors are sorted by `out`.
pub(crate) fn gb_syzygies<O: TermOrder, P: TermOrder>(gens: &[SVec], ord: &O, out: &P) -> Vec<SVec> {
    let div = Divider::new(gens, ord);
    let mut result = Vec::new();
    for i in 0..gens.len() {
        let li = &gens[i].terms[0];
        let mut cands: Vec<(usize, Monomial)> = Vec::new();
        for (j, gj) in gens.iter().enumerate().skip(i + 1) {
            let lj = &gj.terms[0];
            if lj.comp != li.comp {
                continue;
            }
            let m = li.mono.quotient_of(&li.mono.lcm(&lj.mono)).unwrap();
            cands.push((j, m));
        }
        let minimal: Vec<(usize, Monomial)> = cands
            .iter()
            .enumerate()
            .filter(|(k, (_, m))| {
                !cands.iter().enumerate().any(|(k2, (_, m2))| {
                    k2 != *k && m2.divides(m) && (m2 != m || k2 < *k)
                })
            })
            .map(|(_, c)| c.clone())
            .collect();
        for (j, mji) in minimal {
            let lj = &gens[j].terms[0];
            let l = li.mono.mul(&mji);
            let mij = lj.mono.quotient_of(&l).unwrap();
            let ci = li.coeff.inv();
            let cj = lj.coeff.inv();
            let s = gens[i].mul_term(&ci, &mji).sub_mul(&cj, &mij, &gens[j], ord);
            let mut qs: Vec<QuotientTerm> = Vec::new();
            let rem = div.reduce(&s, Some(&mut qs));
            assert!(rem.is_zero(), "S-vector of a Groebner basis failed to reduce to zero");
            let mut terms = vec![
                Term { mono: mji, comp: i, coeff: ci },
                Term { mono: mij, comp: j, coeff: cj.neg() },
            ];
            for q in qs {
                terms.push(Term { mono: q.mono, comp: q.index, coeff: q.coeff.neg() });
            }
            let v = SVec::from_terms(terms, out);
            if !v.is_zero() {
                result.push(v);
            }
        }
    }
    result
}
