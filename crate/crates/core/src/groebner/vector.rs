//! Sparse vectors of a free module, sorted by a term order, and division by a list of them.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::field::Scalar;
use crate::monomial::{ModuleOrder, Monomial};
use crate::poly::{MultiPoly, RingRef};

/// An order on module terms `m*e_c`.
pub(crate) trait TermOrder {
    fn cmp_terms(&self, a: &Monomial, ac: usize, b: &Monomial, bc: usize) -> Ordering;
}

impl TermOrder for ModuleOrder {
    #[inline]
    fn cmp_terms(&self, a: &Monomial, ac: usize, b: &Monomial, bc: usize) -> Ordering {
        ModuleOrder::cmp_terms(self, a, ac, b, bc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub mono: Monomial,
    pub comp: usize,
    pub coeff: Scalar,
}

/// Terms strictly descending in some term order, no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct SVec {
    pub terms: Vec<Term>,
}

fn merge_sub<O: TermOrder>(a: &[Term], c: &Scalar, m: &Monomial, b: &[Term], ord: &O) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bm: Option<Monomial> = None;
    while i < a.len() || j < b.len() {
        if j < b.len() && bm.is_none() {
            bm = Some(b[j].mono.mul(m));
        }
        let ord_ij = if i >= a.len() {
            Ordering::Less
        } else if j >= b.len() {
            Ordering::Greater
        } else {
            ord.cmp_terms(&a[i].mono, a[i].comp, bm.as_ref().unwrap(), b[j].comp)
        };
        match ord_ij {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(Term { mono: bm.take().unwrap(), comp: b[j].comp, coeff: b[j].coeff.mul(c).neg() });
                j += 1;
            }
            Ordering::Equal => {
                let v = a[i].coeff.sub(&b[j].coeff.mul(c));
                if !v.is_zero() {
                    out.push(Term { mono: bm.take().unwrap(), comp: a[i].comp, coeff: v });
                } else {
                    bm = None;
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

impl SVec {
    pub fn zero() -> Self {
        SVec { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Build from arbitrary terms, combining duplicates.
    pub fn from_terms<O: TermOrder>(terms: Vec<Term>, ord: &O) -> SVec {
        let mut acc: HashMap<(usize, Monomial), Scalar> = HashMap::new();
        for t in terms {
            match acc.get_mut(&(t.comp, t.mono.clone())) {
                Some(v) => *v = v.add(&t.coeff),
                None => {
                    acc.insert((t.comp, t.mono), t.coeff);
                }
            }
        }
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((comp, mono), coeff)| Term { mono, comp, coeff })
            .collect();
        terms.sort_by(|a, b| ord.cmp_terms(&b.mono, b.comp, &a.mono, a.comp));
        SVec { terms }
    }

    pub fn from_column<O: TermOrder>(col: &[MultiPoly], ord: &O) -> SVec {
        let mut terms = Vec::new();
        for (comp, p) in col.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push(Term { mono: m.clone(), comp, coeff: c.clone() });
            }
        }
        terms.sort_by(|a, b| ord.cmp_terms(&b.mono, b.comp, &a.mono, a.comp));
        SVec { terms }
    }

    pub fn to_column(&self, ring: &RingRef, rank: usize) -> Vec<MultiPoly> {
        let mut per: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            per[t.comp].push((t.mono.clone(), t.coeff.clone()));
        }
        per.into_iter().map(|ts| MultiPoly::from_terms(ring, ts)).collect()
    }

    pub fn scale(&self, c: &Scalar) -> SVec {
        if c.is_zero() {
            return SVec::zero();
        }
        SVec {
            terms: self
                .terms
                .iter()
                .map(|t| Term { mono: t.mono.clone(), comp: t.comp, coeff: t.coeff.mul(c) })
                .collect(),
        }
    }

    /// Multiply by `c*m`; preserves sortedness for any multiplicative term order.
    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> SVec {
        if c.is_zero() {
            return SVec::zero();
        }
        SVec {
            terms: self
                .terms
                .iter()
                .map(|t| Term { mono: t.mono.mul(m), comp: t.comp, coeff: t.coeff.mul(c) })
                .collect(),
        }
    }

    pub fn make_monic(&mut self) -> Option<Scalar> {
        let lc = self.lead()?.coeff.clone();
        if !lc.is_one() {
            let inv = lc.inv();
            for t in &mut self.terms {
                t.coeff = t.coeff.mul(&inv);
            }
        }
        Some(lc)
    }

    /// `self - c*m*other`
    pub fn sub_mul<O: TermOrder>(&self, c: &Scalar, m: &Monomial, other: &SVec, ord: &O) -> SVec {
        SVec { terms: merge_sub(&self.terms, c, m, &other.terms, ord) }
    }

    pub fn add<O: TermOrder>(&self, other: &SVec, ord: &O) -> SVec {
        let Some(t) = other.terms.first() else { return self.clone() };
        let one = t.coeff.field().one();
        let m = Monomial::one(t.mono.nvars());
        SVec { terms: merge_sub(&self.terms, &one.neg(), &m, &other.terms, ord) }
    }

    /// Keep only components in `range`, shifted down by `range.start`.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> SVec {
        SVec {
            terms: self
                .terms
                .iter()
                .filter(|t| range.contains(&t.comp))
                .map(|t| Term { mono: t.mono.clone(), comp: t.comp - range.start, coeff: t.coeff.clone() })
                .collect(),
        }
    }
}

/// One quotient term of a division: `coeff * mono * basis[index]`.
#[derive(Clone, Debug)]
pub(crate) struct QuotientTerm {
    pub index: usize,
    pub mono: Monomial,
    pub coeff: Scalar,
}

/// Division by a fixed list of vectors, each sorted by `ord`.
pub(crate) struct Divider<'a, O: TermOrder> {
    basis: &'a [SVec],
    by_comp: HashMap<usize, Vec<usize>>,
    ord: &'a O,
}

impl<'a, O: TermOrder> Divider<'a, O> {
    pub fn new(basis: &'a [SVec], ord: &'a O) -> Self {
        let mut by_comp: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, g) in basis.iter().enumerate() {
            if let Some(t) = g.lead() {
                by_comp.entry(t.comp).or_default().push(i);
            }
        }
        Divider { basis, by_comp, ord }
    }

    pub fn find_divisor(&self, m: &Monomial, comp: usize) -> Option<usize> {
        self.by_comp.get(&comp)?.iter().copied().find(|&i| self.basis[i].terms[0].mono.divides(m))
    }

    /// Full division: returns the remainder and, when requested, the quotient terms.
    pub fn reduce(&self, v: &SVec, mut quotients: Option<&mut Vec<QuotientTerm>>) -> SVec {
        let mut cur = v.terms.clone();
        let mut start = 0;
        let mut rem = Vec::new();
        while start < cur.len() {
            let t = &cur[start];
            match self.find_divisor(&t.mono, t.comp) {
                Some(k) => {
                    let g = &self.basis[k];
                    let lt = &g.terms[0];
                    let q = lt.mono.quotient_of(&t.mono).unwrap();
                    let c = t.coeff.div(&lt.coeff);
                    if let Some(qs) = quotients.as_deref_mut() {
                        qs.push(QuotientTerm { index: k, mono: q.clone(), coeff: c.clone() });
                    }
                    cur = merge_sub(&cur[start + 1..], &c, &q, &g.terms[1..], self.ord);
                    start = 0;
                }
                None => {
                    rem.push(cur[start].clone());
                    start += 1;
                }
            }
        }
        SVec { terms: rem }
    }

    pub fn reduces_to_zero(&self, v: &SVec) -> bool {
        self.reduce(v, None).is_zero()
    }
}
