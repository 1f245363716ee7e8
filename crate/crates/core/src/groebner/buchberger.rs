//! Buchberger's algorithm for submodules of free modules.
//!
//! Pairs are selected by the normal strategy (smallest lcm degree, then index pair) and
//! pruned with the Gebauer-Moeller update. The product criterion is only sound for ideals,
//! so it is applied to rank-one inputs only. Optionally tracks, for every basis element,
//! its expression in terms of the input generators.

use crate::field::Scalar;
use crate::monomial::{ModuleOrder, Monomial};

use super::vector::{Divider, QuotientTerm, SVec, Term, TermOrder};

/// Order used for the tracked representation vectors.
const REP_ORDER: ModuleOrder = ModuleOrder::TermOverPosition(crate::monomial::MonomialOrder::GrevLex);

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u32,
}

struct State<'a, O: TermOrder> {
    ord: &'a O,
    elems: Vec<SVec>,
    reps: Option<Vec<SVec>>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    ideal_case: bool,
}

pub(crate) struct GbResult {
    pub basis: Vec<SVec>,
    /// `reps[k]` expresses `basis[k]` in the input generators (terms indexed by generator).
    pub reps: Option<Vec<SVec>>,
}

fn lead_of(v: &SVec) -> (&Monomial, usize) {
    let t = &v.terms[0];
    (&t.mono, t.comp)
}

impl<'a, O: TermOrder> State<'a, O> {
    fn reduce(&self, v: &SVec, rep: Option<&SVec>) -> (SVec, Option<SVec>) {
        let div = Divider::new(&self.elems, self.ord);
        match (&self.reps, rep) {
            (Some(reps), Some(rep)) => {
                let mut qs: Vec<QuotientTerm> = Vec::new();
                let r = div.reduce(v, Some(&mut qs));
                let mut rep = rep.clone();
                for q in qs {
                    rep = rep.sub_mul(&q.coeff, &q.mono, &reps[q.index], &REP_ORDER);
                }
                (r, Some(rep))
            }
            _ => (div.reduce(v, None), None),
        }
    }

    fn insert(&mut self, mut h: SVec, mut rep: Option<SVec>) {
        let lc = h.make_monic().expect("nonzero");
        if let Some(r) = rep.as_mut() {
            *r = r.scale(&lc.inv());
        }
        let hidx = self.elems.len();
        self.elems.push(h);
        if let (Some(reps), Some(r)) = (self.reps.as_mut(), rep) {
            reps.push(r);
        }
        self.update(hidx);
    }

    fn update(&mut self, h: usize) {
        let (mh, ch) = {
            let (m, c) = lead_of(&self.elems[h]);
            (m.clone(), c)
        };
        let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
        for &g in &self.active {
            let (mg, cg) = lead_of(&self.elems[g]);
            if cg != ch {
                continue;
            }
            let disjoint = self.ideal_case && mh.is_coprime(mg);
            cands.push((g, mh.lcm(mg), disjoint));
        }
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for idx in 0..cands.len() {
            let (g, ref l, disjoint) = cands[idx];
            let dominated_rest = cands[idx + 1..].iter().any(|(_, l2, _)| l2.divides(l));
            let dominated_kept = kept.iter().any(|(_, l2, _)| l2.divides(l));
            if disjoint || (!dominated_rest && !dominated_kept) {
                kept.push((g, l.clone(), disjoint));
            }
        }
        let elems = &self.elems;
        self.pairs.retain(|p| {
            if lead_of(&elems[p.i]).1 != ch {
                return true;
            }
            if !mh.divides(&p.lcm) {
                return true;
            }
            let li = lead_of(&elems[p.i]).0.lcm(&mh);
            let lj = lead_of(&elems[p.j]).0.lcm(&mh);
            li == p.lcm || lj == p.lcm
        });
        for (g, l, disjoint) in kept {
            if !disjoint {
                let degree = l.degree();
                self.pairs.push(Pair { i: g.min(h), j: g.max(h), lcm: l, degree });
            }
        }
        self.active.retain(|&g| {
            let (mg, cg) = lead_of(&elems[g]);
            !(cg == ch && mh.divides(mg))
        });
        self.active.push(h);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| (a.degree, a.i, a.j).cmp(&(b.degree, b.i, b.j)))?
            .0;
        Some(self.pairs.swap_remove(best))
    }

    fn s_vector(&self, p: &Pair) -> (SVec, Option<SVec>) {
        let gi = &self.elems[p.i];
        let gj = &self.elems[p.j];
        let ui = gi.terms[0].mono.quotient_of(&p.lcm).unwrap();
        let uj = gj.terms[0].mono.quotient_of(&p.lcm).unwrap();
        let one = gi.terms[0].coeff.field().one();
        let s = gi.mul_term(&one, &ui).sub_mul(&one, &uj, gj, self.ord);
        let rep = self.reps.as_ref().map(|reps| reps[p.i].mul_term(&one, &ui).sub_mul(&one, &uj, &reps[p.j], &REP_ORDER));
        (s, rep)
    }
}

/// Reduced Groebner basis of the span of `gens`. Output sorted by ascending lead term.
pub(crate) fn groebner<O: TermOrder>(gens: &[SVec], ord: &O, ideal_case: bool, track: bool) -> GbResult {
    let mut st = State {
        ord,
        elems: Vec::new(),
        reps: if track { Some(Vec::new()) } else { None },
        active: Vec::new(),
        pairs: Vec::new(),
        ideal_case,
    };
    for (k, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let rep = if track {
            let c = g.terms[0].coeff.field().one();
            Some(SVec { terms: vec![Term { mono: Monomial::one(g.terms[0].mono.nvars()), comp: k, coeff: c }] })
        } else {
            None
        };
        let (h, rep) = st.reduce(g, rep.as_ref());
        if !h.is_zero() {
            st.insert(h, rep);
        }
    }
    while let Some(p) = st.next_pair() {
        let (s, rep) = st.s_vector(&p);
        if s.is_zero() {
            continue;
        }
        let (h, rep) = st.reduce(&s, rep.as_ref());
        if !h.is_zero() {
            st.insert(h, rep);
        }
    }
    // minimal basis, then tail-reduce each element by the others
    let mut active = st.active.clone();
    active.sort_by(|&a, &b| {
        let (ma, ca) = lead_of(&st.elems[a]);
        let (mb, cb) = lead_of(&st.elems[b]);
        ord.cmp_terms(ma, ca, mb, cb)
    });
    let basis: Vec<SVec> = active.iter().map(|&k| st.elems[k].clone()).collect();
    let reps: Option<Vec<SVec>> = st.reps.as_ref().map(|r| active.iter().map(|&k| r[k].clone()).collect());
    interreduce(basis, reps, ord)
}

fn interreduce<O: TermOrder>(mut basis: Vec<SVec>, mut reps: Option<Vec<SVec>>, ord: &O) -> GbResult {
    for k in 0..basis.len() {
        let others: Vec<SVec> = basis
            .iter()
            .enumerate()
            .map(|(i, g)| if i == k { SVec::zero() } else { g.clone() })
            .collect();
        let div = Divider::new(&others, ord);
        let head = SVec { terms: vec![basis[k].terms[0].clone()] };
        let tail = SVec { terms: basis[k].terms[1..].to_vec() };
        let mut qs: Vec<QuotientTerm> = Vec::new();
        let track = reps.is_some();
        let r = div.reduce(&tail, if track { Some(&mut qs) } else { None });
        if let Some(reps) = reps.as_mut() {
            let mut rep = reps[k].clone();
            for q in &qs {
                rep = rep.sub_mul(&q.coeff, &q.mono, &reps[q.index], &REP_ORDER);
            }
            reps[k] = rep;
        }
        basis[k] = head.add(&r, ord);
    }
    GbResult { basis, reps }
}

/// True when every S-vector of `basis` reduces to zero (post hoc check of the criterion).
pub(crate) fn satisfies_buchberger_criterion<O: TermOrder>(basis: &[SVec], ord: &O) -> bool {
    let div = Divider::new(basis, ord);
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (mi, ci) = lead_of(&basis[i]);
            let (mj, cj) = lead_of(&basis[j]);
            if ci != cj {
                continue;
            }
            let l = mi.lcm(mj);
            let ui = mi.quotient_of(&l).unwrap();
            let uj = mj.quotient_of(&l).unwrap();
            let a: Scalar = basis[i].terms[0].coeff.inv();
            let b: Scalar = basis[j].terms[0].coeff.inv();
            let s = basis[i].mul_term(&a, &ui).sub_mul(&b, &uj, &basis[j], ord);
            if !div.reduces_to_zero(&s) {
                return false;
            }
        }
    }
    true
}
