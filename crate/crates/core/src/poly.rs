//! Polynomial rings and sparse multivariate polynomials.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::monomial::{Monomial, MonomialOrder};

/// `k[vars]` with a monomial order and a degree weight per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: Field,
    vars: Vec<String>,
    weights: Vec<u32>,
    order: MonomialOrder,
}

pub type RingRef = Arc<PolyRing>;

impl PolyRing {
    pub fn new(field: Field, vars: &[&str]) -> Result<RingRef> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let n = vars.len();
        Self::with_options(field, vars, vec![1; n], MonomialOrder::GrevLex)
    }

    pub fn with_options(
        field: Field,
        vars: Vec<String>,
        weights: Vec<u32>,
        order: MonomialOrder,
    ) -> Result<RingRef> {
        if vars.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        if weights.len() != vars.len() {
            return Err(Error::InvalidRing("one weight per variable is required".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable {v}")));
            }
        }
        Ok(Arc::new(PolyRing { field, vars, weights, order }))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_standard_graded(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn is_positively_graded(&self) -> bool {
        self.weights.iter().all(|&w| w > 0)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn zero(self: &Arc<Self>) -> MultiPoly {
        MultiPoly { ring: self.clone(), terms: Vec::new() }
    }

    pub fn one(self: &Arc<Self>) -> MultiPoly {
        self.constant(self.field.one())
    }

    pub fn constant(self: &Arc<Self>, c: Scalar) -> MultiPoly {
        MultiPoly::from_terms(self, vec![(Monomial::one(self.nvars()), c)])
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> MultiPoly {
        self.constant(self.field.from_i64(n))
    }

    pub fn var(self: &Arc<Self>, name: &str) -> Result<MultiPoly> {
        let i = self.var_index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.var_at(i))
    }

    pub fn var_at(self: &Arc<Self>, i: usize) -> MultiPoly {
        MultiPoly::from_terms(self, vec![(Monomial::var(self.nvars(), i), self.field.one())])
    }

    pub fn monomial(self: &Arc<Self>, m: Monomial) -> MultiPoly {
        MultiPoly::from_terms(self, vec![(m, self.field.one())])
    }

    /// All monomials of weighted degree `d`; empty when `d < 0`.
    /// Panics if some weight is zero.
    pub fn monomials_of_degree(&self, d: i64) -> Vec<Monomial> {
        assert!(self.is_positively_graded(), "monomial enumeration needs positive weights");
        let mut out = Vec::new();
        if d < 0 {
            return out;
        }
        let mut cur = vec![0u16; self.nvars()];
        fn rec(i: usize, left: i64, w: &[u32], cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            if i + 1 == w.len() {
                if left % w[i] as i64 == 0 {
                    cur[i] = (left / w[i] as i64) as u16;
                    out.push(Monomial::from_exponents(cur));
                    cur[i] = 0;
                }
                return;
            }
            let mut e = 0i64;
            while e * w[i] as i64 <= left {
                cur[i] = e as u16;
                rec(i + 1, left - e * w[i] as i64, w, cur, out);
                e += 1;
            }
            cur[i] = 0;
        }
        rec(0, d, &self.weights, &mut cur, &mut out);
        out
    }
}

/// A polynomial: terms strictly descending in the ring order, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    ring: RingRef,
    terms: Vec<(Monomial, Scalar)>,
}

impl MultiPoly {
    /// Build from arbitrary terms: merges duplicates, drops zeros, sorts.
    pub fn from_terms(ring: &RingRef, terms: Vec<(Monomial, Scalar)>) -> MultiPoly {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(v) => *v = v.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, Scalar)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        MultiPoly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// A nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field().zero())
    }

    pub fn lead(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Weighted degree of the highest-degree term; `None` stands for the degree of zero.
    pub fn degree(&self) -> Option<i64> {
        self.terms.iter().map(|(m, _)| m.weighted_degree(self.ring.weights())).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let w = self.ring.weights();
        let mut it = self.terms.iter().map(|(m, _)| m.weighted_degree(w));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    fn check_ring(&self, other: &MultiPoly) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match order.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), if negate { cb.neg() } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca.sub(cb) } else { ca.add(cb) };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), if negate { c.neg() } else { c.clone() })));
        MultiPoly { ring: self.ring.clone(), terms: out }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.ring.zero());
        }
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = v.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let order = self.ring.order();
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Ok(MultiPoly { ring: self.ring.clone(), terms })
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return self.ring.zero();
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut r = self.ring.one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn make_monic(&self) -> MultiPoly {
        match self.lead() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    /// Evaluate the listed variables, leaving a polynomial in the same ring.
    pub fn substitute(&self, assignments: &[(&str, Scalar)]) -> Result<MultiPoly> {
        let mut idx = Vec::with_capacity(assignments.len());
        for (name, v) in assignments {
            let i = self.ring.var_index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            if !self.ring.field().contains(v) {
                return Err(Error::RingMismatch);
            }
            idx.push((i, v.clone()));
        }
        Ok(self.substitute_indices(&idx))
    }

    pub(crate) fn substitute_indices(&self, idx: &[(usize, Scalar)]) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                let mut c = c.clone();
                for (i, v) in idx {
                    c = c.mul(&v.pow(e[*i] as u32));
                    e[*i] = 0;
                }
                (Monomial::from_exponents(&e), c)
            })
            .collect();
        MultiPoly::from_terms(&self.ring, terms)
    }

    /// Map into `target` by sending variable `i` to variable `map[i]` (or dropping it when `None`,
    /// in which case its exponent must be zero).
    pub(crate) fn transport(&self, target: &RingRef, map: &[Option<usize>]) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u16; target.nvars()];
                for (i, &x) in m.exponents().iter().enumerate() {
                    match map[i] {
                        Some(j) => e[j] += x,
                        None => debug_assert_eq!(x, 0),
                    }
                }
                (Monomial::from_exponents(&e), c.clone())
            })
            .collect();
        MultiPoly::from_terms(target, terms)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = self.ring.vars();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.display_with(vars))?;
            } else {
                write!(f, "{abs}*{}", m.display_with(vars))?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$try(rhs).expect("polynomials from different rings")
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
