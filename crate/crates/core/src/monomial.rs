//! Monomials and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exponents = SmallVec<[u16; 8]>;

/// Exponent vector of a power product.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial(Exponents);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> i64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as i64 * w as i64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, e: u16) -> Monomial {
        Monomial(self.0.iter().map(|a| a * e).collect())
    }

    /// Render with the given variable names, `1` for the unit monomial.
    pub fn display_with(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(vars)
            .filter(|(e, _)| **e > 0)
            .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Orders on the monomials of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    /// Block order: grevlex on the first `k` variables, ties broken by grevlex on the rest.
    /// Eliminates the first block.
    Elimination(usize),
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::GrevLex
    }
}

fn grevlex_slices(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Compare two monomials; `Greater` means `a` is the larger one.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::ArityMismatch { expected: a.nvars(), found: b.nvars() });
        }
        Ok(self.cmp(a, b))
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => grevlex_slices(&a.0, &b.0),
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Elimination(k) => {
                let k = (*k).min(a.0.len());
                grevlex_slices(&a.0[..k], &b.0[..k])
                    .then_with(|| grevlex_slices(&a.0[k..], &b.0[k..]))
            }
        }
    }

    /// Compare `a1*a2` with `b1*b2` without materialising the products.
    #[inline]
    pub fn cmp_products(&self, a1: &Monomial, a2: &Monomial, b1: &Monomial, b2: &Monomial) -> Ordering {
        let n = a1.0.len();
        let mut a: Exponents = SmallVec::with_capacity(n);
        let mut b: Exponents = SmallVec::with_capacity(n);
        for i in 0..n {
            a.push(a1.0[i] + a2.0[i]);
            b.push(b1.0[i] + b2.0[i]);
        }
        self.cmp(&Monomial(a), &Monomial(b))
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::GrevLex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Elimination(k) => format!("elim({k})"),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Orders on the terms `m*e_i` of a free module, extending a ring order.
/// Lower component indices rank higher.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleOrder {
    PositionOverTerm(MonomialOrder),
    TermOverPosition(MonomialOrder),
}

impl Default for ModuleOrder {
    fn default() -> Self {
        ModuleOrder::TermOverPosition(MonomialOrder::GrevLex)
    }
}

impl ModuleOrder {
    pub fn base(&self) -> MonomialOrder {
        match self {
            ModuleOrder::PositionOverTerm(o) | ModuleOrder::TermOverPosition(o) => *o,
        }
    }

    #[inline]
    pub fn cmp_terms(&self, a: &Monomial, ac: usize, b: &Monomial, bc: usize) -> Ordering {
        match self {
            ModuleOrder::TermOverPosition(o) => o.cmp(a, b).then_with(|| bc.cmp(&ac)),
            ModuleOrder::PositionOverTerm(o) => bc.cmp(&ac).then_with(|| o.cmp(a, b)),
        }
    }
}
