//! Graded free modules and homogeneous maps between them.

use crate::error::{Error, Result};
use crate::groebner::{SVec, TermOrder};
use crate::monomial::Monomial;
use crate::poly::{MultiPoly, RingRef};

/// `⊕ A(-twists[i])`, optionally with a fine `Z^n` multidegree per generator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedFreeModule {
    twists: Vec<i64>,
    fine: Option<Vec<Vec<i64>>>,
}

impl GradedFreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        GradedFreeModule { twists, fine: None }
    }

    pub fn zero() -> Self {
        GradedFreeModule { twists: Vec::new(), fine: Some(Vec::new()) }
    }

    /// Generators with fine multidegrees; the coarse twist of each is its weighted total.
    pub fn with_fine(weights: &[u32], fine: Vec<Vec<i64>>) -> Result<Self> {
        if fine.iter().any(|f| f.len() != weights.len()) {
            return Err(Error::InvalidArgument("multidegree length differs from variable count".into()));
        }
        let twists = fine.iter().map(|f| fine_total(weights, f)).collect();
        Ok(GradedFreeModule { twists, fine: Some(fine) })
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn fine(&self) -> Option<&[Vec<i64>]> {
        self.fine.as_deref()
    }

    pub(crate) fn fine_at(&self, i: usize) -> Option<&[i64]> {
        self.fine.as_ref().map(|f| f[i].as_slice())
    }

    /// `F(d)`: every generator moves to degree `twist - d`.
    pub fn twisted(&self, d: i64) -> Self {
        GradedFreeModule { twists: self.twists.iter().map(|t| t - d).collect(), fine: self.fine.clone().filter(|_| d == 0) }
    }

    /// Keep the generators whose index is not in `drop`.
    pub(crate) fn without(&self, drop: &[usize]) -> Self {
        let keep = |i: &usize| !drop.contains(i);
        GradedFreeModule {
            twists: (0..self.rank()).filter(keep).map(|i| self.twists[i]).collect(),
            fine: self.fine.as_ref().map(|f| (0..f.len()).filter(keep).map(|i| f[i].clone()).collect()),
        }
    }

    pub(crate) fn from_parts(twists: Vec<i64>, fine: Option<Vec<Vec<i64>>>) -> Self {
        GradedFreeModule { twists, fine }
    }
}

pub(crate) fn fine_total(weights: &[u32], f: &[i64]) -> i64 {
    f.iter().zip(weights).map(|(a, &w)| a * w as i64).sum()
}

fn exps(m: &Monomial) -> Vec<i64> {
    m.exponents().iter().map(|&e| e as i64).collect()
}

/// A homogeneous map `source -> target`; `matrix[i][j]` is row `i` (target) and column `j` (source).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    ring: RingRef,
    source: GradedFreeModule,
    target: GradedFreeModule,
    matrix: Vec<Vec<MultiPoly>>,
}

impl GradedMap {
    pub fn new(ring: &RingRef, source: GradedFreeModule, target: GradedFreeModule, matrix: Vec<Vec<MultiPoly>>) -> Result<Self> {
        if matrix.len() != target.rank() {
            return Err(Error::RankMismatch { expected: target.rank(), found: matrix.len() });
        }
        for row in &matrix {
            if row.len() != source.rank() {
                return Err(Error::RankMismatch { expected: source.rank(), found: row.len() });
            }
        }
        let w = ring.weights();
        for (i, row) in matrix.iter().enumerate() {
            for (j, f) in row.iter().enumerate() {
                if f.ring() != ring {
                    return Err(Error::RingMismatch);
                }
                let want = source.twists[j] - target.twists[i];
                if f.terms().iter().any(|(m, _)| m.weighted_degree(w) != want) {
                    return Err(Error::NotHomogeneous(format!(
                        "entry ({i},{j}) = {f} should have degree {want}"
                    )));
                }
                if let (Some(s), Some(t)) = (source.fine_at(j), target.fine_at(i)) {
                    let want: Vec<i64> = s.iter().zip(t).map(|(a, b)| a - b).collect();
                    if f.terms().iter().any(|(m, _)| exps(m) != want) {
                        return Err(Error::NotHomogeneous(format!("entry ({i},{j}) = {f} is not of multidegree {want:?}")));
                    }
                }
            }
        }
        Ok(GradedMap { ring: ring.clone(), source, target, matrix })
    }

    pub(crate) fn new_unchecked(ring: &RingRef, source: GradedFreeModule, target: GradedFreeModule, matrix: Vec<Vec<MultiPoly>>) -> Self {
        debug_assert!(Self::new(ring, source.clone(), target.clone(), matrix.clone()).is_ok());
        GradedMap { ring: ring.clone(), source, target, matrix }
    }

    /// Build from columns, reading each source twist off the column's degree.
    /// Zero columns get twist 0. Fine degrees are kept when every column is a monomial vector.
    pub fn from_columns(ring: &RingRef, target: GradedFreeModule, cols: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let w = ring.weights();
        let mut twists = Vec::with_capacity(cols.len());
        let mut fine: Option<Vec<Vec<i64>>> = target.fine.as_ref().map(|_| Vec::new());
        for col in &cols {
            if col.len() != target.rank() {
                return Err(Error::RankMismatch { expected: target.rank(), found: col.len() });
            }
            let lead = col.iter().enumerate().find_map(|(i, f)| f.terms().first().map(|(m, _)| (i, m)));
            match lead {
                Some((i, m)) => {
                    twists.push(m.weighted_degree(w) + target.twists[i]);
                    if let (Some(fv), Some(t)) = (fine.as_mut(), target.fine_at(i)) {
                        fv.push(exps(m).iter().zip(t).map(|(a, b)| a + b).collect());
                    }
                }
                None => {
                    twists.push(0);
                    if let Some(fv) = fine.as_mut() {
                        fv.push(vec![0; ring.nvars()]);
                    }
                }
            }
        }
        let source = GradedFreeModule { twists: twists.clone(), fine: fine.clone() };
        let matrix = transpose(&cols, target.rank(), ring);
        match GradedMap::new(ring, source, target.clone(), matrix.clone()) {
            Ok(m) => Ok(m),
            Err(e) if fine.is_some() => {
                // not fine-homogeneous: fall back to the coarse grading
                let coarse_t = GradedFreeModule::new(target.twists.clone());
                GradedMap::new(ring, GradedFreeModule::new(twists), coarse_t, matrix).map_err(|_| e)
            }
            Err(e) => Err(e),
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<MultiPoly>] {
        &self.matrix
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    pub fn ncols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.matrix[i][j]
    }

    pub fn column(&self, j: usize) -> Vec<MultiPoly> {
        self.matrix.iter().map(|r| r[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<MultiPoly>> {
        (0..self.ncols()).map(|j| self.column(j)).collect()
    }

    pub(crate) fn svec_columns<O: TermOrder>(&self, ord: &O) -> Vec<SVec> {
        (0..self.ncols()).map(|j| SVec::from_column(&self.column(j), ord)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|r| r.iter().all(|f| f.is_zero()))
    }

    /// `self ∘ other`, where `other: X -> self.source`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        if other.target.twists != self.source.twists {
            return Err(Error::RankMismatch { expected: self.source.rank(), found: other.target.rank() });
        }
        let mut m = vec![vec![self.ring.zero(); other.ncols()]; self.nrows()];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                let mut acc = self.ring.zero();
                for k in 0..self.ncols() {
                    if !self.matrix[i][k].is_zero() && !other.matrix[k][j].is_zero() {
                        acc = acc + &self.matrix[i][k] * &other.matrix[k][j];
                    }
                }
                *out = acc;
            }
        }
        GradedMap::new(&self.ring, other.source.clone(), self.target.clone(), m)
    }

    /// Position of a nonzero constant entry, if any.
    pub(crate) fn find_unit(&self) -> Option<(usize, usize)> {
        for j in 0..self.ncols() {
            for i in 0..self.nrows() {
                if self.matrix[i][j].is_unit() {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

pub(crate) fn transpose(cols: &[Vec<MultiPoly>], nrows: usize, ring: &RingRef) -> Vec<Vec<MultiPoly>> {
    let mut m = vec![vec![ring.zero(); cols.len()]; nrows];
    for (j, c) in cols.iter().enumerate() {
        for (i, f) in c.iter().enumerate() {
            m[i][j] = f.clone();
        }
    }
    m
}

/// Clear a unit entry `(r, c)` of a matrix by column operations: afterwards row `r` is zero
/// except in column `c`. Returns the matrix with row `r` and column `c` removed.
pub(crate) fn eliminate_unit(matrix: &[Vec<MultiPoly>], r: usize, c: usize) -> Vec<Vec<MultiPoly>> {
    let u = matrix[r][c].constant_term();
    let uinv = u.inv();
    let nrows = matrix.len();
    let ncols = matrix[0].len();
    let mut out: Vec<Vec<MultiPoly>> = Vec::with_capacity(nrows - 1);
    let factors: Vec<Option<MultiPoly>> = (0..ncols)
        .map(|j| if j == c || matrix[r][j].is_zero() { None } else { Some(matrix[r][j].scale(&uinv)) })
        .collect();
    for (i, row) in matrix.iter().enumerate() {
        if i == r {
            continue;
        }
        let mut new_row = Vec::with_capacity(ncols - 1);
        for j in 0..ncols {
            if j == c {
                continue;
            }
            let v = match (&factors[j], row[c].is_zero()) {
                (Some(f), false) => &row[j] - &(f * &row[c]),
                _ => row[j].clone(),
            };
            new_row.push(v);
        }
        out.push(new_row);
    }
    out
}
