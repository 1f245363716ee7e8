//! Charts and Pluecker coordinates on the Grassmannian of `d`-planes in `k^n`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{determinant, inverse, mat_mul, rank, DenseMatrix};

/// A `d x n` matrix whose row space is a point of the Grassmannian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartMatrix {
    field: Field,
    rows: DenseMatrix,
}

impl ChartMatrix {
    pub fn new(field: Field, rows: DenseMatrix) -> Result<Self> {
        let d = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if d == 0 || n < d {
            return Err(Error::InvalidArgument(format!("need 1 <= d <= n, got a {d} x {n} matrix")));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("ragged matrix".into()));
        }
        if rows.iter().flatten().any(|x| !field.contains(x)) {
            return Err(Error::RingMismatch);
        }
        Ok(ChartMatrix { field, rows })
    }

    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(field, rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> &DenseMatrix {
        &self.rows
    }

    pub fn d(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    /// The `d x d` block on columns `cols`.
    pub fn block(&self, cols: &[usize]) -> DenseMatrix {
        self.rows.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect()
    }
}

/// Ascending `k`-subsets of `0..n`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// A projective point indexed by `d`-subsets of `0..n`, normalised so that the first
/// nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlueckerVector {
    pub d: usize,
    pub n: usize,
    pub coords: BTreeMap<Vec<usize>, Scalar>,
}

impl PlueckerVector {
    /// Normalise an arbitrary coordinate vector; missing subsets are zero.
    pub fn new(field: Field, d: usize, n: usize, coords: BTreeMap<Vec<usize>, Scalar>) -> Result<Self> {
        if d == 0 || d > n {
            return Err(Error::InvalidArgument(format!("need 1 <= d <= n, got d = {d}, n = {n}")));
        }
        let mut full = BTreeMap::new();
        for s in subsets(n, d) {
            full.insert(s, field.zero());
        }
        for (k, v) in coords {
            if !full.contains_key(&k) {
                return Err(Error::InvalidArgument(format!("{k:?} is not an ascending {d}-subset of 0..{n}")));
            }
            full.insert(k, v);
        }
        let lead = full.values().find(|v| !v.is_zero()).cloned().ok_or_else(|| Error::InvalidArgument("all coordinates are zero".into()))?;
        let inv = lead.inv();
        for v in full.values_mut() {
            *v = v.mul(&inv);
        }
        Ok(PlueckerVector { d, n, coords: full })
    }

    pub fn get(&self, s: &[usize]) -> Option<&Scalar> {
        self.coords.get(s)
    }
}

impl fmt::Display for PlueckerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n > 9 { "," } else { "" };
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|(k, v)| {
                let idx: Vec<String> = k.iter().map(|i| (i + 1).to_string()).collect();
                format!("{}:{v}", idx.join(sep))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// All maximal minors of `m`, normalised.
pub fn pluecker(m: &ChartMatrix) -> Result<PlueckerVector> {
    if rank(m.rows()) < m.d() {
        return Err(Error::RankDeficient);
    }
    let coords = subsets(m.n(), m.d()).into_iter().map(|s| {
        let det = determinant(m.field(), &m.block(&s));
        (s, det)
    });
    PlueckerVector::new(m.field(), m.d(), m.n(), coords.collect())
}

/// A quadratic form in Pluecker coordinates: products of two sorted subsets with coefficients.
type Relation = BTreeMap<(Vec<usize>, Vec<usize>), i64>;

fn sort_signed(seq: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut v = seq.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len().saturating_sub(1 + i) {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

/// The shuffle relations for `(d, n)`, without identically zero ones and up to sign.
pub fn pluecker_relations(d: usize, n: usize) -> Vec<Relation> {
    if d < 2 || d >= n {
        return Vec::new();
    }
    let mut out: Vec<Relation> = Vec::new();
    for i in subsets(n, d - 1) {
        for j in subsets(n, d + 1) {
            let mut rel = Relation::new();
            for t in 0..j.len() {
                let mut a = i.clone();
                a.push(j[t]);
                let b: Vec<usize> = j.iter().enumerate().filter(|&(s, _)| s != t).map(|(_, &x)| x).collect();
                let Some((sa, a)) = sort_signed(&a) else { continue };
                let key = if a <= b { (a, b) } else { (b, a) };
                let c = if t % 2 == 0 { sa } else { -sa };
                *rel.entry(key).or_insert(0) += c;
            }
            rel.retain(|_, c| *c != 0);
            if rel.is_empty() {
                continue;
            }
            if *rel.values().next().unwrap() < 0 {
                rel.values_mut().for_each(|c| *c = -*c);
            }
            if !out.contains(&rel) {
                out.push(rel);
            }
        }
    }
    out
}

/// Values of the shuffle relations at `v`.
pub fn pluecker_relations_residual(v: &PlueckerVector) -> Vec<Scalar> {
    let field = v.coords.values().next().map(|x| x.field()).unwrap_or(Field::Rationals);
    pluecker_relations(v.d, v.n)
        .iter()
        .map(|rel| {
            rel.iter().fold(field.zero(), |acc, ((a, b), c)| {
                let (pa, pb) = (&v.coords[a], &v.coords[b]);
                acc.add(&field.from_i64(*c).mul(&pa.mul(pb)))
            })
        })
        .collect()
}

/// `M_J^{-1} M`, the representative of the same plane whose `J`-block is the identity.
pub fn chart_transition(m: &ChartMatrix, cols: &[usize]) -> Result<ChartMatrix> {
    let d = m.d();
    if cols.len() != d || cols.iter().any(|&j| j >= m.n()) || sort_signed(cols).is_none() {
        return Err(Error::InvalidArgument(format!("{cols:?} is not a set of {d} distinct columns")));
    }
    let inv = inverse(m.field(), &m.block(cols)).ok_or(Error::SingularBlock)?;
    ChartMatrix::new(m.field(), mat_mul(m.field(), &inv, m.rows()))
}
