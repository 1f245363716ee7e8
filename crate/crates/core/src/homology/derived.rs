//! Ext and Tor as homology of Hom and tensor complexes built from a minimal resolution.

use crate::groebner::{syzygies_of, SVec};
use crate::monomial::ModuleOrder;
use crate::poly::{MultiPoly, RingRef};

use super::free::{GradedFreeModule, GradedMap};
use super::module::PresentedModule;
use super::resolution::full_resolution;

/// `Z / (Z ∩ B)` for submodules `Z`, `B` of a free module `x`, given by generating columns.
pub fn subquotient(ring: &RingRef, x: &GradedFreeModule, z: Vec<Vec<MultiPoly>>, b: Vec<Vec<MultiPoly>>) -> PresentedModule {
    let z: Vec<Vec<MultiPoly>> = z.into_iter().filter(|c| c.iter().any(|f| !f.is_zero())).collect();
    if z.is_empty() {
        return PresentedModule::free(ring, Vec::new());
    }
    let zmap = GradedMap::from_columns(ring, x.clone(), z.clone()).expect("homogeneous generators");
    let gens_mod = zmap.source().clone();
    let k = z.len();
    let ord = ModuleOrder::default();
    let mut cols: Vec<SVec> = z.iter().map(|c| SVec::from_column(c, &ord)).collect();
    cols.extend(b.iter().map(|c| SVec::from_column(c, &ord)));
    let syz = syzygies_of(ring, &cols, &ord, x.rank() == 1);
    let rels: Vec<Vec<MultiPoly>> = syz
        .iter()
        .map(|s| s.restrict(0..k))
        .filter(|s| !s.is_zero())
        .map(|s| s.to_column(ring, k))
        .collect();
    let pres = GradedMap::from_columns(ring, gens_mod, rels).expect("homogeneous relations");
    PresentedModule::new(pres).minimal_presentation()
}

/// Homology at `x` of `x --out--> y`, where `y` is taken modulo `y_rels` and `x` modulo `in_cols`.
fn homology_at(
    ring: &RingRef,
    x: &GradedFreeModule,
    out_cols: Vec<Vec<MultiPoly>>,
    y_rank: usize,
    y_rels: Vec<Vec<MultiPoly>>,
    in_cols: Vec<Vec<MultiPoly>>,
) -> PresentedModule {
    let n = x.rank();
    if n == 0 {
        return PresentedModule::free(ring, Vec::new());
    }
    let z: Vec<Vec<MultiPoly>> = if y_rank == 0 {
        (0..n).map(|i| unit_column(ring, n, i)).collect()
    } else {
        let ord = ModuleOrder::default();
        let mut cols: Vec<SVec> = out_cols.iter().map(|c| SVec::from_column(c, &ord)).collect();
        cols.extend(y_rels.iter().map(|c| SVec::from_column(c, &ord)));
        if cols.iter().all(|c| c.is_zero()) {
            (0..n).map(|i| unit_column(ring, n, i)).collect()
        } else {
            syzygies_of(ring, &cols, &ord, y_rank == 1)
                .iter()
                .map(|s| s.restrict(0..n))
                .filter(|s| !s.is_zero())
                .map(|s| s.to_column(ring, n))
                .collect()
        }
    };
    subquotient(ring, x, z, in_cols)
}

fn unit_column(ring: &RingRef, n: usize, i: usize) -> Vec<MultiPoly> {
    let mut c = vec![ring.zero(); n];
    c[i] = ring.one();
    c
}

fn combine_fine(a: Option<&[Vec<i64>]>, b: Option<&[Vec<i64>]>, sign: i64) -> Option<Vec<Vec<i64>>> {
    let (a, b) = (a?, b?);
    let mut out = Vec::with_capacity(a.len() * b.len());
    for fa in a {
        for fb in b {
            out.push(fa.iter().zip(fb).map(|(x, y)| y + sign * x).collect());
        }
    }
    Some(out)
}

/// `F^* ⊗ H` (sign −1) or `F ⊗ H` (sign +1), basis index `a * rank(H) + b`.
fn pair_module(f: &GradedFreeModule, h: &GradedFreeModule, sign: i64) -> GradedFreeModule {
    let mut twists = Vec::with_capacity(f.rank() * h.rank());
    for &ta in f.twists() {
        for &tb in h.twists() {
            twists.push(tb + sign * ta);
        }
    }
    GradedFreeModule::from_parts(twists, combine_fine(f.fine(), h.fine(), sign))
}

/// Columns of `d ⊗ id_H` for `d` given as a matrix `rows x cols`, acting on the first factor.
/// With `transpose`, uses `d^T` instead.
fn first_factor_columns(ring: &RingRef, d: &[Vec<MultiPoly>], nrows: usize, ncols: usize, s: usize, transpose: bool) -> Vec<Vec<MultiPoly>> {
    // the map sends basis index (a, b) to sum_c m[c][a] (c, b), with m = d or d^T
    let (src, dst) = if transpose { (nrows, ncols) } else { (ncols, nrows) };
    let entry = |c: usize, a: usize| if transpose { &d[a][c] } else { &d[c][a] };
    let mut out = Vec::with_capacity(src * s);
    for a in 0..src {
        for b in 0..s {
            let mut col = vec![ring.zero(); dst * s];
            for c in 0..dst {
                let e = entry(c, a);
                if !e.is_zero() {
                    col[c * s + b] = e.clone();
                }
            }
            out.push(col);
        }
    }
    out
}

/// Columns of `id_F ⊗ psi` for `F` of rank `r`.
fn second_factor_columns(ring: &RingRef, r: usize, psi: &GradedMap) -> Vec<Vec<MultiPoly>> {
    let s0 = psi.nrows();
    let mut out = Vec::new();
    for a in 0..r {
        for k in 0..psi.ncols() {
            let mut col = vec![ring.zero(); r * s0];
            for b in 0..s0 {
                col[a * s0 + b] = psi.entry(b, k).clone();
            }
            out.push(col);
        }
    }
    out
}

/// `Ext^p_A(M, N)` with its internal grading; `Hom(A(-a), A(-b))` sits in degree `b - a`.
pub fn ext_module(p: usize, m: &PresentedModule, n: &PresentedModule) -> PresentedModule {
    let ring = m.ring();
    let res = full_resolution(m);
    let np = n.minimal_presentation();
    let psi = np.presentation();
    let h0 = psi.target();
    let s0 = h0.rank();
    let fp = res.module(p);
    let x = pair_module(&fp, h0, -1);
    let fnext = res.module(p + 1);
    let y_rank = fnext.rank() * s0;
    let out_cols = if p < res.length() {
        first_factor_columns(ring, res.maps()[p].matrix(), fp.rank(), fnext.rank(), s0, true)
    } else {
        vec![vec![]; x.rank()]
    };
    let y_rels = second_factor_columns(ring, fnext.rank(), psi);
    let mut in_cols = second_factor_columns(ring, fp.rank(), psi);
    if p > 0 && p <= res.length() {
        let fprev = res.module(p - 1);
        in_cols.extend(first_factor_columns(ring, res.maps()[p - 1].matrix(), fprev.rank(), fp.rank(), s0, true));
    }
    homology_at(ring, &x, out_cols, y_rank, y_rels, in_cols)
}

/// `Tor_p^A(M, N)`; `A(-a) ⊗ A(-b) = A(-a-b)`.
pub fn tor_module(p: usize, m: &PresentedModule, n: &PresentedModule) -> PresentedModule {
    let ring = m.ring();
    let res = full_resolution(m);
    let np = n.minimal_presentation();
    let psi = np.presentation();
    let h0 = psi.target();
    let s0 = h0.rank();
    let fp = res.module(p);
    let x = pair_module(&fp, h0, 1);
    let (out_cols, y_rank, y_rels) = if p > 0 && p <= res.length() {
        let fprev = res.module(p - 1);
        (
            first_factor_columns(ring, res.maps()[p - 1].matrix(), fprev.rank(), fp.rank(), s0, false),
            fprev.rank() * s0,
            second_factor_columns(ring, fprev.rank(), psi),
        )
    } else {
        (vec![vec![]; x.rank()], 0, Vec::new())
    };
    let mut in_cols = second_factor_columns(ring, fp.rank(), psi);
    if p < res.length() {
        let fnext = res.module(p + 1);
        in_cols.extend(first_factor_columns(ring, res.maps()[p].matrix(), fp.rank(), fnext.rank(), s0, false));
    }
    homology_at(ring, &x, out_cols, y_rank, y_rels, in_cols)
}

/// `M ⊗_A N`.
pub fn tensor_product(m: &PresentedModule, n: &PresentedModule) -> PresentedModule {
    tor_module(0, m, n)
}

/// `Hom_A(M, N)`.
pub fn hom_module(m: &PresentedModule, n: &PresentedModule) -> PresentedModule {
    ext_module(0, m, n)
}
