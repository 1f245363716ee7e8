//! Finitely presented graded modules and their graded pieces.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::groebner::{groebner, Divider, SVec, Submodule};
use crate::monomial::{ModuleOrder, Monomial};
use crate::poly::{MultiPoly, RingRef};

use super::free::{eliminate_unit, GradedFreeModule, GradedMap};
use super::resolution::FreeResolution;

/// Dimensions of graded pieces over a window `[lo, hi]`; absent degrees in the window are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedDims {
    pub dims: BTreeMap<i64, usize>,
    pub window: (i64, i64),
}

impl GradedDims {
    pub fn new(window: (i64, i64)) -> Self {
        GradedDims { dims: BTreeMap::new(), window }
    }

    pub fn get(&self, d: i64) -> usize {
        self.dims.get(&d).copied().unwrap_or(0)
    }

    pub fn set(&mut self, d: i64, v: usize) {
        if v == 0 {
            self.dims.remove(&d);
        } else {
            self.dims.insert(d, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    /// `(degree, dim)` for every degree of the window, zeros included.
    pub fn dense(&self) -> Vec<(i64, usize)> {
        (self.window.0..=self.window.1).map(|d| (d, self.get(d))).collect()
    }

    /// Restriction to a smaller window.
    pub fn restrict(&self, lo: i64, hi: i64) -> GradedDims {
        GradedDims { dims: self.dims.range(lo..=hi).map(|(k, v)| (*k, *v)).collect(), window: (lo, hi) }
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (d, v)) in self.dims.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}:{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Default)]
pub(crate) struct ModuleCache {
    gb: OnceLock<Vec<SVec>>,
    pub(crate) resolution: OnceLock<FreeResolution>,
    minimal: OnceLock<Box<PresentedModule>>,
    pub(crate) memo: Mutex<HashMap<String, Arc<dyn std::any::Any + Send + Sync>>>,
}

/// The cokernel of a homogeneous map of graded free modules.
///
/// Clones share one cache, so Groebner bases and resolutions are computed at most once per value.
#[derive(Clone)]
pub struct PresentedModule {
    ring: RingRef,
    presentation: GradedMap,
    cache: Arc<ModuleCache>,
}

impl fmt::Debug for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PresentedModule").field("presentation", &self.presentation).finish()
    }
}

impl PartialEq for PresentedModule {
    fn eq(&self, other: &Self) -> bool {
        self.presentation == other.presentation
    }
}

impl PresentedModule {
    pub fn new(presentation: GradedMap) -> Self {
        PresentedModule { ring: presentation.ring().clone(), presentation, cache: Arc::default() }
    }

    /// `⊕ A(-twists[i])`.
    pub fn free(ring: &RingRef, twists: Vec<i64>) -> Self {
        let target = if twists.iter().all(|&t| t == 0) {
            GradedFreeModule::from_parts(twists.clone(), Some(vec![vec![0; ring.nvars()]; twists.len()]))
        } else {
            GradedFreeModule::new(twists)
        };
        Self::free_on(ring, target)
    }

    /// The free module with the given generators.
    pub fn free_on(ring: &RingRef, target: GradedFreeModule) -> Self {
        let rows = vec![Vec::new(); target.rank()];
        Self::new(GradedMap::new_unchecked(ring, GradedFreeModule::zero(), target, rows))
    }

    /// The cyclic module `A/I`, generated in degree 0.
    pub fn quotient(ideal: &Submodule) -> Result<Self> {
        let ring = ideal.ring();
        let target = GradedFreeModule::with_fine(ring.weights(), vec![vec![0; ring.nvars()]])?;
        Self::from_submodule(target, ideal)
    }

    /// The ideal `I` as an `A`-module: its nonzero generators modulo their syzygies.
    pub fn ideal_module(ideal: &Submodule) -> Result<Self> {
        let ring = ideal.ring();
        let gens: Vec<MultiPoly> = ideal.ideal_generators()?.into_iter().filter(|g| !g.is_zero()).collect();
        let mut twists = Vec::with_capacity(gens.len());
        for g in &gens {
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(format!("ideal generator of degree {:?}", g.degree())));
            }
            twists.push(g.degree().unwrap_or(0));
        }
        let target = if gens.iter().all(|g| g.num_terms() == 1) {
            let fine = gens.iter().map(|g| g.terms()[0].0.exponents().iter().map(|&e| e as i64).collect()).collect();
            GradedFreeModule::with_fine(ring.weights(), fine)?
        } else {
            GradedFreeModule::new(twists)
        };
        let syz = crate::groebner::syzygies(&Submodule::ideal(ring, gens)?, ModuleOrder::default());
        Self::from_submodule(target, &syz)
    }

    /// `target / N` for a submodule `N` given by homogeneous generators.
    pub fn from_submodule(target: GradedFreeModule, n: &Submodule) -> Result<Self> {
        if n.ambient_rank() != target.rank() {
            return Err(Error::RankMismatch { expected: target.rank(), found: n.ambient_rank() });
        }
        let cols: Vec<Vec<MultiPoly>> = n.generators().iter().filter(|g| !g.is_zero()).map(|g| g.comps().to_vec()).collect();
        Ok(Self::new(GradedMap::from_columns(n.ring(), target, cols)?))
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn presentation(&self) -> &GradedMap {
        &self.presentation
    }

    /// The free cover `F_0`.
    pub fn cover(&self) -> &GradedFreeModule {
        self.presentation.target()
    }

    pub fn num_generators(&self) -> usize {
        self.cover().rank()
    }

    pub fn relations(&self) -> Submodule {
        let cols = self.presentation.columns();
        let gens = cols
            .into_iter()
            .map(|c| crate::groebner::FreeElement::new(&self.ring, c))
            .collect::<Result<Vec<_>>>()
            .expect("same ring");
        Submodule::new(&self.ring, self.num_generators(), gens).expect("ranks agree")
    }

    pub(crate) fn cache(&self) -> &ModuleCache {
        &self.cache
    }

    /// Reduced Groebner basis of the relations, term-over-position grevlex.
    pub(crate) fn gb(&self) -> &[SVec] {
        self.cache.gb.get_or_init(|| {
            let ord = ModuleOrder::default();
            let cols = self.presentation.svec_columns(&ord);
            groebner(&cols, &ord, self.num_generators() == 1, false).basis
        })
    }

    /// Normal form of an element of the cover modulo the relations.
    pub fn reduce(&self, v: &[MultiPoly]) -> Vec<MultiPoly> {
        let ord = ModuleOrder::default();
        let div = Divider::new(self.gb(), &ord);
        let r = div.reduce(&SVec::from_column(v, &ord), None);
        r.to_column(&self.ring, self.num_generators())
    }

    pub fn is_zero_element(&self, v: &[MultiPoly]) -> bool {
        self.reduce(v).iter().all(|f| f.is_zero())
    }

    fn leads_by_component(&self) -> Vec<Vec<Monomial>> {
        let mut out = vec![Vec::new(); self.num_generators()];
        for g in self.gb() {
            let t = &g.terms[0];
            out[t.comp].push(t.mono.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.leads_by_component().iter().all(|ls| ls.iter().any(|m| m.is_one()))
    }

    /// Dimensions of the graded pieces on `[lo, hi]`, by counting standard monomials.
    pub fn graded_dims(&self, lo: i64, hi: i64) -> Result<GradedDims> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!("empty window [{lo}, {hi}]")));
        }
        if !self.ring.is_positively_graded() {
            return Err(Error::InvalidArgument("graded pieces need positive weights".into()));
        }
        let leads = self.leads_by_component();
        let mut out = GradedDims::new((lo, hi));
        let twists = self.cover().twists();
        let mut by_degree: HashMap<i64, Vec<Monomial>> = HashMap::new();
        for d in lo..=hi {
            let mut total = 0;
            for (i, ls) in leads.iter().enumerate() {
                let e = d - twists[i];
                if e < 0 || ls.iter().any(|m| m.is_one()) {
                    continue;
                }
                let monos = by_degree.entry(e).or_insert_with(|| self.ring.monomials_of_degree(e));
                total += monos.iter().filter(|m| !ls.iter().any(|l| l.divides(m))).count();
            }
            out.set(d, total);
        }
        Ok(out)
    }

    /// Dimension of the piece of fine multidegree `alpha`; needs fine twists on the cover.
    pub fn fine_dim(&self, alpha: &[i64]) -> Result<usize> {
        let fine = self
            .cover()
            .fine()
            .ok_or_else(|| Error::InvalidArgument("module carries no fine grading".into()))?;
        let leads = self.leads_by_component();
        let mut total = 0;
        for (i, b) in fine.iter().enumerate() {
            let gamma: Vec<i64> = alpha.iter().zip(b).map(|(a, b)| a - b).collect();
            if gamma.iter().any(|&g| g < 0) {
                continue;
            }
            let m = Monomial::from_exponents(&gamma.iter().map(|&g| g as u16).collect::<Vec<_>>());
            if !leads[i].iter().any(|l| l.divides(&m)) {
                total += 1;
            }
        }
        Ok(total)
    }

    /// Standard monomials `x^γ e_i` spanning the piece of degree `d`, in a fixed order.
    pub fn basis_in_degree(&self, d: i64) -> Vec<(usize, Monomial)> {
        let leads = self.leads_by_component();
        let mut out = Vec::new();
        for (i, ls) in leads.iter().enumerate() {
            let e = d - self.cover().twists()[i];
            if e < 0 {
                continue;
            }
            for m in self.ring.monomials_of_degree(e) {
                if !ls.iter().any(|l| l.divides(&m)) {
                    out.push((i, m));
                }
            }
        }
        out
    }

    /// Coordinates of a homogeneous element of the cover in the basis from `basis_in_degree`.
    pub fn coordinates(&self, v: &[MultiPoly], basis: &[(usize, Monomial)]) -> Vec<Scalar> {
        let r = self.reduce(v);
        basis
            .iter()
            .map(|(i, m)| {
                r[*i].terms().iter().find(|(mm, _)| mm == m).map(|(_, c)| c.clone()).unwrap_or_else(|| self.ring.field().zero())
            })
            .collect()
    }

    pub fn has_fine_grading(&self) -> bool {
        self.cover().fine().is_some() && self.presentation.source().fine().is_some()
    }

    /// An isomorphic presentation with no unit entries (hence minimal generators).
    pub fn minimal_presentation(&self) -> PresentedModule {
        self.cache.minimal.get_or_init(|| Box::new(self.compute_minimal())).as_ref().clone()
    }

    fn compute_minimal(&self) -> PresentedModule {
        let ring = &self.ring;
        let mut target = self.cover().clone();
        let mut source = self.presentation.source().clone();
        let mut matrix: Vec<Vec<MultiPoly>> = self.presentation.matrix().to_vec();
        loop {
            let zero_cols: Vec<usize> = (0..source.rank()).filter(|&j| matrix.iter().all(|r| r[j].is_zero())).collect();
            if !zero_cols.is_empty() {
                source = source.without(&zero_cols);
                for row in matrix.iter_mut() {
                    *row = row.iter().enumerate().filter(|(j, _)| !zero_cols.contains(j)).map(|(_, f)| f.clone()).collect();
                }
            }
            let unit = (0..source.rank()).find_map(|j| (0..target.rank()).find(|&i| matrix[i][j].is_unit()).map(|i| (i, j)));
            match unit {
                Some((r, c)) => {
                    matrix = eliminate_unit(&matrix, r, c);
                    target = target.without(&[r]);
                    source = source.without(&[c]);
                }
                None => break,
            }
        }
        // drop repeated columns
        let mut keep: Vec<usize> = Vec::new();
        for j in 0..source.rank() {
            let col: Vec<&MultiPoly> = matrix.iter().map(|r| &r[j]).collect();
            if !keep.iter().any(|&k| matrix.iter().map(|r| &r[k]).eq(col.iter().copied())) {
                keep.push(j);
            }
        }
        let drop: Vec<usize> = (0..source.rank()).filter(|j| !keep.contains(j)).collect();
        source = source.without(&drop);
        for row in matrix.iter_mut() {
            *row = keep.iter().map(|&j| row[j].clone()).collect();
        }
        let m = PresentedModule::new(GradedMap::new_unchecked(ring, source, target, matrix));
        // a minimal presentation is its own minimal form
        let _ = m.cache.minimal.set(Box::new(m.clone_uncached()));
        m
    }

    fn clone_uncached(&self) -> PresentedModule {
        PresentedModule { ring: self.ring.clone(), presentation: self.presentation.clone(), cache: Arc::default() }
    }

    /// `M(d)`: the piece of degree `e` of `M(d)` is the piece of degree `d + e` of `M`.
    pub fn twisted(&self, d: i64) -> PresentedModule {
        let p = &self.presentation;
        let map = GradedMap::new_unchecked(&self.ring, p.source().twisted(d), p.target().twisted(d), p.matrix().to_vec());
        PresentedModule::new(map)
    }
}
