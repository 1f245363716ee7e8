//! Minimal graded free resolutions by Schreyer's algorithm, Betti tables, projective dimension.

use std::collections::BTreeMap;
use std::fmt;

use crate::groebner::schreyer::{gb_syzygies, SchreyerOrder};
use crate::groebner::{groebner, SVec};
use crate::monomial::MonomialOrder;
use crate::poly::{MultiPoly, RingRef};

use super::free::{eliminate_unit, GradedFreeModule, GradedMap};
use super::module::PresentedModule;

/// `0 <- F_0 <- F_1 <- ... <- F_len`, with `maps[i]: F_{i+1} -> F_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeResolution {
    ring: RingRef,
    modules: Vec<GradedFreeModule>,
    maps: Vec<GradedMap>,
}

impl FreeResolution {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// `F_0, ..., F_len`.
    pub fn modules(&self) -> &[GradedFreeModule] {
        &self.modules
    }

    pub fn maps(&self) -> &[GradedMap] {
        &self.maps
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// `F_i`, zero beyond the length.
    pub fn module(&self, i: usize) -> GradedFreeModule {
        self.modules.get(i).cloned().unwrap_or_else(GradedFreeModule::zero)
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (i, f) in self.modules.iter().enumerate() {
            for &t in f.twists() {
                *entries.entry((i, t)).or_insert(0) += 1;
            }
        }
        BettiTable { entries }
    }

    /// Whether every consecutive composite vanishes.
    pub fn is_complex(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].compose(&w[1]).map(|c| c.is_zero()).unwrap_or(false))
    }

    /// Whether no differential has a nonzero constant entry.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| m.find_unit().is_none())
    }

    fn truncated(&self, len: usize) -> FreeResolution {
        let len = len.min(self.length());
        FreeResolution {
            ring: self.ring.clone(),
            modules: self.modules[..=len].to_vec(),
            maps: self.maps[..len].to_vec(),
        }
    }
}

/// Graded Betti numbers `b_{i,j}`: the number of generators of `F_i` in degree `j`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i64), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `rank F_i`.
    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|((k, _), _)| *k == i).map(|(_, v)| v).sum()
    }

    pub fn ranks(&self) -> Vec<usize> {
        let len = self.entries.keys().map(|(i, _)| *i).max().map_or(0, |m| m + 1);
        (0..len).map(|i| self.total(i)).collect()
    }

    /// `max_{i,j} (j - i)`, the Betti bound on regularity.
    pub fn max_shifted_degree(&self) -> Option<i64> {
        self.entries.keys().map(|(i, j)| j - *i as i64).max()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.entries.keys().map(|(_, j)| *j).min()
    }
}

impl fmt::Display for BettiTable {
    /// Rows are `j - i`, columns homological degree `i`, as in the usual Betti diagram.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return writeln!(f, "zero module");
        }
        let len = self.ranks().len();
        let rows: Vec<i64> = {
            let mut r: Vec<i64> = self.entries.keys().map(|(i, j)| j - *i as i64).collect();
            r.sort();
            r.dedup();
            (r[0]..=*r.last().unwrap()).collect()
        };
        write!(f, "{:>6}", "")?;
        for i in 0..len {
            write!(f, " {:>4}", i)?;
        }
        writeln!(f)?;
        write!(f, "{:>6}", "total:")?;
        for i in 0..len {
            write!(f, " {:>4}", self.total(i))?;
        }
        writeln!(f)?;
        for r in rows {
            write!(f, "{:>5}:", r)?;
            for i in 0..len {
                match self.get(i, r + i as i64) {
                    0 => write!(f, " {:>4}", ".")?,
                    v => write!(f, " {:>4}", v)?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn sort_for_schreyer(gens: &mut [SVec]) {
    gens.sort_by(|a, b| {
        let (ta, tb) = (&a.terms[0], &b.terms[0]);
        ta.comp.cmp(&tb.comp).then_with(|| MonomialOrder::Lex.cmp(&tb.mono, &ta.mono))
    });
}

fn compute_full(m: &PresentedModule) -> FreeResolution {
    let ring = m.ring().clone();
    let mp = m.minimal_presentation();
    let f0 = mp.cover().clone();
    let nvars = ring.nvars();
    let mut modules = vec![f0.clone()];
    let mut mats: Vec<Vec<Vec<MultiPoly>>> = Vec::new();
    if f0.rank() == 0 || mp.presentation().ncols() == 0 {
        return FreeResolution { ring, modules, maps: Vec::new() };
    }
    let mut ord = SchreyerOrder::top(MonomialOrder::GrevLex, nvars, f0.rank());
    let cols = mp.presentation().svec_columns(&ord);
    let mut gens = groebner(&cols, &ord, f0.rank() == 1, false).basis;
    loop {
        if gens.is_empty() {
            break;
        }
        sort_for_schreyer(&mut gens);
        let prev = modules.last().unwrap().clone();
        let columns: Vec<Vec<MultiPoly>> = gens.iter().map(|g| g.to_column(&ring, prev.rank())).collect();
        let map = GradedMap::from_columns(&ring, prev, columns).expect("syzygies are homogeneous");
        modules.push(map.source().clone());
        mats.push(map.matrix().to_vec());
        assert!(mats.len() <= nvars + 1, "Schreyer resolution exceeded the syzygy bound");
        let next = ord.induced(&gens);
        let syz = gb_syzygies(&gens, &ord, &next);
        ord = next;
        gens = syz;
    }
    minimize(ring, modules, mats)
}

fn minimize(ring: RingRef, mut modules: Vec<GradedFreeModule>, mut mats: Vec<Vec<Vec<MultiPoly>>>) -> FreeResolution {
    // mats[k] is d_{k+1}: F_{k+1} -> F_k
    for k in 0..mats.len() {
        loop {
            let ncols = modules[k + 1].rank();
            let nrows = modules[k].rank();
            let unit = (0..ncols).find_map(|j| (0..nrows).find(|&i| mats[k][i][j].is_unit()).map(|i| (i, j)));
            let Some((r, c)) = unit else { break };
            assert!(k > 0, "presentation was not minimal");
            mats[k] = eliminate_unit(&mats[k], r, c);
            modules[k] = modules[k].without(&[r]);
            modules[k + 1] = modules[k + 1].without(&[c]);
            if k + 1 < mats.len() {
                mats[k + 1].remove(c);
            }
            for row in mats[k - 1].iter_mut() {
                row.remove(r);
            }
        }
    }
    while modules.len() > 1 && modules.last().unwrap().rank() == 0 {
        modules.pop();
        mats.pop();
    }
    let maps = mats
        .into_iter()
        .enumerate()
        .map(|(k, m)| GradedMap::new_unchecked(&ring, modules[k + 1].clone(), modules[k].clone(), m))
        .collect();
    FreeResolution { ring, modules, maps }
}

/// The minimal graded free resolution of `m`, truncated at homological degree `max_length`.
pub fn minimal_free_resolution(m: &PresentedModule, max_length: usize) -> FreeResolution {
    full_resolution(m).truncated(max_length)
}

/// The full minimal resolution, cached on the module.
pub(crate) fn full_resolution(m: &PresentedModule) -> &FreeResolution {
    m.cache().resolution.get_or_init(|| {
        let r = compute_full(m);
        assert!(r.length() <= m.ring().nvars(), "projective dimension exceeds the number of variables");
        r
    })
}

pub fn projective_dimension(m: &PresentedModule) -> usize {
    full_resolution(m).length()
}

pub fn betti_table(m: &PresentedModule) -> BettiTable {
    full_resolution(m).betti_table()
}
