//! Sheaf cohomology on projective space from graded modules, Serre duality checks and
//! Castelnuovo-Mumford regularity.
//!
//! For a graded module `M` over `A = k[x_0..x_n]`, `H^p(M~(l)) = H^{p+1}_m(M)_l` for `p >= 1`
//! and `H^0(M~(l)) = M_l - H^0_m(M)_l + H^1_m(M)_l`, where `m` is the irrelevant ideal.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::groebner::Submodule;
use crate::homology::{betti_table, ext_module, hom_module, krull_dimension, PresentedModule};
use crate::linalg::rank;
use crate::local::{local_cohomology_all, LocalCohomologyConfig};
use crate::poly::MultiPoly;

/// `h^p(M~(l))` for `0 <= p <= n` and `l` in a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafCohomologyTable {
    /// Dimension of the ambient projective space.
    pub n: usize,
    pub window: (i64, i64),
    pub entries: BTreeMap<(usize, i64), usize>,
}

impl SheafCohomologyTable {
    pub fn get(&self, p: usize, l: i64) -> usize {
        self.entries.get(&(p, l)).copied().unwrap_or(0)
    }

    /// `Σ_p (-1)^p h^p(M~(l))`.
    pub fn euler_characteristic(&self, l: i64) -> i64 {
        (0..=self.n).map(|p| if p % 2 == 0 { 1 } else { -1 } * self.get(p, l) as i64).sum()
    }
}

/// The canonical twist `-(n+1)` of `P^n`, `n + 1` the number of variables.
pub fn canonical_twist(m: &PresentedModule) -> i64 {
    -(m.ring().nvars() as i64)
}

fn require_standard(m: &PresentedModule) -> Result<usize> {
    if !m.ring().is_standard_graded() {
        return Err(Error::NonStandardGrading);
    }
    Ok(m.ring().nvars() - 1)
}

pub fn sheaf_cohomology_table(m: &PresentedModule, lo: i64, hi: i64, cfg: &LocalCohomologyConfig) -> Result<SheafCohomologyTable> {
    let n = require_standard(m)?;
    let irr = Submodule::irrelevant_ideal(m.ring());
    let lc = local_cohomology_all(&irr, m, n + 1, lo, hi, cfg)?;
    let dims = m.graded_dims(lo, hi)?;
    let mut entries = BTreeMap::new();
    for l in lo..=hi {
        let h0 = dims.get(l) as i64 - lc[0].dims.get(l) as i64 + lc[1].dims.get(l) as i64;
        if h0 < 0 {
            return Err(Error::Internal(format!("negative h^0 at twist {l}")));
        }
        if h0 > 0 {
            entries.insert((0, l), h0 as usize);
        }
        for p in 1..=n {
            let v = lc[p + 1].dims.get(l);
            if v > 0 {
                entries.insert((p, l), v);
            }
        }
    }
    Ok(SheafCohomologyTable { n, window: (lo, hi), entries })
}

pub fn sheaf_cohomology_dim(m: &PresentedModule, p: usize, l: i64, cfg: &LocalCohomologyConfig) -> Result<usize> {
    let n = require_standard(m)?;
    if p > n {
        return Err(Error::InvalidArgument(format!("cohomological degree {p} exceeds n = {n}")));
    }
    Ok(sheaf_cohomology_table(m, l, l, cfg)?.get(p, l))
}

/// `h^p(M~(l)) - dim Ext^{n-p}_A(M, A(-n-1))_{-l}` for `1 <= p <= n`.
pub fn serre_duality_defect(m: &PresentedModule, p: usize, l: i64, cfg: &LocalCohomologyConfig) -> Result<i64> {
    let n = require_standard(m)?;
    if p < 1 || p > n {
        return Err(Error::InvalidArgument(format!("p = {p} outside [1, {n}]")));
    }
    let lhs = sheaf_cohomology_dim(m, p, l, cfg)? as i64;
    Ok(lhs - serre_dual_dim(m, p, l)? as i64)
}

/// `dim Ext^{n-p}_A(M, A(-n-1))_{-l}`.
pub fn serre_dual_dim(m: &PresentedModule, p: usize, l: i64) -> Result<usize> {
    let n = require_standard(m)?;
    let omega = PresentedModule::free(m.ring(), vec![(n + 1) as i64]);
    Ok(ext_module(n - p, m, &omega).graded_dims(-l, -l)?.get(-l))
}

fn regular_in(table: &SheafCohomologyTable, mm: i64) -> bool {
    (1..=table.n).all(|p| table.get(p, mm - p as i64) == 0)
}

/// `H^p(M~(m - p)) = 0` for every `p > 0`.
pub fn is_m_regular(m: &PresentedModule, mm: i64, cfg: &LocalCohomologyConfig) -> Result<bool> {
    let n = require_standard(m)?;
    if n == 0 {
        return Ok(true);
    }
    let t = sheaf_cohomology_table(m, mm - n as i64, mm - 1, cfg)?;
    Ok(regular_in(&t, mm))
}

/// `max_{i >= 2} (i - indeg Ext^{N-i}(M, A(-N)))`, the end degrees of `H^i_m(M)` read through
/// local duality; `None` when all those Ext modules vanish.
fn regularity_by_duality(m: &PresentedModule) -> Option<i64> {
    let nv = m.ring().nvars();
    let omega = PresentedModule::free(m.ring(), vec![nv as i64]);
    let mut best: Option<i64> = None;
    for i in 2..=nv {
        let e = ext_module(nv - i, m, &omega);
        if e.is_zero() {
            continue;
        }
        let indeg = *e.cover().twists().iter().min().unwrap();
        let v = i as i64 - indeg;
        best = Some(best.map_or(v, |b: i64| b.max(v)));
    }
    best
}

/// The least `m` such that `M~` is `m`-regular.
pub fn regularity(m: &PresentedModule, cfg: &LocalCohomologyConfig) -> Result<i64> {
    require_standard(m)?;
    if krull_dimension(m)? <= 0 {
        return Err(Error::ZeroSheaf);
    }
    let upper = betti_table(m).max_shifted_degree().ok_or(Error::ZeroSheaf)?;
    let floor = regularity_by_duality(m).ok_or(Error::RegularityUnbounded)?;
    if floor > upper {
        return Err(Error::Internal(format!("duality value {floor} exceeds the Betti bound {upper}")));
    }
    let n = m.ring().nvars() as i64 - 1;
    let table = sheaf_cohomology_table(m, floor - 1 - n, upper - 1, cfg)?;
    if !regular_in(&table, upper) {
        return Err(Error::Internal(format!("not {upper}-regular although the Betti bound says so")));
    }
    let mut mm = upper;
    while mm > floor - 1 && regular_in(&table, mm - 1) {
        mm -= 1;
    }
    if mm != floor {
        return Err(Error::Internal(format!("cohomological search gives {mm}, duality gives {floor}")));
    }
    Ok(mm)
}

/// `m^[L]` as a module.
fn bracket_power_module(m: &PresentedModule, big_l: u32) -> Result<PresentedModule> {
    let ring = m.ring();
    let gens: Vec<MultiPoly> = (0..ring.nvars()).map(|i| ring.var_at(i).pow(big_l)).collect();
    PresentedModule::ideal_module(&Submodule::ideal(ring, gens)?)
}

/// `M / H^0_m(M)`.
pub fn saturate_module(m: &PresentedModule) -> Result<PresentedModule> {
    let irr = Submodule::irrelevant_ideal(m.ring());
    let sat = crate::groebner::saturation(&m.relations(), &irr)?.saturation;
    Ok(PresentedModule::from_submodule(m.cover().clone(), &sat)?.minimal_presentation())
}

/// A module `S` with `S_l = H^0(M~(l))` for every `l` in `[lo, hi]`.
pub fn global_sections_module(m: &PresentedModule, lo: i64, hi: i64, cfg: &LocalCohomologyConfig) -> Result<PresentedModule> {
    let table = sheaf_cohomology_table(m, lo, hi, cfg)?;
    let sat = saturate_module(m)?;
    for big_l in 1..=cfg.power_cap as u32 {
        cfg.cancel.as_ref().map_or(Ok(()), |t| if t.is_cancelled() { Err(Error::Cancelled) } else { Ok(()) })?;
        let s = hom_module(&bracket_power_module(m, big_l)?, &sat);
        let dims = s.graded_dims(lo, hi)?;
        if (lo..=hi).all(|l| dims.get(l) == table.get(0, l)) {
            return Ok(s);
        }
    }
    Err(Error::Inconclusive { p: 0, cap: cfg.power_cap, lo, hi })
}

/// Whether `A_1 · S_k = S_{k+1}`.
fn multiplication_surjective(s: &PresentedModule, k: i64) -> bool {
    let ring = s.ring();
    let src = s.basis_in_degree(k);
    let dst = s.basis_in_degree(k + 1);
    if dst.is_empty() {
        return true;
    }
    let r = s.num_generators();
    let mut rows = Vec::new();
    for v in 0..ring.nvars() {
        let x = ring.var_at(v);
        for (i, mono) in &src {
            let mut vec = vec![ring.zero(); r];
            vec[*i] = &x * &ring.monomial(mono.clone());
            rows.push(s.coordinates(&vec, &dst));
        }
    }
    rank(&rows) == dst.len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityRow {
    pub l: i64,
    /// (i) `l`-regularity.
    pub regular: bool,
    /// (ii) `H^0(O(1)) ⊗ H^0(M~(l)) -> H^0(M~(l+1))` is onto.
    pub multiplication_surjective: bool,
    /// (iii) `M~(l)` is generated by global sections.
    pub globally_generated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub m: i64,
    pub rows: Vec<RegularityRow>,
}

impl RegularityReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.regular && r.multiplication_surjective && r.globally_generated)
    }
}

/// Check the consequences of `m`-regularity on `l ∈ [m, m + horizon]`.
pub fn regularity_properties_check(m: &PresentedModule, mm: i64, horizon: usize, cfg: &LocalCohomologyConfig) -> Result<RegularityReport> {
    let n = require_standard(m)? as i64;
    if !is_m_regular(m, mm, cfg)? {
        return Err(Error::PreconditionFailed(format!("module is not {mm}-regular")));
    }
    let hi = mm + horizon as i64;
    let table = sheaf_cohomology_table(m, mm - n, hi, cfg)?;
    let s = global_sections_module(m, mm, hi + 1, cfg)?;
    let top_gen = s.cover().twists().iter().copied().max().unwrap_or(mm);
    let last = hi.max(top_gen);
    let surj: BTreeMap<i64, bool> = (mm..=last).map(|k| (k, multiplication_surjective(&s, k))).collect();
    let rows = (mm..=hi)
        .map(|l| RegularityRow {
            l,
            regular: regular_in(&table, l),
            multiplication_surjective: surj[&l],
            globally_generated: (l..top_gen).all(|k| surj[&k]),
        })
        .collect();
    Ok(RegularityReport { m: mm, rows })
}
