//! Local cohomology as a limit of Ext modules, depth, Cohen-Macaulay tests, Mayer-Vietoris
//! and graded local duality checks.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::groebner::{colon_element, saturation, Submodule};
use crate::homology::{ext_module, krull_dimension, subquotient, GradedDims, GradedMap, PresentedModule};
use crate::poly::{MultiPoly, RingRef};

/// Cooperative cancellation flag shared between a caller and a long computation.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::SeqCst);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::SeqCst)
    }
}

/// Which cofinal family of ideals the Ext-limit runs over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum PowerFamily {
    /// `(f_1^l, ..., f_r^l)`: much smaller presentations, same limit.
    #[default]
    Bracket,
    /// `I^l`.
    Ordinary,
}

#[derive(Clone, Debug)]
pub struct LocalCohomologyConfig {
    pub power_cap: usize,
    pub family: PowerFamily,
    /// Extra degrees checked on each side of the window.
    pub margin: i64,
    /// Number of consecutive powers that must agree.
    pub agreement: usize,
    pub cancel: Option<CancelToken>,
}

impl Default for LocalCohomologyConfig {
    fn default() -> Self {
        LocalCohomologyConfig { power_cap: 12, family: PowerFamily::Bracket, margin: 1, agreement: 3, cancel: None }
    }
}

impl LocalCohomologyConfig {
    fn check_cancel(&self) -> Result<()> {
        match &self.cancel {
            Some(t) if t.is_cancelled() => Err(Error::Cancelled),
            _ => Ok(()),
        }
    }
}

/// `H^p_I(M)` on a window, together with the power at which the Ext-limit settled.
#[derive(Clone, Debug)]
pub struct LocalCohomologyResult {
    pub p: usize,
    pub ideal: Submodule,
    pub dims: GradedDims,
    pub stabilized_at_power: usize,
}

/// Fine-graded pieces `H^p_I(M)_α` for `α` in a box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FineLocalCohomology {
    pub p: usize,
    pub dims: BTreeMap<Vec<i64>, usize>,
    pub box_range: (i64, i64),
    pub stabilized_at_power: usize,
}

fn power_ideal(ideal: &Submodule, l: usize, family: PowerFamily) -> Result<Submodule> {
    let gens: Vec<MultiPoly> = ideal.ideal_generators()?.into_iter().filter(|g| !g.is_zero()).collect();
    let ring = ideal.ring();
    let out = match family {
        PowerFamily::Bracket => gens.iter().map(|g| g.pow(l as u32)).collect(),
        PowerFamily::Ordinary => {
            let mut cur = vec![ring.one()];
            for _ in 0..l {
                let mut next = Vec::new();
                for a in &cur {
                    for g in &gens {
                        let p = a * g;
                        if !next.contains(&p) {
                            next.push(p);
                        }
                    }
                }
                cur = next;
            }
            cur
        }
    };
    Submodule::ideal(ring, out)
}

fn check_ideal(ideal: &Submodule, m: &PresentedModule) -> Result<()> {
    if ideal.ring() != m.ring() {
        return Err(Error::RingMismatch);
    }
    let gens = ideal.ideal_generators()?;
    if let Some(g) = gens.iter().find(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous(format!("ideal generator {g}")));
    }
    Ok(())
}

/// `H^0_I(M)`: the elements of `M` killed by a power of `I`, as `(N : I^∞) / N`.
pub fn h0_local(ideal: &Submodule, m: &PresentedModule) -> Result<PresentedModule> {
    check_ideal(ideal, m)?;
    let ring = m.ring();
    let n = m.relations();
    let sat = saturation(&n, ideal)?.saturation;
    let z = sat.generators().iter().map(|g| g.comps().to_vec()).collect();
    let b = n.generators().iter().map(|g| g.comps().to_vec()).collect();
    Ok(subquotient(ring, m.cover(), z, b))
}

fn cache_key(tag: &str, ideal: &Submodule, lo: i64, hi: i64, p_max: usize, cfg: &LocalCohomologyConfig) -> String {
    let gens: Vec<String> = ideal.ideal_generators().unwrap_or_default().iter().map(|g| g.to_string()).collect();
    format!("{tag}|{}|{lo}|{hi}|{p_max}|{:?}|{}|{}|{}", gens.join(","), cfg.family, cfg.power_cap, cfg.margin, cfg.agreement)
}

/// Smallest powers at which agreement is trusted. Below the first, `I^[l]` may not yet reach
/// the torsion of `M`; below the second, `Ext^p(A/I^[l], M)` may not yet reach degree `lo`.
fn trusted_powers(ideal: &Submodule, m: &PresentedModule, lo: i64) -> (usize, usize) {
    let gens = ideal.ideal_generators().unwrap_or_default();
    let s = gens.iter().filter_map(|g| g.degree()).filter(|&d| d > 0).min().unwrap_or(1);
    let twists = m.cover().twists();
    let (Some(&a_min), Some(&a_max)) = (twists.iter().min(), twists.iter().max()) else { return (1, 1) };
    let b_max = m.presentation().source().twists().iter().copied().max().unwrap_or(a_min);
    let up = |span: i64| (span.max(0) as usize).div_ceil(s as usize).max(1);
    (up(b_max - a_min), up(a_max - lo))
}

/// Run the Ext-limit for all `p <= p_max` at once, measuring each Ext module with `measure`.
fn ext_limit<T: Clone + PartialEq>(
    ideal: &Submodule,
    m: &PresentedModule,
    p_max: usize,
    cfg: &LocalCohomologyConfig,
    window: (i64, i64),
    measure: impl Fn(&PresentedModule) -> Result<T>,
) -> Result<Vec<(T, usize)>> {
    let need = cfg.agreement.max(1);
    let (torsion_gate, low_gate) = trusted_powers(ideal, m, window.0 - cfg.margin);
    let mut history: Vec<Vec<T>> = vec![Vec::new(); p_max + 1];
    let mut done: Vec<Option<(T, usize)>> = vec![None; p_max + 1];
    for l in 1..=cfg.power_cap {
        cfg.check_cancel()?;
        let q = PresentedModule::quotient(&power_ideal(ideal, l, cfg.family)?)?;
        for p in 0..=p_max {
            if done[p].is_some() {
                continue;
            }
            cfg.check_cancel()?;
            let e = ext_module(p, &q, m);
            let v = measure(&e)?;
            history[p].push(v);
            let h = &history[p];
            let gate = if p == 0 { torsion_gate } else { torsion_gate.max(low_gate) };
            if h.len() >= need && l + 1 - need >= gate && h[h.len() - need..].iter().all(|x| *x == h[h.len() - 1]) {
                // the middle of the agreeing run
                let l_star = l + 1 - need.div_ceil(2).max(1);
                done[p] = Some((h[h.len() - 1].clone(), l_star.max(1)));
            }
        }
        if done.iter().all(|d| d.is_some()) {
            return Ok(done.into_iter().map(|d| d.unwrap()).collect());
        }
    }
    let p = done.iter().position(|d| d.is_none()).unwrap();
    Err(Error::Inconclusive { p, cap: cfg.power_cap, lo: window.0, hi: window.1 })
}

/// `H^p_I(M)` on `[lo, hi]` for every `p <= p_max`.
pub fn local_cohomology_all(
    ideal: &Submodule,
    m: &PresentedModule,
    p_max: usize,
    lo: i64,
    hi: i64,
    cfg: &LocalCohomologyConfig,
) -> Result<Vec<LocalCohomologyResult>> {
    check_ideal(ideal, m)?;
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty window [{lo}, {hi}]")));
    }
    let key = cache_key("lc", ideal, lo, hi, p_max, cfg);
    if let Some(hit) = m.cache().memo.lock().unwrap().get(&key).cloned() {
        if let Ok(v) = hit.downcast::<Vec<LocalCohomologyResult>>() {
            return Ok((*v).clone());
        }
    }
    let (wlo, whi) = (lo - cfg.margin, hi + cfg.margin);
    let raw = ext_limit(ideal, m, p_max, cfg, (lo, hi), |e| e.graded_dims(wlo, whi))?;
    let out: Vec<LocalCohomologyResult> = raw
        .into_iter()
        .enumerate()
        .map(|(p, (d, l))| LocalCohomologyResult { p, ideal: ideal.clone(), dims: d.restrict(lo, hi), stabilized_at_power: l })
        .collect();
    m.cache().memo.lock().unwrap().insert(key, Arc::new(out.clone()));
    Ok(out)
}

pub fn local_cohomology_dims(
    p: usize,
    ideal: &Submodule,
    m: &PresentedModule,
    lo: i64,
    hi: i64,
    cfg: &LocalCohomologyConfig,
) -> Result<LocalCohomologyResult> {
    if p > m.ring().nvars() {
        // vanishes beyond the number of variables; still run the limit for that p alone
        let raw = ext_limit(ideal, m, p, cfg, (lo, hi), |e| e.graded_dims(lo - cfg.margin, hi + cfg.margin))?;
        let (d, l) = raw[p].clone();
        return Ok(LocalCohomologyResult { p, ideal: ideal.clone(), dims: d.restrict(lo, hi), stabilized_at_power: l });
    }
    let mut all = local_cohomology_all(ideal, m, p, lo, hi, cfg)?;
    Ok(all.swap_remove(p))
}

fn box_points(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * (hi - lo + 1) as usize);
        for v in &out {
            for a in lo..=hi {
                let mut w = v.clone();
                w.push(a);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

fn is_monomial_ideal(ideal: &Submodule) -> bool {
    ideal.ideal_generators().map(|g| g.iter().all(|f| f.num_terms() <= 1)).unwrap_or(false)
}

/// Fine-graded local cohomology for monomial `I` and a module with fine twists, on the box
/// `[lo, hi]^n` of multidegrees.
pub fn local_cohomology_fine(
    ideal: &Submodule,
    m: &PresentedModule,
    p_max: usize,
    lo: i64,
    hi: i64,
    cfg: &LocalCohomologyConfig,
) -> Result<Vec<FineLocalCohomology>> {
    check_ideal(ideal, m)?;
    if !is_monomial_ideal(ideal) {
        return Err(Error::InvalidArgument("fine grading needs a monomial ideal".into()));
    }
    if !m.has_fine_grading() {
        return Err(Error::InvalidArgument("module carries no fine grading".into()));
    }
    let key = cache_key("fine", ideal, lo, hi, p_max, cfg);
    if let Some(hit) = m.cache().memo.lock().unwrap().get(&key).cloned() {
        if let Ok(v) = hit.downcast::<Vec<FineLocalCohomology>>() {
            return Ok((*v).clone());
        }
    }
    let pts = box_points(m.ring().nvars(), lo - cfg.margin, hi + cfg.margin);
    let raw = ext_limit(ideal, m, p_max, cfg, (lo, hi), |e| {
        let mut d = BTreeMap::new();
        if e.num_generators() == 0 {
            return Ok(d);
        }
        for a in &pts {
            let v = e.fine_dim(a)?;
            if v > 0 {
                d.insert(a.clone(), v);
            }
        }
        Ok(d)
    })?;
    let out: Vec<FineLocalCohomology> = raw
        .into_iter()
        .enumerate()
        .map(|(p, (d, l))| FineLocalCohomology {
            p,
            dims: d.into_iter().filter(|(a, _)| a.iter().all(|&x| lo <= x && x <= hi)).collect(),
            box_range: (lo, hi),
            stabilized_at_power: l,
        })
        .collect();
    m.cache().memo.lock().unwrap().insert(key, Arc::new(out.clone()));
    Ok(out)
}

/// `M / IM`.
pub fn quotient_by_ideal(m: &PresentedModule, ideal: &Submodule) -> Result<PresentedModule> {
    let ring = m.ring();
    let r = m.num_generators();
    let mut cols = m.presentation().columns();
    for f in ideal.ideal_generators()? {
        if f.is_zero() {
            continue;
        }
        for i in 0..r {
            let mut c = vec![ring.zero(); r];
            c[i] = f.clone();
            cols.push(c);
        }
    }
    Ok(PresentedModule::new(GradedMap::from_columns(ring, m.cover().clone(), cols)?))
}

/// `min { p : Ext^p(A/I, M) != 0 }`, or `None` when `IM = M`.
pub fn ext_depth(ideal: &Submodule, m: &PresentedModule) -> Result<Option<(usize, PresentedModule)>> {
    check_ideal(ideal, m)?;
    if quotient_by_ideal(m, ideal)?.is_zero() {
        return Ok(None);
    }
    let q = PresentedModule::quotient(ideal)?;
    for p in 0..=m.ring().nvars() {
        let e = ext_module(p, &q, m);
        if !e.is_zero() {
            return Ok(Some((p, e)));
        }
    }
    Err(Error::Internal("no nonvanishing Ext up to the number of variables".into()))
}

/// The nonzero `Ext^p(A/I, M)` witnessing the depth.
#[derive(Clone, Debug)]
pub struct ExtWitness {
    pub p: usize,
    pub generator_degrees: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct DepthCertificate {
    pub depth_value: usize,
    pub regular_sequence: Vec<MultiPoly>,
    pub ext_witness: ExtWitness,
    /// False when the random search found fewer than `depth_value` elements.
    pub complete: bool,
}

/// Whether `a` is a nonzerodivisor on `M`, i.e. `(0 :_M a) = 0`.
pub fn is_nonzerodivisor(a: &MultiPoly, m: &PresentedModule) -> Result<bool> {
    let n = m.relations();
    let c = colon_element(&n, a)?;
    n.contains_submodule(&c)
}

pub(crate) fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        Field::Rationals => {
            let mut v = 0;
            while v == 0 {
                v = rng.gen_range(-9i64..=9);
            }
            field.from_i64(v)
        }
        Field::Prime(p) => field.from_i64(rng.gen_range(1..p) as i64),
    }
}

fn random_form(ring: &RingRef, d: i64, rng: &mut ChaCha8Rng) -> MultiPoly {
    let terms = ring.monomials_of_degree(d).into_iter().map(|mo| (mo, random_scalar(ring.field(), rng))).collect();
    MultiPoly::from_terms(ring, terms)
}

/// Random homogeneous elements of `I`: degree-one combinations first, then each generator degree.
fn candidates(ideal: &Submodule, rng: &mut ChaCha8Rng, tries: usize) -> Result<Vec<MultiPoly>> {
    let ring = ideal.ring();
    let gens: Vec<MultiPoly> = ideal.ideal_generators()?.into_iter().filter(|g| !g.is_zero()).collect();
    let mut degrees: Vec<i64> = gens.iter().filter_map(|g| g.degree()).collect();
    degrees.sort();
    degrees.dedup();
    let mut out = Vec::new();
    for &d in &degrees {
        for _ in 0..tries {
            let mut f = ring.zero();
            for g in &gens {
                let e = g.degree().unwrap();
                if e <= d {
                    f = f + random_form(ring, d - e, rng) * g;
                }
            }
            if !f.is_zero() {
                out.push(f);
            }
        }
    }
    Ok(out)
}

/// Depth of `M` with respect to `I`, with a regular sequence found by seeded random search.
pub fn depth(ideal: &Submodule, m: &PresentedModule, seed: u64) -> Result<DepthCertificate> {
    if !m.ring().is_positively_graded() {
        return Err(Error::InvalidArgument("depth needs positive weights".into()));
    }
    let (value, witness) = ext_depth(ideal, m)?.ok_or(Error::DepthUndefined)?;
    let ext_witness = ExtWitness { p: value, generator_degrees: witness.cover().twists().to_vec() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seq: Vec<MultiPoly> = Vec::new();
    let mut cur = m.clone();
    while seq.len() < value {
        let mut found = None;
        for f in candidates(ideal, &mut rng, 3)? {
            if is_nonzerodivisor(&f, &cur)? {
                found = Some(f);
                break;
            }
        }
        let Some(f) = found else { break };
        cur = quotient_by_ideal(&cur, &Submodule::ideal(m.ring(), vec![f.clone()])?)?;
        seq.push(f);
    }
    let complete = seq.len() == value;
    Ok(DepthCertificate { depth_value: value, regular_sequence: seq, ext_witness, complete })
}

/// Whether `seq` is an `M`-regular sequence (each element a nonzerodivisor modulo the previous,
/// and the final quotient nonzero).
pub fn is_regular_sequence(seq: &[MultiPoly], m: &PresentedModule) -> Result<bool> {
    let mut cur = m.clone();
    for f in seq {
        if !is_nonzerodivisor(f, &cur)? {
            return Ok(false);
        }
        cur = quotient_by_ideal(&cur, &Submodule::ideal(m.ring(), vec![f.clone()])?)?;
    }
    Ok(!cur.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmReport {
    pub is_cm: bool,
    pub depth: usize,
    pub dim: i64,
}

/// Cohen-Macaulay test at the irrelevant ideal: depth equals Krull dimension.
pub fn cm_test(m: &PresentedModule) -> Result<CmReport> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let irr = Submodule::irrelevant_ideal(m.ring());
    let (d, _) = ext_depth(&irr, m)?.ok_or(Error::DepthUndefined)?;
    let dim = krull_dimension(m)?;
    Ok(CmReport { is_cm: d as i64 == dim, depth: d, dim })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MayerVietorisReport {
    /// Alternating sums per coarse degree (summed over the fine degrees of that weight in the box
    /// when `fine` is set).
    pub sums: BTreeMap<i64, i64>,
    /// Number of (fine or coarse) degrees whose alternating sum is nonzero.
    pub failures: usize,
    pub degrees_checked: usize,
    pub fine: bool,
    pub p_max: usize,
}

impl MayerVietorisReport {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

fn ideal_sum(i: &Submodule, j: &Submodule) -> Result<Submodule> {
    i.sum(j)
}

/// Degreewise alternating sums `Σ_p (-1)^p (h^p_{I+J} - h^p_I - h^p_J + h^p_{I∩J})` over `p <= p_max`.
///
/// Monomial ideals over a finely graded module use the `Z^n` grading on the box `[lo, hi]^n`,
/// where every graded piece is finite even when the ideals are not primary to the irrelevant ideal.
pub fn mayer_vietoris_check(
    i: &Submodule,
    j: &Submodule,
    m: &PresentedModule,
    p_max: usize,
    lo: i64,
    hi: i64,
    cfg: &LocalCohomologyConfig,
) -> Result<MayerVietorisReport> {
    let sum = ideal_sum(i, j)?;
    let cap = crate::groebner::ideal_intersection(i, j)?;
    let cap = Submodule::ideal(
        m.ring(),
        cap.ideal_generators()?.into_iter().map(|g| g.make_monic()).collect(),
    )?;
    let terms: [(&Submodule, i64); 4] = [(&sum, 1), (i, -1), (j, -1), (&cap, 1)];
    let fine = terms.iter().all(|(x, _)| is_monomial_ideal(x)) && m.has_fine_grading();
    let w = m.ring().weights().to_vec();
    let mut sums: BTreeMap<i64, i64> = (lo..=hi).map(|d| (d, 0)).collect();
    let mut failures = 0;
    let degrees_checked;
    if fine {
        let mut per: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (ideal, s) in terms {
            for r in local_cohomology_fine(ideal, m, p_max, lo, hi, cfg)? {
                let sign = if r.p % 2 == 0 { 1 } else { -1 };
                for (a, v) in r.dims {
                    *per.entry(a).or_insert(0) += s * sign * v as i64;
                }
            }
        }
        degrees_checked = ((hi - lo + 1) as usize).pow(m.ring().nvars() as u32);
        for (a, v) in per {
            if v != 0 {
                failures += 1;
            }
            let d: i64 = a.iter().zip(&w).map(|(x, &wt)| x * wt as i64).sum();
            if let Some(e) = sums.get_mut(&d) {
                *e += v;
            }
        }
    } else {
        for (ideal, s) in terms {
            for r in local_cohomology_all(ideal, m, p_max, lo, hi, cfg)? {
                let sign = if r.p % 2 == 0 { 1 } else { -1 };
                for (d, v) in r.dims.dims {
                    *sums.get_mut(&d).unwrap() += s * sign * v as i64;
                }
            }
        }
        degrees_checked = (hi - lo + 1) as usize;
        failures = sums.values().filter(|v| **v != 0).count();
    }
    Ok(MayerVietorisReport { sums, failures, degrees_checked, fine, p_max })
}

/// `dim H^p_m(M)_j - dim Ext^{n-p}(M, A(-Σ w))_{-j}` for `j` in the window, `n` the number of
/// variables. Only nonzero entries are stored.
pub fn local_duality_defect(
    m: &PresentedModule,
    p: usize,
    lo: i64,
    hi: i64,
    cfg: &LocalCohomologyConfig,
) -> Result<BTreeMap<i64, i64>> {
    let ring = m.ring();
    if !ring.is_positively_graded() {
        return Err(Error::InvalidArgument("local duality needs positive weights".into()));
    }
    let n = ring.nvars();
    let irr = Submodule::irrelevant_ideal(ring);
    let lhs = local_cohomology_dims(p, &irr, m, lo, hi, cfg)?.dims;
    let rhs = if p <= n {
        let sw: i64 = ring.weights().iter().map(|&w| w as i64).sum();
        let canon = PresentedModule::free(ring, vec![sw]);
        ext_module(n - p, m, &canon).graded_dims(-hi, -lo)?
    } else {
        GradedDims::new((-hi, -lo))
    };
    let mut out = BTreeMap::new();
    for d in lo..=hi {
        let v = lhs.get(d) as i64 - rhs.get(-d) as i64;
        if v != 0 {
            out.insert(d, v);
        }
    }
    Ok(out)
}

/// Every generator of the presented module is killed by some power of `I` (checked up to `cap`).
pub fn is_torsion(ideal: &Submodule, m: &PresentedModule, cap: u32) -> Result<bool> {
    let gens = ideal.ideal_generators()?;
    let r = m.num_generators();
    let ring = m.ring();
    'outer: for i in 0..r {
        for k in 1..=cap {
            let ok = gens.iter().all(|g| {
                let mut v = vec![ring.zero(); r];
                v[i] = g.pow(k);
                m.is_zero_element(&v)
            });
            if ok {
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}
