//! Statement execution and command dispatch.

use std::time::Instant;

use gradalg::families::{fiber_euler_characteristics, fiber_hilbert_profile, flat_over_line, hypersurface_hilbert_polynomial, torsion_free_at, FamilyModule};
use gradalg::grassmann::{chart_transition, pluecker, pluecker_relations_residual};
use gradalg::groebner::{colon, ideal_intersection, saturation};
use gradalg::homology::{
    betti_table, ext_module, hilbert_polynomial, hilbert_series, hom_module, krull_dimension, minimal_free_resolution, projective_dimension, tensor_product, tor_module,
    PresentedModule,
};
use gradalg::local::{cm_test, depth, h0_local, is_nonzerodivisor, local_cohomology_dims, local_duality_defect, mayer_vietoris_check, LocalCohomologyConfig};
use gradalg::projective::{global_sections_module, is_m_regular, regularity, regularity_properties_check, serre_dual_dim, serre_duality_defect, sheaf_cohomology_dim, sheaf_cohomology_table};
use gradalg::{groebner_basis, syzygies, FreeElement, ModuleOrder, MultiPoly, Submodule};
use serde_json::{json, Value as Json};

use crate::ast::{Arg, Command, Script, Stmt};
use crate::lexer::Pos;
use crate::report::{dims_json, dims_text, numerical_json, EngineInfo, Report, Status};
use crate::values::{poly, scalar, Env, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub power_cap: usize,
    pub window: (i64, i64),
    pub continue_on_error: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 0, power_cap: LocalCohomologyConfig::default().power_cap, window: (-4, 4), continue_on_error: false }
    }
}

impl RunConfig {
    pub fn local(&self) -> LocalCohomologyConfig {
        LocalCohomologyConfig { power_cap: self.power_cap, ..Default::default() }
    }

    pub fn engine_info(&self) -> EngineInfo {
        EngineInfo {
            version: env!("CARGO_PKG_VERSION").to_string(),
            monomial_order: "grevlex".into(),
            module_order: "term-over-position".into(),
            power_family: "bracket".into(),
            power_cap: self.power_cap,
            window: self.window,
            seed: self.seed,
        }
    }
}

type Outcome = Result<(Json, String), String>;

/// Run every statement in order. Stops at the first failure unless `continue_on_error` is set.
pub fn run(script: &Script, cfg: &RunConfig) -> Vec<Report> {
    let mut env = Env::default();
    let mut reports = Vec::new();
    for stmt in &script.statements {
        let before = reports.len();
        match stmt {
            Stmt::Decl { name, decl, pos, .. } => {
                if let Err(e) = env.declare(name, decl) {
                    let echo = stmt.to_string().trim_end_matches(';').to_string();
                    reports.push(failure(reports.len(), *pos, echo, e));
                }
            }
            Stmt::Use { ring, .. } => env.use_ring(ring),
            Stmt::Command(c) => {
                let r = execute(reports.len(), c, &env, cfg);
                reports.push(r);
            }
            Stmt::Par(cmds, _) => {
                let base = reports.len();
                let env = &env;
                let out: Vec<Report> = std::thread::scope(|s| {
                    let handles: Vec<_> = cmds.iter().enumerate().map(|(k, c)| s.spawn(move || execute(base + k, c, env, cfg))).collect();
                    handles.into_iter().map(|h| h.join().expect("command thread panicked")).collect()
                });
                reports.extend(out);
            }
        }
        if !cfg.continue_on_error && reports[before..].iter().any(|r| !r.is_ok()) {
            break;
        }
    }
    reports
}

fn failure(index: usize, pos: Pos, command: String, e: String) -> Report {
    Report {
        index,
        line: pos.line,
        column: pos.col,
        command,
        status: Status::Error,
        result: None,
        error: Some(format!("line {}, column {}: {e}", pos.line, pos.col)),
        text: String::new(),
        elapsed: Default::default(),
    }
}

pub fn execute(index: usize, cmd: &Command, env: &Env, cfg: &RunConfig) -> Report {
    let start = Instant::now();
    let out = dispatch(cmd, env, cfg);
    let elapsed = start.elapsed();
    match out {
        Ok((result, text)) => Report {
            index,
            line: cmd.pos.line,
            column: cmd.pos.col,
            command: cmd.to_string(),
            status: Status::Ok,
            result: Some(result),
            error: None,
            text,
            elapsed,
        },
        Err(e) => Report { elapsed, ..failure(index, cmd.pos, cmd.to_string(), e) },
    }
}

struct Args<'a> {
    cmd: &'a Command,
    env: &'a Env,
    cfg: &'a RunConfig,
}

fn err<T>(r: gradalg::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

impl Args<'_> {
    fn arg(&self, i: usize) -> Result<&Arg, String> {
        self.cmd.args.get(i).ok_or_else(|| format!("missing argument {}", i + 1))
    }

    fn int(&self, i: usize) -> Result<i64, String> {
        match self.arg(i)? {
            Arg::Int(v) => Ok(*v),
            a => Err(format!("expected an integer, found {a}")),
        }
    }

    fn index(&self, i: usize) -> Result<usize, String> {
        usize::try_from(self.int(i)?).map_err(|_| "expected a nonnegative integer".to_string())
    }

    fn name(&self, i: usize) -> Result<&str, String> {
        match self.arg(i)? {
            Arg::Name(n) => Ok(n),
            a => Err(format!("expected a name, found {a}")),
        }
    }

    fn module(&self, i: usize) -> Result<PresentedModule, String> {
        let n = self.name(i)?;
        match self.env.get(n) {
            Some(Value::Module(m)) => Ok(m.clone()),
            _ => Err(format!("{n} is not a module")),
        }
    }

    fn ideal(&self, i: usize) -> Result<Submodule, String> {
        self.env.ideal_arg(self.name(i)?, self.cmd.ring.as_deref())
    }

    fn family(&self, i: usize) -> Result<FamilyModule, String> {
        let n = self.name(i)?;
        match self.env.get(n) {
            Some(Value::Family(f)) => Ok(f.clone()),
            _ => Err(format!("{n} is not a family")),
        }
    }

    fn window(&self, i: usize) -> (i64, i64) {
        match self.cmd.args.get(i) {
            Some(Arg::Window(lo, hi)) => (*lo, *hi),
            _ => self.cfg.window,
        }
    }

    fn poly(&self, i: usize, ring: &gradalg::RingRef) -> Result<MultiPoly, String> {
        match self.arg(i)? {
            Arg::Poly(p) => poly(ring, p),
            a => Err(format!("expected a polynomial, found {a}")),
        }
    }
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn element(v: &FreeElement) -> String {
    match v.comps() {
        [f] => f.to_string(),
        cs => format!("[{}]", strings(cs).join(", ")),
    }
}

fn pairs<K: serde::Serialize, V: serde::Serialize>(m: impl IntoIterator<Item = (K, V)>) -> Json {
    Json::from(m.into_iter().map(|(k, v)| json!([k, v])).collect::<Vec<_>>())
}

fn generators_outcome(s: &Submodule) -> Outcome {
    let gens: Vec<String> = s.generators().iter().map(element).collect();
    let text = format!("({})", gens.join(", "));
    Ok((json!({ "generators": gens }), text))
}

fn module_outcome(m: &PresentedModule, lo: i64, hi: i64) -> Outcome {
    let min = m.minimal_presentation();
    let d = err(min.graded_dims(lo, hi))?;
    let twists = min.cover().twists().to_vec();
    let rel = min.presentation().source().twists().to_vec();
    let text = format!("generators in degrees {twists:?}, relations in degrees {rel:?}\ndims {}", dims_text(&d));
    Ok((json!({ "generator_degrees": twists, "relation_degrees": rel, "dims": dims_json(&d) }), text))
}

fn dispatch(cmd: &Command, env: &Env, cfg: &RunConfig) -> Outcome {
    let a = Args { cmd, env, cfg };
    let lc = cfg.local();
    match cmd.name.as_str() {
        "gb" => {
            let i = a.ideal(0)?;
            let gb = groebner_basis(&i, ModuleOrder::default());
            let basis: Vec<String> = gb.basis().iter().map(element).collect();
            let text = format!("({})", basis.join(", "));
            Ok((json!({ "basis": basis, "order": "grevlex" }), text))
        }
        "nf" => {
            let i = a.ideal(0)?;
            let f = a.poly(1, i.ring())?;
            let gb = groebner_basis(&i, ModuleOrder::default());
            let v = err(FreeElement::new(i.ring(), vec![f]))?;
            let r = err(gb.normal_form(&v))?;
            let member = r.is_zero();
            Ok((json!({ "normal_form": element(&r), "member": member }), format!("{}  (member: {member})", element(&r))))
        }
        "syz" => generators_outcome(&syzygies(&a.ideal(0)?, ModuleOrder::default())),
        "intersect" => generators_outcome(&err(ideal_intersection(&a.ideal(0)?, &a.ideal(1)?))?),
        "colon" => generators_outcome(&err(colon(&a.ideal(0)?, &a.ideal(1)?))?),
        "saturate" => {
            let s = err(saturation(&a.ideal(0)?, &a.ideal(1)?))?;
            let (mut j, t) = generators_outcome(&s.saturation)?;
            j["steps"] = json!(s.steps);
            Ok((j, format!("{t}  ({} colon steps)", s.steps)))
        }
        "present" => {
            let m = a.module(0)?;
            let (lo, hi) = cfg.window;
            module_outcome(&m, lo, hi)
        }
        "resolve" => {
            let m = a.module(0)?;
            let res = minimal_free_resolution(&m, m.ring().nvars() + 1);
            let b = res.betti_table();
            let ranks = b.ranks();
            let text = format!("ranks {ranks:?}\n{b}");
            let entries: Vec<Json> = b.entries.iter().map(|((i, j), v)| json!([i, j, v])).collect();
            Ok((json!({ "length": res.length(), "ranks": ranks, "betti": entries, "is_complex": res.is_complex(), "is_minimal": res.is_minimal() }), text))
        }
        "betti" => {
            let b = betti_table(&a.module(0)?);
            let entries: Vec<Json> = b.entries.iter().map(|((i, j), v)| json!([i, j, v])).collect();
            Ok((json!({ "betti": entries, "table": b.to_string() }), b.to_string()))
        }
        "pd" => {
            let pd = projective_dimension(&a.module(0)?);
            Ok((json!({ "pd": pd }), format!("pd = {pd}")))
        }
        "hilbert_series" => {
            let h = err(hilbert_series(&a.module(0)?))?;
            let r = h.reduced();
            Ok((
                json!({ "low": r.low, "numerator": r.numerator, "denominator_exponent": r.denominator_exponent, "display": r.to_string() }),
                r.to_string(),
            ))
        }
        "hilbert_poly" => {
            let p = err(hilbert_polynomial(&a.module(0)?))?;
            Ok((numerical_json(&p), format!("Phi(t) = {p}")))
        }
        "krull" => {
            let d = err(krull_dimension(&a.module(0)?))?;
            Ok((json!({ "dim": d }), format!("dim = {d}")))
        }
        "dims" => {
            let (lo, hi) = a.window(1);
            let d = err(a.module(0)?.graded_dims(lo, hi))?;
            Ok((json!({ "window": [lo, hi], "dims": dims_json(&d) }), dims_text(&d)))
        }
        "ext" | "tor" | "tensor" | "hom" => {
            let (m, n, w) = if matches!(cmd.name.as_str(), "ext" | "tor") { (a.module(1)?, a.module(2)?, 3) } else { (a.module(0)?, a.module(1)?, 2) };
            let out = match cmd.name.as_str() {
                "ext" => ext_module(a.index(0)?, &m, &n),
                "tor" => tor_module(a.index(0)?, &m, &n),
                "tensor" => tensor_product(&m, &n),
                _ => hom_module(&m, &n),
            };
            let (lo, hi) = a.window(w);
            module_outcome(&out, lo, hi)
        }
        "h0loc" => {
            let h = err(h0_local(&a.ideal(0)?, &a.module(1)?))?;
            let (lo, hi) = a.window(2);
            module_outcome(&h, lo, hi)
        }
        "localcoh" => {
            let (lo, hi) = a.window(3);
            let r = err(local_cohomology_dims(a.index(0)?, &a.ideal(1)?, &a.module(2)?, lo, hi, &lc))?;
            Ok((
                json!({ "p": r.p, "window": [lo, hi], "dims": dims_json(&r.dims), "stabilized_at_power": r.stabilized_at_power }),
                format!("H^{} dims {}  (stable from power {})", r.p, dims_text(&r.dims), r.stabilized_at_power),
            ))
        }
        "depth" => {
            let c = err(depth(&a.ideal(0)?, &a.module(1)?, cfg.seed))?;
            let seq = strings(&c.regular_sequence);
            Ok((
                json!({
                    "depth": c.depth_value,
                    "regular_sequence": seq,
                    "ext_witness": { "p": c.ext_witness.p, "generator_degrees": c.ext_witness.generator_degrees },
                    "complete": c.complete,
                }),
                format!("depth = {}  (regular sequence: {})", c.depth_value, seq.join(", ")),
            ))
        }
        "nzd" => {
            let m = a.module(0)?;
            let f = a.poly(1, m.ring())?;
            let b = err(is_nonzerodivisor(&f, &m))?;
            Ok((json!({ "nonzerodivisor": b }), format!("nonzerodivisor: {b}")))
        }
        "cm_test" => {
            let r = err(cm_test(&a.module(0)?))?;
            Ok((json!({ "is_cm": r.is_cm, "depth": r.depth, "dim": r.dim }), format!("isCM: {}  (depth {}, dim {})", r.is_cm, r.depth, r.dim)))
        }
        "mv_check" => {
            let (lo, hi) = a.window(4);
            let r = err(mayer_vietoris_check(&a.ideal(0)?, &a.ideal(1)?, &a.module(2)?, a.index(3)?, lo, hi, &lc))?;
            Ok((
                json!({ "holds": r.holds(), "failures": r.failures, "degrees_checked": r.degrees_checked, "fine": r.fine, "p_max": r.p_max, "sums": pairs(r.sums.clone()) }),
                format!("holds: {}  ({} degrees checked, fine grading: {})", r.holds(), r.degrees_checked, r.fine),
            ))
        }
        "local_duality" => {
            let (lo, hi) = a.window(2);
            let p = a.index(1)?;
            let d = err(local_duality_defect(&a.module(0)?, p, lo, hi, &lc))?;
            let zero = d.values().all(|&v| v == 0);
            Ok((json!({ "p": p, "window": [lo, hi], "defect": pairs(d.clone()), "zero": zero }), format!("defect vanishes: {zero}")))
        }
        "sheafcoh" => {
            let (p, l) = (a.index(1)?, a.int(2)?);
            let h = err(sheaf_cohomology_dim(&a.module(0)?, p, l, &lc))?;
            Ok((json!({ "p": p, "l": l, "h": h }), format!("h^{p}(M~({l})) = {h}")))
        }
        "sheaf_table" => {
            let m = a.module(0)?;
            let (lo, hi) = a.window(1);
            let t = err(sheaf_cohomology_table(&m, lo, hi, &lc))?;
            let phi = err(hilbert_polynomial(&m))?;
            let mut rows = Vec::new();
            let mut text = String::new();
            for l in lo..=hi {
                let h: Vec<usize> = (0..=t.n).map(|p| t.get(p, l)).collect();
                let (chi, ph) = (t.euler_characteristic(l), phi.eval(l));
                text.push_str(&format!("l = {l}: h = {h:?}, chi = {chi}, Phi = {ph}\n"));
                rows.push(json!({ "l": l, "h": h, "euler": chi, "phi": ph }));
            }
            Ok((json!({ "n": t.n, "window": [lo, hi], "rows": rows }), text.trim_end().to_string()))
        }
        "serre_defect" => {
            let m = a.module(0)?;
            let (p, l) = (a.index(1)?, a.int(2)?);
            let d = err(serre_duality_defect(&m, p, l, &lc))?;
            let dual = err(serre_dual_dim(&m, p, l))?;
            Ok((json!({ "p": p, "l": l, "defect": d, "dual_dim": dual }), format!("defect = {d}  (dual side {dual})")))
        }
        "regularity" => {
            let m = a.module(0)?;
            let r = err(regularity(&m, &lc))?;
            let bound = betti_table(&m).max_shifted_degree();
            Ok((json!({ "regularity": r, "betti_bound": bound }), format!("reg = {r}  (Betti bound {})", bound.map_or("-".into(), |b| b.to_string()))))
        }
        "is_regular" => {
            let mm = a.int(1)?;
            let b = err(is_m_regular(&a.module(0)?, mm, &lc))?;
            Ok((json!({ "m": mm, "regular": b }), format!("{mm}-regular: {b}")))
        }
        "reg_props" => {
            let r = err(regularity_properties_check(&a.module(0)?, a.int(1)?, a.index(2)?, &lc))?;
            let rows: Vec<Json> = r
                .rows
                .iter()
                .map(|x| json!({ "l": x.l, "regular": x.regular, "multiplication_surjective": x.multiplication_surjective, "globally_generated": x.globally_generated }))
                .collect();
            Ok((json!({ "m": r.m, "rows": rows, "all_hold": r.all_hold() }), format!("all properties hold on [{}, {}]: {}", r.m, r.m + r.rows.len() as i64 - 1, r.all_hold())))
        }
        "global_sections" => {
            let (lo, hi) = a.window(1);
            let s = err(global_sections_module(&a.module(0)?, lo, hi, &lc))?;
            let d = err(s.graded_dims(lo, hi))?;
            Ok((json!({ "window": [lo, hi], "dims": dims_json(&d) }), dims_text(&d)))
        }
        "flat_test" => {
            let r = err(flat_over_line(&a.family(0)?))?;
            let w = r.torsion_witness.as_ref().map(element);
            let text = match &w {
                Some(w) => format!("flat: {}  (torsion witness {w})", r.flat),
                None => format!("flat: {}", r.flat),
            };
            Ok((json!({ "flat": r.flat, "torsion_witness": w, "generic_denominator": r.generic_denominator.to_string() }), text))
        }
        "fiber_profile" => {
            let f = a.family(0)?;
            let points = points(&a, 1, &f)?;
            let p = err(fiber_hilbert_profile(&f, &points, cfg.seed))?;
            let samples: Vec<Json> = p.samples.iter().map(|(c, q)| json!([c.to_string(), numerical_json(q)])).collect();
            let strata: Vec<Json> = p.strata.iter().map(|(q, cs)| json!({ "polynomial": numerical_json(q), "points": strings(cs) })).collect();
            let mut text = String::new();
            for (q, cs) in &p.strata {
                text.push_str(&format!("Phi = {q} at {}\n", strings(cs).join(", ")));
            }
            text.push_str(&format!("generic: {}", p.generic));
            Ok((
                json!({
                    "samples": samples,
                    "strata": strata,
                    "distinct": p.distinct_polynomials(),
                    "generic": numerical_json(&p.generic),
                    "generic_points": strings(&p.generic_points),
                }),
                text,
            ))
        }
        "fiber_euler" => {
            let f = a.family(0)?;
            let l = a.int(1)?;
            let points = points(&a, 2, &f)?;
            let chi = err(fiber_euler_characteristics(&f, &points, l, &lc))?;
            let mut rows = Vec::new();
            let mut text = Vec::new();
            for c in &points {
                let x = chi[&c.to_string()];
                let tf = err(torsion_free_at(&f, c))?;
                text.push(format!("t = {c}: chi = {x}, torsion free: {tf}"));
                rows.push(json!({ "t": c.to_string(), "euler": x, "torsion_free": tf }));
            }
            Ok((json!({ "l": l, "fibers": rows }), text.join("\n")))
        }
        "hypersurface_phi" => {
            let p = err(hypersurface_hilbert_polynomial(a.int(0)?, a.int(1)?))?;
            Ok((numerical_json(&p), format!("Phi(t) = {p}")))
        }
        "pluecker" => {
            let v = err(pluecker(&env.matrix_arg(a.arg(0)?)?))?;
            let entries: Vec<Json> = v.coords.iter().map(|(s, c)| json!([s.iter().map(|j| j + 1).collect::<Vec<_>>(), c.to_string()])).collect();
            Ok((json!({ "d": v.d, "n": v.n, "coordinates": entries, "display": v.to_string() }), v.to_string()))
        }
        "pluecker_check" => {
            let Arg::Pluecker { d, n, coords } = a.arg(0)? else { return Err("expected a Pluecker vector".into()) };
            let v = env.pluecker_arg(*d, *n, coords)?;
            let res = pluecker_relations_residual(&v);
            let vanish = res.iter().all(|x| x.is_zero());
            let rs = strings(&res);
            Ok((json!({ "relations": rs.len(), "residuals": rs, "on_grassmannian": vanish }), format!("residuals [{}]  (on Gr: {vanish})", rs.join(", "))))
        }
        "chart" => {
            let m = env.matrix_arg(a.arg(0)?)?;
            let Arg::Subset(cols) = a.arg(1)? else { return Err("expected a column set".into()) };
            let c = err(chart_transition(&m, cols))?;
            let rows: Vec<Vec<String>> = c.rows().iter().map(|r| strings(r)).collect();
            let text = rows.iter().map(|r| format!("[{}]", r.join(", "))).collect::<Vec<_>>().join("\n");
            Ok((json!({ "columns": cols.iter().map(|j| j + 1).collect::<Vec<_>>(), "matrix": rows }), text))
        }
        other => Err(format!("unknown command {other}")),
    }
}

fn points(a: &Args<'_>, i: usize, f: &FamilyModule) -> Result<Vec<gradalg::Scalar>, String> {
    match a.arg(i)? {
        Arg::Points(ps) => ps.iter().map(|p| scalar(f.ring().field(), p)).collect(),
        x => Err(format!("expected `at (...)`, found {x}")),
    }
}
