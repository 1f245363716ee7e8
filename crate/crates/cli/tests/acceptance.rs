//! Acceptance suite: one line per criterion.

use std::collections::BTreeSet;
use std::process::Command as Process;
use std::time::Instant;

use gradalg::families::{fiber_hilbert_profile, flat_over_line, hypersurface_hilbert_polynomial, FamilyModule};
use gradalg::grassmann::{chart_transition, pluecker, pluecker_relations_residual, subsets, ChartMatrix};
use gradalg::homology::{betti_table, ext_module, hilbert_polynomial, krull_dimension, projective_dimension, PresentedModule};
use gradalg::linalg::identity;
use gradalg::local::{depth, ext_depth, is_regular_sequence, local_cohomology_all, local_duality_defect, mayer_vietoris_check, LocalCohomologyConfig};
use gradalg::projective::{regularity, regularity_properties_check, serre_duality_defect, sheaf_cohomology_table};
use gradalg::{Error, Field, MultiPoly, PolyRing, Scalar, Submodule};
use gradalg_cli::ast::Stmt;
use gradalg_cli::parse_script;
use gradalg_cli::values::{Env, Value};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cfg() -> LocalCohomologyConfig {
    LocalCohomologyConfig { power_cap: 24, ..Default::default() }
}

/// Declarations evaluated through the script front end.
fn declare(src: &str) -> Env {
    let script = parse_script(src).unwrap_or_else(|e| panic!("{e}"));
    let mut env = Env::default();
    for s in &script.statements {
        match s {
            Stmt::Decl { name, decl, .. } => env.declare(name, decl).unwrap_or_else(|e| panic!("{name}: {e}")),
            Stmt::Use { ring, .. } => env.use_ring(ring),
            _ => {}
        }
    }
    env
}

fn module(env: &Env, name: &str) -> PresentedModule {
    match env.get(name) {
        Some(Value::Module(m)) => m.clone(),
        _ => panic!("{name} is not a module"),
    }
}

fn ideal(env: &Env, name: &str) -> Submodule {
    match env.get(name) {
        Some(Value::Ideal(i)) => i.clone(),
        _ => panic!("{name} is not an ideal"),
    }
}

fn family(env: &Env, name: &str) -> FamilyModule {
    match env.get(name) {
        Some(Value::Family(f)) => f.clone(),
        _ => panic!("{name} is not a family"),
    }
}

/// Modules in at most four variables, named `M...`.
const SUITE: &str = "
ring R2 = QQ[x, y];
ideal Ea = (x^2, x*y);
ideal Eb = (x^3 - y^3);
ideal Ec = (x^3, x^2*y, x*y^2, y^3);
module M01 = free([0]);
module M02 = quotient(Ea);
module M03 = quotient(Eb);
module M04 = quotient(Ec);
module M05 = free([-1, 0, 2]);

ring R3 = QQ[x, y, z];
ideal Fa = (x^2, x*y);
ideal Fb = (x*y, y*z, z*x);
ideal Fc = (x^2, y^2, z^2);
ideal Fd = (x^3 + y^3 + z^3);
ideal Fe = (x, y);
module M06 = quotient(Fa);
module M07 = quotient(Fb);
module M08 = quotient(Fc);
module M09 = quotient(Fd);
module M10 = ideal(Fe);
module M11 = coker(targets=[0, 0], sources=[1, 1], matrix=[[x, y], [0, z]]);
module M12 = free([0, 2]);

ring R4 = QQ[a, b, c, d];
ideal Ga = (b^2 - a*c, b*c - a*d, c^2 - b*d);
ideal Gb = (a*c, a*d, b*c, b*d);
ideal Gc = (a^2, b^3);
module M13 = quotient(Ga);
module M14 = quotient(Gb);
module M15 = quotient(Gc);
module M16 = free([1]);
";

const SUITE_NAMES: [&str; 16] = ["M01", "M02", "M03", "M04", "M05", "M06", "M07", "M08", "M09", "M10", "M11", "M12", "M13", "M14", "M15", "M16"];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn residue_field(m: &PresentedModule) -> PresentedModule {
    PresentedModule::quotient(&Submodule::irrelevant_ideal(m.ring())).unwrap()
}

fn criterion_1(env: &Env) -> Outcome {
    let mut bad = Vec::new();
    for name in SUITE_NAMES {
        let m = module(env, name);
        let k = residue_field(&m);
        let pd = projective_dimension(&m);
        let nv = m.ring().nvars();
        if ext_module(pd, &m, &k).is_zero() {
            bad.push(format!("{name}: Ext^{pd} vanishes"));
        }
        for p in pd + 1..=nv + 1 {
            if !ext_module(p, &m, &k).is_zero() {
                bad.push(format!("{name}: Ext^{p} nonzero above pd {pd}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{} modules; {}", SUITE_NAMES.len(), bad.join("; ")))
}

fn criterion_2(env: &Env) -> Outcome {
    let extra = declare(
        "ring A = QQ[t1, t2];
         ideal E = (t1^2, t1*t2);
         ideal Q = (t1^3, t2^2);
         module X = quotient(E);
         module F = free([0]);
         ring B = QQ[x, y, z];
         ideal P = (x, y^2, z);
         ideal C = (x*y*z);
         module Y = quotient(C);",
    );
    let maxi = |m: &PresentedModule| Submodule::irrelevant_ideal(m.ring());
    let mut pairs: Vec<(String, Submodule, PresentedModule)> = vec![
        ("A/(t1^2, t1*t2)".into(), maxi(&module(&extra, "X")), module(&extra, "X")),
        ("two planes".into(), maxi(&module(env, "M14")), module(env, "M14")),
        ("(t1^3, t2^2), A".into(), ideal(&extra, "Q"), module(&extra, "F")),
        ("(x, y^2, z), A/(xyz)".into(), ideal(&extra, "P"), module(&extra, "Y")),
    ];
    for name in ["M01", "M02", "M04", "M06", "M07", "M08", "M10", "M11", "M13", "M15"] {
        let m = module(env, name);
        pairs.push((name.into(), maxi(&m), m));
    }
    let mut bad = Vec::new();
    let mut expected = Vec::new();
    for (label, i, m) in &pairs {
        let by_ext = ext_depth(i, m).unwrap().map(|(p, _)| p);
        let cert = depth(i, m, 7).unwrap();
        let seq_ok = is_regular_sequence(&cert.regular_sequence, m).unwrap() && cert.complete;
        let lc = local_cohomology_all(i, m, cert.depth_value, -4, 4, &cfg()).unwrap();
        let first = lc.iter().position(|r| !r.dims.is_zero());
        let d = cert.depth_value;
        if by_ext != Some(d) || !seq_ok || cert.regular_sequence.len() != d || first != Some(d) {
            bad.push(format!("{label}: ext {by_ext:?}, sequence {}, local cohomology {first:?}", cert.regular_sequence.len()));
        }
        if label == "A/(t1^2, t1*t2)" || label == "two planes" {
            let dim = krull_dimension(m).unwrap();
            expected.push(format!("{label}: depth {d}/dim {dim}"));
            let want = if label == "two planes" { (1, 2) } else { (0, 1) };
            if (d as i64, dim) != want {
                bad.push(format!("{label}: expected depth/dim {want:?}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{} pairs; {}; {}", pairs.len(), expected.join(", "), bad.join("; ")))
}

fn criterion_3(env: &Env) -> Outcome {
    let names = ["M01", "M02", "M03", "M04", "M05", "M06", "M07", "M08", "M09", "M10", "M11", "M12"];
    let mut bad = Vec::new();
    for name in names {
        let m = module(env, name);
        for p in 0..=m.ring().nvars() {
            match local_duality_defect(&m, p, -8, 8, &cfg()) {
                Ok(d) if d.values().all(|&v| v == 0) => {}
                Ok(d) => bad.push(format!("{name} p={p}: {d:?}")),
                Err(e) => bad.push(format!("{name} p={p}: {e}")),
            }
        }
    }
    outcome(bad.is_empty(), format!("{} modules, window [-8, 8]; {}", names.len(), bad.join("; ")))
}

/// Modules with a nonzero sheaf on P^1, P^2 or P^3.
const PROJECTIVE: [&str; 12] = ["M01", "M02", "M03", "M05", "M06", "M07", "M09", "M10", "M11", "M12", "M13", "M16"];

fn criterion_4(env: &Env) -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for name in PROJECTIVE {
        let m = module(env, name);
        let n = m.ring().nvars() - 1;
        for p in 1..=n {
            for l in -8..=8 {
                checked += 1;
                match serre_duality_defect(&m, p, l, &cfg()) {
                    Ok(0) => {}
                    Ok(d) => bad.push(format!("{name} p={p} l={l}: {d}")),
                    Err(e) => bad.push(format!("{name} p={p} l={l}: {e}")),
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} (module, p, l) triples; {}", bad.join("; ")))
}

fn criterion_5(env: &Env) -> Outcome {
    let mut bad = Vec::new();
    for name in PROJECTIVE {
        let m = module(env, name);
        let phi = hilbert_polynomial(&m).unwrap();
        match sheaf_cohomology_table(&m, -8, 8, &cfg()) {
            Ok(t) => {
                for l in -8..=8 {
                    if t.euler_characteristic(l) != phi.eval(l) {
                        bad.push(format!("{name} l={l}: chi {} vs Phi {}", t.euler_characteristic(l), phi.eval(l)));
                    }
                }
            }
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    outcome(bad.is_empty(), format!("{} modules, l in [-8, 8]; {}", PROJECTIVE.len(), bad.join("; ")))
}

fn binom(n: i64, k: i64) -> i64 {
    // generalized binomial for integer n
    let mut num = 1i128;
    let mut den = 1i128;
    for i in 0..k {
        num *= (n - i) as i128;
        den *= (i + 1) as i128;
    }
    (num / den) as i64
}

fn random_form(ring: &gradalg::RingRef, d: i64, rng: &mut ChaCha8Rng) -> MultiPoly {
    let terms: Vec<_> = ring
        .monomials_of_degree(d)
        .into_iter()
        .map(|m| (m, ring.field().from_i64(rng.gen_range(-9..=9))))
        .collect();
    let f = MultiPoly::from_terms(ring, terms);
    if f.is_zero() {
        ring.var_at(0).pow(d as u32)
    } else {
        f
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bad = Vec::new();
    for n in 1..=4i64 {
        let names: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let ring = PolyRing::new(Field::Rationals, &refs).unwrap();
        for d in 1..=4i64 {
            let f = random_form(&ring, d, &mut rng);
            let m = PresentedModule::quotient(&Submodule::ideal(&ring, vec![f]).unwrap()).unwrap();
            let phi = hilbert_polynomial(&m).unwrap();
            let closed = hypersurface_hilbert_polynomial(n, d).unwrap();
            // C(n + t, n) - C(n - d + t, n) as integers, checked well past the degree
            let oracle_ok = (-6..=12).all(|t| phi.eval(t) == binom(n + t, n) - binom(n - d + t, n));
            if phi != closed || !oracle_ok {
                bad.push(format!("(n, d) = ({n}, {d}): {phi} vs {closed}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("16 (n, d) pairs; {}", bad.join("; ")))
}

fn criterion_7(env: &Env) -> (Outcome, Outcome) {
    let p1 = declare(
        "ring P = QQ[s, u];
         module O0 = free([0]); module O1 = free([1]); module O2 = free([2]);
         module O3 = free([3]); module O4 = free([4]); module O5 = free([5]);",
    );
    let mut regs = Vec::new();
    for d in 0..=5 {
        regs.push(regularity(&module(&p1, &format!("O{d}")), &cfg()).unwrap());
    }
    let literal = regs.iter().enumerate().all(|(d, &r)| r == d as i64 - 1);
    let by_definition = regs.iter().enumerate().all(|(d, &r)| r == d as i64);

    let sat = declare(
        "ring R = QQ[x, y, z];
         ideal Pt = (x, y);
         ideal Ci = (x^2, y^3);
         ideal Cu = (x^3 + y^3 + z^3);
         module S1 = ideal(Pt);
         module S2 = ideal(Ci);
         module S3 = quotient(Cu);
         module S4 = free([2]);
         ring Q = QQ[a, b, c, d];
         ideal Tw = (b^2 - a*c, b*c - a*d, c^2 - b*d);
         module S5 = ideal(Tw);",
    );
    let mut bad = Vec::new();
    let mut rows = Vec::new();
    for name in ["S1", "S2", "S3", "S4", "S5"] {
        let m = module(&sat, name);
        let irr = Submodule::irrelevant_ideal(m.ring());
        // saturated in the strong sense: H^0 and H^1 of the irrelevant ideal vanish
        let lc = local_cohomology_all(&irr, &m, 1, -6, 6, &cfg()).unwrap();
        if !lc.iter().all(|r| r.dims.is_zero()) {
            bad.push(format!("{name} is not saturated"));
        }
        let r = regularity(&m, &cfg()).unwrap();
        let bound = betti_table(&m).max_shifted_degree().unwrap();
        if r != bound {
            bad.push(format!("{name}: reg {r} but Betti bound {bound}"));
        }
        let rep = regularity_properties_check(&m, r, 5, &cfg()).unwrap();
        if !rep.all_hold() || rep.rows.len() != 6 {
            bad.push(format!("{name}: properties fail at {r}"));
        }
        rows.push(format!("{name}:{r}"));
    }
    for name in PROJECTIVE {
        let m = module(env, name);
        match (regularity(&m, &cfg()), betti_table(&m).max_shifted_degree()) {
            (Ok(r), Some(b)) if r <= b => {}
            (Err(Error::RegularityUnbounded), _) => {}
            (r, b) => bad.push(format!("{name}: reg {r:?} vs Betti bound {b:?}")),
        }
    }
    let literal_line = outcome(
        literal,
        format!("regularity(O_P1(-d)) for d = 0..5 is {regs:?}; the stated d - 1 would be {:?}", (0..=5).map(|d| d - 1).collect::<Vec<i64>>()),
    );
    let rest = outcome(
        by_definition && bad.is_empty(),
        format!("reg(O_P1(-d)) = d for d = 0..5: {by_definition}; properties (i)-(iii) on [m, m+5] and Betti equality for {}; Betti inequality on {} modules; {}", rows.join(" "), PROJECTIVE.len(), bad.join("; ")),
    );
    (literal_line, rest)
}

fn criterion_8() -> Outcome {
    let env = declare(
        "ring R = QQ[x, y, z];
         ideal I1 = (x); ideal J1 = (y);
         ideal I2 = (x*y); ideal J2 = (y*z, x^2);
         ideal I3 = (x, y); ideal J3 = (y, z);
         ideal I4 = (x^2, y*z); ideal J4 = (x*z, y^2, z^3);
         ring S = QQ[u, v];
         ideal I5 = (u^2); ideal J5 = (u*v, v^3);
         use R;
         module A = free([0]);
         use S;
         module B = free([0]);",
    );
    let mut bad = Vec::new();
    for k in 1..=5 {
        let (i, j) = (ideal(&env, &format!("I{k}")), ideal(&env, &format!("J{k}")));
        let m = if k == 5 { module(&env, "B") } else { module(&env, "A") };
        let p_max = m.ring().nvars();
        match mayer_vietoris_check(&i, &j, &m, p_max, -6, 6, &cfg()) {
            Ok(r) if r.holds() => {}
            Ok(r) => bad.push(format!("pair {k}: {} failures", r.failures)),
            Err(e) => bad.push(format!("pair {k}: {e}")),
        }
    }
    outcome(bad.is_empty(), format!("5 monomial pairs on [-6, 6]; {}", bad.join("; ")))
}

fn criterion_9() -> Outcome {
    let env = declare("ring R = QQ[x0, x1];\nfamily L = (x0 - t*x1);\nfamily Bad = (t*x0, t*x1);");
    let q = |n: i64| Field::Rationals.from_i64(n);
    let pts: Vec<Scalar> = (0..6).map(q).collect();
    let flat = family(&env, "L");
    let fr = flat_over_line(&flat).unwrap();
    let fp = fiber_hilbert_profile(&flat, &pts, 11).unwrap();
    let flat_ok = fr.flat && fp.distinct_polynomials() == 1 && fp.strata[0].0 == fp.generic && fp.generic.to_string() == "1";
    let bad = family(&env, "Bad");
    let br = flat_over_line(&bad).unwrap();
    let bp = fiber_hilbert_profile(&bad, &pts, 11).unwrap();
    let witness = br.torsion_witness.as_ref().map(|w| !w.is_zero()).unwrap_or(false);
    let bad_ok = !br.flat && witness && bp.distinct_polynomials() >= 2;
    outcome(
        flat_ok && bad_ok,
        format!(
            "flat family: {} polynomial(s) over {} samples, generic {}; non-flat: {} polynomials, flat = {}, witness {}",
            fp.distinct_polynomials(),
            pts.len(),
            fp.generic,
            bp.distinct_polynomials(),
            br.flat,
            br.torsion_witness.map(|w| w.comps()[0].to_string()).unwrap_or_default()
        ),
    )
}

fn criterion_10() -> Outcome {
    let field = Field::prime(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut bad = Vec::new();
    let mut cocycles = 0;
    for (d, n) in [(2usize, 4usize), (2, 5), (3, 5)] {
        let charts = subsets(n, d);
        let mut done = 0;
        while done < 100 {
            let rows = (0..d).map(|_| (0..n).map(|_| field.from_i64(rng.gen_range(0..101))).collect()).collect();
            let m = ChartMatrix::new(field, rows).unwrap();
            let Ok(v) = pluecker(&m) else { continue };
            done += 1;
            if !pluecker_relations_residual(&v).iter().all(Scalar::is_zero) {
                bad.push(format!("Gr({d},{n}): nonzero residual"));
            }
            let pick = |rng: &mut ChaCha8Rng| charts[rng.gen_range(0..charts.len())].clone();
            let (i, j, k) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let Ok(mi) = chart_transition(&m, &i) else { continue };
            if chart_transition(&mi, &i).unwrap() != mi || mi.block(&i) != identity(field, d) {
                bad.push(format!("Gr({d},{n}): f_II is not the identity"));
            }
            let (Ok(mij), Ok(mik)) = (chart_transition(&mi, &j), chart_transition(&mi, &k)) else { continue };
            cocycles += 1;
            if chart_transition(&mij, &k).unwrap() != mik {
                bad.push(format!("Gr({d},{n}): cocycle fails for {i:?} {j:?} {k:?}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("300 random points over GF(101), {cocycles} cocycle triples; {}", bad.join("; ")))
}

fn criterion_11() -> Outcome {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");
    let mut files: Vec<_> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).filter(|p| p.extension().is_some_and(|x| x == "gra")).collect();
    files.sort();
    let run = || -> Vec<Vec<u8>> {
        files
            .iter()
            .map(|f| Process::new(env!("CARGO_BIN_EXE_gradalg")).args(["--json", "--seed", "7"]).arg(f).output().unwrap().stdout)
            .collect()
    };
    let (a, b) = (run(), run());
    let nonempty = a.iter().all(|o| !o.is_empty());
    outcome(a == b && nonempty, format!("{} corpus scripts, {} bytes of JSON", files.len(), a.iter().map(Vec::len).sum::<usize>()))
}

fn main() {
    let args: BTreeSet<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let env = declare(SUITE);
    let mut failures = 0;
    let mut report = |n: &str, title: &str, o: Outcome, required: bool, secs: f64| {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {n:>3} {tag}  {title} ({secs:.1} s): {}", o.detail.trim_end_matches("; ").trim_end_matches(';'));
        if !o.pass && required {
            failures += 1;
        }
    };
    let selected = |n: &str| args.is_empty() || args.contains(n);
    macro_rules! run {
        ($n:expr, $title:expr, $e:expr) => {
            if selected($n) {
                let t = Instant::now();
                let o = $e;
                report($n, $title, o, true, t.elapsed().as_secs_f64());
            }
        };
    }
    run!("1", "projective dimension via Ext(M, k)", criterion_1(&env));
    run!("2", "depth by Ext, regular sequences and local cohomology", criterion_2(&env));
    run!("3", "graded local duality", criterion_3(&env));
    run!("4", "Serre duality", criterion_4(&env));
    run!("5", "Euler characteristic equals Hilbert polynomial", criterion_5(&env));
    run!("6", "hypersurface Hilbert polynomials", criterion_6());
    if selected("7") {
        let t = Instant::now();
        let (literal, rest) = criterion_7(&env);
        let secs = t.elapsed().as_secs_f64();
        // the literal value d - 1 contradicts m-regularity of O(-d); reported, not required
        report("7a", "regularity(O_P1(-d)) = d - 1 as stated", literal, false, secs);
        report("7b", "regularity suite", rest, true, secs);
    }
    run!("8", "Mayer-Vietoris", criterion_8());
    run!("9", "flat family dichotomy", criterion_9());
    run!("10", "Grassmannian charts and Pluecker relations", criterion_10());
    run!("11", "deterministic JSON", criterion_11());
    if failures > 0 {
        println!("{failures} required criteria failed");
        std::process::exit(1);
    }
}
