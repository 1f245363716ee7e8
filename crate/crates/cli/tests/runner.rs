use std::process::Command as Process;

use gradalg_cli::commands::COMMANDS;
use gradalg_cli::report::{to_json, Document};
use gradalg_cli::{parse_script, run, run_document, RunConfig, Status};
use serde_json::Value;

fn corpus() -> Vec<(String, String)> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");
    let mut out: Vec<(String, String)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "gra"))
        .map(|p| (p.display().to_string(), std::fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    out
}

fn results(src: &str) -> Vec<Value> {
    let reports = run(&parse_script(src).unwrap(), &RunConfig::default());
    reports.into_iter().map(|r| r.result.unwrap_or_else(|| panic!("{}", r.error.unwrap()))).collect()
}

#[test]
fn empty_script_gives_no_reports() {
    assert!(run(&parse_script("").unwrap(), &RunConfig::default()).is_empty());
    assert!(run(&parse_script("ring R = QQ[x];").unwrap(), &RunConfig::default()).is_empty());
}

#[test]
fn hilbert_polynomial_matches_dims_in_the_same_run() {
    for ring in ["QQ[x, y]", "QQ[x, y, z]"] {
        let src = format!("ring R = {ring};\nideal I = (x^2, x*y);\nmodule M = quotient(I);\nhilbert_poly M;\ndims M in [0, 12];");
        let r = results(&src);
        let coeffs: Vec<i64> = serde_json::from_value(r[0]["binomial_coefficients"].clone()).unwrap();
        let dims: Vec<(i64, i64)> = serde_json::from_value(r[1]["dims"].clone()).unwrap();
        // sum_i a_i C(t, i) at the large degrees of the window
        let eval = |t: i64| {
            let mut c = 1i64;
            let mut acc = 0;
            for (i, a) in coeffs.iter().enumerate() {
                acc += a * c;
                c = c * (t - i as i64) / (i as i64 + 1);
            }
            acc
        };
        for &(d, v) in dims.iter().filter(|(d, _)| *d >= 4) {
            assert_eq!(eval(d), v, "{ring} degree {d}");
        }
    }
}

#[test]
fn embedded_point_is_not_cohen_macaulay() {
    let r = results("ring A = QQ[t1, t2];\nideal I = (t1^2, t1*t2);\nmodule M = quotient(I);\ncm_test(M);");
    assert_eq!(r[0]["is_cm"], false);
    assert_eq!(r[0]["depth"], 0);
    assert_eq!(r[0]["dim"], 1);
}

#[test]
fn failures_abort_unless_continuing() {
    let s = parse_script("ring R = QQ[x];\nmodule M = free([0]);\nregularity M;\npd M;").unwrap();
    let stop = run(&s, &RunConfig::default());
    assert_eq!(stop.len(), 1);
    assert_eq!(stop[0].status, Status::Error);
    assert!(stop[0].error.as_ref().unwrap().starts_with("line 3, column 1"));
    let go = run(&s, &RunConfig { continue_on_error: true, ..Default::default() });
    assert_eq!(go.len(), 2);
    assert_eq!(go[1].result.as_ref().unwrap()["pd"], 0);

    let bad = run(&parse_script("ring R = QQ[x, y];\nmodule M = coker(targets=[0], matrix=[[x + y^2]]);").unwrap(), &RunConfig::default());
    assert_eq!(bad.len(), 1);
    assert!(bad[0].error.as_ref().unwrap().contains("not homogeneous"));
}

#[test]
fn par_blocks_match_sequential_runs() {
    let head = "ring R = QQ[x, y, z];\nideal I = (x*y, x*z);\nmodule M = quotient(I);\n";
    let body = "betti M;\nlocalcoh 1 maxideal M [-2, 2];\ndepth maxideal M;\nhilbert_poly M;\n";
    let seq = run(&parse_script(&format!("{head}{body}")).unwrap(), &RunConfig::default());
    let par = run(&parse_script(&format!("{head}par {{\n{body}}}")).unwrap(), &RunConfig::default());
    assert_eq!(seq.len(), par.len());
    for (a, b) in seq.iter().zip(&par) {
        assert_eq!((a.index, &a.command, &a.result), (b.index, &b.command, &b.result));
    }
}

#[test]
fn json_documents_round_trip() {
    for (path, src) in corpus() {
        let doc = run_document(&parse_script(&src).unwrap(), &RunConfig::default());
        assert!(doc.reports.iter().all(|r| r.is_ok()), "{path}");
        let text = to_json(&doc);
        let back: Document = serde_json::from_str(&text).unwrap();
        assert_eq!(to_json(&back), text, "{path}");
        assert_eq!(back.schema_version, 1);
    }
}

#[test]
fn every_command_is_exercised_by_the_corpus() {
    let mut seen = std::collections::BTreeSet::new();
    for (_, src) in corpus() {
        for r in run(&parse_script(&src).unwrap(), &RunConfig::default()) {
            assert!(r.is_ok(), "{}: {:?}", r.command, r.error);
            seen.insert(r.command.split_whitespace().next().unwrap().to_string());
        }
    }
    for c in COMMANDS {
        assert!(seen.contains(c.name), "command {} never runs in the corpus", c.name);
    }
}

#[test]
fn every_engine_operation_has_a_command() {
    let ops = [
        "groebner_basis",
        "GroebnerBasis::normal_form",
        "syzygies",
        "ideal_intersection",
        "colon",
        "saturation",
        "minimal_free_resolution",
        "betti_table",
        "projective_dimension",
        "hilbert_series",
        "hilbert_polynomial",
        "krull_dimension",
        "PresentedModule::graded_dims",
        "ext_module",
        "tor_module",
        "tensor_product",
        "hom_module",
        "h0_local",
        "local_cohomology_dims",
        "depth",
        "is_nonzerodivisor",
        "cm_test",
        "mayer_vietoris_check",
        "local_duality_defect",
        "sheaf_cohomology_dim",
        "sheaf_cohomology_table",
        "serre_duality_defect",
        "regularity",
        "is_m_regular",
        "regularity_properties_check",
        "global_sections_module",
        "flat_over_line",
        "torsion_free_at",
        "fiber_hilbert_profile",
        "fiber_euler_characteristics",
        "hypersurface_hilbert_polynomial",
        "pluecker",
        "pluecker_relations_residual",
        "chart_transition",
    ];
    for op in ops {
        assert!(COMMANDS.iter().any(|c| c.engine.contains(&op)), "{op} is not reachable");
    }
}

fn binary(args: &[&str], stdin: &str) -> (i32, String) {
    use std::io::Write;
    let mut child = Process::new(env!("CARGO_BIN_EXE_gradalg"))
        .args(args)
        .env_remove("GRADALG_SEED")
        .env_remove("GRADALG_JSON")
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn exit_codes_and_flags() {
    let ok = "ring R = QQ[x, y];\nmodule M = free([0]);\ndims M;";
    let (code, out) = binary(&["--json", "--window", "-1:2"], ok);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["engine"]["window"], serde_json::json!([-1, 2]));
    assert_eq!(v["reports"][0]["result"]["dims"], serde_json::json!([[-1, 0], [0, 1], [1, 2], [2, 3]]));

    let (code, _) = binary(&[], "depth(maxideal, M);");
    assert_eq!(code, 2);
    let (code, out) = binary(&[], "ring R = QQ[x];\nmodule M = free([0]);\nregularity M;");
    assert_eq!(code, 1);
    assert!(out.contains("error"));

    let mut child = Process::new(env!("CARGO_BIN_EXE_gradalg"));
    let out = child.arg("--json").env("GRADALG_SEED", "17").stdin(std::process::Stdio::null()).output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["engine"]["seed"], 17);
}

#[test]
fn json_output_is_deterministic() {
    for (path, src) in corpus() {
        let s = parse_script(&src).unwrap();
        let cfg = RunConfig { seed: 5, ..Default::default() };
        assert_eq!(to_json(&run_document(&s, &cfg)), to_json(&run_document(&s, &cfg)), "{path}");
    }
}
