use gradalg_cli::ast::{Decl, Poly, Stmt};
use gradalg_cli::parser::ParseErrorKind;
use gradalg_cli::parse_script;
use proptest::prelude::*;

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

fn kind(src: &str) -> ParseErrorKind {
    parse_script(src).unwrap_err().kind
}

#[test]
fn declarations() {
    let s = parse_script("ring R = QQ[x,y];").unwrap();
    assert_eq!(s.statements.len(), 1);
    assert!(matches!(&s.statements[0], Stmt::Decl { name, decl: Decl::Ring { vars, .. }, .. } if name == "R" && vars.len() == 2));

    let s = parse_script("ring R = QQ[x,y];\nideal I = (x^2, x*y);").unwrap();
    let Stmt::Decl { name, decl: Decl::Ideal(gens), ring, .. } = &s.statements[1] else { panic!() };
    assert_eq!(name, "I");
    assert_eq!(ring.as_deref(), Some("R"));
    assert_eq!(gens.len(), 2);
    assert!(matches!(gens[0], Poly::Pow(_, 2)));

    let s = parse_script("ring W = GF(7)[a, b] weights (1, 2);").unwrap();
    assert!(matches!(&s.statements[0], Stmt::Decl { decl: Decl::Ring { weights: Some(w), .. }, .. } if w == &vec![1, 2]));
    assert!(parse_script("").unwrap().statements.is_empty());
}

#[test]
fn unknown_name_has_position() {
    let e = parse_script("ring R = QQ[x, y];\ndepth(maxideal, M);").unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::UnknownName("M".into()));
    assert_eq!((e.pos.line, e.pos.col), (2, 17));
    assert!(e.to_string().contains("unknown name M"));
    assert_eq!(kind("depth maxideal M;"), ParseErrorKind::UnknownName("M".into()));
}

#[test]
fn semantic_errors() {
    assert_eq!(kind("ring R = QQ[x];\nring R = QQ[y];"), ParseErrorKind::DuplicateName("R".into()));
    assert_eq!(kind("ring R = QQ[x];\nideal I = (y);"), ParseErrorKind::UnknownVariable("y".into()));
    assert!(matches!(kind("ring R = QQ[x];\nideal I = (x);\npd I;"), ParseErrorKind::WrongKind { .. }));
    assert!(matches!(
        kind("ring R = QQ[x];\nideal I = (x);\nring S = QQ[x];\nmodule M = free([0]);\ndepth I M;"),
        ParseErrorKind::RingMismatch(_)
    ));
    assert_eq!(kind("ring R = QQ[x];\nfoo R;"), ParseErrorKind::UnknownCommand("foo".into()));
    assert!(matches!(kind("ring R = GF(8)[x];"), ParseErrorKind::Invalid(_)));
    assert!(matches!(kind("ring R = QQ[x];\nideal I = (1/0*x);"), ParseErrorKind::Invalid(_)));
}

#[test]
fn syntax_errors_list_expected_tokens() {
    let e = parse_script("ring R = QQ[x];\nideal I = (x +);").unwrap_err();
    let ParseErrorKind::Syntax { expected, found } = e.kind else { panic!() };
    assert_eq!((e.pos.line, e.pos.col), (2, 15));
    assert_eq!(found, "`)`");
    assert!(expected.contains(&"variable".to_string()));
    let e = parse_script("ring R = QQ[x]").unwrap_err();
    assert!(matches!(e.kind, ParseErrorKind::Syntax { ref found, .. } if found == "end of input"));
    assert!(parse_script("ring R = QQ[x];\nideal I = (x @ x);").is_err());
}

#[test]
fn ring_switching() {
    let src = "ring R = QQ[x];\nring S = QQ[y];\nideal J = (y);\nuse R;\nideal I = (x);\nfamily F = (t*x);";
    let s = parse_script(src).unwrap();
    let Stmt::Decl { ring, .. } = &s.statements[4] else { panic!() };
    assert_eq!(ring.as_deref(), Some("R"));
    let Stmt::Decl { ring, .. } = &s.statements[5] else { panic!() };
    assert_eq!(ring.as_deref(), Some("R[t]"));
    assert_eq!(kind("ring R = QQ[x];\nideal I = (t*x);"), ParseErrorKind::UnknownVariable("t".into()));
}

#[test]
fn call_and_space_syntax_agree() {
    let a = parse_script("ring R = QQ[x, y];\nmodule M = free([0]);\nlocalcoh 1 maxideal M in [-2, 2];\ndims M;").unwrap();
    let b = parse_script("ring R = QQ[x, y];\nmodule M = free([0]);\nlocalcoh(1, maxideal, M, [-2, 2]);\ndims(M);").unwrap();
    assert_eq!(a, b);
}

#[test]
fn corpus_round_trips() {
    for (path, src) in corpus() {
        let s = parse_script(&src).unwrap_or_else(|e| panic!("{path}: {e}"));
        let printed = s.to_string();
        let again = parse_script(&printed).unwrap_or_else(|e| panic!("{path} reprint: {e}\n{printed}"));
        assert_eq!(s, again, "{path}");
        assert_eq!(printed, again.to_string());
    }
}

fn poly_text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("x".to_string()),
        Just("y".to_string()),
        (0u32..50).prop_map(|n| n.to_string()),
        (1u32..9, 1u32..9).prop_map(|(a, b)| format!("{a}/{b}")),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} + {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} - {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            (inner.clone(), 0u32..4).prop_map(|(a, e)| format!("({a})^{e}")),
            inner.prop_map(|a| format!("-({a})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn polynomial_round_trip(p in poly_text(), q in poly_text()) {
        let src = format!("ring R = QQ[x, y];\nideal I = ({p}, {q});\nnf I {p};");
        let s = parse_script(&src).unwrap();
        let again = parse_script(&s.to_string()).unwrap();
        prop_assert_eq!(s, again);
    }
}
