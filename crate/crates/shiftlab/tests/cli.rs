use std::path::Path;

use shiftlab::catalog;
use shiftlab::cli::run;
use shiftlab::io::{graph_from_json, graph_to_json};
use shiftlab_core::approx::LanguageOracle;
use shiftlab_core::ExactRational;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("shiftlab").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn usage_errors() {
    assert_eq!(call(&["frobnicate"]).0, 64);
    assert_eq!(call(&[]).0, 64);
    assert_eq!(call(&["approx"]).0, 64);
    assert_eq!(call(&["--help"]).0, 0);
    assert_eq!(call(&["bfree", "de-table", "--gens", "4,9"]).0, 2);
}

#[test]
fn rauzy_emits_graph() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("gm.json");
    std::fs::write(
        &spec,
        r#"{"kind": "sft", "alphabet": "01", "forbidden": ["11"]}"#,
    )
    .unwrap();
    let target = dir.path().join("g.json");
    let (code, _, err) = call(&[
        "approx",
        "rauzy",
        "--spec",
        path(&spec),
        "--order",
        "3",
        "--emit",
        path(&target),
    ]);
    assert_eq!(code, 0, "{err}");
    let g = graph_from_json(&std::fs::read_to_string(&target).unwrap()).unwrap();
    let mut oracle = LanguageOracle::from_graph(&g).unwrap();
    assert_eq!(
        oracle.language(4),
        LanguageOracle::from_graph(&catalog::golden_mean())
            .unwrap()
            .language(4)
    );
    assert_eq!(
        call(&["approx", "rauzy", "--spec", path(&spec), "--order", "0"]).0,
        2
    );
    assert_eq!(
        call(&[
            "approx",
            "rauzy",
            "--spec",
            "/nonexistent.json",
            "--order",
            "2"
        ])
        .0,
        2
    );
}

#[test]
fn point_sofic_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("ex4.json");
    std::fs::write(&graph, graph_to_json(&catalog::parity_shift())).unwrap();
    let (code, out, err) = call(&[
        "dist",
        "point-sofic",
        "--point",
        "((10)(10)0 0 0)^inf",
        "--graph",
        path(&graph),
    ]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let value: ExactRational = v["value"].as_str().unwrap().parse().unwrap();
    assert!(value >= ExactRational::new(1, 8));
    assert_eq!(v["cross_checks"].as_array().unwrap().len(), 2);
    assert!(v["witnesses"]["product_cycle"].is_array());
    assert_eq!(
        call(&[
            "dist",
            "point-sofic",
            "--point",
            "(012)^inf",
            "--graph",
            path(&graph)
        ])
        .0,
        2
    );
}

#[test]
fn de_table_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("de.csv");
    let (code, _, err) = call(&[
        "bfree",
        "de-table",
        "--gens",
        "squares-of-primes",
        "--k",
        "1..6",
        "--N",
        "1e4",
        "--csv",
        path(&csv),
    ]);
    assert_eq!(code, 0, "{err}");
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,deficiency,tail_bound"));
    let defs: Vec<ExactRational> = lines
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(defs.len(), 6);
    assert!(defs.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn sgap_inner_approx() {
    let (code, out, err) = call(&[
        "sgap",
        "inner-approx",
        "--S",
        "1,2,50",
        "--k",
        "2",
        "--gaps",
        "50,50,2",
    ]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["gaps"].as_array().unwrap().len(), 3);
    for g in v["gaps"].as_array().unwrap() {
        let realized: ExactRational = g["realized"].as_str().unwrap().parse().unwrap();
        let bound: ExactRational = g["bound"].as_str().unwrap().parse().unwrap();
        assert!(!g["replaced"].as_bool().unwrap() || realized <= bound);
    }
    assert_eq!(
        call(&[
            "sgap",
            "inner-approx",
            "--S",
            "1,2,50",
            "--k",
            "2",
            "--gaps",
            "7"
        ])
        .0,
        2
    );
}

#[test]
fn measures_commands() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("gm.json");
    std::fs::write(&graph, graph_to_json(&catalog::golden_mean())).unwrap();
    let (code, out, err) = call(&["measures", "parry", "--graph", path(&graph)]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((v["entropy"].as_f64().unwrap() - phi.ln()).abs() < 1e-9);

    let (code, out, _) = call(&["measures", "blocks", "--point", "(01)^inf", "--k", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["blocks"]["01"].as_f64(), Some(0.5));
    assert_eq!(
        call(&["measures", "blocks", "--point", "(01)^inf", "--k", "13"]).0,
        3
    );
    assert_eq!(call(&["measures", "blocks", "--k", "2"]).0, 2);
}

#[test]
fn verify_suites() {
    let (code, out, _) = call(&["verify", "ex-4-nondbar"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.starts_with("PASS")));
    assert!(out.contains("1/7"));
    assert_eq!(call(&["verify", "ex-99"]).0, 2);
}

#[test]
fn deterministic_output() {
    let a = call(&["verify", "lemma-glue", "--seed", "7"]);
    let b = call(&["verify", "lemma-glue", "--seed", "7"]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
    let (_, out, _) = call(&[
        "sgap",
        "inner-approx",
        "--S",
        "1,2,50",
        "--k",
        "2",
        "--gaps",
        "50,50,2",
    ]);
    let (_, again, _) = call(&[
        "sgap",
        "inner-approx",
        "--S",
        "1,2,50",
        "--k",
        "2",
        "--gaps",
        "50,50,2",
    ]);
    assert_eq!(out, again);
}
