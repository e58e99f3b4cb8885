use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn redcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_redcx")).args(args).output().unwrap()
}

/// Machine-mode records of a successful run.
fn records(args: &[&str]) -> Vec<(String, String)> {
    let mut all = vec!["--machine"];
    all.extend_from_slice(args);
    let out = redcx(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# schema = redcx-report/1"));
    lines
        .map(|l| {
            let (k, v) = l.split_once(" = ").unwrap();
            (k.to_string(), v.to_string())
        })
        .collect()
}

fn get<'a>(r: &'a [(String, String)], key: &str) -> &'a str {
    r.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str()).unwrap_or_else(|| panic!("no {key}"))
}

#[test]
fn reports_carry_run_context() {
    let r = records(&["resolve", &fixture("k_ci2.mod")]);
    for key in ["characteristic", "degree_bound", "window", "seed", "rigor.complexity"] {
        get(&r, key);
    }
    assert_eq!(get(&r, "characteristic"), "2");
}

#[test]
fn resolve_examples() {
    let r = records(&["resolve", "--window", "10", &fixture("k_ci2.mod")]);
    assert_eq!(get(&r, "betti"), "1 2 3 4 5 6 7 8 9 10 11");
    assert_eq!((get(&r, "complexity"), get(&r, "rigor.complexity")), ("2", "estimated"));

    let r = records(&["resolve", "--window", "6", &fixture("poly2_free.mod")]);
    assert_eq!(get(&r, "betti"), "1 0 0 0 0 0 0");
    assert_eq!((get(&r, "complexity"), get(&r, "rigor.complexity")), ("0", "exact-finite-pd"));

    let r = records(&["resolve", "--window", "10", &fixture("k_golod2.mod")]);
    assert_eq!(get(&r, "betti"), "1 2 4 8 16 32 64 128 256 512 1024");
}

#[test]
fn depth_examples() {
    assert_eq!(get(&records(&["depth", &fixture("k_ci2.mod")]), "depth"), "0");
    assert_eq!(get(&records(&["depth", &fixture("node_mod_x.mod")]), "depth"), "1");
    assert_eq!(get(&records(&["depth", &fixture("poly2_free.mod")]), "depth"), "2");
}

#[test]
fn tor_of_residue_field() {
    let r = records(&["tor", "--window", "4", &fixture("k_dual.mod"), &fixture("k_dual.mod")]);
    assert_eq!(get(&r, "tor.totals"), "1 1 1 1 1");
}

#[test]
fn depth_formula_examples() {
    let r = records(&["depth-formula", &fixture("node_mod_x.mod"), &fixture("node_mod_x_plus_y.mod")]);
    assert_eq!((get(&r, "q"), get(&r, "lhs"), get(&r, "rhs"), get(&r, "verdict")), ("0", "1", "1", "true"));

    let r = records(&["depth-formula", &fixture("node_mod_x_plus_y.mod"), &fixture("node_mod_x2.mod")]);
    assert_eq!((get(&r, "q"), get(&r, "lhs"), get(&r, "rhs"), get(&r, "verdict")), ("1", "0", "0", "true"));

    let r = records(&["depth-formula", &fixture("node_free.mod"), &fixture("node_free.mod")]);
    assert_eq!((get(&r, "lhs"), get(&r, "rhs"), get(&r, "verdict")), ("2", "2", "true"));
}

#[test]
fn refusal_exits_zero() {
    let out = redcx(&["--machine", "depth-formula", &fixture("k_ci2.mod"), &fixture("k_ci2.mod")]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("verdict = refused"));
}

#[test]
fn reduce_examples() {
    let r = records(&["reduce", &fixture("poly2_free.mod")]);
    assert_eq!((get(&r, "steps"), get(&r, "reddeg")), ("0", "inf"));

    let r = records(&["reduce", &fixture("k_dual.mod")]);
    assert_eq!((get(&r, "steps"), get(&r, "complexity_chain")), ("1", "1 0"));

    let r = records(&["reduce", &fixture("k_ci2.mod")]);
    assert_eq!((get(&r, "steps"), get(&r, "complexity_chain")), ("2", "2 1 0"));
    assert_eq!(get(&r, "rigor.ses_exact"), "true");
}

#[test]
fn construct_examples_emit_module_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("product");
    let out_s = out.display().to_string();

    let r = records(&["construct", "--out", &out_s, &fixture("two_period1.construct")]);
    assert_eq!(get(&r, "complexity_chain"), "2 1 0");
    assert_eq!(get(&r, "product.ranks"), "1 2 3 4 5 6 7 8 9 10 11 12 13 14");
    let emitted = out.with_extension("mod").display().to_string();
    let back = records(&["resolve", "--window", "8", &emitted]);
    assert_eq!(get(&back, "betti"), "1 2 3 4 5 6 7 8 9");

    let r = records(&["construct", "--out", &out_s, &fixture("single_period2.construct")]);
    assert_eq!(get(&r, "complexity_chain"), "1 0");

    let r = records(&["construct", "--out", &out_s, &fixture("witness_period4.construct")]);
    assert_eq!(get(&r, "ci_verdict"), "witness period 4");
    assert_eq!(get(&r, "penultimate.complexity"), "1");
}

#[test]
fn period_examples() {
    let r = records(&["period", &fixture("res_k_dual_x.cx")]);
    assert_eq!(get(&r, "period"), "1");

    let r = records(&["period", &fixture("res_node_x.cx")]);
    assert_eq!(get(&r, "period"), "2");
    assert!(get(&r, "attempt.1").starts_with("infeasible"));

    let r = records(&["period", &fixture("bounded_acyclic.cx")]);
    assert_eq!(get(&r, "period"), "none");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.mod");
    std::fs::write(&bad, "module { ring = ").unwrap();
    assert_eq!(redcx(&["depth", bad.to_str().unwrap()]).status.code(), Some(2));

    let out = redcx(&["depth-formula", "--degree-bound", "2", &fixture("node_mod_x.mod"), &fixture("node_mod_x_plus_y.mod")]);
    assert_eq!(out.status.code(), Some(3));

    assert_eq!(redcx(&["resolve", "--window", "3", &fixture("k_ci2.mod")]).status.code(), Some(4));
    assert_eq!(redcx(&["resolve", "--window", "0", &fixture("k_ci2.mod")]).status.code(), Some(2));
}

#[test]
fn machine_output_is_deterministic() {
    let args = ["--machine", "reduce", "--seed", "7", &fixture("k_ci2.mod")];
    assert_eq!(redcx(&args).stdout, redcx(&args).stdout);
}
