use std::path::PathBuf;
use std::process::{Command, Output};

fn ivp(args: &[&str]) -> Output {
    ivp_env(args, &[])
}

fn ivp_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ivp"));
    cmd.args(args).current_dir(env!("CARGO_MANIFEST_DIR")).env_remove("IVP_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8")
}

fn corpus(name: &str) -> String {
    format!("../core/corpus/{name}.json")
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

/// Compare against `tests/golden/<name>.json`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &[&str], code: i32) {
    let o = ivp(args);
    assert_eq!(o.status.code(), Some(code), "{name}: {}", String::from_utf8_lossy(&o.stderr));
    let got = stdout(&o);
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(got, want, "{name} differs from its golden file");
    serde_json::from_str::<serde_json::Value>(&got).expect("valid JSON");
}

#[test]
fn golden_outputs() {
    golden("analyze_z_sqrt5", &["--json", "analyze", &corpus("z_sqrt5")], 3);
    golden("analyze_z_golden", &["--json", "analyze", &corpus("z_golden")], 0);
    golden("analyze_m2z", &["--json", "analyze", &corpus("m2z")], 3);
    golden("analyze_z_x_mod_x2", &["--json", "analyze", &corpus("z_x_mod_x2")], 3);
    golden("minpoly_m2z", &["--json", "minpoly", &corpus("m2z"), "--at", "0,4,1,2"], 0);
    golden("member_m2z_at", &["--json", "member", &corpus("m2z"), "--poly", "1/2*X", "--at", "0,2,2,2"], 0);
    golden("member_z_i_all", &["--json", "member", &corpus("z_i"), "--poly", "1/2*X^4 - 1/2*X^2", "--all"], 0);
    golden("pointwise_m2z", &["--json", "pointwise", &corpus("m2z"), "--at", "0,4,1,2"], 0);
    golden("maximal_order_z_3i", &["--json", "maximal-order", &corpus("z_3i")], 0);
    golden("ramify_z_i_2", &["--json", "ramify", &corpus("z_i"), "--prime", "2"], 0);
    golden("transform_2_2_1", &["--json", "transform", "--prime", "2", "--ef", "2,1", "--poly", "1/2*X^2 + 1/2*X"], 0);
    golden(
        "sequence_3_1_2",
        &["--json", "transform", "--prime", "3", "--ef", "1,2", "--poly", "X", "--sequence", "1"],
        0,
    );
    golden("hurwitz_lemma42_n2", &["--json", "hurwitz", "lemma42", "--n", "2"], 0);
    golden("hurwitz_closure", &["--json", "hurwitz", "closure", "--samples", "500", "--seed", "3"], 0);
    golden("examples", &["--json", "examples"], 0);
}

#[test]
fn json_is_byte_identical_across_runs() {
    for args in [
        vec!["--json", "analyze", "z_golden"],
        vec!["--json", "hurwitz", "closure", "--samples", "200", "--seed", "9"],
        vec!["--json", "member", "zz_index2", "--poly", "1/2*X^2 - 1/2*X", "--all"],
    ] {
        assert_eq!(ivp(&args).stdout, ivp(&args).stdout, "{args:?}");
    }
}

#[test]
fn analyze_exit_codes_follow_the_verdict() {
    for (name, code) in [
        ("z", 0),
        ("z_i", 0),
        ("z_golden", 0),
        ("zxz", 0),
        ("z_sqrt5", 3),
        ("z_3i", 3),
        ("m2z", 3),
        ("z_x_mod_x2", 3),
        ("zz_index2", 3),
        ("hurwitz", 3),
    ] {
        let o = ivp(&["analyze", &corpus(name)]);
        assert_eq!(o.status.code(), Some(code), "{name}: {}", stdout(&o));
        assert!(stdout(&o).contains("certificate verified"), "{name}");
    }
}

#[test]
fn analyze_z_sqrt5_reports_the_golden_ratio() {
    // bundled names resolve without a path
    let o = ivp(&["analyze", "z_sqrt5.json"]);
    assert_eq!(o.status.code(), Some(3));
    let s = stdout(&o);
    assert!(s.contains("verdict: NO"), "{s}");
    assert!(s.contains("(1/2, 1/2)") && s.contains("X^2 - X - 1"), "{s}");
}

#[test]
fn member_examples() {
    let s = stdout(&ivp(&["member", "m2z.json", "--poly", "1/2*X", "--at", "0,2,2,2"]));
    assert!(s.starts_with("member=true"), "{s}");
    let s = stdout(&ivp(&["member", "m2z", "--poly", "1/2*X - 1/2", "--at", "1,0,0,-1", "--at", "0,1,1,0"]));
    assert!(s.starts_with("member=false") && s.contains("(0, 1, 1, 0)"), "{s}");
    let s = stdout(&ivp(&["member", "z_i", "--poly", "1/2*X^2 - 1/2*X", "--all"]));
    assert!(s.starts_with("member=false") && s.contains("counterexample"), "{s}");
}

#[test]
fn budget_comes_from_flag_or_environment() {
    let args = ["member", "z_i", "--poly", "1/5*X^25 - 1/5*X", "--all"];
    assert_eq!(ivp(&args).status.code(), Some(0));
    let o = ivp_env(&args, &[("IVP_BUDGET", "10")]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("BUDGET_EXCEEDED"));
    let o = ivp(&["member", "z_i", "--poly", "1/5*X^25 - 1/5*X", "--all", "--budget", "24"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn hurwitz_subcommands() {
    let o = ivp(&["hurwitz", "lemma42", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass"));
    assert_eq!(ivp(&["hurwitz"]).status.code(), Some(0));
    assert_eq!(ivp(&["hurwitz", "check"]).status.code(), Some(0));
    // n = 1 has odd solutions; only the diagnostic mode accepts it
    assert_eq!(ivp(&["hurwitz", "lemma42", "--n", "1"]).status.code(), Some(1));
    let o = ivp(&["hurwitz", "lemma42", "--n", "1", "--diagnostic"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("16 not all even"));
}

#[test]
fn examples_table_passes() {
    let o = ivp(&["examples"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(!s.contains("FAIL"), "{s}");
    assert!(s.trim_end().ends_with("29 of 29 passed"), "{s}");
}

#[test]
fn input_and_usage_errors() {
    let o = ivp(&["analyze", "no_such_order.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    let o = ivp(&["minpoly", "z_i", "--at", "1,2,3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("DIMENSION_MISMATCH"));
    assert_eq!(ivp(&["ramify", "z_i", "--prime", "4"]).status.code(), Some(1));
    assert_eq!(ivp(&["ramify", "z_sqrt5", "--prime", "2"]).status.code(), Some(1));
    assert_eq!(ivp(&["transform", "--prime", "2", "--ef", "2", "--poly", "X"]).status.code(), Some(1));
    assert_eq!(ivp(&["pointwise", "z_sqrt5", "--at", "1/2,1/2"]).status.code(), Some(1));

    for args in [vec![], vec!["frobnicate"], vec!["analyze"], vec!["member", "z_i", "--poly", "X"]] {
        let o = ivp(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty() && !o.stderr.is_empty(), "{args:?}");
    }
    let o = ivp(&["--json", "analyze", "no_such_order.json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["error"], "INPUT");
}

#[test]
fn run_in_process() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = ivp_cli::run(["ivp", "ramify", "z_golden", "--prime", "5"], &mut out, &mut err);
    assert_eq!(code, 0);
    let s = String::from_utf8(out).unwrap();
    assert!(s.contains("E = {2}, F = {1}") && s.contains("s = 2, r = 5"), "{s}");
}

#[test]
fn order_files_are_read_from_disk() {
    let dir = std::env::temp_dir().join(format!("ivp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z_sqrt2.json");
    std::fs::write(&path, r#"{"dim": 2, "one": [1, 0], "table": [[[1, 0], [0, 1]], [[0, 1], [2, 0]]]}"#).unwrap();
    let o = ivp(&["analyze", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    std::fs::write(&path, r#"{"dim": 2, "one": [2, 0], "table": [[[1, 0], [0, 1]], [[0, 1], [2, 0]]]}"#).unwrap();
    let o = ivp(&["analyze", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}
