use std::path::PathBuf;
use std::process::{Command, Output};

fn symcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symcode")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn perm_eval_swaps() {
    let o = symcode(&["perm", "--expr", "(0 1)", "--eval", "0"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS eval: x=0 -> 1"));
}

#[test]
fn perm_image_of_conjugated_tau() {
    let o = symcode(&["perm", "--expr", "tau^{z^{-1}}", "--image", "8"]);
    assert!(stdout(&o).contains("-> 0->2 2->0 "));
}

#[test]
fn perm_parse_errors_name_the_position() {
    let o = symcode(&["perm", "--expr", "tau^", "--eval", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("at 4"));
}

#[test]
fn code2_evens() {
    let o = symcode(&["code2", "--set", "evens", "--n", "8", "--machine"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("record name=n0004 pass=true inputs=\"g0=0 g1=1\" expected=\"In(t=2)\" got=\"In(t=2)\""));
    assert!(text.contains("got=NotByHorizon(200)"));
    assert!(text.ends_with("total=8 passed=8 failed=0\n"));
}

#[test]
fn code2_reads_a_set_file() {
    let path = scratch("set.txt");
    std::fs::write(&path, "# stage value\n0 5\n1 3\n").unwrap();
    let arg = format!("@{}", path.display());
    let o = symcode(&["code2", "--set", &arg, "--n", "6", "--horizon", "4"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("n0005: g0=0 g1=1 -> In(t=0)"));
    assert!(text.contains("n0003: g0=1 g1=0 -> In(t=1)"));
}

#[test]
fn code3_verdicts() {
    for (pred, want) in [("always", "in"), ("lt", "out"), ("never", "out")] {
        let o = symcode(&["code3", "--pred", pred, "--n", "6"]);
        assert!(o.status.success(), "{pred}");
        assert!(stdout(&o).contains("n0005.verdict: "));
        assert!(stdout(&o).contains(&format!("-> {want} (expected {want})")), "{pred}");
    }
}

#[test]
fn gsl_and_ba_reports() {
    let o = symcode(&["gsl", "--expr", "blk", "--field", "GF5", "--window", "16"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("property_d.witness"));
    let o = symcode(&["ba", "--expr", "blk"]);
    assert!(stdout(&o).contains("PASS psi: window=64 -> NoSupEvidence"));
    let o = symcode(&["ba", "--expr", "(1 4)"]);
    assert!(stdout(&o).contains("SupExists [1,2);[4,5)"));
}

#[test]
fn pipeline_matches_direct_decode() {
    for target in ["gsl", "ba"] {
        let o = symcode(&["pipeline", "--set", "evens", "--target", target, "--horizon", "20"]);
        assert!(o.status.success(), "{target}");
        assert!(stdout(&o).contains("summary: 8 checks, 8 passed, 0 failed"));
    }
    let o = symcode(&["pipeline", "--set", "empty", "--horizon", "20"]);
    assert!(!stdout(&o).contains("In(t="));
}

#[test]
fn config_file_and_flag_precedence() {
    let cfg = scratch("run.cfg");
    std::fs::write(&cfg, "set=empty\nn=3\nhorizon=10\n").unwrap();
    let c = cfg.display().to_string();
    let o = symcode(&["code2", "--config", &c]);
    assert!(stdout(&o).starts_with("# code2 --set empty --horizon 10"));
    assert!(stdout(&o).contains("summary: 3 checks"));
    let o = symcode(&["code2", "--config", &c, "--n", "2"]);
    assert!(stdout(&o).contains("summary: 2 checks"));
}

#[test]
fn out_writes_the_report() {
    let out = scratch("report.txt");
    let o = symcode(&[
        "perm",
        "--expr",
        "blk",
        "--profile",
        "16",
        "--out",
        &out.display().to_string(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().contains("1:8 2:4 escapes:0"));
}

#[test]
fn properties_suite_is_deterministic() {
    let a = symcode(&["suite", "properties", "--seed", "3", "--machine"]);
    let b = symcode(&["suite", "properties", "--seed", "3", "--machine"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn unknown_names_fail() {
    assert_eq!(symcode(&["suite", "nope"]).status.code(), Some(2));
    assert_eq!(symcode(&["code2", "--set", "odds"]).status.code(), Some(2));
    assert_eq!(symcode(&["code3", "--window", "0"]).status.code(), Some(2));
}
