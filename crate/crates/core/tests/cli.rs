use std::process::Command;

use elliptic_sextic::report::{parse_equations, VerificationReport};

fn sextic() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_sextic"));
    c.env_remove("SEXTIC_SEED");
    c
}

#[test]
fn verify_constants_only_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let status = sextic()
        .args(["verify", "--checks", "constants-relations", "--out"])
        .arg(&out)
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(0));
    let r = VerificationReport::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r.summary.total, 7);
    assert!(r.passed());
}

#[test]
fn invalid_tau_exits_with_two() {
    let out = sextic().args(["verify", "--tau", "0,-1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("tau"));
}

#[test]
fn unknown_group_exits_with_two() {
    let status = sextic()
        .args(["verify", "--checks", "nonsense"])
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(2));
}

#[test]
fn config_file_is_read_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "tau = 0.5, 1.0\nseed = 3\nchecks = constants-relations\n").unwrap();
    let out = dir.path().join("r.json");
    let status = sextic()
        .args(["verify", "--seed", "11", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(0));
    let r = VerificationReport::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r.config.tau, [0.5, 1.0]);
    assert_eq!(r.config.seed, 11);
}

#[test]
fn env_seed_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let status = sextic()
        .env("SEXTIC_SEED", "5")
        .args(["verify", "--checks", "constants-relations", "--out"])
        .arg(&out)
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(0));
    let r = VerificationReport::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r.config.seed, 5);
}

#[test]
fn dumped_quadrics_parse_back() {
    let out = sextic()
        .args(["dump-equations", "--what", "quadrics"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let forms = parse_equations(&String::from_utf8(out.stdout).unwrap(), 2).unwrap();
    let names: Vec<&str> = forms.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(names, ["Q0", "Q1", "Q2", "Q0'", "Q1'", "Q2'", "Q0''", "Q1''", "Q2''"]);
}

#[test]
fn table_prints_expected_dimensions() {
    let out = sextic()
        .args(["table", "--variety", "c6", "--degrees", "2,3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let json = text.lines().last().unwrap();
    let rows: serde_json::Value = serde_json::from_str(json).unwrap();
    assert_eq!(rows[0]["dim"], 9);
    assert_eq!(rows[1]["dim"], 38);
}
