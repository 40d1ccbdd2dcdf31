use elliptic_sextic::report::{run, CheckGroup, RunConfig, VerificationReport};

fn cheap(seed: u64) -> RunConfig {
    RunConfig {
        seed,
        checks: vec![
            CheckGroup::EmbedValidate,
            CheckGroup::Quadrics,
            CheckGroup::ConstantsRelations,
            CheckGroup::DerivativeIdentities,
        ],
        ..RunConfig::default()
    }
}

#[test]
fn same_seed_gives_identical_json() {
    let a = run(&cheap(42)).unwrap().to_json().unwrap();
    let b = run(&cheap(42)).unwrap().to_json().unwrap();
    assert_eq!(a, b);
}

#[test]
fn json_round_trips() {
    let r = run(&cheap(42)).unwrap();
    let back = VerificationReport::from_json(&r.to_json().unwrap()).unwrap();
    assert_eq!(back, r);
    // Infinite gaps survive as strings.
    assert!(r.records().any(|c| c.residual_or_gap.is_infinite()));
}

#[test]
fn report_names_are_identifiers_and_unique() {
    let r = run(&cheap(42)).unwrap();
    let mut names: Vec<&str> = r.records().map(|c| c.name.as_str()).collect();
    for n in &names {
        // Mostly lower case; ideal names such as IC6 keep their capitals.
        assert!(n.starts_with(|ch: char| ch.is_ascii_lowercase()), "{n}");
        assert!(n.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_'), "{n}");
    }
    let total = names.len();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), total);
    assert_eq!(r.summary.total, total);
}

#[test]
fn every_check_passes_across_seeds() {
    for seed in [1, 7, 2024] {
        let cfg = RunConfig {
            seed,
            ..RunConfig::default()
        };
        let r = run(&cfg).unwrap();
        assert!(r.passed(), "seed {seed}\n{}", r.table());
    }
}

#[test]
fn bad_configuration_is_an_error() {
    let cfg = RunConfig {
        tau: elliptic_sextic::Complex64::new(0.0, -1.0),
        ..RunConfig::default()
    };
    assert!(run(&cfg).is_err());
    let cfg = RunConfig {
        samples: 10,
        ..RunConfig::default()
    };
    assert!(run(&cfg).is_err());
}

#[test]
fn timings_are_opt_in() {
    let mut cfg = cheap(42);
    assert!(run(&cfg).unwrap().groups.iter().all(|g| g.seconds.is_none()));
    cfg.timings = true;
    assert!(run(&cfg).unwrap().groups.iter().all(|g| g.seconds.is_some()));
}
