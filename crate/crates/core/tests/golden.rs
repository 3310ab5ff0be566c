use cdstrat::cli::{self, Format};

const GOLDEN: &[(&str, u64)] = &[
    ("p1-lambda", 0),
    ("p2-lambda-generic", 1),
    ("p3-lambda-generic", 2),
    ("p4-lambda-generic", 3),
    ("hirzebruch-f1", 1),
    ("hirzebruch-f2", 1),
    ("flag-a1-borel", 0),
    ("flag-a2-borel", 2),
    ("flag-a3-gr24", 3),
    ("strat-p2", 1),
    // generic Jacobian rank 4, so the image is 3-dimensional
    ("expl-strict", 3),
];

#[test]
fn builtin_values() {
    for &(name, cd) in GOLDEN {
        let job = cli::builtin(name).unwrap_or_else(|| panic!("missing builtin {name}")).job;
        let report = cli::run(&job).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(report.cd(), cd, "{name}");
    }
}

#[test]
fn every_builtin_is_pinned() {
    let mut names: Vec<String> = cli::builtins().into_iter().map(|b| b.name).collect();
    names.sort();
    let mut pinned: Vec<String> = GOLDEN.iter().map(|(n, _)| n.to_string()).collect();
    pinned.sort();
    assert_eq!(names, pinned);
}

#[test]
fn json_output_is_byte_stable() {
    for b in cli::builtins() {
        let first = cli::render(&cli::run(&b.job).unwrap(), Format::Json);
        let second = cli::render(&cli::run(&b.job).unwrap(), Format::Json);
        assert_eq!(first, second, "{}", b.name);
        let human = cli::render(&cli::run(&b.job).unwrap(), Format::Human);
        assert!(!human.is_empty());
    }
}

#[test]
fn builtin_jobs_round_trip_through_json() {
    for b in cli::builtins() {
        let text = serde_json::to_string(&b.job).unwrap();
        assert_eq!(cli::JobSpec::from_json(&text).unwrap(), b.job, "{}", b.name);
    }
}

#[test]
fn p2_report_fields() {
    let job = cli::builtin("p2-lambda-generic").unwrap().job;
    let json: serde_json::Value = serde_json::from_str(&cli::render(&cli::run(&job).unwrap(), Format::Json)).unwrap();
    assert_eq!(json["mode"], "toric");
    assert_eq!(json["cd_minus_sink"], 1);
    assert_eq!(json["components"].as_array().unwrap().len(), 3);
}
