//! Output contract of the command-line front end: JSON shapes, exit codes,
//! determinism.

use std::path::PathBuf;
use std::process::Command;

use puiseux_cli::run;
use serde_json::Value;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn call(args: &[&str]) -> Outcome {
    call_env(args, None)
}

fn call_env(args: &[&str], env: Option<&str>) -> Outcome {
    let mut argv = vec!["puiseux".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&argv, env, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/schemas")
        .join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn check_against(name: &str, doc: &str) -> Value {
    let v: Value =
        serde_json::from_str(doc.trim()).unwrap_or_else(|e| panic!("{name}: {e}: {doc}"));
    let validator = schema(name);
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(
        errors.is_empty(),
        "{name} output {v} violates its schema: {errors:?}"
    );
    // serializing again gives the same document
    let again: Value = serde_json::from_str(&v.to_string()).unwrap();
    assert_eq!(again, v);
    v
}

/// Subcommand invocations with the schema each one's output follows.
const VALID: &[(&str, &[&str])] = &[
    ("parse", &["parse", "PR union T(1)"]),
    ("parse", &["parse", "<6/4, 9/4>"]),
    ("atoms", &["atoms", "S(2/3)"]),
    ("atoms", &["atoms", "FA(2, 3, 5)"]),
    ("atoms", &["atoms", "S(1/2)"]),
    ("atoms", &["atoms", "PR union T(1)"]),
    ("member", &["member", "PR", "7/6"]),
    ("member", &["member", "PR", "1/6"]),
    ("member", &["member", "S(2/3)", "4/3"]),
    ("factorize", &["factorize", "<3,5>", "30"]),
    ("factorize", &["factorize", "S(2/3)", "2", "--depth", "4"]),
    (
        "factorize",
        &["factorize", "PR", "3/2", "--max-prime", "13"],
    ),
    ("lengths", &["lengths", "<3,5,7>", "21"]),
    ("lengths", &["lengths", "2 * PR", "2"]),
    ("closure", &["closure", "S(2/3)"]),
    ("closure", &["closure", "PR"]),
    ("closure", &["closure", "<3/2, 5/2>"]),
    ("conductor", &["conductor", "<3,5>"]),
    ("conductor", &["conductor", "S(3/2)"]),
    ("conductor", &["conductor", "S(1/2)"]),
    ("conductor", &["conductor", "PF"]),
    ("classify", &["classify", "S(2/3)"]),
    ("classify", &["classify", "PR union <1/2>"]),
    ("classify", &["classify", "ID", "--seed", "7"]),
    ("witness_chain", &["witness-chain"]),
    ("frobenius", &["frobenius", "<3,5>"]),
    ("frobenius", &["frobenius", "<1/2>"]),
    ("apery", &["apery", "<3,5>", "5"]),
    ("iso", &["iso", "<3/2, 5/2>", "<3,5>"]),
    ("iso", &["iso", "PF", "PR"]),
    ("decompose", &["decompose", "7/6"]),
    ("decompose", &["decompose", "5"]),
];

#[test]
fn json_output_follows_the_schemas() {
    for &(name, args) in VALID {
        let mut argv = args.to_vec();
        argv.extend(["--format", "json"]);
        let out = call(&argv);
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        assert!(out.stderr.is_empty());
        check_against(name, &out.stdout);
    }
}

#[test]
fn json_values() {
    let json = |args: &[&str]| -> Value {
        let mut argv = args.to_vec();
        argv.extend(["--format", "json"]);
        serde_json::from_str(&call(&argv).stdout).unwrap()
    };
    let verdicts = json(&["classify", "S(2/3)"]);
    let accp = verdicts
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["property"] == "ACCP")
        .unwrap();
    assert_eq!(accp["holds"], "no");
    assert!(accp["certificate"].as_str().unwrap().starts_with("R-SR: "));
    let names: Vec<&str> = verdicts
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["property"].as_str().unwrap())
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);

    assert_eq!(
        json(&["decompose", "7/6"]),
        serde_json::json!({"n": 0, "coeffs": {"2": 1, "3": 2}})
    );
    assert_eq!(
        json(&["conductor", "<3,5>"]),
        serde_json::json!({"kind": "tail", "sigma": "8"})
    );
    assert_eq!(
        json(&["conductor", "S(3/2)"]),
        serde_json::json!({"kind": "empty"})
    );
    assert_eq!(json(&["frobenius", "<3,5>"])["frobenius"], "7");
    assert_eq!(json(&["iso", "<3/2, 5/2>", "<3,5>"])["multiplier"], "2");
    let f = json(&["factorize", "<3,5>", "15"]);
    assert_eq!(f["atoms"], serde_json::json!(["3", "5"]));
    assert_eq!(f["factorizations"], serde_json::json!([[0, 3], [5, 0]]));
}

#[test]
fn text_outputs() {
    assert_eq!(call(&["frobenius", "<3,5>"]).stdout, "7\n");
    assert_eq!(call(&["member", "PR", "1/6"]).stdout, "no\n");
    assert_eq!(
        call(&["closure", "PR"]).stdout,
        "1 * <1/d | d divides 1|rest=1>\n"
    );
    assert_eq!(call(&["parse", "( 1/2 *S(3/2))"]).stdout, "1/2 * S(3/2)\n");
    assert_eq!(call(&["lengths", "<3,5>", "15"]).stdout, "{3, 5}\n");
}

#[test]
fn exit_codes_follow_the_contract() {
    let domain: &[&[&str]] = &[
        &["decompose", "1/6"],
        &["decompose", "1/4"],
        &["factorize", "<3,5>", "7"],
        &["factorize", "T(1)", "3"],
        &["frobenius", "PR"],
        &["apery", "<3,5>", "7"],
        &["apery", "<3,5>", "0"],
        &["lengths", "PR", "1/101"],
    ];
    for args in domain {
        let out = call(args);
        assert_eq!(out.code, 1, "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(out.stderr.starts_with("error[E-"), "{}", out.stderr);
    }
    let malformed: &[&[&str]] = &[
        &["parse", "<3,"],
        &["parse", "S(2/3"],
        &["parse", "FA(2, 4, 5)"],
        &["parse", "<-3, 5>"],
        &["member", "PR", "0.5"],
        &["member", "PR", "1/0"],
        &["member", "PR", "-1/2"],
        &["classify"],
        &["frobnicate", "<3,5>"],
        &["atoms", "PR", "--depth", "0"],
        &["atoms", "PR", "--max-prime", "1"],
        &["atoms", "PR", "--format", "xml"],
    ];
    for args in malformed {
        let out = call(args);
        assert_eq!(out.code, 2, "{args:?}: {}", out.stderr);
        assert!(out.stderr.starts_with("error[E-"), "{}", out.stderr);
    }
    for args in [
        &["member", "PR", "1/6"][..],
        &["iso", "PF", "S(2/3)"],
        &["conductor", "ID"],
    ] {
        assert_eq!(call(args).code, 0, "{args:?}");
    }
}

#[test]
fn syntax_errors_carry_positions() {
    for (args, pos) in [
        (&["parse", "<3,"][..], 3),
        (&["parse", "7 *"], 3),
        (&["member", "PR", "1/x"], 2),
    ] {
        let mut argv = args.to_vec();
        argv.extend(["--format", "json"]);
        let out = call(&argv);
        assert_eq!(out.code, 2);
        let v = check_against("error", &out.stderr);
        assert_eq!(v["error"], "E-SYNTAX");
        assert_eq!(v["position"], pos, "{args:?}");
    }
}

#[test]
fn environment_selects_the_format() {
    let out = call_env(&["frobenius", "<3,5>"], Some("json"));
    assert_eq!(out.stdout.trim(), r#"{"frobenius":"7"}"#);
    let out = call_env(&["frobenius", "<3,5>", "--format", "text"], Some("json"));
    assert_eq!(out.stdout, "7\n");
    assert_eq!(call_env(&["frobenius", "<3,5>"], Some("toml")).code, 2);
}

#[test]
fn witness_chain_is_byte_identical() {
    let first = call(&["witness-chain"]).stdout;
    assert_eq!(first, call(&["witness-chain"]).stdout);
    let json = call(&["witness-chain", "--format", "json"]).stdout;
    assert_eq!(json, call(&["witness-chain", "--format", "json"]).stdout);
    let rows: Vec<String> = first
        .lines()
        .filter(|l| !l.starts_with(' '))
        .map(str::to_string)
        .collect();
    assert_eq!(
        rows,
        [
            "S(2/3)   Atomic and not ACCP",
            "PR       ACCP and not BFM",
            "T(1)     BFM and not FFM",
            "PF       FFM and not HFM"
        ]
    );
}

#[test]
fn binary_matches_the_library() {
    let exe = env!("CARGO_BIN_EXE_puiseux");
    let runs: Vec<_> = (0..2)
        .map(|_| {
            Command::new(exe)
                .arg("witness-chain")
                .env_remove("PUISEUX_FORMAT")
                .output()
                .unwrap()
        })
        .collect();
    assert!(runs[0].status.success());
    assert_eq!(runs[0].stdout, runs[1].stdout);
    assert_eq!(
        String::from_utf8_lossy(&runs[0].stdout),
        call(&["witness-chain"]).stdout
    );

    let out = Command::new(exe)
        .args(["decompose", "1/6"])
        .env("PUISEUX_FORMAT", "json")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v = check_against("error", &String::from_utf8_lossy(&out.stderr));
    assert_eq!(v["error"], "E-NOT-MEMBER");

    let out = Command::new(exe).args(["parse", "<3,"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
