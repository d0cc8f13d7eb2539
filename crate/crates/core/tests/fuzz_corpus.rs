//! Replays the checked-in fuzz seeds through the same assertions as the
//! fuzz targets.

use std::fs;
use std::path::PathBuf;

use puiseux::exact::{Rat, Supernatural};
use puiseux::factor::pr_decompose;
use puiseux::model::parse;

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<String> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| fs::read(entry.unwrap().path()).unwrap())
        .filter_map(|bytes| String::from_utf8(bytes).ok())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn expression_seeds() {
    for text in seeds("parse_expr").iter().chain(&seeds("parse_roundtrip")) {
        match parse(text) {
            Ok(expr) => {
                let printed = expr.print();
                assert_eq!(parse(&printed).unwrap(), expr, "{text}");
            }
            Err(e) => assert!(e.position().is_none_or(|p| p <= text.len()), "{text}: {e}"),
        }
    }
}

#[test]
fn rational_seeds() {
    for text in seeds("parse_rat") {
        if let Ok(q) = text.parse::<Rat>() {
            assert_eq!(q.to_string().parse::<Rat>().unwrap(), q, "{text}");
        }
    }
}

#[test]
fn supernatural_seeds() {
    let mut parsed = 0;
    for text in seeds("parse_supernatural") {
        if let Ok(s) = text.parse::<Supernatural>() {
            assert_eq!(s.to_string().parse::<Supernatural>().unwrap(), s, "{text}");
            parsed += 1;
        }
    }
    assert!(parsed >= 5);
}

#[test]
fn decompose_seeds() {
    for text in seeds("decompose") {
        let x: Rat = text.parse().unwrap();
        if let Ok(d) = pr_decompose(&x) {
            assert_eq!(d.value(), x);
            assert!(d.coeffs.iter().all(|(&p, &a)| a >= 1 && a < p));
        }
    }
}
