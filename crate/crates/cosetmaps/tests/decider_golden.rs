use std::path::PathBuf;

use cosetmaps::deciders::{
    descent_facts, power_group_list, word_group_list, Certificate, Decider, Shortcuts, VerdictKind,
};
use cosetmaps::engine::EngineOpts;
use cosetmaps::words::Word;
use serde_json::{json, Value};

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares against a checked-in file; `COSETMAPS_BLESS=1` rewrites it.
fn golden(name: &str, actual: &Value) {
    let path = golden_path(name);
    let text = serde_json::to_string_pretty(actual).unwrap() + "\n";
    if std::env::var_os("COSETMAPS_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, text).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(text, expected, "{name} differs from the checked-in list");
}

#[test]
fn power_group_lists_match_golden() {
    let lists: Vec<Value> = [2i64, 4, 6, 8, 10, 14, 20, 22, 9]
        .iter()
        .map(|&e| json!({"e": e, "tasks": power_group_list(e).unwrap()}))
        .collect();
    golden("power_group_lists.json", &Value::Array(lists));
}

#[test]
fn word_group_lists_match_golden() {
    let mut lists = Vec::new();
    for (m, l) in [(2usize, 4usize), (2, 6), (3, 6), (4, 7), (4, 8)] {
        for (s3, s2) in [(None, None), (Some(true), Some(true)), (Some(false), Some(false))] {
            let sc = Shortcuts { sym3_nonconstant: s3, sz2_nonconstant: s2 };
            lists.push(serde_json::to_value(word_group_list(m, l, sc)).unwrap());
        }
    }
    golden("word_group_lists.json", &Value::Array(lists));
}

#[test]
fn power_lists_are_sign_symmetric() {
    for e in 1..=30 {
        assert_eq!(power_group_list(e).unwrap(), power_group_list(-e).unwrap());
    }
}

#[test]
fn power_verdicts_are_sign_symmetric() {
    let d = Decider::new(EngineOpts { seed: 3, ..EngineOpts::default() });
    for e in [1i64, 2, 3, 4, 5, 6, 8, 9, 12, 16, 18, 24, 30] {
        let pos = d.decide_power(e).unwrap();
        let neg = d.decide_power(-e).unwrap();
        assert_eq!(pos.kind, neg.kind, "e = {e}");
        assert!(pos.verify_certificates() && neg.verify_certificates(), "e = {e}");
    }
}

#[test]
fn odd_exponents_are_multiplicity_bounding() {
    let d = Decider::new(EngineOpts::default());
    for e in [1i64, 3, 5, 7, 9, -9] {
        let v = d.decide_power(e).unwrap();
        assert_eq!(v.kind, VerdictKind::Mb, "e = {e}");
        let (checked, passed) = v.verify_witnesses();
        assert_eq!(checked, passed, "e = {e}: witness failed to reverify");
        assert!(e.abs() == 1 || checked > 0, "e = {e}: no witnesses kept");
    }
}

#[test]
fn negative_power_certificates_reverify() {
    let d = Decider::new(EngineOpts::default());
    for e in [8i64, 12, 16, 18, 24, 30] {
        let v = d.decide_power(e).unwrap();
        assert_eq!(v.kind, VerdictKind::NotMb, "e = {e}");
        assert!(!v.certificates.is_empty());
        for c in &v.certificates {
            assert!(matches!(c, Certificate::Divisibility(_) | Certificate::Constancy(_)), "e = {e}");
            assert!(c.verify(), "e = {e}");
        }
    }
}

#[test]
fn twentieth_power_descends_to_the_odd_coset_of_pgl2_3() {
    let facts = descent_facts(20);
    assert_eq!(facts.len(), 1);
    let f = &facts[0];
    assert_eq!((f.p, f.m, f.outer, f.base_lcm), (3, 5, true, 4));
    assert_eq!(f.frobs, vec![1, 2, 3, 4]);
    assert!(f.verify());
    for e in [2i64, 4, 6, 10, 14, 22] {
        assert!(descent_facts(e).is_empty(), "e = {e}");
    }
}

#[test]
fn vsmb_and_vwmb_examples() {
    let d = Decider::new(EngineOpts::default());
    let cases = [
        ("abAB", VerdictKind::Vsmb, VerdictKind::Vwmb),
        ("aabb", VerdictKind::Vsmb, VerdictKind::Vwmb),
        ("a^8", VerdictKind::NotVsmb, VerdictKind::NotVwmb),
    ];
    for (w, s, wk) in cases {
        let w = Word::parse(w).unwrap();
        assert_eq!(d.decide_vsmb(&w).unwrap().kind, s, "{w}");
        assert_eq!(d.decide_vwmb(&w).unwrap().kind, wk, "{w}");
    }
}
