use bpair_web::{classify_json, pairing_json, search_json, MAX_PRIME};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn pairing_of_29() {
    let d = parse(pairing_json(29).unwrap());
    assert_eq!(d["t"], 12);
    assert_eq!(d["n"], 14);
    assert_eq!(d["l_p"], 7);
    assert_eq!(
        d["pairs"].to_string(),
        "[[1,12],[2,5],[3,7],[4,10],[6,14],[8,9],[11,13]]"
    );
    assert_eq!(d["counts"]["crossing"], 7);
    assert_eq!(d["counts"]["nesting"], 7);
}

#[test]
fn pairing_rejects_bad_primes() {
    assert!(pairing_json(12).is_err());
    assert!(pairing_json(7).is_err());
    assert!(pairing_json(MAX_PRIME + 1).is_err());
}

#[test]
fn search_results() {
    let r = parse(search_json(6, 5, 1_000_000).unwrap());
    assert_eq!(r["found"].as_array().unwrap().len(), 2);
    assert_eq!(r["found"][0]["counts"]["disjoint"], 1);
    let r = parse(search_json(10, 5, 1_000_000).unwrap());
    assert_eq!(r["exhausted"], true);
    assert!(r["found"].as_array().unwrap().is_empty());
    assert!(search_json(9, 1, 10).is_err());
}

#[test]
fn classify_accepts_both_notations() {
    let a = parse(classify_json(6, "(1,5)(2,3)(4,6)").unwrap());
    let b = parse(classify_json(6, "1 5, 2 3, 4 6").unwrap());
    assert_eq!(a, b);
    assert_eq!(a["difference_property"], true);
    assert!(classify_json(6, "1 5, 2 3").is_err());
    assert!(classify_json(6, "1 5, 2 3, 4").is_err());
    assert!(classify_json(6, "1 5, 1 3, 4 6").is_err());
}
