mod common;

use common::{check_golden, generated};

#[test]
fn outputs_match_stored_copies() {
    for (name, actual) in generated() {
        check_golden(name, &actual).unwrap();
    }
}

#[test]
fn repeated_generation_is_byte_identical() {
    let first = generated();
    let second = generated();
    for ((name, a), (_, b)) in first.iter().zip(second.iter()) {
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn svg_has_three_labelled_series() {
    let svg = common::svg_bytes();
    assert_eq!(svg.matches("<polyline").count(), 3);
    for letter in ["x", "y", "z"] {
        assert!(
            svg.contains(&format!(">{letter}</text>")),
            "legend entry {letter}"
        );
    }
}
