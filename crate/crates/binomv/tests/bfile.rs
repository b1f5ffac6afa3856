use std::collections::BTreeMap;

use binomv::bfile::{check_digits, BFile, BFileError};
use binomv_core::lang::{builtin_registry, parse_expr};
use binomv_core::verify::{evaluate, EvalOptions};
use binomv_core::{BallReal, Rational};

fn l7(digits: u64) -> BallReal {
    let id = builtin_registry().into_iter().find(|i| i.name == "L7").unwrap();
    evaluate(&id.lhs, &id.params, digits).unwrap()
}

fn fixture() -> BFile {
    BFile::parse(include_str!("fixtures/A157701.txt")).unwrap()
}

#[test]
fn parses_comments_and_offset() {
    let b = BFile::parse("# digits\n\n# offset -1\n-1 6\n0 4\n  1 2  \n").unwrap();
    assert_eq!(b.offset, Some(-1));
    assert_eq!(b.entries, vec![(-1, 6), (0, 4), (1, 2)]);
    let b = BFile::parse("1 3\n2 1\n").unwrap();
    assert_eq!(b.offset, None);
    assert_eq!(b.effective_offset(), 1);
}

#[test]
fn rejects_malformed_lines() {
    for (text, line) in [
        ("3 x\n", 1),
        ("0 2\n1 12\n", 2),
        ("0\n", 1),
        ("0 1 2\n", 1),
        ("a 1\n", 1),
        ("# offset\n0 1\n", 1),
        ("# offset k\n", 1),
    ] {
        match BFile::parse(text) {
            Err(BFileError::Malformed { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
    assert!(matches!(BFile::parse("0 1\n2 1\n"), Err(BFileError::NotConsecutive { line: 2, .. })));
    assert_eq!(BFile::parse("# only a comment\n"), Err(BFileError::Empty));
}

#[test]
fn fixture_agrees_with_the_series() {
    let b = fixture();
    assert_eq!(b.offset, Some(0));
    let c = check_digits(&l7(70), &b, 0);
    assert_eq!((c.agreed, c.available, c.mismatch), (60, 60, None));
    // Published leading digits.
    let digits: String = b.entries.iter().take(12).map(|&(_, d)| char::from(b'0' + d)).collect();
    assert_eq!(digits, "280851790115");
}

#[test]
fn agreement_stops_at_the_certified_digits() {
    let c = check_digits(&l7(20), &fixture(), 0);
    assert!(c.mismatch.is_none());
    assert!((20..60).contains(&c.agreed), "{}", c.agreed);
}

#[test]
fn a_changed_digit_is_reported() {
    let mut b = fixture();
    b.entries[30].1 = (b.entries[30].1 + 1) % 10;
    let c = check_digits(&l7(70), &b, 0);
    assert_eq!(c.agreed, 30);
    let m = c.mismatch.unwrap();
    assert_eq!(m.index, 30);
    assert_eq!(m.expected, b.entries[30].1);
}

#[test]
fn offsets_place_leading_zeros_and_integer_parts() {
    // 31.40625 with offset 2: a(2) = 3 is the tens digit.
    let x = BallReal::from_rational(&Rational::frac(1005, 32), 80);
    let b = BFile::parse("# offset 2\n2 3\n3 1\n4 4\n5 0\n6 6\n7 2\n8 5\n9 0\n").unwrap();
    assert_eq!(check_digits(&x, &b, 2).agreed, 8);
    // 0.0625 with offset -1: a(-1) = 6 is the hundredths digit.
    let x = BallReal::from_rational(&Rational::frac(1, 16), 80);
    let b = BFile::parse("-1 6\n0 2\n1 5\n").unwrap();
    assert_eq!(check_digits(&x, &b, b.effective_offset()).agreed, 3);
    // Negative values compare by magnitude.
    let e = parse_expr("-1/16").unwrap();
    let neg = binomv_core::verify::evaluate_with(&e, &BTreeMap::new(), &EvalOptions::for_digits(20)).unwrap().value;
    assert_eq!(check_digits(&neg, &b, -1).agreed, 3);
}
