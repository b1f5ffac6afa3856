use std::collections::BTreeMap;

use binomv_core::lang::{
    builtin_registry, exact_sqrt, parse_expr, parse_identities, serialize, try_exact, Exponent, Expr,
    ParseErrorKind,
};
use binomv_core::lang::Expectation;
use binomv_core::{QuadExt, Radicand, Rational};
use proptest::prelude::*;

fn rt(src: &str) {
    let e = parse_expr(src).unwrap_or_else(|err| panic!("{src}: {err}"));
    let s = serialize(&e);
    assert_eq!(parse_expr(&s).unwrap(), e, "{src} -> {s}");
}

#[test]
fn rational_literal_binds_tighter_than_power() {
    assert_eq!(parse_expr("1/4^2").unwrap(), Expr::pow(Expr::rat(1, 4), Exponent::Int(2)));
    assert!(parse_expr("1/4^n").is_err());
}

#[test]
fn power_of_rational_inside_sum() {
    let e = parse_expr("sum(n=1..inf, 1/4^n)").unwrap();
    let lin = Exponent::Linear { index: "n".into(), coeff: 1, offset: 0 };
    assert_eq!(e, Expr::sum("n", Expr::pow(Expr::rat(1, 4), lin)));
}

#[test]
fn unclosed_call_reports_column_four() {
    let err = parse_expr("ln(").unwrap_err();
    assert_eq!((err.line, err.col), (1, 4));
    assert_eq!(err.kind, ParseErrorKind::Syntax);
}

#[test]
fn sqrt_of_small_literal_is_a_surd() {
    assert_eq!(parse_expr("sqrt(5)").unwrap(), Expr::Surd(Radicand::Five));
    assert_eq!(parse_expr("sqrt(7)").unwrap(), Expr::sqrt(Expr::int(7)));
}

#[test]
fn exponent_forms() {
    let p = |s: &str| match parse_expr(&format!("sum(n=1..inf, 2^{s})")).unwrap() {
        Expr::Sum(_, b) => match *b {
            Expr::Pow(_, x) => x,
            other => panic!("{other:?}"),
        },
        other => panic!("{other:?}"),
    };
    assert_eq!(p("3"), Exponent::Int(3));
    assert_eq!(p("(-3)"), Exponent::Int(-3));
    assert_eq!(p("(1/2)"), Exponent::Rat(Rational::frac(1, 2)));
    assert_eq!(p("(n+1)"), Exponent::Linear { index: "n".into(), coeff: 1, offset: 1 });
    assert_eq!(p("(2*n-1)"), Exponent::Linear { index: "n".into(), coeff: 2, offset: -1 });
    assert_eq!(p("(-n)"), Exponent::Linear { index: "n".into(), coeff: -1, offset: 0 });
    assert_eq!(p("(n-n+2)"), Exponent::Int(2));
}

#[test]
fn structural_examples_round_trip() {
    for src in [
        "2*ln((sqrt(2)+1)/2)",
        "-4*zeta3/3+pi*sqrt(3)/18*(trigamma(1/3)-trigamma(2/3))",
        "sum(n=1..inf, (-1)^(n+1)*cbinom(n)/(n*4^n))",
        "-(-x)",
        "-x^2",
        "(-x)^2",
        "a-(b-c)",
        "a/(b/c)",
        "a/b/c",
        "3/(2)",
        "(1/2)^3",
        "x^(1/2)",
        "x^(-1)",
        "2*arcsin((sqrt(3)-1)/2)^2",
        "sum(k=1..inf, k^3*(1/5)^k/cbinom(k))",
    ] {
        rt(src);
    }
}

#[test]
fn serializer_output_is_canonical() {
    let s = |x: &str| serialize(&parse_expr(x).unwrap());
    assert_eq!(s("sum( n = 1 .. inf , 1 / ( n * cbinom( n ) ) )"), "sum(n=1..inf, 1/(n*cbinom(n)))");
    assert_eq!(s("a + (b + c)"), "a+(b+c)");
    assert_eq!(s("(a + b) + c"), "a+b+c");
    assert_eq!(s("3 / (2)"), "3/(2)");
    assert!(parse_expr("--x").is_err());
    assert_eq!(s("-(-x)"), "-(-x)");
}

const MALFORMED: &[&str] = &[
    "",
    "(",
    ")",
    "1+",
    "+1",
    "1 2",
    "ln(",
    "ln()",
    "ln 2",
    "sqrt(2",
    "pi(2)",
    "2^",
    "2^x",
    "2^-1",
    "2^(x)",
    "2^(1/13)",
    "2^99999999",
    "a*/b",
    "a^^2",
    "1/0",
    "trigamma(2)",
    "trigamma(3/2)",
    "trigamma(0/1)",
    "trigamma(x)",
    "cbinom(n)",
    "cbinom(2)",
    "sum(n=0..inf, n)",
    "sum(n=1..10, n)",
    "sum(n=1..inf n)",
    "sum(n=1..inf, n",
    "sum(1=1..inf, 1)",
    "sum(pi=1..inf, 1)",
    "sum(n=1..inf, sum(m=1..inf, m))",
    "sum(n=1..inf, cbinom(m))",
    "sum(n=1..inf, 2^(n*n))",
    "sum(n=1..inf, 2^(n/2))",
    "inf",
    "x $ y",
    "x.y",
    "\"str\"",
    "{x}",
    "x;",
    "a = b",
    "1..2",
    "arcsin",
    "sqrt",
    "zeta3(1)",
    "ln(2))",
    "((1)",
    "sum",
];

#[test]
fn malformed_corpus_is_rejected_with_a_location() {
    assert_eq!(MALFORMED.len(), 50);
    for src in MALFORMED {
        let err = parse_expr(src).expect_err(src);
        assert!(err.line >= 1 && err.col >= 1, "{src}: {err}");
        assert!(err.col <= src.chars().count() + 1, "{src}: {err}");
    }
}

#[test]
fn identity_file_parses() {
    let src = r#"
        # comment
        identity "demo" {
          lhs = sum(n=1..inf, x^n/cbinom(n));
          rhs = y + 1;  # trailing
          param x = 1/5;
          param y = x*2;
          expect = refuted;
        }
    "#;
    let ids = parse_identities(src).unwrap();
    assert_eq!(ids.len(), 1);
    assert_eq!(ids[0].name, "demo");
    assert_eq!(ids[0].expectation, Some(Expectation::Refuted));
    assert_eq!(ids[0].params.len(), 2);
}

#[test]
fn identity_file_errors() {
    let bad = [
        r#"identity "a" { lhs = 1; }"#,
        r#"identity "a" { lhs = x; rhs = 1; }"#,
        r#"identity "a" { lhs = x; rhs = 1; param x = y; param y = x; }"#,
        r#"identity "a" { lhs = 1; rhs = 1; param x = 1; param x = 2; }"#,
        r#"identity "a" { lhs = 1; rhs = 1; expect = maybe; }"#,
        r#"identity a { lhs = 1; rhs = 1; }"#,
        r#"identity "a" { lhs = 1 rhs = 1; }"#,
        r#"identity "a" { lhs = 1; rhs = 1; param x = sum(n=1..inf, 1/cbinom(n)); }"#,
        r#"identity "a { lhs = 1; rhs = 1; }"#,
    ];
    for src in bad {
        assert!(parse_identities(src).is_err(), "{src}");
    }
    let err = parse_identities("identity \"a\" {\n  lhs = 1;\n  rhs = 1 +;\n}").unwrap_err();
    assert_eq!((err.line, err.col), (3, 12));
}

#[test]
fn registry_contents() {
    let reg = builtin_registry();
    assert_eq!(reg.len(), 21);
    let count = |x| reg.iter().filter(|i| i.expectation == Some(x)).count();
    assert_eq!(count(Expectation::Confirmed), 13);
    assert_eq!(count(Expectation::Refuted), 8);
    let mut names: Vec<_> = reg.iter().map(|i| i.name.as_str()).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), 21);
    for id in &reg {
        assert_eq!(id.lhs.sum_count() + id.rhs.sum_count(), 1, "{}", id.name);
    }
}

#[test]
fn exact_evaluation() {
    let none = BTreeMap::new();
    let q = |s: &str| try_exact(&parse_expr(s).unwrap(), &none);
    assert_eq!(q("(1+sqrt(5))/2*2-1"), Some(QuadExt::surd(Radicand::Five)));
    assert_eq!(q("sqrt(1-4*(1/4))"), Some(QuadExt::zero()));
    assert_eq!(q("sqrt(1-4*(-1/8))"), None);
    assert_eq!(q("sqrt(2)*sqrt(3)"), None);
    assert_eq!(q("ln(2)"), None);
    assert_eq!(q("1/(1-1)"), None);
    assert_eq!(exact_sqrt(&Rational::frac(9, 4)), Some(QuadExt::rational(Rational::frac(3, 2))));
    assert_eq!(exact_sqrt(&Rational::frac(1, 2)), Some(QuadExt::new(Rational::zero(), Rational::frac(1, 2), Radicand::Two)));
    let mut params = BTreeMap::new();
    params.insert("x".to_string(), parse_expr("-1/8").unwrap());
    params.insert("y".to_string(), parse_expr("x*x").unwrap());
    assert_eq!(try_exact(&parse_expr("y").unwrap(), &params), Some(QuadExt::rational(Rational::frac(1, 64))));
}

// Random well-formed trees.

fn leaf(index: Option<&'static str>) -> BoxedStrategy<Expr> {
    let mut v: Vec<BoxedStrategy<Expr>> = vec![
        (0u64..1000).prop_map(Expr::int).boxed(),
        (0u64..50, 1u64..50).prop_map(|(p, q)| Expr::rat(p, q)).boxed(),
        prop_oneof![Just(Radicand::Two), Just(Radicand::Three), Just(Radicand::Five)].prop_map(Expr::Surd).boxed(),
        prop_oneof![Just(Expr::Pi), Just(Expr::Zeta3), Just(Expr::Sigma)].boxed(),
        prop_oneof![Just("x"), Just("tau"), Just("y2")].prop_map(Expr::param).boxed(),
        (1u64..6, 1u64..6).prop_filter("in (0,1]", |(p, q)| p <= q).prop_map(|(p, q)| {
            Expr::Trigamma(p.into(), q.into())
        }).boxed(),
    ];
    if let Some(i) = index {
        v.push(Just(Expr::index(i)).boxed());
        v.push(Just(Expr::CBinom(i.into())).boxed());
    }
    proptest::strategy::Union::new(v).boxed()
}

fn exponent(index: Option<&'static str>) -> BoxedStrategy<Exponent> {
    let mut v: Vec<BoxedStrategy<Exponent>> = vec![
        (-20i64..20).prop_map(Exponent::Int).boxed(),
        (-7i64..7, 2i64..=12)
            .prop_filter("non-integer", |(p, q)| p % q != 0)
            .prop_map(|(p, q)| Exponent::Rat(Rational::frac(p, q)))
            .boxed(),
    ];
    if let Some(i) = index {
        v.push(
            (prop_oneof![-3i64..0, 1i64..4], -5i64..5)
                .prop_map(move |(coeff, offset)| Exponent::Linear { index: i.into(), coeff, offset })
                .boxed(),
        );
    }
    proptest::strategy::Union::new(v).boxed()
}

fn tree(index: Option<&'static str>) -> BoxedStrategy<Expr> {
    leaf(index)
        .prop_recursive(7, 64, 2, move |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::add(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::sub(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::mul(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::div(a, b)),
                inner.clone().prop_map(Expr::neg),
                (inner.clone(), exponent(index)).prop_map(|(a, e)| Expr::pow(a, e)),
                inner.clone().prop_map(Expr::ln),
                inner.clone().prop_filter("not a surd", |a| !is_small_int(a)).prop_map(Expr::sqrt),
                inner.clone().prop_map(Expr::arcsin),
            ]
        })
        .boxed()
}

fn is_small_int(e: &Expr) -> bool {
    matches!(e, Expr::Int(n) if *n == 2u32.into() || *n == 3u32.into() || *n == 5u32.into())
}

fn top() -> impl Strategy<Value = Expr> {
    prop_oneof![
        3 => tree(None),
        1 => (tree(None), tree(Some("n"))).prop_map(|(a, b)| Expr::mul(a, Expr::sum("n", b))),
        1 => tree(Some("m")).prop_map(|b| Expr::sum("m", b)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn serialize_round_trips(e in top()) {
        let s = serialize(&e);
        let back = parse_expr(&s).map_err(|err| TestCaseError::fail(format!("{s}: {err}")))?;
        prop_assert_eq!(back, e, "{}", s);
    }
}
