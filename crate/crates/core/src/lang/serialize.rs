use alloc::format;
use alloc::string::{String, ToString};

use super::ast::{Exponent, Expr, Identity};

const ADD: u8 = 1;
const MUL: u8 = 2;
const NEG: u8 = 3;
const POW: u8 = 4;
const ATOM: u8 = 5;

/// Canonical text of an expression; `parse_expr(serialize(e)) == e`.
pub fn serialize(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(e, &mut out);
    out
}

/// Canonical text of an identity block.
pub fn serialize_identity(id: &Identity) -> String {
    let mut s = format!("identity \"{}\" {{\n", id.name);
    s += &format!("  lhs = {};\n", serialize(&id.lhs));
    s += &format!("  rhs = {};\n", serialize(&id.rhs));
    for (k, v) in &id.params {
        s += &format!("  param {k} = {};\n", serialize(v));
    }
    if let Some(x) = id.expectation {
        s += &format!("  expect = {};\n", x.as_str());
    }
    if !id.note.is_empty() {
        s += &format!("  note = \"{}\";\n", id.note);
    }
    s += "}\n";
    s
}

fn level(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => ADD,
        Expr::Mul(..) | Expr::Div(..) => MUL,
        Expr::Neg(_) => NEG,
        Expr::Pow(..) => POW,
        _ => ATOM,
    }
}

fn wrapped(e: &Expr, min: u8) -> String {
    let s = serialize(e);
    if level(e) >= min {
        s
    } else {
        format!("({s})")
    }
}

fn write_expr(e: &Expr, out: &mut String) {
    match e {
        Expr::Int(n) => *out += &n.to_string(),
        Expr::Rat(p, q) => *out += &format!("{p}/{q}"),
        Expr::Surd(d) => *out += &format!("sqrt({})", d.value()),
        Expr::Pi => *out += "pi",
        Expr::Zeta3 => *out += "zeta3",
        Expr::Sigma => *out += "sigma",
        Expr::Param(s) | Expr::Index(s) => *out += s,
        Expr::Add(a, b) => {
            *out += &wrapped(a, ADD);
            *out += "+";
            *out += &wrapped(b, MUL);
        }
        Expr::Sub(a, b) => {
            *out += &wrapped(a, ADD);
            *out += "-";
            *out += &wrapped(b, MUL);
        }
        Expr::Mul(a, b) | Expr::Div(a, b) => {
            let l = wrapped(a, MUL);
            let mut r = wrapped(b, NEG);
            let is_div = matches!(e, Expr::Div(..));
            // `p/q` after a digit would lex as a rational literal.
            let glue = |l: &str, r: &str| {
                l.ends_with(|c: char| c.is_ascii_digit()) && r.starts_with(|c: char| c.is_ascii_digit())
            };
            if is_div && glue(&l, &r) {
                r = format!("({r})");
            }
            *out += &l;
            *out += if is_div { "/" } else { "*" };
            *out += &r;
        }
        Expr::Neg(a) => {
            *out += "-";
            *out += &wrapped(a, POW);
        }
        Expr::Pow(a, x) => {
            match **a {
                Expr::Rat(..) => *out += &format!("({})", serialize(a)),
                _ => *out += &wrapped(a, ATOM),
            }
            *out += "^";
            *out += &exponent(x);
        }
        Expr::Ln(a) => *out += &format!("ln({})", serialize(a)),
        Expr::Sqrt(a) => *out += &format!("sqrt({})", serialize(a)),
        Expr::Arcsin(a) => *out += &format!("arcsin({})", serialize(a)),
        Expr::Trigamma(p, q) => *out += &format!("trigamma({p}/{q})"),
        Expr::CBinom(i) => *out += &format!("cbinom({i})"),
        Expr::Sum(i, body) => *out += &format!("sum({i}=1..inf, {})", serialize(body)),
    }
}

fn exponent(x: &Exponent) -> String {
    match x {
        Exponent::Int(k) if *k >= 0 => k.to_string(),
        Exponent::Int(k) => format!("({k})"),
        Exponent::Rat(r) => format!("({}/{})", r.numer(), r.denom()),
        Exponent::Linear { index, coeff, offset } => {
            let mut s = match *coeff {
                1 => index.clone(),
                -1 => format!("-{index}"),
                c => format!("{c}*{index}"),
            };
            if *offset > 0 {
                s += &format!("+{offset}");
            } else if *offset < 0 {
                s += &format!("{offset}");
            }
            if *coeff == 1 && *offset == 0 {
                s
            } else {
                format!("({s})")
            }
        }
    }
}
