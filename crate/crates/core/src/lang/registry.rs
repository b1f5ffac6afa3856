use alloc::vec::Vec;

use super::ast::Identity;
use super::parser::parse_identities;

/// Source text of the builtin registry.
pub const REGISTRY_SOURCE: &str = r#"# Builtin identities.

identity "L1" {
  lhs = sum(n=1..inf, (-1)^(n+1)*cbinom(n)/(n*4^n));
  rhs = 2*ln((sqrt(2)+1)/2);
  expect = confirmed;
  note = "Alternating series at the boundary of convergence.";
}

identity "L1-orig" {
  lhs = sum(n=1..inf, (-1)^(n+1)*cbinom(n)/(n*4^n));
  rhs = ln((sqrt(2)+1)/2);
  expect = refuted;
  note = "Closed form missing the factor 2.";
}

identity "L2[x=1/4]" {
  lhs = x*sum(n=1..inf, cbinom(n)/(n*(n+1))*x^n);
  rhs = 2*x*ln((1-sqrt(1-4*x))/x)+sqrt(1-4*x)/2-x*(ln(4)-1)-1/2;
  param x = 1/4;
  expect = confirmed;
  note = "Endpoint of the disc of convergence; terms decay like n^(-5/2).";
}

identity "L2[x=1/8]" {
  lhs = x*sum(n=1..inf, cbinom(n)/(n*(n+1))*x^n);
  rhs = 2*x*ln((1-sqrt(1-4*x))/x)+sqrt(1-4*x)/2-x*(ln(4)-1)-1/2;
  param x = 1/8;
  expect = confirmed;
  note = "Interior point, geometric ratio 1/2. No faulty counterpart: the pre-correction sign placement is ambiguous.";
}

identity "L2[x=-1/8]" {
  lhs = x*sum(n=1..inf, cbinom(n)/(n*(n+1))*x^n);
  rhs = 2*x*ln((1-sqrt(1-4*x))/x)+sqrt(1-4*x)/2-x*(ln(4)-1)-1/2;
  param x = -1/8;
  expect = confirmed;
  note = "Negative argument, alternating terms.";
}

identity "L3" {
  lhs = sum(m=1..inf, (-1)^(m-1)/(m*cbinom(m)));
  rhs = 2*ln((1+sqrt(5))/2)/sqrt(5);
  expect = confirmed;
}

identity "L4" {
  lhs = sum(m=1..inf, (-1)^(m-1)/(m^2*cbinom(m)));
  rhs = 2*(ln((sqrt(5)+1)/2))^2;
  expect = confirmed;
}

identity "L4-orig" {
  lhs = sum(m=1..inf, (-1)^(m-1)/(m^2*cbinom(m)));
  rhs = -2*(ln((sqrt(5)+1)/2))^2;
  expect = refuted;
  note = "Wrong overall sign.";
}

identity "L5" {
  lhs = sum(m=1..inf, 1/(m^3*cbinom(m)));
  rhs = -4*zeta3/3+pi*sqrt(3)/18*(trigamma(1/3)-trigamma(2/3));
  expect = confirmed;
  note = "Trigamma difference taken as psi'(1/3)-psi'(2/3).";
}

identity "L5-orig" {
  lhs = sum(m=1..inf, 1/(m^3*cbinom(m)));
  rhs = (-4*zeta3/3+pi*sqrt(3)/18*(trigamma(1/3)-trigamma(2/3)))/4;
  expect = refuted;
  note = "A quarter of the correct value.";
}

identity "L5-digamma" {
  lhs = sum(m=1..inf, 1/(m^3*cbinom(m)));
  rhs = -4*zeta3/3-pi*sqrt(3)/18*(-pi/sqrt(3));
  expect = refuted;
  note = "Digamma difference psi(1/3)-psi(2/3) = -pi/sqrt(3) in place of the trigamma difference.";
}

identity "L6" {
  lhs = sum(m=1..inf, (-1)^m*m^3/cbinom(m));
  rhs = 2/625*(14*sigma+5);
  expect = confirmed;
  note = "sigma = sqrt(5)*ln((1+sqrt(5))/2), provisional; re-derived from this series by the acceptance suite.";
}

identity "L6-orig" {
  lhs = sum(m=1..inf, (-1)^m*m^3/cbinom(m));
  rhs = -4/625*(14*sigma+5);
  expect = refuted;
  note = "Wrong sign and factor 2.";
}

identity "L7" {
  lhs = sum(m=1..inf, 2^m*(2-sqrt(3))^m/(m^2*cbinom(m)));
  rhs = 2*(arcsin(tau))^2;
  param tau = (sqrt(3)-1)/2;
  expect = confirmed;
}

identity "L7-orig" {
  lhs = sum(m=1..inf, 2^m*(2-sqrt(3))^m/(m^2*cbinom(m)));
  rhs = pi^2/36;
  expect = refuted;
  note = "Equals arcsin(1/2)^2.";
}

identity "A40" {
  lhs = sum(n=1..inf, (-1)^(n-1)*n^2/cbinom(n));
  rhs = 4/125*(5-sqrt(5)*ln((sqrt(5)+1)/2));
  expect = confirmed;
}

identity "A40-orig" {
  lhs = sum(n=1..inf, (-1)^(n-1)*n/cbinom(n));
  rhs = 4/125*(5-sqrt(5)*ln((sqrt(5)+1)/2));
  expect = refuted;
  note = "Series with n in place of n^2.";
}

identity "A42" {
  lhs = sum(n=1..inf, (-1)^(n-1)/(n*cbinom(n)));
  rhs = 2/sqrt(5)*ln((1+sqrt(5))/2);
  expect = confirmed;
  note = "No faulty counterpart: the replaced numbers are not recoverable.";
}

identity "A47" {
  lhs = sum(n=1..inf, 1/(n^3*cbinom(n)));
  rhs = 4*(pi*sqrt(3)/72*(trigamma(1/3)-trigamma(2/3))-zeta3/3);
  expect = confirmed;
}

identity "A47-orig" {
  lhs = sum(n=1..inf, 1/(n^3*cbinom(n)));
  rhs = pi*sqrt(3)/72*(trigamma(1/3)-trigamma(2/3))-zeta3/3;
  expect = refuted;
  note = "Missing the factor 4.";
}

identity "A81" {
  lhs = sum(n=1..inf, 2^n*(2-sqrt(3))^n/(n^2*cbinom(n)));
  rhs = 2*arcsin((sqrt(3)-1)/2)^2;
  expect = confirmed;
}
"#;

/// Parses [`REGISTRY_SOURCE`].
pub fn builtin_registry() -> Vec<Identity> {
    parse_identities(REGISTRY_SOURCE).expect("builtin registry parses")
}
