use binomv_core::lang::{builtin_registry, Expr};
use binomv_core::series::{sum_cvz, sum_direct, sum_euler, TailMode, TermGen, TermSpec, Tolerance};
use binomv_core::verify::compile_sum;
use binomv_core::{BallReal, QuadExt};

/// Registry sums by entry name.
fn registry_sums() -> Vec<(String, TermSpec)> {
    let mut out = Vec::new();
    for id in builtin_registry() {
        if id.name.ends_with("-orig") || id.name.ends_with("-digamma") {
            continue;
        }
        let mut found = None;
        id.lhs.visit(&mut |e| {
            if let Expr::Sum(i, b) = e {
                found = Some((i.clone(), (**b).clone()));
            }
        });
        let (i, b) = found.expect("lhs holds the sum");
        out.push((id.name.clone(), compile_sum(&b, &i, &id.params).unwrap().spec));
    }
    out
}

fn spec(name: &str) -> TermSpec {
    registry_sums().into_iter().find(|(n, _)| n == name).unwrap().1
}

/// Exact partial sums `S_1 … S_len`.
fn partial_sums(spec: &TermSpec, len: usize) -> Vec<QuadExt> {
    let mut acc = QuadExt::zero();
    TermGen::new(spec)
        .take(len)
        .map(|(_, a)| {
            acc = acc.add(&a).unwrap();
            acc.clone()
        })
        .collect()
}

fn exact_ball(q: &QuadExt) -> BallReal {
    BallReal::from_quad(q, 400)
}

/// First index after which `|a_n|` never increases within `len` terms.
fn onset(spec: &TermSpec, len: usize) -> usize {
    let terms: Vec<QuadExt> = TermGen::new(spec).take(len + 1).map(|(_, a)| a.abs()).collect();
    let mut first = 0;
    for k in 0..len {
        if terms[k + 1].cmp_value(&terms[k]).unwrap().is_gt() {
            first = k + 1;
        }
    }
    first
}

#[test]
fn alternating_sums_respect_partial_sum_brackets() {
    let tol = Tolerance::digits(30);
    for (name, s) in registry_sums() {
        if !s.is_effectively_alternating() {
            continue;
        }
        let r = binomv_core::series::sum_auto(&s, tol, 1_000_000).unwrap();
        let sums = partial_sums(&s, 202);
        for n in onset(&s, 201)..201 {
            let lo = exact_ball(&sums[n]);
            let hi = exact_ball(&sums[n + 1]);
            assert!(r.value.overlaps(&lo.hull(&hi)), "{name}: N = {}", n + 1);
        }
    }
}

#[test]
fn methods_agree_at_30_digits() {
    let tol = Tolerance::digits(30);
    for name in ["L1", "L3", "L4", "L6", "A40"] {
        let s = spec(name);
        let mut balls = vec![sum_cvz(&s, tol, 1_000_000).unwrap().value, sum_euler(&s, tol, 1_000_000).unwrap().value];
        // Direct summation is infeasible at the boundary of convergence.
        if s.rho() != QuadExt::one() {
            balls.push(sum_direct(&s, tol, 1_000_000).unwrap().value);
        } else {
            assert!(sum_direct(&s, tol, 1_000_000).is_err());
        }
        for a in &balls {
            assert!(a.rad_rational() <= binomv_core::Rational::new(1, num_bigint::BigInt::from(10).pow(30)).unwrap());
            for b in &balls {
                assert!(a.overlaps(b), "{name}");
            }
        }
    }
}

#[test]
fn geometric_tails_are_sound() {
    let tol = Tolerance::digits(50);
    let mut checked = 0;
    for (name, s) in registry_sums() {
        if s.rho() == QuadExt::one() {
            continue;
        }
        let r = sum_direct(&s, tol, 1_000_000).unwrap_or_else(|e| panic!("{name}: {e}"));
        if r.tail_mode != TailMode::Geometric {
            continue;
        }
        let n = r.terms_used as usize + 50;
        let sums = partial_sums(&s, n);
        let exact = exact_ball(&sums[n - 1]);
        let lo = exact.lower_rational();
        let hi = exact.upper_rational();
        assert!(r.value.lower_rational() <= lo && hi <= r.value.upper_rational(), "{name}");
        checked += 1;
    }
    assert!(checked >= 5, "{checked}");
}
