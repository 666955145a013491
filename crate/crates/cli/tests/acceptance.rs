//! Acceptance criteria, one line each. Exact equality throughout; each
//! criterion also has a wall-clock budget.

mod common;

use std::time::{Duration, Instant};

use dortho_core::{
    case1_coeffs, case2_coeffs, check_d_orthogonality, classify_solvability, corollary42_coeffs,
    corollary42_operator, derivative_sequence, derive_recurrence, generate, q, structure_coeffs,
    verify_expansions, Case1Params, Case2Params, DiffOperatorQ, Error, PolyQ, Rational,
    RecurrenceTableQ, ShapeViolation, Solvability, Status, ThirdOrderParams,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<(), String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=8).prop_map(|(n, d)| q(n, d))
}

fn poly(max_degree: usize) -> impl Strategy<Value = PolyQ> {
    prop::collection::vec(rational(), 0..=max_degree + 1).prop_map(PolyQ::from_coeffs)
}

fn operator(order: usize) -> impl Strategy<Value = DiffOperatorQ> {
    (0..=order)
        .map(|nu| prop::collection::vec(rational(), nu + 1).prop_map(PolyQ::from_coeffs))
        .collect::<Vec<_>>()
        .prop_map(|coeffs| DiffOperatorQ::new(coeffs).expect("degrees bounded by construction"))
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        proptest::test_runner::TestRng::deterministic_rng(
            proptest::test_runner::RngAlgorithm::ChaCha,
        ),
    )
}

fn c1_operator_calculus() -> Outcome {
    let count = std::cell::Cell::new(0u32);
    runner(120)
        .run(&(operator(3), poly(10), poly(10)), |(j, p, g)| {
            let s = |m: usize| j.shifted(m).apply(&p);
            let x = PolyQ::monomial(q(1, 1), 1);
            let x2 = PolyQ::monomial(q(1, 1), 2);
            let x3 = PolyQ::monomial(q(1, 1), 3);
            prop_assert_eq!(j.apply(&(&p * &g)), j.leibniz_expand(&p, &g));
            prop_assert_eq!(j.apply(&(&x * &p)), &x * &s(0) + s(1));
            prop_assert_eq!(
                j.apply(&(&x2 * &p)),
                &x2 * &s(0) + (&x * &s(1)).scale(&q(2, 1)) + s(2)
            );
            prop_assert_eq!(
                j.apply(&(&x3 * &p)),
                &x3 * &s(0) + (&x2 * &s(1)).scale(&q(3, 1)) + (&x * &s(2)).scale(&q(3, 1)) + s(3)
            );
            for i in 0..=3 {
                prop_assert_eq!(
                    j.shifted(i).apply(&(&x * &p)),
                    j.shifted(i + 1).apply(&p) + &x * &j.shifted(i).apply(&p)
                );
            }
            count.set(count.get() + 1);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    ensure(count.get() >= 100, || {
        format!("only {} cases ran", count.get())
    })
}

fn c2_recovery() -> Outcome {
    let count = std::cell::Cell::new(0u32);
    runner(60)
        .run(&(0usize..=6).prop_flat_map(operator), |j| {
            let k = j.order();
            let images: Vec<PolyQ> = (0..=k).map(|n| j.apply_monomial(n)).collect();
            let back = DiffOperatorQ::from_action(&images).unwrap();
            prop_assert_eq!(back.coeffs(), j.coeffs());
            count.set(count.get() + 1);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    ensure(count.get() >= 50, || {
        format!("only {} cases ran", count.get())
    })
}

fn case1() -> Case1Params<Rational> {
    Case1Params::new(q(1, 1), q(0, 1), q(1, 1), q(-2, 1), q(-6, 1)).unwrap()
}

fn c3_case1() -> Outcome {
    let j = case1().operator();
    let (rt, report) = derive_recurrence(&j, 25).map_err(|e| e.to_string())?;
    ensure(report.passed(), || "eigen identity failed in oracle".into())?;
    for n in 0..=25i64 {
        ensure(rt.beta(n).unwrap() == q(0, 1), || format!("beta_{n}"))?;
        ensure(rt.alpha(n + 1).unwrap() == q(n + 1, 1), || {
            format!("alpha_{}", n + 1)
        })?;
        if n < 25 {
            ensure(rt.gamma(n + 1).unwrap() == q((n + 1) * (n + 2), 1), || {
                format!("gamma_{}", n + 1)
            })?;
        }
    }
    let seq = generate(&case1_coeffs(&case1(), 26), 25).map_err(|e| e.to_string())?;
    for (n, p) in seq.polys().iter().enumerate() {
        ensure(j.apply(p) == p.scale(&q(n as i64 + 1, 1)), || {
            format!("J(P_{n}) != (n+1) P_{n}")
        })?;
    }
    Ok(())
}

/// Test-side closed forms of the corollary family.
fn corollary_beta(n: i64) -> Rational {
    q(-12 * (n - 1) * n, 1)
}
fn corollary_alpha(n: i64) -> Rational {
    q(12 * (n - 1) * n * (2 * n - 3) * (2 * n - 3), 1)
}
fn corollary_gamma(n: i64) -> Rational {
    let (a, b) = (2 * n - 3, 2 * n - 1);
    q(-4 * n * (n + 1), 1) * q(a * a * b * b, 1)
}

fn c4_corollary() -> Outcome {
    let spots = [(1, -8), (2, -216), (3, -10800)];
    for (n, g) in spots {
        ensure(corollary_gamma(n) == q(g, 1), || format!("spot gamma_{n}"))?;
    }
    let table: RecurrenceTableQ =
        RecurrenceTableQ::from_generators(27, corollary_beta, corollary_alpha, corollary_gamma);
    let seq = generate(&table, 25).map_err(|e| e.to_string())?;
    for a00 in [q(1, 1), q(-7, 3)] {
        // ((1/6)(x−1)² D³ + (1/24) x D + a00 I) built by hand
        let sixth = q(1, 6);
        let x_minus_1_sq = PolyQ::from_i64s(&[1, -2, 1]);
        let x24 = PolyQ::from_coeffs(vec![q(0, 1), q(1, 24)]);
        for (n, p) in seq.polys().iter().enumerate() {
            let lhs = (&x_minus_1_sq * &p.derivative(3)).scale(&sixth)
                + &x24 * &p.derivative(1)
                + p.scale(&a00);
            let lambda = q(n as i64, 24) + a00.clone();
            ensure(lhs == p.scale(&lambda), || {
                format!("eigen relation at n = {n}, a00 = {a00}")
            })?;
        }
        let (rt, _) =
            derive_recurrence(&corollary42_operator(a00.clone()), 25).map_err(|e| e.to_string())?;
        for n in 0..=25i64 {
            ensure(rt.beta(n).unwrap() == corollary_beta(n), || {
                format!("oracle beta_{n}")
            })?;
            if n >= 1 {
                ensure(rt.alpha(n).unwrap() == corollary_alpha(n), || {
                    format!("oracle alpha_{n}")
                })?;
                ensure(rt.gamma(n).unwrap() == corollary_gamma(n), || {
                    format!("oracle gamma_{n}")
                })?;
            }
        }
    }
    ensure(corollary42_coeffs::<Rational>(27) == table, || {
        "library table differs".into()
    })
}

fn c5_specialization() -> Outcome {
    let p = Case2Params::new(q(1, 1), q(0, 1), q(1, 24), q(1, 1), q(-2, 1), q(1, 1))
        .map_err(|e| e.to_string())?;
    ensure(p.b == [q(252, 1), q(192, 1), q(48, 1)], || {
        format!("b = {:?}", p.b)
    })?;
    ensure(
        p.f == [q(60, 1), q(96, 1), q(-96, 1), q(-192, 1), q(-64, 1)],
        || format!("f = {:?}", p.f),
    )?;
    let general = case2_coeffs(&p, 25);
    let special = corollary42_coeffs(25);
    ensure(general == special, || {
        format!("first mismatch {:?}", general.first_mismatch(&special, 25))
    })
}

fn c6_expansions() -> Outcome {
    let cases: Vec<(&str, DiffOperatorQ, RecurrenceTableQ)> = vec![
        ("case1", case1().operator(), case1_coeffs(&case1(), 25)),
        (
            "corollary",
            corollary42_operator(q(1, 1)),
            corollary42_coeffs(25),
        ),
    ];
    for (name, j, rt) in cases {
        let report = verify_expansions(&j, &rt, 15).map_err(|e| e.to_string())?;
        ensure(report.passed(), || {
            format!("{name}: {:?}", report.first_failure())
        })?;
        for id in ["J1", "J2", "J3", "J3-leading"] {
            ensure(report.count(id) == 16, || {
                format!("{name}: {id} ran {} times", report.count(id))
            })?;
        }
        ensure(report.count("J3-initial") == 2, || {
            format!("{name}: initial conditions")
        })?;
    }
    Ok(())
}

fn c7_appell_hahn() -> Outcome {
    let seq = generate(&case1_coeffs(&case1(), 22), 21).map_err(|e| e.to_string())?;
    for n in 0..=20usize {
        let lhs = seq.polys()[n + 1].derivative(1);
        ensure(lhs == seq.polys()[n].scale(&q(n as i64 + 1, 1)), || {
            format!("Appell at n = {n}")
        })?;
    }
    let seq = generate(&corollary42_coeffs::<Rational>(30), 30).map_err(|e| e.to_string())?;
    let derived = derivative_sequence(&seq).map_err(|e| e.to_string())?;
    let report = check_d_orthogonality(&derived, 2, 6).map_err(|e| e.to_string())?;
    ensure(report.passed(), || {
        format!("Hahn: {:?}", report.first_failure())
    })?;
    let rt = structure_coeffs(&derived)
        .to_recurrence(2)
        .map_err(|e| e.to_string())?;
    ensure(rt.is_regular(), || {
        format!("derived gamma vanishes at {:?}", rt.first_vanishing_gamma())
    })
}

fn c8_duals() -> Outcome {
    let rt = corollary42_coeffs(30);
    let seq = generate(&rt, 30).map_err(|e| e.to_string())?;
    let report = check_d_orthogonality(&seq, 2, 8).map_err(|e| e.to_string())?;
    ensure(report.passed(), || format!("{:?}", report.first_failure()))?;
    let probed_nu: std::collections::BTreeSet<_> =
        report.records.iter().filter_map(|r| r.nu).collect();
    ensure(probed_nu.into_iter().collect::<Vec<_>>() == [0, 1], || {
        "nu range".into()
    })?;

    // ⟨u_ν, P_m P_{2m+ν}⟩ = γ_{ν+1} γ_{ν+3} … γ_{ν+2m−1}; zeroing γ_3 first hits (m, ν) = (2, 0)
    let mutated = rt
        .with_gamma_sup(0, 3, q(0, 1))
        .map_err(|e| e.to_string())?;
    let seq = generate(&mutated, 30).map_err(|e| e.to_string())?;
    let report = check_d_orthogonality(&seq, 2, 8).map_err(|e| e.to_string())?;
    let first = report.first_failure().ok_or("mutated table passed")?;
    ensure(
        (first.identity.as_str(), first.m, first.nu, first.n)
            == ("regularity", Some(2), Some(0), 4),
        || format!("first failure {first:?}"),
    )?;
    for r in &report.records {
        let predicted_fail =
            r.identity == "regularity" && (0..r.m.unwrap()).any(|j| r.nu.unwrap() + 1 + 2 * j == 3);
        ensure((r.status == Status::Fail) == predicted_fail, || {
            format!("unexpected {r:?}")
        })?;
    }
    Ok(())
}

fn c9_negative_classification() -> Outcome {
    // a_2 = 0, a_3 = 1 + x
    let j = DiffOperatorQ::new(vec![
        PolyQ::from_i64s(&[1]),
        PolyQ::from_i64s(&[0, 1]),
        PolyQ::zero(),
        PolyQ::from_i64s(&[1, 1]),
    ])
    .map_err(|e| e.to_string())?;
    match derive_recurrence(&j, 10) {
        Err(Error::NotTwoOrthogonal(ShapeViolation::ExtraTerm { .. })) => {}
        other => return Err(format!("derive_recurrence gave {other:?}")),
    }
    let params = ThirdOrderParams::from_operator(&j).ok_or("order exceeds 3")?;
    let verdict = classify_solvability(&params).verdict;
    ensure(verdict == Solvability::NoSolution, || {
        format!("solvability {verdict:?}")
    })
}

fn c10_cli() -> Outcome {
    for case in common::GOLDEN_CASES {
        common::check_golden(case)?;
    }
    let code = |args: &[&str]| common::dortho(args).status.code();
    ensure(
        code(&["verify", "--family", "corollary42", "-N", "5", "-M", "2"]) == Some(0),
        || "pass".into(),
    )?;
    ensure(
        code(&["duals", "--table", "gamma3_zero_table.json"]) == Some(1),
        || "fail".into(),
    )?;
    ensure(
        code(&["verify", "--operator", "linear_a3_operator.json"]) == Some(1),
        || "derive".into(),
    )?;
    ensure(
        code(&["eigen", "--operator", "malformed.json", "-N", "1"]) == Some(2),
        || "parse".into(),
    )?;
    ensure(
        code(&["classify", "--operator", "bad_degree_operator.json"]) == Some(2),
        || "degree".into(),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "operator-calculus identities on random (J, p)",
            5,
            c1_operator_calculus,
        ),
        ("operator recovery from monomial images", 2, c2_recovery),
        ("case-1 family reproduced by the eigen-oracle", 10, c3_case1),
        (
            "corollary family: eigen relation and oracle tables",
            10,
            c4_corollary,
        ),
        (
            "case-2 tables specialize to the corollary",
            2,
            c5_specialization,
        ),
        (
            "J^(1), J^(2), J^(3) expansions for both families",
            10,
            c6_expansions,
        ),
        ("Appell and Hahn properties", 10, c7_appell_hahn),
        ("d-orthogonality via duals, mutated table", 10, c8_duals),
        (
            "a_2 = 0, deg a_3 = 1 has no 2-orthogonal family",
            2,
            c9_negative_classification,
        ),
        ("CLI golden files and exit codes", 5, c10_cli),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed <= Duration::from_secs(*budget), || {
                format!("took {elapsed:.2?}, budget {budget} s")
            })
        });
        match result {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({elapsed:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!(
                    "criterion {:>2}: FAIL  {name} ({elapsed:.2?}): {msg}",
                    i + 1
                );
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
