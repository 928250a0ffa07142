//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! The heavy corpus sweep runs once and is shared across criteria.

use num_integer::Integer;
use seifert_core::cellular::build_cell_complex;
use seifert_core::closedform::expected_dims;
use seifert_core::cup::ring_context;
use seifert_core::invariants::{derive, parse, Case};
use seifert_core::report::{corpus, verify_corpus, CorpusReport, RunOptions};
use seifert_core::simplicial::build_delta_complex;
use seifert_core::transfer::{build_t, BasisVariant, GeneratorLabel};
use seifert_core::words::{build_word, check_rotation_identity, Letter};
use std::sync::OnceLock;
use std::time::Instant;

struct Sweep {
    report: CorpusReport,
}

fn sweep() -> &'static Sweep {
    static SWEEP: OnceLock<Sweep> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let opts = RunOptions {
            variant: BasisVariant::Theorem,
            paranoid: true,
        };
        Sweep {
            report: verify_corpus(&[2, 3, 5], opts),
        }
    })
}

fn assert_check_passes(name: &str) -> usize {
    let s = sweep();
    let mut count = 0;
    for r in &s.report.reports {
        for c in r.checks.iter().filter(|c| c.name == name) {
            assert!(
                c.pass,
                "criterion check `{name}` failed for {} at p={}: {}",
                r.invariants,
                r.p,
                c.detail.as_deref().unwrap_or("")
            );
            count += 1;
        }
    }
    assert!(count > 0, "check `{name}` never ran");
    count
}

#[test]
fn criterion_1_word_calculus() {
    let start = Instant::now();
    let mut pairs = 0;
    for alpha in 1i64..=49 {
        for beta in 1i64..=(50 - alpha) {
            if alpha.gcd(&beta) != 1 {
                continue;
            }
            let w = build_word(alpha, beta).unwrap();
            assert_eq!(w.count(Letter::Q), alpha, "({alpha},{beta})");
            assert_eq!(w.count(Letter::H), beta, "({alpha},{beta})");
            assert_eq!(w.letter(1), Letter::Q);
            assert_eq!(w.letter(w.z), Letter::H);
            assert_eq!(alpha * w.u - beta * w.v, 1);
            assert!(0 < w.u && w.u <= beta && 0 <= w.v && w.v < alpha);
            assert!(
                check_rotation_identity(&w),
                "rotation identity fails for ({alpha},{beta})"
            );
            pairs += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "word sweep took {elapsed:?}");
    println!(
        "criterion 1 (word calculus, {pairs} coprime pairs, {} ms): PASS",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_2_chain_level_soundness() {
    let start = Instant::now();
    let fixtures = corpus();
    for inv in &fixtures {
        let cell = build_cell_complex(inv);
        let simp = build_delta_complex(inv);
        assert!(cell.d_squared_is_zero(), "{}", inv.to_grammar());
        assert!(simp.d_squared_is_zero(), "{}", inv.to_grammar());
        assert_eq!(simp.euler_characteristic(), 0, "{}", inv.to_grammar());
        build_t(inv, &cell, &simp).unwrap_or_else(|e| panic!("{e}"));
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "chain checks took {elapsed:?}"
    );
    println!(
        "criterion 2 (chain-level soundness, {} manifolds, {} ms): PASS",
        fixtures.len(),
        elapsed.as_millis()
    );
}

#[test]
fn criterion_3_group_reproduction() {
    let a = assert_check_passes("dims-cellular-match-closed-form");
    let b = assert_check_passes("dims-simplicial-match-closed-form");
    println!(
        "criterion 3 (group reproduction, {} dim comparisons): PASS",
        a + b
    );
}

#[test]
fn criterion_4_lift_validity() {
    let a = assert_check_passes("generator-basis-and-lifts");
    let b = assert_check_passes("lift-lemma-identities");
    println!(
        "criterion 4 (lift validity, {} fixture-prime runs): PASS",
        a.min(b)
    );
}

#[test]
fn criterion_5_ring_reproduction() {
    let n = assert_check_passes("ring-matches-closed-form");
    // where the published conventions differ, report which side brute force
    // agrees with instead of hard-failing
    let s = sweep();
    let mut rejected = 0;
    let mut mismatch = 0;
    let mut agree = 0;
    for r in &s.report.reports {
        for c in r
            .checks
            .iter()
            .filter(|c| c.name == "table-variant-arbitration")
        {
            match c.detail.as_deref() {
                Some(d) if d.contains("rejected") || d.contains("failed") => rejected += 1,
                Some(d) if d.contains("mismatch") => mismatch += 1,
                _ => agree += 1,
            }
        }
    }
    println!(
        "criterion 5 (ring reproduction, {n} rings; theorem convention matches everywhere; \
         table convention: {agree} agree, {rejected} rejected as basis, {mismatch} cells differ): PASS"
    );
}

#[test]
fn criterion_6_method_agreement() {
    let n = assert_check_passes("method-agreement");
    println!("criterion 6 (coefficient vs full Alexander-Whitney on {n} runs): PASS");
}

#[test]
fn criterion_7_desk_scale_anchors() {
    // the 3-torus: dims (1,3,3,1) and θ1∪θ2 = β ≠ 0 for every test prime
    let torus = parse("e=0;type=o1;g=1").unwrap();
    for p in [2u64, 3, 5, 7] {
        let d = derive(&torus, p).unwrap();
        assert_eq!(expected_dims(&torus, &d), [1, 3, 3, 1]);
        let ctx = ring_context(&torus, p, BasisVariant::Theorem).unwrap();
        assert_eq!(ctx.hcell.dims, [1, 3, 3, 1], "p={p}");
        let sc = ctx.assemble_ring(false).unwrap();
        let pr = sc
            .get(GeneratorLabel::Theta(1), GeneratorLabel::Theta(2))
            .unwrap();
        let beta_pos = sc
            .h2
            .iter()
            .position(|&l| l == GeneratorLabel::Beta)
            .unwrap();
        assert_eq!(pr.coords[beta_pos], 1, "θ1∪θ2 must be β at p={p}");
        assert!(pr.coords.iter().any(|&c| c != 0));
    }

    // Poincaré-sphere invariants: H¹ = H² = 0 at p = 7 (case 2 with g=0)
    // and at the corpus primes (case 3 with n = 1)
    let poincare = parse("e=-1;type=o1;g=0;fibers=(2,1),(3,1),(5,1)").unwrap();
    for p in [2u64, 3, 5, 7] {
        let d = derive(&poincare, p).unwrap();
        if p == 7 {
            assert_eq!(d.case, Case::Case2);
        } else {
            assert_eq!(d.case, Case::Case3);
            assert_eq!(d.n, 1);
        }
        let dims = expected_dims(&poincare, &d);
        assert_eq!(dims[1], 0, "p={p}");
        assert_eq!(dims[2], 0, "p={p}");
        let ctx = ring_context(&poincare, p, BasisVariant::Theorem).unwrap();
        assert_eq!(ctx.hcell.dims, dims, "p={p}");
    }
    println!("criterion 7 (3-torus and Poincaré-sphere anchors at p=2,3,5,7): PASS");
}

#[test]
fn criterion_8_full_corpus_runtime() {
    let s = sweep();
    assert_eq!(
        s.report.verdict, "PASS",
        "{} of {} failed",
        s.report.failed, s.report.total
    );
    assert!(
        s.report.elapsed_ms < 300_000,
        "corpus sweep took {} ms, budget is 5 minutes",
        s.report.elapsed_ms
    );
    println!(
        "criterion 8 (paranoid corpus sweep, {} runs in {} ms): PASS",
        s.report.total, s.report.elapsed_ms
    );
}
