//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test -p klg --test acceptance -- --nocapture` to see the report.

mod common;

use std::time::Instant;

use klg::fixtures::{run_all, run_fixture};
use klg::klideal::{all_pairs, decompose, sample_pairs, small_patch_elements, sweep, verify_main_theorem};
use klg::kpoly::{
    component_multidegree, hilbert_series_truncated, kpoly_pipedreams, kpoly_recursion, kpoly_shelling,
    kpoly_sr, multidegree, LaurentPolynomial,
};
use klg::pipedream::{enumerate_pd, trace, PipeDream};
use klg::polyring::{subsets, OrderKind};
use klg::subword::{delta, ComplexState};
use klg::symcell::Factorization;
use klg::weyl::{demazure_product, CnElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

struct Outcome {
    id: usize,
    title: &'static str,
    passed: bool,
    detail: String,
}

/// 123-pattern search straight from the definition.
fn has_123(line: &[usize]) -> bool {
    let m = line.len();
    (0..m).any(|a| (a + 1..m).any(|b| line[a] < line[b] && (b + 1..m).any(|c| line[b] < line[c])))
}

fn main_theorem_sweep(n: usize) -> (bool, String) {
    let expected_v = CnElement::all(n).into_iter().filter(|v| !has_123(v.one_line())).count();
    let pairs = all_pairs(n);
    let rows = sweep(&pairs, OrderKind::Lex, None).unwrap();
    let ok = rows.iter().all(|r| r.is_gb && r.matches_sr);
    let ok = ok && small_patch_elements(n).len() == expected_v;
    (ok, format!("{expected_v} patches x {} elements = {} pairs", CnElement::all(n).len(), rows.len()))
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let (passed, detail) = main_theorem_sweep(2);
    Outcome { id: 1, title: "Main theorem sweep, n=2", passed, detail: format!("{detail}, {:.2?}", t.elapsed()) }
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let (lex_ok, detail) = main_theorem_sweep(3);
    let mut same = 0;
    let pairs = all_pairs(3);
    for (v, w) in &pairs {
        let f = Factorization::new(v).unwrap();
        let a = verify_main_theorem(&f, w, OrderKind::Lex, None).unwrap();
        let b = verify_main_theorem(&f, w, OrderKind::GradedLex, None).unwrap();
        if b.is_gb && a.initial == b.initial {
            same += 1;
        }
    }
    let passed = lex_ok && same == pairs.len();
    Outcome {
        id: 2,
        title: "Main theorem sweep, n=3, lex and graded lex",
        passed,
        detail: format!("{detail}, {same} identical initial ideals, {:.2?}", t.elapsed()),
    }
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let pairs = sample_pairs(4, 60, 4);
    let rows = sweep(&pairs, OrderKind::Lex, None).unwrap();
    let good = rows.iter().filter(|r| r.is_gb && r.matches_sr).count();
    Outcome {
        id: 3,
        title: "n=4 sample",
        passed: pairs.len() >= 50 && good == pairs.len(),
        detail: format!("{good}/{} sampled pairs pass, {:.2?}", pairs.len(), t.elapsed()),
    }
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 1..=3 {
        for (v, w) in all_pairs(n) {
            let f = Factorization::new(&v).unwrap();
            let sr = kpoly_sr(&f, &w).unwrap();
            let same = kpoly_recursion(&v, &w).unwrap() == sr
                && kpoly_pipedreams(&f, &w).unwrap() == sr
                && kpoly_shelling(&f, &w).unwrap() == sr;
            checked += 1;
            if !same {
                bad.push(format!("{v},{w}"));
            }
        }
    }
    Outcome {
        id: 4,
        title: "Four-route K-polynomial equality",
        passed: bad.is_empty(),
        detail: format!("{checked} pairs, {} disagreements {:?}, {:.2?}", bad.len(), bad, t.elapsed()),
    }
}

fn criterion_5() -> Outcome {
    let fixtures = run_all().unwrap();
    let failed: Vec<String> = fixtures
        .iter()
        .filter(|f| !f.passed())
        .map(|f| format!("{}: expected [{}] got [{}]", f.name, f.expected, f.actual))
        .collect();
    Outcome {
        id: 5,
        title: "Example fixture suite",
        passed: failed.is_empty(),
        detail: format!("{}/{} fixtures match; {}", fixtures.len() - failed.len(), fixtures.len(), failed.join("; ")),
    }
}

fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    let mut passed = true;
    for name in ["paper-8-1", "paper-8-2"] {
        let t = Instant::now();
        let f = run_fixture(name).unwrap();
        let elapsed = t.elapsed();
        let index = if name.ends_with('1') { 1 } else { 2 };
        let (q, w, ranking) = klg::fixtures::bott_samelson_case(index).unwrap();
        let report = klg::klideal::bott_samelson_check(&q, &w, &ranking, None).unwrap();
        let pair = report
            .failing_polys()
            .map(|(a, b)| format!("S({a}, {b})"))
            .unwrap_or_else(|| "none".to_string());
        passed &= f.passed() && report.failing.is_some() && elapsed.as_secs() < 60;
        parts.push(format!("{name}: {} failing pair {pair}, {elapsed:.2?}", f.actual));
    }
    Outcome { id: 6, title: "Bott-Samelson counterexamples", passed, detail: parts.join("; ") }
}

fn criterion_7() -> Outcome {
    let mut notes = Vec::new();
    let mut passed = true;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut pool = Vec::new();
    for n in 2..=4 {
        pool.extend(small_patch_elements(n));
    }
    let mut power_ok = true;
    for _ in 0..200 {
        let v = &pool[rng.gen_range(0..pool.len())];
        let f = Factorization::new(v).unwrap();
        let m = f.generic_matrix().to_poly_matrix(&f.ring(OrderKind::Lex)).unwrap();
        let all: Vec<usize> = (1..=2 * v.rank()).collect();
        let k = rng.gen_range(1..=all.len().min(5));
        let rows = subsets(&all, k);
        let cols = subsets(&all, k);
        let r = &rows[rng.gen_range(0..rows.len())];
        let c = &cols[rng.gen_range(0..cols.len())];
        let minor = m.minor(r, c).unwrap();
        power_ok &= minor == leibniz(&m, r, c) && minor.terms().values().all(is_signed_power_of_two);
    }
    passed &= power_ok;
    notes.push(format!("powers of two {}", if power_ok { "ok" } else { "broken" }));

    let mut commute_ok = true;
    for n in 2..=3 {
        let w0 = CnElement::longest(n);
        let cells: Vec<(usize, usize)> = (1..=n).flat_map(|c| (c..=n).map(move |r| (r, c))).collect();
        for mask in 0u32..(1 << cells.len()) {
            let p = PipeDream::from_lower(n, (0..cells.len()).filter(|b| mask & (1 << b) != 0).map(|b| cells[b]))
                .unwrap();
            let dem = demazure_product(&CnElement::identity(n), p.word().letters());
            commute_ok &= trace(&p).unwrap() == w0.compose(&dem).unwrap();
        }
    }
    passed &= commute_ok;
    notes.push(format!("commutation {}", if commute_ok { "ok" } else { "broken" }));

    let mut complex_ok = true;
    let mut additive_ok = true;
    for n in 2..=3 {
        let w0 = CnElement::longest(n);
        for (v, w) in all_pairs(n) {
            let f = Factorization::new(&v).unwrap();
            let d = delta(&f, &w).unwrap();
            let dreams = enumerate_pd(&f, &w).unwrap().facet_dreams;
            if d.state() != ComplexState::Void {
                let dim = w0.compose(&v).unwrap().length() as isize - w0.compose(&w).unwrap().length() as isize - 1;
                complex_ok &= d.is_pure() && d.dimension() == Some(dim) && d.facets().len() == dreams.len();
            }
            complex_ok &= dreams == tiling_dreams(&f, &w);
            let report = verify_main_theorem(&f, &w, OrderKind::Lex, None).unwrap();
            let mut sum = LaurentPolynomial::zero(n);
            for component in decompose(&report.initial).unwrap() {
                sum = &sum + &component_multidegree(&f, &component).unwrap();
            }
            additive_ok &= multidegree(&f, &w).unwrap() == sum;
        }
    }
    passed &= complex_ok && additive_ok;
    notes.push(format!("purity and dream bijection {}", if complex_ok { "ok" } else { "broken" }));
    notes.push(format!("multidegree additivity {}", if additive_ok { "ok" } else { "broken" }));

    let mut hilbert_ok = true;
    for (v, w) in sample_pairs(3, 10, 2024) {
        let f = Factorization::new(&v).unwrap();
        let report = verify_main_theorem(&f, &w, OrderKind::Lex, None).unwrap();
        let series = hilbert_series_truncated(&f, &w, 6).unwrap();
        for (k, slice) in series.iter().enumerate() {
            hilbert_ok &= slice == &standard_monomial_sum(&f, report.initial.generators(), k as u32);
        }
    }
    passed &= hilbert_ok;
    notes.push(format!("Hilbert series through degree 6 {}", if hilbert_ok { "ok" } else { "broken" }));

    Outcome { id: 7, title: "Property suites", passed, detail: notes.join(", ") }
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    let mut passed = true;
    for n in 1..=3 {
        let square = Factorization::new(&CnElement::square(n)).unwrap().generic_matrix();
        for v in small_patch_elements(n) {
            for f in Factorization::all(&v).unwrap() {
                let vars = f.variables();
                let moved = f.generic_matrix().permute(f.u_l().inverse().perm(), f.u_r().inverse().perm());
                passed &= moved == square.restrict(|z| vars.contains(z));
                checked += 1;
            }
        }
    }
    Outcome { id: 8, title: "Transport to the square patch", passed, detail: format!("{checked} factorizations") }
}

#[test]
fn acceptance() {
    let outcomes = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
    ];
    for o in &outcomes {
        println!("{} {}. {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.id, o.title, o.detail);
    }

    // The fixture suite stores the weight of z33 for 642531 with the wrong
    // sign. That criterion stays red, and nothing else may fail.
    let weights = run_fixture("weights-642531").unwrap();
    assert_eq!(weights.expected, "-e_1+e_2, -2e_2");
    assert_eq!(weights.actual, "-e_1+e_2, 2e_2");
    assert!(weights.known_discrepancy.is_some());
    let other_failures: Vec<&str> =
        run_all().unwrap().iter().filter(|f| !f.passed() && f.name != "weights-642531").map(|f| f.name).collect();
    assert!(other_failures.is_empty(), "{other_failures:?}");
    for o in &outcomes {
        if o.id != 5 {
            assert!(o.passed, "criterion {} failed: {}", o.id, o.detail);
        }
    }
}
