mod common;

use klg::klideal::{all_pairs, decompose, sample_pairs, verify_main_theorem};
use klg::kpoly::{
    component_multidegree, hilbert_series_truncated, kpoly_pipedreams, kpoly_recursion, kpoly_shelling,
    kpoly_sr, multidegree, multidegree_from_kpoly, LaurentPolynomial,
};
use klg::pipedream::{enumerate_pd, pipe_dream_complex, trace, PipeDream};
use klg::polyring::OrderKind;
use klg::subword::{delta, vertex_decomposition_check, ComplexState};
use klg::symcell::Factorization;
use klg::weyl::{demazure_product, CnElement};

use common::*;

#[test]
fn complexes_are_pure() {
    for n in 2..=3 {
        let w0 = CnElement::longest(n);
        for (v, w) in all_pairs(n) {
            let f = Factorization::new(&v).unwrap();
            let d = delta(&f, &w).unwrap();
            if d.state() == ComplexState::Void {
                continue;
            }
            assert!(d.is_pure(), "{v} {w}");
            let expected = w0.compose(&v).unwrap().length() as isize - w0.compose(&w).unwrap().length() as isize - 1;
            assert_eq!(d.dimension(), Some(expected), "{v} {w}");
        }
    }
}

/// Facets of the subword complex, dreams found through it, and dreams found
/// by following pipes all agree.
#[test]
fn facets_biject_with_pipe_dreams() {
    for n in 2..=3 {
        for (v, w) in all_pairs(n) {
            let f = Factorization::new(&v).unwrap();
            let dreams = enumerate_pd(&f, &w).unwrap().facet_dreams;
            assert_eq!(dreams, tiling_dreams(&f, &w), "{v} {w}");
            let d = delta(&f, &w).unwrap();
            let facets = if d.state() == ComplexState::Void { 0 } else { d.facets().len() };
            assert_eq!(dreams.len(), facets, "{v} {w}");
            let complex = pipe_dream_complex(&f, &w).unwrap();
            assert_eq!(complex.facets().len(), dreams.len());
        }
    }
}

/// Following pipes and ignoring repeat crossings reads the same element as
/// the Demazure product of the dream's word.
#[test]
fn pipes_commute_with_demazure_products() {
    for n in 2..=4 {
        let w0 = CnElement::longest(n);
        let cells: Vec<(usize, usize)> = (1..=n).flat_map(|c| (c..=n).map(move |r| (r, c))).collect();
        for mask in 0u32..(1 << cells.len()) {
            let chosen = (0..cells.len()).filter(|b| mask & (1 << b) != 0).map(|b| cells[b]);
            let p = PipeDream::from_lower(n, chosen).unwrap();
            let dem = demazure_product(&CnElement::identity(n), p.word().letters());
            assert_eq!(trace(&p).unwrap(), w0.compose(&dem).unwrap(), "{:?}", p.crosses());
        }
    }
}

#[test]
fn four_routes_agree() {
    for n in 2..=3 {
        for (v, w) in all_pairs(n) {
            let f = Factorization::new(&v).unwrap();
            let sr = kpoly_sr(&f, &w).unwrap();
            assert_eq!(kpoly_recursion(&v, &w).unwrap(), sr, "recursion {v} {w}");
            assert_eq!(kpoly_pipedreams(&f, &w).unwrap(), sr, "dreams {v} {w}");
            assert_eq!(kpoly_shelling(&f, &w).unwrap(), sr, "shelling {v} {w}");
            assert!(vertex_decomposition_check(&f, &w).unwrap(), "{v} {w}");
        }
    }
}

/// The multidegree is the sum over the minimal primes of the initial ideal
/// of their degrees, and the lowest part of `K(1 - t)`.
#[test]
fn multidegrees_are_additive() {
    for n in 2..=3 {
        let w0 = CnElement::longest(n);
        for (v, w) in all_pairs(n) {
            let f = Factorization::new(&v).unwrap();
            let report = verify_main_theorem(&f, &w, OrderKind::Lex, None).unwrap();
            let mut sum = LaurentPolynomial::zero(n);
            for component in decompose(&report.initial).unwrap() {
                sum = &sum + &component_multidegree(&f, &component).unwrap();
            }
            let md = multidegree(&f, &w).unwrap();
            assert_eq!(md, sum, "{v} {w}");
            let codim = w0.length() - w.length();
            assert_eq!(multidegree_from_kpoly(&kpoly_sr(&f, &w).unwrap(), codim), md, "{v} {w}");
        }
    }
}

#[test]
fn hilbert_series_counts_standard_monomials() {
    for (v, w) in sample_pairs(3, 10, 2024) {
        let f = Factorization::new(&v).unwrap();
        let report = verify_main_theorem(&f, &w, OrderKind::Lex, None).unwrap();
        let series = hilbert_series_truncated(&f, &w, 6).unwrap();
        for (k, slice) in series.iter().enumerate() {
            let expected = standard_monomial_sum(&f, report.initial.generators(), k as u32);
            assert_eq!(slice, &expected, "{v} {w} degree {k}");
        }
    }
}
