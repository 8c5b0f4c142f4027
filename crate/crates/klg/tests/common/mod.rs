//! Brute-force oracles shared by the integration tests. Each one recomputes
//! a quantity from its definition without going through the library code
//! it is compared against.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use klg::kpoly::{grading_monomial, LaurentPolynomial};
use klg::pipedream::{trace, PipeDream};
use klg::polyring::{Coeff, PolyMatrix, Polynomial, VarRef};
use klg::symcell::Factorization;
use klg::weyl::{CnElement, Word};
use num_traits::One;

/// All permutations of `0..k` with their signs, by Heap's algorithm.
fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    let mut a: Vec<usize> = (0..k).collect();
    let mut out = vec![(a.clone(), 1)];
    let mut c = vec![0; k];
    let mut sign = 1;
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            sign = -sign;
            out.push((a.clone(), sign));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Determinant of a submatrix by the Leibniz formula.
pub fn leibniz(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Polynomial {
    let ring = m.ring();
    let mut total = Polynomial::zero(ring);
    for (perm, sign) in signed_permutations(rows.len()) {
        let mut term = Polynomial::from_int(ring, sign);
        for (k, &p) in perm.iter().enumerate() {
            term = &term * m.get(rows[k], cols[p]);
            if term.is_zero() {
                break;
            }
        }
        total = &total + &term;
    }
    total
}

/// Whether `c` is plus or minus a power of two.
pub fn is_signed_power_of_two(c: &Coeff) -> bool {
    if !c.denom().is_one() {
        return false;
    }
    let mut x = c.numer().magnitude().clone();
    let two = num_bigint::BigUint::from(2u32);
    while x > num_bigint::BigUint::one() && (&x % &two) == num_bigint::BigUint::from(0u32) {
        x /= &two;
    }
    x.is_one()
}

/// Product of the letters of a word taken one generator at a time.
pub fn product(letters: &[usize], n: usize) -> CnElement {
    letters.iter().fold(CnElement::identity(n), |acc, &k| {
        acc.compose(&CnElement::generator(k, n).unwrap()).unwrap()
    })
}

/// Facets of `S(q, pi)`: complements of position sets whose letters form a
/// reduced word for `pi`. Positions are 1-based.
pub fn brute_facets(q: &Word, pi: &CnElement) -> Vec<BTreeSet<usize>> {
    let n = pi.rank();
    let l = q.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << l) {
        if mask.count_ones() as usize != pi.length() {
            continue;
        }
        let letters: Vec<usize> = (0..l).filter(|b| mask & (1 << b) != 0).map(|b| q.letters()[b]).collect();
        if &product(&letters, n) == pi {
            out.push((0..l).filter(|b| mask & (1 << b) == 0).map(|b| b + 1).collect());
        }
    }
    out.sort();
    out
}

/// `u <= v` in Bruhat order by the subword property on one reduced word of
/// `v`.
pub fn brute_bruhat(u: &CnElement, v: &CnElement) -> bool {
    let word = v.reduced_word();
    let l = word.len();
    (0u32..(1 << l)).any(|mask| {
        let letters: Vec<usize> = (0..l).filter(|b| mask & (1 << b) != 0).map(|b| word.letters()[b]).collect();
        letters.len() == u.length() && &product(&letters, u.rank()) == u
    })
}

/// Minimal subsets of `vars` meeting every set in `gens`.
pub fn vertex_covers(vars: &[VarRef], gens: &[BTreeSet<VarRef>]) -> Vec<BTreeSet<VarRef>> {
    let mut covers: Vec<BTreeSet<VarRef>> = Vec::new();
    let mut all: Vec<BTreeSet<VarRef>> = (0u32..(1 << vars.len()))
        .map(|mask| (0..vars.len()).filter(|b| mask & (1 << b) != 0).map(|b| vars[b].clone()).collect())
        .collect();
    all.sort_by_key(|s: &BTreeSet<VarRef>| s.len());
    for s in all {
        let hits = gens.iter().all(|g| g.iter().any(|z| s.contains(z)));
        if hits && !covers.iter().any(|c| c.is_subset(&s)) {
            covers.push(s);
        }
    }
    covers.sort();
    covers
}

/// Reduced dreams for `w` with crosses inside the patch cells of `f`, found
/// by trying every symmetric cross set and following the pipes.
pub fn tiling_dreams(f: &Factorization, w: &CnElement) -> Vec<PipeDream> {
    let n = f.rank();
    let cells: Vec<(usize, usize)> = f
        .variables()
        .iter()
        .map(|z| match z {
            VarRef::Grid { i, j } => (*j, *i),
            VarRef::Named(_) => unreachable!(),
        })
        .collect();
    let target = CnElement::longest(n).length() - w.length();
    let mut out = Vec::new();
    for mask in 0u32..(1 << cells.len()) {
        if mask.count_ones() as usize != target {
            continue;
        }
        let chosen = (0..cells.len()).filter(|b| mask & (1 << b) != 0).map(|b| cells[b]);
        let p = PipeDream::from_lower(n, chosen).unwrap();
        if p.is_reduced() && &trace(&p).unwrap() == w {
            out.push(p);
        }
    }
    out.sort();
    out
}

/// Exponent vectors of total degree `degree` in `nvars` variables.
pub fn exponent_vectors(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return if degree == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=degree {
        for mut rest in exponent_vectors(nvars - 1, degree - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `Σ t^{deg m}` over the monomials of total degree `degree` in the patch
/// variables that no generator of `ideal` divides.
pub fn standard_monomial_sum(f: &Factorization, ideal: &[BTreeMap<VarRef, u32>], degree: u32) -> LaurentPolynomial {
    let n = f.rank();
    let vars = f.variables();
    let grades: Vec<Vec<i64>> = vars.iter().map(|z| grading_monomial(f, z).unwrap()).collect();
    let mut total = LaurentPolynomial::zero(n);
    for e in exponent_vectors(vars.len(), degree) {
        let divisible = ideal
            .iter()
            .any(|g| g.iter().all(|(z, &k)| e[vars.iter().position(|x| x == z).unwrap()] >= k));
        if divisible {
            continue;
        }
        let mut t = vec![0i64; n];
        for (k, &ek) in e.iter().enumerate() {
            for (slot, d) in grades[k].iter().enumerate() {
                t[slot] += d * ek as i64;
            }
        }
        total = &total + &LaurentPolynomial::monomial(t, Coeff::one());
    }
    total
}
