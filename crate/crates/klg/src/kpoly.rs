//! Multigraded K-polynomials and multidegrees of `R_v̄ / I_{v̄,w}`.
//!
//! The variable `z_ij` has K-theoretic grading monomial `t^{-(u_l e_i + u_l e_j)}`,
//! the inverse of its torus weight. K-polynomials are computed four ways
//! (Stanley–Reisner face sum, ascent/descent recursion, signed sum over
//! interior pipe dreams, and a shelling sum), which the tests compare.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{KlgError, Result};
use crate::klideal::MonomialIdeal;
use crate::pipedream::enumerate_pd;
use crate::polyring::{Coeff, VarRef};
use crate::subword::{self, ComplexState, SimplicialComplex};
use crate::symcell::Factorization;
use crate::weyl::{bruhat_leq, CnElement, Coxeter};

/// Laurent polynomial in `nvars` variables with exact coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Coeff>,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], Coeff::one())
    }

    pub fn monomial(exps: Vec<i64>, coeff: Coeff) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        LaurentPolynomial { nvars, terms }
    }

    /// `t_index` (1-based) to the given power.
    pub fn var(nvars: usize, index: usize, power: i64) -> Self {
        let mut exps = vec![0; nvars];
        exps[index - 1] = power;
        Self::monomial(exps, Coeff::one())
    }

    /// `1 - t^exps`.
    pub fn one_minus(exps: &[i64]) -> Self {
        &Self::one(exps.len()) - &Self::monomial(exps.to_vec(), Coeff::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Coeff> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[i64]) -> Coeff {
        self.terms.get(exps).cloned().unwrap_or_else(Coeff::zero)
    }

    fn add_term(&mut self, exps: Vec<i64>, c: Coeff) {
        let entry = self.terms.entry(exps).or_insert_with(Coeff::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Product, dropping terms whose exponent at `slot` exceeds `bound`.
    pub fn mul_truncated(&self, other: &Self, slot: usize, bound: i64) -> Self {
        let mut out = Self::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a[slot] + b[slot] > bound {
                    continue;
                }
                let e: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Terms whose total degree is `degree`.
    pub fn homogeneous_part(&self, degree: i64) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<i64>() == degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    /// Terms with `s`-exponent `k` at `slot`, with that slot removed.
    pub fn slice(&self, slot: usize, k: i64) -> Self {
        let mut out = Self::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            if e[slot] == k {
                let mut f = e.clone();
                f.remove(slot);
                out.add_term(f, c.clone());
            }
        }
        out
    }

    /// Substitutes `t_i -> 1 - t_i` and keeps total degree `<= max_degree`.
    /// Negative powers expand as geometric series.
    pub fn substitute_one_minus(&self, max_degree: usize) -> Self {
        let n = self.nvars;
        let mut out = Self::zero(n);
        for (e, c) in &self.terms {
            let mut acc = Self::monomial(vec![0; n], c.clone());
            for (i, &a) in e.iter().enumerate() {
                let series = one_minus_power(n, i, a, max_degree);
                acc = acc.mul_degree_truncated(&series, max_degree as i64);
            }
            for (f, d) in acc.terms {
                out.add_term(f, d);
            }
        }
        out
    }

    fn mul_degree_truncated(&self, other: &Self, bound: i64) -> Self {
        let mut out = Self::zero(self.nvars);
        for (a, ca) in &self.terms {
            let da: i64 = a.iter().sum();
            for (b, cb) in &other.terms {
                if da + b.iter().sum::<i64>() > bound {
                    continue;
                }
                out.add_term(a.iter().zip(b).map(|(x, y)| x + y).collect(), ca * cb);
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!(self
            .terms_desc()
            .map(|(e, c)| json!({ "coeff": c.to_string(), "exps": e }))
            .collect::<Vec<_>>())
    }

    /// Terms by total degree, then exponent vector, both descending.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Vec<i64>, &Coeff)> {
        let mut v: Vec<(&Vec<i64>, &Coeff)> = self.terms.iter().collect();
        v.sort_by(|a, b| (b.0.iter().sum::<i64>(), b.0).cmp(&(a.0.iter().sum::<i64>(), a.0)));
        v.into_iter()
    }
}

/// `(1 - t_i)^a` as a power series in `t_i` up to degree `bound`.
fn one_minus_power(n: usize, i: usize, a: i64, bound: usize) -> LaurentPolynomial {
    let mut out = LaurentPolynomial::zero(n);
    // generalized binomial coefficients binom(a, k) (-1)^k
    let mut coeff = Coeff::one();
    for k in 0..=bound {
        if a >= 0 && k as i64 > a {
            break;
        }
        let mut e = vec![0; n];
        e[i] = k as i64;
        out.add_term(e, coeff.clone());
        coeff = -coeff * Coeff::from_integer(BigInt::from(a - k as i64)) / Coeff::from_integer(BigInt::from(k + 1));
    }
    out
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.iter().zip(b).map(|(x, y)| x + y).collect(), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms_desc().enumerate() {
            let negative = c.is_negative();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            let mag = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(i, &a)| if a == 1 { format!("t{}", i + 1) } else { format!("t{}^{}", i + 1, a) })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Exponent vector of the grading monomial of `z`, the negated weight.
pub fn grading_monomial(f: &Factorization, z: &VarRef) -> Result<Vec<i64>> {
    Ok(f.weight(z)?.coeffs.iter().map(|c| -c).collect())
}

fn gradings(f: &Factorization) -> BTreeMap<VarRef, Vec<i64>> {
    f.variables()
        .into_iter()
        .map(|z| {
            let d = grading_monomial(f, &z).expect("patch variable");
            (z, d)
        })
        .collect()
}

/// Appends an extra coordinate 1, counting total degree.
fn refine(grades: &BTreeMap<VarRef, Vec<i64>>) -> BTreeMap<VarRef, Vec<i64>> {
    grades
        .iter()
        .map(|(z, d)| {
            let mut e = d.clone();
            e.push(1);
            (z.clone(), e)
        })
        .collect()
}

/// `Σ_F Π_{z∈F} t^{d(z)} Π_{z∉F} (1 - t^{d(z)})` over the faces of a complex.
fn face_sum(complex: &SimplicialComplex<VarRef>, grades: &BTreeMap<VarRef, Vec<i64>>, nvars: usize) -> LaurentPolynomial {
    let mut total = LaurentPolynomial::zero(nvars);
    if complex.state() == ComplexState::Void {
        return total;
    }
    for face in complex.faces() {
        let mut term = LaurentPolynomial::one(nvars);
        for (z, d) in grades {
            let factor = if face.contains(z) {
                LaurentPolynomial::monomial(d.clone(), Coeff::one())
            } else {
                LaurentPolynomial::one_minus(d)
            };
            term = &term * &factor;
        }
        total = &total + &term;
    }
    total
}

/// K-polynomial from the Stanley–Reisner complex `Δ_{v̄,w}`.
pub fn kpoly_sr(f: &Factorization, w: &CnElement) -> Result<LaurentPolynomial> {
    Ok(face_sum(&subword::delta(f, w)?, &gradings(f), f.rank()))
}

/// K-polynomial of `R_v̄ / M` for a squarefree monomial ideal `M` in the
/// patch variables, by summing over the subsets containing no generator.
pub fn kpoly_of_monomial_ideal(f: &Factorization, ideal: &MonomialIdeal) -> Result<LaurentPolynomial> {
    if !ideal.is_squarefree() {
        return Err(KlgError::NotSquarefree(ideal.to_string()));
    }
    let vars = f.variables();
    let faces: Vec<BTreeSet<VarRef>> = if ideal.is_unit() {
        Vec::new()
    } else {
        let gens: Vec<BTreeSet<VarRef>> = ideal.generators().iter().map(|g| g.keys().cloned().collect()).collect();
        (0u64..(1u64 << vars.len()))
            .map(|m| (0..vars.len()).filter(|b| m & (1 << b) != 0).map(|b| vars[b].clone()).collect())
            .filter(|s: &BTreeSet<VarRef>| !gens.iter().any(|g| g.is_subset(s)))
            .collect()
    };
    let complex = if faces.is_empty() {
        SimplicialComplex::void(vars)
    } else {
        SimplicialComplex::new(vars, faces)
    };
    Ok(face_sum(&complex, &gradings(f), f.rank()))
}

/// K-polynomial by the ascent/descent recursion at the last ascent `c_k` of
/// `v` (largest `k`), with the variable deleted by that step supplying the
/// factor. Memoized on `(v, w)` for one call.
pub fn kpoly_recursion(v: &CnElement, w: &CnElement) -> Result<LaurentPolynomial> {
    let f = Factorization::new(v)?;
    let mut memo = HashMap::new();
    recursion_step(&f, w, &mut memo)
}

fn recursion_step(
    f: &Factorization,
    w: &CnElement,
    memo: &mut HashMap<(CnElement, CnElement), LaurentPolynomial>,
) -> Result<LaurentPolynomial> {
    let n = f.rank();
    let key = (f.v().clone(), w.clone());
    if let Some(k) = memo.get(&key) {
        return Ok(k.clone());
    }
    let result = if !bruhat_leq(f.v(), w) {
        LaurentPolynomial::zero(n)
    } else {
        match f.v().last_ascent() {
            None => LaurentPolynomial::one(n),
            Some(k) => {
                let z = f.deleted_variable(k)?;
                let d = grading_monomial(f, &z)?;
                let next = f.right_step(k)?;
                let link = recursion_step(&next, w, memo)?;
                if w.is_right_descent(k) {
                    link
                } else {
                    let deletion = recursion_step(&next, &w.mul_gen_right(k), memo)?;
                    &link + &(&LaurentPolynomial::one_minus(&d) * &(&deletion - &link))
                }
            }
        }
    };
    memo.insert(key, result.clone());
    Ok(result)
}

/// Signed sum over dreams inside `ρ(f)` whose word has Demazure product
/// `w_0 w`: each contributes `(-1)^{#crosses - ℓ(w_0 w)} Π (1 - t^{d(z)})`
/// over its lower crosses.
pub fn kpoly_pipedreams(f: &Factorization, w: &CnElement) -> Result<LaurentPolynomial> {
    let n = f.rank();
    let grades = gradings(f);
    let codim = CnElement::longest(n).length() - w.length();
    let mut total = LaurentPolynomial::zero(n);
    for dream in enumerate_pd(f, w)?.all_interior {
        let crosses = dream.variables();
        let mut term = LaurentPolynomial::one(n);
        for z in &crosses {
            term = &term * &LaurentPolynomial::one_minus(&grades[z]);
        }
        if (crosses.len() - codim) % 2 == 1 {
            term = -&term;
        }
        total = &total + &term;
    }
    Ok(total)
}

/// Facets of `Δ_{v̄,w}` (elbow sets) in the shelling order produced by
/// vertex decomposition at the largest variable: the deletion's facets
/// first, then the cone over the link.
pub fn shelling_order(f: &Factorization, w: &CnElement) -> Result<Vec<BTreeSet<VarRef>>> {
    if !bruhat_leq(f.v(), w) {
        return Ok(Vec::new());
    }
    let Some((k, z)) = f.peel() else {
        return Ok(vec![BTreeSet::new()]);
    };
    let next = f.right_step(k)?;
    let coned = |facets: Vec<BTreeSet<VarRef>>| {
        facets.into_iter().map(|mut s| {
            s.insert(z.clone());
            s
        })
    };
    if w.is_right_descent(k) {
        Ok(coned(shelling_order(&next, w)?).collect())
    } else {
        let mut out = shelling_order(&next, &w.mul_gen_right(k))?;
        out.extend(coned(shelling_order(&next, w)?));
        Ok(out)
    }
}

/// `Σ_k Π_{crosses of F_k} (1 - t^{d}) Π_{x ∈ Abs(F_k)} t^{d(x)}` over the
/// shelling order, where `Abs(F_k)` holds the `x ∈ F_k` with `F_k \ x`
/// inside an earlier facet.
pub fn kpoly_shelling(f: &Factorization, w: &CnElement) -> Result<LaurentPolynomial> {
    let n = f.rank();
    let grades = gradings(f);
    let order = shelling_order(f, w)?;
    let mut total = LaurentPolynomial::zero(n);
    for (k, facet) in order.iter().enumerate() {
        let mut term = LaurentPolynomial::one(n);
        for (z, d) in &grades {
            if !facet.contains(z) {
                term = &term * &LaurentPolynomial::one_minus(d);
            } else {
                let mut rest = facet.clone();
                rest.remove(z);
                if order[..k].iter().any(|g| rest.is_subset(g)) {
                    term = &term * &LaurentPolynomial::monomial(d.clone(), Coeff::one());
                }
            }
        }
        total = &total + &term;
    }
    Ok(total)
}

/// The linear form `Σ_i (-weight_i) t_i` of a variable.
fn linear_form(f: &Factorization, z: &VarRef) -> Result<LaurentPolynomial> {
    let n = f.rank();
    let mut out = LaurentPolynomial::zero(n);
    for (i, c) in f.weight(z)?.coeffs.iter().enumerate() {
        if *c != 0 {
            let mut e = vec![0; n];
            e[i] = 1;
            out = &out + &LaurentPolynomial::monomial(e, Coeff::from_integer(BigInt::from(-c)));
        }
    }
    Ok(out)
}

/// Multidegree as a sum over reduced dreams of products of the linear forms
/// of their lower crosses.
pub fn multidegree(f: &Factorization, w: &CnElement) -> Result<LaurentPolynomial> {
    let n = f.rank();
    let mut total = LaurentPolynomial::zero(n);
    for dream in enumerate_pd(f, w)?.facet_dreams {
        let mut term = LaurentPolynomial::one(n);
        for z in dream.variables() {
            term = &term * &linear_form(f, &z)?;
        }
        total = &total + &term;
    }
    Ok(total)
}

/// The lowest-degree part of `K(1 - t)`, where `codim` bounds the expected
/// degree. Zero when `K` is zero.
pub fn multidegree_from_kpoly(k: &LaurentPolynomial, codim: usize) -> LaurentPolynomial {
    let series = k.substitute_one_minus(codim + 2);
    match series.min_degree() {
        None => LaurentPolynomial::zero(k.nvars()),
        Some(d) => series.homogeneous_part(d),
    }
}

/// Product over a component's variables of their linear forms.
pub fn component_multidegree(f: &Factorization, component: &BTreeSet<VarRef>) -> Result<LaurentPolynomial> {
    let mut term = LaurentPolynomial::one(f.rank());
    for z in component {
        term = &term * &linear_form(f, z)?;
    }
    Ok(term)
}

/// Hilbert series of `R_v̄ / I_{v̄,w}` for the grading refined by total
/// degree, truncated at total degree `degree_bound`. Entry `k` is the sum of
/// `t^{deg m}` over standard monomials `m` of total degree `k`.
pub fn hilbert_series_truncated(f: &Factorization, w: &CnElement, degree_bound: usize) -> Result<Vec<LaurentPolynomial>> {
    let n = f.rank();
    let grades = refine(&gradings(f));
    let bound = degree_bound as i64;
    let numerator = face_sum(&subword::delta(f, w)?, &grades, n + 1);
    let mut series = numerator;
    for d in grades.values() {
        // 1 / (1 - t^d s) truncated in s
        let mut geometric = LaurentPolynomial::zero(n + 1);
        for k in 0..=bound {
            geometric = &geometric + &LaurentPolynomial::monomial(d.iter().map(|x| x * k).collect(), Coeff::one());
        }
        series = series.mul_truncated(&geometric, n, bound);
    }
    Ok((0..=bound).map(|k| series.slice(n, k)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize, s: &str) -> CnElement {
        CnElement::parse(n, s).unwrap()
    }

    fn square(n: usize) -> Factorization {
        Factorization::new(&CnElement::square(n)).unwrap()
    }

    fn expected_3412() -> LaurentPolynomial {
        LaurentPolynomial::one_minus(&[-1, -1])
    }

    #[test]
    fn gradings() {
        assert_eq!(grading_monomial(&square(2), &VarRef::grid(1, 2)).unwrap(), vec![-1, -1]);
        assert_eq!(grading_monomial(&square(3), &VarRef::grid(1, 1)).unwrap(), vec![-2, 0, 0]);
        let f = Factorization::new(&c(3, "642531")).unwrap();
        assert_eq!(grading_monomial(&f, &VarRef::grid(2, 3)).unwrap(), vec![1, -1, 0]);
    }

    #[test]
    fn display() {
        assert_eq!(expected_3412().to_string(), "1 - t1^-1*t2^-1");
        assert_eq!(LaurentPolynomial::zero(2).to_string(), "0");
    }

    #[test]
    fn routes_on_3412() {
        let w = c(2, "3412");
        assert_eq!(kpoly_sr(&square(2), &w).unwrap(), expected_3412());
        assert_eq!(kpoly_recursion(&CnElement::square(2), &w).unwrap(), expected_3412());
        assert_eq!(kpoly_pipedreams(&square(2), &w).unwrap(), expected_3412());
        assert_eq!(kpoly_shelling(&square(2), &w).unwrap(), expected_3412());
    }

    #[test]
    fn base_cases() {
        let top = Factorization::new(&CnElement::longest(3)).unwrap();
        let w0 = CnElement::longest(3);
        assert_eq!(kpoly_sr(&top, &w0).unwrap(), LaurentPolynomial::one(3));
        assert_eq!(kpoly_recursion(&w0, &w0).unwrap(), LaurentPolynomial::one(3));
        assert!(kpoly_sr(&square(3), &CnElement::identity(3)).unwrap().is_zero());
        assert_eq!(multidegree(&top, &w0).unwrap(), LaurentPolynomial::one(3));
        assert!(multidegree(&square(3), &CnElement::identity(3)).unwrap().is_zero());
    }

    #[test]
    fn multidegree_3412() {
        let m = multidegree(&square(2), &c(2, "3412")).unwrap();
        let expected = &(-&LaurentPolynomial::var(2, 1, 1)) - &LaurentPolynomial::var(2, 2, 1);
        assert_eq!(m, expected);
        assert_eq!(multidegree_from_kpoly(&expected_3412(), 1), expected);
    }

    #[test]
    fn series_expansion() {
        // (1 - t)^-1 = 1 + t + t^2 + ...
        let s = LaurentPolynomial::monomial(vec![-1], Coeff::one()).substitute_one_minus(3);
        assert_eq!(s.to_string(), "t1^3 + t1^2 + t1 + 1");
    }

    #[test]
    fn hilbert_of_3412() {
        // R/<z12> over z11, z22 of refined degrees (-2,0,1), (0,-2,1)
        let h = hilbert_series_truncated(&square(2), &c(2, "3412"), 3).unwrap();
        assert_eq!(h[0], LaurentPolynomial::one(2));
        assert_eq!(h[1].terms().len(), 2);
        assert_eq!(h[3].terms().len(), 4);
    }
}
