//! Kazhdan–Lusztig ideals from essential minors, the Gröbner verification
//! pipeline, and squarefree monomial ideals with their prime components.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{KlgError, Result};
use crate::polyring::{
    buchberger_completion, initial_ideal, is_groebner, minimalize, Budget, FailingPair, Monomial,
    OrderKind, PolyMatrix, Polynomial, Ring, RingRef, VarRef,
};
use crate::subword;
use crate::symcell::{bott_samelson_matrix, bott_samelson_parameters, Factorization};
use crate::weyl::{bruhat_leq, CnElement, EssentialBox, Word};

/// A monomial ideal stored by its minimal generators, each a map from
/// variable to exponent. The unit ideal is the single empty monomial; the
/// zero ideal has no generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    gens: Vec<BTreeMap<VarRef, u32>>,
}

fn divides(a: &BTreeMap<VarRef, u32>, b: &BTreeMap<VarRef, u32>) -> bool {
    a.iter().all(|(v, e)| b.get(v).is_some_and(|f| f >= e))
}

impl MonomialIdeal {
    pub fn zero() -> Self {
        MonomialIdeal { gens: Vec::new() }
    }

    pub fn unit() -> Self {
        MonomialIdeal { gens: vec![BTreeMap::new()] }
    }

    /// Minimalizes by pairwise divisibility and sorts.
    pub fn from_maps(maps: Vec<BTreeMap<VarRef, u32>>) -> Self {
        let mut sorted = maps;
        sorted.sort_by_key(|m| m.values().sum::<u32>());
        let mut gens: Vec<BTreeMap<VarRef, u32>> = Vec::new();
        for m in sorted {
            if !gens.iter().any(|g| divides(g, &m)) {
                gens.push(m);
            }
        }
        gens.sort();
        MonomialIdeal { gens }
    }

    pub fn from_squarefree_sets(sets: Vec<BTreeSet<VarRef>>) -> Self {
        Self::from_maps(sets.into_iter().map(|s| s.into_iter().map(|v| (v, 1)).collect()).collect())
    }

    pub fn from_monomials(ring: &Ring, monos: &[Monomial]) -> Self {
        Self::from_maps(minimalize(monos).iter().map(|m| m.to_map(ring)).collect())
    }

    /// Intersection of the coordinate primes `⟨S⟩` over the given variable
    /// sets: generated by the squarefree monomials meeting every set.
    pub fn from_components(components: &[BTreeSet<VarRef>]) -> Self {
        let mut partial: Vec<BTreeSet<VarRef>> = vec![BTreeSet::new()];
        for comp in components {
            let mut next = Vec::new();
            for s in &partial {
                if s.iter().any(|v| comp.contains(v)) {
                    next.push(s.clone());
                } else {
                    for v in comp {
                        let mut t = s.clone();
                        t.insert(v.clone());
                        next.push(t);
                    }
                }
            }
            partial = next;
        }
        Self::from_squarefree_sets(partial)
    }

    pub fn generators(&self) -> &[BTreeMap<VarRef, u32>] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_empty())
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.values().all(|&e| e == 1))
    }

    /// Whether the monomial lies in the ideal.
    pub fn contains(&self, m: &BTreeMap<VarRef, u32>) -> bool {
        self.gens.iter().any(|g| divides(g, m))
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn times_variable(&self, z: &VarRef) -> Self {
        Self::from_maps(
            self.gens
                .iter()
                .map(|g| {
                    let mut h = g.clone();
                    *h.entry(z.clone()).or_insert(0) += 1;
                    h
                })
                .collect(),
        )
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Self {
        Self::from_maps(self.gens.iter().chain(other.gens.iter()).cloned().collect())
    }

    /// Generators as strings like `z11*z22`, with `1` for the unit monomial.
    pub fn to_strings(&self) -> Vec<String> {
        self.gens.iter().map(monomial_string).collect()
    }

    pub fn to_json(&self) -> Value {
        json!(self.to_strings())
    }
}

fn monomial_string(m: &BTreeMap<VarRef, u32>) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|(v, &e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.to_strings().join(", "))
    }
}

/// Minimal primes of a squarefree monomial ideal, as variable sets: the
/// minimal vertex covers of its generators. The unit ideal has none and the
/// zero ideal has the single component `∅`.
pub fn decompose(ideal: &MonomialIdeal) -> Result<Vec<BTreeSet<VarRef>>> {
    if !ideal.is_squarefree() {
        return Err(KlgError::NotSquarefree(ideal.to_string()));
    }
    if ideal.is_unit() {
        return Ok(Vec::new());
    }
    let edges: Vec<Vec<VarRef>> = ideal.gens.iter().map(|g| g.keys().cloned().collect()).collect();
    let mut covers: Vec<BTreeSet<VarRef>> = Vec::new();
    fn branch(edges: &[Vec<VarRef>], chosen: &mut BTreeSet<VarRef>, out: &mut Vec<BTreeSet<VarRef>>) {
        match edges.iter().find(|e| !e.iter().any(|v| chosen.contains(v))) {
            None => out.push(chosen.clone()),
            Some(edge) => {
                for v in edge {
                    chosen.insert(v.clone());
                    branch(edges, chosen, out);
                    chosen.remove(v);
                }
            }
        }
    }
    branch(&edges, &mut BTreeSet::new(), &mut covers);
    let mut minimal: Vec<BTreeSet<VarRef>> = Vec::new();
    covers.sort_by_key(|c| c.len());
    for c in covers {
        if !minimal.iter().any(|m| m.is_subset(&c)) {
            minimal.push(c);
        }
    }
    minimal.sort();
    Ok(minimal)
}

/// A minor together with where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub poly: Polynomial,
    pub essential: EssentialBox,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Generator {
    /// Product of the submatrix entries at `(rows[k], cols[k])`.
    pub fn diagonal_product(&self, matrix: &PolyMatrix) -> Polynomial {
        let mut p = Polynomial::one(matrix.ring());
        for (r, c) in self.rows.iter().zip(&self.cols) {
            p = &p * matrix.get(*r, *c);
        }
        p
    }

    pub fn to_json(&self) -> Value {
        json!({
            "poly": self.poly.to_string(),
            "box": [self.essential.p, self.essential.q, self.essential.rank],
            "rows": self.rows,
            "cols": self.cols,
        })
    }
}

/// All nonzero minors of size `r + 1` of the southwest truncation (rows
/// `p..=2n`, columns `1..=q`) of `matrix`, over the type C essential boxes
/// `(p, q, r)` of `w`.
pub fn essential_minors(matrix: &PolyMatrix, w: &CnElement) -> Result<Vec<Generator>> {
    let size = 2 * w.rank();
    if matrix.nrows() != size || matrix.ncols() != size {
        return Err(KlgError::SizeMismatch(format!(
            "{}x{} matrix for w in C_{}",
            matrix.nrows(),
            matrix.ncols(),
            w.rank()
        )));
    }
    let mut out = Vec::new();
    for b in w.essential_set_c() {
        let rows: Vec<usize> = (b.p..=size).collect();
        let cols: Vec<usize> = (1..=b.q).collect();
        let k = b.rank + 1;
        if k > rows.len() || k > cols.len() {
            continue;
        }
        for (rs, cs, poly) in matrix.minors_of_size(&rows, &cols, k)? {
            if !poly.is_zero() {
                out.push(Generator { poly, essential: b, rows: rs, cols: cs });
            }
        }
    }
    Ok(out)
}

/// The ideal `I_{v̄,w}` of a patch, with its generators.
#[derive(Clone, Debug)]
pub struct KlIdeal {
    pub factorization: Factorization,
    pub w: CnElement,
    pub matrix: PolyMatrix,
    pub generators: Vec<Generator>,
}

impl KlIdeal {
    pub fn ring(&self) -> &RingRef {
        self.matrix.ring()
    }

    pub fn polys(&self) -> Vec<Polynomial> {
        self.generators.iter().map(|g| g.poly.clone()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "v": self.factorization.v(),
            "u_l": self.factorization.u_l(),
            "u_r": self.factorization.u_r(),
            "w": self.w,
            "essential": self.w.essential_set_c().iter().map(|b| [b.p, b.q, b.rank]).collect::<Vec<_>>(),
            "generators": self.generators.iter().map(|g| g.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// `I_{v̄,w}` in the lex order on the patch variables.
pub fn kl_ideal(f: &Factorization, w: &CnElement) -> Result<KlIdeal> {
    kl_ideal_with_order(f, w, OrderKind::Lex)
}

pub fn kl_ideal_with_order(f: &Factorization, w: &CnElement, order: OrderKind) -> Result<KlIdeal> {
    if w.rank() != f.rank() {
        return Err(KlgError::SizeMismatch(format!("w={w} and v={} differ in rank", f.v())));
    }
    let ring = f.ring(order);
    let matrix = f.generic_matrix().to_poly_matrix(&ring)?;
    let generators = essential_minors(&matrix, w)?;
    Ok(KlIdeal { factorization: f.clone(), w: w.clone(), matrix, generators })
}

/// Outcome of checking the Gröbner property of the essential minors and
/// comparing the initial ideal with the Stanley–Reisner ideal.
#[derive(Clone, Debug)]
pub struct MainTheoremReport {
    pub v: CnElement,
    pub w: CnElement,
    pub is_gb: bool,
    pub failing: Option<FailingPair>,
    /// The initial ideal, from the leading terms when `is_gb`, otherwise
    /// from a completed basis.
    pub initial: MonomialIdeal,
    pub stanley_reisner: MonomialIdeal,
    pub matches_sr: bool,
    /// Every generator whose diagonal product is nonzero has that product
    /// as its leading monomial.
    pub diagonal_ok: bool,
    /// The Stanley–Reisner ideal lies in the ideal of leading terms.
    pub sr_in_leading: bool,
    pub components: Vec<BTreeSet<VarRef>>,
    pub generator_count: usize,
}

impl MainTheoremReport {
    pub fn passed(&self) -> bool {
        self.is_gb && self.matches_sr && self.diagonal_ok && self.sr_in_leading
    }

    pub fn to_json(&self) -> Value {
        json!({
            "v": self.v,
            "w": self.w,
            "is_gb": self.is_gb,
            "failing": self.failing.as_ref().map(|p| json!({
                "first": p.first, "second": p.second, "remainder": p.remainder.to_string(),
            })),
            "initial": self.initial.to_json(),
            "stanley_reisner": self.stanley_reisner.to_json(),
            "matches_sr": self.matches_sr,
            "diagonal_ok": self.diagonal_ok,
            "sr_in_leading": self.sr_in_leading,
            "components": self.components.iter()
                .map(|c| c.iter().map(|v| v.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "generators": self.generator_count,
        })
    }
}

fn leading_ideal(ring: &Ring, polys: &[Polynomial]) -> MonomialIdeal {
    let leads: Vec<Monomial> = polys.iter().filter_map(|p| p.leading_monomial().ok()).collect();
    MonomialIdeal::from_monomials(ring, &leads)
}

/// Runs the whole check for one pair. `budget` caps division steps.
pub fn verify_main_theorem(
    f: &Factorization,
    w: &CnElement,
    order: OrderKind,
    budget: Option<u64>,
) -> Result<MainTheoremReport> {
    let ideal = kl_ideal_with_order(f, w, order)?;
    let polys = ideal.polys();
    let mut spend = budget.map_or_else(Budget::unlimited, Budget::new);
    let check = is_groebner(&polys, &mut spend)?;
    let ring = ideal.ring().clone();
    let leading = leading_ideal(&ring, &polys);
    let initial = if check.is_groebner {
        leading.clone()
    } else {
        let gb = buchberger_completion(&polys, &mut spend)?;
        MonomialIdeal::from_monomials(&ring, &initial_ideal(&gb))
    };
    let sr = subword::stanley_reisner(f, w)?;
    let diagonal_ok = ideal.generators.iter().all(|g| {
        let d = g.diagonal_product(&ideal.matrix);
        d.is_zero() || d.leading_monomial().ok() == g.poly.leading_monomial().ok()
    });
    let components = if initial.is_squarefree() { decompose(&initial)? } else { Vec::new() };
    Ok(MainTheoremReport {
        v: f.v().clone(),
        w: w.clone(),
        is_gb: check.is_groebner,
        failing: check.failing,
        matches_sr: initial == sr,
        sr_in_leading: leading.contains_ideal(&sr),
        initial,
        stanley_reisner: sr,
        diagonal_ok,
        components,
        generator_count: polys.len(),
    })
}

/// The 123-avoiding elements of `C_n`, in the order of [`CnElement::all`].
pub fn small_patch_elements(n: usize) -> Vec<CnElement> {
    CnElement::all(n).into_iter().filter(|v| v.is_123_avoiding()).collect()
}

/// Every pair (123-avoiding `v`, any `w`) of `C_n`, `v` major.
pub fn all_pairs(n: usize) -> Vec<(CnElement, CnElement)> {
    let ws = CnElement::all(n);
    small_patch_elements(n)
        .into_iter()
        .flat_map(|v| ws.iter().map(move |w| (v.clone(), w.clone())))
        .collect()
}

/// `count` distinct pairs drawn uniformly from the pairs with `v <= w` in
/// Bruhat order, sorted afterwards. Pairs with `v` not below `w` give the
/// unit ideal and are left out.
pub fn sample_pairs(n: usize, count: usize, seed: u64) -> Vec<(CnElement, CnElement)> {
    let mut pool: Vec<(CnElement, CnElement)> =
        all_pairs(n).into_iter().filter(|(v, w)| bruhat_leq(v, w)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pool.shuffle(&mut rng);
    pool.truncate(count);
    pool.sort_by(|a, b| (a.0.one_line(), a.1.one_line()).cmp(&(b.0.one_line(), b.1.one_line())));
    pool
}

/// Runs `job` on a pool capped at `KLG_THREADS` threads when that variable
/// is set to a positive integer, and on the global pool otherwise.
pub fn with_thread_cap<T: Send>(job: impl FnOnce() -> T + Send) -> T {
    let cap = std::env::var("KLG_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok());
    match cap {
        Some(k) if k > 0 => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(job),
            Err(_) => job(),
        },
        _ => job(),
    }
}

/// One row of a verification sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub v: CnElement,
    pub w: CnElement,
    pub is_gb: bool,
    pub matches_sr: bool,
    pub diagonal_ok: bool,
    pub components: usize,
}

impl SweepRow {
    pub fn tsv(&self) -> String {
        format!("{}\t{}\t{}\t{}\t{}", self.v, self.w, self.is_gb, self.matches_sr, self.components)
    }

    pub fn passed(&self) -> bool {
        self.is_gb && self.matches_sr && self.diagonal_ok
    }
}

/// Verifies every listed pair in parallel, keeping the input order.
pub fn sweep(pairs: &[(CnElement, CnElement)], order: OrderKind, budget: Option<u64>) -> Result<Vec<SweepRow>> {
    with_thread_cap(|| {
        pairs
            .par_iter()
            .map(|(v, w)| {
                let f = Factorization::new(v)?;
                let r = verify_main_theorem(&f, w, order, budget)?;
                Ok(SweepRow {
                    v: r.v,
                    w: r.w,
                    is_gb: r.is_gb,
                    matches_sr: r.matches_sr,
                    diagonal_ok: r.diagonal_ok,
                    components: r.components.len(),
                })
            })
            .collect()
    })
}

/// Outcome of the essential-minor check in Bott–Samelson coordinates, where
/// the patch is parametrized by a reduced word `Q` for `w_0 v` instead of
/// the symmetric variables.
#[derive(Clone, Debug)]
pub struct BottSamelsonReport {
    pub v: CnElement,
    pub q: Word,
    pub w: CnElement,
    pub matrix: PolyMatrix,
    pub generators: Vec<Generator>,
    pub is_gb: bool,
    pub failing: Option<FailingPair>,
    /// Initial ideal of a completed basis.
    pub initial: MonomialIdeal,
    /// Stanley–Reisner ideal of `S(Q, w_0 w)` with position `k` named by
    /// the `k`-th parameter.
    pub stanley_reisner: MonomialIdeal,
}

impl BottSamelsonReport {
    pub fn matches_sr(&self) -> bool {
        self.initial == self.stanley_reisner
    }

    /// The failing S-pair as the two generator polynomials.
    pub fn failing_polys(&self) -> Option<(&Polynomial, &Polynomial)> {
        self.failing
            .as_ref()
            .map(|p| (&self.generators[p.first].poly, &self.generators[p.second].poly))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "v": self.v,
            "q": self.q,
            "w": self.w,
            "ranking": self.matrix.ring().vars().iter().map(|z| z.to_string()).collect::<Vec<_>>(),
            "generators": self.generators.iter().map(|g| g.to_json()).collect::<Vec<_>>(),
            "is_gb": self.is_gb,
            "failing": self.failing.as_ref().map(|p| json!({
                "first": p.first,
                "second": p.second,
                "first_poly": self.generators[p.first].poly.to_string(),
                "second_poly": self.generators[p.second].poly.to_string(),
                "remainder": p.remainder.to_string(),
            })),
            "initial": self.initial.to_json(),
            "stanley_reisner": self.stanley_reisner.to_json(),
            "sr_match": self.matches_sr(),
        })
    }
}

/// Builds the Bott–Samelson matrix of `q` in lex order with `ranking`
/// (largest first), takes the essential minors for `w`, and compares the
/// initial ideal with the subword complex `S(q, w_0 w)`.
pub fn bott_samelson_check(
    q: &Word,
    w: &CnElement,
    ranking: &[VarRef],
    budget: Option<u64>,
) -> Result<BottSamelsonReport> {
    let n = w.rank();
    let ring = Ring::ranked(ranking, OrderKind::Lex)?;
    let params = bott_samelson_parameters(q);
    for p in &params {
        if !ring.contains(p) {
            return Err(KlgError::UnrankedVariable(p.to_string()));
        }
    }
    let matrix = bott_samelson_matrix(q, Some(&ring))?;
    let w0 = CnElement::longest(n);
    let v = w0.compose(&q.c_product()?)?;
    let generators = essential_minors(&matrix, w)?;
    let polys: Vec<Polynomial> = generators.iter().map(|g| g.poly.clone()).collect();
    let mut spend = budget.map_or_else(Budget::unlimited, Budget::new);
    let check = is_groebner(&polys, &mut spend)?;
    let gb = buchberger_completion(&polys, &mut spend)?;
    let initial = MonomialIdeal::from_monomials(&ring, &initial_ideal(&gb));
    let complex = subword::subword_complex(q, &w0.compose(w)?)?;
    let stanley_reisner = subword::stanley_reisner_of(&complex.relabel(|&k| params[k - 1].clone()));
    Ok(BottSamelsonReport {
        v,
        q: q.clone(),
        w: w.clone(),
        matrix,
        generators,
        is_gb: check.is_groebner,
        failing: check.failing,
        initial,
        stanley_reisner,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: usize, j: usize) -> VarRef {
        VarRef::grid(i, j)
    }

    fn set(vars: &[(usize, usize)]) -> BTreeSet<VarRef> {
        vars.iter().map(|&(i, j)| z(i, j)).collect()
    }

    fn square(n: usize) -> Factorization {
        Factorization::new(&CnElement::square(n)).unwrap()
    }

    fn c(n: usize, s: &str) -> CnElement {
        CnElement::parse(n, s).unwrap()
    }

    #[test]
    fn minimal_generators() {
        let i = MonomialIdeal::from_squarefree_sets(vec![set(&[(1, 1), (2, 2)]), set(&[(1, 1)])]);
        assert_eq!(i.to_strings(), vec!["z11"]);
        assert!(MonomialIdeal::unit().is_unit());
        assert!(MonomialIdeal::zero().is_zero());
        assert_eq!(MonomialIdeal::unit().times_variable(&z(1, 2)).to_strings(), vec!["z12"]);
    }

    #[test]
    fn decompositions() {
        let single = MonomialIdeal::from_squarefree_sets(vec![set(&[(1, 2)])]);
        assert_eq!(decompose(&single).unwrap(), vec![set(&[(1, 2)])]);
        let k = MonomialIdeal::from_squarefree_sets(vec![
            set(&[(1, 1), (2, 2)]),
            set(&[(1, 1), (2, 3)]),
            set(&[(1, 2), (2, 3)]),
        ]);
        let comps = decompose(&k).unwrap();
        assert_eq!(comps, vec![set(&[(1, 1), (1, 2)]), set(&[(1, 1), (2, 3)]), set(&[(2, 2), (2, 3)])]);
        assert_eq!(MonomialIdeal::from_components(&comps), k);
        assert_eq!(decompose(&MonomialIdeal::unit()).unwrap(), Vec::<BTreeSet<VarRef>>::new());
        assert_eq!(decompose(&MonomialIdeal::zero()).unwrap(), vec![BTreeSet::new()]);
        let squared = MonomialIdeal::from_maps(vec![[(z(1, 1), 2)].into_iter().collect()]);
        assert!(matches!(decompose(&squared), Err(KlgError::NotSquarefree(_))));
    }

    #[test]
    fn ideal_examples() {
        let f = square(3);
        let gens: BTreeSet<String> =
            kl_ideal(&f, &c(3, "426153")).unwrap().polys().iter().map(|p| p.to_string()).collect();
        assert_eq!(gens, ["z12", "z13", "z22", "z23"].iter().map(|s| s.to_string()).collect());
        let gens: BTreeSet<String> =
            kl_ideal(&f, &c(3, "465213")).unwrap().polys().iter().map(|p| p.to_string()).collect();
        assert_eq!(gens, ["z12", "z13"].iter().map(|s| s.to_string()).collect());
        assert!(kl_ideal(&f, &CnElement::longest(3)).unwrap().generators.is_empty());
    }

    #[test]
    fn verify_examples() {
        let r = verify_main_theorem(&square(2), &c(2, "3412"), OrderKind::Lex, None).unwrap();
        assert!(r.passed());
        assert_eq!(r.initial.to_strings(), vec!["z12"]);
        let r = verify_main_theorem(&square(3), &c(3, "635241"), OrderKind::Lex, None).unwrap();
        assert!(r.passed());
        assert_eq!(r.initial.to_strings(), vec!["z11*z22", "z11*z23", "z12*z23"]);
        let r = verify_main_theorem(&square(2), &CnElement::identity(2), OrderKind::Lex, None).unwrap();
        assert!(r.initial.is_unit() && r.matches_sr);
    }

    #[test]
    fn sampling_is_seeded() {
        let a = sample_pairs(2, 5, 7);
        assert_eq!(a, sample_pairs(2, 5, 7));
        assert!(a.iter().all(|(v, w)| bruhat_leq(v, w)));
    }
}
