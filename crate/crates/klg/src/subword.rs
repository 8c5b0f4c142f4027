//! Subword complexes `S(Q, π)`, their relabelling by patch variables, and
//! Stanley–Reisner ideals.
//!
//! Vertices of `S(Q, π)` are the 1-based positions of `Q`. A set `F` of
//! positions is a face when the letters outside `F` contain a reduced word for
//! `π`; facets are complements of reduced subwords for `π`.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::error::{KlgError, Result};
use crate::klideal::MonomialIdeal;
use crate::polyring::VarRef;
use crate::symcell::Factorization;
use crate::weyl::{self, bruhat_leq, CnElement, Coxeter, Flavor, Word};

/// Whether a complex has no faces, only the empty face, or more.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplexState {
    /// No faces at all, not even the empty set.
    Void,
    /// Exactly the empty face.
    Empty,
    Proper,
}

impl ComplexState {
    pub fn as_str(&self) -> &'static str {
        match self {
            ComplexState::Void => "void",
            ComplexState::Empty => "empty",
            ComplexState::Proper => "proper",
        }
    }
}

/// A simplicial complex given by its vertex list and facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex<V: Ord + Clone> {
    vertices: Vec<V>,
    facets: Vec<BTreeSet<V>>,
}

impl<V: Ord + Clone> SimplicialComplex<V> {
    /// Builds a complex, dropping facets contained in other facets.
    pub fn new(vertices: Vec<V>, facets: Vec<BTreeSet<V>>) -> Self {
        let mut kept: Vec<BTreeSet<V>> = Vec::new();
        for f in &facets {
            let dominated = facets.iter().any(|g| g != f && f.is_subset(g));
            if !dominated && !kept.contains(f) {
                kept.push(f.clone());
            }
        }
        kept.sort();
        SimplicialComplex { vertices, facets: kept }
    }

    pub fn void(vertices: Vec<V>) -> Self {
        SimplicialComplex { vertices, facets: Vec::new() }
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn facets(&self) -> &[BTreeSet<V>] {
        &self.facets
    }

    pub fn state(&self) -> ComplexState {
        if self.facets.is_empty() {
            ComplexState::Void
        } else if self.facets.iter().all(|f| f.is_empty()) {
            ComplexState::Empty
        } else {
            ComplexState::Proper
        }
    }

    pub fn is_face(&self, s: &BTreeSet<V>) -> bool {
        self.facets.iter().any(|f| s.is_subset(f))
    }

    /// Dimension of the largest facet, `None` for the void complex.
    pub fn dimension(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    pub fn is_pure(&self) -> bool {
        let mut sizes = self.facets.iter().map(|f| f.len());
        match sizes.next() {
            None => true,
            Some(s) => sizes.all(|t| t == s),
        }
    }

    /// The cone with apex `apex`, which joins the vertex set.
    pub fn cone(&self, apex: V) -> Self {
        let mut vertices = self.vertices.clone();
        if !vertices.contains(&apex) {
            vertices.push(apex.clone());
        }
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let mut g = f.clone();
                g.insert(apex.clone());
                g
            })
            .collect();
        SimplicialComplex::new(vertices, facets)
    }

    /// Union of two complexes on the union of their vertex sets.
    pub fn union(&self, other: &Self) -> Self {
        let mut vertices = self.vertices.clone();
        for v in &other.vertices {
            if !vertices.contains(v) {
                vertices.push(v.clone());
            }
        }
        let facets = self.facets.iter().chain(other.facets.iter()).cloned().collect();
        SimplicialComplex::new(vertices, facets)
    }

    /// Same faces, compared with a sorted vertex set.
    pub fn same_as(&self, other: &Self) -> bool {
        let a: BTreeSet<&V> = self.vertices.iter().collect();
        let b: BTreeSet<&V> = other.vertices.iter().collect();
        a == b && self.facets == other.facets
    }

    fn mask_of(&self, s: &BTreeSet<V>) -> u64 {
        s.iter()
            .map(|v| 1u64 << self.vertices.iter().position(|x| x == v).expect("vertex"))
            .sum()
    }

    /// Minimal non-faces, each as a vertex set, sorted.
    pub fn minimal_nonfaces(&self) -> Vec<BTreeSet<V>> {
        let nv = self.vertices.len();
        assert!(nv <= 24, "too many vertices for subset enumeration");
        let facet_masks: Vec<u64> = self.facets.iter().map(|f| self.mask_of(f)).collect();
        let is_face = |m: u64| facet_masks.iter().any(|&f| m & !f == 0);
        let mut out = Vec::new();
        for m in 0u64..(1u64 << nv) {
            if is_face(m) {
                continue;
            }
            let minimal = (0..nv).filter(|&b| m & (1 << b) != 0).all(|b| is_face(m & !(1 << b)));
            if minimal {
                out.push((0..nv).filter(|&b| m & (1 << b) != 0).map(|b| self.vertices[b].clone()).collect());
            }
        }
        out.sort();
        out
    }

    /// Every face, as vertex sets.
    pub fn faces(&self) -> Vec<BTreeSet<V>> {
        let nv = self.vertices.len();
        assert!(nv <= 24, "too many vertices for subset enumeration");
        let facet_masks: Vec<u64> = self.facets.iter().map(|f| self.mask_of(f)).collect();
        (0u64..(1u64 << nv))
            .filter(|&m| facet_masks.iter().any(|&f| m & !f == 0))
            .map(|m| (0..nv).filter(|&b| m & (1 << b) != 0).map(|b| self.vertices[b].clone()).collect())
            .collect()
    }

    pub fn relabel<W: Ord + Clone>(&self, f: impl Fn(&V) -> W) -> SimplicialComplex<W> {
        SimplicialComplex::new(
            self.vertices.iter().map(&f).collect(),
            self.facets.iter().map(|s| s.iter().map(&f).collect()).collect(),
        )
    }
}

impl<V: Ord + Clone + serde::Serialize> SimplicialComplex<V> {
    /// `{vertices, facets, state}`.
    pub fn to_json(&self) -> Value {
        json!({
            "vertices": self.vertices,
            "facets": self.facets.iter().map(|f| f.iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
            "state": self.state().as_str(),
        })
    }
}

/// Demazure product of a type C word, starting from the identity.
pub fn demazure_product(q: &Word) -> Result<CnElement> {
    match q.flavor() {
        Flavor::TypeC { n } => Ok(weyl::demazure_product(&CnElement::identity(n), q.letters())),
        Flavor::TypeA { .. } => Err(KlgError::SizeMismatch("expected a type C word".into())),
    }
}

fn rank_of(q: &Word) -> Result<usize> {
    match q.flavor() {
        Flavor::TypeC { n } => Ok(n),
        Flavor::TypeA { .. } => Err(KlgError::SizeMismatch("expected a type C word".into())),
    }
}

/// Positions (1-based) of every reduced subword of `letters` whose product
/// is `target`. A prefix is extended only while it stays a length-additive
/// left factor of `target`.
pub fn reduced_subwords(letters: &[usize], target: &CnElement) -> Vec<Vec<usize>> {
    fn go(
        letters: &[usize],
        pos: usize,
        g: &CnElement,
        target: &CnElement,
        need: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if need == 0 {
            if g == target {
                out.push(cur.clone());
            }
            return;
        }
        for p in pos..letters.len() {
            if letters.len() - p < need {
                break;
            }
            let k = letters[p];
            if g.is_right_descent(k) {
                continue;
            }
            let h = g.mul_gen_right(k);
            let rest = h.inverse().compose(target).expect("same rank");
            if rest.length() + h.length() != target.length() {
                continue;
            }
            cur.push(p + 1);
            go(letters, p + 1, &h, target, need - 1, cur, out);
            cur.pop();
        }
    }
    let start = CnElement::identity(target.rank());
    let mut out = Vec::new();
    go(letters, 0, &start, target, target.length(), &mut Vec::new(), &mut out);
    out
}

/// The subword complex `S(Q, π)` on positions `1..=|Q|`, for a reduced word
/// `Q`. Void when `π` is not below the product of `Q` in Bruhat order.
pub fn subword_complex(q: &Word, pi: &CnElement) -> Result<SimplicialComplex<usize>> {
    let n = rank_of(q)?;
    if !q.is_reduced() {
        return Err(KlgError::NotReduced(q.to_string()));
    }
    let vertices: Vec<usize> = (1..=q.len()).collect();
    let product = q.c_product()?;
    if !bruhat_leq(pi, &product) {
        return Ok(SimplicialComplex::void(vertices));
    }
    if pi.rank() != n {
        return Err(KlgError::SizeMismatch(format!("{pi} is not in C_{n}")));
    }
    let words = reduced_subwords(q.letters(), pi);
    let facets = words
        .into_iter()
        .map(|w| vertices.iter().copied().filter(|p| !w.contains(p)).collect())
        .collect();
    Ok(SimplicialComplex::new(vertices, facets))
}

/// Faces `F` of `S(Q, π)` with Demazure product of `Q` outside `F` equal to
/// `π`, as position sets. Enumerates all subsets of positions.
pub fn interior_faces(q: &Word, pi: &CnElement) -> Result<Vec<BTreeSet<usize>>> {
    let n = rank_of(q)?;
    let l = q.len();
    if l > 24 {
        return Err(KlgError::OutOfRange("word too long for subset enumeration".into()));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << l) {
        let rest: Vec<usize> =
            (0..l).filter(|&b| mask & (1 << b) == 0).map(|b| q.letters()[b]).collect();
        if &weyl::demazure_product(&CnElement::identity(n), &rest) == pi {
            out.push((0..l).filter(|&b| mask & (1 << b) != 0).map(|b| b + 1).collect());
        }
    }
    Ok(out)
}

/// The position-to-variable map: position `k` goes to the `k`-th smallest
/// patch variable.
pub fn zeta(f: &Factorization) -> BTreeMap<usize, VarRef> {
    f.variables().into_iter().enumerate().map(|(k, z)| (k + 1, z)).collect()
}

/// `Δ_{v̄,w}`: the subword complex of the canonical word for `w_0 v` and
/// `w_0 w`, relabelled by patch variables.
pub fn delta(f: &Factorization, w: &CnElement) -> Result<SimplicialComplex<VarRef>> {
    let n = f.rank();
    if w.rank() != n {
        return Err(KlgError::SizeMismatch(format!("w={w} and v={} differ in rank", f.v())));
    }
    let pi = CnElement::longest(n).compose(w)?;
    let complex = subword_complex(&f.canonical_q(), &pi)?;
    let labels = zeta(f);
    Ok(complex.relabel(|p| labels[p].clone()))
}

/// Stanley–Reisner ideal of a complex over variables: the unit ideal for the
/// void complex, otherwise the minimal non-faces.
pub fn stanley_reisner_of(complex: &SimplicialComplex<VarRef>) -> MonomialIdeal {
    if complex.state() == ComplexState::Void {
        return MonomialIdeal::unit();
    }
    MonomialIdeal::from_squarefree_sets(complex.minimal_nonfaces())
}

/// `K_{v̄,w}`, the Stanley–Reisner ideal of `Δ_{v̄,w}`.
pub fn stanley_reisner(f: &Factorization, w: &CnElement) -> Result<MonomialIdeal> {
    Ok(stanley_reisner_of(&delta(f, w)?))
}

/// Checks the recursive structure at the ascent `c_k` that deletes the
/// largest patch variable `z` (see [`Factorization::peel`]):
///
/// - if `c_k` is a descent of `w`: `Δ_{v̄,w} = cone_z Δ_{v̄c_k,w}` and
///   `K_{v̄,w} = K_{v̄c_k,w}`;
/// - otherwise `Δ_{v̄,w} = cone_z Δ_{v̄c_k,w} ∪ Δ_{v̄c_k,wc_k}` and
///   `K_{v̄,w} = z·K_{v̄c_k,w} + K_{v̄c_k,wc_k}`.
///
/// Vacuously true for `v = w_0`.
pub fn vertex_decomposition_check(f: &Factorization, w: &CnElement) -> Result<bool> {
    let Some((k, z)) = f.peel() else {
        return Ok(true);
    };
    let step = f.right_step(k)?;
    let whole = delta(f, w)?;
    let k_whole = stanley_reisner_of(&whole);
    let left = delta(&step, w)?;
    let k_left = stanley_reisner_of(&left);
    if w.is_right_descent(k) {
        Ok(whole.same_as(&left.cone(z)) && k_whole == k_left)
    } else {
        let wc = w.mul_gen_right(k);
        let right = delta(&step, &wc)?;
        let mut joined = left.cone(z.clone()).union(&right);
        // The union carries the vertex set of the smaller patch plus z.
        joined = SimplicialComplex::new(whole.vertices().to_vec(), joined.facets().to_vec());
        let k_right = stanley_reisner_of(&right);
        let expected = k_left.times_variable(&z).sum(&k_right);
        Ok(whole.same_as(&joined) && k_whole == expected)
    }
}
