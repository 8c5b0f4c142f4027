//! Permutations, the type C Weyl group inside `S_{2n}`, reduced words, Bruhat
//! order, Rothe diagrams, rank functions and essential sets.
//!
//! All indices are 1-based in meaning: `w.at(i)` is `w(i)` for `i` in
//! `1..=m`, whatever the storage underneath.
//!
//! Diagrams use matrix coordinates `(row, col)` with row 1 at the top. The
//! Rothe diagram of `w` is what survives after drawing, from every dot
//! `(w(i), i)` of the permutation matrix, a hook that runs east along the row
//! and north up the column:
//!
//! ```text
//! D(w) = {(w(j), i) : i < j, w(i) < w(j)}
//! ```
//!
//! This is the transpose-and-flip of the other common convention, so take care
//! when comparing with tables that draw hooks south and east.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{KlgError, Result};

/// A permutation of `{1..m}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-line notation `w(1), ..., w(m)`.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let m = image.len();
        let mut seen = vec![false; m + 1];
        for &x in &image {
            if x == 0 || x > m || seen[x] {
                return Err(KlgError::InvalidPermutation(format!("{image:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(m: usize) -> Self {
        Permutation { image: (1..=m).collect() }
    }

    /// The longest element `m, m-1, ..., 1` of `S_m`.
    pub fn longest(m: usize) -> Self {
        Permutation { image: (1..=m).rev().collect() }
    }

    /// Parses either a comma-free digit string (only for `m <= 9`) or a
    /// comma-separated list.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let image: Vec<usize> = if text.contains(',') {
            text.split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| KlgError::Parse(format!("{text}: {e}")))?
        } else {
            text.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| KlgError::Parse(format!("{text}: expected digits")))?
        };
        if !text.contains(',') && image.len() > 9 {
            return Err(KlgError::Parse(format!(
                "{text}: use commas for permutations of more than 9 letters"
            )));
        }
        Permutation::new(image)
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    /// `w(i)` for `1 <= i <= m`.
    pub fn at(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.size()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { image: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.size() != other.size() {
            return Err(KlgError::SizeMismatch(format!(
                "cannot compose permutations of sizes {} and {}",
                self.size(),
                other.size()
            )));
        }
        Ok(Permutation {
            image: other.image.iter().map(|&x| self.image[x - 1]).collect(),
        })
    }

    /// Number of inversions, the Coxeter length in `S_m`.
    pub fn inversions(&self) -> usize {
        let m = self.size();
        let mut count = 0;
        for i in 0..m {
            for j in i + 1..m {
                if self.image[i] > self.image[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// True iff there are no positions `i < j < k` with `w(i) < w(j) < w(k)`.
    pub fn is_123_avoiding(&self) -> bool {
        let m = self.size();
        for j in 1..m.saturating_sub(1) {
            let mid = self.image[j];
            let smaller_before = self.image[..j].iter().any(|&x| x < mid);
            let larger_after = self.image[j + 1..].iter().any(|&x| x > mid);
            if smaller_before && larger_after {
                return false;
            }
        }
        true
    }

    fn swap_positions(&mut self, i: usize, j: usize) {
        self.image.swap(i - 1, j - 1);
    }

    fn swap_values(&mut self, a: usize, b: usize) {
        for x in self.image.iter_mut() {
            if *x == a {
                *x = b;
            } else if *x == b {
                *x = a;
            }
        }
    }

    /// Positions `i` with `w(i) < w(j)` for every `j < i`.
    pub fn left_to_right_minima(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut best = usize::MAX;
        for (i, &x) in self.image.iter().enumerate() {
            if x < best {
                best = x;
                out.push(i + 1);
            }
        }
        out
    }

    /// The Rothe diagram, see the module docs for the convention.
    pub fn rothe_diagram(&self) -> Diagram {
        let m = self.size();
        let mut boxes = BTreeSet::new();
        for i in 1..=m {
            for j in i + 1..=m {
                if self.at(i) < self.at(j) {
                    boxes.insert((self.at(j), i));
                }
            }
        }
        Diagram { size: m, boxes }
    }

    /// `r_w(p, q) = |{i <= q : w(i) >= p}|`, the number of dots weakly
    /// southwest of `(p, q)`.
    pub fn rank(&self, p: usize, q: usize) -> Result<usize> {
        let m = self.size();
        if p == 0 || q == 0 || p > m || q > m {
            return Err(KlgError::OutOfRange(format!("rank({p},{q}) in S_{m}")));
        }
        Ok(self.image[..q].iter().filter(|&&x| x >= p).count())
    }

    /// Type A essential set: boxes `(p,q)` of `D(w)` with neither `(p-1,q)`
    /// nor `(p,q+1)` in `D(w)`, sorted by column then row.
    pub fn essential_set_a(&self) -> Vec<EssentialBox> {
        let d = self.rothe_diagram();
        let mut out: Vec<EssentialBox> = d
            .boxes
            .iter()
            .filter(|&&(p, q)| !d.contains(p.wrapping_sub(1), q) && !d.contains(p, q + 1))
            .map(|&(p, q)| EssentialBox {
                p,
                q,
                rank: self.rank(p, q).expect("box lies in range"),
            })
            .collect();
        out.sort_by_key(|b| (b.q, b.p));
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.size() <= 9 {
            for x in &self.image {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.image.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.image.serialize(s)
    }
}

/// A set of boxes in matrix coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub size: usize,
    pub boxes: BTreeSet<(usize, usize)>,
}

impl Diagram {
    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.boxes.contains(&(row, col))
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<[usize; 2]> = self.boxes.iter().map(|&(r, c)| [r, c]).collect();
        v.serialize(s)
    }
}

/// A box of an essential set together with its rank condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EssentialBox {
    pub p: usize,
    pub q: usize,
    pub rank: usize,
}

/// Which group a word lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Generators `s_1..s_{m-1}` of `S_m`.
    TypeA { m: usize },
    /// Generators `c_0..c_{n-1}` of `C_n`.
    TypeC { n: usize },
}

impl Flavor {
    fn valid(&self, k: usize) -> bool {
        match *self {
            Flavor::TypeA { m } => k >= 1 && k < m,
            Flavor::TypeC { n } => k < n,
        }
    }
}

/// A sequence of generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<usize>,
    flavor: Flavor,
}

impl Word {
    pub fn new(letters: Vec<usize>, flavor: Flavor) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&k| !flavor.valid(k)) {
            return Err(KlgError::OutOfRange(format!("letter {bad} for {flavor:?}")));
        }
        Ok(Word { letters, flavor })
    }

    pub fn type_c(letters: Vec<usize>, n: usize) -> Result<Self> {
        Word::new(letters, Flavor::TypeC { n })
    }

    /// Parses letters separated by commas, spaces, or nothing at all.
    pub fn parse_type_c(text: &str, n: usize) -> Result<Self> {
        let text = text.trim().trim_start_matches('(').trim_end_matches(')');
        let letters: Vec<usize> = if text.contains(',') || text.contains(' ') {
            text.split([',', ' '])
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|e| KlgError::Parse(format!("{s}: {e}"))))
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| KlgError::Parse(format!("{text}: expected digits")))
                })
                .collect::<Result<_>>()?
        };
        Word::type_c(letters, n)
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The product `c_{q_1} c_{q_2} ... c_{q_l}` in `C_n`.
    pub fn c_product(&self) -> Result<CnElement> {
        match self.flavor {
            Flavor::TypeC { n } => Ok(self
                .letters
                .iter()
                .fold(CnElement::identity(n), |acc, &k| acc.mul_gen_right(k))),
            Flavor::TypeA { .. } => Err(KlgError::SizeMismatch("expected a type C word".into())),
        }
    }

    /// The product in `S_m` of a type A word.
    pub fn a_product(&self) -> Result<Permutation> {
        match self.flavor {
            Flavor::TypeA { m } => Ok(self
                .letters
                .iter()
                .fold(Permutation::identity(m), |acc, &k| acc.mul_gen_right(k))),
            Flavor::TypeC { .. } => Err(KlgError::SizeMismatch("expected a type A word".into())),
        }
    }

    /// True iff the word is reduced in its group.
    pub fn is_reduced(&self) -> bool {
        match self.flavor {
            Flavor::TypeC { n } => is_reduced_from(&CnElement::identity(n), &self.letters),
            Flavor::TypeA { m } => is_reduced_from(&Permutation::identity(m), &self.letters),
        }
    }
}

fn is_reduced_from<G: Coxeter>(start: &G, letters: &[usize]) -> bool {
    let mut g = start.clone();
    for &k in letters {
        if g.is_right_descent(k) {
            return false;
        }
        g = g.mul_gen_right(k);
    }
    true
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.letters.serialize(s)
    }
}

/// The operations on a Coxeter group element that the generic algorithms
/// below need. Implemented for `S_m` (as [`Permutation`]) and `C_n`.
pub trait Coxeter: Clone + Eq + Hash {
    /// The valid generator indices.
    fn generators(&self) -> std::ops::Range<usize>;
    fn is_right_descent(&self, k: usize) -> bool;
    fn is_left_descent(&self, k: usize) -> bool;
    fn mul_gen_right(&self, k: usize) -> Self;
    fn mul_gen_left(&self, k: usize) -> Self;
    fn coxeter_length(&self) -> usize;
    fn is_one(&self) -> bool;
    fn flavor(&self) -> Flavor;
}

impl Coxeter for Permutation {
    fn generators(&self) -> std::ops::Range<usize> {
        1..self.size().max(1)
    }

    fn is_right_descent(&self, k: usize) -> bool {
        self.at(k) > self.at(k + 1)
    }

    fn is_left_descent(&self, k: usize) -> bool {
        let inv = self.inverse();
        inv.at(k) > inv.at(k + 1)
    }

    fn mul_gen_right(&self, k: usize) -> Self {
        let mut out = self.clone();
        out.swap_positions(k, k + 1);
        out
    }

    fn mul_gen_left(&self, k: usize) -> Self {
        let mut out = self.clone();
        out.swap_values(k, k + 1);
        out
    }

    fn coxeter_length(&self) -> usize {
        self.inversions()
    }

    fn is_one(&self) -> bool {
        self.is_identity()
    }

    fn flavor(&self) -> Flavor {
        Flavor::TypeA { m: self.size() }
    }
}

/// An element of `C_n`, stored as a permutation `v` of `{1..2n}` with
/// `v(2n+1-i) = 2n+1-v(i)`.
///
/// The generator `c_0` is the transposition of `n` and `n+1`; for `k >= 1`,
/// `c_k` transposes `n-k` with `n-k+1` and `n+k` with `n+k+1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CnElement {
    perm: Permutation,
    n: usize,
}

impl CnElement {
    pub fn new(perm: Permutation) -> Result<Self> {
        let m = perm.size();
        if !m.is_multiple_of(2) || m == 0 {
            return Err(KlgError::NotSymplectic {
                n: m / 2,
                detail: format!("{perm} has odd or zero size"),
            });
        }
        for i in 1..=m {
            if perm.at(m + 1 - i) != m + 1 - perm.at(i) {
                return Err(KlgError::NotSymplectic {
                    n: m / 2,
                    detail: format!("{perm} breaks v(2n+1-i) = 2n+1-v(i) at i={i}"),
                });
            }
        }
        Ok(CnElement { perm, n: m / 2 })
    }

    pub fn from_one_line(image: &[usize]) -> Result<Self> {
        CnElement::new(Permutation::new(image.to_vec())?)
    }

    /// Parses a one-line notation and checks it has size `2n`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let p = Permutation::parse(text)?;
        if p.size() != 2 * n {
            return Err(KlgError::SizeMismatch(format!(
                "{text} has {} letters, expected {} for n={n}",
                p.size(),
                2 * n
            )));
        }
        CnElement::new(p)
    }

    pub fn identity(n: usize) -> Self {
        CnElement { perm: Permutation::identity(2 * n), n }
    }

    /// The longest element `w_0 = 2n, ..., 1`.
    pub fn longest(n: usize) -> Self {
        CnElement { perm: Permutation::longest(2 * n), n }
    }

    /// The generator `c_k` as a permutation of size `2n`.
    pub fn generator(k: usize, n: usize) -> Result<Self> {
        if k >= n {
            return Err(KlgError::OutOfRange(format!("c_{k} does not exist in C_{n}")));
        }
        Ok(CnElement::identity(n).mul_gen_right(k))
    }

    /// The square word `n, n-1, ..., 1, 2n, ..., n+1`.
    pub fn square(n: usize) -> Self {
        let mut image: Vec<usize> = (1..=n).rev().collect();
        image.extend((n + 1..=2 * n).rev());
        CnElement { perm: Permutation { image }, n }
    }

    /// Every element of `C_n`, sorted by one-line notation.
    pub fn all(n: usize) -> Vec<CnElement> {
        let mut seen: HashSet<CnElement> = HashSet::new();
        let mut frontier = vec![CnElement::identity(n)];
        seen.insert(CnElement::identity(n));
        while let Some(x) = frontier.pop() {
            for k in 0..n {
                let y = x.mul_gen_right(k);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let mut out: Vec<CnElement> = seen.into_iter().collect();
        out.sort();
        out
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn at(&self, i: usize) -> usize {
        self.perm.at(i)
    }

    pub fn one_line(&self) -> &[usize] {
        self.perm.one_line()
    }

    pub fn inverse(&self) -> Self {
        CnElement { perm: self.perm.inverse(), n: self.n }
    }

    pub fn compose(&self, other: &CnElement) -> Result<Self> {
        Ok(CnElement { perm: self.perm.compose(&other.perm)?, n: self.n })
    }

    /// Coxeter length in `C_n`. Equals `(inv(v) + #{i <= n : v(i) > n}) / 2`,
    /// which agrees with the letter count of [`CnElement::reduced_word`].
    pub fn length(&self) -> usize {
        let neg = (1..=self.n).filter(|&i| self.at(i) > self.n).count();
        (self.perm.inversions() + neg) / 2
    }

    /// A reduced word, built by repeatedly stripping the smallest-index right
    /// descent. The stripped letters are collected from the right, so the
    /// last letter of the result is the smallest right descent of `self`.
    pub fn reduced_word(&self) -> Word {
        reduced_word(self)
    }

    pub fn is_123_avoiding(&self) -> bool {
        self.perm.is_123_avoiding()
    }

    /// Whether `c_k` is an ascent, that is `l(v c_k) > l(v)`.
    pub fn is_ascent(&self, k: usize) -> bool {
        !self.is_right_descent(k)
    }

    /// Right ascents and right descents, each ascending.
    pub fn ascents_descents(&self) -> (Vec<usize>, Vec<usize>) {
        (0..self.n).partition(|&k| self.is_ascent(k))
    }

    /// The largest `k` with `c_k` a right ascent, `None` exactly for `w_0`.
    pub fn last_ascent(&self) -> Option<usize> {
        (0..self.n).rev().find(|&k| self.is_ascent(k))
    }

    pub fn rothe_diagram(&self) -> Diagram {
        self.perm.rothe_diagram()
    }

    pub fn rank_function(&self, p: usize, q: usize) -> Result<usize> {
        self.perm.rank(p, q)
    }

    pub fn essential_set_a(&self) -> Vec<EssentialBox> {
        self.perm.essential_set_a()
    }

    /// Type C essential set: the type A boxes with `p >= n+1`, dropping a box
    /// `(p,q)` with `q >= n+1` when `(p, 2n-q)` is also essential and
    /// `r(p, 2n-q) <= r(p,q) + n - q`.
    pub fn essential_set_c(&self) -> Vec<EssentialBox> {
        let n = self.n as i64;
        let ea = self.essential_set_a();
        ea.iter()
            .filter(|b| b.p > self.n)
            .filter(|b| {
                if b.q <= self.n || b.q >= 2 * self.n {
                    return true;
                }
                let mirror_q = 2 * self.n - b.q;
                match ea.iter().find(|o| o.p == b.p && o.q == mirror_q) {
                    None => true,
                    Some(o) => (o.rank as i64) > b.rank as i64 + n - b.q as i64,
                }
            })
            .copied()
            .collect()
    }

    /// Two-sided weak order comparison with the square word, decided by
    /// stripping left and right descents until `v_□` is reached.
    pub fn two_sided_weak_geq_square(&self) -> bool {
        let target = CnElement::square(self.n);
        let floor = target.length();
        let mut seen = HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(x) = stack.pop() {
            if x == target {
                return true;
            }
            if x.length() <= floor || !seen.insert(x.clone()) {
                continue;
            }
            for k in 0..self.n {
                if x.is_right_descent(k) {
                    stack.push(x.mul_gen_right(k));
                }
                if x.is_left_descent(k) {
                    stack.push(x.mul_gen_left(k));
                }
            }
        }
        false
    }
}

impl Coxeter for CnElement {
    fn generators(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    fn is_right_descent(&self, k: usize) -> bool {
        let n = self.n;
        if k == 0 {
            self.at(n) > self.at(n + 1)
        } else {
            self.at(n + k) > self.at(n + k + 1)
        }
    }

    fn is_left_descent(&self, k: usize) -> bool {
        self.inverse().is_right_descent(k)
    }

    fn mul_gen_right(&self, k: usize) -> Self {
        let n = self.n;
        let mut perm = self.perm.clone();
        if k == 0 {
            perm.swap_positions(n, n + 1);
        } else {
            perm.swap_positions(n - k, n - k + 1);
            perm.swap_positions(n + k, n + k + 1);
        }
        CnElement { perm, n }
    }

    fn mul_gen_left(&self, k: usize) -> Self {
        let n = self.n;
        let mut perm = self.perm.clone();
        if k == 0 {
            perm.swap_values(n, n + 1);
        } else {
            perm.swap_values(n - k, n - k + 1);
            perm.swap_values(n + k, n + k + 1);
        }
        CnElement { perm, n }
    }

    fn coxeter_length(&self) -> usize {
        self.length()
    }

    fn is_one(&self) -> bool {
        self.perm.is_identity()
    }

    fn flavor(&self) -> Flavor {
        Flavor::TypeC { n: self.n }
    }
}

impl fmt::Display for CnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.perm)
    }
}

impl fmt::Debug for CnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}({})", self.n, self.perm)
    }
}

impl Serialize for CnElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.perm.serialize(s)
    }
}

/// Reduced word by stripping the smallest right descent, see
/// [`CnElement::reduced_word`].
pub fn reduced_word<G: Coxeter>(g: &G) -> Word {
    let mut letters = Vec::new();
    let mut x = g.clone();
    while !x.is_one() {
        let k = x
            .generators()
            .find(|&k| x.is_right_descent(k))
            .expect("a non-identity element has a right descent");
        letters.push(k);
        x = x.mul_gen_right(k);
    }
    letters.reverse();
    Word { letters, flavor: g.flavor() }
}

/// Bruhat order by the subword property, walking the reduced word of `v`
/// from its right end: with `s` the last letter, `u <= v` iff `us <= vs`
/// when `s` is a descent of `u`, and iff `u <= vs` otherwise.
pub fn bruhat_leq<G: Coxeter>(u: &G, v: &G) -> bool {
    let mut u = u.clone();
    let mut v = v.clone();
    loop {
        if u.coxeter_length() > v.coxeter_length() {
            return false;
        }
        if v.is_one() {
            return u.is_one();
        }
        if u.is_one() {
            return true;
        }
        let s = v
            .generators()
            .find(|&k| v.is_right_descent(k))
            .expect("non-identity has a descent");
        if u.is_right_descent(s) {
            u = u.mul_gen_right(s);
        }
        v = v.mul_gen_right(s);
    }
}

/// Demazure (0-Hecke) product of the letters: a letter multiplies only when
/// it increases length.
pub fn demazure_product<G: Coxeter>(start: &G, letters: &[usize]) -> G {
    let mut g = start.clone();
    for &k in letters {
        if !g.is_right_descent(k) {
            g = g.mul_gen_right(k);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize, s: &str) -> CnElement {
        CnElement::parse(n, s).unwrap()
    }

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(Permutation::identity(4).compose(&p("2143")).unwrap(), p("2143"));
        assert_eq!(Permutation::longest(6).compose(&p("321654")).unwrap(), p("456123"));
        let c0 = CnElement::generator(0, 3).unwrap();
        assert!(c0.compose(&c0).unwrap().perm().is_identity());
        assert!(p("12").compose(&p("123")).is_err());
    }

    #[test]
    fn generators() {
        assert_eq!(CnElement::generator(0, 3).unwrap(), c(3, "124356"));
        assert_eq!(CnElement::generator(1, 3).unwrap(), c(3, "132546"));
        assert!(CnElement::generator(2, 2).is_err());
    }

    #[test]
    fn lengths() {
        assert_eq!(CnElement::identity(3).length(), 0);
        assert_eq!(p("321654").inversions(), 6);
        assert_eq!(CnElement::longest(3).length(), 9);
    }

    #[test]
    fn reduced_words() {
        assert!(CnElement::identity(2).reduced_word().is_empty());
        assert_eq!(CnElement::generator(0, 2).unwrap().reduced_word().letters(), &[0]);
        let sq = CnElement::square(3);
        let w = sq.reduced_word();
        assert_eq!(w.len(), 3);
        assert_eq!(w.c_product().unwrap(), sq);
    }

    #[test]
    fn bruhat_examples() {
        for v in CnElement::all(2) {
            assert!(bruhat_leq(&CnElement::identity(2), &v));
        }
        assert!(!bruhat_leq(&p("4231"), &p("3412")));
        assert!(bruhat_leq(&CnElement::square(3), &c(3, "635241")));
    }

    #[test]
    fn small_patch_predicates() {
        assert!(CnElement::square(4).two_sided_weak_geq_square());
        assert!(!c(3, "231645").is_123_avoiding());
        assert!(!c(3, "231645").two_sided_weak_geq_square());
        assert!(c(3, "462513").is_123_avoiding());
        assert!(c(3, "462513").two_sided_weak_geq_square());
    }

    #[test]
    fn rothe_and_rank() {
        assert!(Permutation::longest(5).rothe_diagram().is_empty());
        // With hooks running east and north, the identity leaves the whole
        // strictly lower triangle uncovered.
        assert_eq!(Permutation::identity(5).rothe_diagram().len(), 10);
        let d = p("365124").rothe_diagram();
        let want: BTreeSet<_> = [(4, 1), (5, 1), (6, 1), (2, 4), (4, 4), (4, 5)].into_iter().collect();
        assert_eq!(d.boxes, want);
        let w = p("465213");
        assert_eq!(w.rank(5, 1).unwrap(), 0);
        assert_eq!(w.rank(3, 5).unwrap(), 3);
        assert_eq!(w.rank(1, 6).unwrap(), 6);
        assert!(w.rank(0, 1).is_err());
    }

    #[test]
    fn essential_sets() {
        let ea = p("465213").essential_set_a();
        assert_eq!(
            ea,
            vec![EssentialBox { p: 5, q: 1, rank: 0 }, EssentialBox { p: 3, q: 5, rank: 3 }]
        );
        let boxes: BTreeSet<_> = p("426153").essential_set_a().iter().map(|b| (b.p, b.q)).collect();
        assert_eq!(boxes, [(3, 2), (3, 4), (5, 2), (5, 4)].into_iter().collect());
        assert!(Permutation::longest(4).essential_set_a().is_empty());
        let id: Vec<_> = Permutation::identity(3).essential_set_a().iter().map(|b| (b.p, b.q, b.rank)).collect();
        assert_eq!(id, vec![(2, 1, 0), (3, 2, 0)]);

        assert_eq!(c(3, "465213").essential_set_c(), vec![EssentialBox { p: 5, q: 1, rank: 0 }]);
        assert_eq!(c(3, "426153").essential_set_c(), vec![EssentialBox { p: 5, q: 2, rank: 0 }]);
        let w = c(3, "462513");
        let e: Vec<_> = w.essential_set_c().iter().map(|b| (b.p, b.q, b.rank)).collect();
        assert_eq!(e, vec![(5, 1, 0), (5, 3, w.rank_function(5, 3).unwrap())]);
    }

    #[test]
    fn ascents() {
        assert_eq!(CnElement::longest(3).last_ascent(), None);
        let sq = c(2, "2143");
        assert_eq!(sq.ascents_descents(), (vec![0], vec![1]));
        assert_eq!(sq.last_ascent(), Some(0));
        assert_eq!(c(2, "2413").last_ascent(), Some(1));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Permutation::parse("3,1,2").unwrap(), p("312"));
        assert!(Permutation::parse("1123").is_err());
        assert!(CnElement::parse(2, "2134").is_err());
        assert!(CnElement::parse(2, "123").is_err());
    }
}
