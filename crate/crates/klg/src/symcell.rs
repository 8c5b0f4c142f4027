//! Coordinates on small patches: the factorization `v = u_l v_□ u_r`, the
//! generic partial-symmetric matrix, its variable set and torus weights, and
//! Bott–Samelson matrices for cells outside the small patch.
//!
//! Variables are always named `z_ij` with `i <= j`; the two matrix positions
//! holding one variable share that name.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{KlgError, Result};
use crate::polyring::{OrderKind, PolyMatrix, Polynomial, Ring, RingRef, VarRef};
use crate::weyl::{CnElement, Coxeter, Flavor, Permutation, Word};

/// The square word `v_□ = n, n-1, ..., 1, 2n, ..., n+1`.
pub fn square_word(n: usize) -> Result<CnElement> {
    if n < 1 {
        return Err(KlgError::OutOfRange("the square word needs n >= 1".into()));
    }
    Ok(CnElement::square(n))
}

/// A length-additive factorization `v = u_l · v_□ · u_r`, together with the
/// left-to-right minima `a_1 < ... < a_n` and right-to-left maxima
/// `b_1 < ... < b_n` it corresponds to (`a_i = u_r^{-1}(i)`,
/// `b_i = u_r^{-1}(n+i)`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    v: CnElement,
    u_l: CnElement,
    u_r: CnElement,
    a: Vec<usize>,
    b: Vec<usize>,
}

/// Index `k` of the generator `c_k` that transposes `x - 1` and `x`.
fn generator_through(x: usize, n: usize) -> usize {
    if x == n + 1 {
        0
    } else if x > n + 1 {
        x - 1 - n
    } else {
        n + 1 - x
    }
}

impl Factorization {
    /// Factorizes a 123-avoiding `v`. When both `j` and `2n+1-j` are
    /// left-to-right minima, `j <= n` is chosen.
    pub fn new(v: &CnElement) -> Result<Self> {
        let n = v.rank();
        if !v.is_123_avoiding() {
            return Err(KlgError::NotSmallPatch(v.to_string()));
        }
        let minima = v.perm().left_to_right_minima();
        let a: Vec<usize> = minima.iter().copied().filter(|&j| j <= n || !minima.contains(&(2 * n + 1 - j))).collect();
        Factorization::from_minima(v, &a)
    }

    /// Factorizes `v` using a chosen set of left-to-right minima `a`, which
    /// must hold one index from each pair `{j, 2n+1-j}`.
    ///
    /// Left-multiplies by generators until `v(a_k) = n+1-k` for all `k`, then
    /// right-multiplies until `a_k = k`, which leaves `v_□`.
    pub fn from_minima(v: &CnElement, a: &[usize]) -> Result<Self> {
        let n = v.rank();
        let m = 2 * n;
        let minima = v.perm().left_to_right_minima();
        let mut a = a.to_vec();
        a.sort_unstable();
        let valid = a.len() == n
            && a.iter().all(|x| minima.contains(x))
            && a.iter().all(|&x| !a.contains(&(m + 1 - x)));
        if !valid {
            return Err(KlgError::NotSmallPatch(format!(
                "{v}: {a:?} is not a valid choice of left-to-right minima"
            )));
        }
        let mut b: Vec<usize> = (1..=n).map(|i| m + 1 - a[n - i]).collect();

        let mut cur = v.clone();
        let mut alphas = Vec::new();
        while let Some(j) = (1..=n).rev().find(|&k| cur.at(a[k - 1]) > n + 1 - k) {
            let k = generator_through(cur.at(a[j - 1]), n);
            cur = cur.mul_gen_left(k);
            alphas.push(k);
        }
        let mut betas = Vec::new();
        while let Some(j) = (1..=n).find(|&k| a[k - 1] > k) {
            let hi = a[j - 1];
            let k = generator_through(hi, n);
            cur = cur.mul_gen_right(k);
            betas.push(k);
            // The generator swaps positions pairwise; carry the a's and b's along.
            let g = CnElement::generator(k, n)?;
            for x in a.iter_mut().chain(b.iter_mut()) {
                *x = g.at(*x);
            }
            a.sort_unstable();
            b.sort_unstable();
        }
        debug_assert_eq!(cur, CnElement::square(n));

        let u_l = alphas.iter().fold(CnElement::identity(n), |acc, &k| acc.mul_gen_right(k));
        let u_r = betas.iter().rev().fold(CnElement::identity(n), |acc, &k| acc.mul_gen_right(k));
        Factorization::from_parts(&u_l, &u_r)
    }

    /// Every factorization of `v`, one per valid choice of minima.
    pub fn all(v: &CnElement) -> Result<Vec<Self>> {
        let n = v.rank();
        if !v.is_123_avoiding() {
            return Err(KlgError::NotSmallPatch(v.to_string()));
        }
        let minima = v.perm().left_to_right_minima();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let a: Option<Vec<usize>> = (1..=n)
                .map(|j| {
                    let pick = if mask & (1 << (j - 1)) == 0 { j } else { 2 * n + 1 - j };
                    minima.contains(&pick).then_some(pick)
                })
                .collect();
            if let Some(a) = a {
                let f = Factorization::from_minima(v, &a)?;
                if !out.contains(&f) {
                    out.push(f);
                }
            }
        }
        Ok(out)
    }

    /// Builds `v = u_l v_□ u_r` and checks that lengths add.
    pub fn from_parts(u_l: &CnElement, u_r: &CnElement) -> Result<Self> {
        let n = u_l.rank();
        if u_r.rank() != n {
            return Err(KlgError::SizeMismatch("u_l and u_r live in different groups".into()));
        }
        let sq = CnElement::square(n);
        let v = u_l.compose(&sq)?.compose(u_r)?;
        if v.length() != u_l.length() + sq.length() + u_r.length() {
            return Err(KlgError::NotSmallPatch(format!(
                "{u_l} · v_□ · {u_r} is not length-additive"
            )));
        }
        let inv = u_r.inverse();
        let a = (1..=n).map(|i| inv.at(i)).collect();
        let b = (1..=n).map(|i| inv.at(n + i)).collect();
        Ok(Factorization { v, u_l: u_l.clone(), u_r: u_r.clone(), a, b })
    }

    /// The factorization `u_l v_□ (u_r c_k)` of `v c_k`, for an ascent `c_k`.
    /// Keeps `u_l`, so variable names carry over.
    pub fn right_step(&self, k: usize) -> Result<Self> {
        if !self.v.is_ascent(k) {
            return Err(KlgError::OutOfRange(format!("c_{k} is not an ascent of {}", self.v)));
        }
        Factorization::from_parts(&self.u_l, &self.u_r.mul_gen_right(k))
    }

    pub fn v(&self) -> &CnElement {
        &self.v
    }

    pub fn u_l(&self) -> &CnElement {
        &self.u_l
    }

    pub fn u_r(&self) -> &CnElement {
        &self.u_r
    }

    pub fn a_seq(&self) -> &[usize] {
        &self.a
    }

    pub fn b_seq(&self) -> &[usize] {
        &self.b
    }

    pub fn rank(&self) -> usize {
        self.v.rank()
    }

    /// Whether `z_ij` (with `i <= j`) is a coordinate of this patch.
    pub fn has_variable(&self, i: usize, j: usize) -> bool {
        let n = self.rank();
        let inv = self.u_r.inverse();
        i <= j && inv.at(i) < inv.at(2 * n + 1 - j) && self.u_l.at(n + 1 - i) < self.u_l.at(n + j)
    }

    /// The variables of the patch, ascending in the lex order
    /// (`z_ij < z_i'j'` iff `i < i'`, or `i = i'` and `j < j'`).
    pub fn variables(&self) -> Vec<VarRef> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i..=n {
                if self.has_variable(i, j) {
                    out.push(VarRef::grid(i, j));
                }
            }
        }
        out
    }

    /// The largest variable in the lex order, if any.
    pub fn largest_variable(&self) -> Option<VarRef> {
        self.variables().pop()
    }

    /// The largest variable `z_ij` together with `k = j - i`. The generator
    /// `c_k` is an ascent of `v` whose step deletes exactly `z_ij`, so this is
    /// the step that drops the last letter of [`Factorization::canonical_q`].
    /// It need not be the ascent with the largest index: for `v = 362514`
    /// the largest variable is `z22` (so `k = 0`) while `c_2` is also an
    /// ascent.
    pub fn peel(&self) -> Option<(usize, VarRef)> {
        let z = self.largest_variable()?;
        match &z {
            VarRef::Grid { i, j } => Some((j - i, z)),
            VarRef::Named(_) => unreachable!("patch variables are grid variables"),
        }
    }

    /// The polynomial ring on the patch variables.
    pub fn ring(&self, order: OrderKind) -> RingRef {
        Ring::grid(&self.variables(), order)
    }

    /// Matrix positions `(row, col)` of `z_ij`; one position when `i = j`.
    pub fn positions(&self, i: usize, j: usize) -> Vec<(usize, usize)> {
        let n = self.rank();
        let inv = self.u_r.inverse();
        let mut out = vec![(self.u_l.at(n + j), inv.at(i)), (self.u_l.at(n + i), inv.at(j))];
        out.dedup();
        out
    }

    pub fn generic_matrix(&self) -> GenericMatrix {
        let n = self.rank();
        let mut entries = BTreeMap::new();
        for i in 1..=2 * n {
            entries.insert((self.v.at(i), i), Entry::One);
        }
        for z in self.variables() {
            if let VarRef::Grid { i, j } = z {
                for pos in self.positions(i, j) {
                    entries.insert(pos, Entry::Var(z.clone()));
                }
            }
        }
        GenericMatrix { n, entries }
    }

    /// The letters `j - i` over the variables in ascending order, a reduced
    /// word for `w_0 v`.
    pub fn canonical_q(&self) -> Word {
        let letters = self
            .variables()
            .iter()
            .map(|z| match z {
                VarRef::Grid { i, j } => j - i,
                VarRef::Named(_) => unreachable!("patch variables are grid variables"),
            })
            .collect();
        Word::type_c(letters, self.rank()).expect("letters j - i lie in 0..n")
    }

    /// Torus weight `u_l·e_i + u_l·e_j` of `z_ij`.
    pub fn weight(&self, z: &VarRef) -> Result<WeightVector> {
        let (i, j) = self.require_variable(z)?;
        let n = self.rank();
        let mut coeffs = vec![0i64; n];
        for k in [i, j] {
            let (idx, sign) = act_on_basis(&self.u_l, k);
            coeffs[idx - 1] += sign;
        }
        Ok(WeightVector { coeffs })
    }

    /// The variable deleted when passing to `v c_k` for an ascent `c_k`: the
    /// entry at `(v(n+k+1), n+k)`.
    pub fn deleted_variable(&self, k: usize) -> Result<VarRef> {
        let n = self.rank();
        if !self.v.is_ascent(k) {
            return Err(KlgError::OutOfRange(format!("c_{k} is not an ascent of {}", self.v)));
        }
        match self.generic_matrix().entry(self.v.at(n + k + 1), n + k) {
            Entry::Var(z) => Ok(z),
            other => Err(KlgError::OutOfRange(format!("expected a variable, found {other:?}"))),
        }
    }

    fn require_variable(&self, z: &VarRef) -> Result<(usize, usize)> {
        match z {
            VarRef::Grid { i, j } if self.has_variable(*i, *j) => Ok((*i, *j)),
            _ => Err(KlgError::UnknownVariable(z.to_string())),
        }
    }
}

/// `u · e_k` for `k <= n`, as a basis index and a sign.
pub fn act_on_basis(u: &CnElement, k: usize) -> (usize, i64) {
    let n = u.rank();
    let image = u.at(n + k);
    if image <= n {
        (n + 1 - image, -1)
    } else {
        (image - n, 1)
    }
}

/// An integer vector over `e_1..e_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector {
    pub coeffs: Vec<i64>,
}

impl WeightVector {
    pub fn new(coeffs: Vec<i64>) -> Self {
        WeightVector { coeffs }
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            out.push_str(&format!("{sign}{mag}e_{}", k + 1));
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out}")
    }
}

/// A non-zero entry of a generic matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    Zero,
    One,
    Var(VarRef),
}

/// A `2n x 2n` matrix of zeros, ones and variables, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericMatrix {
    n: usize,
    entries: BTreeMap<(usize, usize), Entry>,
}

impl GenericMatrix {
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        2 * self.n
    }

    pub fn entry(&self, row: usize, col: usize) -> Entry {
        self.entries.get(&(row, col)).cloned().unwrap_or(Entry::Zero)
    }

    /// Non-zero entries keyed by position.
    pub fn entries(&self) -> &BTreeMap<(usize, usize), Entry> {
        &self.entries
    }

    pub fn ones(&self) -> Vec<(usize, usize)> {
        self.entries.iter().filter(|(_, e)| **e == Entry::One).map(|(p, _)| *p).collect()
    }

    /// Each variable with its positions, variables ascending.
    pub fn var_positions(&self) -> BTreeMap<VarRef, Vec<(usize, usize)>> {
        let mut out: BTreeMap<VarRef, Vec<(usize, usize)>> = BTreeMap::new();
        for (p, e) in &self.entries {
            if let Entry::Var(z) = e {
                out.entry(z.clone()).or_default().push(*p);
            }
        }
        out
    }

    /// `P(x) · self · P(y)`: row `r` moves to `x(r)` and column `c` to
    /// `y^{-1}(c)`.
    pub fn permute(&self, x: &Permutation, y: &Permutation) -> GenericMatrix {
        let yi = y.inverse();
        let entries =
            self.entries.iter().map(|(&(r, c), e)| ((x.at(r), yi.at(c)), e.clone())).collect();
        GenericMatrix { n: self.n, entries }
    }

    /// Zeroes every variable for which `keep` is false.
    pub fn restrict(&self, keep: impl Fn(&VarRef) -> bool) -> GenericMatrix {
        let entries = self
            .entries
            .iter()
            .filter(|(_, e)| match e {
                Entry::Var(z) => keep(z),
                _ => true,
            })
            .map(|(p, e)| (*p, e.clone()))
            .collect();
        GenericMatrix { n: self.n, entries }
    }

    pub fn to_poly_matrix(&self, ring: &RingRef) -> Result<PolyMatrix> {
        let m = self.size();
        let mut out = PolyMatrix::zeros(ring, m, m);
        for (&(r, c), e) in &self.entries {
            let p = match e {
                Entry::Zero => continue,
                Entry::One => Polynomial::one(ring),
                Entry::Var(z) => Polynomial::var(ring, z)?,
            };
            out.set(r, c, p);
        }
        Ok(out)
    }

    /// Rows top to bottom, `.` for zero, cells padded to a common width.
    pub fn render_ascii(&self) -> String {
        let m = self.size();
        let cell = |r, c| match self.entry(r, c) {
            Entry::Zero => ".".to_string(),
            Entry::One => "1".to_string(),
            Entry::Var(VarRef::Grid { i, j }) => format!("z_{i}{j}"),
            Entry::Var(z) => z.to_string(),
        };
        let width = (1..=m)
            .flat_map(|r| (1..=m).map(move |c| (r, c)))
            .map(|(r, c)| cell(r, c).len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for r in 1..=m {
            let line: Vec<String> = (1..=m).map(|c| format!("{:<width$}", cell(r, c))).collect();
            out.push_str(line.join(" ").trim_end());
            out.push('\n');
        }
        out
    }

    /// `{n, ones: [[r,c]...], vars: [{i, j, positions}...]}`.
    pub fn to_json(&self) -> Value {
        let ones: Vec<[usize; 2]> = self.ones().into_iter().map(|(r, c)| [r, c]).collect();
        let vars: Vec<Value> = self
            .var_positions()
            .into_iter()
            .map(|(z, ps)| {
                let (i, j) = match z {
                    VarRef::Grid { i, j } => (i, j),
                    VarRef::Named(_) => (0, 0),
                };
                let ps: Vec<[usize; 2]> = ps.into_iter().map(|(r, c)| [r, c]).collect();
                json!({"i": i, "j": j, "positions": ps})
            })
            .collect();
        json!({"n": self.n, "ones": ones, "vars": vars})
    }
}

/// Name of the parameter attached to the `occurrence`-th use (1-based) of
/// letter `letter` in a Bott–Samelson word: `a_1, b_1, ...` for letters 0, 1,
/// ... in turn.
pub fn bott_samelson_name(letter: usize, occurrence: usize) -> String {
    let base = (b'a' + letter as u8) as char;
    format!("{base}_{occurrence}")
}

/// The parameters of a Bott–Samelson word, in word order.
pub fn bott_samelson_parameters(q: &Word) -> Vec<VarRef> {
    let mut seen = BTreeMap::new();
    q.letters()
        .iter()
        .map(|&k| {
            let count = seen.entry(k).or_insert(0usize);
            *count += 1;
            VarRef::Named(bott_samelson_name(k, *count))
        })
        .collect()
}

/// `P(w_0) · C_{q_1}(x_1) ··· C_{q_l}(x_l)` for a reduced type C word.
///
/// `C_0(x)` is the identity except for the block `[[x, -1], [1, 0]]` on rows
/// and columns `n, n+1`; for `k >= 1`, `C_k(x)` has `[[x, -1], [1, 0]]` on
/// `n-k, n-k+1` and `[[x, 1], [-1, 0]]` on `n+k, n+k+1`.
///
/// The ring defaults to ranking later parameters higher; pass `ring` to use
/// another ranking, which must contain every parameter.
pub fn bott_samelson_matrix(q: &Word, ring: Option<&RingRef>) -> Result<PolyMatrix> {
    let n = match q.flavor() {
        Flavor::TypeC { n } => n,
        Flavor::TypeA { .. } => return Err(KlgError::SizeMismatch("expected a type C word".into())),
    };
    if !q.is_reduced() {
        return Err(KlgError::NotReduced(q.to_string()));
    }
    let params = bott_samelson_parameters(q);
    let ring = match ring {
        Some(r) => r.clone(),
        None => {
            let ranking: Vec<VarRef> = params.iter().rev().cloned().collect();
            Ring::ranked(&ranking, OrderKind::Lex)?
        }
    };
    let m = 2 * n;
    let mut acc = PolyMatrix::zeros(&ring, m, m);
    for c in 1..=m {
        acc.set(m + 1 - c, c, Polynomial::one(&ring));
    }
    let one = Polynomial::one(&ring);
    let neg = -&one;
    for (&k, x) in q.letters().iter().zip(params.iter()) {
        let xv = Polynomial::var(&ring, x)?;
        let mut g = PolyMatrix::identity(&ring, m);
        let mut block = |top: usize, flip: bool| {
            g.set(top, top, xv.clone());
            g.set(top, top + 1, if flip { one.clone() } else { neg.clone() });
            g.set(top + 1, top, if flip { neg.clone() } else { one.clone() });
            g.set(top + 1, top + 1, Polynomial::zero(&ring));
        };
        if k == 0 {
            block(n, false);
        } else {
            block(n - k, false);
            block(n + k, true);
        }
        acc = acc.mul(&g)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize, s: &str) -> CnElement {
        CnElement::parse(n, s).unwrap()
    }

    fn z(i: usize, j: usize) -> VarRef {
        VarRef::grid(i, j)
    }

    #[test]
    fn square_words() {
        assert_eq!(square_word(2).unwrap(), c(2, "2143"));
        assert_eq!(square_word(3).unwrap(), c(3, "321654"));
        assert_eq!(square_word(1).unwrap(), c(1, "12"));
        assert!(square_word(0).is_err());
    }

    #[test]
    fn factorizations() {
        let sq = Factorization::new(&c(3, "321654")).unwrap();
        assert!(sq.u_l().perm().is_identity() && sq.u_r().perm().is_identity());

        let f = Factorization::new(&c(3, "642531")).unwrap();
        assert_eq!(f.u_l(), &c(3, "246135"));
        assert!(f.u_r().perm().is_identity());
        assert_eq!(f.a_seq(), &[1, 2, 3]);
        assert_eq!(f.b_seq(), &[4, 5, 6]);

        let g = Factorization::from_minima(&c(3, "642531"), &[2, 3, 6]).unwrap();
        assert_eq!(g.u_l(), &c(3, "124356"));
        assert_eq!(g.u_r(), &c(3, "412563"));
        assert_eq!(g.b_seq(), &[1, 4, 5]);

        let h = Factorization::new(&c(3, "462513")).unwrap();
        assert_eq!(h.u_l(), &CnElement::generator(0, 3).unwrap());
        assert_eq!(h.u_r(), &c(3, "124356").mul_gen_right(1));
        assert_eq!(h.v(), &c(3, "462513"));

        assert!(matches!(Factorization::new(&c(3, "231645")), Err(KlgError::NotSmallPatch(_))));
    }

    #[test]
    fn generic_matrices() {
        let f = Factorization::new(&c(3, "642531")).unwrap();
        assert_eq!(
            f.generic_matrix().render_ascii(),
            ".    .    .    .    .    1\n\
             .    .    1    .    .    .\n\
             .    .    z_23 .    1    .\n\
             .    1    .    .    .    .\n\
             .    z_23 z_33 1    .    .\n\
             1    .    .    .    .    .\n"
        );
        let w0 = Factorization::new(&CnElement::longest(3)).unwrap();
        assert!(w0.variables().is_empty());
        assert_eq!(w0.generic_matrix().ones().len(), 6);
    }

    #[test]
    fn variables_and_words() {
        let sq = Factorization::new(&CnElement::square(3)).unwrap();
        assert_eq!(sq.variables(), vec![z(1, 1), z(1, 2), z(1, 3), z(2, 2), z(2, 3), z(3, 3)]);
        assert_eq!(sq.canonical_q().letters(), &[0, 1, 2, 0, 1, 0]);
        let f = Factorization::new(&c(3, "642531")).unwrap();
        assert_eq!(f.variables(), vec![z(2, 3), z(3, 3)]);
        assert_eq!(f.canonical_q().letters(), &[1, 0]);
        assert!(Factorization::new(&CnElement::longest(3)).unwrap().canonical_q().is_empty());
    }

    #[test]
    fn weights() {
        let sq = Factorization::new(&CnElement::square(3)).unwrap();
        assert_eq!(sq.weight(&z(1, 2)).unwrap(), WeightVector::new(vec![1, 1, 0]));
        let f = Factorization::new(&c(3, "642531")).unwrap();
        assert_eq!(f.weight(&z(2, 3)).unwrap(), WeightVector::new(vec![-1, 1, 0]));
        assert_eq!(f.weight(&z(3, 3)).unwrap(), WeightVector::new(vec![0, 2, 0]));
        assert_eq!(f.weight(&z(2, 3)).unwrap().to_string(), "-e_1+e_2");
        assert!(f.weight(&z(1, 1)).is_err());
        // The same positions under the second factorization carry the same weights.
        let g = Factorization::from_minima(&c(3, "642531"), &[2, 3, 6]).unwrap();
        assert_eq!(g.variables(), vec![z(1, 2), z(2, 2)]);
        assert_eq!(g.weight(&z(1, 2)).unwrap(), f.weight(&z(2, 3)).unwrap());
        assert_eq!(g.weight(&z(2, 2)).unwrap(), f.weight(&z(3, 3)).unwrap());
    }

    #[test]
    fn deleted_variables() {
        let sq = Factorization::new(&CnElement::square(2)).unwrap();
        assert_eq!(sq.deleted_variable(0).unwrap(), z(2, 2));
        assert!(sq.deleted_variable(1).is_err());
        let step = sq.right_step(0).unwrap();
        assert_eq!(step.v(), &c(2, "2413"));
        assert_eq!(step.variables(), vec![z(1, 1), z(1, 2)]);
    }

    #[test]
    fn bott_samelson_shape() {
        let empty = Word::type_c(vec![], 3).unwrap();
        let m = bott_samelson_matrix(&empty, None).unwrap();
        for r in 1..=6 {
            for col in 1..=6 {
                let want = if r + col == 7 { "1" } else { "0" };
                assert_eq!(m.get(r, col).to_string(), want);
            }
        }
        let bad = Word::type_c(vec![0, 0], 2).unwrap();
        assert!(matches!(bott_samelson_matrix(&bad, None), Err(KlgError::NotReduced(_))));
        let q = Word::type_c(vec![0, 1, 0, 2, 1, 0, 2], 3).unwrap();
        let names: Vec<String> = bott_samelson_parameters(&q).iter().map(|v| v.to_string()).collect();
        assert_eq!(names, ["a_1", "b_1", "a_2", "c_1", "b_2", "a_3", "c_2"]);
    }
}
