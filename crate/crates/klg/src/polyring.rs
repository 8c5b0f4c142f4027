//! Sparse multivariate polynomials over the rationals, lex and graded-lex
//! monomial orders, determinants of polynomial matrices, and a Buchberger
//! engine used both to verify Gröbner bases and to complete them.
//!
//! A [`Ring`] fixes a finite list of variables ranked from largest to
//! smallest. Monomials store one exponent per variable in that slot order, so
//! the derived `Ord` on [`Monomial`] is the monomial order itself and term
//! maps can be plain `BTreeMap`s.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{KlgError, Result};

/// Exact coefficient type.
pub type Coeff = BigRational;

/// Largest number of variables a ring can hold.
pub const MAX_VARS: usize = 32;

/// A variable: either a Kazhdan–Lusztig coordinate `z_ij` with `i <= j`, or a
/// named parameter such as `a_1` or `c_2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarRef {
    Grid { i: usize, j: usize },
    Named(String),
}

impl VarRef {
    /// `z_ij`, with the indices swapped into `i <= j` if needed.
    pub fn grid(i: usize, j: usize) -> Self {
        VarRef::Grid { i: i.min(j), j: i.max(j) }
    }

    pub fn named(name: &str) -> Self {
        VarRef::Named(name.to_string())
    }

    /// Accepts `z12`, `z_1_2` and `z_{1,2}` for grid variables; anything else
    /// is a named variable.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() {
            return Err(KlgError::Parse("empty variable name".into()));
        }
        if let Some(rest) = t.strip_prefix('z') {
            let digits: Vec<usize> = if rest.starts_with('_') || rest.starts_with('{') {
                rest.split(|c: char| !c.is_ascii_digit())
                    .filter(|s| !s.is_empty())
                    .filter_map(|s| s.parse().ok())
                    .collect()
            } else if rest.len() == 2 && rest.chars().all(|c| c.is_ascii_digit()) {
                rest.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()
            } else {
                Vec::new()
            };
            if digits.len() == 2 && digits[0] >= 1 && digits[1] >= 1 {
                return Ok(VarRef::grid(digits[0], digits[1]));
            }
        }
        Ok(VarRef::Named(t.to_string()))
    }

    /// Key used in JSON exponent maps.
    pub fn json_key(&self) -> String {
        match self {
            VarRef::Grid { i, j } => format!("z_{i}_{j}"),
            VarRef::Named(s) => s.clone(),
        }
    }
}

impl fmt::Display for VarRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarRef::Grid { i, j } if *i < 10 && *j < 10 => write!(f, "z{i}{j}"),
            VarRef::Grid { i, j } => write!(f, "z_{{{i},{j}}}"),
            VarRef::Named(s) => write!(f, "{s}"),
        }
    }
}

impl Serialize for VarRef {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.json_key())
    }
}

/// Which monomial order a ring uses. Both compare variables by rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    /// Total degree first, then lex.
    GradedLex,
}

impl OrderKind {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "lex" => Ok(OrderKind::Lex),
            "grlex" => Ok(OrderKind::GradedLex),
            other => Err(KlgError::Parse(format!("unknown order {other}"))),
        }
    }
}

/// A polynomial ring with a fixed ranked variable list and monomial order.
#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    vars: Vec<VarRef>,
    slot: HashMap<VarRef, usize>,
    order: OrderKind,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    /// Builds a ring. Listed variables of `ranking` come first, largest
    /// first; any remaining grid variables follow, ranked so that `z_ij >
    /// z_i'j'` iff `i > i'`, or `i = i'` and `j > j'`. Named variables must
    /// appear in `ranking`.
    pub fn new(vars: &[VarRef], ranking: &[VarRef], order: OrderKind) -> Result<RingRef> {
        let mut ordered: Vec<VarRef> = Vec::new();
        for r in ranking {
            if vars.contains(r) && !ordered.contains(r) {
                ordered.push(r.clone());
            }
        }
        let mut grid: Vec<VarRef> = Vec::new();
        for v in vars {
            if ordered.contains(v) || grid.contains(v) {
                continue;
            }
            match v {
                VarRef::Grid { .. } => grid.push(v.clone()),
                VarRef::Named(_) => return Err(KlgError::UnrankedVariable(v.to_string())),
            }
        }
        grid.sort();
        grid.reverse();
        ordered.extend(grid);
        if ordered.len() > MAX_VARS {
            return Err(KlgError::SizeMismatch(format!(
                "{} variables exceed the limit of {MAX_VARS}",
                ordered.len()
            )));
        }
        let slot = ordered.iter().enumerate().map(|(k, v)| (v.clone(), k)).collect();
        Ok(Arc::new(Ring { vars: ordered, slot, order }))
    }

    /// A ring of grid variables only.
    pub fn grid(vars: &[VarRef], order: OrderKind) -> RingRef {
        Ring::new(vars, &[], order).expect("grid variables always have a rank")
    }

    /// A ring whose variables are exactly `ranking`, largest first.
    pub fn ranked(ranking: &[VarRef], order: OrderKind) -> Result<RingRef> {
        Ring::new(ranking, ranking, order)
    }

    /// Variables from largest to smallest.
    pub fn vars(&self) -> &[VarRef] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> OrderKind {
        self.order
    }

    pub fn slot_of(&self, v: &VarRef) -> Result<usize> {
        self.slot.get(v).copied().ok_or_else(|| KlgError::UnknownVariable(v.to_string()))
    }

    pub fn contains(&self, v: &VarRef) -> bool {
        self.slot.contains_key(v)
    }

    fn graded(&self) -> bool {
        self.order == OrderKind::GradedLex
    }

    /// The same variables under another order.
    pub fn with_order(&self, order: OrderKind) -> RingRef {
        Arc::new(Ring { vars: self.vars.clone(), slot: self.slot.clone(), order })
    }

    pub fn monomial(&self, powers: &[(VarRef, u8)]) -> Result<Monomial> {
        let mut exps = [0u8; MAX_VARS];
        for (v, e) in powers {
            let k = self.slot_of(v)?;
            exps[k] = exps[k].checked_add(*e).ok_or_else(|| {
                KlgError::OutOfRange(format!("exponent of {v} exceeds 255"))
            })?;
        }
        Ok(Monomial::from_exps(exps, self.graded()))
    }
}

/// A monomial in a [`Ring`]: one exponent per variable slot, slot 0 being the
/// largest variable. The derived order compares `deg_key` (zero under lex,
/// the total degree under graded-lex) and then exponents slot by slot.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg_key: u16,
    exps: [u8; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { deg_key: 0, exps: [0; MAX_VARS] }
    }

    fn from_exps(exps: [u8; MAX_VARS], graded: bool) -> Self {
        let deg_key = if graded { exps.iter().map(|&e| e as u16).sum() } else { 0 };
        Monomial { deg_key, exps }
    }

    pub fn exps(&self) -> &[u8; MAX_VARS] {
        &self.exps
    }

    pub fn exponent(&self, slot: usize) -> u8 {
        self.exps[slot]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = other.exps;
        for (e, s) in exps.iter_mut().zip(self.exps.iter()) {
            *e -= s;
        }
        Some(Monomial { deg_key: other.deg_key - self.deg_key, exps })
    }

    pub fn lcm(&self, other: &Monomial, graded: bool) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = (*e).max(*o);
        }
        Monomial::from_exps(exps, graded)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Slots with a positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..MAX_VARS).filter(|&k| self.exps[k] > 0).collect()
    }

    pub fn display_in(&self, ring: &Ring) -> String {
        let mut parts = Vec::new();
        // Smallest variable first, so z_ij products read in index order.
        for (k, v) in ring.vars.iter().enumerate().rev() {
            match self.exps[k] {
                0 => {}
                1 => parts.push(v.to_string()),
                e => parts.push(format!("{v}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Sparse `variable -> exponent` view.
    pub fn to_map(&self, ring: &Ring) -> BTreeMap<VarRef, u32> {
        ring.vars
            .iter()
            .enumerate()
            .filter(|(k, _)| self.exps[*k] > 0)
            .map(|(k, v)| (v.clone(), self.exps[k] as u32))
            .collect()
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, r) in exps.iter_mut().zip(rhs.exps.iter()) {
            *e = e.checked_add(*r).expect("monomial exponent overflow");
        }
        Monomial { deg_key: self.deg_key + rhs.deg_key, exps }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |k| k + 1);
        write!(f, "Monomial{:?}", &self.exps[..last])
    }
}

/// A polynomial with exact rational coefficients in a fixed ring.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: RingRef,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &RingRef, c: Coeff) -> Self {
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn from_int(ring: &RingRef, c: i64) -> Self {
        Polynomial::constant(ring, Coeff::from_integer(BigInt::from(c)))
    }

    pub fn one(ring: &RingRef) -> Self {
        Polynomial::from_int(ring, 1)
    }

    pub fn var(ring: &RingRef, v: &VarRef) -> Result<Self> {
        let m = ring.monomial(&[(v.clone(), 1)])?;
        Ok(Polynomial::term(ring, m, Coeff::one()))
    }

    pub fn term(ring: &RingRef, m: Monomial, c: Coeff) -> Self {
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Coeff> {
        &self.terms
    }

    /// Terms from largest to smallest in the ring's order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter().rev()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The nonzero constant term if this polynomial is a constant.
    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Result<(Monomial, Coeff)> {
        self.terms
            .iter()
            .next_back()
            .map(|(m, c)| (*m, c.clone()))
            .ok_or(KlgError::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Result<Monomial> {
        self.terms.keys().next_back().copied().ok_or(KlgError::ZeroPolynomial)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, d)| (*m, d * c)).collect(),
        }
    }

    /// Multiplies by `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Self {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, d)| (*k * *m, d * c)).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.terms.values().next_back() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    fn add_term_in_place(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * m * other`.
    pub fn add_scaled_in_place(&mut self, other: &Polynomial, m: &Monomial, c: &Coeff) {
        self.check_ring(other);
        for (k, d) in &other.terms {
            self.add_term_in_place(*k * *m, d * c);
        }
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring,
            "polynomials from different rings"
        );
    }

    /// Substitutes polynomials (all in a common target ring) for variables.
    pub fn substitute(&self, target: &RingRef, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (k, img) in images.iter().enumerate() {
                for _ in 0..m.exps[k] {
                    t = &t * img;
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Re-expresses the polynomial in another ring containing its variables.
    pub fn change_ring(&self, target: &RingRef) -> Result<Polynomial> {
        let map: Vec<usize> =
            self.ring.vars.iter().map(|v| target.slot_of(v)).collect::<Result<_>>()?;
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut exps = [0u8; MAX_VARS];
            for (k, &to) in map.iter().enumerate() {
                exps[to] = m.exps[k];
            }
            out.add_term_in_place(Monomial::from_exps(exps, target.graded()), c.clone());
        }
        Ok(out)
    }

    /// JSON form: `[{"coeff": "p/q", "exps": {"z_1_2": 1}}]`, largest term first.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms_desc()
                .map(|(m, c)| {
                    let exps: serde_json::Map<String, Value> = m
                        .to_map(&self.ring)
                        .into_iter()
                        .map(|(v, e)| (v.json_key(), json!(e)))
                        .collect();
                    json!({"coeff": c.to_string(), "exps": exps})
                })
                .collect(),
        )
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms_desc() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.display_in(&self.ring))?;
            } else {
                write!(f, "{abs}*{}", m.display_in(&self.ring))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled_in_place(rhs, &Monomial::one(), &Coeff::one());
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled_in_place(rhs, &Monomial::one(), &-Coeff::one());
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Coeff::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            out.add_scaled_in_place(rhs, m, c);
        }
        out
    }
}

/// A dense matrix of polynomials over one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(ring: &RingRef, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, entries: vec![Polynomial::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &RingRef, size: usize) -> Self {
        let mut m = PolyMatrix::zeros(ring, size, size);
        for k in 1..=size {
            m.set(k, k, Polynomial::one(ring));
        }
        m
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    /// Entry at 1-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[(row - 1) * self.cols + (col - 1)]
    }

    pub fn set(&mut self, row: usize, col: usize, p: Polynomial) {
        self.entries[(row - 1) * self.cols + (col - 1)] = p;
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != rhs.rows {
            return Err(KlgError::SizeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = PolyMatrix::zeros(&self.ring, self.rows, rhs.cols);
        for r in 1..=self.rows {
            for c in 1..=rhs.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 1..=self.cols {
                    let a = self.get(r, k);
                    let b = rhs.get(k, c);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// Determinant of the submatrix on the given 1-based rows and columns.
    ///
    /// Expands along rows from the last one up, memoizing the minor of the
    /// leading rows on each column subset, and skips zero entries. Costs at
    /// most `k * 2^k` polynomial products for a `k x k` minor and far fewer
    /// on sparse matrices.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Polynomial> {
        if rows.len() != cols.len() {
            return Err(KlgError::SizeMismatch(format!(
                "minor with {} rows and {} columns",
                rows.len(),
                cols.len()
            )));
        }
        if rows.len() > 63 {
            return Err(KlgError::SizeMismatch("minor larger than 63".into()));
        }
        for &r in rows {
            if r == 0 || r > self.rows {
                return Err(KlgError::OutOfRange(format!("row {r}")));
            }
        }
        for &c in cols {
            if c == 0 || c > self.cols {
                return Err(KlgError::OutOfRange(format!("column {c}")));
            }
        }
        let k = rows.len();
        if k == 0 {
            return Ok(Polynomial::one(&self.ring));
        }
        let full: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        let mut memo: HashMap<u64, Polynomial> = HashMap::new();
        Ok(self.minor_rec(rows, cols, full, &mut memo))
    }

    fn minor_rec(
        &self,
        rows: &[usize],
        cols: &[usize],
        mask: u64,
        memo: &mut HashMap<u64, Polynomial>,
    ) -> Polynomial {
        let depth = mask.count_ones() as usize;
        if depth == 0 {
            return Polynomial::one(&self.ring);
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        // Expand along row `depth` of the selected rows; the column taken is
        // the `pos`-th selected column, giving sign (-1)^(depth-1 + pos).
        let row = rows[depth - 1];
        let mut out = Polynomial::zero(&self.ring);
        let mut pos = 0;
        for (bit, &col) in cols.iter().enumerate() {
            if mask & (1 << bit) == 0 {
                continue;
            }
            let entry = self.get(row, col);
            if !entry.is_zero() {
                let sub = self.minor_rec(rows, cols, mask & !(1 << bit), memo);
                if !sub.is_zero() {
                    let prod = entry * &sub;
                    if (depth - 1 + pos).is_multiple_of(2) {
                        out = &out + &prod;
                    } else {
                        out = &out - &prod;
                    }
                }
            }
            pos += 1;
        }
        memo.insert(mask, out.clone());
        out
    }

    /// All `size x size` minors on subsets of the given rows and columns,
    /// with the row and column sets that produced each one.
    pub fn minors_of_size(
        &self,
        rows: &[usize],
        cols: &[usize],
        size: usize,
    ) -> Result<Vec<(Vec<usize>, Vec<usize>, Polynomial)>> {
        let mut out = Vec::new();
        for rs in subsets(rows, size) {
            for cs in subsets(cols, size) {
                let p = self.minor(&rs, &cs)?;
                out.push((rs.clone(), cs, p));
            }
        }
        Ok(out)
    }

    /// Renders entries in a padded grid, `0` shown as `.`.
    pub fn render(&self) -> String {
        let cells: Vec<String> = self
            .entries
            .iter()
            .map(|p| if p.is_zero() { ".".to_string() } else { p.to_string() })
            .collect();
        let width = cells.iter().map(|s| s.chars().count()).max().unwrap_or(1);
        let mut out = String::new();
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|c| format!("{:>width$}", cells[r * self.cols + c]))
                .collect();
            out.push_str(line.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

/// All `k`-element subsets of `items`, in lexicographic order of positions.
pub fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= items.len() {
        go(items, k, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// Normal form of `p` modulo `gens` by full multivariate division: no term of
/// the result is divisible by a leading monomial of a generator.
pub fn reduce(p: &Polynomial, gens: &[Polynomial]) -> Polynomial {
    let leads: Vec<(Monomial, Coeff)> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.leading_term().expect("nonzero"))
        .collect();
    let nonzero: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    reduce_with(p, &nonzero, &leads, &mut None).expect("no budget")
}

fn reduce_with(
    p: &Polynomial,
    gens: &[&Polynomial],
    leads: &[(Monomial, Coeff)],
    budget: &mut Option<&mut Budget>,
) -> Result<Polynomial> {
    let mut work = p.clone();
    let mut rem = Polynomial::zero(&p.ring);
    while let Some((m, c)) = work.terms.iter().next_back().map(|(m, c)| (*m, c.clone())) {
        let hit = leads.iter().position(|(lm, _)| lm.divides(&m));
        match hit {
            Some(k) => {
                if let Some(b) = budget.as_deref_mut() {
                    b.spend()?;
                }
                let q = leads[k].0.quotient_of(&m).expect("divides");
                let factor = -(&c / &leads[k].1);
                work.add_scaled_in_place(gens[k], &q, &factor);
            }
            None => {
                work.terms.remove(&m);
                rem.terms.insert(m, c);
            }
        }
    }
    Ok(rem)
}

/// The S-polynomial `lcm/LT(f) * f - lcm/LT(g) * g`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    let (mf, cf) = f.leading_term()?;
    let (mg, cg) = g.leading_term()?;
    let l = mf.lcm(&mg, f.ring.graded());
    let mut out = f.mul_term(&mf.quotient_of(&l).expect("lcm"), &cf.recip());
    out.add_scaled_in_place(g, &mg.quotient_of(&l).expect("lcm"), &-cg.recip());
    Ok(out)
}

/// Counts division steps against a cap.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Budget { limit: u64::MAX, used: 0 }
    }

    fn spend(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(KlgError::BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

/// An S-pair whose remainder is nonzero. Indices refer to the input list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailingPair {
    pub first: usize,
    pub second: usize,
    pub remainder: Polynomial,
}

/// Outcome of [`is_groebner`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerCheck {
    pub is_groebner: bool,
    pub failing: Option<FailingPair>,
    /// Pairs whose S-polynomial was actually reduced.
    pub pairs_reduced: usize,
    /// Pairs skipped by the coprime or chain criterion.
    pub pairs_skipped: usize,
}

/// Prepares a generator list: drops zeros, makes every generator monic and
/// removes duplicates, remembering the first input index of each survivor.
fn normalize(gens: &[Polynomial]) -> (Vec<Polynomial>, Vec<usize>) {
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut origin = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let m = g.monic();
        if !basis.contains(&m) {
            basis.push(m);
            origin.push(k);
        }
    }
    (basis, origin)
}

/// Decides whether `gens` is a Gröbner basis of the ideal it generates, by
/// Buchberger's criterion. Pairs with coprime leading monomials are skipped,
/// and so is a pair `(i, j)` when some `k` has `LM(k) | lcm(LM(i), LM(j))`
/// and both `(i, k)` and `(j, k)` were already handled.
///
/// Stops at the first S-pair with a nonzero remainder and reports it.
pub fn is_groebner(gens: &[Polynomial], budget: &mut Budget) -> Result<GroebnerCheck> {
    let (basis, origin) = normalize(gens);
    let leads: Vec<(Monomial, Coeff)> =
        basis.iter().map(|g| g.leading_term().expect("nonzero")).collect();
    let refs: Vec<&Polynomial> = basis.iter().collect();
    let graded = gens.first().is_some_and(|g| g.ring.graded());
    let nb = basis.len();
    let mut done = vec![vec![false; nb]; nb];
    let mut pairs: Vec<(usize, usize, Monomial)> = Vec::new();
    for j in 0..nb {
        for i in 0..j {
            pairs.push((i, j, leads[i].0.lcm(&leads[j].0, graded)));
        }
    }
    pairs.sort_by_key(|&(i, j, l)| (l.degree(), l, i, j));
    let mut check = GroebnerCheck { is_groebner: true, failing: None, pairs_reduced: 0, pairs_skipped: 0 };
    for (i, j, l) in pairs {
        let skip = leads[i].0.is_coprime(&leads[j].0)
            || (0..nb).any(|k| k != i && k != j && done[i][k] && done[j][k] && leads[k].0.divides(&l));
        if skip {
            check.pairs_skipped += 1;
        } else {
            let s = s_polynomial(&basis[i], &basis[j])?;
            let r = reduce_with(&s, &refs, &leads, &mut Some(budget))?;
            check.pairs_reduced += 1;
            if !r.is_zero() {
                check.is_groebner = false;
                check.failing = Some(FailingPair { first: origin[i], second: origin[j], remainder: r });
                return Ok(check);
            }
        }
        done[i][j] = true;
        done[j][i] = true;
    }
    Ok(check)
}

/// Completes `gens` to the reduced Gröbner basis of the ideal they generate,
/// using the normal selection strategy (smallest lcm first) with the coprime
/// and chain criteria. The result is monic and sorted by leading monomial,
/// largest first.
pub fn buchberger_completion(gens: &[Polynomial], budget: &mut Budget) -> Result<Vec<Polynomial>> {
    let (mut basis, _) = normalize(gens);
    if basis.is_empty() {
        return Ok(basis);
    }
    let graded = basis[0].ring.graded();
    let mut leads: Vec<(Monomial, Coeff)> =
        basis.iter().map(|g| g.leading_term().expect("nonzero")).collect();
    let mut queue: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            queue.push((i, j));
        }
    }
    while !queue.is_empty() {
        let best = (0..queue.len())
            .min_by_key(|&q| {
                let (i, j) = queue[q];
                let l = leads[i].0.lcm(&leads[j].0, graded);
                (l.degree(), l, j, i)
            })
            .expect("nonempty");
        let (i, j) = queue.swap_remove(best);
        let l = leads[i].0.lcm(&leads[j].0, graded);
        if leads[i].0.is_coprime(&leads[j].0) {
            continue;
        }
        let pending = |a: usize, b: usize, q: &[(usize, usize)]| {
            q.iter().any(|&(x, y)| (x, y) == (a.min(b), a.max(b)))
        };
        let chain = (0..basis.len()).any(|k| {
            k != i && k != j && leads[k].0.divides(&l) && !pending(i, k, &queue) && !pending(j, k, &queue)
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j])?;
        let refs: Vec<&Polynomial> = basis.iter().collect();
        let r = reduce_with(&s, &refs, &leads, &mut Some(budget))?;
        if !r.is_zero() {
            let r = r.monic();
            let new = basis.len();
            leads.push(r.leading_term().expect("nonzero"));
            basis.push(r);
            for k in 0..new {
                queue.push((k, new));
            }
        }
    }
    Ok(reduced_basis(basis))
}

/// Interreduces a Gröbner basis into the reduced one.
fn reduced_basis(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let leads: Vec<Monomial> = basis.iter().map(|g| g.leading_monomial().expect("nonzero")).collect();
    let mut keep: Vec<Polynomial> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = leads.iter().enumerate().any(|(o, lm)| {
            o != k && lm.divides(&leads[k]) && (lm != &leads[k] || o < k)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut out = Vec::new();
    for k in 0..keep.len() {
        let others: Vec<Polynomial> =
            keep.iter().enumerate().filter(|(o, _)| *o != k).map(|(_, g)| g.clone()).collect();
        let (lm, lc) = keep[k].leading_term().expect("nonzero");
        let mut tail = keep[k].clone();
        tail.terms.remove(&lm);
        let mut g = reduce(&tail, &others);
        g.add_term_in_place(lm, lc);
        out.push(g.monic());
    }
    out.sort_by(|a, b| b.leading_monomial().unwrap().cmp(&a.leading_monomial().unwrap()));
    out
}

/// Minimal generators of the ideal of leading monomials of `gb`, largest
/// first.
pub fn initial_ideal(gb: &[Polynomial]) -> Vec<Monomial> {
    let leads: Vec<Monomial> = gb.iter().filter_map(|g| g.leading_monomial().ok()).collect();
    minimalize(&leads)
}

/// Removes monomials divisible by another one in the list, and duplicates.
pub fn minimalize(monos: &[Monomial]) -> Vec<Monomial> {
    let mut sorted: Vec<Monomial> = monos.to_vec();
    sorted.sort_by_key(|m| (m.degree(), *m));
    sorted.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in sorted {
        if !out.iter().any(|o| o.divides(&m)) {
            out.push(m);
        }
    }
    out.sort();
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: usize, j: usize) -> VarRef {
        VarRef::grid(i, j)
    }

    fn sym3(order: OrderKind) -> (RingRef, PolyMatrix) {
        let vars: Vec<VarRef> = [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)]
            .iter()
            .map(|&(i, j)| z(i, j))
            .collect();
        let ring = Ring::grid(&vars, order);
        let mut m = PolyMatrix::zeros(&ring, 3, 3);
        for i in 1..=3 {
            for j in 1..=3 {
                m.set(i, j, Polynomial::var(&ring, &z(i, j)).unwrap());
            }
        }
        (ring, m)
    }

    #[test]
    fn ranking() {
        let ring = Ring::grid(&[z(2, 3), z(3, 3), z(1, 1)], OrderKind::Lex);
        assert_eq!(ring.vars(), &[z(3, 3), z(2, 3), z(1, 1)]);
        let a = ring.monomial(&[(z(3, 3), 1)]).unwrap();
        let b = ring.monomial(&[(z(2, 3), 1)]).unwrap();
        assert!(a > b);
        let named = Ring::new(&[VarRef::named("a_1"), z(1, 1)], &[], OrderKind::Lex);
        assert!(matches!(named, Err(KlgError::UnrankedVariable(_))));
        let ranked =
            Ring::ranked(&[VarRef::named("c_2"), VarRef::named("a_3")], OrderKind::Lex).unwrap();
        let c2 = ranked.monomial(&[(VarRef::named("c_2"), 1)]).unwrap();
        let a3 = ranked.monomial(&[(VarRef::named("a_3"), 1)]).unwrap();
        assert!(c2 > a3);
    }

    #[test]
    fn divisibility_beats_nothing() {
        let ring = Ring::grid(&[z(1, 1), z(1, 2)], OrderKind::Lex);
        let z12 = ring.monomial(&[(z(1, 2), 1)]).unwrap();
        let both = ring.monomial(&[(z(1, 2), 1), (z(1, 1), 1)]).unwrap();
        assert!(both > z12);
        assert!(Monomial::one() < z12);
    }

    #[test]
    fn symmetric_minors() {
        let (ring, m) = sym3(OrderKind::Lex);
        let two = m.minor(&[1, 2], &[1, 2]).unwrap();
        assert_eq!(two.to_string(), "z11*z22 - z12^2");
        let three = m.minor(&[1, 2, 3], &[1, 2, 3]).unwrap();
        assert_eq!(three.len(), 5);
        let lt = three.leading_term().unwrap();
        let diag = ring.monomial(&[(z(1, 1), 1), (z(2, 2), 1), (z(3, 3), 1)]).unwrap();
        assert_eq!(lt, (diag, Coeff::one()));
        let cross = ring.monomial(&[(z(1, 2), 1), (z(1, 3), 1), (z(2, 3), 1)]).unwrap();
        assert_eq!(three.terms()[&cross], Coeff::from_integer(2.into()));
        assert!(m.minor(&[1], &[1, 2]).is_err());
    }

    #[test]
    fn leading_term_of_constant() {
        let (ring, _) = sym3(OrderKind::Lex);
        let c = Polynomial::from_int(&ring, 3);
        assert_eq!(c.leading_term().unwrap(), (Monomial::one(), Coeff::from_integer(3.into())));
        assert_eq!(Polynomial::zero(&ring).leading_term(), Err(KlgError::ZeroPolynomial));
        assert_eq!(Polynomial::zero(&ring).to_string(), "0");
    }

    #[test]
    fn division() {
        let (ring, m) = sym3(OrderKind::Lex);
        let z12 = Polynomial::var(&ring, &z(1, 2)).unwrap();
        let z13 = Polynomial::var(&ring, &z(1, 3)).unwrap();
        assert!(reduce(&(&z12 * &z13), std::slice::from_ref(&z12)).is_zero());
        let det = m.minor(&[1, 2], &[1, 2]).unwrap();
        let z11z22 = &Polynomial::var(&ring, &z(1, 1)).unwrap() * &Polynomial::var(&ring, &z(2, 2)).unwrap();
        assert_eq!(reduce(&z11z22, std::slice::from_ref(&det)), &z12 * &z12);
        assert!(reduce(&det, &[det.clone(), z12.clone()]).is_zero());
    }

    #[test]
    fn groebner_checks() {
        let (ring, m) = sym3(OrderKind::Lex);
        let z12 = Polynomial::var(&ring, &z(1, 2)).unwrap();
        let z13 = Polynomial::var(&ring, &z(1, 3)).unwrap();
        let ok = is_groebner(&[z12.clone(), z13.clone()], &mut Budget::unlimited()).unwrap();
        assert!(ok.is_groebner);

        let det = m.minor(&[1, 2], &[1, 2]).unwrap();
        let gens = vec![det.clone(), z12.clone()];
        let gb = buchberger_completion(&gens, &mut Budget::unlimited()).unwrap();
        assert!(is_groebner(&gb, &mut Budget::unlimited()).unwrap().is_groebner);
        for g in &gens {
            assert!(reduce(g, &gb).is_zero());
        }
        for g in &gb {
            assert!(reduce(g, &gens).is_zero() || reduce(g, &gb).is_zero());
        }
        let init = initial_ideal(&gb);
        let lm = ring.monomial(&[(z(1, 1), 1), (z(2, 2), 1)]).unwrap();
        let z12m = ring.monomial(&[(z(1, 2), 1)]).unwrap();
        assert_eq!(init, vec![lm, z12m]);
    }

    #[test]
    fn budget_is_enforced() {
        let (_, m) = sym3(OrderKind::Lex);
        let gens = m.minors_of_size(&[1, 2, 3], &[1, 2, 3], 2).unwrap();
        let polys: Vec<Polynomial> = gens.into_iter().map(|(_, _, p)| p).collect();
        let r = buchberger_completion(&polys, &mut Budget::new(2));
        assert_eq!(r, Err(KlgError::BudgetExceeded(2)));
    }

    #[test]
    fn var_parsing() {
        assert_eq!(VarRef::parse("z12").unwrap(), z(1, 2));
        assert_eq!(VarRef::parse("z_2_1").unwrap(), z(1, 2));
        assert_eq!(VarRef::parse("a_3").unwrap(), VarRef::named("a_3"));
        assert_eq!(z(1, 2).json_key(), "z_1_2");
    }

    #[test]
    fn json_shape() {
        let (ring, _) = sym3(OrderKind::Lex);
        let p = &Polynomial::var(&ring, &z(1, 2)).unwrap() - &Polynomial::from_int(&ring, 1);
        assert_eq!(
            p.to_json(),
            json!([{"coeff": "1", "exps": {"z_1_2": 1}}, {"coeff": "-1", "exps": {}}])
        );
    }
}
