//! Type C pipe dreams: diagonally symmetric cross/elbow tilings of the
//! `n x n` square, in local coordinates `(1,1)` to `(n,n)`.
//!
//! The square is the southwest quarter of a `2n x 2n` type A picture (rows
//! `n+1..=2n`, columns `1..=n`); every tile outside it is an elbow. Pipes
//! enter from the west and north and leave to the south and east. A cross
//! passes west to east and north to south, an elbow turns west to south and
//! north to east.
//!
//! The cell `(r, c)` with `r >= c` carries the generator `c_{r-c}` and the
//! variable `z_{c r}`.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::error::{KlgError, Result};
use crate::polyring::VarRef;
use crate::subword::{self, SimplicialComplex};
use crate::symcell::Factorization;
use crate::weyl::{CnElement, Permutation, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PipeDream {
    n: usize,
    crosses: BTreeSet<(usize, usize)>,
}

impl PipeDream {
    /// Checks that every cross lies in the square and that the set is
    /// symmetric about the diagonal.
    pub fn new(n: usize, crosses: BTreeSet<(usize, usize)>) -> Result<Self> {
        for &(r, c) in &crosses {
            if r == 0 || c == 0 || r > n || c > n {
                return Err(KlgError::OutOfRange(format!("cross ({r},{c}) outside the {n}x{n} square")));
            }
            if !crosses.contains(&(c, r)) {
                return Err(KlgError::OutOfRange(format!("cross ({r},{c}) has no mirror ({c},{r})")));
            }
        }
        Ok(PipeDream { n, crosses })
    }

    /// The dream whose crosses are the given lower-triangle cells and their
    /// mirrors.
    pub fn from_lower(n: usize, lower: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut crosses = BTreeSet::new();
        for (r, c) in lower {
            crosses.insert((r, c));
            crosses.insert((c, r));
        }
        Self::new(n, crosses)
    }

    pub fn empty(n: usize) -> Self {
        PipeDream { n, crosses: BTreeSet::new() }
    }

    pub fn full(n: usize) -> Self {
        let crosses = (1..=n).flat_map(|r| (1..=n).map(move |c| (r, c))).collect();
        PipeDream { n, crosses }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn crosses(&self) -> &BTreeSet<(usize, usize)> {
        &self.crosses
    }

    pub fn is_cross(&self, r: usize, c: usize) -> bool {
        self.crosses.contains(&(r, c))
    }

    /// Crosses with `r >= c`, in reading order: columns left to right, top
    /// to bottom within a column.
    pub fn lower(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self.crosses.iter().copied().filter(|&(r, c)| r >= c).collect();
        out.sort_by_key(|&(r, c)| (c, r));
        out
    }

    /// Variables `z_{c r}` of the lower crosses.
    pub fn variables(&self) -> BTreeSet<VarRef> {
        self.lower().into_iter().map(|(r, c)| VarRef::grid(c, r)).collect()
    }

    /// Whether the word is reduced.
    pub fn is_reduced(&self) -> bool {
        self.word().is_reduced()
    }

    pub fn word(&self) -> Word {
        word_of(self)
    }

    pub fn to_json(&self) -> Value {
        json!({ "n": self.n, "crosses": self.crosses.iter().map(|&(r, c)| [r, c]).collect::<Vec<_>>() })
    }
}

/// Letters `r - c` of the lower crosses in reading order.
pub fn word_of(p: &PipeDream) -> Word {
    let letters = p.lower().into_iter().map(|(r, c)| r - c).collect();
    Word::type_c(letters, p.n.max(1)).expect("letters lie in 0..n")
}

/// Crosses at the cells of the patch variables.
pub fn rho_of_factorization(f: &Factorization) -> PipeDream {
    dream_of_variables(f.rank(), f.variables().iter())
}

fn dream_of_variables<'a>(n: usize, vars: impl Iterator<Item = &'a VarRef>) -> PipeDream {
    let lower = vars.map(|z| match z {
        VarRef::Grid { i, j } => (*j, *i),
        VarRef::Named(_) => unreachable!("patch variables are grid variables"),
    });
    PipeDream::from_lower(n, lower).expect("patch variables lie in the square")
}

/// Reduced dreams for `w` containing `ρ(f)`'s elbows, and all dreams
/// inside `ρ(f)` whose word has Demazure product `w_0 w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DreamEnumeration {
    pub facet_dreams: Vec<PipeDream>,
    pub all_interior: Vec<PipeDream>,
}

/// Enumerates dreams through the subword complex: an elbow set inside
/// `ρ(f)` is a face, and the crosses are the remaining patch variables.
pub fn enumerate_pd(f: &Factorization, w: &CnElement) -> Result<DreamEnumeration> {
    let n = f.rank();
    let vars = f.variables();
    let complement = |elbows: &BTreeSet<VarRef>| {
        dream_of_variables(n, vars.iter().filter(|z| !elbows.contains(*z)))
    };
    let delta = subword::delta(f, w)?;
    let mut facet_dreams: Vec<PipeDream> = delta.facets().iter().map(complement).collect();
    facet_dreams.sort();
    let pi = CnElement::longest(n).compose(w)?;
    let labels = subword::zeta(f);
    let mut all_interior: Vec<PipeDream> = subword::interior_faces(&f.canonical_q(), &pi)?
        .iter()
        .map(|face| complement(&face.iter().map(|p| labels[p].clone()).collect()))
        .collect();
    all_interior.sort();
    Ok(DreamEnumeration { facet_dreams, all_interior })
}

/// The labels read off the south side (columns `1..=n`) and then the east
/// side bottom to top, after transporting west labels `n, .., 1` (top to
/// bottom) and north labels `n+1, .., 2n` (left to right) along the pipes.
/// A cross between two pipes that already crossed acts as an elbow.
pub fn boundary_reading(p: &PipeDream) -> Permutation {
    let n = p.n;
    // Label entering each cell from the west (per row) and from the north
    // (per column), updated as cells are processed row by row.
    let mut from_west: Vec<usize> = (0..=n).map(|r| if r == 0 { 0 } else { n + 1 - r }).collect();
    let mut from_north: Vec<usize> = (0..=n).map(|c| if c == 0 { 0 } else { n + c }).collect();
    let mut crossed = BTreeSet::new();
    for r in 1..=n {
        for c in 1..=n {
            let (a, b) = (from_west[r], from_north[c]);
            let pair = (a.min(b), a.max(b));
            if p.is_cross(r, c) && crossed.insert(pair) {
                // a continues east, b continues south
            } else {
                from_west[r] = b;
                from_north[c] = a;
            }
        }
    }
    let mut image = vec![0; 2 * n];
    for c in 1..=n {
        image[c - 1] = from_north[c];
    }
    for r in 1..=n {
        image[2 * n - r] = from_west[r];
    }
    Permutation::new(image).expect("pipes carry distinct labels")
}

/// `w_0` composed with [`boundary_reading`]: the element a dream is for.
pub fn trace(p: &PipeDream) -> Result<CnElement> {
    let raw = CnElement::new(boundary_reading(p))?;
    CnElement::longest(p.n).compose(&raw)
}

/// The prime components `{z_{c r} : (r, c) lower cross}` over the reduced
/// dreams for `w`.
pub fn prime_components(f: &Factorization, w: &CnElement) -> Result<Vec<BTreeSet<VarRef>>> {
    let mut out: Vec<BTreeSet<VarRef>> =
        enumerate_pd(f, w)?.facet_dreams.iter().map(|d| d.variables()).collect();
    out.sort();
    Ok(out)
}

/// The complex of reduced dreams as facets over the cells of `ρ(f)`, each
/// facet being the set of elbows.
pub fn pipe_dream_complex(f: &Factorization, w: &CnElement) -> Result<SimplicialComplex<(usize, usize)>> {
    let rho = rho_of_factorization(f);
    let cells = rho.lower();
    let facets = enumerate_pd(f, w)?
        .facet_dreams
        .iter()
        .map(|d| cells.iter().copied().filter(|&(r, c)| !d.is_cross(r, c)).collect())
        .collect();
    Ok(SimplicialComplex::new(cells, facets))
}

/// One line per row, top row first, `+` for a cross and `%` for an elbow.
pub fn render_ascii(p: &PipeDream) -> String {
    let mut out = String::new();
    for r in 1..=p.n {
        for c in 1..=p.n {
            out.push(if p.is_cross(r, c) { '+' } else { '%' });
        }
        out.push('\n');
    }
    out
}
