//! Worked examples with stored answers. Each fixture recomputes a value from
//! scratch and compares its rendering with the stored one.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::error::{KlgError, Result};
use crate::klideal::{bott_samelson_check, kl_ideal, verify_main_theorem, MonomialIdeal};
use crate::kpoly::{kpoly_pipedreams, kpoly_recursion, kpoly_shelling, kpoly_sr};
use crate::pipedream::{enumerate_pd, render_ascii, PipeDream};
use crate::polyring::{OrderKind, PolyMatrix, Polynomial, Ring, RingRef, VarRef};
use crate::subword;
use crate::symcell::{bott_samelson_matrix, Entry, Factorization, GenericMatrix};
use crate::weyl::{CnElement, Coxeter, EssentialBox, Permutation, Word};

/// One recomputed example.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub expected: String,
    pub actual: String,
    /// Set when the stored value is known to disagree with a correct
    /// computation; the text says why.
    pub known_discrepancy: Option<&'static str>,
}

impl Fixture {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "description": self.description,
            "expected": self.expected,
            "actual": self.actual,
            "passed": self.passed(),
            "known_discrepancy": self.known_discrepancy,
        })
    }
}

type Runner = fn() -> Result<Fixture>;

const FIXTURES: &[(&str, Runner)] = &[
    ("essential-A-465213", essential_a_465213),
    ("essential-C-465213", essential_c_465213),
    ("essential-A-426153", essential_a_426153),
    ("essential-C-426153", essential_c_426153),
    ("rothe-365124", rothe_365124),
    ("eg-symmetricPatch", symmetric_patch),
    ("matrix-642531", matrix_642531),
    ("matrix-462513", matrix_462513),
    ("transport-462513", transport_462513),
    ("factorize-642531", factorize_642531),
    ("Q-vsquare-3", q_square_3),
    ("kl-ideal-465213", kl_ideal_465213),
    ("kl-ideal-426153", kl_ideal_426153),
    ("sr-635241", sr_635241),
    ("sr-632541", sr_632541),
    ("sr-632541-split", sr_632541_split),
    ("weights-vsquare-z12", weights_square),
    ("weights-642531", weights_642531),
    ("kpoly-2143-3412", kpoly_2143_3412),
    ("pipedreams-2143-3412", pipedreams_2143_3412),
    ("pipe-word-figure", pipe_word_figure),
    ("bs-matrix-8-1", bs_matrix_1),
    ("bs-matrix-8-2", bs_matrix_2),
    ("paper-8-1", bott_samelson_1),
    ("paper-8-2", bott_samelson_2),
];

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(name, _)| *name).collect()
}

pub fn run_fixture(name: &str) -> Result<Fixture> {
    let (_, run) = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| KlgError::Parse(format!("unknown fixture {name}")))?;
    run()
}

pub fn run_all() -> Result<Vec<Fixture>> {
    FIXTURES.iter().map(|(_, run)| run()).collect()
}

fn fixture(name: &'static str, description: &'static str, expected: impl Into<String>, actual: impl Into<String>) -> Fixture {
    Fixture { name, description, expected: expected.into(), actual: actual.into(), known_discrepancy: None }
}

fn el(n: usize, s: &str) -> Result<CnElement> {
    CnElement::parse(n, s)
}

fn boxes(bs: &[EssentialBox]) -> String {
    let parts: Vec<String> = bs.iter().map(|b| format!("({},{},{})", b.p, b.q, b.rank)).collect();
    parts.join(" ")
}

fn positions(bs: &[EssentialBox]) -> String {
    let parts: Vec<String> = bs.iter().map(|b| format!("({},{})", b.p, b.q)).collect();
    parts.join(" ")
}

fn essential_a_465213() -> Result<Fixture> {
    let w = el(3, "465213")?;
    Ok(fixture("essential-A-465213", "type A essential set with ranks", "(5,1,0) (3,5,3)", boxes(&w.essential_set_a())))
}

fn essential_c_465213() -> Result<Fixture> {
    let w = el(3, "465213")?;
    Ok(fixture("essential-C-465213", "type C essential set with ranks", "(5,1,0)", boxes(&w.essential_set_c())))
}

fn essential_a_426153() -> Result<Fixture> {
    let w = el(3, "426153")?;
    Ok(fixture("essential-A-426153", "type A essential set", "(3,2) (5,2) (3,4) (5,4)", positions(&w.essential_set_a())))
}

fn essential_c_426153() -> Result<Fixture> {
    let w = el(3, "426153")?;
    Ok(fixture("essential-C-426153", "type C essential set with ranks", "(5,2,0)", boxes(&w.essential_set_c())))
}

fn rothe_365124() -> Result<Fixture> {
    let w = Permutation::parse("365124")?;
    let expected: BTreeSet<(usize, usize)> = [(4, 1), (5, 1), (6, 1), (2, 4), (4, 4), (4, 5)].into_iter().collect();
    Ok(fixture("rothe-365124", "Rothe diagram", format!("{expected:?}"), format!("{:?}", w.rothe_diagram().boxes)))
}

/// Renders a generic matrix as space-separated tokens, rows joined by ` / `.
fn tokens(m: &GenericMatrix) -> String {
    let size = m.size();
    let rows: Vec<String> = (1..=size)
        .map(|r| {
            let cells: Vec<String> = (1..=size)
                .map(|c| match m.entry(r, c) {
                    Entry::Zero => "0".to_string(),
                    Entry::One => "1".to_string(),
                    Entry::Var(z) => z.to_string(),
                })
                .collect();
            cells.join(" ")
        })
        .collect();
    rows.join(" / ")
}

fn matrix_of(v: &str) -> Result<String> {
    Ok(tokens(&Factorization::new(&el(3, v)?)?.generic_matrix()))
}

fn symmetric_patch() -> Result<Fixture> {
    let expected = "0 0 1 0 0 0 / 0 1 0 0 0 0 / 1 0 0 0 0 0 / \
                    z11 z12 z13 0 0 1 / z12 z22 z23 0 1 0 / z13 z23 z33 1 0 0";
    Ok(fixture("eg-symmetricPatch", "generic matrix of 321654", expected, matrix_of("321654")?))
}

fn matrix_642531() -> Result<Fixture> {
    let expected = "0 0 0 0 0 1 / 0 0 1 0 0 0 / 0 0 z23 0 1 0 / \
                    0 1 0 0 0 0 / 0 z23 z33 1 0 0 / 1 0 0 0 0 0";
    Ok(fixture("matrix-642531", "generic matrix of 642531", expected, matrix_of("642531")?))
}

fn matrix_462513() -> Result<Fixture> {
    let expected = "0 0 0 0 1 0 / 0 0 1 0 0 0 / 0 0 z12 0 z13 1 / \
                    1 0 0 0 0 0 / z12 0 z22 1 0 0 / z13 1 0 0 0 0";
    Ok(fixture("matrix-462513", "generic matrix of 462513", expected, matrix_of("462513")?))
}

fn transport_462513() -> Result<Fixture> {
    let f = Factorization::new(&el(3, "462513")?)?;
    let moved = f.generic_matrix().permute(f.u_l().inverse().perm(), f.u_r().inverse().perm());
    let expected = "0 0 1 0 0 0 / 0 1 0 0 0 0 / 1 0 0 0 0 0 / \
                    0 z12 z13 0 0 1 / z12 z22 0 0 1 0 / z13 0 0 1 0 0";
    Ok(fixture("transport-462513", "P(u_l^-1) M P(u_r^-1) for 462513", expected, tokens(&moved)))
}

fn factorize_642531() -> Result<Fixture> {
    let f = Factorization::new(&el(3, "642531")?)?;
    let actual = format!(
        "u_l={} u_r={} a={:?} b={:?}",
        f.u_l(),
        f.u_r(),
        f.a_seq(),
        f.b_seq()
    );
    Ok(fixture("factorize-642531", "factorization of 642531", "u_l=246135 u_r=123456 a=[1, 2, 3] b=[4, 5, 6]", actual))
}

fn q_square_3() -> Result<Fixture> {
    let f = Factorization::new(&CnElement::square(3))?;
    Ok(fixture("Q-vsquare-3", "canonical word of the square patch", "(0,1,2,0,1,0)", f.canonical_q().to_string()))
}

fn ideal_strings(ideal: &MonomialIdeal) -> String {
    ideal.to_string()
}

fn generator_list(v: &str, w: &str) -> Result<String> {
    let ideal = kl_ideal(&Factorization::new(&el(3, v)?)?, &el(3, w)?)?;
    let mut gens: Vec<String> = ideal.polys().iter().map(|p| p.to_string()).collect();
    gens.sort();
    gens.dedup();
    Ok(gens.join(", "))
}

fn kl_ideal_465213() -> Result<Fixture> {
    Ok(fixture("kl-ideal-465213", "essential minors of 465213 on the square patch", "z12, z13", generator_list("321654", "465213")?))
}

fn kl_ideal_426153() -> Result<Fixture> {
    Ok(fixture(
        "kl-ideal-426153",
        "essential minors of 426153 on the square patch",
        "z12, z13, z22, z23",
        generator_list("321654", "426153")?,
    ))
}

fn initial_and_sr(f: &Factorization, w: &CnElement) -> Result<String> {
    let report = verify_main_theorem(f, w, OrderKind::Lex, None)?;
    Ok(format!(
        "is_gb={} initial={} sr={}",
        report.is_gb,
        ideal_strings(&report.initial),
        ideal_strings(&report.stanley_reisner)
    ))
}

fn sr_635241() -> Result<Fixture> {
    let f = Factorization::new(&CnElement::square(3))?;
    let k = "<z11*z22, z11*z23, z12*z23>";
    Ok(fixture(
        "sr-635241",
        "initial ideal and Stanley-Reisner ideal for 635241 on the square patch",
        format!("is_gb=true initial={k} sr={k}"),
        initial_and_sr(&f, &el(3, "635241")?)?,
    ))
}

fn sr_632541() -> Result<Fixture> {
    let f = Factorization::new(&CnElement::square(3))?;
    let k = "<z11*z22, z11*z23, z11*z33, z12*z23, z12*z33, z22*z33>";
    Ok(fixture(
        "sr-632541",
        "initial ideal and Stanley-Reisner ideal for 632541 on the square patch",
        format!("is_gb=true initial={k} sr={k}"),
        initial_and_sr(&f, &el(3, "632541")?)?,
    ))
}

fn sr_632541_split() -> Result<Fixture> {
    let f = Factorization::new(&CnElement::square(3))?;
    let step = f.right_step(0)?;
    let w = el(3, "632541")?;
    let wc = w.mul_gen_right(0);
    let actual = format!(
        "deleted={} K(vc0,w)={} K(vc0,wc0)={}",
        f.deleted_variable(0)?,
        subword::stanley_reisner(&step, &w)?,
        subword::stanley_reisner(&step, &wc)?
    );
    Ok(fixture(
        "sr-632541-split",
        "one step of the vertex decomposition for 632541",
        "deleted=z33 K(vc0,w)=<z11, z12, z22> K(vc0,wc0)=<z11*z22, z11*z23, z12*z23>",
        actual,
    ))
}

fn weights_square() -> Result<Fixture> {
    let f = Factorization::new(&CnElement::square(3))?;
    Ok(fixture("weights-vsquare-z12", "weight of z12 on the square patch", "e_1+e_2", f.weight(&VarRef::grid(1, 2))?.to_string()))
}

fn weights_642531() -> Result<Fixture> {
    let f = Factorization::new(&el(3, "642531")?)?;
    let actual = format!("{}, {}", f.weight(&VarRef::grid(2, 3))?, f.weight(&VarRef::grid(3, 3))?);
    Ok(Fixture {
        known_discrepancy: Some(
            "the stored weight of z33 has the wrong sign: the torus acts on z33 by x_2^-2 and on \
             z23 by x_1 x_2^-1, and the second is read as -e_1+e_2, so the first is +2e_2; the \
             formula u_l.e_3 + u_l.e_3 = 2 e_2 agrees",
        ),
        ..fixture("weights-642531", "weights of z23 and z33 for 642531", "-e_1+e_2, -2e_2", actual)
    })
}

fn kpoly_2143_3412() -> Result<Fixture> {
    let v = CnElement::square(2);
    let f = Factorization::new(&v)?;
    let w = el(2, "3412")?;
    let actual = format!(
        "sr={} rec={} pd={} shell={}",
        kpoly_sr(&f, &w)?,
        kpoly_recursion(&v, &w)?,
        kpoly_pipedreams(&f, &w)?,
        kpoly_shelling(&f, &w)?
    );
    let k = "1 - t1^-1*t2^-1";
    Ok(fixture("kpoly-2143-3412", "K-polynomial of (2143, 3412) by each route", format!("sr={k} rec={k} pd={k} shell={k}"), actual))
}

fn pipedreams_2143_3412() -> Result<Fixture> {
    let f = Factorization::new(&CnElement::square(2))?;
    let dreams = enumerate_pd(&f, &el(2, "3412")?)?.facet_dreams;
    let actual: Vec<String> = dreams.iter().map(|d| render_ascii(d).trim_end().replace('\n', "/")).collect();
    Ok(fixture("pipedreams-2143-3412", "reduced pipe dreams of (2143, 3412)", "%+/+%", actual.join(" ")))
}

fn pipe_word_figure() -> Result<Fixture> {
    let mut crosses = PipeDream::full(4).crosses().clone();
    crosses.remove(&(1, 1));
    crosses.remove(&(4, 4));
    let p = PipeDream::new(4, crosses)?;
    Ok(fixture("pipe-word-figure", "word of the 4x4 dream with elbows on the two corners", "(1,2,3,0,1,2,0,1)", p.word().to_string()))
}

/// Parses sums of signed products such as `c_2*a_1-b_1` or `-1`.
fn parse_poly(ring: &RingRef, text: &str) -> Result<Polynomial> {
    let mut total = Polynomial::zero(ring);
    let mut term = String::new();
    let mut sign = 1i64;
    let flush = |total: &mut Polynomial, term: &str, sign: i64| -> Result<()> {
        if term.is_empty() {
            return Ok(());
        }
        let mut p = Polynomial::from_int(ring, sign);
        for factor in term.split('*') {
            let f = match factor.parse::<i64>() {
                Ok(c) => Polynomial::from_int(ring, c),
                Err(_) => Polynomial::var(ring, &VarRef::parse(factor)?)?,
            };
            p = &p * &f;
        }
        *total = &*total + &p;
        Ok(())
    };
    for ch in text.chars().filter(|c| !c.is_whitespace()) {
        if ch == '+' || ch == '-' {
            flush(&mut total, &term, sign)?;
            term.clear();
            sign = if ch == '-' { -1 } else { 1 };
        } else {
            term.push(ch);
        }
    }
    flush(&mut total, &term, sign)?;
    Ok(total)
}

fn render_rows(m: &PolyMatrix) -> String {
    let rows: Vec<String> = (1..=m.nrows())
        .map(|r| (1..=m.ncols()).map(|c| m.get(r, c).to_string()).collect::<Vec<_>>().join(", "))
        .collect();
    rows.join(" / ")
}

fn golden_rows(ring: &RingRef, rows: &[[&str; 6]]) -> Result<String> {
    let mut m = PolyMatrix::zeros(ring, 6, 6);
    for (r, row) in rows.iter().enumerate() {
        for (c, entry) in row.iter().enumerate() {
            m.set(r + 1, c + 1, parse_poly(ring, entry)?);
        }
    }
    Ok(render_rows(&m))
}

struct BottSamelsonCase {
    q: Vec<usize>,
    w: &'static str,
    ranking: &'static [&'static str],
    rows: [[&'static str; 6]; 6],
    essential: &'static str,
}

fn case_1() -> BottSamelsonCase {
    BottSamelsonCase {
        q: vec![0, 1, 0, 2, 1, 0, 2],
        w: "462513",
        ranking: &["c_2", "a_3", "b_2", "c_1", "a_2", "b_1", "a_1"],
        rows: [
            ["0", "0", "1", "0", "0", "0"],
            ["-1", "0", "0", "0", "0", "0"],
            ["c_2", "-1", "0", "0", "0", "0"],
            ["c_2*a_1-b_1", "-a_1", "c_1", "0", "1", "0"],
            ["c_2*b_1-a_2", "-b_1", "b_2", "0", "c_2", "1"],
            ["c_2*c_1-b_2", "-c_1", "a_3", "-1", "0", "0"],
        ],
        essential: "(5,1) (5,3)",
    }
}

fn case_2() -> BottSamelsonCase {
    BottSamelsonCase {
        q: vec![0, 1, 0, 2, 1, 0, 2, 1],
        w: "632541",
        ranking: &["b_3", "c_2", "a_3", "b_2", "c_1", "a_2", "b_1", "a_1"],
        rows: [
            ["0", "1", "0", "0", "0", "0"],
            ["-1", "0", "0", "0", "0", "0"],
            ["c_2", "-b_3", "1", "0", "0", "0"],
            ["c_2*a_1-b_1", "-b_3*a_1+c_1", "a_1", "-1", "0", "0"],
            ["c_2*b_1-a_2", "-b_3*b_1+b_2", "b_1", "-c_2", "0", "1"],
            ["c_2*c_1-b_2", "-b_3*c_1+a_3", "c_1", "-b_3", "-1", "0"],
        ],
        essential: "(4,3)",
    }
}

impl BottSamelsonCase {
    fn ring(&self) -> Result<RingRef> {
        let ranking: Vec<VarRef> = self.ranking.iter().map(|s| VarRef::named(s)).collect();
        Ring::ranked(&ranking, OrderKind::Lex)
    }

    fn word(&self) -> Result<Word> {
        Word::type_c(self.q.clone(), 3)
    }

    fn matrix_fixture(&self, name: &'static str) -> Result<Fixture> {
        let ring = self.ring()?;
        let actual = render_rows(&bott_samelson_matrix(&self.word()?, Some(&ring))?);
        Ok(fixture(name, "Bott-Samelson matrix", golden_rows(&ring, &self.rows)?, actual))
    }

    fn check_fixture(&self, name: &'static str) -> Result<Fixture> {
        let ranking: Vec<VarRef> = self.ranking.iter().map(|s| VarRef::named(s)).collect();
        let report = bott_samelson_check(&self.word()?, &el(3, self.w)?, &ranking, None)?;
        let essential = positions(&report.w.essential_set_c());
        let failing = match report.failing_polys() {
            Some((a, b)) => format!("failing pair ({a}) and ({b})"),
            None => "no failing pair".to_string(),
        };
        let actual = format!(
            "essential={} is_gb={} sr_match={}",
            essential,
            report.is_gb,
            report.matches_sr()
        );
        let mut out = fixture(
            name,
            "essential minors in Bott-Samelson coordinates",
            format!("essential={} is_gb=false sr_match=true", self.essential),
            actual,
        );
        if !out.passed() {
            out.actual.push_str(&format!("; {failing}"));
        }
        Ok(out)
    }
}

fn bs_matrix_1() -> Result<Fixture> {
    case_1().matrix_fixture("bs-matrix-8-1")
}

fn bs_matrix_2() -> Result<Fixture> {
    case_2().matrix_fixture("bs-matrix-8-2")
}

fn bott_samelson_1() -> Result<Fixture> {
    case_1().check_fixture("paper-8-1")
}

fn bott_samelson_2() -> Result<Fixture> {
    case_2().check_fixture("paper-8-2")
}

/// The example pair reused by the command line: ranking and word of each
/// Bott–Samelson case.
pub fn bott_samelson_case(index: usize) -> Option<(Word, CnElement, Vec<VarRef>)> {
    let case = match index {
        1 => case_1(),
        2 => case_2(),
        _ => return None,
    };
    let ranking = case.ranking.iter().map(|s| VarRef::named(s)).collect();
    Some((case.word().ok()?, el(3, case.w).ok()?, ranking))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_runs() {
        let bad: Vec<String> = run_all()
            .unwrap()
            .into_iter()
            .filter(|f| f.passed() == f.known_discrepancy.is_some())
            .map(|f| format!("{}: expected {} got {}", f.name, f.expected, f.actual))
            .collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }

    #[test]
    fn lookup() {
        assert!(run_fixture("Q-vsquare-3").unwrap().passed());
        assert!(run_fixture("nope").is_err());
        assert_eq!(fixture_names().len(), FIXTURES.len());
    }

    #[test]
    fn poly_parser() {
        let ring = case_1().ring().unwrap();
        assert_eq!(parse_poly(&ring, "c_2*a_1-b_1").unwrap().to_string(), "a_1*c_2 - b_1");
        assert_eq!(parse_poly(&ring, "-1").unwrap().to_string(), "-1");
        assert!(parse_poly(&ring, "0").unwrap().is_zero());
    }
}
