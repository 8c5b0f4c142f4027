//! `klg`: command-line access to Kazhdan–Lusztig ideals of type C small
//! patches.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on bad input,
//! 3 when the `--budget` on reduction steps runs out.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use klg::fixtures;
use klg::klideal::{
    all_pairs, bott_samelson_check, decompose, kl_ideal_with_order, sample_pairs, sweep, verify_main_theorem,
    MonomialIdeal, SweepRow,
};
use klg::kpoly::{
    component_multidegree, hilbert_series_truncated, kpoly_pipedreams, kpoly_recursion, kpoly_shelling,
    kpoly_sr, multidegree,
};
use klg::pipedream::{enumerate_pd, render_ascii};
use klg::polyring::{OrderKind, Ring, VarRef};
use klg::subword::{self, vertex_decomposition_check};
use klg::symcell::{bott_samelson_matrix, bott_samelson_parameters, Factorization};
use klg::weyl::{CnElement, Word};
use klg::KlgError;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "klg", version, about = "Kazhdan-Lusztig ideals of type C small patches")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Rank of the group C_n. Inferred from --v or --w when omitted.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// The patch element v, a 123-avoiding signed permutation in one-line
    /// notation (digits, or comma separated).
    #[arg(long, global = true)]
    v: Option<String>,
    /// The element w cutting out the Kazhdan-Lusztig variety.
    #[arg(long, global = true)]
    w: Option<String>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Shorthand for --format json.
    #[arg(long, global = true)]
    json: bool,
    /// Shorthand for --format ascii.
    #[arg(long, global = true)]
    ascii: bool,
    /// Monomial order: lex or grlex (also lex-diag, grlex-diag). For
    /// bott-samelson, a comma-separated ranking of the parameters, largest
    /// first.
    #[arg(long, global = true, default_value = "lex")]
    order: String,
    /// Seed for sampled sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on polynomial reduction steps.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Ascii,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Sr,
    Rec,
    Pd,
    Shell,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Type A and type C essential sets of w.
    Essential,
    /// The generic matrix of the patch of v.
    Matrix {
        /// Left-to-right minima to factor through, e.g. 2,3,6.
        #[arg(long)]
        minima: Option<String>,
    },
    /// Essential minors generating the ideal of (v, w).
    Ideal,
    /// Checks that the essential minors form a Gröbner basis whose initial
    /// ideal is the Stanley-Reisner ideal.
    Verify {
        /// Every (v, w) pair of C_n, as TSV.
        #[arg(long)]
        all: bool,
    },
    /// Verifies all pairs of C_n, or a seeded sample of them.
    Sweep {
        /// Sample this many pairs with v <= w instead of taking all.
        #[arg(long)]
        count: Option<usize>,
    },
    /// Subword complex of (v, w), or of a word --q and element --pi.
    Subword {
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        pi: Option<String>,
    },
    /// Reduced pipe dreams for w inside the patch of v.
    Pipedreams,
    /// K-polynomial of (v, w).
    Kpoly {
        #[arg(long, value_enum, default_value = "sr")]
        route: Route,
        /// Also print the Hilbert series through this total degree.
        #[arg(long)]
        degree_bound: Option<usize>,
    },
    /// Multidegree of (v, w) and of each prime component.
    Multidegree,
    /// Prime components of a squarefree monomial ideal, given with --ideal
    /// or taken as the Stanley-Reisner ideal of (v, w).
    Decompose {
        /// Generators such as "z11*z22, z12*z23".
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Bott-Samelson matrix of a reduced word, and with --w the Gröbner
    /// check of its essential minors.
    BottSamelson {
        /// Reduced word, e.g. 0,1,0,2,1,0,2.
        #[arg(long)]
        q: Option<String>,
        /// One of the stored examples, 1 or 2.
        #[arg(long)]
        case: Option<usize>,
    },
    /// Recomputes the stored examples.
    Fixtures {
        #[arg(long)]
        case: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

enum Failure {
    Usage(String),
    Budget(String),
}

impl From<KlgError> for Failure {
    fn from(e: KlgError) -> Self {
        match e {
            KlgError::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// Text to print and whether every check in it held.
struct Report {
    text: String,
    ok: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, ok: true }
    }
}

type Outcome = std::result::Result<Report, Failure>;

impl Common {
    fn format(&self, default: Format) -> Format {
        if self.json {
            Format::Json
        } else if self.ascii {
            Format::Ascii
        } else {
            self.format.unwrap_or(default)
        }
    }

    fn rank(&self) -> Result<usize, Failure> {
        if let Some(n) = self.n {
            return Ok(n);
        }
        let from = self.v.as_ref().or(self.w.as_ref()).ok_or_else(|| Failure::Usage("--n is required".into()))?;
        let size = if from.contains(',') { from.split(',').count() } else { from.trim().len() };
        if size % 2 != 0 {
            return Err(Failure::Usage(format!("{from} has an odd number of letters")));
        }
        Ok(size / 2)
    }

    fn element(&self, text: &Option<String>, flag: &str) -> Result<CnElement, Failure> {
        let t = text.as_ref().ok_or_else(|| Failure::Usage(format!("{flag} is required")))?;
        Ok(CnElement::parse(self.rank()?, t)?)
    }

    fn v(&self) -> Result<CnElement, Failure> {
        self.element(&self.v, "--v")
    }

    fn w(&self) -> Result<CnElement, Failure> {
        self.element(&self.w, "--w")
    }

    fn patch(&self) -> Result<Factorization, Failure> {
        Ok(Factorization::new(&self.v()?)?)
    }

    fn order(&self) -> Result<OrderKind, Failure> {
        match self.order.as_str() {
            "lex" | "lex-diag" => Ok(OrderKind::Lex),
            "grlex" | "grlex-diag" => Ok(OrderKind::GradedLex),
            other => Err(Failure::Usage(format!("unknown order {other}; use lex or grlex"))),
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn lines<I: IntoIterator<Item = String>>(items: I) -> String {
    let mut out = String::new();
    for line in items {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn set_string(s: &BTreeSet<VarRef>) -> String {
    let parts: Vec<String> = s.iter().map(|z| z.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn essential(c: &Common) -> Outcome {
    let w = c.w()?;
    let triples = |bs: Vec<klg::weyl::EssentialBox>| bs.iter().map(|b| [b.p, b.q, b.rank]).collect::<Vec<_>>();
    let (a, e) = (triples(w.essential_set_a()), triples(w.essential_set_c()));
    Ok(Report::ok(match c.format(Format::Json) {
        Format::Json => {
            let mut s = serde_json::to_string(&json!({"E_A": a, "E_C": e})).expect("serializes");
            s.push('\n');
            s
        }
        _ => lines(
            a.iter()
                .map(|t| format!("A\t{}\t{}\t{}", t[0], t[1], t[2]))
                .chain(e.iter().map(|t| format!("C\t{}\t{}\t{}", t[0], t[1], t[2]))),
        ),
    }))
}

fn matrix(c: &Common, minima: &Option<String>) -> Outcome {
    let v = c.v()?;
    let f = match minima {
        None => Factorization::new(&v)?,
        Some(text) => {
            let a: Vec<usize> = text
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| Failure::Usage(format!("--minima {text}: {e}")))?;
            Factorization::from_minima(&v, &a)?
        }
    };
    let m = f.generic_matrix();
    Ok(Report::ok(match c.format(Format::Ascii) {
        Format::Json => pretty(&json!({
            "v": f.v(), "u_l": f.u_l(), "u_r": f.u_r(),
            "variables": f.variables().iter().map(|z| z.to_string()).collect::<Vec<_>>(),
            "matrix": m.to_json(),
        })),
        _ => m.render_ascii(),
    }))
}

fn ideal(c: &Common) -> Outcome {
    let ideal = kl_ideal_with_order(&c.patch()?, &c.w()?, c.order()?)?;
    Ok(Report::ok(match c.format(Format::Json) {
        Format::Json => pretty(&ideal.to_json()),
        _ => lines(ideal.generators.iter().map(|g| {
            format!("({},{},{})\t{:?}\t{:?}\t{}", g.essential.p, g.essential.q, g.essential.rank, g.rows, g.cols, g.poly)
        })),
    }))
}

fn sweep_table(c: &Common, rows: &[SweepRow]) -> Report {
    let ok = rows.iter().all(|r| r.passed());
    let text = match c.format(Format::Tsv) {
        Format::Json => pretty(&serde_json::to_value(rows).expect("rows serialize")),
        _ => {
            let mut out = String::from("v\tw\tis_gb\tsr_match\tcomponents\n");
            out.push_str(&lines(rows.iter().map(|r| r.tsv())));
            out
        }
    };
    Report { text, ok }
}

fn verify(c: &Common, all: bool) -> Outcome {
    if all {
        let rows = sweep(&all_pairs(c.rank()?), c.order()?, c.budget)?;
        return Ok(sweep_table(c, &rows));
    }
    let f = c.patch()?;
    let w = c.w()?;
    let r = verify_main_theorem(&f, &w, c.order()?, c.budget)?;
    let text = match c.format(Format::Json) {
        Format::Json => pretty(&r.to_json()),
        _ => format!("{}\t{}\t{}\t{}\t{}\n", r.v, r.w, r.is_gb, r.matches_sr, r.components.len()),
    };
    Ok(Report { text, ok: r.passed() })
}

fn run_sweep(c: &Common, count: Option<usize>) -> Outcome {
    let n = c.rank()?;
    let pairs = match count {
        Some(k) => sample_pairs(n, k, c.seed),
        None => all_pairs(n),
    };
    let start = Instant::now();
    let rows = sweep(&pairs, c.order()?, c.budget)?;
    let passed = rows.iter().filter(|r| r.passed()).count();
    eprintln!("{passed}/{} pairs passed in {:.2?}", rows.len(), start.elapsed());
    Ok(sweep_table(c, &rows))
}

fn subword_cmd(c: &Common, q: &Option<String>, pi: &Option<String>) -> Outcome {
    if let Some(text) = q {
        let n = c.rank()?;
        let word = Word::parse_type_c(text, n)?;
        let pi = CnElement::parse(n, pi.as_ref().ok_or_else(|| Failure::Usage("--pi is required with --q".into()))?)?;
        let complex = subword::subword_complex(&word, &pi)?;
        return Ok(Report::ok(match c.format(Format::Json) {
            Format::Json => pretty(&complex.to_json()),
            _ => lines(complex.facets().iter().map(|f| format!("{f:?}"))),
        }));
    }
    let f = c.patch()?;
    let w = c.w()?;
    let d = subword::delta(&f, &w)?;
    let sr = subword::stanley_reisner_of(&d);
    let vd = vertex_decomposition_check(&f, &w)?;
    let text = match c.format(Format::Json) {
        Format::Json => pretty(&json!({
            "q": f.canonical_q(),
            "complex": d.to_json(),
            "stanley_reisner": sr.to_json(),
            "vertex_decomposition": vd,
        })),
        _ => {
            let mut out = format!("Q = {}\nstate = {}\nK = {}\n", f.canonical_q(), d.state().as_str(), sr);
            out.push_str(&lines(d.facets().iter().map(set_string)));
            out
        }
    };
    Ok(Report { text, ok: vd })
}

fn pipedreams(c: &Common) -> Outcome {
    let f = c.patch()?;
    let e = enumerate_pd(&f, &c.w()?)?;
    Ok(Report::ok(match c.format(Format::Ascii) {
        Format::Json => pretty(&json!({
            "facet_dreams": e.facet_dreams.iter().map(|d| {
                let mut j = d.to_json();
                j["word"] = json!(d.word());
                j
            }).collect::<Vec<_>>(),
            "interior_dreams": e.all_interior.len(),
        })),
        _ => e.facet_dreams.iter().map(render_ascii).collect::<Vec<_>>().join("\n"),
    }))
}

fn kpoly(c: &Common, route: Route, degree_bound: Option<usize>) -> Outcome {
    let v = c.v()?;
    let f = Factorization::new(&v)?;
    let w = c.w()?;
    let mut results = Vec::new();
    let wanted = |r: Route| route == r || route == Route::All;
    if wanted(Route::Sr) {
        results.push(("sr", kpoly_sr(&f, &w)?));
    }
    if wanted(Route::Rec) {
        results.push(("rec", kpoly_recursion(&v, &w)?));
    }
    if wanted(Route::Pd) {
        results.push(("pd", kpoly_pipedreams(&f, &w)?));
    }
    if wanted(Route::Shell) {
        results.push(("shell", kpoly_shelling(&f, &w)?));
    }
    let ok = results.windows(2).all(|p| p[0].1 == p[1].1);
    let series = match degree_bound {
        Some(b) => hilbert_series_truncated(&f, &w, b)?,
        None => Vec::new(),
    };
    let text = match c.format(Format::Ascii) {
        Format::Json => {
            let mut obj = serde_json::Map::new();
            for (name, k) in &results {
                obj.insert((*name).to_string(), json!(k.to_string()));
            }
            if !series.is_empty() {
                obj.insert("hilbert".into(), json!(series.iter().map(|s| s.to_string()).collect::<Vec<_>>()));
            }
            obj.insert("agree".into(), json!(ok));
            pretty(&Value::Object(obj))
        }
        _ => {
            let mut out = if results.len() == 1 {
                format!("{}\n", results[0].1)
            } else {
                lines(results.iter().map(|(name, k)| format!("{name}\t{k}")))
            };
            out.push_str(&lines(series.iter().enumerate().map(|(d, s)| format!("degree {d}\t{s}"))));
            out
        }
    };
    Ok(Report { text, ok })
}

fn multidegree_cmd(c: &Common) -> Outcome {
    let f = c.patch()?;
    let w = c.w()?;
    let total = multidegree(&f, &w)?;
    let components = decompose(&subword::stanley_reisner(&f, &w)?)?;
    let parts: Vec<(String, String)> = components
        .iter()
        .map(|comp| Ok((set_string(comp), component_multidegree(&f, comp)?.to_string())))
        .collect::<Result<_, KlgError>>()?;
    Ok(Report::ok(match c.format(Format::Ascii) {
        Format::Json => pretty(&json!({
            "multidegree": total.to_string(),
            "components": parts.iter().map(|(s, m)| json!({"variables": s, "multidegree": m})).collect::<Vec<_>>(),
        })),
        _ => {
            let mut out = format!("{total}\n");
            out.push_str(&lines(parts.iter().map(|(s, m)| format!("{s}\t{m}"))));
            out
        }
    }))
}

fn parse_ideal(text: &str) -> Result<MonomialIdeal, Failure> {
    let mut gens = Vec::new();
    for g in text.split(',') {
        let g = g.trim();
        if g.is_empty() {
            continue;
        }
        let mut map = std::collections::BTreeMap::new();
        for factor in g.split('*') {
            let (name, power) = match factor.split_once('^') {
                Some((name, p)) => (name, p.trim().parse::<u32>().map_err(|e| Failure::Usage(format!("{factor}: {e}")))?),
                None => (factor, 1),
            };
            *map.entry(VarRef::parse(name)?).or_insert(0) += power;
        }
        gens.push(map);
    }
    Ok(MonomialIdeal::from_maps(gens))
}

fn decompose_cmd(c: &Common, ideal: &Option<String>) -> Outcome {
    let m = match ideal {
        Some(text) => parse_ideal(text)?,
        None => subword::stanley_reisner(&c.patch()?, &c.w()?)?,
    };
    let comps = decompose(&m)?;
    Ok(Report::ok(match c.format(Format::Ascii) {
        Format::Json => pretty(&json!({
            "ideal": m.to_json(),
            "components": comps.iter().map(|s| s.iter().map(|z| z.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })),
        _ => lines(comps.iter().map(set_string)),
    }))
}

fn bott_samelson(c: &Common, q: &Option<String>, case: Option<usize>) -> Outcome {
    let (word, w, ranking) = match case {
        Some(k) => {
            let (word, w, ranking) =
                fixtures::bott_samelson_case(k).ok_or_else(|| Failure::Usage(format!("no example {k}; use 1 or 2")))?;
            (word, Some(w), ranking)
        }
        None => {
            let text = q.as_ref().ok_or_else(|| Failure::Usage("--q or --case is required".into()))?;
            let word = Word::parse_type_c(text, c.rank()?)?;
            let ranking: Vec<VarRef> = if c.order.contains(',') {
                c.order.split(',').map(|s| VarRef::named(s.trim())).collect()
            } else {
                bott_samelson_parameters(&word).into_iter().rev().collect()
            };
            let w = match &c.w {
                Some(_) => Some(c.w()?),
                None => None,
            };
            (word, w, ranking)
        }
    };
    match w {
        None => {
            let ring = Ring::ranked(&ranking, OrderKind::Lex)?;
            let m = bott_samelson_matrix(&word, Some(&ring))?;
            Ok(Report::ok(match c.format(Format::Ascii) {
                Format::Json => pretty(&json!({
                    "q": word,
                    "rows": (1..=m.nrows()).map(|r| (1..=m.ncols()).map(|col| m.get(r, col).to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                })),
                _ => m.render(),
            }))
        }
        Some(w) => {
            let report = bott_samelson_check(&word, &w, &ranking, c.budget)?;
            Ok(Report::ok(match c.format(Format::Json) {
                Format::Json => pretty(&report.to_json()),
                _ => {
                    let pair = report
                        .failing_polys()
                        .map(|(a, b)| format!("S({a}, {b})"))
                        .unwrap_or_else(|| "none".to_string());
                    format!(
                        "v\t{}\nq\t{}\nw\t{}\nis_gb\t{}\nfailing\t{}\nsr_match\t{}\ninitial\t{}\n",
                        report.v, report.q, report.w, report.is_gb, pair, report.matches_sr(), report.initial
                    )
                }
            }))
        }
    }
}

fn fixtures_cmd(c: &Common, case: &Option<String>, list: bool) -> Outcome {
    if list {
        return Ok(Report::ok(lines(fixtures::fixture_names().into_iter().map(String::from))));
    }
    let results = match case {
        Some(name) => vec![fixtures::run_fixture(name)?],
        None => fixtures::run_all()?,
    };
    let ok = results.iter().all(|f| f.passed());
    let text = match c.format(Format::Tsv) {
        Format::Json => pretty(&Value::Array(results.iter().map(|f| f.to_json()).collect())),
        _ => lines(results.iter().map(|f| {
            let status = if f.passed() { "PASS" } else { "FAIL" };
            let mut line = format!("{}\t{status}\texpected: {}\tactual: {}", f.name, f.expected, f.actual);
            if let Some(note) = f.known_discrepancy {
                line.push_str(&format!("\tknown: {note}"));
            }
            line
        })),
    };
    Ok(Report { text, ok })
}

fn run(cli: &Cli) -> Outcome {
    let c = &cli.common;
    match &cli.command {
        Command::Essential => essential(c),
        Command::Matrix { minima } => matrix(c, minima),
        Command::Ideal => ideal(c),
        Command::Verify { all } => verify(c, *all),
        Command::Sweep { count } => run_sweep(c, *count),
        Command::Subword { q, pi } => subword_cmd(c, q, pi),
        Command::Pipedreams => pipedreams(c),
        Command::Kpoly { route, degree_bound } => kpoly(c, *route, *degree_bound),
        Command::Multidegree => multidegree_cmd(c),
        Command::Decompose { ideal } => decompose_cmd(c, ideal),
        Command::BottSamelson { q, case } => bott_samelson(c, q, *case),
        Command::Fixtures { case, list } => fixtures_cmd(c, case, *list),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match &cli.common.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &report.text) {
                        eprintln!("klg: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{}", report.text),
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("klg: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("klg: {msg}");
            ExitCode::from(3)
        }
    }
}
