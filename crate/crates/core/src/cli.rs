//! The `hodge-covers` command line: argument parsing, command dispatch,
//! report rendering and exit codes.
//!
//! Exit codes: 0 computed; 2 a hypothesis fails (the report is still
//! printed); 3 the input is invalid; 4 an internal invariant was violated.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::IntMatrix;
use crate::arrangement::Arrangement;
use crate::bounds::{
    character_euler, default_level, dim_h_nt, euler_cover, hodge_cycle_bound, theorem_report, weak_lefschetz,
    TheoremReport,
};
use crate::chars::characters_abelian;
use crate::cover::{Base, CoverSpec};
use crate::hodge::{condition_b_check, hodge_table, hodge_table_hrr, EigenHodgeTable, EulerOnly};
use crate::io::{load, Format, InputDocument};
use crate::toric::{local_abelian_model, reduce_exponents, saturation_hilbert_basis, ExponentData};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "hodge-covers", version, about = "Exact Hodge numbers of abelian covers branched over hyperplane arrangements")]
pub struct Cli {
    /// Output format; defaults to the input document's options, then text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Grid for `analyze`, e.g. `d=2..12,n=1..5` (add `base=p1` for products
    /// of lines).
    #[arg(long, global = true)]
    pub sweep: Option<String>,

    /// Seed for the randomized suites of `selftest`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hypotheses, Euler characteristics, Hodge numbers and which conclusions apply.
    Analyze { path: Option<PathBuf> },
    /// Eigenspace Hodge table by two independent routes.
    Hodge { path: PathBuf },
    /// Upper bound on Hodge classes in H^i_nt not accounted for by the band.
    Bound {
        path: PathBuf,
        /// Cohomological degree i (default: the dimension).
        #[arg(long)]
        degree: Option<usize>,
        /// Band level k < i/2 (default: i/2 - 1 for even i, (i-1)/2 for odd i).
        #[arg(long)]
        level: Option<usize>,
    },
    /// Topological Euler characteristics of the cover and its eigenspaces.
    Euler { path: PathBuf },
    /// Local models y^d = x_1^a_1 ... x_n^a_n, or a diagonalized abelian local cover.
    Local(LocalArgs),
    /// Runs the identity suites.
    Selftest,
}

#[derive(Debug, Args)]
pub struct LocalArgs {
    /// Exponents a_1,...,a_n.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "gamma")]
    pub exponents: Option<Vec<i64>>,
    /// Degree d of y^d.
    #[arg(long, requires = "exponents")]
    pub degree: Option<i64>,
    /// Subgroup of Z^k as matrix rows, e.g. `2,1;0,2`; columns generate it.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
}

/// Everything a command produced; rendered as JSON or as `text`.
#[derive(Debug, Serialize)]
pub struct RunResult {
    pub command: String,
    pub input: Value,
    pub output: Value,
    pub diagnostics: Vec<String>,
    pub exit_code: i32,
    #[serde(skip)]
    pub text: String,
}

impl RunResult {
    fn new(command: &str, input: Value) -> Self {
        RunResult { command: command.into(), input, output: Value::Null, diagnostics: Vec::new(), exit_code: EXIT_OK, text: String::new() }
    }

    fn fail(mut self, e: &Error) -> Self {
        self.exit_code = exit_code(e);
        self.diagnostics.push(e.to_string());
        self
    }

    /// `(stdout, stderr)`: JSON carries everything on stdout; text sends
    /// diagnostics to stderr.
    pub fn render(&self, format: Format) -> (String, String) {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("serializable");
                s.push('\n');
                (s, String::new())
            }
            Format::Text => {
                let err = self.diagnostics.iter().map(|d| format!("error: {d}\n")).collect();
                (self.text.clone(), err)
            }
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Hypothesis(_) | Error::HodgeUnavailable(_) => EXIT_HYPOTHESIS,
        Error::Invariant(_) => EXIT_INVARIANT,
        Error::Argument(_)
        | Error::InvalidCover(_)
        | Error::ScaleExceeded(_)
        | Error::TableRejected(_)
        | Error::Input(_)
        | Error::Io(_) => EXIT_INPUT,
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Runs a parsed command line: `(stdout, stderr, exit code)`.
pub fn run(cli: &Cli) -> (String, String, i32) {
    let (result, doc_format) = dispatch(cli);
    let format = cli.format.or(doc_format).unwrap_or_default();
    let (out, err) = result.render(format);
    (out, err, result.exit_code)
}

fn dispatch(cli: &Cli) -> (RunResult, Option<Format>) {
    match &cli.command {
        Command::Analyze { path: None } => match &cli.sweep {
            Some(s) => (sweep(s), None),
            None => (
                RunResult::new("analyze", Value::Null).fail(&Error::Argument("analyze needs a path or --sweep".into())),
                None,
            ),
        },
        Command::Analyze { path: Some(_) } if cli.sweep.is_some() => (
            RunResult::new("analyze", Value::Null).fail(&Error::Argument("give either a path or --sweep, not both".into())),
            None,
        ),
        Command::Analyze { path: Some(p) } => with_input("analyze", p, analyze),
        Command::Hodge { path } => with_input("hodge", path, hodge),
        Command::Bound { path, degree, level } => with_input("bound", path, |r, spec| bound(r, spec, *degree, *level)),
        Command::Euler { path } => with_input("euler", path, euler),
        Command::Local(args) => (local(args), None),
        Command::Selftest => (selftest(cli.seed), None),
    }
}

fn with_input(
    command: &str,
    path: &std::path::Path,
    f: impl FnOnce(RunResult, &CoverSpec) -> RunResult,
) -> (RunResult, Option<Format>) {
    match load(path) {
        Ok((doc, spec)) => {
            let format = doc.options.format;
            let r = RunResult::new(command, to_value(&doc.resolved(&spec)));
            (f(r, &spec), format)
        }
        Err(e) => (RunResult::new(command, json!({ "path": path.display().to_string() })).fail(&e), None),
    }
}

fn describe(spec: &CoverSpec) -> String {
    let group = match spec.group().cyclic_order() {
        Some(d) => format!("cyclic cover of degree {d}"),
        None => format!("abelian cover with group {:?}", spec.group().orders()),
    };
    match spec.base() {
        Base::ProjectiveSpace(a) => {
            let m: Vec<String> = a.multiplicities().iter().map(u64::to_string).collect();
            format!("{group} of P^{} branched over {} hyperplanes (multiplicities {})", a.dim(), a.len(), m.join(","))
        }
        Base::ProductP1 { points_per_factor } => {
            format!("{group} of (P^1)^{} branched over {points_per_factor:?} points per factor", points_per_factor.len())
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_report(spec: &CoverSpec, r: &TheoremReport) -> String {
    let mut s = String::new();
    let h = &r.hypotheses;
    let _ = writeln!(s, "input: {}", describe(spec));
    let _ = writeln!(s, "hypotheses:");
    let nc = if h.normal_crossing {
        "yes".to_string()
    } else {
        format!("no ({} flat(s) fail)", h.non_normal_crossing_flats)
    };
    let _ = writeln!(s, "  normal crossings: {nc}");
    if let Some(c) = &h.coprimality {
        let mults = if c.multiplicities_coprime {
            "yes".to_string()
        } else {
            format!("no (failing: {:?})", c.failing_multiplicities)
        };
        let inc = if c.essential_incidences_coprime {
            "yes".to_string()
        } else {
            format!("no (failing: {:?})", c.failing_incidences)
        };
        let _ = writeln!(s, "  multiplicities coprime to d: {mults}");
        let _ = writeln!(s, "  essential incidence numbers coprime to d: {inc}");
    }
    if let Some(p) = h.degree_prime {
        let _ = writeln!(s, "  d prime: {}", yes_no(p));
    }
    let _ = writeln!(s, "  weak Lefschetz: {} ({})", yes_no(h.weak_lefschetz.holds), h.weak_lefschetz.reason);
    match &h.hodge_unavailable {
        None => {
            let _ = writeln!(s, "  Hodge numbers: exact");
        }
        Some(reason) => {
            let _ = writeln!(s, "  Hodge numbers: unavailable ({reason})");
        }
    }
    if let Some(b) = &h.condition_b {
        let verdict = match (b.holds, b.equality) {
            (true, true) => "holds, equality",
            (true, false) => "holds",
            _ => "fails",
        };
        let _ = writeln!(s, "  condition (b): phi(d) h^(0,n) = {} vs dim H^n_nt = {} ({verdict})", b.lhs, b.rhs);
    }
    let _ = writeln!(s, "e(Y) = {}", r.euler_cover);
    match r.dim_h_nt {
        Some(v) => {
            let _ = writeln!(s, "dim H^{}_nt = {v}", r.dim);
        }
        None => {
            let _ = writeln!(s, "dim H^{}_nt: not determined", r.dim);
        }
    }
    let c = &r.conclusions;
    let verdict = |v: &crate::bounds::Verdict| {
        format!("{} ({})", if v.licensed { "licensed" } else { "not licensed" }, v.reason)
    };
    let _ = writeln!(s, "conclusions:");
    let _ = writeln!(s, "  Beilinson-Hodge: {}", verdict(&c.beilinson_hodge));
    let _ = writeln!(s, "  GHC: {}", verdict(&c.generalized_hodge));
    if let Some(b) = &c.hodge_cycle_bound {
        let _ = writeln!(s, "  Hodge-cycle bound (i={}, k={}): {}", b.degree, b.level, b.bound);
    }
    s
}

fn analyze(mut r: RunResult, spec: &CoverSpec) -> RunResult {
    match theorem_report(spec) {
        Ok(report) => {
            r.text = render_report(spec, &report);
            if !report.hypotheses_pass() {
                r.exit_code = EXIT_HYPOTHESIS;
            }
            r.output = to_value(&report);
            r
        }
        Err(e) => r.fail(&e),
    }
}

fn table_json(t: &EigenHodgeTable) -> Value {
    Value::Array(
        t.blocks()
            .iter()
            .map(|b| {
                json!({
                    "character": b.character.label(),
                    "exponents": b.character.exponents(),
                    "support": b.support,
                    "provenance": b.provenance,
                    "h": b.h,
                })
            })
            .collect(),
    )
}

fn euler_only_text(e: &EulerOnly) -> String {
    let mut s = format!("exact Hodge numbers unavailable: {}\nEuler characteristics per character:\n", e.reason);
    for c in &e.characters {
        let _ = writeln!(s, "  {}: {}", c.character.label(), c.euler);
    }
    s
}

fn hodge(mut r: RunResult, spec: &CoverSpec) -> RunResult {
    let primary = match hodge_table(spec) {
        Ok(t) => t,
        Err(Error::HodgeUnavailable(e)) => {
            r.text = euler_only_text(&e);
            r.output = json!({ "euler_only": to_value(&*e) });
            r.exit_code = EXIT_HYPOTHESIS;
            r.diagnostics.push(format!("exact Hodge computation unavailable ({})", e.reason));
            return r;
        }
        Err(e) => return r.fail(&e),
    };
    // second route: HRR on P^n; on (P^1)^n the Euler characteristics
    // per character stand in
    let second = match spec.base() {
        Base::ProjectiveSpace(_) => match hodge_table_hrr(spec) {
            Ok(t) => Some(t),
            Err(e) => return r.fail(&e),
        },
        Base::ProductP1 { .. } => None,
    };
    let routes_agree = second.as_ref().map(|t| t.same_numbers(&primary));
    let euler = character_euler(spec);
    let euler_agree = primary.blocks().iter().zip(&euler).all(|(b, &e)| {
        let alt: i64 = b
            .h
            .iter()
            .enumerate()
            .flat_map(|(p, row)| row.iter().enumerate().map(move |(q, &v)| if (p + q) % 2 == 0 { v } else { -v }))
            .sum();
        alt == e
    });
    let mut s = primary.to_string();
    let _ = writeln!(s);
    match routes_agree {
        Some(a) => {
            let _ = writeln!(s, "routes agree (generating function vs HRR): {}", yes_no(a));
        }
        None => {
            let _ = writeln!(s, "routes agree: single route (Künneth) on a product base");
        }
    }
    let _ = writeln!(s, "Euler characteristics agree: {}", yes_no(euler_agree));
    let _ = writeln!(s, "dim H^{}_nt = {}", primary.dim(), primary.nontrivial_degree(primary.dim()));
    r.text = s;
    r.output = json!({
        "dim": primary.dim(),
        "blocks": table_json(&primary),
        "routes_agree": routes_agree,
        "euler_agree": euler_agree,
        "nontrivial_total": primary.nontrivial_total(),
    });
    if routes_agree == Some(false) || !euler_agree {
        r.exit_code = EXIT_INVARIANT;
        r.diagnostics.push("independent routes disagree".into());
    }
    r
}

fn bound(mut r: RunResult, spec: &CoverSpec, degree: Option<usize>, level: Option<usize>) -> RunResult {
    let i = degree.unwrap_or(spec.dim());
    if i > 2 * spec.dim() {
        return r.fail(&Error::Argument(format!("degree {i} exceeds 2n = {}", 2 * spec.dim())));
    }
    let Some(k) = level.or_else(|| default_level(i)) else {
        return r.fail(&Error::Argument(format!("no band below the middle in degree {i}; pass --level")));
    };
    let table = match hodge_table(spec) {
        Ok(t) => t,
        Err(e) => return r.fail(&e),
    };
    let result = characters_abelian(spec.group()).and_then(|chars| hodge_cycle_bound(&table, &chars, i, k));
    match result {
        Ok(b) => {
            let mut s = format!("Hodge-cycle bound in H^{i}_nt at level k={k}\n");
            let _ = writeln!(s, "  dim H^{i}_nt = {}", b.dim_h_nt);
            let _ = writeln!(s, "  rational span of the band = {}", b.sigma);
            for o in b.breakdown.iter().filter(|o| o.contribution > 0) {
                let _ = writeln!(s, "    {{{}}}: {} x {} = {}", o.members.join(", "), o.copies, o.sigma_orbit, o.contribution);
            }
            let _ = writeln!(s, "  difference = {}", b.raw);
            let _ = writeln!(s, "  termwise band difference = {}", b.alternative_raw);
            let _ = writeln!(s, "bound = {}", b.bound);
            r.text = s;
            r.output = to_value(&b);
            r
        }
        Err(e) => r.fail(&e),
    }
}

fn euler(mut r: RunResult, spec: &CoverSpec) -> RunResult {
    let e = euler_cover(spec);
    let per = character_euler(spec);
    let wl = weak_lefschetz(spec);
    let nt = dim_h_nt(spec);
    let mut s = format!("e(Y) = {e}\ne(base) = {}\n", spec.base().euler());
    let _ = writeln!(s, "per character:");
    let characters = spec.characters();
    for (chi, v) in characters.iter().zip(&per) {
        let _ = writeln!(s, "  {}: {v}", chi.label());
    }
    match &nt {
        Ok(v) => {
            let _ = writeln!(s, "dim H^{}_nt = {v}", spec.dim());
        }
        Err(err) => {
            let _ = writeln!(s, "dim H^{}_nt: not determined ({err})", spec.dim());
        }
    }
    r.text = s;
    r.output = json!({
        "euler_cover": e,
        "euler_base": spec.base().euler(),
        "characters": characters.iter().zip(&per).map(|(c, v)| json!({ "character": c.label(), "euler": v })).collect::<Vec<_>>(),
        "weak_lefschetz": to_value(&wl),
        "dim_h_nt": nt.as_ref().ok(),
    });
    r
}

fn local(args: &LocalArgs) -> RunResult {
    let input = json!({ "exponents": args.exponents, "degree": args.degree, "gamma": args.gamma });
    let r = RunResult::new("local", input);
    match (&args.exponents, args.degree, &args.gamma) {
        (Some(a), Some(d), None) => local_exponents(r, a, d),
        (None, None, Some(g)) => local_gamma(r, g),
        _ => r.fail(&Error::Argument("pass --exponents with --degree, or --gamma".into())),
    }
}

fn local_exponents(mut r: RunResult, a: &[i64], d: i64) -> RunResult {
    if let Some(bad) = a.iter().find(|&&x| x < 0) {
        return r.fail(&Error::Argument(format!("exponent {bad} is negative")));
    }
    if d < 1 {
        return r.fail(&Error::Argument(format!("degree {d} must be >= 1")));
    }
    let e = match ExponentData::new(a.iter().map(|&x| x as u64).collect(), d as u64) {
        Ok(e) => e,
        Err(err) => return r.fail(&err),
    };
    let red = match reduce_exponents(&e) {
        Ok(x) => x,
        Err(err) => return r.fail(&err),
    };
    let mut s = format!("model {e}\n");
    let _ = writeln!(s, "  components: {} (gcd of exponents and degree)", red.components);
    if !red.smooth_factors.is_empty() {
        let _ = writeln!(s, "  smooth factors split off at positions {:?}", red.smooth_factors);
    }
    let _ = writeln!(s, "  reduced model {}", red.reduced);
    let sat = if red.reduced.dim() == 0 {
        let _ = writeln!(s, "  no branching left: smooth");
        None
    } else {
        match saturation_hilbert_basis(&red.reduced) {
            Ok(x) => Some(x),
            Err(err) => {
                r.text = s;
                return r.fail(&err);
            }
        }
    };
    if let Some(sat) = &sat {
        let _ = writeln!(s, "  semigroup generators {:?}", sat.generators);
        let _ = writeln!(s, "  lattice basis {:?}", sat.lattice_basis);
        let _ = writeln!(s, "  Hilbert basis of the saturation {:?}", sat.hilbert_basis);
        if sat.saturated {
            let _ = writeln!(s, "  already normal");
        } else {
            let _ = writeln!(s, "  normalization adds {:?}", sat.added);
        }
        if sat.smooth {
            let _ = writeln!(s, "verdict: normalization is smooth");
        } else {
            let _ = writeln!(s, "verdict: finite quotient singularity, group order {}", sat.quotient_order);
        }
    }
    r.text = s;
    r.output = json!({ "reduction": to_value(&red), "saturation": sat.as_ref().map(to_value) });
    r
}

fn parse_matrix(g: &str) -> Result<IntMatrix, Error> {
    let rows = g
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Argument(format!("bad matrix entry {x:?} in --gamma"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if rows.windows(2).any(|w| w[0].len() != w[1].len()) {
        return Err(Error::Argument("--gamma rows have different lengths".into()));
    }
    IntMatrix::from_rows(&rows)
}

fn local_gamma(mut r: RunResult, g: &str) -> RunResult {
    let m = match parse_matrix(g).and_then(|m| local_abelian_model(&m).map(|x| (m, x))) {
        Ok(x) => x,
        Err(e) => return r.fail(&e),
    };
    let (gamma, model) = m;
    let mut s = format!("Gamma = {gamma:?}\nindex [Z^{} : Gamma] = {}\n", gamma.rows(), model.index);
    let nontrivial: Vec<_> = model.nontrivial().collect();
    if nontrivial.is_empty() {
        let _ = writeln!(s, "trivial cover");
    }
    for f in nontrivial {
        let monomial: Vec<String> = f
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(j, &a)| if a == 1 { format!("x{}", j + 1) } else { format!("x{}^{a}", j + 1) })
            .collect();
        let _ = writeln!(s, "  y^{} = {}", f.degree, if monomial.is_empty() { "1".into() } else { monomial.join(" ") });
    }
    r.text = s;
    r.output = to_value(&model);
    r
}

fn selftest(seed: u64) -> RunResult {
    let mut r = RunResult::new("selftest", json!({ "seed": seed }));
    let checks = crate::selftest::run(seed);
    let mut s = String::new();
    for c in &checks {
        let _ = writeln!(s, "[{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
        if !c.passed {
            r.diagnostics.push(format!("identity failed: {}", c.name));
            r.exit_code = EXIT_INVARIANT;
        }
    }
    r.text = s;
    r.output = to_value(&checks);
    r
}

/// Parsed `--sweep` grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepGrid {
    pub d: (u64, u64),
    pub n: (usize, usize),
    pub product: bool,
}

pub fn parse_sweep(s: &str) -> Result<SweepGrid, Error> {
    let mut d = None;
    let mut n = None;
    let mut product = false;
    let range = |v: &str| -> Result<(u64, u64), Error> {
        let bad = || Error::Argument(format!("bad range {v:?} in --sweep; expected a..b or a"));
        match v.split_once("..") {
            Some((a, b)) => Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)),
            None => {
                let x = v.trim().parse().map_err(|_| bad())?;
                Ok((x, x))
            }
        }
    };
    for part in s.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Argument(format!("bad --sweep component {part:?}; expected key=value")))?;
        match k.trim() {
            "d" => d = Some(range(v)?),
            "n" => n = Some(range(v)?),
            "base" => match v.trim() {
                "pn" => product = false,
                "p1" => product = true,
                other => return Err(Error::Argument(format!("unknown sweep base {other:?}; use pn or p1"))),
            },
            other => return Err(Error::Argument(format!("unknown sweep key {other:?}"))),
        }
    }
    let d = d.ok_or_else(|| Error::Argument("--sweep needs d=".into()))?;
    let n = n.ok_or_else(|| Error::Argument("--sweep needs n=".into()))?;
    if d.0 < 2 || d.0 > d.1 || n.0 < 1 || n.0 > n.1 {
        return Err(Error::Argument(format!("--sweep ranges need 2 <= d_lo <= d_hi, 1 <= n_lo <= n_hi; got d={d:?} n={n:?}")));
    }
    Ok(SweepGrid { d, n: (n.0 as usize, n.1 as usize), product })
}

#[derive(Debug, Serialize)]
struct SweepRow {
    d: u64,
    n: usize,
    /// `h^(k,n-k)_nt` for `k = 0..=n`.
    h_nt: Vec<i64>,
    dim_h_nt: i64,
    euler_cover: i64,
    condition_b: Option<(i64, i64)>,
    generalized_hodge: bool,
    bound: Option<i64>,
    hypotheses_pass: bool,
}

fn sweep_point(d: u64, n: usize, product: bool) -> Result<SweepRow, Error> {
    let spec = if product {
        CoverSpec::cyclic_product(vec![d as usize; n], d)?
    } else {
        CoverSpec::cyclic(Arrangement::generic(n, d as usize)?, d)?
    };
    let report = theorem_report(&spec)?;
    let table = hodge_table(&spec)?;
    let b = condition_b_check(&spec, &table)?;
    Ok(SweepRow {
        d,
        n,
        h_nt: (0..=n).map(|k| table.nontrivial_entry(k, n - k)).collect(),
        dim_h_nt: table.nontrivial_degree(n),
        euler_cover: report.euler_cover,
        condition_b: Some((b.lhs, b.rhs)),
        generalized_hodge: report.conclusions.generalized_hodge.licensed,
        bound: report.conclusions.hodge_cycle_bound.as_ref().map(|x| x.bound),
        hypotheses_pass: report.hypotheses_pass(),
    })
}

fn sweep(s: &str) -> RunResult {
    let grid = match parse_sweep(s) {
        Ok(g) => g,
        Err(e) => return RunResult::new("analyze", json!({ "sweep": s })).fail(&e),
    };
    let mut r = RunResult::new("analyze", json!({ "sweep": to_value(&grid) }));
    let points: Vec<(u64, usize)> =
        (grid.d.0..=grid.d.1).flat_map(|d| (grid.n.0..=grid.n.1).map(move |n| (d, n))).collect();
    let mut rows: Vec<((u64, usize), Result<SweepRow, Error>)> =
        points.par_iter().map(|&(d, n)| ((d, n), sweep_point(d, n, grid.product))).collect();
    rows.sort_by_key(|(k, _)| *k);

    let base = if grid.product { "(P^1)^n, d points per factor" } else { "P^n, d generic hyperplanes" };
    let mut text = format!("sweep over cyclic covers of degree d of {base}\n");
    let _ = writeln!(text, "{:>3} {:>2} {:>10} {:>10} {:>16} {:>5} {:>5}  h^(k,n-k)_nt", "d", "n", "e(Y)", "dim H_nt", "condition (b)", "GHC", "bound");
    let mut out = Vec::new();
    for ((d, n), row) in rows {
        match row {
            Ok(row) => {
                if !row.hypotheses_pass {
                    r.exit_code = r.exit_code.max(EXIT_HYPOTHESIS);
                }
                let cb = row.condition_b.map(|(l, h)| format!("{l} vs {h}")).unwrap_or_default();
                let bound = row.bound.map(|b| b.to_string()).unwrap_or_else(|| "-".into());
                let hs: Vec<String> = row.h_nt.iter().map(i64::to_string).collect();
                let _ = writeln!(
                    text,
                    "{d:>3} {n:>2} {:>10} {:>10} {cb:>16} {:>5} {bound:>5}  {}",
                    row.euler_cover,
                    row.dim_h_nt,
                    yes_no(row.generalized_hodge),
                    hs.join(" ")
                );
                out.push(to_value(&row));
            }
            Err(e) => {
                r.exit_code = r.exit_code.max(exit_code(&e));
                r.diagnostics.push(format!("d={d} n={n}: {e}"));
                out.push(json!({ "d": d, "n": n, "error": e.to_string() }));
            }
        }
    }
    r.text = text;
    r.output = Value::Array(out);
    r
}

/// Echo of a cover built in code, for callers that do not start from a file.
pub fn echo(spec: &CoverSpec) -> Value {
    to_value(&InputDocument::from_spec(spec))
}
