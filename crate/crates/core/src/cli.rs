//! Command-line front end.
//!
//! Exit codes: 0 verified or completed, 1 falsified or not verified, 2 bad
//! parameters, 3 subset guard exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::exactpoly::{default_width, largest_real_root, rational_to_f64, IntPolynomial, RootBracket};
use crate::extremal::{
    brute_force_extremal, verify_counterexample, verify_counterexample_with_search, CounterexampleReport,
    ExtremalError, SearchConfig, SearchReport, DEFAULT_MAX_SUBSETS, DEFAULT_SEARCH_TOL,
};
use crate::graphs::{build_ferrers, BipartiteGraph, DegreeSequence};
use crate::quotient::{quotient, RowPartition};
use crate::report::{grid, grid_csv, sig12, to_json_string, GridRow};
use crate::spectral::{h_matrix, spectral_radius_graph, spectral_radius_sym, DEFAULT_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_BAD_PARAMETERS: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

pub const MAX_SUBSETS_ENV: &str = "BFP_MAX_SUBSETS";

/// Largest number of distinct degrees for which `spectra` also isolates the
/// radius exactly.
const EXACT_SPECTRA_LIMIT: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "bfp", version, about = "Spectral radii of bipartite graphs with a fixed number of edges")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Print a JSON report.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Print CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Keep one graph per isomorphism class while searching.
    #[arg(long, global = true)]
    dedup: bool,
    /// Search connected graphs only.
    #[arg(long = "connected-only", global = true)]
    connected_only: bool,
    /// Largest number of edge subsets a search may visit.
    #[arg(long = "max-subsets", global = true)]
    max_subsets: Option<u64>,
    /// Maximizer tie tolerance for searches; power iteration tolerance for spectra.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads.
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that K^± beats every one-vertex-added graph in K(p, q, p(q−k)).
    Verify {
        #[arg(long = "p")]
        p: u64,
        #[arg(long = "q")]
        q: u64,
        #[arg(long = "k")]
        k: u64,
        /// Also search the whole family exhaustively.
        #[arg(long)]
        search: bool,
    },
    /// Find the graphs of largest spectral radius in K(p, q, e).
    Search {
        #[arg(long = "p")]
        p: u64,
        #[arg(long = "q")]
        q: u64,
        #[arg(long = "e")]
        e: u64,
    },
    /// Print H(D) and the spectral radius for a degree sequence or a graph file.
    Spectra {
        /// Degree sequence such as 6,5^2,4.
        #[arg(long, required_unless_present = "graph", conflicts_with = "graph")]
        degrees: Option<DegreeSequence>,
        /// Order of the column part; defaults to the largest degree.
        #[arg(long = "q", requires = "degrees")]
        q: Option<usize>,
        /// Graph in text form: a line "p q" followed by p rows of 0/1.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Run verify over p, k and q = kp + offset.
    Grid {
        /// Values of p, as 3..6, 3..=6, 4 or 3,5.
        #[arg(long = "p", value_parser = parse_values)]
        p: Values,
        #[arg(long = "k", value_parser = parse_values)]
        k: Values,
        #[arg(long = "q-offsets", value_parser = parse_values, default_value = "3..10")]
        q_offsets: Values,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Values(Vec<u64>);

fn parse_values(s: &str) -> Result<Values, String> {
    parse_range(s).map(Values)
}

/// Inclusive range `a..b` or `a..=b`, a single value, or a comma list.
pub fn parse_range(s: &str) -> Result<Vec<u64>, String> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let (lo, hi) = (num(lo)?, num(hi)?);
        return Ok((lo..=hi).collect());
    }
    s.split(',').filter(|t| !t.trim().is_empty()).map(num).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
    Csv,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub format: Format,
    pub search: SearchConfig,
    pub power_tol: f64,
    pub workers: Option<usize>,
}

impl RunConfig {
    fn from_args(g: &GlobalArgs, env_guard: Option<String>) -> Result<Self, String> {
        let format = match (g.json, g.csv) {
            (true, _) => Format::Json,
            (_, true) => Format::Csv,
            _ => Format::Human,
        };
        let max_subsets = match (g.max_subsets, env_guard) {
            (Some(m), _) => m,
            (None, Some(v)) => v
                .trim()
                .parse()
                .map_err(|_| format!("{MAX_SUBSETS_ENV}={v:?} is not a count"))?,
            (None, None) => DEFAULT_MAX_SUBSETS,
        };
        if max_subsets < 1 {
            return Err("--max-subsets must be at least 1".into());
        }
        if let Some(t) = g.tol {
            if !(t.is_finite() && t >= 0.0) {
                return Err(format!("--tol {t} must be a nonnegative number"));
            }
        }
        if g.workers == Some(0) {
            return Err("--workers must be at least 1".into());
        }
        Ok(Self {
            format,
            search: SearchConfig {
                connected_only: g.connected_only,
                dedup: g.dedup,
                max_subsets,
                tol: g.tol.unwrap_or(DEFAULT_SEARCH_TOL),
                spanning_only: false,
            },
            power_tol: g.tol.filter(|&t| t > 0.0).unwrap_or(DEFAULT_TOL),
            workers: g.workers,
        })
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return if code == 0 { EXIT_OK } else { EXIT_BAD_PARAMETERS };
        }
    };
    let cfg = match RunConfig::from_args(&cli.global, std::env::var(MAX_SUBSETS_ENV).ok()) {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_BAD_PARAMETERS;
        }
    };
    let outcome = match cfg.workers {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command, &cfg)),
            Err(e) => Outcome::fail(EXIT_FALSIFIED, format!("cannot start {n} workers: {e}")),
        },
        None => dispatch(&cli.command, &cfg),
    };
    let _ = out.write_all(outcome.stdout.as_bytes());
    let _ = err.write_all(outcome.stderr.as_bytes());
    outcome.code
}

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }

    fn from_error(e: &ExtremalError) -> Self {
        let code = match e {
            ExtremalError::Hypothesis(_) | ExtremalError::InvalidSearch(_) | ExtremalError::Graph(_) => {
                EXIT_BAD_PARAMETERS
            }
            ExtremalError::Guard { .. } => EXIT_GUARD,
            _ => EXIT_FALSIFIED,
        };
        Self::fail(code, e)
    }
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> Outcome {
    match cmd {
        Command::Verify { p, q, k, search } => cmd_verify(*p, *q, *k, *search, cfg),
        Command::Search { p, q, e } => cmd_search(*p, *q, *e, cfg),
        Command::Spectra { degrees, q, graph } => cmd_spectra(degrees.as_ref(), *q, graph.as_deref(), cfg),
        Command::Grid { p, k, q_offsets } => cmd_grid(&p.0, &k.0, &q_offsets.0, cfg),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    to_json_string(value).unwrap_or_else(|e| format!("{{\"error\": {e:?}}}\n"))
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let _ = w.write_record(header);
    for r in rows {
        let _ = w.write_record(r);
    }
    w.into_inner().ok().and_then(|b| String::from_utf8(b).ok()).unwrap_or_default()
}

// ---------------------------------------------------------------------------
// verify

fn cmd_verify(p: u64, q: u64, k: u64, search: bool, cfg: &RunConfig) -> Outcome {
    let result = if search {
        verify_counterexample_with_search(p, q, k, &cfg.search)
    } else {
        verify_counterexample(p, q, k, &cfg.search)
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => return Outcome::from_error(&e),
    };
    let code = if report.verdict { EXIT_OK } else { EXIT_FALSIFIED };
    let text = match cfg.format {
        Format::Json => to_json(&report),
        Format::Csv => grid_csv(&[GridRow::from_report(&report)]).unwrap_or_default(),
        Format::Human => human_verify(&report),
    };
    Outcome::ok(code, text)
}

fn bracket_text(b: &RootBracket) -> String {
    if b.is_exact() {
        format!("= {}", b.lo)
    } else {
        format!("in ({:.12}, {:.12}]", rational_to_f64(&b.lo), rational_to_f64(&b.hi))
    }
}

fn human_verify(r: &CounterexampleReport) -> String {
    let mut s = String::new();
    let t = r.q - r.k;
    let _ = writeln!(s, "instance: p = {}, q = {}, k = {}, e = {}", r.p, r.q, r.k, r.e);
    let _ = writeln!(s, "K^±_{{{},{}}}: D = {}", r.p, t, r.pm_degrees.exponential());
    let _ = writeln!(s, "  g(x) = {}", r.g);
    let _ = writeln!(s, "  rho^2 {}", bracket_text(&r.rho_pm_squared));
    let _ = writeln!(s, "  rho = {} (numeric {})", r.rho_pm, r.rho_pm_numeric);
    for c in &r.candidates {
        let _ = writeln!(s, "candidate a = {}: ^{}K_{{{},{}}}, D = {}", c.a, r.e, r.p, r.q - c.a, c.degrees.exponential());
        let _ = writeln!(s, "  f(x) = {}", c.f);
        let _ = writeln!(s, "  rho^2 {}", bracket_text(&c.rho_squared));
        let _ = writeln!(s, "  rho = {} (numeric {})", c.rho, c.rho_numeric);
        let _ = writeln!(
            s,
            "  f - g = {} [{}]",
            c.certificate.diff,
            serde_json::to_value(c.certificate.positivity)
                .ok()
                .and_then(|v| v.as_str().map(str::to_owned))
                .unwrap_or_default()
        );
        let _ = writeln!(s, "  rho(candidate) vs rho(K^±): {:?} by {:?}", c.comparison, c.method);
    }
    let _ = writeln!(
        s,
        "deficient-column hosts: {}",
        if r.exclusion.deficient_column_shapes.is_empty() { "none" } else { "present" }
    );
    if let Some(search) = &r.search {
        s.push_str(&human_search(search));
    }
    let _ = writeln!(
        s,
        "verdict: {}",
        if r.verdict {
            "true (K^± beats every one-vertex-added graph)"
        } else {
            "false"
        }
    );
    s
}

// ---------------------------------------------------------------------------
// search

fn cmd_search(p: u64, q: u64, e: u64, cfg: &RunConfig) -> Outcome {
    if p == 0 || q == 0 || e == 0 {
        return Outcome::fail(EXIT_BAD_PARAMETERS, format!("requires p, q, e >= 1 (got p = {p}, q = {q}, e = {e})"));
    }
    let found = match brute_force_extremal(p, q, e, &cfg.search) {
        Ok(f) => f,
        Err(err) => return Outcome::from_error(&err),
    };
    let report = SearchReport::new(&found, &cfg.search);
    let text = match cfg.format {
        Format::Json => to_json(&report),
        Format::Csv => search_csv(&report),
        Format::Human => human_search(&report),
    };
    Outcome::ok(EXIT_OK, text)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn list(xs: &[usize]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn human_search(r: &SearchReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "search K({}, {}, {}): {} edge subsets, {} {}",
        r.p,
        r.q,
        r.e,
        r.raw_subsets,
        r.members,
        if r.dedup { "isomorphism classes" } else { "members" }
    );
    let _ = writeln!(s, "sqrt(e) = {}", r.sqrt_e);
    match r.max_rho {
        None => {
            let _ = writeln!(s, "no members");
        }
        Some(m) => {
            let _ = writeln!(
                s,
                "max rho = {m}, attained by {} graphs in {} classes",
                r.maximizer_count,
                r.maximizers.len()
            );
        }
    }
    for (i, c) in r.maximizers.iter().enumerate() {
        let mut tags = Vec::new();
        tags.push(if c.connected { "connected" } else { "disconnected" }.to_string());
        tags.extend(c.one_vertex_added.iter().map(|o| o.label.clone()));
        if c.plus_minus {
            tags.push("K^± form".into());
        }
        let _ = writeln!(
            s,
            "maximizer {}: rho = {}, copies = {}, row degrees ({}), column degrees ({}), {}",
            i + 1,
            c.rho,
            c.copies,
            list(&c.row_degrees),
            list(&c.col_degrees),
            tags.join(", ")
        );
        for line in c.representative.to_text().lines() {
            let _ = writeln!(s, "  {line}");
        }
    }
    let _ = writeln!(s, "one-vertex-added among maximizers: {}", yes_no(r.one_vertex_added_among_maximizers));
    let _ = writeln!(s, "K^± among maximizers: {}", yes_no(r.plus_minus_among_maximizers));
    s
}

fn search_csv(r: &SearchReport) -> String {
    let rows: Vec<Vec<String>> = r
        .maximizers
        .iter()
        .map(|c| {
            vec![
                c.rho.to_string(),
                c.copies.to_string(),
                list(&c.row_degrees),
                list(&c.col_degrees),
                c.connected.to_string(),
                c.one_vertex_added.iter().map(|o| o.label.clone()).collect::<Vec<_>>().join(" "),
                c.plus_minus.to_string(),
                c.representative.rows().map(|row| row.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>()).collect::<Vec<_>>().join("/"),
            ]
        })
        .collect();
    csv_text(
        &["rho", "copies", "row_degrees", "col_degrees", "connected", "one_vertex_added", "plus_minus", "graph"],
        &rows,
    )
}

// ---------------------------------------------------------------------------
// spectra

/// Spectral data of a degree sequence or an explicit graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectraReport {
    pub p: usize,
    pub q: usize,
    pub e: u64,
    pub degrees: Option<DegreeSequence>,
    pub graph: BipartiteGraph,
    pub h: Option<Vec<Vec<u64>>>,
    /// `ρ(H(D))` by power iteration.
    pub rho_h: Option<f64>,
    /// `ρ(G)` by power iteration on the biadjacency Gram matrix.
    pub rho_graph: f64,
    pub iterations: usize,
    pub residual: f64,
    pub sqrt_e: f64,
    pub complete_bipartite: bool,
    pub connected: bool,
    /// Characteristic polynomial of the quotient of `H(D)` over equal degrees.
    pub quotient_char_poly: Option<IntPolynomial>,
    pub rho_squared_exact: Option<RootBracket>,
    pub rho_exact: Option<f64>,
}

fn cmd_spectra(
    degrees: Option<&DegreeSequence>,
    q: Option<usize>,
    graph: Option<&std::path::Path>,
    cfg: &RunConfig,
) -> Outcome {
    let (g, degrees) = match (degrees, graph) {
        (Some(d), _) => {
            let q = q.unwrap_or(d.max_degree() as usize);
            match build_ferrers(d, q) {
                Ok(f) => (f.into_graph(), Some(d.clone())),
                Err(e) => return Outcome::fail(EXIT_BAD_PARAMETERS, e),
            }
        }
        (None, Some(path)) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return Outcome::fail(EXIT_BAD_PARAMETERS, format!("{}: {e}", path.display())),
            };
            match BipartiteGraph::from_text(&text) {
                Ok(g) => {
                    let d = g.ferrers_degrees();
                    (g, d)
                }
                Err(e) => return Outcome::fail(EXIT_BAD_PARAMETERS, e),
            }
        }
        (None, None) => return Outcome::fail(EXIT_BAD_PARAMETERS, "one of --degrees or --graph is required"),
    };
    let report = match spectra(g, degrees, cfg.power_tol) {
        Ok(r) => r,
        Err(msg) => return Outcome::fail(EXIT_FALSIFIED, msg),
    };
    let text = match cfg.format {
        Format::Json => to_json(&report),
        Format::Csv => csv_text(
            &["p", "q", "e", "degrees", "rho_h", "rho_graph", "rho_exact", "sqrt_e"],
            &[vec![
                report.p.to_string(),
                report.q.to_string(),
                report.e.to_string(),
                report.degrees.as_ref().map(ToString::to_string).unwrap_or_default(),
                report.rho_h.map(|x| x.to_string()).unwrap_or_default(),
                report.rho_graph.to_string(),
                report.rho_exact.map(|x| x.to_string()).unwrap_or_default(),
                report.sqrt_e.to_string(),
            ]],
        ),
        Format::Human => human_spectra(&report),
    };
    Outcome::ok(EXIT_OK, text)
}

fn spectra(g: BipartiteGraph, degrees: Option<DegreeSequence>, tol: f64) -> Result<SpectraReport, String> {
    let e = g.edge_count() as u64;
    let radius = spectral_radius_graph(&g, tol).map_err(|e| e.to_string())?;
    let (mut h_rows, mut rho_h, mut poly, mut bracket) = (None, None, None, None);
    if let Some(d) = &degrees {
        let h = h_matrix(d);
        let rows = h.to_rows();
        rho_h = Some(sig12(spectral_radius_sym(&h.to_sym(), tol).map_err(|e| e.to_string())?.rho));
        let partition = RowPartition::degree_runs(d);
        if partition.block_count() <= EXACT_SPECTRA_LIMIT {
            let b = quotient(&rows, &partition).map_err(|e| e.to_string())?;
            let cp = b.characteristic_polynomial().map_err(|e| e.to_string())?;
            bracket = Some(largest_real_root(&cp, &default_width()).map_err(|e| e.to_string())?);
            poly = Some(cp);
        }
        h_rows = Some(rows);
    }
    let rho_exact = bracket
        .as_ref()
        .map(|b| sig12(rational_to_f64(&b.midpoint()).max(0.0).sqrt()));
    Ok(SpectraReport {
        p: g.p(),
        q: g.q(),
        e,
        degrees,
        h: h_rows,
        rho_h,
        rho_graph: sig12(radius.rho),
        iterations: radius.iterations,
        residual: sig12(radius.residual),
        sqrt_e: sig12((e as f64).sqrt()),
        complete_bipartite: g.is_complete_bipartite(),
        connected: g.restricted().is_connected(),
        quotient_char_poly: poly,
        rho_squared_exact: bracket,
        rho_exact,
        graph: g,
    })
}

fn human_spectra(r: &SpectraReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "parts ({}, {}), e = {}", r.p, r.q, r.e);
    if let Some(d) = &r.degrees {
        let _ = writeln!(s, "D = {} = {}", d, d.exponential());
    }
    let _ = writeln!(s, "biadjacency:");
    for line in r.graph.to_text().lines().skip(1) {
        let _ = writeln!(s, "  {line}");
    }
    if let Some(h) = &r.h {
        let width = h.iter().flatten().max().map_or(1, |m| m.to_string().len());
        let _ = writeln!(s, "H(D):");
        for row in h {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            let _ = writeln!(s, "  {}", cells.join(" "));
        }
    }
    if let Some(rho_h) = r.rho_h {
        let _ = writeln!(s, "rho(H(D)) = {rho_h}");
    }
    let _ = writeln!(
        s,
        "rho(G) = {} ({} iterations, residual {:.3e})",
        r.rho_graph, r.iterations, r.residual
    );
    if let (Some(poly), Some(b)) = (&r.quotient_char_poly, &r.rho_squared_exact) {
        let _ = writeln!(s, "quotient characteristic polynomial: {poly}");
        let _ = writeln!(s, "rho(G)^2 {}", bracket_text(b));
    }
    if let Some(x) = r.rho_exact {
        let _ = writeln!(s, "rho(G) exact route = {x}");
    }
    let _ = writeln!(s, "sqrt(e) = {}", r.sqrt_e);
    let _ = writeln!(
        s,
        "complete bipartite: {}, connected: {}",
        yes_no(r.complete_bipartite),
        yes_no(r.connected)
    );
    s
}

// ---------------------------------------------------------------------------
// grid

fn cmd_grid(ps: &[u64], ks: &[u64], offsets: &[u64], cfg: &RunConfig) -> Outcome {
    if ps.is_empty() || ks.is_empty() {
        return Outcome::fail(EXIT_BAD_PARAMETERS, "--p and --k ranges must be nonempty");
    }
    let rows = grid(ps, ks, offsets, &cfg.search);
    let text = match cfg.format {
        Format::Json => to_json(&rows),
        Format::Csv | Format::Human => match grid_csv(&rows) {
            Ok(t) => t,
            Err(e) => return Outcome::fail(EXIT_FALSIFIED, e),
        },
    };
    Outcome::ok(EXIT_OK, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("bfp").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..6").unwrap(), vec![3, 4, 5, 6]);
        assert_eq!(parse_range("3..=4").unwrap(), vec![3, 4]);
        assert_eq!(parse_range("5").unwrap(), vec![5]);
        assert_eq!(parse_range("1,4").unwrap(), vec![1, 4]);
        assert!(parse_range("7..3").unwrap().is_empty());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn verify_codes() {
        let (code, out, _) = run_str(&["verify", "--p", "3", "--q", "6", "--k", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("verdict: true"));
        let (code, _, err) = run_str(&["verify", "--p", "3", "--q", "5", "--k", "1"]);
        assert_eq!(code, 2);
        assert!(err.contains("requires q > kp+2"));
        let (code, _, err) = run_str(&["verify", "--p", "2", "--q", "9", "--k", "1"]);
        assert_eq!(code, 2);
        assert!(err.contains("requires p > 2"));
        let (code, _, _) = run_str(&["verify", "--p", "x"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn bad_global_flags() {
        assert_eq!(run_str(&["search", "--p", "2", "--q", "2", "--e", "3", "--max-subsets", "0"]).0, 2);
        assert_eq!(run_str(&["search", "--p", "2", "--q", "2", "--e", "3", "--workers", "0"]).0, 2);
        assert_eq!(run_str(&["search", "--p", "2", "--q", "2", "--e", "3", "--tol", "-1"]).0, 2);
        assert_eq!(run_str(&["search", "--p", "0", "--q", "2", "--e", "3"]).0, 2);
        assert_eq!(run_str(&["grid", "--p", "3", "--k", "1", "--json", "--csv"]).0, 2);
    }

    #[test]
    fn guard_from_flag() {
        let (code, _, err) = run_str(&["search", "--p", "3", "--q", "6", "--e", "15", "--max-subsets", "100"]);
        assert_eq!(code, 3);
        assert!(err.contains("816"));
    }

    #[test]
    fn spectra_degrees() {
        let (code, out, _) = run_str(&["spectra", "--degrees", "6,5,4", "--json"]);
        assert_eq!(code, 0);
        let r: SpectraReport = serde_json::from_str(&out).unwrap();
        assert_eq!(r.e, 15);
        assert!((r.rho_graph - 3.7132).abs() < 1e-4);
        assert!((r.rho_exact.unwrap() - r.rho_graph).abs() < 1e-9);
        assert_eq!(r.quotient_char_poly.unwrap(), IntPolynomial::from_i64(&[-4, 17, -15, 1]));
        assert_eq!(run_str(&["spectra", "--degrees", "6,7"]).0, 2);
        assert_eq!(run_str(&["spectra", "--degrees", "6,5", "--q", "4"]).0, 2);
    }
}
