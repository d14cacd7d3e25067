//! Candidate graphs, counterexample verification and exhaustive search over
//! `𝒦(p,q,e)`.
//!
//! A member of `𝒦(p,q,e)` is an `e`-edge subset of `K_{p,q}` taken as its
//! edge-induced subgraph, so vertices of degree zero are simply absent. The
//! subset is rejected when that subgraph is a single complete bipartite
//! block.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::{
    self, check_hypotheses, compare_largest_roots, diff_constant, diff_x_coefficient, f_poly, g_poly,
    rational_to_f64, ComparisonMethod, DiffCertificate, HypothesisError, IntPolynomial, PolyError,
    RootBracket,
};
use crate::graphs::{build_family, pad_columns, BipartiteGraph, DegreeSequence, Family, GraphError};
use crate::report::sig12;
use crate::spectral::{spectral_radius_graph, SpectralError, DEFAULT_TOL};

pub const DEFAULT_MAX_SUBSETS: u64 = 5_000_000;
pub const DEFAULT_SEARCH_TOL: f64 = 1e-9;
/// Largest tolerated gap between the exact and floating values of one radius.
pub const AGREEMENT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtremalError {
    #[error(transparent)]
    Hypothesis(#[from] HypothesisError),
    #[error("C({cells}, {e}) = {subsets} edge subsets exceeds the guard of {guard}")]
    Guard {
        cells: u64,
        e: u64,
        subsets: String,
        guard: u64,
    },
    #[error("invalid search: {0}")]
    InvalidSearch(String),
    #[error("exact and numeric routes disagree on {what}: exact {exact}, numeric {numeric}")]
    Disagreement { what: String, exact: f64, numeric: f64 },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub type Result<T> = std::result::Result<T, ExtremalError>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub connected_only: bool,
    pub dedup: bool,
    pub max_subsets: u64,
    /// Maximizers are all graphs within `tol` of the largest radius.
    pub tol: f64,
    /// Also require every vertex of `K_{p,q}` to be covered.
    pub spanning_only: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            connected_only: false,
            dedup: false,
            max_subsets: DEFAULT_MAX_SUBSETS,
            tol: DEFAULT_SEARCH_TOL,
            spanning_only: false,
        }
    }
}

impl SearchConfig {
    fn validate(&self) -> Result<()> {
        if self.max_subsets < 1 {
            return Err(ExtremalError::InvalidSearch("max_subsets must be at least 1".into()));
        }
        if !(self.tol.is_finite() && self.tol >= 0.0) {
            return Err(ExtremalError::InvalidSearch(format!("tolerance {} is not a nonnegative number", self.tol)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootOrder {
    Less,
    Equal,
    Greater,
}

impl From<Ordering> for RootOrder {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => RootOrder::Less,
            Ordering::Equal => RootOrder::Equal,
            Ordering::Greater => RootOrder::Greater,
        }
    }
}

// ---------------------------------------------------------------------------
// candidates

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub a: u64,
    pub degrees: DegreeSequence,
}

impl Candidate {
    /// `G_{D_{k,a}}` inside parts `(p, q)`.
    pub fn graph(&self, q: usize) -> Result<BipartiteGraph> {
        let g = crate::graphs::build_ferrers(&self.degrees, self.degrees.max_degree() as usize)?;
        Ok(pad_columns(g.graph(), q))
    }
}

/// Every shape `rows × cols` inside `p × q` that could host a one-vertex-added
/// graph with `e` edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionCheck {
    /// `(rows−1)·cols < e < rows·cols`, `rows >= 2`: one row short of complete.
    pub deficient_row_shapes: Vec<(u64, u64)>,
    /// `rows·(cols−1) < e < rows·cols`, `cols >= 2`: one column short of complete.
    pub deficient_column_shapes: Vec<(u64, u64)>,
}

impl ExclusionCheck {
    pub fn scan(p: u64, q: u64, e: u64) -> Self {
        let mut deficient_row_shapes = Vec::new();
        let mut deficient_column_shapes = Vec::new();
        for rows in 1..=p {
            for cols in 1..=q {
                let full = rows * cols;
                if e >= full {
                    continue;
                }
                if rows >= 2 && (rows - 1) * cols < e {
                    deficient_row_shapes.push((rows, cols));
                }
                if cols >= 2 && rows * (cols - 1) < e {
                    deficient_column_shapes.push((rows, cols));
                }
            }
        }
        Self {
            deficient_row_shapes,
            deficient_column_shapes,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateSet {
    pub p: u64,
    pub q: u64,
    pub k: u64,
    pub e: u64,
    pub members: Vec<Candidate>,
    pub exclusion: ExclusionCheck,
}

/// `D_{k,a} = ((q−a)^[p−1], q−a−(k−a)p)` for `a = 0, …, k−1`.
///
/// The shape scan must find exactly the `p × (q−a)` hosts for a deficient row
/// and no host for a deficient column; anything else is reported as an
/// inconsistency.
pub fn candidates(p: u64, q: u64, k: u64) -> Result<CandidateSet> {
    check_hypotheses(p, q, k)?;
    let e = p * (q - k);
    let mut members = Vec::with_capacity(k as usize);
    for a in 0..k {
        let last = q - a - (k - a) * p;
        let mut d = vec![to_u32(q - a)?; (p - 1) as usize];
        d.push(to_u32(last)?);
        members.push(Candidate {
            a,
            degrees: DegreeSequence::new(d)?,
        });
    }
    let exclusion = ExclusionCheck::scan(p, q, e);
    let expected: Vec<(u64, u64)> = (0..k).rev().map(|a| (p, q - a)).collect();
    if exclusion.deficient_row_shapes != expected {
        return Err(ExtremalError::Inconsistent(format!(
            "deficient-row hosts {:?}, expected {:?}",
            exclusion.deficient_row_shapes, expected
        )));
    }
    if !exclusion.deficient_column_shapes.is_empty() {
        return Err(ExtremalError::Inconsistent(format!(
            "deficient-column hosts {:?} should not exist",
            exclusion.deficient_column_shapes
        )));
    }
    Ok(CandidateSet {
        p,
        q,
        k,
        e,
        members,
        exclusion,
    })
}

fn to_u32(x: u64) -> Result<u32> {
    u32::try_from(x).map_err(|_| ExtremalError::InvalidSearch(format!("{x} does not fit a degree")))
}

fn to_usize(x: u64) -> Result<usize> {
    usize::try_from(x).map_err(|_| ExtremalError::InvalidSearch(format!("{x} does not fit in memory")))
}

// ---------------------------------------------------------------------------
// verification

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateReport {
    pub a: u64,
    pub degrees: DegreeSequence,
    pub f: IntPolynomial,
    pub rho_squared: RootBracket,
    pub rho: f64,
    pub rho_numeric: f64,
    /// `f_a − g`.
    pub certificate: DiffCertificate,
    /// Order of `ρ(G_{D_{k,a}})` relative to `ρ(K^±)`.
    pub comparison: RootOrder,
    pub method: ComparisonMethod,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub p: u64,
    pub q: u64,
    pub k: u64,
    pub e: u64,
    pub pm_degrees: DegreeSequence,
    pub g: IntPolynomial,
    pub rho_pm_squared: RootBracket,
    pub rho_pm: f64,
    pub rho_pm_numeric: f64,
    pub candidates: Vec<CandidateReport>,
    pub exclusion: ExclusionCheck,
    pub verdict: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchReport>,
}

impl CounterexampleReport {
    /// Candidate with the largest radius.
    pub fn best_candidate(&self) -> Option<&CandidateReport> {
        self.candidates
            .iter()
            .max_by(|x, y| x.rho.partial_cmp(&y.rho).unwrap_or(Ordering::Equal))
    }

    /// `min_a` of the linear coefficient of `f_a − g`.
    pub fn least_cert_x_coeff(&self) -> Option<num_bigint::BigInt> {
        self.candidates
            .iter()
            .map(|c| c.certificate.diff.coeff(1))
            .min()
    }
}

/// `ρ` from a bracket of `ρ²`.
fn root_of_bracket(b: &RootBracket) -> f64 {
    rational_to_f64(&b.midpoint()).max(0.0).sqrt()
}

fn check_agreement(what: impl Into<String>, exact: f64, numeric: f64) -> Result<()> {
    if (exact - numeric).abs() > AGREEMENT_TOL {
        return Err(ExtremalError::Disagreement {
            what: what.into(),
            exact,
            numeric,
        });
    }
    Ok(())
}

/// Compares `ρ(K^±_{p,q−k})` with every candidate by exact root comparison,
/// then repeats the comparison with floating radii of the graphs themselves.
pub fn verify_counterexample(p: u64, q: u64, k: u64, cfg: &SearchConfig) -> Result<CounterexampleReport> {
    cfg.validate()?;
    let set = candidates(p, q, k)?;
    let (pu, qu) = (to_usize(p)?, to_usize(q)?);
    let g = g_poly(p, q, k)?;
    let pm = build_family(Family::PlusMinus {
        p: pu,
        q: to_usize(q - k)?,
    })?;
    let pm_degrees = pm.degrees().clone();
    let pm_graph = pad_columns(pm.graph(), qu);
    let rho_pm_numeric = spectral_radius_graph(&pm_graph, DEFAULT_TOL)?.rho;

    let mut reports = Vec::with_capacity(set.members.len());
    let mut rho_pm_squared = None;
    for cand in &set.members {
        let f = f_poly(p, q, k, cand.a)?;
        let cmp = compare_largest_roots(&f, &g)?;
        let diff = &cmp.certificate.diff;
        if diff.coeff(1) != diff_x_coefficient(p, q, k, cand.a) || diff.coeff(0) != diff_constant(p, q, k) {
            return Err(ExtremalError::Inconsistent(format!(
                "f_{} − g = {} does not match the closed-form coefficients",
                cand.a, diff
            )));
        }
        let graph = cand.graph(qu)?;
        let rho_numeric = spectral_radius_graph(&graph, DEFAULT_TOL)?.rho;
        let rho = root_of_bracket(&cmp.f_bracket);
        check_agreement(format!("rho(G_{})", cand.degrees), rho, rho_numeric)?;
        rho_pm_squared.get_or_insert_with(|| cmp.g_bracket.clone());
        reports.push(CandidateReport {
            a: cand.a,
            degrees: cand.degrees.clone(),
            f,
            rho_squared: cmp.f_bracket,
            rho: sig12(rho),
            rho_numeric: sig12(rho_numeric),
            certificate: cmp.certificate,
            comparison: cmp.ordering.into(),
            method: cmp.method,
        });
    }
    let rho_pm_squared = match rho_pm_squared {
        Some(b) => b,
        None => exactpoly::largest_real_root(&g, &exactpoly::default_width())?,
    };
    let rho_pm = root_of_bracket(&rho_pm_squared);
    check_agreement("rho(K^±)", rho_pm, rho_pm_numeric)?;

    let verdict = reports.iter().all(|c| c.comparison == RootOrder::Less);
    let numeric_verdict = reports.iter().all(|c| c.rho_numeric < sig12(rho_pm_numeric));
    if verdict != numeric_verdict {
        let best = reports.iter().map(|c| c.rho_numeric).fold(f64::NEG_INFINITY, f64::max);
        return Err(ExtremalError::Disagreement {
            what: "verdict (largest candidate radius vs rho(K^±))".into(),
            exact: rho_pm,
            numeric: best,
        });
    }
    Ok(CounterexampleReport {
        p,
        q,
        k,
        e: set.e,
        pm_degrees,
        g,
        rho_pm_squared,
        rho_pm: sig12(rho_pm),
        rho_pm_numeric: sig12(rho_pm_numeric),
        candidates: reports,
        exclusion: set.exclusion,
        verdict,
        search: None,
    })
}

/// [`verify_counterexample`] plus an exhaustive search of `𝒦(p, q, p(q−k))`.
pub fn verify_counterexample_with_search(
    p: u64,
    q: u64,
    k: u64,
    cfg: &SearchConfig,
) -> Result<CounterexampleReport> {
    let mut report = verify_counterexample(p, q, k, cfg)?;
    let found = brute_force_extremal(p, q, report.e, cfg)?;
    report.search = Some(SearchReport::new(&found, cfg));
    Ok(report)
}

// ---------------------------------------------------------------------------
// enumeration

/// `C(n, k)`, or `None` past `u128`.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(c)
}

/// Number of `e`-edge subsets of `K_{p,q}`, checked against the guard.
pub fn subset_count(p: u64, q: u64, e: u64, cfg: &SearchConfig) -> Result<u64> {
    cfg.validate()?;
    let cells = p
        .checked_mul(q)
        .ok_or_else(|| ExtremalError::InvalidSearch("p·q overflows".into()))?;
    if e == 0 || e >= cells {
        return Ok(0);
    }
    let guard_err = |subsets: String| ExtremalError::Guard {
        cells,
        e,
        subsets,
        guard: cfg.max_subsets,
    };
    match binomial(cells, e) {
        Some(c) if c <= u128::from(cfg.max_subsets) => Ok(c as u64),
        Some(c) => Err(guard_err(c.to_string())),
        None => Err(guard_err("more than 2^128".into())),
    }
}

/// Splits `0..total` into at most `parts` contiguous nonempty ranges.
pub fn partition_ranges(total: u64, parts: usize) -> Vec<Range<u64>> {
    let parts = (parts.max(1) as u64).min(total.max(1));
    let base = total / parts;
    let extra = total % parts;
    let mut out = Vec::with_capacity(parts as usize);
    let mut start = 0;
    for i in 0..parts {
        let len = base + u64::from(i < extra);
        if len > 0 {
            out.push(start..start + len);
        }
        start += len;
    }
    out
}

/// `k`-subsets of `0..n` in lexicographic order, over a rank range.
struct Combinations {
    n: usize,
    current: Vec<usize>,
    left: u64,
}

impl Combinations {
    fn new(n: usize, k: usize, range: Range<u64>) -> Self {
        let left = range.end.saturating_sub(range.start);
        let current = if left > 0 { unrank(n, k, range.start) } else { Vec::new() };
        Self { n, current, left }
    }

    fn advance(&mut self) {
        let k = self.current.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.current[i] < self.n - k + i {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                return;
            }
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.left == 0 {
            return None;
        }
        let out = self.current.clone();
        self.left -= 1;
        if self.left > 0 {
            self.advance();
        }
        Some(out)
    }
}

/// The `rank`-th `k`-subset of `0..n` in lexicographic order.
fn unrank(n: usize, k: usize, mut rank: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut c = 0;
    for i in 0..k {
        loop {
            let rest = binomial((n - c - 1) as u64, (k - i - 1) as u64).unwrap_or(u128::MAX);
            if u128::from(rank) < rest {
                break;
            }
            rank -= rest as u64;
            c += 1;
        }
        out.push(c);
        c += 1;
    }
    out
}

fn subset_graph(p: usize, q: usize, subset: &[usize]) -> BipartiteGraph {
    let mut cells = vec![false; p * q];
    for &x in subset {
        cells[x] = true;
    }
    BipartiteGraph::from_cells(p, q, cells)
}

/// Whether the edge-induced subgraph of `g` belongs to the family.
pub fn in_family(g: &BipartiteGraph, cfg: &SearchConfig) -> bool {
    if g.edge_count() == 0 || g.is_complete_bipartite() {
        return false;
    }
    if cfg.spanning_only && !g.has_no_isolated_vertices() {
        return false;
    }
    !cfg.connected_only || g.restricted().is_connected()
}

/// Members of `𝒦(p,q,e)` in lexicographic order of their edge subsets.
pub struct KStream {
    p: usize,
    q: usize,
    combos: Combinations,
    cfg: SearchConfig,
    seen: Option<HashSet<BipartiteGraph>>,
}

impl Iterator for KStream {
    type Item = BipartiteGraph;

    fn next(&mut self) -> Option<BipartiteGraph> {
        for subset in self.combos.by_ref() {
            let g = subset_graph(self.p, self.q, &subset);
            if !in_family(&g, &self.cfg) {
                continue;
            }
            if let Some(seen) = self.seen.as_mut() {
                if !seen.insert(canonical_form(&g)) {
                    continue;
                }
            }
            return Some(g);
        }
        None
    }
}

/// Every member of `𝒦(p,q,e)`; with `dedup`, the first member of each
/// isomorphism class.
pub fn enumerate_k(p: u64, q: u64, e: u64, cfg: &SearchConfig) -> Result<KStream> {
    let total = subset_count(p, q, e, cfg)?;
    enumerate_k_range(p, q, e, cfg, 0..total)
}

/// Members whose subset rank lies in `range`. Dedup applies within the range.
pub fn enumerate_k_range(p: u64, q: u64, e: u64, cfg: &SearchConfig, range: Range<u64>) -> Result<KStream> {
    let total = subset_count(p, q, e, cfg)?;
    let range = range.start.min(total)..range.end.min(total);
    let (pu, qu) = (to_usize(p)?, to_usize(q)?);
    let k = if total == 0 { 0 } else { to_usize(e)? };
    Ok(KStream {
        p: pu,
        q: qu,
        combos: Combinations::new(pu * qu, k, range),
        cfg: *cfg,
        seen: cfg.dedup.then(HashSet::new),
    })
}

// ---------------------------------------------------------------------------
// isomorphism

/// Lexicographically greatest biadjacency over all row and column
/// permutations.
pub fn canonical_form(g: &BipartiteGraph) -> BipartiteGraph {
    let (p, q) = (g.p(), g.q());
    if p == 0 || q == 0 {
        return g.clone();
    }
    let mut search = Canon { g, best: None };
    search.descend((0..p).collect(), vec![(0..q).collect()], Vec::with_capacity(p));
    let rows = search.best.unwrap_or_default();
    BipartiteGraph::from_rows(&rows).unwrap_or_else(|_| g.clone())
}

struct Canon<'a> {
    g: &'a BipartiteGraph,
    best: Option<Vec<Vec<bool>>>,
}

impl Canon<'_> {
    fn row_string(&self, r: usize, cells: &[Vec<usize>]) -> Vec<bool> {
        let mut s = Vec::with_capacity(self.g.q());
        for cell in cells {
            let ones = cell.iter().filter(|&&c| self.g.get(r, c)).count();
            s.extend((0..cell.len()).map(|i| i < ones));
        }
        s
    }

    fn descend(&mut self, remaining: Vec<usize>, cells: Vec<Vec<usize>>, prefix: Vec<Vec<bool>>) {
        let depth = prefix.len();
        if let Some(best) = &self.best {
            if prefix.as_slice() < &best[..depth] {
                return;
            }
        }
        if remaining.is_empty() {
            if self.best.as_ref().is_none_or(|b| prefix > *b) {
                self.best = Some(prefix);
            }
            return;
        }
        let strings: Vec<Vec<bool>> = remaining.iter().map(|&r| self.row_string(r, &cells)).collect();
        let top = strings.iter().max().cloned().unwrap_or_default();
        if let Some(best) = &self.best {
            if prefix.as_slice() == &best[..depth] && top < best[depth] {
                return;
            }
        }
        for (idx, &r) in remaining.iter().enumerate() {
            if strings[idx] != top {
                continue;
            }
            let mut next_cells = Vec::with_capacity(cells.len() + 1);
            for cell in &cells {
                let (on, off): (Vec<usize>, Vec<usize>) = cell.iter().partition(|&&c| self.g.get(r, c));
                next_cells.extend([on, off].into_iter().filter(|c| !c.is_empty()));
            }
            let rest: Vec<usize> = remaining.iter().copied().filter(|&x| x != r).collect();
            let mut next_prefix = prefix.clone();
            next_prefix.push(top.clone());
            self.descend(rest, next_cells, next_prefix);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeficientSide {
    Row,
    Column,
}

/// A complete bipartite graph plus one vertex joined to part of the other side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OneVertexAdded {
    pub side: DeficientSide,
    /// Part orders of the edge-induced subgraph.
    pub rows: usize,
    pub cols: usize,
    pub e: usize,
    /// `^eK_{s,t}` when the partial vertex lies in the smaller part `s`,
    /// otherwise `K^e_{s,t}`.
    pub label: String,
}

/// All ways of reading `g` as a one-vertex-added graph.
pub fn one_vertex_added(g: &BipartiteGraph) -> Vec<OneVertexAdded> {
    let r = g.restricted();
    let (a, b, e) = (r.p(), r.q(), r.edge_count());
    let mut out = Vec::new();
    if e == 0 {
        return out;
    }
    let label = |partial_in_smaller: bool| {
        let (s, t) = (a.min(b), a.max(b));
        if partial_in_smaller {
            format!("^{e}K_{{{s},{t}}}")
        } else {
            format!("K^{e}_{{{s},{t}}}")
        }
    };
    let rows = r.row_degrees();
    if a >= 2 {
        let short: Vec<usize> = (0..a).filter(|&i| rows[i] < b).collect();
        if short.len() == 1 {
            out.push(OneVertexAdded {
                side: DeficientSide::Row,
                rows: a,
                cols: b,
                e,
                label: label(a <= b),
            });
        }
    }
    let cols = r.col_degrees();
    if b >= 2 {
        let short: Vec<usize> = (0..b).filter(|&j| cols[j] < a).collect();
        if short.len() == 1 {
            out.push(OneVertexAdded {
                side: DeficientSide::Column,
                rows: a,
                cols: b,
                e,
                label: label(b <= a),
            });
        }
    }
    out
}

/// Whether the edge-induced subgraph of `g` is isomorphic to some `K^±_{s,t}`.
pub fn is_plus_minus(g: &BipartiteGraph) -> bool {
    let r = g.restricted();
    let (a, b) = (r.p(), r.q());
    let matches = |rows: usize, cols: usize, h: &BipartiteGraph| {
        rows >= 2
            && cols >= 3
            && build_family(Family::PlusMinus { p: rows, q: cols - 1 })
                .map(|pm| canonical_form(pm.graph()) == canonical_form(h))
                .unwrap_or(false)
    };
    matches(a, b, &r) || matches(b, a, &r.transpose())
}

/// Distinct one-vertex-added members of `𝒦(p,q,e)`, as canonical forms of
/// their edge-induced subgraphs, found by testing every member.
pub fn one_vertex_added_members(p: u64, q: u64, e: u64, cfg: &SearchConfig) -> Result<Vec<BipartiteGraph>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in enumerate_k(p, q, e, &SearchConfig { dedup: false, ..*cfg })? {
        if one_vertex_added(&g).is_empty() {
            continue;
        }
        let c = canonical_form(&g.restricted());
        if seen.insert(c.clone()) {
            out.push(c);
        }
    }
    out.sort();
    Ok(out)
}

// ---------------------------------------------------------------------------
// search

#[derive(Debug, Clone, PartialEq)]
pub struct BruteForceResult {
    pub p: u64,
    pub q: u64,
    pub e: u64,
    pub raw_subsets: u64,
    /// Members visited; isomorphism classes under dedup.
    pub members: u64,
    pub max_rho: Option<f64>,
    pub maximizers: Vec<(BipartiteGraph, f64)>,
    pub any_one_vertex_added: bool,
    pub plus_minus_present: bool,
}

struct Chunk {
    members: u64,
    /// First occurrences, in order, when deduplicating.
    classes: Vec<BipartiteGraph>,
    max: f64,
    near: Vec<(BipartiteGraph, f64, Option<BipartiteGraph>)>,
}

fn scan_chunk(p: u64, q: u64, e: u64, cfg: &SearchConfig, range: Range<u64>) -> Result<Chunk> {
    let plain = SearchConfig { dedup: false, ..*cfg };
    let mut seen = HashSet::new();
    let mut chunk = Chunk {
        members: 0,
        classes: Vec::new(),
        max: f64::NEG_INFINITY,
        near: Vec::new(),
    };
    for g in enumerate_k_range(p, q, e, &plain, range)? {
        let canon = if cfg.dedup {
            let c = canonical_form(&g);
            if !seen.insert(c.clone()) {
                continue;
            }
            chunk.classes.push(c.clone());
            Some(c)
        } else {
            None
        };
        chunk.members += 1;
        let rho = spectral_radius_graph(&g, DEFAULT_TOL)?.rho;
        if rho > chunk.max {
            chunk.max = rho;
            chunk.near.retain(|(_, r, _)| *r >= rho - cfg.tol);
        }
        if rho >= chunk.max - cfg.tol {
            chunk.near.push((g, rho, canon));
        }
    }
    Ok(chunk)
}

/// All members of `𝒦(p,q,e)` whose radius is within `cfg.tol` of the maximum.
///
/// The subset ranks are split into contiguous ranges scanned in parallel and
/// merged in rank order, so the result does not depend on the split.
pub fn brute_force_extremal(p: u64, q: u64, e: u64, cfg: &SearchConfig) -> Result<BruteForceResult> {
    let total = subset_count(p, q, e, cfg)?;
    let parts = rayon::current_num_threads() * 4;
    let chunks: Vec<Chunk> = partition_ranges(total, parts)
        .into_par_iter()
        .map(|range| scan_chunk(p, q, e, cfg, range))
        .collect::<Result<_>>()?;

    let max = chunks.iter().map(|c| c.max).fold(f64::NEG_INFINITY, f64::max);
    let mut members = 0;
    let mut seen = HashSet::new();
    let mut maximizers = Vec::new();
    for chunk in chunks {
        if cfg.dedup {
            // a class first seen in an earlier chunk is not new here
            let fresh: HashSet<BipartiteGraph> = chunk.classes.into_iter().filter(|c| seen.insert(c.clone())).collect();
            members += fresh.len() as u64;
            maximizers.extend(
                chunk
                    .near
                    .into_iter()
                    .filter(|(_, r, c)| *r >= max - cfg.tol && c.as_ref().is_some_and(|c| fresh.contains(c)))
                    .map(|(g, r, _)| (g, r)),
            );
        } else {
            members += chunk.members;
            maximizers.extend(
                chunk
                    .near
                    .into_iter()
                    .filter(|(_, r, _)| *r >= max - cfg.tol)
                    .map(|(g, r, _)| (g, r)),
            );
        }
    }
    let any_one_vertex_added = maximizers.iter().any(|(g, _)| !one_vertex_added(g).is_empty());
    let plus_minus_present = maximizers.iter().any(|(g, _)| is_plus_minus(g));
    Ok(BruteForceResult {
        p,
        q,
        e,
        raw_subsets: total,
        members,
        max_rho: (!maximizers.is_empty()).then_some(max),
        maximizers,
        any_one_vertex_added,
        plus_minus_present,
    })
}

/// One isomorphism class of maximizers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaximizerClass {
    pub representative: BipartiteGraph,
    pub rho: f64,
    /// Labelled copies among the maximizers.
    pub copies: u64,
    pub row_degrees: Vec<usize>,
    pub col_degrees: Vec<usize>,
    pub connected: bool,
    pub one_vertex_added: Vec<OneVertexAdded>,
    pub plus_minus: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub p: u64,
    pub q: u64,
    pub e: u64,
    pub dedup: bool,
    pub connected_only: bool,
    pub raw_subsets: u64,
    pub members: u64,
    pub max_rho: Option<f64>,
    pub sqrt_e: f64,
    pub maximizer_count: u64,
    pub maximizers: Vec<MaximizerClass>,
    pub one_vertex_added_among_maximizers: bool,
    pub plus_minus_among_maximizers: bool,
}

impl SearchReport {
    /// Groups maximizers by isomorphism class, in order of first appearance.
    pub fn new(found: &BruteForceResult, cfg: &SearchConfig) -> Self {
        let mut classes: Vec<(BipartiteGraph, MaximizerClass)> = Vec::new();
        for (g, rho) in &found.maximizers {
            let canon = canonical_form(g);
            if let Some((_, class)) = classes.iter_mut().find(|(c, _)| *c == canon) {
                class.copies += 1;
                continue;
            }
            let mut rows = g.row_degrees();
            let mut cols = g.col_degrees();
            rows.sort_unstable_by(|x, y| y.cmp(x));
            cols.sort_unstable_by(|x, y| y.cmp(x));
            classes.push((
                canon,
                MaximizerClass {
                    representative: g.clone(),
                    rho: sig12(*rho),
                    copies: 1,
                    row_degrees: rows,
                    col_degrees: cols,
                    connected: g.restricted().is_connected(),
                    one_vertex_added: one_vertex_added(g),
                    plus_minus: is_plus_minus(g),
                },
            ));
        }
        Self {
            p: found.p,
            q: found.q,
            e: found.e,
            dedup: cfg.dedup,
            connected_only: cfg.connected_only,
            raw_subsets: found.raw_subsets,
            members: found.members,
            max_rho: found.max_rho.map(sig12),
            sqrt_e: sig12((found.e as f64).sqrt()),
            maximizer_count: found.maximizers.len() as u64,
            maximizers: classes.into_iter().map(|(_, c)| c).collect(),
            one_vertex_added_among_maximizers: found.any_one_vertex_added,
            plus_minus_among_maximizers: found.plus_minus_present,
        }
    }
}
