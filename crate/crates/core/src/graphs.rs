//! Degree sequences, Ferrers diagrams and 0-1 biadjacency containers.
//!
//! A bipartite graph on parts `X = {x_1..x_p}` and `Y = {y_1..y_q}` is stored
//! as its `p x q` biadjacency matrix. Graphs built from a nonincreasing degree
//! sequence `D` are left-justified ("Ferrers") matrices: row `i` holds `d_i`
//! ones followed by zeros.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("degree sequence is empty")]
    EmptySequence,
    #[error("degree sequence must be nonincreasing: entry {index} is {next}, after {prev}")]
    NotMonotone { index: usize, prev: u32, next: u32 },
    #[error("degree sequence entries must be positive (entry {index} is 0)")]
    NonPositive { index: usize },
    #[error("degree {degree} exceeds part size q = {q}")]
    DegreeExceedsPart { degree: u32, q: usize },
    #[error("cannot parse degree sequence: {0}")]
    Parse(String),
    #[error("{family} requires {requirement}")]
    FamilyRange {
        family: &'static str,
        requirement: String,
    },
    #[error("malformed graph text: {0}")]
    GraphText(String),
    #[error("biadjacency rows must all have length {expected} (row {row} has {found})")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
}

pub type Result<T> = std::result::Result<T, GraphError>;

/// A nonincreasing sequence of positive vertex degrees `d_1 >= ... >= d_p >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeSequence(Vec<u32>);

impl DegreeSequence {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(GraphError::EmptySequence);
        }
        for (index, &d) in entries.iter().enumerate() {
            if d == 0 {
                return Err(GraphError::NonPositive { index: index + 1 });
            }
        }
        for (index, w) in entries.windows(2).enumerate() {
            if w[1] > w[0] {
                return Err(GraphError::NotMonotone {
                    index: index + 2,
                    prev: w[0],
                    next: w[1],
                });
            }
        }
        Ok(Self(entries))
    }

    /// `value^[count]`, the constant sequence.
    pub fn constant(value: u32, count: usize) -> Result<Self> {
        Self::new(vec![value; count])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Number of rows `p`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest degree `d_1`; the minimal admissible column count.
    pub fn max_degree(&self) -> u32 {
        self.0[0]
    }

    /// Edge count `e = sum d_i`.
    pub fn edge_count(&self) -> u64 {
        self.0.iter().map(|&d| u64::from(d)).sum()
    }

    /// Run-length form: `(value, multiplicity)` pairs in order.
    pub fn runs(&self) -> Vec<(u32, usize)> {
        let mut runs: Vec<(u32, usize)> = Vec::new();
        for &d in &self.0 {
            match runs.last_mut() {
                Some((v, n)) if *v == d => *n += 1,
                _ => runs.push((d, 1)),
            }
        }
        runs
    }

    /// Exponential notation with bracketed powers, e.g. `(5,3,1^[2])`.
    pub fn exponential(&self) -> String {
        let parts: Vec<String> = self
            .runs()
            .into_iter()
            .map(|(v, n)| if n == 1 { v.to_string() } else { format!("{v}^[{n}]") })
            .collect();
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for DegreeSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DegreeSequence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Self::new(Vec::<u32>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Accepts `6,5,5,4`, `6,5^2,4`, `6,5^[2],4`, optionally wrapped in parentheses.
impl FromStr for DegreeSequence {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(body);
        let mut entries = Vec::new();
        for token in body.split(',') {
            let token = token.trim();
            if token.is_empty() {
                return Err(GraphError::Parse(format!("empty entry in {s:?}")));
            }
            let (value, count) = match token.split_once('^') {
                None => (token, "1"),
                Some((v, c)) => {
                    let c = c.trim();
                    let c = c
                        .strip_prefix('[')
                        .and_then(|c| c.strip_suffix(']'))
                        .unwrap_or(c);
                    (v.trim(), c.trim())
                }
            };
            let value: u32 = value
                .parse()
                .map_err(|_| GraphError::Parse(format!("bad degree {value:?}")))?;
            let count: usize = count
                .parse()
                .map_err(|_| GraphError::Parse(format!("bad multiplicity {count:?}")))?;
            if count == 0 {
                return Err(GraphError::Parse(format!("zero multiplicity in {token:?}")));
            }
            entries.extend(std::iter::repeat_n(value, count));
        }
        Self::new(entries)
    }
}

const SORT_ROUNDS: usize = 64;

/// A bipartite graph given by its `p x q` 0-1 biadjacency matrix.
///
/// Rows are the part of order `p`, columns the part of order `q`. The container
/// may hold empty rows or columns (isolated vertices); [`Self::restricted`]
/// drops them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BipartiteGraph {
    p: usize,
    q: usize,
    cells: Vec<bool>,
}

impl BipartiteGraph {
    /// The edgeless graph on parts of order `p` and `q`.
    pub fn empty(p: usize, q: usize) -> Self {
        Self {
            p,
            q,
            cells: vec![false; p * q],
        }
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let p = rows.len();
        let q = rows.first().map_or(0, Vec::len);
        let mut cells = Vec::with_capacity(p * q);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != q {
                return Err(GraphError::Ragged {
                    row: row + 1,
                    expected: q,
                    found: r.len(),
                });
            }
            cells.extend_from_slice(r);
        }
        Ok(Self { p, q, cells })
    }

    /// Builds a graph from `(row, column)` edge pairs, 0-based.
    ///
    /// # Panics
    /// If an endpoint is out of range.
    pub fn from_edges(p: usize, q: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::empty(p, q);
        for (i, j) in edges {
            assert!(i < p && j < q, "edge ({i},{j}) outside {p}x{q}");
            g.cells[i * q + j] = true;
        }
        g
    }

    pub(crate) fn from_cells(p: usize, q: usize, cells: Vec<bool>) -> Self {
        debug_assert_eq!(cells.len(), p * q);
        Self { p, q, cells }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cells[i * self.q + j]
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.cells[i * self.q..(i + 1) * self.q]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[bool]> {
        (0..self.p).map(move |i| self.row(i))
    }

    pub fn edge_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn row_degrees(&self) -> Vec<usize> {
        self.rows().map(|r| r.iter().filter(|&&c| c).count()).collect()
    }

    pub fn col_degrees(&self) -> Vec<usize> {
        (0..self.q)
            .map(|j| (0..self.p).filter(|&i| self.get(i, j)).count())
            .collect()
    }

    /// True when every row sum and every column sum is at least one.
    pub fn has_no_isolated_vertices(&self) -> bool {
        self.row_degrees().iter().all(|&d| d > 0) && self.col_degrees().iter().all(|&d| d > 0)
    }

    pub fn transpose(&self) -> Self {
        let mut cells = Vec::with_capacity(self.cells.len());
        for j in 0..self.q {
            for i in 0..self.p {
                cells.push(self.get(i, j));
            }
        }
        Self {
            p: self.q,
            q: self.p,
            cells,
        }
    }

    /// The edge-induced subgraph: rows and columns of degree zero removed.
    pub fn restricted(&self) -> Self {
        let rows: Vec<usize> = (0..self.p).filter(|&i| self.row(i).contains(&true)).collect();
        let cols: Vec<usize> = (0..self.q)
            .filter(|&j| (0..self.p).any(|i| self.get(i, j)))
            .collect();
        let mut cells = Vec::with_capacity(rows.len() * cols.len());
        for &i in &rows {
            for &j in &cols {
                cells.push(self.get(i, j));
            }
        }
        Self {
            p: rows.len(),
            q: cols.len(),
            cells,
        }
    }

    /// Connectivity of the edge-induced subgraph. The edgeless graph is not connected.
    pub fn is_connected(&self) -> bool {
        let g = self.restricted();
        if g.p == 0 {
            return false;
        }
        // vertices 0..p are rows, p..p+q are columns
        let n = g.p + g.q;
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            let neighbours: Vec<usize> = if v < g.p {
                (0..g.q).filter(|&j| g.get(v, j)).map(|j| g.p + j).collect()
            } else {
                (0..g.p).filter(|&i| g.get(i, v - g.p)).collect()
            };
            for u in neighbours {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// True iff the edge-induced subgraph is a single complete bipartite block.
    pub fn is_complete_bipartite(&self) -> bool {
        let g = self.restricted();
        g.p > 0 && g.cells.iter().all(|&c| c)
    }

    /// Rows and columns repeatedly sorted lexicographically descending until
    /// stable. Equal for isomorphic graphs with nested neighbourhoods; not a
    /// full isomorphism invariant in general.
    pub fn sorted_form(&self) -> Self {
        let mut g = self.clone();
        for _ in 0..SORT_ROUNDS {
            let next = g.sort_rows_desc().transpose().sort_rows_desc().transpose();
            if next == g {
                break;
            }
            g = next;
        }
        g
    }

    fn sort_rows_desc(&self) -> Self {
        let mut rows: Vec<&[bool]> = self.rows().collect();
        rows.sort_by(|a, b| b.cmp(a));
        let cells = rows.concat();
        Self {
            p: self.p,
            q: self.q,
            cells,
        }
    }

    /// If the row neighbourhoods form a chain under inclusion, the edge-induced
    /// subgraph is `G_D` for the returned `D` (its nonzero row degrees, sorted).
    pub fn ferrers_degrees(&self) -> Option<DegreeSequence> {
        let g = self.restricted();
        if g.p == 0 {
            return None;
        }
        let mut order: Vec<usize> = (0..g.p).collect();
        let degrees = g.row_degrees();
        order.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]));
        for w in order.windows(2) {
            let (big, small) = (g.row(w[0]), g.row(w[1]));
            if small.iter().zip(big).any(|(&s, &b)| s && !b) {
                return None;
            }
        }
        let d: Vec<u32> = order.iter().map(|&i| degrees[i] as u32).collect();
        DegreeSequence::new(d).ok()
    }

    /// Text form: `p q` on the first line, then `p` lines of `0`/`1` characters.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.p, self.q);
        for r in self.rows() {
            out.extend(r.iter().map(|&c| if c { '1' } else { '0' }));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| GraphError::GraphText("missing header line".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| GraphError::GraphText(format!("bad header {header:?}")))
            })
            .collect::<Result<_>>()?;
        let [p, q] = dims[..] else {
            return Err(GraphError::GraphText(format!(
                "header must be \"p q\", got {header:?}"
            )));
        };
        let mut cells = Vec::with_capacity(p * q);
        for row in 0..p {
            let line = lines
                .next()
                .ok_or_else(|| GraphError::GraphText(format!("expected {p} rows, got {row}")))?;
            if line.chars().count() != q {
                return Err(GraphError::Ragged {
                    row: row + 1,
                    expected: q,
                    found: line.chars().count(),
                });
            }
            for c in line.chars() {
                match c {
                    '0' => cells.push(false),
                    '1' => cells.push(true),
                    other => {
                        return Err(GraphError::GraphText(format!(
                            "unexpected character {other:?} in row {}",
                            row + 1
                        )))
                    }
                }
            }
        }
        if let Some(extra) = lines.next() {
            return Err(GraphError::GraphText(format!("trailing line {extra:?}")));
        }
        Ok(Self { p, q, cells })
    }
}

impl fmt::Display for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Serialised as its text form.
impl Serialize for BipartiteGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_text().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BipartiteGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Self::from_text(&String::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// The graph `G_D` with biadjacency `F(D)`, kept together with `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FerrersDiagram {
    degrees: DegreeSequence,
    graph: BipartiteGraph,
}

impl FerrersDiagram {
    pub fn degrees(&self) -> &DegreeSequence {
        &self.degrees
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    pub fn into_graph(self) -> BipartiteGraph {
        self.graph
    }
}

/// `F(D)` as a `p x q` matrix: entry `(i, j)` is one iff `j < d_i` (0-based).
pub fn build_ferrers(degrees: &DegreeSequence, q: usize) -> Result<FerrersDiagram> {
    let d1 = degrees.max_degree();
    if (d1 as usize) > q {
        return Err(GraphError::DegreeExceedsPart { degree: d1, q });
    }
    let p = degrees.len();
    let mut cells = Vec::with_capacity(p * q);
    for &d in degrees.entries() {
        cells.extend((0..q).map(|j| j < d as usize));
    }
    Ok(FerrersDiagram {
        degrees: degrees.clone(),
        graph: BipartiteGraph { p, q, cells },
    })
}

/// The named graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `^eK_{p,q}`: `K_{p,q}` minus `pq - e` edges at one vertex of the order-`p` part.
    UpperE { p: usize, q: usize, e: usize },
    /// `K^e_{p,q}`: `K_{p,q}` minus `pq - e` edges at one vertex of the order-`q` part.
    /// Stored with the deficient vertex as the last column, so the order-`p`
    /// part stays on the rows.
    LowerE { p: usize, q: usize, e: usize },
    /// `K^±_{p,q}`: `K_{p,q}` minus one edge, plus a pendant edge from a new
    /// column vertex to a row vertex not on the deleted edge. Lives in parts
    /// `(p, q + 1)`.
    PlusMinus { p: usize, q: usize },
    /// `K_{p,q}`.
    Complete { p: usize, q: usize },
}

impl Family {
    fn range_err(family: &'static str, requirement: impl Into<String>) -> GraphError {
        GraphError::FamilyRange {
            family,
            requirement: requirement.into(),
        }
    }

    /// Part orders `(rows, columns)` of the built graph.
    pub fn parts(&self) -> (usize, usize) {
        match *self {
            Family::UpperE { p, q, .. } | Family::LowerE { p, q, .. } | Family::Complete { p, q } => {
                (p, q)
            }
            Family::PlusMinus { p, q } => (p, q + 1),
        }
    }

    pub fn degrees(&self) -> Result<DegreeSequence> {
        let to_u32 = |x: usize| {
            u32::try_from(x).map_err(|_| Self::range_err("family", "parameters below 2^32"))
        };
        match *self {
            Family::UpperE { p, q, e } => {
                if p == 0 || q == 0 {
                    return Err(Self::range_err("^eK_{p,q}", "p, q >= 1"));
                }
                if !(e > p * q - q && e < p * q) {
                    return Err(Self::range_err(
                        "^eK_{p,q}",
                        format!("pq - q < e < pq (got p={p}, q={q}, e={e})"),
                    ));
                }
                let mut d = vec![to_u32(q)?; p - 1];
                d.push(to_u32(e - (p - 1) * q)?);
                DegreeSequence::new(d)
            }
            Family::LowerE { p, q, e } => {
                if p == 0 || q < 2 {
                    return Err(Self::range_err("K^e_{p,q}", "p >= 1 and q >= 2"));
                }
                if !(e > p * q - p && e < p * q) {
                    return Err(Self::range_err(
                        "K^e_{p,q}",
                        format!("pq - p < e < pq (got p={p}, q={q}, e={e})"),
                    ));
                }
                // rows still adjacent to the deficient column
                let full = e - (q - 1) * p;
                let mut d = vec![to_u32(q)?; full];
                d.extend(std::iter::repeat_n(to_u32(q - 1)?, p - full));
                DegreeSequence::new(d)
            }
            Family::PlusMinus { p, q } => {
                if p < 2 || q < 2 {
                    return Err(Self::range_err(
                        "K^±_{p,q}",
                        format!("p >= 2 and q >= 2 (got p={p}, q={q})"),
                    ));
                }
                let mut d = vec![to_u32(q + 1)?];
                d.extend(std::iter::repeat_n(to_u32(q)?, p - 2));
                d.push(to_u32(q - 1)?);
                DegreeSequence::new(d)
            }
            Family::Complete { p, q } => {
                if p == 0 || q == 0 {
                    return Err(Self::range_err("K_{p,q}", "p, q >= 1"));
                }
                DegreeSequence::constant(to_u32(q)?, p)
            }
        }
    }
}

pub fn build_family(kind: Family) -> Result<FerrersDiagram> {
    let degrees = kind.degrees()?;
    build_ferrers(&degrees, kind.parts().1)
}

/// Copy of `g` padded with empty columns up to `q` columns.
pub fn pad_columns(g: &BipartiteGraph, q: usize) -> BipartiteGraph {
    assert!(q >= g.q(), "cannot shrink {} columns to {q}", g.q());
    let mut out = BipartiteGraph::empty(g.p(), q);
    for i in 0..g.p() {
        for j in 0..g.q() {
            out.cells[i * q + j] = g.get(i, j);
        }
    }
    out
}
