//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use bfp::graphs::{BipartiteGraph, DegreeSequence};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Largest adjacency eigenvalue of the full `(p+q) × (p+q)` matrix.
pub fn dense_rho(g: &BipartiteGraph) -> f64 {
    let (p, q) = (g.p(), g.q());
    let n = p + q;
    if n == 0 {
        return 0.0;
    }
    let mut a = DMatrix::<f64>::zeros(n, n);
    for i in 0..p {
        for j in 0..q {
            if g.get(i, j) {
                a[(i, p + j)] = 1.0;
                a[(p + j, i)] = 1.0;
            }
        }
    }
    a.symmetric_eigen().eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// Largest eigenvalue of a symmetric integer matrix.
pub fn dense_sym_max(m: &[Vec<u64>]) -> f64 {
    let n = m.len();
    let a = DMatrix::<f64>::from_fn(n, n, |i, j| m[i][j] as f64);
    a.symmetric_eigen().eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// Left-justified rows written out cell by cell.
pub fn ferrers_rows(d: &[u32], q: usize) -> Vec<Vec<bool>> {
    d.iter().map(|&di| (0..q).map(|j| j < di as usize).collect()).collect()
}

/// Horner evaluation in exact rationals, coefficients ascending.
pub fn eval(coeffs: &[i64], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, &c| acc * x + BigRational::from_integer(BigInt::from(c)))
}

/// Largest root of a polynomial with positive leading coefficient, given a
/// point `hi` above every root and a point `lo` with `p(lo) < 0` below the
/// largest root, by plain rational bisection to width `2^-bits`.
pub fn bisect_largest(coeffs: &[i64], lo: i64, hi: i64, bits: u32) -> (BigRational, BigRational) {
    let mut lo = BigRational::from_integer(BigInt::from(lo));
    let mut hi = BigRational::from_integer(BigInt::from(hi));
    assert!(eval(coeffs, &lo).is_negative());
    assert!(eval(coeffs, &hi).is_positive());
    let width = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    while &hi - &lo > width {
        let mid = (&lo + &hi) * &half;
        if eval(coeffs, &mid).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

pub fn to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap()
}

/// `det(xI − M)` for a 3×3 integer matrix via the trace, principal-minor and
/// determinant invariants; ascending coefficients.
pub fn char_poly_3(m: [[i128; 3]; 3]) -> [i128; 4] {
    let tr = m[0][0] + m[1][1] + m[2][2];
    let minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] + m[1][1] * m[2][2]
        - m[1][2] * m[2][1];
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    [-det, minors, -tr, 1]
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut v = rest.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

pub fn permuted(g: &BipartiteGraph, rows: &[usize], cols: &[usize]) -> BipartiteGraph {
    let r: Vec<Vec<bool>> = (0..g.p())
        .map(|i| (0..g.q()).map(|j| g.get(rows[i], cols[j])).collect())
        .collect();
    BipartiteGraph::from_rows(&r).unwrap()
}

/// Lexicographically greatest row-major matrix over every row and column
/// permutation, by exhausting both symmetric groups.
pub fn brute_canonical(g: &BipartiteGraph) -> Vec<Vec<bool>> {
    let mut best: Option<Vec<Vec<bool>>> = None;
    for rp in permutations(g.p()) {
        for cp in permutations(g.q()) {
            let m: Vec<Vec<bool>> = (0..g.p()).map(|i| (0..g.q()).map(|j| g.get(rp[i], cp[j])).collect()).collect();
            if best.as_ref().is_none_or(|b| m > *b) {
                best = Some(m);
            }
        }
    }
    best.unwrap_or_default()
}

/// All `e`-subsets of `0..n` by recursive inclusion, in lexicographic order.
pub fn subsets(n: usize, e: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, e: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == e {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < e - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, e, &mut Vec::new(), &mut out);
    out
}

pub fn random_degrees(rng: &mut impl Rng, max_p: usize, max_q: u32) -> DegreeSequence {
    let p = rng.random_range(1..=max_p);
    let mut d: Vec<u32> = (0..p).map(|_| rng.random_range(1..=max_q)).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    DegreeSequence::new(d).unwrap()
}

pub fn random_graph(rng: &mut impl Rng, p: usize, q: usize, density: f64) -> BipartiteGraph {
    let rows: Vec<Vec<bool>> = (0..p).map(|_| (0..q).map(|_| rng.random_bool(density)).collect()).collect();
    BipartiteGraph::from_rows(&rows).unwrap()
}

/// Valid `(p, q, k)` with `p > 2`, `k >= 1`, `q > kp + 2`.
pub fn random_instance(rng: &mut impl Rng) -> (u64, u64, u64) {
    let p = rng.random_range(3..=9);
    let k = rng.random_range(1..=4);
    let q = k * p + rng.random_range(3..=25);
    (p, q, k)
}

/// Visits every `e`-subset of `0..n` in lexicographic order without storing them.
pub fn for_each_subset(n: usize, e: usize, mut visit: impl FnMut(&[usize])) {
    if e > n {
        return;
    }
    let mut idx: Vec<usize> = (0..e).collect();
    loop {
        visit(&idx);
        let Some(i) = (0..e).rev().find(|&i| idx[i] < n - e + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..e {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn subset_graph(p: usize, q: usize, s: &[usize]) -> BipartiteGraph {
    BipartiteGraph::from_edges(p, q, s.iter().map(|&x| (x / q, x % q)))
}

/// Family membership written from the definition: drop degree-zero vertices,
/// then reject a single block in which every row meets every column.
pub fn member(g: &BipartiteGraph) -> bool {
    let rows: Vec<usize> = (0..g.p()).filter(|&i| (0..g.q()).any(|j| g.get(i, j))).collect();
    let cols: Vec<usize> = (0..g.q()).filter(|&j| (0..g.p()).any(|i| g.get(i, j))).collect();
    if rows.is_empty() {
        return false;
    }
    let complete = rows.iter().all(|&i| cols.iter().all(|&j| g.get(i, j)));
    !complete
}

/// Whether deleting one vertex from the edge-induced subgraph leaves a
/// complete bipartite graph on all remaining vertices, the deleted vertex
/// missing at least one neighbour on the other side.
pub fn definitionally_one_vertex_added(g: &BipartiteGraph) -> bool {
    let rows: Vec<usize> = (0..g.p()).filter(|&i| (0..g.q()).any(|j| g.get(i, j))).collect();
    let cols: Vec<usize> = (0..g.q()).filter(|&j| (0..g.p()).any(|i| g.get(i, j))).collect();
    let row_case = rows.iter().any(|&v| {
        let rest: Vec<usize> = rows.iter().copied().filter(|&i| i != v).collect();
        !rest.is_empty()
            && rest.iter().all(|&i| cols.iter().all(|&j| g.get(i, j)))
            && cols.iter().any(|&j| !g.get(v, j))
    });
    let col_case = cols.iter().any(|&v| {
        let rest: Vec<usize> = cols.iter().copied().filter(|&j| j != v).collect();
        !rest.is_empty()
            && rest.iter().all(|&j| rows.iter().all(|&i| g.get(i, j)))
            && rows.iter().any(|&i| !g.get(i, v))
    });
    row_case || col_case
}
