//! Numerical spectral radii.
//!
//! Everything here reduces to the largest eigenvalue of a symmetric
//! nonnegative matrix, found by power iteration from the all-ones vector with a
//! Rayleigh-quotient estimate. For a bipartite graph with biadjacency `B` the
//! adjacency spectrum is `±sqrt(spec(B Bᵀ))`, so `ρ(G)² = ρ(B Bᵀ)`; the smaller
//! of the two Gram matrices is used. For `G_D` that Gram matrix is `H(D)`.

use thiserror::Error;

use crate::graphs::{BipartiteGraph, DegreeSequence};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITERATIONS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("matrix has order zero")]
    Empty,
    #[error("matrix is not square (row {row} has {found} entries, expected {expected})")]
    NotSquare {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("matrix is not symmetric at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("matrix has a negative or non-finite entry at ({i},{j})")]
    Negative { i: usize, j: usize },
    #[error("power iteration did not converge in {iterations} steps (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
}

pub type Result<T> = std::result::Result<T, SpectralError>;

/// `H(D) = (min{d_i, d_j})`, equal to `F(D) F(D)ᵀ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinMatrix {
    degrees: Vec<u32>,
}

impl MinMatrix {
    pub fn order(&self) -> usize {
        self.degrees.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        u64::from(self.degrees[i].min(self.degrees[j]))
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        let n = self.order();
        (0..n).map(|i| (0..n).map(|j| self.entry(i, j)).collect()).collect()
    }

    pub fn to_sym(&self) -> SymMatrix {
        let n = self.order();
        SymMatrix::from_fn(n, |i, j| self.entry(i, j) as f64)
    }
}

pub fn h_matrix(degrees: &DegreeSequence) -> MinMatrix {
    MinMatrix {
        degrees: degrees.entries().to_vec(),
    }
}

/// Dense symmetric matrix with nonnegative entries, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(SpectralError::Empty);
        }
        let mut data = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(SpectralError::NotSquare {
                    row,
                    expected: n,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        for i in 0..n {
            for j in 0..n {
                let x = data[i * n + j];
                if !(x >= 0.0 && x.is_finite()) {
                    return Err(SpectralError::Negative { i, j });
                }
                if x != data[j * n + i] {
                    return Err(SpectralError::NotSymmetric { i, j });
                }
            }
        }
        Ok(Self { n, data })
    }

    /// Caller guarantees `f` is symmetric and nonnegative.
    pub(crate) fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        self.data
            .chunks_exact(self.n)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Outcome of a power iteration run, with the settings it ran under.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralResult {
    pub rho: f64,
    pub iterations: usize,
    /// `‖Mv − ρv‖∞ / ‖v‖∞` at the returned vector.
    pub residual: f64,
    pub tol: f64,
    pub max_iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerConfig {
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for PowerConfig {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Largest eigenvalue of a symmetric nonnegative matrix.
///
/// Converged once the residual is at most `tol * max(1, ρ)`. Deterministic:
/// always starts from the all-ones vector.
pub fn spectral_radius_sym(m: &SymMatrix, tol: f64) -> Result<SpectralResult> {
    spectral_radius_sym_with(
        m,
        PowerConfig {
            tol,
            ..PowerConfig::default()
        },
    )
}

pub fn spectral_radius_sym_with(m: &SymMatrix, cfg: PowerConfig) -> Result<SpectralResult> {
    if m.n == 0 {
        return Err(SpectralError::Empty);
    }
    let mut v = vec![1.0; m.n];
    let mut residual = f64::INFINITY;
    for iteration in 1..=cfg.max_iterations {
        let w = m.mul_vec(&v);
        let w_norm = inf_norm(&w);
        if w_norm == 0.0 {
            return Ok(SpectralResult {
                rho: 0.0,
                iterations: iteration,
                residual: 0.0,
                tol: cfg.tol,
                max_iterations: cfg.max_iterations,
            });
        }
        let vw: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        let vv: f64 = v.iter().map(|a| a * a).sum();
        let rho = vw / vv;
        let r: Vec<f64> = w.iter().zip(&v).map(|(wi, vi)| wi - rho * vi).collect();
        residual = inf_norm(&r) / inf_norm(&v);
        if residual <= cfg.tol * rho.max(1.0) {
            return Ok(SpectralResult {
                rho,
                iterations: iteration,
                residual,
                tol: cfg.tol,
                max_iterations: cfg.max_iterations,
            });
        }
        v = w.into_iter().map(|x| x / w_norm).collect();
    }
    Err(SpectralError::NoConvergence {
        iterations: cfg.max_iterations,
        residual,
    })
}

/// Integer Gram matrix on the smaller side: `B Bᵀ` if `p <= q`, else `Bᵀ B`.
#[allow(clippy::needless_range_loop)]
pub fn gram(g: &BipartiteGraph) -> Vec<Vec<u64>> {
    let b = if g.p() <= g.q() {
        g.clone()
    } else {
        g.transpose()
    };
    let n = b.p();
    let mut out = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in i..n {
            let c = b
                .row(i)
                .iter()
                .zip(b.row(j))
                .filter(|(&x, &y)| x && y)
                .count() as u64;
            out[i][j] = c;
            out[j][i] = c;
        }
    }
    out
}

/// `ρ(G) = sqrt(ρ(B Bᵀ))`. The returned residual and iteration count are those
/// of the Gram run; `rho` is already square-rooted.
pub fn spectral_radius_graph(g: &BipartiteGraph, tol: f64) -> Result<SpectralResult> {
    let gm = gram(g);
    if gm.is_empty() {
        return Err(SpectralError::Empty);
    }
    let m = SymMatrix::from_fn(gm.len(), |i, j| gm[i][j] as f64);
    let r = spectral_radius_sym(&m, tol)?;
    Ok(SpectralResult {
        rho: r.rho.sqrt(),
        ..r
    })
}

/// `ρ(H(D))`, which equals `ρ(G_D)²`.
pub fn spectral_radius_h(degrees: &DegreeSequence, tol: f64) -> Result<SpectralResult> {
    spectral_radius_sym(&h_matrix(degrees).to_sym(), tol)
}
