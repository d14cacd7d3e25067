//! Quotient matrices of partitioned symmetric matrices.
//!
//! For a partition `{X_1..X_m}` of the indices of `M`, the quotient `B` has
//! `b_ij` = (sum of block `M_ij`) / `|X_i|`. It is equitable when every row of
//! every block has the same sum; then `M S = S B` for the 0-1 characteristic
//! matrix `S`, each eigenvalue of `B` is one of `M`, and for positive `M` the
//! spectral radii agree.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::exactpoly::{self, char_poly, IntPolynomial, PolyError, RootBracket};
use crate::graphs::DegreeSequence;
use crate::spectral::{self, SpectralError, SymMatrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuotientError {
    #[error("index {index} appears in more than one block")]
    Overlap { index: usize },
    #[error("index {index} is not covered by any block")]
    Gap { index: usize },
    #[error("block {block} is empty")]
    EmptyBlock { block: usize },
    #[error("index {index} out of range for order {n}")]
    OutOfRange { index: usize, n: usize },
    #[error("partition covers {partition} indices but the matrix has order {matrix}")]
    OrderMismatch { partition: usize, matrix: usize },
    #[error("expected {expected} entries, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetric at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("matrix must be positive (entry ({i},{j}) is 0)")]
    NotPositive { i: usize, j: usize },
    #[error("quotient is not equitable")]
    NotEquitable,
    #[error("the middle block of the three-part partition needs order >= 3 (got {n})")]
    TooSmallForThreeBlocks { n: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

pub type Result<T> = std::result::Result<T, QuotientError>;

/// Ordered partition of `{0..n}` into non-empty blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
    owner: Vec<usize>,
}

impl RowPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(QuotientError::EmptyBlock { block: b });
            }
            for &i in block {
                if i >= n {
                    return Err(QuotientError::OutOfRange { index: i, n });
                }
                if owner[i] != usize::MAX {
                    return Err(QuotientError::Overlap { index: i });
                }
                owner[i] = b;
            }
        }
        if let Some(index) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(QuotientError::Gap { index });
        }
        Ok(Self { n, blocks, owner })
    }

    /// Every index in its own block; `S` is the identity.
    pub fn singletons(n: usize) -> Self {
        Self::new(n, (0..n).map(|i| vec![i]).collect()).expect("singletons partition")
    }

    /// `{{first}, {middle..}, {last}}`.
    pub fn first_middle_last(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(QuotientError::TooSmallForThreeBlocks { n });
        }
        Self::new(n, vec![vec![0], (1..n - 1).collect(), vec![n - 1]])
    }

    /// Runs of equal degrees; equitable for `H(D)` since equal degrees give
    /// equal rows.
    pub fn degree_runs(degrees: &DegreeSequence) -> Self {
        let mut blocks = Vec::new();
        let mut start = 0;
        for (_, len) in degrees.runs() {
            blocks.push((start..start + len).collect());
            start += len;
        }
        Self::new(degrees.len(), blocks).expect("runs partition")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, index: usize) -> usize {
        self.owner[index]
    }

    /// `n x m` 0-1 matrix with `s_ij = 1` iff index `i` lies in block `j`.
    pub fn characteristic_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| {
                (0..self.blocks.len())
                    .map(|j| u8::from(self.owner[i] == j))
                    .collect()
            })
            .collect()
    }
}

/// `S v`: each index takes the value of its block.
pub fn lift_eigenvector<T: Clone>(partition: &RowPartition, v: &[T]) -> Result<Vec<T>> {
    if v.len() != partition.block_count() {
        return Err(QuotientError::DimensionMismatch {
            expected: partition.block_count(),
            found: v.len(),
        });
    }
    Ok((0..partition.order())
        .map(|i| v[partition.block_of(i)].clone())
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMatrix {
    entries: Vec<Vec<BigRational>>,
    equitable: bool,
}

impl QuotientMatrix {
    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<BigRational>] {
        &self.entries
    }

    pub fn is_equitable(&self) -> bool {
        self.equitable
    }

    /// Entries as integers, if they all are (always the case when equitable).
    pub fn to_integer(&self) -> Option<Vec<Vec<BigInt>>> {
        self.entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.is_integer().then(|| x.to_integer()))
                    .collect()
            })
            .collect()
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }

    /// Exact `det(xI − B)`; requires integer entries.
    pub fn characteristic_polynomial(&self) -> Result<IntPolynomial> {
        let m = self.to_integer().ok_or(QuotientError::NotEquitable)?;
        Ok(char_poly(&m))
    }
}

#[allow(clippy::needless_range_loop)]
fn validate_positive_symmetric(m: &[Vec<u64>]) -> Result<()> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(QuotientError::NotSquare);
    }
    for i in 0..n {
        for j in 0..n {
            if m[i][j] == 0 {
                return Err(QuotientError::NotPositive { i, j });
            }
            if m[i][j] != m[j][i] {
                return Err(QuotientError::NotSymmetric { i, j });
            }
        }
    }
    Ok(())
}

/// Quotient of a positive symmetric integer matrix. Equitability is decided by
/// exact comparison of integer row sums within every block.
pub fn quotient(m: &[Vec<u64>], partition: &RowPartition) -> Result<QuotientMatrix> {
    validate_positive_symmetric(m)?;
    if partition.order() != m.len() {
        return Err(QuotientError::OrderMismatch {
            partition: partition.order(),
            matrix: m.len(),
        });
    }
    let blocks = partition.blocks();
    let mut equitable = true;
    let mut entries = Vec::with_capacity(blocks.len());
    for bi in blocks {
        let mut row = Vec::with_capacity(blocks.len());
        for bj in blocks {
            let sums: Vec<u128> = bi
                .iter()
                .map(|&r| bj.iter().map(|&c| u128::from(m[r][c])).sum())
                .collect();
            if sums.iter().any(|&s| s != sums[0]) {
                equitable = false;
            }
            let total: u128 = sums.iter().sum();
            row.push(BigRational::new(
                BigInt::from(total),
                BigInt::from(bi.len()),
            ));
        }
        entries.push(row);
    }
    Ok(QuotientMatrix { entries, equitable })
}

/// One eigenvalue of an equitable quotient, checked against `M` through the
/// lifted eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenCheck {
    pub bracket: RootBracket,
    pub lambda: f64,
    /// `‖M(Sv) − λ(Sv)‖∞ / ‖Sv‖∞`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquitableCheck {
    pub quotient: QuotientMatrix,
    pub char_poly: IntPolynomial,
    pub eigen: Vec<EigenCheck>,
    /// Largest root of the quotient's characteristic polynomial.
    pub rho_quotient: f64,
    /// Power-iteration radius of `M`.
    pub rho_matrix: f64,
}

impl EquitableCheck {
    pub fn max_residual(&self) -> f64 {
        self.eigen.iter().map(|e| e.residual).fold(0.0, f64::max)
    }
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting; a zero
/// pivot is replaced by a tiny value, which is what inverse iteration wants.
#[allow(clippy::needless_range_loop)]
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        if a[col][col] == 0.0 {
            a[col][col] = f64::EPSILON;
        }
        for r in col + 1..n {
            let factor = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= factor * a[col][c];
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    x
}

/// Eigenvector of `b` for an eigenvalue near `lambda`, by inverse iteration.
fn eigenvector(b: &[Vec<f64>], lambda: f64) -> Vec<f64> {
    let n = b.len();
    let shift = lambda + 1e-10 * lambda.abs().max(1.0);
    let shifted: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { b[i][j] - shift } else { b[i][j] })
                .collect()
        })
        .collect();
    let mut v = vec![1.0; n];
    for _ in 0..4 {
        let x = solve(shifted.clone(), v);
        let norm = x.iter().fold(0.0f64, |m, a| m.max(a.abs()));
        v = x.into_iter().map(|a| a / norm).collect();
    }
    v
}

/// Builds the quotient, requires it equitable, and checks every eigenvalue of
/// `B` against `M`.
pub fn verify_equitable(m: &[Vec<u64>], partition: &RowPartition) -> Result<EquitableCheck> {
    let q = quotient(m, partition)?;
    if !q.is_equitable() {
        return Err(QuotientError::NotEquitable);
    }
    let cp = q.characteristic_polynomial()?;
    let width = exactpoly::default_width();
    let roots = exactpoly::real_root_brackets(&cp, &width)?;
    let bf = q.to_f64();
    let mf = SymMatrix::from_rows(
        &m.iter()
            .map(|r| r.iter().map(|&x| x as f64).collect())
            .collect::<Vec<_>>(),
    )?;
    let mut eigen = Vec::with_capacity(roots.len());
    for bracket in roots {
        let lambda = bracket.midpoint_f64();
        let v = eigenvector(&bf, lambda);
        let sv = lift_eigenvector(partition, &v)?;
        let msv = mf.mul_vec(&sv);
        let num = msv
            .iter()
            .zip(&sv)
            .fold(0.0f64, |acc, (a, b)| acc.max((a - lambda * b).abs()));
        let den = sv.iter().fold(0.0f64, |acc, a| acc.max(a.abs()));
        eigen.push(EigenCheck {
            bracket,
            lambda,
            residual: num / den,
        });
    }
    let rho_quotient = eigen.last().map_or(0.0, |e| e.lambda);
    let rho_matrix = spectral::spectral_radius_sym(&mf, spectral::DEFAULT_TOL)?.rho;
    Ok(EquitableCheck {
        quotient: q,
        char_poly: cp,
        eigen,
        rho_quotient,
        rho_matrix,
    })
}
