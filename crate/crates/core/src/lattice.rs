//! Exact integer linear algebra: Smith normal form, lattice index, integer
//! kernel bases, direct sums and homogenization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;

/// `left · M · right = diag`, with `left` and `right` unimodular and the
/// nonzero diagonal entries `d_1 | d_2 | ...` nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub left: IntegerMatrix,
    pub diag: IntegerMatrix,
    pub right: IntegerMatrix,
}

impl SmithDecomposition {
    /// The `min(rows, cols)` diagonal entries, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.diag.rows().min(self.diag.cols());
        (0..k).map(|i| self.diag.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form with transforms.
///
/// Pivots on the entry of smallest absolute value in the trailing submatrix,
/// ties broken by lowest (row, column) index, so the output is a function of
/// the input alone.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.to_rows();
    let mut u = IntegerMatrix::identity(rows).to_rows();
    let mut v = IntegerMatrix::identity(cols).to_rows();

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_abs_entry(&a, t) else {
                return finish(a, u, v);
            };
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);

            let pivot = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &pivot;
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &pivot;
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // Pivot must divide the whole trailing block; otherwise fold the
            // offending row into row t and go around again.
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(-1);
                    row_axpy(&mut a, t, i, &one);
                    row_axpy(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut().chain(u[t].iter_mut()) {
                *x = -&*x;
            }
        }
    }
    finish(a, u, v)
}

fn finish(a: Vec<Vec<BigInt>>, u: Vec<Vec<BigInt>>, v: Vec<Vec<BigInt>>) -> SmithDecomposition {
    SmithDecomposition {
        left: IntegerMatrix::new(u).expect("square"),
        diag: IntegerMatrix::new(a).expect("rectangular"),
        right: IntegerMatrix::new(v).expect("square"),
    }
}

fn min_abs_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, &BigInt)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            if best.map_or(true, |(_, _, b)| x.magnitude() < b.magnitude()) {
                best = Some((i, j, x));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn swap_cols(a: &mut [Vec<BigInt>], j: usize, k: usize) {
    if j != k {
        for row in a.iter_mut() {
            row.swap(j, k);
        }
    }
}

/// row_i -= q · row_k
fn row_axpy(a: &mut [Vec<BigInt>], i: usize, k: usize, q: &BigInt) {
    let (src, dst) = if i < k {
        let (lo, hi) = a.split_at_mut(k);
        (&hi[0], &mut lo[i])
    } else {
        let (lo, hi) = a.split_at_mut(i);
        (&lo[k], &mut hi[0])
    };
    for (d, s) in dst.iter_mut().zip(src) {
        *d -= q * s;
    }
}

/// col_j -= q · col_k
fn col_axpy(a: &mut [Vec<BigInt>], j: usize, k: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let delta = q * &row[k];
        row[j] -= delta;
    }
}

/// Rank over the rationals via Bareiss elimination.
pub(crate) fn rank_of_rows(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let x = (&a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j]) / &prev;
                a[i][j] = x;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Determinant of a square matrix (Bareiss).
pub fn determinant(m: &IntegerMatrix) -> Result<BigInt> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    Ok(det_rows(m.to_rows()))
}

pub(crate) fn det_rows(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = x;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * prev
}

/// The index `[ℤ^d : ℤA]`, the product of the Smith invariants.
pub fn lattice_index(a: &IntegerMatrix) -> Result<BigInt> {
    a.require_full_rank()?;
    Ok(smith_normal_form(a).diagonal().iter().product())
}

/// A saturated basis of the integer kernel `{u ∈ ℤⁿ : A·u = 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    pub vectors: Vec<Vec<BigInt>>,
}

impl KernelBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// The trailing `n − d` columns of the Smith right factor. Because that
/// factor is unimodular they span the full kernel lattice, not a sublattice.
pub fn kernel_basis(a: &IntegerMatrix) -> Result<KernelBasis> {
    a.require_full_rank()?;
    let snf = smith_normal_form(a);
    let vectors = (a.rows()..a.cols()).map(|j| snf.right.column(j)).collect();
    Ok(KernelBasis { vectors })
}

/// Block-diagonal stacking `A1 ⊕ A2`.
pub fn direct_sum(a1: &IntegerMatrix, a2: &IntegerMatrix) -> Result<IntegerMatrix> {
    if a1.cols() == 0 || a2.cols() == 0 {
        return Err(Error::InvalidMatrix("direct sum with a 0-column matrix".into()));
    }
    let (d1, n1) = (a1.rows(), a1.cols());
    Ok(IntegerMatrix::from_fn(
        d1 + a2.rows(),
        n1 + a2.cols(),
        |i, j| match (i < d1, j < n1) {
            (true, true) => a1.get(i, j).clone(),
            (false, false) => a2.get(i - d1, j - n1).clone(),
            _ => BigInt::zero(),
        },
    ))
}

/// Direct sum of a nonempty list of blocks.
pub fn direct_sum_all(blocks: &[&IntegerMatrix]) -> Result<IntegerMatrix> {
    let (first, rest) = blocks
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("direct sum of no matrices".into()))?;
    rest.iter()
        .try_fold((*first).clone(), |acc, b| direct_sum(&acc, b))
}

/// Prepends a zero column and then a row of ones.
pub fn homogenize(a: &IntegerMatrix) -> Result<IntegerMatrix> {
    a.require_full_rank()?;
    Ok(IntegerMatrix::from_fn(a.rows() + 1, a.cols() + 1, |i, j| {
        match (i, j) {
            (0, _) => BigInt::one(),
            (_, 0) => BigInt::zero(),
            _ => a.get(i - 1, j - 1).clone(),
        }
    }))
}

/// True iff `(1, ..., 1)` lies in the rational row span of `A`, i.e. the
/// toric ideal is homogeneous in the standard grading.
pub fn is_homogeneous_configuration(a: &IntegerMatrix) -> Result<bool> {
    a.require_full_rank()?;
    let mut rows = a.to_rows();
    rows.push(vec![BigInt::one(); a.cols()]);
    Ok(rank_of_rows(rows) == a.rows())
}
