//! Membership in the affine semigroup `ℕA`, holes, and semigroup equality.
//!
//! Search is bounded by a positive grading `w` with `w·a_j ≥ 1` for every
//! column: any representation of `b` uses at most `w·b` columns, so a
//! depth-first search over residuals terminates. Failed residuals are
//! memoized; whether a residual lies in `ℕA` does not depend on the path
//! that reached it.
//!
//! Holes are checked against the columns only. If `b + a_j ∈ ℕA` for every
//! `j`, then for any nonzero `s ∈ ℕA` write `s = a_j + s'` with `s' ∈ ℕA`,
//! and `b + s = (b + a_j) + s' ∈ ℕA` since `ℕA` is closed under addition.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lp::{feasible_point, to_rational};
use crate::matrix::IntegerMatrix;

pub const DEFAULT_CACHE_LIMIT: usize = 1_000_000;

/// An integer vector `w` with `w·a_j > 0` for every column.
///
/// A row whose entries are all positive (or all negative) gives a unit
/// vector directly; otherwise an exact LP finds `w` with `Aᵀw ≥ 1`.
pub fn positive_grading(a: &IntegerMatrix) -> Result<Vec<BigInt>> {
    a.require_full_rank()?;
    let d = a.rows();
    for i in 0..d {
        let row = a.row(i);
        for sign in [1i64, -1] {
            if row.iter().all(|x| x * sign > BigInt::zero()) {
                let mut w = vec![BigInt::zero(); d];
                w[i] = BigInt::from(sign);
                return Ok(w);
            }
        }
    }
    // Variables (w⁺, w⁻, s) ≥ 0 with  Σ_i a_ij (w⁺_i − w⁻_i) − s_j = 1.
    let n = a.cols();
    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|j| {
            let mut r = Vec::with_capacity(2 * d + n);
            r.extend((0..d).map(|i| to_rational(a.get(i, j))));
            r.extend((0..d).map(|i| -to_rational(a.get(i, j))));
            r.extend((0..n).map(|k| {
                if k == j {
                    -BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    let rhs = vec![BigRational::one(); n];
    let x = feasible_point(&rows, &rhs).ok_or(Error::NoPositiveGrading)?;
    let w: Vec<BigRational> = (0..d).map(|i| &x[i] - &x[d + i]).collect();
    let lcm = w
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut w: Vec<BigInt> = w
        .iter()
        .map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in w.iter_mut() {
            *x = &*x / &g;
        }
    }
    Ok(w)
}

/// `ℕA` together with a positive grading and a memo of failed residuals.
#[derive(Clone, Debug)]
pub struct GradedSemigroup {
    matrix: IntegerMatrix,
    grading: Vec<BigInt>,
    grading_small: Vec<i64>,
    columns: Vec<Vec<i64>>,
    weights: Vec<i64>,
    /// Column indices by decreasing weight, ties by index.
    order: Vec<usize>,
    failed: HashSet<Vec<i64>>,
    cache_limit: usize,
}

impl GradedSemigroup {
    pub fn new(a: &IntegerMatrix) -> Result<Self> {
        let w = positive_grading(a)?;
        Self::with_grading(a, w)
    }

    pub fn with_grading(a: &IntegerMatrix, grading: Vec<BigInt>) -> Result<Self> {
        if grading.len() != a.rows() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                found: grading.len(),
            });
        }
        let columns: Vec<Vec<i64>> = a
            .columns()
            .iter()
            .map(|c| to_machine(c))
            .collect::<Result<_>>()?;
        let weights: Vec<i64> = a
            .columns()
            .iter()
            .map(|c| {
                let wa: BigInt = c.iter().zip(&grading).map(|(x, y)| x * y).sum();
                wa.to_i64()
                    .ok_or_else(|| Error::Overflow(format!("column weight {wa}")))
            })
            .collect::<Result<_>>()?;
        if weights.iter().any(|&x| x < 1) {
            return Err(Error::InvalidArgument(
                "grading is not positive on every column".into(),
            ));
        }
        let grading_small = to_machine(&grading)?;
        let mut order: Vec<usize> = (0..weights.len()).collect();
        order.sort_by_key(|&j| (std::cmp::Reverse(weights[j]), j));
        Ok(GradedSemigroup {
            matrix: a.clone(),
            grading,
            grading_small,
            columns,
            weights,
            order,
            failed: HashSet::new(),
            cache_limit: DEFAULT_CACHE_LIMIT,
        })
    }

    pub fn with_cache_limit(mut self, limit: usize) -> Self {
        self.cache_limit = limit;
        self
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn grading(&self) -> &[BigInt] {
        &self.grading
    }

    pub fn cache_len(&self) -> usize {
        self.failed.len()
    }

    /// A witness `u ∈ ℕⁿ` with `A·u = b`, if one exists. Uses and extends the
    /// memo of failed residuals.
    pub fn member(&mut self, b: &[BigInt]) -> Result<Option<Vec<u64>>> {
        let target = self.prepare(b)?;
        let mut failed = std::mem::take(&mut self.failed);
        let result = self.search(&target, &mut failed, self.cache_limit);
        self.failed = failed;
        Ok(result)
    }

    /// Like [`GradedSemigroup::member`] with a call-local memo, leaving the
    /// instance untouched.
    pub fn member_uncached(&self, b: &[BigInt]) -> Result<Option<Vec<u64>>> {
        let target = self.prepare(b)?;
        let mut failed = HashSet::new();
        Ok(self.search(&target, &mut failed, self.cache_limit))
    }

    /// `b ∉ ℕA` and `b + a_j ∈ ℕA` for every column `a_j`.
    pub fn is_hole(&mut self, b: &[BigInt]) -> Result<bool> {
        if self.member(b)?.is_some() {
            return Ok(false);
        }
        for j in 0..self.matrix.cols() {
            let shifted: Vec<BigInt> = b
                .iter()
                .zip(self.matrix.column(j))
                .map(|(x, y)| x + y)
                .collect();
            if self.member(&shifted)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn prepare(&self, b: &[BigInt]) -> Result<Vec<i64>> {
        if b.len() != self.matrix.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.rows(),
                found: b.len(),
            });
        }
        to_machine(b)
    }

    fn search(
        &self,
        target: &[i64],
        failed: &mut HashSet<Vec<i64>>,
        limit: usize,
    ) -> Option<Vec<u64>> {
        let mut u = vec![0u64; self.columns.len()];
        let grade = self.grade(target);
        self.dfs(target.to_vec(), grade, &mut u, failed, limit)
            .then_some(u)
    }

    fn grade(&self, v: &[i64]) -> i128 {
        v.iter()
            .zip(&self.grading_small)
            .map(|(&x, &w)| x as i128 * w as i128)
            .sum()
    }

    fn dfs(
        &self,
        residual: Vec<i64>,
        grade: i128,
        u: &mut [u64],
        failed: &mut HashSet<Vec<i64>>,
        limit: usize,
    ) -> bool {
        if residual.iter().all(|&x| x == 0) {
            return true;
        }
        if grade <= 0 || failed.contains(&residual) {
            return false;
        }
        for &j in &self.order {
            let wj = self.weights[j] as i128;
            if wj > grade {
                continue;
            }
            let next: Vec<i64> = residual
                .iter()
                .zip(&self.columns[j])
                .map(|(x, y)| x - y)
                .collect();
            u[j] += 1;
            if self.dfs(next, grade - wj, u, failed, limit) {
                return true;
            }
            u[j] -= 1;
        }
        if failed.len() < limit {
            failed.insert(residual);
        }
        false
    }
}

fn to_machine(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| {
            // Leave headroom so residual arithmetic cannot overflow.
            x.to_i64()
                .filter(|y| y.unsigned_abs() < (1u64 << 60))
                .ok_or_else(|| Error::Overflow(format!("vector entry {x}")))
        })
        .collect()
}

/// One-shot membership without a persistent memo.
pub fn semigroup_member(a: &IntegerMatrix, b: &[BigInt]) -> Result<Option<Vec<u64>>> {
    GradedSemigroup::new(a)?.member_uncached(b)
}

pub fn is_hole(a: &IntegerMatrix, b: &[BigInt]) -> Result<bool> {
    GradedSemigroup::new(a)?.is_hole(b)
}

/// `ℕA = ℕB`, by membership of each generating set in the other semigroup.
pub fn semigroups_equal(a: &IntegerMatrix, b: &IntegerMatrix) -> Result<bool> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.rows(),
        });
    }
    let mut sa = GradedSemigroup::new(a)?;
    let mut sb = GradedSemigroup::new(b)?;
    for c in b.columns() {
        if sa.member(&c)?.is_none() {
            return Ok(false);
        }
    }
    for c in a.columns() {
        if sb.member(&c)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}
