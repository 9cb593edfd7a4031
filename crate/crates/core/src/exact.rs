//! Checked integer arithmetic shared by the geometric kernels.
//!
//! Hot loops run on `i128` with overflow detection; on overflow the caller
//! reruns the same generic code on `BigInt`, so results are always exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub(crate) trait ExactInt: Clone + Ord + std::fmt::Debug {
    fn zero_int() -> Self;
    fn one_int() -> Self;
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    /// Division known to be exact; `None` on overflow or a nonzero remainder.
    fn div_exact(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn vanishes(&self) -> bool;
    fn signum(&self) -> i32;
    fn abs(&self) -> Option<Self> {
        if self.signum() < 0 {
            self.neg()
        } else {
            Some(self.clone())
        }
    }
}

impl ExactInt for i128 {
    fn zero_int() -> Self {
        0
    }
    fn one_int() -> Self {
        1
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        if *o == 0 || self.checked_rem(*o)? != 0 {
            return None;
        }
        self.checked_div(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn signum(&self) -> i32 {
        i128::signum(*self) as i32
    }
}

impl ExactInt for BigInt {
    fn zero_int() -> Self {
        Zero::zero()
    }
    fn one_int() -> Self {
        num_traits::One::one()
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        if o.vanishes() {
            return None;
        }
        let (q, r) = self.div_rem(o);
        r.vanishes().then_some(q)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn signum(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
}

/// `a·b − c·e`
fn cross<T: ExactInt>(a: &T, b: &T, c: &T, e: &T) -> Option<T> {
    a.mul(b)?.sub(&c.mul(e)?)
}

pub(crate) fn dot<T: ExactInt>(a: &[T], b: &[T]) -> Option<T> {
    a.iter()
        .zip(b)
        .try_fold(T::zero_int(), |acc, (x, y)| acc.add(&x.mul(y)?))
}

/// Fraction-free Gauss–Jordan on a square matrix `m`.
///
/// Returns `(δ, X)` with `X = δ·m⁻¹` and `δ = ±det m`, or `Some((0, []))` when
/// `m` is singular. `None` signals arithmetic overflow.
pub(crate) fn scaled_inverse<T: ExactInt>(m: &[Vec<T>]) -> Option<(T, Vec<Vec<T>>)> {
    let n = m.len();
    let mut a: Vec<Vec<T>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one_int() } else { T::zero_int() }));
            r
        })
        .collect();
    let width = 2 * n;
    let mut prev = T::one_int();
    for k in 0..n {
        if a[k][k].vanishes() {
            match (k + 1..n).find(|&i| !a[i][k].vanishes()) {
                Some(p) => a.swap(k, p),
                None => return Some((T::zero_int(), Vec::new())),
            }
        }
        let pivot = a[k][k].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let factor = a[i][k].clone();
            for j in 0..width {
                if j == k {
                    continue;
                }
                let v = cross(&pivot, &a[i][j], &factor, &a[k][j])?.div_exact(&prev)?;
                a[i][j] = v;
            }
            a[i][k] = T::zero_int();
        }
        prev = pivot;
    }
    let x = a.into_iter().map(|row| row[n..].to_vec()).collect();
    Some((prev, x))
}

/// Rank of a list of integer row vectors (Bareiss).
pub(crate) fn rank<T: ExactInt>(rows: &[Vec<T>]) -> Option<usize> {
    let mut a = rows.to_vec();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut prev = T::one_int();
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].vanishes()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = cross(&a[r][c], &a[i][j], &a[i][c], &a[r][j])?.div_exact(&prev)?;
                a[i][j] = v;
            }
            a[i][c] = T::zero_int();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn rational_inverse(m: &[Vec<i128>]) -> Option<Vec<Vec<BigRational>>> {
        let n = m.len();
        let mut a: Vec<Vec<BigRational>> = m
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r: Vec<BigRational> = row
                    .iter()
                    .map(|&x| BigRational::from_integer(BigInt::from(x)))
                    .collect();
                r.extend((0..n).map(|j| {
                    BigRational::from_integer(BigInt::from((i == j) as i32))
                }));
                r
            })
            .collect();
        for k in 0..n {
            let p = (k..n).find(|&i| !a[i][k].is_zero())?;
            a.swap(k, p);
            let piv = a[k][k].clone();
            for x in a[k].iter_mut() {
                *x = &*x / &piv;
            }
            for i in 0..n {
                if i != k {
                    let f = a[i][k].clone();
                    for j in 0..2 * n {
                        let v = &a[i][j] - &f * &a[k][j];
                        a[i][j] = v;
                    }
                }
            }
        }
        Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    #[test]
    fn scaled_inverse_matches_rational_inverse() {
        let cases: Vec<Vec<Vec<i128>>> = vec![
            vec![vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]],
            vec![vec![2, 0], vec![0, 3]],
            vec![vec![1, 1, 1, 1], vec![0, 1, 3, 4], vec![0, 0, 1, 1], vec![1, 0, 0, 2]],
        ];
        for m in cases {
            let (delta, x) = scaled_inverse(&m).unwrap();
            let inv = rational_inverse(&m).unwrap();
            let delta_q = BigRational::from_integer(BigInt::from(delta));
            for (xr, ir) in x.iter().zip(&inv) {
                for (xv, iv) in xr.iter().zip(ir) {
                    assert_eq!(BigRational::from_integer(BigInt::from(*xv)), iv * &delta_q);
                }
            }
            let big: Vec<Vec<BigInt>> = m
                .iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect();
            let det = crate::lattice::det_rows(big);
            assert_eq!(Signed::abs(&BigInt::from(delta)), Signed::abs(&det));
        }
    }

    #[test]
    fn singular_and_overflow() {
        let m: Vec<Vec<i128>> = vec![vec![1, 2], vec![2, 4]];
        assert_eq!(scaled_inverse(&m).unwrap().0, 0);
        let huge = i128::MAX / 2;
        let m: Vec<Vec<i128>> = vec![vec![huge, 1], vec![1, huge]];
        assert!(scaled_inverse(&m).is_none());
        let big: Vec<Vec<BigInt>> = m
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        assert!(scaled_inverse(&big).is_some());
    }

    #[test]
    fn rank_counts() {
        let rows: Vec<Vec<i128>> = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank(&rows), Some(2));
    }
}
