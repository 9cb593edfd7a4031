//! Exact convex geometry of `Δ_A`, the convex hull of the origin and the
//! columns of `A`.
//!
//! Volumes come from a placing triangulation: an initial simplex is grown
//! greedily from the points in input order (origin first), then every other
//! point is placed in input order, coning it over each boundary facet it
//! sees strictly. Coplanar points see nothing and add no simplex.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{self, ExactInt};
use crate::lattice::lattice_index;
use crate::lp::{feasible_point, to_rational};
use crate::matrix::IntegerMatrix;

#[derive(Clone, Debug)]
pub struct ConfigPolytope {
    ambient_dim: usize,
    /// The origin followed by the columns of `A`.
    generators: Vec<Vec<BigInt>>,
    cached_volume_dfact: Option<BigInt>,
}

impl ConfigPolytope {
    pub fn new(a: &IntegerMatrix) -> Self {
        let mut generators = vec![vec![BigInt::zero(); a.rows()]];
        generators.extend(a.columns());
        ConfigPolytope {
            ambient_dim: a.rows(),
            generators,
            cached_volume_dfact: None,
        }
    }

    /// Like [`ConfigPolytope::new`], with the volume computed up front.
    pub fn with_volume(a: &IntegerMatrix) -> Self {
        let mut p = Self::new(a);
        p.cached_volume_dfact = Some(placing_volume(&p.generators, p.ambient_dim));
        p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn cached_volume_dfact(&self) -> Option<&BigInt> {
        self.cached_volume_dfact.as_ref()
    }

    /// `d!` times the Euclidean volume; zero for lower-dimensional hulls.
    pub fn volume_dfact(&self) -> BigInt {
        match &self.cached_volume_dfact {
            Some(v) => v.clone(),
            None => placing_volume(&self.generators, self.ambient_dim),
        }
    }

    /// Exact convex-combination test by LP feasibility.
    pub fn contains_point(&self, p: &[BigRational]) -> Result<bool> {
        if p.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: p.len(),
            });
        }
        // Σ λ_j g_j = p, Σ λ_j = 1, λ ≥ 0
        let mut rows: Vec<Vec<BigRational>> = (0..self.ambient_dim)
            .map(|i| self.generators.iter().map(|g| to_rational(&g[i])).collect())
            .collect();
        rows.push(vec![BigRational::one(); self.generators.len()]);
        let mut rhs = p.to_vec();
        rhs.push(BigRational::one());
        Ok(feasible_point(&rows, &rhs).is_some())
    }

    pub fn contains_integer_point(&self, p: &[BigInt]) -> Result<bool> {
        let q: Vec<BigRational> = p.iter().map(to_rational).collect();
        self.contains_point(&q)
    }
}

pub fn volume_dfact(a: &IntegerMatrix) -> BigInt {
    ConfigPolytope::new(a).volume_dfact()
}

/// `d! · vol(Δ_A) / [ℤ^d : ℤA]`.
pub fn normalized_volume(a: &IntegerMatrix) -> Result<BigInt> {
    a.require_full_rank()?;
    let vol = volume_dfact(a);
    let index = lattice_index(a)?;
    if vol.is_zero() {
        return Err(Error::Internal(
            "full-rank configuration produced a zero volume".into(),
        ));
    }
    if !(&vol % &index).is_zero() {
        return Err(Error::Internal(format!(
            "volume {vol} not divisible by lattice index {index}"
        )));
    }
    Ok(vol / index)
}

/// `Δ_A = Δ_B`, decided by mutual column containment.
pub fn polytopes_equal(a: &IntegerMatrix, b: &IntegerMatrix) -> Result<bool> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.rows(),
        });
    }
    let pa = ConfigPolytope::new(a);
    let pb = ConfigPolytope::new(b);
    for c in b.columns() {
        if !pa.contains_integer_point(&c)? {
            return Ok(false);
        }
    }
    for c in a.columns() {
        if !pb.contains_integer_point(&c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn placing_volume(points: &[Vec<BigInt>], dim: usize) -> BigInt {
    if let Some(small) = convert::<i128>(points) {
        if let Some(v) = Triangulation::<i128>::place_all(&small, dim) {
            return v.to_big();
        }
    }
    let big = convert::<BigInt>(points).expect("BigInt conversion is total");
    Triangulation::<BigInt>::place_all(&big, dim).expect("BigInt arithmetic cannot overflow")
}

fn convert<T: ExactInt>(points: &[Vec<BigInt>]) -> Option<Vec<Vec<T>>> {
    points
        .iter()
        .map(|p| p.iter().map(T::from_big).collect())
        .collect()
}

/// Oriented affine functional `x ↦ normal·x + offset`, positive on the
/// simplex that owns the facet.
struct Halfspace<T> {
    normal: Vec<T>,
    offset: T,
}

struct Triangulation<T> {
    /// Boundary facets keyed by sorted vertex indices.
    boundary: HashMap<Vec<usize>, Halfspace<T>>,
    volume: T,
}

impl<T: ExactInt> Triangulation<T> {
    /// Total `d!`-scaled volume, or `None` on overflow.
    fn place_all(points: &[Vec<T>], dim: usize) -> Option<T> {
        let Some(initial) = initial_simplex(points, dim)? else {
            return Some(T::zero_int());
        };
        let mut tri = Triangulation {
            boundary: HashMap::new(),
            volume: T::zero_int(),
        };
        tri.add_simplex(points, &initial, dim)?;
        for p in 0..points.len() {
            if initial.contains(&p) {
                continue;
            }
            let mut visible = Vec::new();
            for (facet, h) in &tri.boundary {
                if exact::dot(&h.normal, &points[p])?.add(&h.offset)?.signum() < 0 {
                    visible.push(facet.clone());
                }
            }
            visible.sort();
            for facet in visible {
                let mut simplex = facet;
                simplex.push(p);
                tri.add_simplex(points, &simplex, dim)?;
            }
        }
        Some(tri.volume)
    }

    fn add_simplex(&mut self, points: &[Vec<T>], vertices: &[usize], dim: usize) -> Option<()> {
        // Rows (v, 1); column i of δ·M⁻¹ is δ times the barycentric
        // coordinate of vertex i as an affine functional.
        let m: Vec<Vec<T>> = vertices
            .iter()
            .map(|&v| {
                let mut row = points[v].clone();
                row.push(T::one_int());
                row
            })
            .collect();
        let (delta, x) = exact::scaled_inverse(&m)?;
        debug_assert!(!delta.vanishes(), "placed a degenerate simplex");
        self.volume = self.volume.add(&delta.abs()?)?;
        let flip = delta.signum() < 0;
        for i in 0..=dim {
            let mut facet: Vec<usize> = vertices
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, &v)| v)
                .collect();
            facet.sort_unstable();
            if self.boundary.remove(&facet).is_some() {
                continue;
            }
            let mut normal: Vec<T> = (0..dim).map(|k| x[k][i].clone()).collect();
            let mut offset = x[dim][i].clone();
            if flip {
                for c in normal.iter_mut() {
                    *c = c.neg()?;
                }
                offset = offset.neg()?;
            }
            self.boundary.insert(facet, Halfspace { normal, offset });
        }
        Some(())
    }
}

/// First `dim + 1` affinely independent points in input order, or
/// `Some(None)` if the points span less than full dimension.
fn initial_simplex<T: ExactInt>(points: &[Vec<T>], dim: usize) -> Option<Option<Vec<usize>>> {
    let Some(base) = points.first() else {
        return Some(None);
    };
    let mut chosen = vec![0usize];
    let mut diffs: Vec<Vec<T>> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        if chosen.len() == dim + 1 {
            break;
        }
        let diff: Vec<T> = p
            .iter()
            .zip(base)
            .map(|(x, y)| x.sub(y))
            .collect::<Option<_>>()?;
        diffs.push(diff);
        if exact::rank(&diffs)? == diffs.len() {
            chosen.push(i);
        } else {
            diffs.pop();
        }
    }
    Some((chosen.len() == dim + 1).then_some(chosen))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_i64(rows).unwrap()
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn unit_simplex() {
        assert_eq!(volume_dfact(&m(&[&[1, 0], &[0, 1]])), BigInt::from(1));
    }

    #[test]
    fn base_volumes() {
        let a2 = m(&[&[1, 1, 1, 1], &[0, 1, 3, 4]]);
        assert_eq!(ConfigPolytope::with_volume(&a2).volume_dfact(), BigInt::from(4));
        assert_eq!(normalized_volume(&a2).unwrap(), BigInt::from(4));
        let a2_hat = m(&[&[1, 2, 2, 2, 2], &[0, 0, 1, 3, 4]]);
        assert_eq!(volume_dfact(&a2_hat), BigInt::from(8));
        let a3 = m(&[
            &[1, 1, 1, 1, 1, 1],
            &[0, 0, 0, 0, 1, 1],
            &[0, 1, 3, 4, 0, 1],
        ]);
        assert_eq!(normalized_volume(&a3).unwrap(), BigInt::from(5));
        let a3_hat = m(&[
            &[1, 2, 2, 2, 2, 2, 2],
            &[0, 0, 0, 0, 0, 1, 1],
            &[0, 0, 1, 3, 4, 0, 1],
        ]);
        assert_eq!(normalized_volume(&a3_hat).unwrap(), BigInt::from(10));
    }

    #[test]
    fn degenerate_hull_has_zero_volume() {
        assert_eq!(volume_dfact(&m(&[&[1, 2], &[1, 2]])), BigInt::zero());
        assert!(normalized_volume(&m(&[&[1, 2], &[1, 2]])).is_err());
    }

    #[test]
    fn lattice_index_divides_out() {
        // (2 4): Δ = [0,4], index 2
        assert_eq!(volume_dfact(&m(&[&[2, 4]])), BigInt::from(4));
        assert_eq!(normalized_volume(&m(&[&[2, 4]])).unwrap(), BigInt::from(2));
    }

    #[test]
    fn membership() {
        let a2_hat = m(&[&[1, 2, 2, 2, 2], &[0, 0, 1, 3, 4]]);
        let p = ConfigPolytope::new(&a2_hat);
        for c in a2_hat.columns() {
            assert!(p.contains_integer_point(&c).unwrap());
        }
        assert!(!p.contains_point(&[q(3), q(0)]).unwrap());
        assert!(p
            .contains_point(&[BigRational::new(1.into(), 2.into()), q(0)])
            .unwrap());
        assert!(p.contains_point(&[q(1)]).is_err());
    }

    #[test]
    fn polytope_equality() {
        let a2 = m(&[&[1, 1, 1, 1], &[0, 1, 3, 4]]);
        let a2_hat = m(&[&[1, 2, 2, 2, 2], &[0, 0, 1, 3, 4]]);
        assert!(polytopes_equal(&a2, &a2).unwrap());
        assert!(!polytopes_equal(&a2, &a2_hat).unwrap());
        assert!(polytopes_equal(&a2, &m(&[&[1], &[0]])).is_ok());
        assert!(polytopes_equal(&a2, &m(&[&[1]])).is_err());
    }

    #[test]
    fn bigint_fallback_matches() {
        let a = m(&[&[1, 0, 3, 2], &[0, 2, 1, 5], &[1, 1, 0, 4]]);
        let small = convert::<i128>(ConfigPolytope::new(&a).generators()).unwrap();
        let big = convert::<BigInt>(ConfigPolytope::new(&a).generators()).unwrap();
        let v1 = Triangulation::<i128>::place_all(&small, 3).unwrap();
        let v2 = Triangulation::<BigInt>::place_all(&big, 3).unwrap();
        assert_eq!(BigInt::from(v1), v2);
    }
}
