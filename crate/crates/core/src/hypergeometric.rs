//! Generating data of `H_A(β)`: box operators of the toric ideal and the
//! Euler operators `E_i − β_i`, with rank predictions for the families.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::FamilyInstance;
use crate::matrix::{bigint_to_json, IntegerMatrix, ParameterVector};
use crate::polytope::normalized_volume;
use crate::toric::{pair_limit_from_env, render_monomial, toric_generators_with_limit, Binomial};

/// `□_u = ∂^{u⁺} − ∂^{u⁻}`.
pub fn box_operator(u: &[BigInt]) -> Result<Binomial> {
    if u.iter().all(Zero::is_zero) {
        return Err(Error::TrivialRelation);
    }
    Binomial::from_vector(u)
}

/// `Σ_j a_ij x_j ∂_j − β_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerOperator {
    pub coefficients: Vec<BigInt>,
    pub shift: BigRational,
}

impl EulerOperator {
    pub fn support(&self) -> Vec<usize> {
        (0..self.coefficients.len())
            .filter(|&j| !self.coefficients[j].is_zero())
            .collect()
    }

    /// `x1 d1 + x2 d2 + 3 x3 d3 + 4 x4 d4 - 2`
    pub fn render(&self) -> String {
        self.render_with(" ", "")
    }

    fn render_with(&self, sep: &str, mul: &str) -> String {
        let mut out = String::new();
        for (j, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                let _ = write!(out, " {sign} ");
            }
            let mag = c.abs();
            if mag != BigInt::from(1) {
                let _ = write!(out, "{mag}{sep}{mul}");
            }
            let _ = write!(out, "x{}{sep}{mul}d{}", j + 1, j + 1);
        }
        if out.is_empty() {
            out.push('0');
        }
        if !self.shift.is_zero() {
            let sign = if self.shift.is_positive() { "-" } else { "+" };
            let _ = write!(out, " {sign} {}", self.shift.abs());
        }
        out
    }

    fn render_script(&self) -> String {
        self.render_with("", "*")
    }
}

pub fn euler_operators(a: &IntegerMatrix, beta: &ParameterVector) -> Result<Vec<EulerOperator>> {
    if beta.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: beta.len(),
        });
    }
    Ok((0..a.rows())
        .map(|i| EulerOperator {
            coefficients: a.row(i).to_vec(),
            shift: beta.0[i].clone(),
        })
        .collect())
}

#[derive(Clone, Debug)]
pub struct HypergeometricSystem {
    pub matrix: IntegerMatrix,
    pub parameter: ParameterVector,
    /// Lexicographically oriented, see [`Binomial::lex_oriented`].
    pub toric_part: Vec<Binomial>,
    pub euler_part: Vec<EulerOperator>,
}

pub fn assemble_system(a: &IntegerMatrix, beta: &ParameterVector) -> Result<HypergeometricSystem> {
    assemble_system_with_limit(a, beta, pair_limit_from_env())
}

pub fn assemble_system_with_limit(
    a: &IntegerMatrix,
    beta: &ParameterVector,
    pair_limit: usize,
) -> Result<HypergeometricSystem> {
    a.require_full_rank()?;
    let euler_part = euler_operators(a, beta)?;
    let toric_part = toric_generators_with_limit(a, pair_limit)?
        .iter()
        .map(Binomial::lex_oriented)
        .collect();
    Ok(HypergeometricSystem {
        matrix: a.clone(),
        parameter: beta.clone(),
        toric_part,
        euler_part,
    })
}

/// Whether the system is the sum of the systems of the column blocks.
///
/// Toric generators must each live on a single block. The Euler operators
/// span the row space of `A`, which splits over the blocks exactly when the
/// block ranks add up to the rank of `A`.
pub fn split_check(sys: &HypergeometricSystem, block_sizes: &[usize]) -> Result<bool> {
    let n = sys.matrix.cols();
    if block_sizes.iter().any(|&b| b == 0) || block_sizes.iter().sum::<usize>() != n {
        return Err(Error::InvalidPartition(format!(
            "block sizes {block_sizes:?} do not partition {n} variables"
        )));
    }
    let mut owner = Vec::with_capacity(n);
    for (k, &b) in block_sizes.iter().enumerate() {
        owner.extend(std::iter::repeat(k).take(b));
    }
    let toric_ok = sys.toric_part.iter().all(|g| {
        let support = g.support();
        support.windows(2).all(|w| owner[w[0]] == owner[w[1]])
    });
    if !toric_ok {
        return Ok(false);
    }
    let mut start = 0;
    let mut block_ranks = 0;
    for &b in block_sizes {
        let cols: Vec<usize> = (start..start + b).collect();
        block_ranks += sys.matrix.select_columns(&cols).rank();
        start += b;
    }
    Ok(block_ranks == sys.matrix.rank())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictedStats {
    /// Computed normalized volume.
    pub volume: BigInt,
    pub closed_form_volume: BigInt,
    pub rank: BigInt,
    pub rank_is_lower_bound: bool,
    pub jump: BigInt,
    pub laurent_dim: Option<BigInt>,
    pub sst_bound: BigInt,
    pub provenance: String,
}

impl PredictedStats {
    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.rank.clone(), self.volume.clone())
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Doc<'a> {
            volume: serde_json::Value,
            closed_form_volume: serde_json::Value,
            rank: serde_json::Value,
            rank_is_lower_bound: bool,
            jump: serde_json::Value,
            laurent_dim: Option<serde_json::Value>,
            sst_bound: serde_json::Value,
            provenance: &'a str,
        }
        serde_json::to_value(Doc {
            volume: bigint_to_json(&self.volume),
            closed_form_volume: bigint_to_json(&self.closed_form_volume),
            rank: bigint_to_json(&self.rank),
            rank_is_lower_bound: self.rank_is_lower_bound,
            jump: bigint_to_json(&self.jump),
            laurent_dim: self.laurent_dim.as_ref().map(bigint_to_json),
            sst_bound: bigint_to_json(&self.sst_bound),
            provenance: &self.provenance,
        })
        .expect("plain data serializes")
    }
}

/// Volume computed from the matrix; rank and Laurent dimension from the
/// instance's closed forms.
pub fn predicted_stats(inst: &FamilyInstance) -> Result<PredictedStats> {
    let volume = normalized_volume(&inst.matrix)?;
    let cf = &inst.closed_form;
    let sst_bound = Pow::pow(BigInt::from(4), inst.matrix.rows()) * &volume;
    Ok(PredictedStats {
        jump: &cf.rank - &volume,
        volume,
        closed_form_volume: cf.volume.clone(),
        rank: cf.rank.clone(),
        rank_is_lower_bound: cf.rank_is_lower_bound,
        laurent_dim: cf.laurent_dim.clone(),
        sst_bound,
        provenance: cf.provenance.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Text,
    /// Macaulay2 input using the Dmodules package.
    Script,
}

pub const SCRIPT_TORIC_PREFIX: &str = "-- toric: ";

pub fn render_system(sys: &HypergeometricSystem, format: RenderFormat) -> String {
    let n = sys.matrix.cols();
    let mut out = String::new();
    match format {
        RenderFormat::Text => {
            let _ = writeln!(out, "# A: {} x {}, beta = {}", sys.matrix.rows(), n, sys.parameter);
            out.push_str("toric:\n");
            for g in &sys.toric_part {
                let _ = writeln!(out, "  {g}");
            }
            out.push_str("euler:\n");
            for e in &sys.euler_part {
                let _ = writeln!(out, "  {}", e.render());
            }
        }
        RenderFormat::Script => {
            let _ = writeln!(out, "-- A: {} x {}, beta = {}", sys.matrix.rows(), n, sys.parameter);
            for g in &sys.toric_part {
                let _ = writeln!(out, "{SCRIPT_TORIC_PREFIX}{g}");
            }
            for e in &sys.euler_part {
                let _ = writeln!(out, "-- euler: {}", e.render());
            }
            out.push_str("needsPackage \"Dmodules\";\n");
            let xs: Vec<String> = (1..=n).map(|j| format!("x{j}")).collect();
            let ds: Vec<String> = (1..=n).map(|j| format!("d{j}")).collect();
            let pairs: Vec<String> = (1..=n).map(|j| format!("x{j} => d{j}")).collect();
            let _ = writeln!(
                out,
                "W = QQ[{}, {}, WeylAlgebra => {{{}}}];",
                xs.join(", "),
                ds.join(", "),
                pairs.join(", ")
            );
            let mut gens: Vec<String> = sys
                .toric_part
                .iter()
                .map(|g| {
                    let side = |m: &[u32]| render_monomial(m).replace(' ', "*");
                    format!("{} - {}", side(&g.plus), side(&g.minus))
                })
                .collect();
            gens.extend(sys.euler_part.iter().map(EulerOperator::render_script));
            let _ = writeln!(out, "H = ideal({});", gens.join(", "));
            out.push_str("holonomicRank H\n");
        }
    }
    out
}

/// Reads the toric generators back from either rendering.
pub fn parse_toric_lines(text: &str, nvars: usize) -> Result<Vec<Binomial>> {
    let mut out = Vec::new();
    let mut in_toric = false;
    for line in text.lines() {
        let t = line.trim();
        if let Some(rest) = t.strip_prefix(SCRIPT_TORIC_PREFIX.trim_end()) {
            out.push(Binomial::parse(rest.trim(), nvars)?);
            continue;
        }
        match t {
            "toric:" => in_toric = true,
            "euler:" => in_toric = false,
            _ if in_toric && !t.is_empty() => out.push(Binomial::parse(t, nvars)?),
            _ => {}
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{hat_family, plain2_family, product_family};
    use crate::lattice::direct_sum;
    use crate::toric::{ideals_equal, MonomialOrder};

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn a2() -> IntegerMatrix {
        IntegerMatrix::from_i64(&[&[1, 1, 1, 1], &[0, 1, 3, 4]]).unwrap()
    }

    #[test]
    fn box_operators() {
        assert_eq!(box_operator(&big(&[1, -1, -1, 1])).unwrap().render(), "d1 d4 - d2 d3");
        assert_eq!(box_operator(&big(&[2, -3, 1, 0])).unwrap().render(), "d1^2 d3 - d2^3");
        assert_eq!(box_operator(&big(&[1, 0, 0])).unwrap().render(), "d1 - 1");
        assert_eq!(box_operator(&big(&[0, 0])), Err(Error::TrivialRelation));
    }

    #[test]
    fn euler_rendering() {
        let e = euler_operators(&a2(), &ParameterVector::from_i64(&[1, 2])).unwrap();
        assert_eq!(e[0].render(), "x1 d1 + x2 d2 + x3 d3 + x4 d4 - 1");
        assert_eq!(e[1].render(), "x2 d2 + 3 x3 d3 + 4 x4 d4 - 2");
        let z = euler_operators(&a2(), &ParameterVector::from_i64(&[0, 0])).unwrap();
        assert!(z.iter().all(|e| e.shift.is_zero()));
        let neg = EulerOperator {
            coefficients: big(&[-1, 0, 2]),
            shift: BigRational::new((-1).into(), 2.into()),
        };
        assert_eq!(neg.render(), "-x1 d1 + 2 x3 d3 + 1/2");
        assert!(euler_operators(&a2(), &ParameterVector::from_i64(&[1])).is_err());
    }

    #[test]
    fn assembly() {
        let sys = assemble_system(&a2(), &ParameterVector::from_i64(&[1, 2])).unwrap();
        assert_eq!(sys.toric_part.len(), 4);
        assert_eq!(sys.euler_part.len(), 2);
        let one = IntegerMatrix::from_i64(&[&[1]]).unwrap();
        let sys = assemble_system(&one, &ParameterVector::from_i64(&[0])).unwrap();
        assert!(sys.toric_part.is_empty());
        assert_eq!(sys.euler_part[0].render(), "x1 d1");
    }

    #[test]
    fn direct_sum_toric_part_is_blockwise() {
        let a = direct_sum(&a2(), &a2()).unwrap();
        let sys = assemble_system(&a, &ParameterVector::from_i64(&[1, 2, 1, 2])).unwrap();
        assert!(split_check(&sys, &[4, 4]).unwrap());
        assert!(split_check(&sys, &[8]).unwrap());
        assert!(split_check(&sys, &[4, 3]).is_err());
        assert!(split_check(&sys, &[8, 0]).is_err());
        // the union of the block ideals generates the same ideal
        let block = assemble_system(&a2(), &ParameterVector::from_i64(&[1, 2])).unwrap();
        let shift = |g: &Binomial, left: bool| {
            let pad = |m: &[u32]| {
                let mut v = vec![0u32; 8];
                let off = if left { 0 } else { 4 };
                v[off..off + 4].copy_from_slice(m);
                v
            };
            Binomial::new(pad(&g.plus), pad(&g.minus)).unwrap()
        };
        let union: Vec<Binomial> = block
            .toric_part
            .iter()
            .flat_map(|g| [shift(g, true), shift(g, false)])
            .collect();
        assert!(ideals_equal(&union, &sys.toric_part, &MonomialOrder::grevlex(8), 10_000).unwrap());
    }

    #[test]
    fn glue_couples_blocks() {
        let h = hat_family(5).unwrap();
        let sys = assemble_system(&h.matrix, &h.parameter).unwrap();
        assert!(!split_check(&sys, &[5, 7, 1]).unwrap());
        assert!(split_check(&sys, &[13]).unwrap());
    }

    #[test]
    fn stats_examples() {
        let p = predicted_stats(&product_family(5).unwrap()).unwrap();
        assert_eq!(p.volume, BigInt::from(20));
        assert_eq!(p.rank, BigInt::from(35));
        assert_eq!(p.jump, BigInt::from(15));
        assert_eq!(p.laurent_dim, Some(BigInt::from(8)));
        assert_eq!(p.sst_bound, BigInt::from(20) * BigInt::from(1024));
        let h = predicted_stats(&hat_family(2).unwrap()).unwrap();
        assert_eq!((h.volume, h.rank, h.jump), (8.into(), 9.into(), 1.into()));
        assert_eq!(h.laurent_dim, None);
        let e = predicted_stats(&plain2_family()).unwrap();
        assert_eq!((e.volume, e.rank, e.jump), (4.into(), 5.into(), 1.into()));
    }

    #[test]
    fn rendering_round_trips() {
        let sys = assemble_system(&a2(), &ParameterVector::from_i64(&[1, 2])).unwrap();
        let text = render_system(&sys, RenderFormat::Text);
        assert!(text.contains("d1 d4 - d2 d3"));
        assert!(text.contains("x2 d2 + 3 x3 d3 + 4 x4 d4 - 2"));
        assert_eq!(parse_toric_lines(&text, 4).unwrap(), sys.toric_part);
        let script = render_system(&sys, RenderFormat::Script);
        assert!(script.contains("d1*d4 - d2*d3"));
        assert!(script.contains("3*x3*d3"));
        assert!(script.contains("holonomicRank"));
        assert_eq!(parse_toric_lines(&script, 4).unwrap(), sys.toric_part);

        let one = IntegerMatrix::from_i64(&[&[1]]).unwrap();
        let sys = assemble_system(&one, &ParameterVector::from_i64(&[0])).unwrap();
        let text = render_system(&sys, RenderFormat::Text);
        assert!(parse_toric_lines(&text, 1).unwrap().is_empty());
        assert!(text.contains("x1 d1"));
    }
}
