//! The rank-jump families: base matrices, direct-sum products, glued hat
//! matrices and their homogenizations.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{direct_sum_all, homogenize};
use crate::hypergeometric::PredictedStats;
use crate::matrix::{bigint_to_json, IntegerMatrix, ParameterVector};

/// `(r, s)` with `2r + 3s = d` and `s` as large as possible.
pub fn decompose_d(d: usize) -> Result<(usize, usize)> {
    match d % 3 {
        _ if d < 2 => Err(Error::NoDecomposition(d)),
        0 => Ok((0, d / 3)),
        2 => Ok((1, (d - 2) / 3)),
        _ => Ok((2, (d - 4) / 3)),
    }
}

/// The four base configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseMatrix {
    Plain2,
    Plain3,
    Hat2,
    Hat3,
}

impl BaseMatrix {
    pub const ALL: [BaseMatrix; 4] = [
        BaseMatrix::Plain2,
        BaseMatrix::Plain3,
        BaseMatrix::Hat2,
        BaseMatrix::Hat3,
    ];

    pub fn matrix(self) -> IntegerMatrix {
        let rows: &[&[i64]] = match self {
            BaseMatrix::Plain2 => &[&[1, 1, 1, 1], &[0, 1, 3, 4]],
            BaseMatrix::Plain3 => &[
                &[1, 1, 1, 1, 1, 1],
                &[0, 0, 0, 0, 1, 1],
                &[0, 1, 3, 4, 0, 1],
            ],
            BaseMatrix::Hat2 => &[&[1, 2, 2, 2, 2], &[0, 0, 1, 3, 4]],
            BaseMatrix::Hat3 => &[
                &[1, 2, 2, 2, 2, 2, 2],
                &[0, 0, 0, 0, 0, 1, 1],
                &[0, 0, 1, 3, 4, 0, 1],
            ],
        };
        IntegerMatrix::from_i64(rows).expect("base matrices are well formed")
    }

    pub fn parameter(self) -> ParameterVector {
        ParameterVector::from_i64(match self {
            BaseMatrix::Plain2 => &[1, 2],
            BaseMatrix::Plain3 => &[1, 0, 2],
            BaseMatrix::Hat2 => &[3, 2],
            BaseMatrix::Hat3 => &[3, 0, 2],
        })
    }

    pub fn rows(self) -> usize {
        match self {
            BaseMatrix::Plain2 | BaseMatrix::Hat2 => 2,
            BaseMatrix::Plain3 | BaseMatrix::Hat3 => 3,
        }
    }

    pub fn volume(self) -> u64 {
        match self {
            BaseMatrix::Plain2 => 4,
            BaseMatrix::Plain3 => 5,
            BaseMatrix::Hat2 => 8,
            BaseMatrix::Hat3 => 10,
        }
    }

    /// Known holonomic rank at the base parameter.
    pub fn rank(self) -> u64 {
        match self {
            BaseMatrix::Plain2 => 5,
            BaseMatrix::Plain3 => 7,
            BaseMatrix::Hat2 => 9,
            BaseMatrix::Hat3 => 12,
        }
    }

    /// Dimension of Laurent polynomial solutions, where known.
    pub fn laurent_dim(self) -> Option<u64> {
        match self {
            BaseMatrix::Plain2 => Some(2),
            BaseMatrix::Plain3 => Some(4),
            BaseMatrix::Hat2 | BaseMatrix::Hat3 => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BaseMatrix::Plain2 => "A(2)",
            BaseMatrix::Plain3 => "A(3)",
            BaseMatrix::Hat2 => "Ahat(2)",
            BaseMatrix::Hat3 => "Ahat(3)",
        }
    }
}

/// All four base pairs `(A, β)`.
pub fn base_matrices() -> Vec<(BaseMatrix, IntegerMatrix, ParameterVector)> {
    BaseMatrix::ALL
        .iter()
        .map(|&b| (b, b.matrix(), b.parameter()))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    #[serde(rename = "plain2")]
    Plain2,
    #[serde(rename = "plain3")]
    Plain3,
    #[serde(rename = "product")]
    Product,
    #[serde(rename = "hat")]
    Hat,
    #[serde(rename = "hat-h")]
    HatHomogenized,
    #[serde(rename = "repeated")]
    Repeated,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Plain2 => "plain2",
            Variant::Plain3 => "plain3",
            Variant::Product => "product",
            Variant::Hat => "hat",
            Variant::HatHomogenized => "hat-h",
            Variant::Repeated => "repeated",
        }
    }

    pub fn is_hat(self) -> bool {
        matches!(self, Variant::Hat | Variant::HatHomogenized)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "plain2" => Variant::Plain2,
            "plain3" => Variant::Plain3,
            "product" => Variant::Product,
            "hat" => Variant::Hat,
            "hat-h" | "hat_homogenized" => Variant::HatHomogenized,
            "repeated" => Variant::Repeated,
            _ => return Err(Error::InvalidArgument(format!("unknown variant {s:?}"))),
        })
    }
}

/// A column appended to `A_{r,s}`, equal to `a_1 + a_k` and to
/// `½a_2 + ½a_{k+1}`. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueColumn {
    pub index: usize,
    pub k: usize,
    pub column: Vec<BigInt>,
}

impl GlueColumn {
    /// `a_1 + a_k` evaluated on `base`.
    pub fn sum_form(&self, base: &IntegerMatrix) -> Vec<BigInt> {
        base.column(0)
            .iter()
            .zip(base.column(self.k - 1))
            .map(|(x, y)| x + y)
            .collect()
    }

    /// `½a_2 + ½a_{k+1}` evaluated on `base`, exactly.
    pub fn midpoint_form(&self, base: &IntegerMatrix) -> Vec<BigRational> {
        let half = BigRational::new(1.into(), 2.into());
        base.column(1)
            .iter()
            .zip(base.column(self.k))
            .map(|(x, y)| &half * BigRational::from_integer(x + y))
            .collect()
    }

    pub fn describe(&self) -> String {
        format!(
            "a{} = a1 + a{} = 1/2 a2 + 1/2 a{}",
            self.index,
            self.k,
            self.k + 1
        )
    }
}

/// Closed-form predictions attached to an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub volume: BigInt,
    pub rank: BigInt,
    /// True when only `rank ≥ self.rank` is known.
    pub rank_is_lower_bound: bool,
    pub laurent_dim: Option<BigInt>,
    /// Square of the lower bound on rank/volume.
    pub ratio_bound_squared: BigRational,
    pub provenance: String,
}

impl ClosedForm {
    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.rank.clone(), self.volume.clone())
    }
}

#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub variant: Variant,
    /// Number of rows of the configuration before homogenization.
    pub d: usize,
    pub r: usize,
    pub s: usize,
    /// Direct-sum copies for [`Variant::Repeated`], otherwise 1.
    pub copies: usize,
    pub matrix: IntegerMatrix,
    pub parameter: ParameterVector,
    /// Base summands in order, repeated `copies` times for repeated instances.
    pub components: Vec<BaseMatrix>,
    /// Column counts of the natural variable blocks.
    pub blocks: Vec<usize>,
    /// `A_{r,s}` for the hat variants.
    pub base: Option<IntegerMatrix>,
    pub glue_columns: Vec<GlueColumn>,
    pub beta0: Option<BigRational>,
    /// Variant of the copied instance for [`Variant::Repeated`].
    pub inner: Option<Variant>,
    pub closed_form: ClosedForm,
}

impl FamilyInstance {
    /// True when the instance is by construction a direct sum over its blocks.
    pub fn is_direct_sum(&self) -> bool {
        match self.variant {
            Variant::Hat | Variant::HatHomogenized => self.glue_columns.is_empty(),
            _ => true,
        }
    }

    /// Structured companion to the matrix file: variant, decomposition,
    /// parameter, glue provenance and predictions.
    pub fn sidecar(&self, stats: &PredictedStats) -> serde_json::Value {
        let glue: Vec<serde_json::Value> = self
            .glue_columns
            .iter()
            .map(|g| {
                serde_json::json!({
                    "index": g.index,
                    "k": g.k,
                    "column": g.column.iter().map(bigint_to_json).collect::<Vec<_>>(),
                    "sum_form": format!("a1 + a{}", g.k),
                    "midpoint_form": format!("1/2 a2 + 1/2 a{}", g.k + 1),
                })
            })
            .collect();
        serde_json::json!({
            "variant": self.variant.name(),
            "inner": self.inner.map(Variant::name),
            "d": self.d,
            "r": self.r,
            "s": self.s,
            "copies": self.copies,
            "rows": self.matrix.rows(),
            "cols": self.matrix.cols(),
            "parameter": self.parameter.0.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
            "beta0": self.beta0.as_ref().map(|b| b.to_string()),
            "blocks": self.blocks,
            "components": self.components.iter().map(|c| c.name()).collect::<Vec<_>>(),
            "glue_columns": glue,
            "predicted": stats.to_json(),
        })
    }

    pub fn label(&self) -> String {
        match self.variant {
            Variant::Repeated => format!(
                "repeated({} d={}) x{}",
                self.inner.map_or("?", Variant::name),
                self.d / self.copies,
                self.copies
            ),
            v => format!("{v} d={}", self.d),
        }
    }
}

fn pow(base: u64, e: usize) -> BigInt {
    Pow::pow(BigInt::from(base), e)
}

fn qpow(num: u64, den: u64, e: usize) -> BigRational {
    BigRational::new(pow(num, e), pow(den, e))
}

fn from_components(
    variant: Variant,
    r: usize,
    s: usize,
    components: Vec<BaseMatrix>,
) -> Result<(IntegerMatrix, ParameterVector, Vec<usize>)> {
    let mats: Vec<IntegerMatrix> = components.iter().map(|b| b.matrix()).collect();
    let refs: Vec<&IntegerMatrix> = mats.iter().collect();
    let matrix = direct_sum_all(&refs)?;
    let params: Vec<ParameterVector> = components.iter().map(|b| b.parameter()).collect();
    let blocks = mats.iter().map(IntegerMatrix::cols).collect();
    debug_assert!(!variant.is_hat() || components.len() == r + s);
    Ok((matrix, ParameterVector::concat(&params), blocks))
}

fn component_list(r: usize, s: usize, two: BaseMatrix, three: BaseMatrix) -> Vec<BaseMatrix> {
    std::iter::repeat(two)
        .take(r)
        .chain(std::iter::repeat(three).take(s))
        .collect()
}

/// `A(2)` with `β = (1,2)`.
pub fn plain2_family() -> FamilyInstance {
    plain_family(BaseMatrix::Plain2)
}

/// `A(3)` with `β = (1,0,2)`.
pub fn plain3_family() -> FamilyInstance {
    plain_family(BaseMatrix::Plain3)
}

fn plain_family(b: BaseMatrix) -> FamilyInstance {
    let (variant, r, s) = match b {
        BaseMatrix::Plain2 => (Variant::Plain2, 1, 0),
        _ => (Variant::Plain3, 0, 1),
    };
    let mut inst = product_family(b.rows()).expect("d = 2, 3 decompose");
    inst.variant = variant;
    debug_assert_eq!((inst.r, inst.s), (r, s));
    inst.closed_form.provenance = format!(
        "rank {} of {} at beta = {}, volume {}",
        b.rank(),
        b.name(),
        b.parameter(),
        b.volume()
    );
    inst
}

/// `A(2)^{⊕r} ⊕ A(3)^{⊕s}` with the concatenated parameter.
pub fn product_family(d: usize) -> Result<FamilyInstance> {
    let (r, s) = decompose_d(d)?;
    let components = component_list(r, s, BaseMatrix::Plain2, BaseMatrix::Plain3);
    let (matrix, parameter, blocks) = from_components(Variant::Product, r, s, components.clone())?;
    let laurent = pow(2, r) * pow(4, s);
    Ok(FamilyInstance {
        variant: Variant::Product,
        d,
        r,
        s,
        copies: 1,
        matrix,
        parameter,
        components,
        blocks,
        base: None,
        glue_columns: Vec::new(),
        beta0: None,
        inner: None,
        closed_form: ClosedForm {
            volume: pow(4, r) * pow(5, s),
            rank: pow(5, r) * pow(7, s),
            rank_is_lower_bound: false,
            laurent_dim: Some(laurent),
            ratio_bound_squared: qpow(5, 4, d),
            provenance: "rank 5^r 7^s and volume 4^r 5^s by multiplicativity over direct sums of A(2) and A(3); Laurent dimension 2^r 4^s"
                .into(),
        },
    })
}

/// `A_{r,s} = Ahat(2)^{⊕r} ⊕ Ahat(3)^{⊕s}` followed by `r+s−1` glue columns.
pub fn hat_family(d: usize) -> Result<FamilyInstance> {
    let (r, s) = decompose_d(d)?;
    let components = component_list(r, s, BaseMatrix::Hat2, BaseMatrix::Hat3);
    let (base, parameter, mut blocks) = from_components(Variant::Hat, r, s, components.clone())?;

    let mut ks: Vec<usize> = Vec::new();
    if r >= 2 {
        ks.extend((1..r).map(|i| 5 * i + 1));
    }
    if r >= 1 && s >= 1 {
        ks.extend((1..=s).map(|i| 5 * r + 7 * (i - 1) + 1));
    }
    if r == 0 {
        ks.extend((1..s).map(|i| 7 * i + 1));
    }

    let n0 = base.cols();
    let glue_columns: Vec<GlueColumn> = ks
        .iter()
        .enumerate()
        .map(|(t, &k)| {
            let mut g = GlueColumn {
                index: n0 + t + 1,
                k,
                column: Vec::new(),
            };
            g.column = g.sum_form(&base);
            g
        })
        .collect();
    let mut columns = base.columns();
    columns.extend(glue_columns.iter().map(|g| g.column.clone()));
    let matrix = IntegerMatrix::from_columns(&columns)?;
    if !glue_columns.is_empty() {
        blocks.push(glue_columns.len());
    }
    Ok(FamilyInstance {
        variant: Variant::Hat,
        d,
        r,
        s,
        copies: 1,
        matrix,
        parameter,
        components,
        blocks,
        base: Some(base),
        glue_columns,
        beta0: None,
        inner: None,
        closed_form: ClosedForm {
            volume: pow(8, r) * pow(10, s),
            rank: pow(9, r) * pow(12, s),
            rank_is_lower_bound: false,
            laurent_dim: None,
            ratio_bound_squared: qpow(9, 8, d),
            provenance: "rank 9^r 12^s from the hole ranks vol + (i-1) of Ahat(2), Ahat(3), multiplied over A_{r,s} and carried to Ahat(d) by equal semigroup and polytope"
                .into(),
        },
    })
}

/// `Ahat(d)` with a zero column prepended and a row of ones on top, and
/// parameter `(β_0, βhat)`. The rank prediction is a lower bound.
pub fn hat_family_homogenized(d: usize, beta0: BigRational) -> Result<FamilyInstance> {
    let mut inst = hat_family(d)?;
    inst.variant = Variant::HatHomogenized;
    inst.matrix = homogenize(&inst.matrix)?;
    let mut params = vec![beta0.clone()];
    params.extend(inst.parameter.0.iter().cloned());
    inst.parameter = ParameterVector(params);
    // the new zero column becomes variable 1, in a block of its own
    inst.blocks.insert(0, 1);
    inst.beta0 = Some(beta0);
    inst.closed_form.rank_is_lower_bound = true;
    inst.closed_form.provenance = "rank >= 9^r 12^s: equality for generic beta0, lower bound by upper semicontinuity otherwise; volume unchanged by homogenization"
        .into();
    Ok(inst)
}

/// The `copies`-fold direct sum of an instance with the repeated parameter.
/// One copy returns the instance unchanged.
pub fn repeated_family(base: &FamilyInstance, copies: usize) -> Result<FamilyInstance> {
    if copies == 0 {
        return Err(Error::InvalidArgument("copies must be at least 1".into()));
    }
    if copies == 1 {
        return Ok(base.clone());
    }
    let refs: Vec<&IntegerMatrix> = std::iter::repeat(&base.matrix).take(copies).collect();
    let matrix = direct_sum_all(&refs)?;
    let parameter = ParameterVector::concat(&vec![base.parameter.clone(); copies]);
    let n = base.matrix.cols();
    let cf = &base.closed_form;
    let q = cf.ratio();
    Ok(FamilyInstance {
        variant: Variant::Repeated,
        d: matrix.rows(),
        r: base.r,
        s: base.s,
        copies: base.copies * copies,
        matrix,
        parameter,
        components: base.components.repeat(copies),
        blocks: vec![n; copies],
        base: None,
        glue_columns: Vec::new(),
        beta0: base.beta0.clone(),
        inner: Some(base.inner.unwrap_or(base.variant)),
        closed_form: ClosedForm {
            volume: Pow::pow(&cf.volume, copies),
            rank: Pow::pow(&cf.rank, copies),
            rank_is_lower_bound: cf.rank_is_lower_bound,
            laurent_dim: cf.laurent_dim.as_ref().map(|l| Pow::pow(l, copies)),
            ratio_bound_squared: Pow::pow(&q, 2 * copies),
            provenance: format!("copies-th power of the base prediction ({})", cf.provenance),
        },
    })
}

/// Dispatch by variant. `d` is ignored for the plain variants except that it
/// must match their size.
pub fn build_instance(variant: Variant, d: usize, beta0: Option<BigRational>) -> Result<FamilyInstance> {
    let fixed = |want: usize| -> Result<()> {
        if d != want {
            return Err(Error::InvalidArgument(format!(
                "variant {variant} exists only for d = {want}"
            )));
        }
        Ok(())
    };
    match variant {
        Variant::Plain2 => fixed(2).map(|_| plain2_family()),
        Variant::Plain3 => fixed(3).map(|_| plain3_family()),
        Variant::Product => product_family(d),
        Variant::Hat => hat_family(d),
        Variant::HatHomogenized => {
            hat_family_homogenized(d, beta0.unwrap_or_else(|| BigRational::from_integer(0.into())))
        }
        Variant::Repeated => Err(Error::InvalidArgument(
            "repeated instances are built from another instance".into(),
        )),
    }
}
