//! The claim catalog, run against one family instance at a time.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{decompose_d, hat_family, BaseMatrix, FamilyInstance, Variant};
use crate::hypergeometric::{predicted_stats, split_check, HypergeometricSystem, PredictedStats};
use crate::lattice::is_homogeneous_configuration;
use crate::matrix::{rational_to_decimal, IntegerMatrix, ParameterVector};
use crate::polytope::{normalized_volume, polytopes_equal, ConfigPolytope};
use crate::semigroup::{is_hole, semigroup_member, semigroups_equal};
use crate::toric::{
    configuration_weights, ideals_equal, pair_limit_from_env, s_pairs_reduce_to_zero,
    toric_generators_with_limit, Binomial, MonomialOrder,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Depth {
    Quick,
    Full,
}

impl FromStr for Depth {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Depth::Quick),
            "full" => Ok(Depth::Full),
            _ => Err(Error::InvalidArgument(format!("unknown depth {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimId {
    Decomposition,
    Shape,
    ParameterConcatenation,
    VolumeClosedForm,
    GlueIdentities,
    GlueMembership,
    SemigroupEqual,
    PolytopeEqual,
    HoleBlocks,
    Homogeneity,
    HomogenizedVolume,
    StatsInvariants,
    RatioIdentity,
    RatioLowerBound,
    LaurentBelowJump,
    ToricKernel,
    ToricExample,
    ToricHomogeneity,
    Split,
}

/// Every claim, in report order.
pub const CATALOG: [ClaimId; 19] = [
    ClaimId::Decomposition,
    ClaimId::Shape,
    ClaimId::ParameterConcatenation,
    ClaimId::VolumeClosedForm,
    ClaimId::GlueIdentities,
    ClaimId::GlueMembership,
    ClaimId::SemigroupEqual,
    ClaimId::PolytopeEqual,
    ClaimId::HoleBlocks,
    ClaimId::Homogeneity,
    ClaimId::HomogenizedVolume,
    ClaimId::StatsInvariants,
    ClaimId::RatioIdentity,
    ClaimId::RatioLowerBound,
    ClaimId::LaurentBelowJump,
    ClaimId::ToricKernel,
    ClaimId::ToricExample,
    ClaimId::ToricHomogeneity,
    ClaimId::Split,
];

/// Invariants of the family and system layers and the claims that check them.
pub const INVARIANT_COVERAGE: [(&str, &[ClaimId]); 10] = [
    ("family: product d x 2d, hat d x (6r+8s-1)", &[ClaimId::Shape]),
    ("family: glue column equals a1 + ak and 1/2 a2 + 1/2 a(k+1)", &[ClaimId::GlueIdentities]),
    ("family: glue column in polytope and semigroup of A_{r,s}", &[ClaimId::GlueMembership]),
    (
        "family: semigroup and polytope equal to those of A_{r,s}",
        &[ClaimId::SemigroupEqual, ClaimId::PolytopeEqual],
    ),
    ("family: volumes 8^r 10^s and 4^r 5^s", &[ClaimId::VolumeClosedForm]),
    ("system: toric generators in the kernel of A", &[ClaimId::ToricKernel]),
    ("system: jump = rank - volume, volume <= rank <= 4^d volume", &[ClaimId::StatsInvariants]),
    ("system: computed volume equals the closed form", &[ClaimId::VolumeClosedForm]),
    (
        "system: ratio identity and exact lower bound",
        &[ClaimId::RatioIdentity, ClaimId::RatioLowerBound],
    ),
    ("system: split on direct sums, coupled on glued hats", &[ClaimId::Split]),
];

impl ClaimId {
    pub fn name(self) -> &'static str {
        match self {
            ClaimId::Decomposition => "decomposition",
            ClaimId::Shape => "shape",
            ClaimId::ParameterConcatenation => "parameter-concatenation",
            ClaimId::VolumeClosedForm => "volume-closed-form",
            ClaimId::GlueIdentities => "glue-identities",
            ClaimId::GlueMembership => "glue-membership",
            ClaimId::SemigroupEqual => "semigroup-equal",
            ClaimId::PolytopeEqual => "polytope-equal",
            ClaimId::HoleBlocks => "hole-blocks",
            ClaimId::Homogeneity => "homogeneity",
            ClaimId::HomogenizedVolume => "homogenized-volume",
            ClaimId::StatsInvariants => "stats-invariants",
            ClaimId::RatioIdentity => "ratio-identity",
            ClaimId::RatioLowerBound => "ratio-lower-bound",
            ClaimId::LaurentBelowJump => "laurent-below-jump",
            ClaimId::ToricKernel => "toric-kernel",
            ClaimId::ToricExample => "toric-example",
            ClaimId::ToricHomogeneity => "toric-homogeneity",
            ClaimId::Split => "split",
        }
    }

    /// Claims that need Gröbner computations and only run at full depth.
    pub fn full_only(self) -> bool {
        matches!(
            self,
            ClaimId::ToricKernel | ClaimId::ToricExample | ClaimId::ToricHomogeneity | ClaimId::Split
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub claim: ClaimId,
    pub status: CheckStatus,
    pub details: String,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub depth: Depth,
    /// Largest `d` whose full system is assembled at full depth.
    pub assembly_max_d: usize,
    pub pair_limit: usize,
}

impl VerifyOptions {
    pub fn new(depth: Depth) -> Self {
        VerifyOptions {
            depth,
            assembly_max_d: 5,
            pair_limit: pair_limit_from_env(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceDescriptor {
    pub variant: Variant,
    pub inner: Option<Variant>,
    pub d: usize,
    pub r: usize,
    pub s: usize,
    pub copies: usize,
    pub rows: usize,
    pub cols: usize,
    pub parameter: String,
    pub beta0: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComputedSummary {
    pub volume: String,
    pub ratio: String,
    pub ratio_decimal: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PredictedSummary {
    pub rank: String,
    pub rank_is_lower_bound: bool,
    pub jump: String,
    pub laurent_dim: Option<String>,
    pub sst_bound: String,
    pub provenance: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub instance: InstanceDescriptor,
    pub depth: Depth,
    pub status: CheckStatus,
    pub checks: Vec<CheckResult>,
    pub computed: ComputedSummary,
    pub predicted: PredictedSummary,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn check(&self, claim: ClaimId) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.claim == claim)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The JSON body with every `elapsed_ms` field removed.
    pub fn untimed_json(&self) -> serde_json::Value {
        fn strip(v: &mut serde_json::Value) {
            match v {
                serde_json::Value::Object(map) => {
                    map.remove("elapsed_ms");
                    map.values_mut().for_each(strip);
                }
                serde_json::Value::Array(items) => items.iter_mut().for_each(strip),
                _ => {}
            }
        }
        let mut v = serde_json::to_value(self).expect("report serializes");
        strip(&mut v);
        v
    }

    pub fn render_text(&self) -> String {
        let i = &self.instance;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "instance: {} d={} (r={}, s={}), {} x {}, beta = {}",
            i.variant, i.d, i.r, i.s, i.rows, i.cols, i.parameter
        );
        let _ = writeln!(out, "depth: {:?}", self.depth);
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            };
            let _ = writeln!(
                out,
                "  {tag}  {:<24} {} ({} ms)",
                c.claim.name(),
                c.details,
                c.elapsed_ms
            );
        }
        let p = &self.predicted;
        let _ = writeln!(
            out,
            "volume {}, rank {}{}, jump {}, ratio {} = {}",
            self.computed.volume,
            if p.rank_is_lower_bound { ">= " } else { "" },
            p.rank,
            p.jump,
            self.computed.ratio,
            self.computed.ratio_decimal
        );
        let _ = writeln!(out, "status: {:?}", self.status);
        out
    }
}

type Outcome = std::result::Result<(bool, String), Skip>;

struct Skip(String);

/// Resource limits skip a claim; any other error fails it.
impl From<Error> for Skip {
    fn from(e: Error) -> Self {
        if e.is_resource_limit() {
            Skip(e.to_string())
        } else {
            Skip(format!("error: {e}"))
        }
    }
}

fn verdict(ok: bool, details: impl Into<String>) -> Outcome {
    Ok((ok, details.into()))
}

fn skip<T>(why: impl Into<String>) -> std::result::Result<T, Skip> {
    Err(Skip(why.into()))
}

/// Runs every claim in [`CATALOG`] against `inst`.
///
/// Claims that do not apply to the instance are skipped with a reason, as
/// are Gröbner-based claims that hit the pair limit. Other errors count as
/// failures.
pub fn verify(inst: &FamilyInstance, options: &VerifyOptions) -> Result<VerificationReport> {
    let started = Instant::now();
    let stats = predicted_stats(inst)?;
    let mut ctx = Context {
        inst,
        options,
        stats: &stats,
        system: None,
    };
    let mut checks = Vec::with_capacity(CATALOG.len());
    for claim in CATALOG {
        let t = Instant::now();
        let outcome = if claim.full_only() && options.depth == Depth::Quick {
            skip("quick depth")
        } else {
            ctx.run(claim)
        };
        let (status, details) = match outcome {
            Ok((true, d)) => (CheckStatus::Pass, d),
            Ok((false, d)) => (CheckStatus::Fail, d),
            Err(Skip(why)) if why.starts_with("error:") => (CheckStatus::Fail, why),
            Err(Skip(why)) => (CheckStatus::Skipped, why),
        };
        checks.push(CheckResult {
            claim,
            status,
            details,
            elapsed_ms: t.elapsed().as_millis() as u64,
        });
    }
    let status = if checks.iter().any(|c| c.status == CheckStatus::Fail) {
        CheckStatus::Fail
    } else {
        CheckStatus::Pass
    };
    let ratio = stats.ratio();
    let s = |x: &BigInt| x.to_string();
    Ok(VerificationReport {
        instance: InstanceDescriptor {
            variant: inst.variant,
            inner: inst.inner,
            d: inst.d,
            r: inst.r,
            s: inst.s,
            copies: inst.copies,
            rows: inst.matrix.rows(),
            cols: inst.matrix.cols(),
            parameter: inst.parameter.to_string(),
            beta0: inst.beta0.as_ref().map(|b| b.to_string()),
        },
        depth: options.depth,
        status,
        checks,
        computed: ComputedSummary {
            volume: s(&stats.volume),
            ratio: ratio.to_string(),
            ratio_decimal: rational_to_decimal(&ratio, 6),
        },
        predicted: PredictedSummary {
            rank: s(&stats.rank),
            rank_is_lower_bound: stats.rank_is_lower_bound,
            jump: s(&stats.jump),
            laurent_dim: stats.laurent_dim.as_ref().map(s),
            sst_bound: s(&stats.sst_bound),
            provenance: stats.provenance.clone(),
        },
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

/// Closed form of rank/volume from the variant alone.
pub fn ratio_closed_form(variant: Variant, r: usize, s: usize) -> Option<BigRational> {
    let q = |n: u64, m: u64, e: usize| BigRational::new(Pow::pow(BigInt::from(n), e), Pow::pow(BigInt::from(m), e));
    match variant {
        Variant::Plain2 | Variant::Plain3 | Variant::Product => Some(q(5, 4, r) * q(7, 5, s)),
        Variant::Hat | Variant::HatHomogenized => Some(q(9, 8, r) * q(12, 10, s)),
        Variant::Repeated => None,
    }
}

struct Context<'a> {
    inst: &'a FamilyInstance,
    options: &'a VerifyOptions,
    stats: &'a PredictedStats,
    /// Toric generators of the full instance, computed on first use.
    system: Option<std::result::Result<Vec<Binomial>, String>>,
}

impl Context<'_> {
    fn run(&mut self, claim: ClaimId) -> Outcome {
        match claim {
            ClaimId::Decomposition => self.decomposition(),
            ClaimId::Shape => self.shape(),
            ClaimId::ParameterConcatenation => self.parameter_concatenation(),
            ClaimId::VolumeClosedForm => {
                let cf = &self.inst.closed_form.volume;
                verdict(
                    &self.stats.volume == cf,
                    format!("computed {} vs closed form {cf}", self.stats.volume),
                )
            }
            ClaimId::GlueIdentities => self.glue_identities(),
            ClaimId::GlueMembership => self.glue_membership(),
            ClaimId::SemigroupEqual => {
                let (base, hat) = self.hat_pair()?;
                verdict(semigroups_equal(&base, &hat)?, "N A_{r,s} = N Ahat(d)")
            }
            ClaimId::PolytopeEqual => {
                let (base, hat) = self.hat_pair()?;
                verdict(polytopes_equal(&base, &hat)?, "conv(0, A_{r,s}) = conv(0, Ahat(d))")
            }
            ClaimId::HoleBlocks => self.hole_blocks(),
            ClaimId::Homogeneity => self.homogeneity(),
            ClaimId::HomogenizedVolume => self.homogenized_volume(),
            ClaimId::StatsInvariants => {
                let p = self.stats;
                let ok = p.jump == &p.rank - &p.volume && p.rank >= p.volume && p.rank <= p.sst_bound;
                verdict(
                    ok,
                    format!("jump {} = {} - {}, rank <= {}", p.jump, p.rank, p.volume, p.sst_bound),
                )
            }
            ClaimId::RatioIdentity => self.ratio_identity(),
            ClaimId::RatioLowerBound => {
                let ratio = self.stats.ratio();
                let bound = &self.inst.closed_form.ratio_bound_squared;
                let sq = &ratio * &ratio;
                verdict(
                    &sq >= bound,
                    format!(
                        "ratio^2 = {} >= {} ({} >= {})",
                        sq,
                        bound,
                        rational_to_decimal(&sq, 6),
                        rational_to_decimal(bound, 6)
                    ),
                )
            }
            ClaimId::LaurentBelowJump => self.laurent_below_jump(),
            ClaimId::ToricKernel => self.toric_kernel(),
            ClaimId::ToricExample => self.toric_example(),
            ClaimId::ToricHomogeneity => self.toric_homogeneity(),
            ClaimId::Split => self.split(),
        }
    }

    fn inner_variant(&self) -> Variant {
        self.inst.inner.unwrap_or(self.inst.variant)
    }

    fn decomposition(&self) -> Outcome {
        if self.inst.variant == Variant::Repeated {
            return skip("repeated instance");
        }
        let (r, s) = decompose_d(self.inst.d)?;
        verdict(
            (r, s) == (self.inst.r, self.inst.s),
            format!("d = {} = 2*{} + 3*{}", self.inst.d, r, s),
        )
    }

    fn shape(&self) -> Outcome {
        let (d, r, s) = (self.inst.d, self.inst.r, self.inst.s);
        let (rows, cols) = match self.inst.variant {
            Variant::Plain2 => (2, 4),
            Variant::Plain3 => (3, 6),
            Variant::Product => (d, 2 * d),
            Variant::Hat => (d, 6 * r + 8 * s - 1),
            Variant::HatHomogenized => (d + 1, 6 * r + 8 * s),
            Variant::Repeated => (d, self.inst.blocks.iter().sum()),
        };
        let m = &self.inst.matrix;
        verdict(
            (m.rows(), m.cols()) == (rows, cols),
            format!("{} x {} (expected {rows} x {cols})", m.rows(), m.cols()),
        )
    }

    fn parameter_concatenation(&self) -> Outcome {
        let inst = self.inst;
        let per_copy = inst.components.len() / inst.copies;
        let mut parts = Vec::new();
        for chunk in inst.components.chunks(per_copy) {
            if let Some(b0) = &inst.beta0 {
                parts.push(ParameterVector(vec![b0.clone()]));
            }
            parts.extend(chunk.iter().map(|b| b.parameter()));
        }
        let expected = ParameterVector::concat(&parts);
        verdict(expected == inst.parameter, format!("beta = {}", inst.parameter))
    }

    /// `(A_{r,s}, Ahat(d))` for the hat variants.
    fn hat_pair(&self) -> std::result::Result<(IntegerMatrix, IntegerMatrix), Skip> {
        let base = match (&self.inst.base, self.inst.variant) {
            (Some(b), Variant::Hat | Variant::HatHomogenized) => b.clone(),
            _ => return skip("no glued base for this variant"),
        };
        let hat = match self.inst.variant {
            Variant::Hat => self.inst.matrix.clone(),
            _ => hat_family(self.inst.d)?.matrix,
        };
        Ok((base, hat))
    }

    fn glue_identities(&self) -> Outcome {
        let (base, hat) = self.hat_pair()?;
        if self.inst.glue_columns.is_empty() {
            return skip("r + s = 1, no glue columns");
        }
        let mut notes = Vec::new();
        let mut ok = true;
        for g in &self.inst.glue_columns {
            let actual: Vec<BigRational> = hat
                .column(g.index - 1)
                .into_iter()
                .map(BigRational::from_integer)
                .collect();
            let sum: Vec<BigRational> =
                g.sum_form(&base).into_iter().map(BigRational::from_integer).collect();
            ok &= actual == sum && actual == g.midpoint_form(&base);
            notes.push(g.describe());
        }
        verdict(ok, notes.join("; "))
    }

    fn glue_membership(&self) -> Outcome {
        let (base, _) = self.hat_pair()?;
        if self.inst.glue_columns.is_empty() {
            return skip("r + s = 1, no glue columns");
        }
        let polytope = ConfigPolytope::new(&base);
        let mut ok = true;
        for g in &self.inst.glue_columns {
            let in_poly = polytope.contains_integer_point(&g.column)?;
            let witness = semigroup_member(&base, &g.column)?;
            let witness_ok = match &witness {
                Some(u) => {
                    let u: Vec<BigInt> = u.iter().map(|&x| BigInt::from(x)).collect();
                    base.mul_vec(&u)? == g.column
                }
                None => false,
            };
            ok &= in_poly && witness_ok;
        }
        verdict(
            ok,
            format!("{} glue columns in Delta and N of A_{{r,s}}", self.inst.glue_columns.len()),
        )
    }

    fn hole_blocks(&self) -> Outcome {
        let mut blocks: Vec<BaseMatrix> = Vec::new();
        for &c in &self.inst.components {
            if matches!(c, BaseMatrix::Hat2 | BaseMatrix::Hat3) && !blocks.contains(&c) {
                blocks.push(c);
            }
        }
        if blocks.is_empty() {
            return skip("no Ahat blocks");
        }
        let mut notes = Vec::new();
        let mut ok = true;
        for b in blocks {
            let beta = b.parameter().to_integers().expect("integral base parameter");
            let hole = is_hole(&b.matrix(), &beta)?;
            ok &= hole;
            notes.push(format!("{} at {}: hole {hole}", b.name(), b.parameter()));
        }
        verdict(ok, notes.join("; "))
    }

    fn homogeneity(&self) -> Outcome {
        let expected = self.inner_variant() != Variant::Hat;
        let actual = is_homogeneous_configuration(&self.inst.matrix)?;
        verdict(
            actual == expected,
            format!("homogeneous {actual} (expected {expected})"),
        )
    }

    fn homogenized_volume(&self) -> Outcome {
        if self.inst.variant != Variant::HatHomogenized {
            return skip("not a homogenized instance");
        }
        let (_, hat) = self.hat_pair()?;
        let plain = normalized_volume(&hat)?;
        verdict(
            plain == self.stats.volume,
            format!("vol(Ahat^h) = {} vs vol(Ahat) = {plain}", self.stats.volume),
        )
    }

    fn ratio_identity(&self) -> Outcome {
        let inst = self.inst;
        let per_copy = ratio_closed_form(self.inner_variant(), inst.r, inst.s)
            .expect("inner variant has a closed form");
        let base_copies = if inst.variant == Variant::Repeated { inst.copies } else { 1 };
        let expected = Pow::pow(&per_copy, base_copies);
        let ratio = self.stats.ratio();
        verdict(ratio == expected, format!("rank/vol = {ratio} (closed form {expected})"))
    }

    fn laurent_below_jump(&self) -> Outcome {
        let Some(l) = &self.stats.laurent_dim else {
            return skip("no Laurent prediction");
        };
        if self.inst.r == 0 || self.inst.s == 0 {
            return skip("needs r, s >= 1");
        }
        verdict(l < &self.stats.jump, format!("{l} < {}", self.stats.jump))
    }

    fn assembled(&mut self) -> std::result::Result<Vec<Binomial>, Skip> {
        if self.inst.d > self.options.assembly_max_d {
            return skip(format!("d > {}", self.options.assembly_max_d));
        }
        if self.system.is_none() {
            let r = toric_generators_with_limit(&self.inst.matrix, self.options.pair_limit)
                .map_err(|e| Skip::from(e).0);
            self.system = Some(r);
        }
        self.system.clone().expect("just set").map_err(Skip)
    }

    fn toric_kernel(&mut self) -> Outcome {
        let mut targets: Vec<(String, IntegerMatrix)> = Vec::new();
        for &c in &self.inst.components {
            if !targets.iter().any(|(n, _)| n == c.name()) {
                targets.push((c.name().to_string(), c.matrix()));
            }
        }
        let mut notes = Vec::new();
        let mut ok = true;
        for (name, a) in &targets {
            let gens = toric_generators_with_limit(a, self.options.pair_limit)?;
            ok &= kernel_and_s_pairs(a, &gens)?;
            notes.push(format!("{name}: {}", gens.len()));
        }
        match self.assembled() {
            Ok(gens) => {
                ok &= kernel_and_s_pairs(&self.inst.matrix, &gens)?;
                notes.push(format!("instance: {}", gens.len()));
            }
            Err(Skip(why)) => notes.push(format!("instance skipped ({why})")),
        }
        verdict(ok, format!("generators {}", notes.join(", ")))
    }

    fn toric_example(&self) -> Outcome {
        if !self.inst.components.contains(&BaseMatrix::Plain2) {
            return skip("no A(2) block");
        }
        let a = BaseMatrix::Plain2.matrix();
        let gens = toric_generators_with_limit(&a, self.options.pair_limit)?;
        let listed = example_generators();
        let eq = ideals_equal(&gens, &listed, &MonomialOrder::grevlex(4), self.options.pair_limit)?;
        verdict(eq, format!("I_A(2) = ({})", render_list(&listed)))
    }

    fn toric_homogeneity(&mut self) -> Outcome {
        let gens = self.assembled()?;
        let homogeneous = is_homogeneous_configuration(&self.inst.matrix)?;
        let balanced = |g: &Binomial| {
            let (p, m) = g.total_degrees();
            p == m
        };
        if homogeneous {
            verdict(gens.iter().all(balanced), "all generators have equal side degrees")
        } else {
            verdict(
                !gens.iter().all(balanced),
                "some generator has unequal side degrees",
            )
        }
    }

    fn split(&mut self) -> Outcome {
        if self.inst.variant == Variant::HatHomogenized {
            return skip("homogenizing row couples all blocks");
        }
        let gens = self.assembled()?;
        let sys = HypergeometricSystem {
            matrix: self.inst.matrix.clone(),
            parameter: self.inst.parameter.clone(),
            toric_part: gens,
            euler_part: crate::hypergeometric::euler_operators(&self.inst.matrix, &self.inst.parameter)?,
        };
        let expected = self.inst.is_direct_sum();
        let actual = split_check(&sys, &self.inst.blocks)?;
        verdict(
            actual == expected,
            format!("blocks {:?}: split {actual} (expected {expected})", self.inst.blocks),
        )
    }
}

fn kernel_and_s_pairs(a: &IntegerMatrix, gens: &[Binomial]) -> std::result::Result<bool, Skip> {
    for g in gens {
        if !a.mul_vec(&g.difference())?.iter().all(Zero::is_zero) {
            return Ok(false);
        }
    }
    let ord = MonomialOrder::weighted(configuration_weights(a)?)?;
    Ok(s_pairs_reduce_to_zero(gens, &ord))
}

/// The four listed generators of the toric ideal of `A(2)`.
pub fn example_generators() -> Vec<Binomial> {
    ["d1 d4 - d2 d3", "d1^2 d3 - d2^3", "d2 d4^2 - d3^3", "d1 d3^2 - d2^2 d4"]
        .iter()
        .map(|t| Binomial::parse(t, 4).expect("valid literal"))
        .collect()
}

fn render_list(gens: &[Binomial]) -> String {
    gens.iter().map(Binomial::render).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioRow {
    pub d: usize,
    pub r: usize,
    pub s: usize,
    pub volume: String,
    pub rank: String,
    pub rank_is_lower_bound: bool,
    pub jump: String,
    pub ratio: String,
    pub ratio_decimal: String,
    /// The lower bound squared, exactly.
    pub bound_squared: String,
    /// The lower bound, truncated.
    pub bound_decimal: String,
    pub holds: bool,
    pub sst_bound: String,
}

/// Rows of closed-form predictions for `d_min..=d_max`.
pub fn ratio_table(d_min: usize, d_max: usize, variant: Variant) -> Result<Vec<RatioRow>> {
    if d_min < 2 || d_min > d_max {
        return Err(Error::InvalidArgument(format!(
            "need 2 <= d-min <= d-max, got {d_min}..{d_max}"
        )));
    }
    let (vol, rank, bound): ((u64, u64), (u64, u64), (u64, u64)) = match variant {
        Variant::Product => ((4, 5), (5, 7), (5, 4)),
        Variant::Hat | Variant::HatHomogenized => ((8, 10), (9, 12), (9, 8)),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "ratio tables exist for product, hat and hat-h, not {variant}"
            )))
        }
    };
    let p = |b: u64, e: usize| -> BigInt { Pow::pow(BigInt::from(b), e) };
    (d_min..=d_max)
        .map(|d| {
            let (r, s) = decompose_d(d)?;
            let volume = p(vol.0, r) * p(vol.1, s);
            let rk = p(rank.0, r) * p(rank.1, s);
            let ratio = BigRational::new(rk.clone(), volume.clone());
            let bound_sq = BigRational::new(p(bound.0, d), p(bound.1, d));
            Ok(RatioRow {
                d,
                r,
                s,
                volume: volume.to_string(),
                rank: rk.to_string(),
                rank_is_lower_bound: variant == Variant::HatHomogenized,
                jump: (&rk - &volume).to_string(),
                ratio: ratio.to_string(),
                ratio_decimal: rational_to_decimal(&ratio, 6),
                bound_squared: bound_sq.to_string(),
                bound_decimal: sqrt_decimal(&bound_sq, 6),
                holds: &ratio * &ratio >= bound_sq,
                sst_bound: (p(4, d) * &volume).to_string(),
            })
        })
        .collect()
}

/// `√q` truncated to `digits` decimals.
pub fn sqrt_decimal(q: &BigRational, digits: u32) -> String {
    let scale: BigInt = Pow::pow(BigInt::from(10), 2 * digits as usize);
    let root = (q.numer() * scale / q.denom()).sqrt();
    let unit: BigInt = Pow::pow(BigInt::from(10), digits as usize);
    format!(
        "{}.{:0>width$}",
        &root / &unit,
        (&root % &unit).to_string(),
        width = digits as usize
    )
}

pub fn render_table(rows: &[RatioRow]) -> String {
    let mut out = String::from(
        "d   r  s  volume          rank            jump            ratio                 ratio~      bound~      sst_bound\n",
    );
    for row in rows {
        let rank = if row.rank_is_lower_bound {
            format!(">={}", row.rank)
        } else {
            row.rank.clone()
        };
        let _ = writeln!(
            out,
            "{:<3} {:<2} {:<2} {:<15} {:<15} {:<15} {:<21} {:<11} {:<11} {}",
            row.d,
            row.r,
            row.s,
            row.volume,
            rank,
            row.jump,
            row.ratio,
            row.ratio_decimal,
            row.bound_decimal,
            row.sst_bound
        );
    }
    out
}
