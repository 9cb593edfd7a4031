//! Acceptance criteria, one line each on stderr.
//!
//! Lines are written to the raw stderr handle so they show up in plain
//! `cargo test` output, not only under `--nocapture`.

use std::collections::HashSet;
use std::io::Write;
use std::time::{Duration, Instant};

use hgfam::family::{hat_family, hat_family_homogenized, product_family, BaseMatrix};
use hgfam::hypergeometric::{assemble_system, predicted_stats, split_check};
use hgfam::lattice::{
    determinant, direct_sum, is_homogeneous_configuration, kernel_basis, lattice_index,
    smith_normal_form,
};
use hgfam::polytope::{normalized_volume, polytopes_equal, ConfigPolytope};
use hgfam::semigroup::{is_hole, positive_grading, semigroup_member, semigroups_equal};
use hgfam::toric::{
    configuration_weights, ideals_equal, s_pairs_reduce_to_zero, toric_generators, Binomial,
    MonomialOrder,
};
use hgfam::verify::{example_generators, verify, CheckStatus, ClaimId, Depth, VerifyOptions};
use hgfam::IntegerMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn pow(b: u64, e: usize) -> BigInt {
    Pow::pow(BigInt::from(b), e)
}

fn random_configuration(rng: &mut StdRng, max_d: usize, max_n: usize, hi: i64) -> IntegerMatrix {
    loop {
        let d = rng.gen_range(1..=max_d);
        let n = rng.gen_range(d..=max_n);
        let rows: Vec<Vec<i64>> = (0..d)
            .map(|_| (0..n).map(|_| rng.gen_range(0..=hi)).collect())
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let m = IntegerMatrix::from_i64(&refs).unwrap();
        if m.is_full_rank() {
            return m;
        }
    }
}

fn random_matrix(rng: &mut StdRng) -> IntegerMatrix {
    let d = rng.gen_range(1..=4);
    let n = rng.gen_range(1..=5);
    let rows: Vec<Vec<i64>> = (0..d)
        .map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect())
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntegerMatrix::from_i64(&refs).unwrap()
}

fn c1_base_volumes() -> Check {
    let expected = [(BaseMatrix::Plain2, 4), (BaseMatrix::Plain3, 5), (BaseMatrix::Hat2, 8), (BaseMatrix::Hat3, 10)];
    for (b, v) in expected {
        let t = Instant::now();
        let got = normalized_volume(&b.matrix()).map_err(|e| e.to_string())?;
        let took = t.elapsed();
        ensure(got == BigInt::from(v), || format!("{}: {got} != {v}", b.name()))?;
        ensure(took < Duration::from_secs(1), || format!("{}: {took:?}", b.name()))?;
    }
    Ok("4, 5, 8, 10".into())
}

fn c2_multiplicativity() -> Check {
    let bases: Vec<IntegerMatrix> = BaseMatrix::ALL.iter().map(|b| b.matrix()).collect();
    for a in &bases {
        for b in &bases {
            let ab = direct_sum(a, b).unwrap();
            let lhs = normalized_volume(&ab).unwrap();
            let rhs = normalized_volume(a).unwrap() * normalized_volume(b).unwrap();
            ensure(lhs == rhs, || format!("base pair: {lhs} != {rhs}"))?;
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    for i in 0..50 {
        let a = random_configuration(&mut rng, 3, 5, 4);
        let b = random_configuration(&mut rng, 3, 5, 4);
        let lhs = normalized_volume(&direct_sum(&a, &b).unwrap()).unwrap();
        let rhs = normalized_volume(&a).unwrap() * normalized_volume(&b).unwrap();
        ensure(lhs == rhs, || format!("random pair {i}: {lhs} != {rhs}\n{a}\n{b}"))?;
    }
    Ok("16 base pairs, 50 random pairs".into())
}

fn c3_toric_example() -> Check {
    let a = BaseMatrix::Plain2.matrix();
    let gens = toric_generators(&a).map_err(|e| e.to_string())?;
    let eq = ideals_equal(&gens, &example_generators(), &MonomialOrder::grevlex(4), 100_000)
        .map_err(|e| e.to_string())?;
    ensure(eq, || "ideals differ".into())?;
    Ok(format!("{} computed generators", gens.len()))
}

/// All `A·u`, `u ∈ ℕⁿ`, of grade at most `bound`.
fn enumerate(a: &IntegerMatrix, w: &[BigInt], bound: &BigInt) -> HashSet<Vec<BigInt>> {
    let cols = a.columns();
    let grade = |v: &[BigInt]| -> BigInt { v.iter().zip(w).map(|(x, y)| x * y).sum() };
    let mut seen = HashSet::new();
    let mut stack = vec![vec![BigInt::zero(); a.rows()]];
    while let Some(v) = stack.pop() {
        if &grade(&v) > bound || !seen.insert(v.clone()) {
            continue;
        }
        for c in &cols {
            stack.push(v.iter().zip(c).map(|(x, y)| x + y).collect());
        }
    }
    seen
}

fn c4_holes() -> Check {
    for (b, beta) in [(BaseMatrix::Hat2, big(&[3, 2])), (BaseMatrix::Hat3, big(&[3, 0, 2]))] {
        let a = b.matrix();
        ensure(is_hole(&a, &beta).unwrap(), || format!("{} not a hole", b.name()))?;
        let w = positive_grading(&a).unwrap();
        let cols = a.columns();
        let shifted: Vec<Vec<BigInt>> = cols
            .iter()
            .map(|c| beta.iter().zip(c).map(|(x, y)| x + y).collect())
            .collect();
        let bound = shifted
            .iter()
            .map(|v| v.iter().zip(&w).map(|(x, y)| x * y).sum::<BigInt>())
            .max()
            .unwrap();
        let reach = enumerate(&a, &w, &bound);
        ensure(!reach.contains(&beta), || format!("{}: oracle reaches beta", b.name()))?;
        for v in &shifted {
            ensure(reach.contains(v), || format!("{}: oracle misses {v:?}", b.name()))?;
        }
    }
    Ok("(3,2) and (3,0,2) are holes, oracle agrees".into())
}

fn c5_hat_sweep() -> Check {
    for d in 2..=12 {
        let h = hat_family(d).map_err(|e| e.to_string())?;
        let (r, s) = (h.r, h.s);
        let base = h.base.as_ref().unwrap();
        ensure(h.matrix.cols() == 6 * r + 8 * s - 1, || format!("d={d}: {} columns", h.matrix.cols()))?;
        for g in &h.glue_columns {
            let col = h.matrix.column(g.index - 1);
            let sum: Vec<BigInt> = base.column(0).iter().zip(base.column(g.k - 1)).map(|(x, y)| x + y).collect();
            ensure(col == sum, || format!("d={d}: {} fails a1 + ak", g.describe()))?;
            let half = BigRational::new(1.into(), 2.into());
            let mid: Vec<BigRational> = base
                .column(1)
                .iter()
                .zip(base.column(g.k))
                .map(|(x, y)| &half * BigRational::from_integer(x + y))
                .collect();
            let colq: Vec<BigRational> = col.iter().cloned().map(BigRational::from_integer).collect();
            ensure(colq == mid, || format!("d={d}: {} fails midpoint form", g.describe()))?;
        }
        ensure(semigroups_equal(base, &h.matrix).unwrap(), || format!("d={d}: semigroups differ"))?;
        ensure(polytopes_equal(base, &h.matrix).unwrap(), || format!("d={d}: polytopes differ"))?;
        let vol = normalized_volume(&h.matrix).unwrap();
        let want = pow(8, r) * pow(10, s);
        ensure(vol == want, || format!("d={d}: volume {vol} != {want}"))?;
    }
    Ok("d = 2..12".into())
}

fn c6_product_sweep() -> Check {
    for d in 2..=12 {
        let p = product_family(d).map_err(|e| e.to_string())?;
        let (r, s) = (p.r, p.s);
        let stats = predicted_stats(&p).map_err(|e| e.to_string())?;
        let want = pow(4, r) * pow(5, s);
        ensure(stats.volume == want, || format!("d={d}: volume {} != {want}", stats.volume))?;
        let ratio = stats.ratio();
        let closed = BigRational::new(pow(5, r) * pow(7, s), pow(4, r) * pow(5, s));
        ensure(ratio == closed, || format!("d={d}: ratio {ratio} != {closed}"))?;
        let bound_sq = BigRational::new(pow(5, d), pow(4, d));
        ensure(&ratio * &ratio >= bound_sq, || format!("d={d}: ratio^2 below (5/4)^d"))?;
        if r >= 1 && s >= 1 {
            let laurent = pow(2, r) * pow(4, s);
            let jump = pow(5, r) * pow(7, s) - pow(4, r) * pow(5, s);
            ensure(stats.laurent_dim.as_ref() == Some(&laurent), || format!("d={d}: Laurent dim"))?;
            ensure(laurent < jump, || format!("d={d}: {laurent} >= {jump}"))?;
        }
    }
    Ok("d = 2..12".into())
}

fn c7_hat_ratio() -> Check {
    for d in 2..=24 {
        let (r, s) = hgfam::family::decompose_d(d).unwrap();
        let ratio = BigRational::new(pow(9, r) * pow(12, s), pow(8, r) * pow(10, s));
        let bound_sq = BigRational::new(pow(9, d), pow(8, d));
        ensure(&ratio * &ratio >= bound_sq, || format!("d={d}: ratio^2 {} < {bound_sq}", &ratio * &ratio))?;
    }
    Ok("d = 2..24".into())
}

fn c8_homogenization() -> Check {
    for d in 2..=8 {
        let h = hat_family(d).unwrap();
        let hh = hat_family_homogenized(d, BigRational::zero()).unwrap();
        ensure(!is_homogeneous_configuration(&h.matrix).unwrap(), || format!("d={d}: Ahat homogeneous"))?;
        ensure(is_homogeneous_configuration(&hh.matrix).unwrap(), || format!("d={d}: Ahat^h not homogeneous"))?;
        let (v, vh) = (normalized_volume(&h.matrix).unwrap(), normalized_volume(&hh.matrix).unwrap());
        ensure(v == vh, || format!("d={d}: {v} != {vh}"))?;
    }
    Ok("d = 2..8".into())
}

fn c9_properties() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed_0009);
    for i in 0..100 {
        let m = random_matrix(&mut rng);
        let snf = smith_normal_form(&m);
        let prod = snf.left.mul(&m).unwrap().mul(&snf.right).unwrap();
        ensure(prod == snf.diag, || format!("SNF {i}: U M V != D"))?;
        ensure(determinant(&snf.left).unwrap().abs().is_one(), || format!("SNF {i}: U"))?;
        ensure(determinant(&snf.right).unwrap().abs().is_one(), || format!("SNF {i}: V"))?;
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            ensure(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])), || {
                format!("SNF {i}: divisibility {diag:?}")
            })?;
        }
    }
    for i in 0..50 {
        let a = random_configuration(&mut rng, 3, 6, 4);
        let k = kernel_basis(&a).unwrap();
        ensure(k.len() == a.cols() - a.rows(), || format!("kernel {i}: size"))?;
        for u in &k.vectors {
            ensure(a.mul_vec(u).unwrap().iter().all(Zero::is_zero), || format!("kernel {i}: A u != 0"))?;
        }
        if !k.is_empty() {
            let km = IntegerMatrix::new(k.vectors.clone()).unwrap();
            ensure(lattice_index(&km).unwrap().is_one(), || format!("kernel {i}: not saturated"))?;
        }
    }
    for i in 0..40 {
        let a = random_configuration(&mut rng, 3, 6, 4);
        let v = normalized_volume(&a).unwrap();
        let mut perm: Vec<usize> = (0..a.cols()).collect();
        for j in (1..perm.len()).rev() {
            perm.swap(j, rng.gen_range(0..=j));
        }
        ensure(normalized_volume(&a.permute_columns(&perm)).unwrap() == v, || format!("volume {i}: permutation"))?;
        let mut rows = a.to_rows();
        let d = rows.len();
        for _ in 0..4 {
            let (p, q) = (rng.gen_range(0..d), rng.gen_range(0..d));
            if p == q {
                rows.swap(0, d - 1);
                continue;
            }
            let k: i64 = rng.gen_range(-2..=2);
            let add: Vec<BigInt> = rows[q].iter().map(|x| x * k).collect();
            for (x, y) in rows[p].iter_mut().zip(add) {
                *x += y;
            }
        }
        let ua = IntegerMatrix::new(rows).unwrap();
        ensure(normalized_volume(&ua).unwrap() == v, || format!("volume {i}: unimodular"))?;
        let scaled = a.scale_row(rng.gen_range(0..d), &BigInt::from(rng.gen_range(2..=5)));
        ensure(normalized_volume(&scaled).unwrap() == v, || format!("volume {i}: row scaling"))?;
    }
    let mut bases = 0;
    let mut targets: Vec<IntegerMatrix> = BaseMatrix::ALL.iter().map(|b| b.matrix()).collect();
    for d in 2..=5 {
        targets.push(product_family(d).unwrap().matrix);
        targets.push(hat_family(d).unwrap().matrix);
    }
    for a in &targets {
        let gens = toric_generators(a).map_err(|e| e.to_string())?;
        let ord = MonomialOrder::weighted(configuration_weights(a).unwrap()).unwrap();
        ensure(s_pairs_reduce_to_zero(&gens, &ord), || format!("S-pairs fail on\n{a}"))?;
        ensure(
            gens.iter().all(|g: &Binomial| a.mul_vec(&g.difference()).unwrap().iter().all(Zero::is_zero)),
            || "kernel invariant".into(),
        )?;
        bases += 1;
    }
    Ok(format!("100 SNF, 50 kernels, 40 volume invariance runs, {bases} Groebner bases"))
}

fn c10_split() -> Check {
    let mut options = VerifyOptions::new(Depth::Full);
    options.assembly_max_d = 8;
    for d in 4..=8 {
        for (inst, expected) in [(product_family(d).unwrap(), true), (hat_family(d).unwrap(), false)] {
            let sys = assemble_system(&inst.matrix, &inst.parameter).map_err(|e| e.to_string())?;
            let split = split_check(&sys, &inst.blocks).unwrap();
            ensure(split == expected, || format!("{}: split {split}", inst.label()))?;
            let report = verify(&inst, &options).unwrap();
            let claim = report.check(ClaimId::Split).unwrap();
            ensure(claim.status == CheckStatus::Pass, || format!("{}: {}", inst.label(), claim.details))?;
        }
    }
    Ok("product split, hat coupled, d = 4..8".into())
}

struct Criterion {
    number: usize,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

#[test]
fn acceptance_suite() {
    let criteria = [
        Criterion { number: 1, name: "base normalized volumes", limit: Duration::from_secs(4), run: c1_base_volumes },
        Criterion { number: 2, name: "volume multiplicativity", limit: Duration::from_secs(30), run: c2_multiplicativity },
        Criterion { number: 3, name: "toric ideal of A(2)", limit: Duration::from_secs(5), run: c3_toric_example },
        Criterion { number: 4, name: "hole checks", limit: Duration::from_secs(10), run: c4_holes },
        Criterion { number: 5, name: "hat construction sweep", limit: Duration::from_secs(120), run: c5_hat_sweep },
        Criterion { number: 6, name: "product family sweep", limit: Duration::from_secs(120), run: c6_product_sweep },
        Criterion { number: 7, name: "hat ratio theorem", limit: Duration::from_secs(10), run: c7_hat_ratio },
        Criterion { number: 8, name: "homogenization", limit: Duration::from_secs(120), run: c8_homogenization },
        Criterion { number: 9, name: "property suites", limit: Duration::from_secs(120), run: c9_properties },
        Criterion { number: 10, name: "split check", limit: Duration::from_secs(120), run: c10_split },
    ];
    let mut failures = Vec::new();
    let mut err = std::io::stderr();
    for c in &criteria {
        let t = Instant::now();
        let outcome = (c.run)();
        let took = t.elapsed();
        let (tag, detail) = match outcome {
            Ok(d) if took <= c.limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took {took:?}, limit {:?}", c.limit)),
            Err(e) => ("FAIL", e),
        };
        let _ = writeln!(
            err,
            "acceptance {:>2} {tag}  {} ({:.2}s): {detail}",
            c.number,
            c.name,
            took.as_secs_f64()
        );
        if tag == "FAIL" {
            failures.push(c.number);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

#[test]
fn semigroup_member_witnesses_glue_columns() {
    let h = hat_family(5).unwrap();
    let base = h.base.unwrap();
    let poly = ConfigPolytope::new(&base);
    for g in &h.glue_columns {
        let u = semigroup_member(&base, &g.column).unwrap().unwrap();
        let u: Vec<BigInt> = u.into_iter().map(BigInt::from).collect();
        assert_eq!(base.mul_vec(&u).unwrap(), g.column);
        assert!(poly.contains_integer_point(&g.column).unwrap());
    }
}
