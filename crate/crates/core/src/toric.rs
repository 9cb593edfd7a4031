//! Toric ideals by binomial Buchberger and saturation.
//!
//! Everything stays binomial: every element is `∂^a − ∂^b` with unit
//! coefficients, S-pairs and reductions of such binomials are again of that
//! form, and the only degeneration is cancellation to zero.
//!
//! `I_A` is the saturation of the lattice basis ideal (generated by the
//! binomials of a kernel basis) at the product of all variables. Saturation
//! at one variable `x_i` is done by a Gröbner basis under a graded
//! reverse-lexicographic order with `x_i` last, followed by dividing each
//! element by the largest power of `x_i` dividing it. The grading is the
//! positive grading `deg ∂_j = w·a_j` of the configuration, under which the
//! lattice ideal is homogeneous; this is what makes the division step
//! correct when `A` is not standard homogeneous.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::kernel_basis;
use crate::matrix::IntegerMatrix;
use crate::semigroup::positive_grading;

pub const DEFAULT_PAIR_LIMIT: usize = 100_000;
pub const PAIR_LIMIT_ENV: &str = "HGFAM_PAIR_LIMIT";

/// The pair limit from `HGFAM_PAIR_LIMIT`, or the default.
pub fn pair_limit_from_env() -> usize {
    std::env::var(PAIR_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_PAIR_LIMIT)
}

/// `∂^plus − ∂^minus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    pub plus: Vec<u32>,
    pub minus: Vec<u32>,
}

impl Binomial {
    pub fn new(plus: Vec<u32>, minus: Vec<u32>) -> Result<Self> {
        if plus.len() != minus.len() {
            return Err(Error::DimensionMismatch {
                expected: plus.len(),
                found: minus.len(),
            });
        }
        Ok(Binomial { plus, minus })
    }

    /// `∂^{u⁺} − ∂^{u⁻}` for an integer vector `u`.
    pub fn from_vector(u: &[BigInt]) -> Result<Self> {
        let part = |x: &BigInt, positive: bool| -> Result<u32> {
            let keep = if positive { x.is_positive() } else { x.is_negative() };
            if !keep {
                return Ok(0);
            }
            x.abs()
                .to_u32()
                .ok_or_else(|| Error::Overflow(format!("exponent {x}")))
        };
        Ok(Binomial {
            plus: u.iter().map(|x| part(x, true)).collect::<Result<_>>()?,
            minus: u.iter().map(|x| part(x, false)).collect::<Result<_>>()?,
        })
    }

    pub fn nvars(&self) -> usize {
        self.plus.len()
    }

    pub fn is_zero(&self) -> bool {
        self.plus == self.minus
    }

    /// The exponent difference `plus − minus`.
    pub fn difference(&self) -> Vec<BigInt> {
        self.plus
            .iter()
            .zip(&self.minus)
            .map(|(&p, &m)| BigInt::from(p) - BigInt::from(m))
            .collect()
    }

    /// Indices of variables that occur in either monomial.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&j| self.plus[j] > 0 || self.minus[j] > 0)
            .collect()
    }

    pub fn total_degrees(&self) -> (u64, u64) {
        let sum = |v: &[u32]| v.iter().map(|&x| x as u64).sum();
        (sum(&self.plus), sum(&self.minus))
    }

    /// Swaps sides so that `plus` is the leading monomial. Up to sign this
    /// is the same binomial.
    pub fn oriented(&self, ord: &MonomialOrder) -> Binomial {
        if ord.cmp(&self.plus, &self.minus) == Ordering::Less {
            Binomial {
                plus: self.minus.clone(),
                minus: self.plus.clone(),
            }
        } else {
            self.clone()
        }
    }

    /// Puts the lexicographically larger monomial (with `∂_1 > ∂_2 > ...`)
    /// first.
    pub fn lex_oriented(&self) -> Binomial {
        if self.plus < self.minus {
            Binomial {
                plus: self.minus.clone(),
                minus: self.plus.clone(),
            }
        } else {
            self.clone()
        }
    }

    /// Divides out the common monomial factor. Only ideal-preserving for
    /// ideals saturated at all variables, such as toric ideals.
    pub fn without_common_factor(&self) -> Binomial {
        let mut b = self.clone();
        for j in 0..b.nvars() {
            let c = b.plus[j].min(b.minus[j]);
            b.plus[j] -= c;
            b.minus[j] -= c;
        }
        b
    }

    /// Text form such as `d1^2 d3 - d2^3`; the empty monomial is `1`.
    pub fn render(&self) -> String {
        format!("{} - {}", render_monomial(&self.plus), render_monomial(&self.minus))
    }

    /// Parses the [`Binomial::render`] grammar over `nvars` variables. `*`
    /// is accepted as a factor separator.
    pub fn parse(text: &str, nvars: usize) -> Result<Binomial> {
        let (lhs, rhs) = text
            .split_once('-')
            .ok_or_else(|| Error::Parse(format!("binomial {text:?} lacks ` - `")))?;
        if rhs.contains('-') {
            return Err(Error::Parse(format!("binomial {text:?} has more than two terms")));
        }
        Ok(Binomial {
            plus: parse_monomial(lhs, nvars)?,
            minus: parse_monomial(rhs, nvars)?,
        })
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn render_monomial(exp: &[u32]) -> String {
    let factors: Vec<String> = exp
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(j, &e)| {
            if e == 1 {
                format!("d{}", j + 1)
            } else {
                format!("d{}^{e}", j + 1)
            }
        })
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join(" ")
    }
}

fn parse_monomial(text: &str, nvars: usize) -> Result<Vec<u32>> {
    let mut exp = vec![0u32; nvars];
    let tokens: Vec<&str> = text
        .split(|c: char| c.is_whitespace() || c == '*')
        .filter(|t| !t.is_empty())
        .collect();
    if tokens.is_empty() {
        return Err(Error::Parse(format!("empty monomial in {text:?}")));
    }
    if tokens == ["1"] {
        return Ok(exp);
    }
    for tok in tokens {
        let bad = || Error::Parse(format!("bad factor {tok:?}"));
        let body = tok.strip_prefix('d').ok_or_else(bad)?;
        let (var, e) = match body.split_once('^') {
            Some((v, e)) => (v, e.parse::<u32>().map_err(|_| bad())?),
            None => (body, 1),
        };
        let var: usize = var.parse().map_err(|_| bad())?;
        if var == 0 || var > nvars {
            return Err(Error::Parse(format!(
                "variable d{var} outside d1..d{nvars}"
            )));
        }
        exp[var - 1] = exp[var - 1]
            .checked_add(e)
            .ok_or_else(|| Error::Overflow(format!("exponent in {tok:?}")))?;
    }
    Ok(exp)
}

/// Weighted graded reverse-lexicographic order.
///
/// Monomials compare first by `Σ weights_j · e_j`; ties go to reverse
/// lexicographic comparison along `perm`, whose last variable is the
/// cheapest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    weights: Vec<u64>,
    perm: Vec<usize>,
}

impl MonomialOrder {
    /// Standard grevlex with `∂_1 > ∂_2 > ... > ∂_n`.
    pub fn grevlex(n: usize) -> Self {
        MonomialOrder {
            weights: vec![1; n],
            perm: (0..n).collect(),
        }
    }

    pub fn weighted(weights: Vec<u64>) -> Result<Self> {
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::InvalidArgument("monomial weights must be positive".into()));
        }
        let n = weights.len();
        Ok(MonomialOrder {
            weights,
            perm: (0..n).collect(),
        })
    }

    /// The same grading with variable `var` moved to the cheapest position.
    pub fn with_last(&self, var: usize) -> Self {
        let mut perm: Vec<usize> = self.perm.iter().copied().filter(|&v| v != var).collect();
        perm.push(var);
        MonomialOrder {
            weights: self.weights.clone(),
            perm,
        }
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn degree(&self, m: &[u32]) -> u64 {
        m.iter().zip(&self.weights).map(|(&e, &w)| e as u64 * w).sum()
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.degree(a).cmp(&self.degree(b)).then_with(|| {
            for &v in self.perm.iter().rev() {
                if a[v] != b[v] {
                    // smaller exponent in the cheapest variable wins
                    return b[v].cmp(&a[v]);
                }
            }
            Ordering::Equal
        })
    }
}

#[derive(Clone, Debug)]
struct Elem {
    lead: Vec<u32>,
    trail: Vec<u32>,
    mask: u64,
}

impl Elem {
    fn new(b: Binomial, ord: &MonomialOrder) -> Self {
        let b = b.oriented(ord);
        Elem {
            mask: support_mask(&b.plus),
            lead: b.plus,
            trail: b.minus,
        }
    }

    fn to_binomial(&self) -> Binomial {
        Binomial {
            plus: self.lead.clone(),
            minus: self.trail.clone(),
        }
    }
}

fn support_mask(m: &[u32]) -> u64 {
    m.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0u64, |acc, (j, _)| acc | 1 << (j % 64))
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x == 0 || y == 0)
}

/// Rewrites `m` by the leading terms of `basis` until no lead divides it.
/// Each step replaces `m` by a strictly smaller monomial.
fn reduce_monomial(mut m: Vec<u32>, basis: &[Elem], skip: Option<usize>) -> Vec<u32> {
    let mut mask = support_mask(&m);
    'outer: loop {
        for (k, g) in basis.iter().enumerate() {
            if Some(k) == skip || g.mask & !mask != 0 || !divides(&g.lead, &m) {
                continue;
            }
            for ((x, &l), &t) in m.iter_mut().zip(&g.lead).zip(&g.trail) {
                *x = *x - l + t;
            }
            mask = support_mask(&m);
            continue 'outer;
        }
        return m;
    }
}

fn normal_form(b: &Binomial, basis: &[Elem], ord: &MonomialOrder) -> Option<Binomial> {
    let p = reduce_monomial(b.plus.clone(), basis, None);
    let m = reduce_monomial(b.minus.clone(), basis, None);
    if p == m {
        return None;
    }
    Some(Binomial { plus: p, minus: m }.oriented(ord))
}

/// Normal form of `b` modulo `basis`; `None` means it reduced to zero.
pub fn reduce(b: &Binomial, basis: &[Binomial], ord: &MonomialOrder) -> Option<Binomial> {
    let elems: Vec<Elem> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| Elem::new(g.clone(), ord))
        .collect();
    normal_form(b, &elems, ord)
}

fn s_binomial(f: &Elem, g: &Elem) -> Binomial {
    let l = lcm(&f.lead, &g.lead);
    let side = |e: &Elem| -> Vec<u32> {
        l.iter()
            .zip(&e.lead)
            .zip(&e.trail)
            .map(|((&x, &y), &t)| x - y + t)
            .collect()
    };
    Binomial {
        plus: side(f),
        minus: side(g),
    }
}

/// A reduced Gröbner basis of the ideal generated by `gens`, sorted by
/// decreasing leading monomial.
///
/// Pairs are processed smallest lcm degree first. Pairs with coprime leads
/// are skipped, as are pairs `(i, j)` for which some `k` has a lead
/// dividing `lcm(i, j)` while `(i, k)` and `(j, k)` have both left the
/// queue. More than `pair_limit` reduced S-pairs is a
/// [`Error::ResourceLimit`].
pub fn buchberger(gens: &[Binomial], ord: &MonomialOrder, pair_limit: usize) -> Result<Vec<Binomial>> {
    let elems = groebner(gens, ord, pair_limit)?;
    Ok(elems.iter().map(Elem::to_binomial).collect())
}

fn groebner(gens: &[Binomial], ord: &MonomialOrder, pair_limit: usize) -> Result<Vec<Elem>> {
    let n = ord.nvars();
    if let Some(bad) = gens.iter().find(|g| g.nvars() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.nvars(),
        });
    }
    let mut basis: Vec<Elem> = Vec::new();
    let mut queue: BinaryHeap<Reverse<(u64, usize, usize)>> = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let push = |basis: &mut Vec<Elem>,
                queue: &mut BinaryHeap<Reverse<(u64, usize, usize)>>,
                pending: &mut HashSet<(usize, usize)>,
                e: Elem| {
        let j = basis.len();
        for (i, other) in basis.iter().enumerate() {
            let deg = ord.degree(&lcm(&other.lead, &e.lead));
            queue.push(Reverse((deg, j, i)));
            pending.insert((i, j));
        }
        basis.push(e);
    };

    for g in gens {
        if let Some(h) = normal_form(g, &basis, ord) {
            push(&mut basis, &mut queue, &mut pending, Elem::new(h, ord));
        }
    }

    let mut processed = 0usize;
    while let Some(Reverse((_, j, i))) = queue.pop() {
        pending.remove(&(i, j));
        let (fi, fj) = (&basis[i], &basis[j]);
        if coprime(&fi.lead, &fj.lead) {
            continue;
        }
        let l = lcm(&fi.lead, &fj.lead);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(&basis[k].lead, &l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        processed += 1;
        if processed > pair_limit {
            return Err(Error::ResourceLimit { limit: pair_limit });
        }
        let s = s_binomial(fi, fj);
        if let Some(h) = normal_form(&s, &basis, ord) {
            push(&mut basis, &mut queue, &mut pending, Elem::new(h, ord));
        }
    }
    Ok(reduced(basis, ord))
}

fn reduced(mut basis: Vec<Elem>, ord: &MonomialOrder) -> Vec<Elem> {
    basis.sort_by(|a, b| ord.cmp(&a.lead, &b.lead));
    let mut minimal: Vec<Elem> = Vec::new();
    for e in basis {
        if !minimal.iter().any(|m| divides(&m.lead, &e.lead)) {
            minimal.push(e);
        }
    }
    let mut out: Vec<Elem> = (0..minimal.len())
        .map(|k| {
            let trail = reduce_monomial(minimal[k].trail.clone(), &minimal, Some(k));
            Elem {
                lead: minimal[k].lead.clone(),
                trail,
                mask: minimal[k].mask,
            }
        })
        .collect();
    out.sort_by(|a, b| ord.cmp(&b.lead, &a.lead));
    out
}

/// True iff every S-binomial of `basis` reduces to zero modulo `basis`.
pub fn s_pairs_reduce_to_zero(basis: &[Binomial], ord: &MonomialOrder) -> bool {
    let elems: Vec<Elem> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| Elem::new(g.clone(), ord))
        .collect();
    (0..elems.len()).all(|i| {
        (i + 1..elems.len())
            .all(|j| normal_form(&s_binomial(&elems[i], &elems[j]), &elems, ord).is_none())
    })
}

/// Saturates a lattice basis ideal at the product of all variables.
///
/// `weights` must be a positive grading under which every generator is
/// homogeneous. Sweeps over the variables until a sweep divides nothing
/// out, then returns the reduced Gröbner basis under weighted grevlex.
pub fn saturate(gens: &[Binomial], weights: &[u64], pair_limit: usize) -> Result<Vec<Binomial>> {
    let base = MonomialOrder::weighted(weights.to_vec())?;
    if let Some(g) = gens.iter().find(|g| base.degree(&g.plus) != base.degree(&g.minus)) {
        return Err(Error::InvalidArgument(format!(
            "generator {g} is not homogeneous for the given weights"
        )));
    }
    let mut current: Vec<Binomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    loop {
        let mut changed = false;
        for var in 0..base.nvars() {
            let ord = base.with_last(var);
            let gb = groebner(&current, &ord, pair_limit)?;
            current = gb
                .into_iter()
                .map(|mut e| {
                    let c = e.lead[var].min(e.trail[var]);
                    if c > 0 {
                        changed = true;
                        e.lead[var] -= c;
                        e.trail[var] -= c;
                    }
                    e.to_binomial()
                })
                .collect();
        }
        if !changed {
            break;
        }
    }
    buchberger(&current, &base, pair_limit)
}

/// Generators of the toric ideal `I_A`, as the reduced Gröbner basis under
/// grevlex weighted by a positive grading of `A`.
pub fn toric_generators(a: &IntegerMatrix) -> Result<Vec<Binomial>> {
    toric_generators_with_limit(a, pair_limit_from_env())
}

pub fn toric_generators_with_limit(a: &IntegerMatrix, pair_limit: usize) -> Result<Vec<Binomial>> {
    let weights = configuration_weights(a)?;
    let gens: Vec<Binomial> = kernel_basis(a)?
        .vectors
        .iter()
        .map(|u| Binomial::from_vector(u))
        .collect::<Result<_>>()?;
    let out = saturate(&gens, &weights, pair_limit)?;
    for g in &out {
        if !a.mul_vec(&g.difference())?.iter().all(Zero::is_zero) {
            return Err(Error::Internal(format!("generator {g} is not a kernel element")));
        }
    }
    Ok(out)
}

/// Degrees `w·a_j` for a positive grading `w` of `A`.
pub fn configuration_weights(a: &IntegerMatrix) -> Result<Vec<u64>> {
    let w = positive_grading(a)?;
    a.columns()
        .iter()
        .map(|c| {
            let deg: BigInt = c.iter().zip(&w).map(|(x, y)| x * y).sum();
            deg.to_u64()
                .ok_or_else(|| Error::Overflow(format!("column degree {deg}")))
        })
        .collect()
}

/// Equality of the ideals generated by `g1` and `g2`, by reducing each set
/// modulo a Gröbner basis of the other.
pub fn ideals_equal(
    g1: &[Binomial],
    g2: &[Binomial],
    ord: &MonomialOrder,
    pair_limit: usize,
) -> Result<bool> {
    let gb1 = groebner(g1, ord, pair_limit)?;
    let gb2 = groebner(g2, ord, pair_limit)?;
    let inside = |gens: &[Binomial], gb: &[Elem]| gens.iter().all(|g| normal_form(g, gb, ord).is_none());
    Ok(inside(g1, &gb2) && inside(g2, &gb1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(text: &str, n: usize) -> Binomial {
        Binomial::parse(text, n).unwrap()
    }

    fn known_a2_ideal() -> Vec<Binomial> {
        ["d1 d4 - d2 d3", "d1^2 d3 - d2^3", "d2 d4^2 - d3^3", "d1 d3^2 - d2^2 d4"]
            .iter()
            .map(|t| b(t, 4))
            .collect()
    }

    fn a2() -> IntegerMatrix {
        IntegerMatrix::from_i64(&[&[1, 1, 1, 1], &[0, 1, 3, 4]]).unwrap()
    }

    #[test]
    fn render_and_parse() {
        let g = b("d1^2 d3 - d2^3", 4);
        assert_eq!(g.plus, vec![2, 0, 1, 0]);
        assert_eq!(g.minus, vec![0, 3, 0, 0]);
        assert_eq!(g.render(), "d1^2 d3 - d2^3");
        assert_eq!(b("d1*d1 - 1", 2).render(), "d1^2 - 1");
        assert!(Binomial::parse("d5 - d1", 4).is_err());
        assert!(Binomial::parse("d1 d2", 4).is_err());
        assert!(Binomial::parse("d1 - d2 - d3", 4).is_err());
        assert!(Binomial::parse("x1 - d2", 4).is_err());
    }

    #[test]
    fn grevlex_order() {
        let ord = MonomialOrder::grevlex(3);
        // x1 x3 < x2^2 in grevlex
        assert_eq!(ord.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(ord.cmp(&[2, 0, 0], &[0, 1, 0]), Ordering::Greater);
        let last1 = ord.with_last(0);
        assert_eq!(last1.permutation(), &[1, 2, 0]);
        assert_eq!(last1.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(last1.cmp(&[1, 1, 0], &[0, 1, 1]), Ordering::Less);
    }

    #[test]
    fn reduce_examples() {
        let ord = MonomialOrder::grevlex(4);
        let g = b("d1 d4 - d2 d3", 4);
        assert_eq!(reduce(&g, &[g.clone()], &ord), None);
        assert_eq!(reduce(&g, &known_a2_ideal(), &ord), None);
        assert_eq!(reduce(&g, &[], &ord), Some(g.oriented(&ord)));
    }

    #[test]
    fn buchberger_examples() {
        let ord = MonomialOrder::grevlex(2);
        let lin = b("d1 - d2", 2);
        assert_eq!(buchberger(&[lin.clone()], &ord, 10).unwrap(), vec![lin]);
        assert!(buchberger(&[], &ord, 10).unwrap().is_empty());
        let ord4 = MonomialOrder::grevlex(4);
        let gb = buchberger(&known_a2_ideal(), &ord4, 1000).unwrap();
        assert!(s_pairs_reduce_to_zero(&gb, &ord4));
    }

    #[test]
    fn pair_limit_is_reported() {
        let ord4 = MonomialOrder::grevlex(4);
        let gens = vec![b("d1^3 - d2 d3", 4), b("d1 d2 - d3 d4", 4), b("d2^2 - d1 d4", 4)];
        assert_eq!(
            buchberger(&gens, &ord4, 0),
            Err(Error::ResourceLimit { limit: 0 })
        );
    }

    #[test]
    fn toric_ideal_of_a2_matches_displayed_generators() {
        let gens = toric_generators(&a2()).unwrap();
        let ord = MonomialOrder::grevlex(4);
        assert!(ideals_equal(&gens, &known_a2_ideal(), &ord, 10_000).unwrap());
        assert_eq!(gens.len(), 4);
    }

    #[test]
    fn toric_small_cases() {
        let m = IntegerMatrix::from_i64(&[&[1, 2]]).unwrap();
        assert_eq!(toric_generators(&m).unwrap(), vec![b("d1^2 - d2", 2)]);
        let m = IntegerMatrix::from_i64(&[&[1, 1]]).unwrap();
        let gens = toric_generators(&m).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].without_common_factor(), gens[0]);
        assert!(toric_generators(&IntegerMatrix::identity(2)).unwrap().is_empty());
    }

    #[test]
    fn saturation_is_needed_and_works() {
        // Kernel of A(2) is spanned by (1,-1,-1,1), (2,-3,1,0), whose
        // binomials generate a strictly smaller ideal than I_A.
        let gens = vec![b("d1 d4 - d2 d3", 4), b("d1^2 d3 - d2^3", 4)];
        let ord = MonomialOrder::grevlex(4);
        assert!(!ideals_equal(&gens, &known_a2_ideal(), &ord, 10_000).unwrap());
        let sat = saturate(&gens, &[1, 1, 1, 1], 10_000).unwrap();
        assert!(ideals_equal(&sat, &known_a2_ideal(), &ord, 10_000).unwrap());
        let unchanged = saturate(&[b("d1 - d2", 2)], &[1, 1], 10).unwrap();
        assert_eq!(unchanged, vec![b("d1 - d2", 2)]);
    }

    #[test]
    fn distinct_linear_ideals() {
        let ord = MonomialOrder::grevlex(3);
        let g = vec![b("d1 - d2", 3)];
        assert!(ideals_equal(&g, &g, &ord, 10).unwrap());
        assert!(!ideals_equal(&g, &[b("d1 - d3", 3)], &ord, 10).unwrap());
    }
}
