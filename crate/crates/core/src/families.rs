//! The `K` and `L` families, their generic monomials, and the relation
//! patterns shared with the verifiers.
//!
//! Every member is a sum over nondecreasing tuples `0 <= g_1 <= ... <= g_n <=
//! inf`, read with the padding `g_0 = 0` and `g_{n+1} = inf`, where each
//! tuple contributes `base^(distinct naturals) * x_{g_1} ... x_{g_n}`. `K`
//! keeps tuples where no `i` in the subset has `g_{i-1} = g_i = g_{i+1}`;
//! `L` keeps tuples where every `i` in the subset has it.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::series::{nondecreasing_tuples, ExtIndex, Monomial, Series};
use crate::subset::SubsetSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rule {
    /// no member sees a triple equality
    Avoid,
    /// every member sees a triple equality
    Require,
}

fn padded(tuple: &[ExtIndex]) -> Vec<ExtIndex> {
    let mut g = Vec::with_capacity(tuple.len() + 2);
    g.push(ExtIndex::Zero);
    g.extend_from_slice(tuple);
    g.push(ExtIndex::Inf);
    g
}

fn triple_equal(g: &[ExtIndex], i: usize) -> bool {
    g[i - 1] == g[i] && g[i] == g[i + 1]
}

fn keeps(rule: Rule, spec: &SubsetSpec, g: &[ExtIndex]) -> bool {
    match rule {
        Rule::Avoid => !spec.members().iter().any(|&i| triple_equal(g, i)),
        Rule::Require => spec.members().iter().all(|&i| triple_equal(g, i)),
    }
}

fn family(rule: Rule, spec: &SubsetSpec, trunc: u32, base: &BigInt) -> Series {
    let n = spec.n();
    let powers: Vec<BigInt> = (0..=n).map(|k| base.pow(k as u32)).collect();
    let mut out = Series::zero(n, trunc);
    for tuple in nondecreasing_tuples(n, trunc) {
        if !keeps(rule, spec, &padded(&tuple)) {
            continue;
        }
        let m = Monomial::from_tuple(&tuple).expect("generated tuples are sorted");
        let w = powers[m.distinct_naturals()].clone();
        out.add_term(m, w);
    }
    out
}

/// `K_{n,Λ}` truncated to `x_1..x_trunc`.
pub fn k_series(spec: &SubsetSpec, trunc: u32) -> Series {
    family(Rule::Avoid, spec, trunc, &BigInt::from(2))
}

/// `L_{n,Λ}` truncated to `x_1..x_trunc`.
pub fn l_series(spec: &SubsetSpec, trunc: u32) -> Series {
    family(Rule::Require, spec, trunc, &BigInt::from(2))
}

/// `K_{n,Λ}` with coefficient base `q` in place of 2.
pub fn k_series_q(spec: &SubsetSpec, trunc: u32, q: i64) -> Result<Series> {
    if q == 0 {
        return Err(Error::ZeroBase);
    }
    Ok(family(Rule::Avoid, spec, trunc, &BigInt::from(q)))
}

/// `2^(distinct naturals of m)`, the coefficient every family member puts on
/// `m` when it contains it.
pub fn generic_weight(m: &Monomial) -> BigInt {
    BigInt::one() << m.distinct_naturals()
}

/// A monomial is L-special when no natural variable has exponent exactly 2
/// and neither border variable has exponent exactly 1.
pub fn is_l_special(m: &Monomial) -> bool {
    m.factors().iter().all(|&(g, e)| match g {
        ExtIndex::Nat(_) => e != 2,
        _ => e != 1,
    })
}

/// Equality flags of the padded tuple: entry `i` (for `0 <= i <= d`) is true
/// iff `g_i = g_{i+1}`.
pub fn relation_pattern(m: &Monomial) -> Vec<bool> {
    let g = padded(&m.tuple());
    g.windows(2).map(|w| w[0] == w[1]).collect()
}

/// Minimal monomial realizing an equality pattern over positions
/// `0..=pattern.len()`: the block of position 0 becomes `x_0`, the block of
/// the last position `x_inf`, and the blocks in between take the naturals
/// 1, 2, 3, ... from left to right. `None` when the pattern joins the two
/// borders.
pub fn monomial_from_pattern(pattern: &[bool]) -> Option<Monomial> {
    if pattern.iter().all(|&eq| eq) {
        return None;
    }
    let d = pattern.len() - 1;
    let last_block_start = pattern.iter().rposition(|&eq| !eq).unwrap() + 1;
    let mut tuple = Vec::with_capacity(d);
    let mut value = ExtIndex::Zero;
    let mut next_nat = 1;
    for pos in 1..=d {
        if !pattern[pos - 1] {
            value = if pos >= last_block_start {
                ExtIndex::Inf
            } else {
                next_nat += 1;
                ExtIndex::Nat(next_nat - 1)
            };
        }
        tuple.push(value);
    }
    Some(Monomial::from_tuple(&tuple).expect("block values increase"))
}

/// Pairs `(i, i+1)` forced equal by the subset: those with `i` or `i + 1`
/// a member.
fn forced_pattern(spec: &SubsetSpec) -> Vec<bool> {
    (0..=spec.n())
        .map(|i| spec.contains(i) || spec.contains(i + 1))
        .collect()
}

/// The canonical element of `M_{n,Λ}`, or `None` when that set is empty.
pub fn m_generic_monomial(spec: &SubsetSpec, trunc: u32) -> Result<Option<Monomial>> {
    if (trunc as usize) < spec.n() {
        return Err(Error::TruncationTooSmall {
            needed: spec.n() as u32,
            got: trunc,
        });
    }
    Ok(monomial_from_pattern(&forced_pattern(spec)))
}

/// True iff `m` has equalities exactly where the subset forces them.
pub fn m_membership(m: &Monomial, spec: &SubsetSpec) -> bool {
    m.degree() == spec.n() && relation_pattern(m) == forced_pattern(spec)
}
