//! Verifiers that check consequences of the closure argument independently
//! of the elimination in [`crate::basis`]: problematic relations and their
//! resolution, the spreading condition, the case table for the coefficients
//! of `K_{1,{}} K_{m,Ω}`, and the base-`q` obstruction.

pub mod linear;

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::families::{k_series_q, monomial_from_pattern, relation_pattern};
use crate::series::{all_monomials, ExtIndex, Monomial, Series};
use crate::subset::{all_subsets, SubsetSpec};

use linear::{solve_in_span, SpanSolution};

/// A local pattern in the padded tuple `0 = g_0 <= g_1 <= ... <= g_d <= g_{d+1} = inf`
/// that keeps a monomial from being L-special.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblematicRelation {
    /// `g_0 = g_1 < g_2`: `x_0` has exponent 1.
    BorderSingleZero,
    /// `g_{i-1} < g_i = g_{i+1} < g_{i+2}`: the natural `x_{g_i}` is squared.
    InteriorSquare(usize),
    /// `g_{d-1} < g_d = g_{d+1}`: `x_inf` has exponent 1.
    BorderSingleInf,
}

impl fmt::Display for ProblematicRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblematicRelation::BorderSingleZero => write!(f, "g_0 = g_1 < g_2"),
            ProblematicRelation::InteriorSquare(i) => {
                write!(f, "g_{} < g_{i} = g_{} < g_{}", i - 1, i + 1, i + 2)
            }
            ProblematicRelation::BorderSingleInf => write!(f, "g_(d-1) < g_d = g_(d+1)"),
        }
    }
}

impl ProblematicRelation {
    /// Index of the `=` sign this relation owns in the relation pattern.
    fn equality_slot(self, degree: usize) -> usize {
        match self {
            ProblematicRelation::BorderSingleZero => 0,
            ProblematicRelation::InteriorSquare(i) => i,
            ProblematicRelation::BorderSingleInf => degree,
        }
    }
}

/// All problematic relations of `m`, lower border first. Empty exactly when
/// `m` is L-special.
pub fn problematic_relations(m: &Monomial) -> Vec<ProblematicRelation> {
    let d = m.degree();
    if d == 0 {
        return Vec::new();
    }
    let eq = relation_pattern(m);
    let mut out = Vec::new();
    if eq[0] && !eq[1] {
        out.push(ProblematicRelation::BorderSingleZero);
    }
    for i in 1..d {
        if !eq[i - 1] && eq[i] && !eq[i + 1] {
            out.push(ProblematicRelation::InteriorSquare(i));
        }
    }
    if eq[d] && !eq[d - 1] {
        out.push(ProblematicRelation::BorderSingleInf);
    }
    out
}

/// Replaces the `=` of one problematic relation by `<`, keeping every other
/// relation, and returns the minimal monomial with the new pattern.
pub fn resolve(m: &Monomial, relation: ProblematicRelation, trunc: u32) -> Result<Monomial> {
    if !problematic_relations(m).contains(&relation) {
        return Err(Error::RelationNotPresent {
            relation: relation.to_string(),
            monomial: m.clone(),
        });
    }
    let mut eq = relation_pattern(m);
    eq[relation.equality_slot(m.degree())] = false;
    let h = monomial_from_pattern(&eq).expect("a strict relation separates the borders");
    if let Some(top) = h.max_natural() {
        if top > trunc {
            return Err(Error::TruncationTooSmall {
                needed: top,
                got: trunc,
            });
        }
    }
    Ok(h)
}

/// Resolves problematic relations one at a time until none remain. Returns
/// the L-special result and how many relations were resolved.
pub fn resolve_all(m: &Monomial, trunc: u32) -> Result<(Monomial, usize)> {
    let mut cur = m.clone();
    let mut steps = 0;
    while let Some(&r) = problematic_relations(&cur).first() {
        cur = resolve(&cur, r, trunc)?;
        steps += 1;
    }
    Ok((cur, steps))
}

/// True iff `2 [x_g](f) = [x_h](f)` for every degree-`d` monomial `x_g` at
/// `f`'s truncation and every resolution `x_h` of one of its problematic
/// relations.
pub fn check_spreading(f: &Series) -> Result<bool> {
    Ok(spreading_violation(f)?.is_none())
}

/// First witness `(x_g, relation, x_h)` breaking the spreading condition.
pub fn spreading_violation(
    f: &Series,
) -> Result<Option<(Monomial, ProblematicRelation, Monomial)>> {
    let needed = f.degree() as u32 + 1;
    if f.trunc() < needed {
        return Err(Error::TruncationTooSmall {
            needed,
            got: f.trunc(),
        });
    }
    let two = BigInt::from(2);
    for g in all_monomials(f.degree(), f.trunc()) {
        let cg = f.coefficient(&g);
        for r in problematic_relations(&g) {
            let h = resolve(&g, r, f.trunc())?;
            if &two * &cg != f.coefficient(&h) {
                return Ok(Some((g, r, h)));
            }
        }
    }
    Ok(None)
}

/// Tuple test for `K_{m,Ω}`: no member `i` of `Ω` sees `g_{i-1} = g_i = g_{i+1}`
/// in the padded tuple of `mono`.
fn in_k_support(mono: &Monomial, spec: &SubsetSpec) -> bool {
    if mono.degree() != spec.n() {
        return false;
    }
    let mut g = vec![ExtIndex::Zero];
    g.extend(mono.tuple());
    g.push(ExtIndex::Inf);
    spec.members()
        .iter()
        .all(|&i| !(g[i - 1] == g[i] && g[i] == g[i + 1]))
}

/// Coefficient of `mono` in `K_{1,{}} K_{m,Ω}`, summed over the variable
/// `x_i` taken from the left factor:
///
/// * `y_i = 0` when `x_i` does not divide `mono` or `mono / x_i` is not a
///   term of `K_{m,Ω}`;
/// * otherwise `y_i = M` for a border variable or a natural of exponent 1,
///   and `y_i = 2M` for a natural of higher exponent,
///
/// where `M = 2^(distinct naturals in mono)`.
pub fn appendix_coefficient(mono: &Monomial, spec: &SubsetSpec) -> Result<BigInt> {
    if mono.degree() != spec.n() + 1 {
        return Err(Error::DegreeMismatch {
            left: mono.degree(),
            right: spec.n() + 1,
        });
    }
    let big_m = BigInt::one() << mono.distinct_naturals();
    let mut total = BigInt::from(0);
    for &(x, e) in mono.factors() {
        let rest = mono.divide_by_var(x).expect("x occurs in mono");
        if !in_k_support(&rest, spec) {
            continue;
        }
        total += match x {
            ExtIndex::Nat(_) if e > 1 => &big_m * 2,
            _ => big_m.clone(),
        };
    }
    Ok(total)
}

/// The base-`q` test: is `K^q_{1,{}}²` in the span of the `K^q_{2,Λ}`,
/// `Λ ⊆ [2]`, at truncation `trunc`? `Some` carries a solution in the
/// coefficient order of [`all_subsets`]`(2)`.
pub fn q_square_in_span(q: i64, trunc: u32) -> Result<Option<SpanSolution>> {
    let k1 = k_series_q(&SubsetSpec::empty(1), trunc, q)?;
    let target = k1.mul(&k1)?;
    let columns = all_subsets(2)
        .iter()
        .map(|spec| k_series_q(spec, trunc, q))
        .collect::<Result<Vec<_>>>()?;
    Ok(solve_in_span(&columns, &target))
}
