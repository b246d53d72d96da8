//! Change of basis between the `K` and `L` families and decomposition of
//! homogeneous series into integer combinations of basis members.
//!
//! The decomposition works in the `L` basis. Subsets of `[d]` are visited by
//! increasing size. For each subset the coefficient of its generic monomial
//! in the residual fixes the multiple of `L_{d,Ξ}` to subtract. Larger `L`s
//! never touch the generic monomials of smaller subsets, and every monomial
//! that is not L-special is pinned to an L-special one by the doubling rule,
//! so a target in the span ends with a zero residual.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use log::debug;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{generic_weight, k_series, l_series, m_generic_monomial};
use crate::series::Series;
use crate::subset::{all_subsets, SubsetSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    K,
    L,
}

impl Basis {
    pub fn member(self, spec: &SubsetSpec, trunc: u32) -> Series {
        match self {
            Basis::K => k_series(spec, trunc),
            Basis::L => l_series(spec, trunc),
        }
    }

    pub fn other(self) -> Basis {
        match self {
            Basis::K => Basis::L,
            Basis::L => Basis::K,
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::K => "K",
            Basis::L => "L",
        })
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "K" | "k" => Ok(Basis::K),
            "L" | "l" => Ok(Basis::L),
            _ => Err(Error::Parse(format!("unknown basis `{s}`, expected K or L"))),
        }
    }
}

/// Integer coefficients `c_Ξ` over subsets of `[degree]`, standing for
/// `Σ c_Ξ · basis_{degree,Ξ}`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    degree: usize,
    basis: Basis,
    coeffs: BTreeMap<SubsetSpec, BigInt>,
}

impl Decomposition {
    pub fn new(degree: usize, basis: Basis) -> Self {
        Self {
            degree,
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    /// A single basis member with coefficient 1.
    pub fn single(spec: &SubsetSpec, basis: Basis) -> Self {
        let mut d = Self::new(spec.n(), basis);
        d.coeffs.insert(spec.clone(), BigInt::one());
        d
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficient(&self, spec: &SubsetSpec) -> BigInt {
        self.coeffs.get(spec).cloned().unwrap_or_default()
    }

    /// Adds `c` to the coefficient of `spec`, dropping the entry if it
    /// cancels.
    pub fn add(&mut self, spec: SubsetSpec, c: BigInt) -> Result<()> {
        if spec.n() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: spec.n(),
            });
        }
        if c.is_zero() {
            return Ok(());
        }
        let entry = self.coeffs.entry(spec).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    /// Terms sorted by subset size, then lexicographically.
    pub fn terms(&self) -> Vec<(&SubsetSpec, &BigInt)> {
        let mut v: Vec<_> = self.coeffs.iter().collect();
        v.sort_by(|a, b| a.0.size_lex_key().cmp(&b.0.size_lex_key()));
        v
    }

    /// Rewrites the combination in the other basis by inclusion-exclusion.
    pub fn to_basis(&self, basis: Basis) -> Decomposition {
        if basis == self.basis {
            return self.clone();
        }
        let mut out = Decomposition::new(self.degree, basis);
        for (spec, c) in &self.coeffs {
            let expansion = match self.basis {
                Basis::L => l_from_k(spec),
                Basis::K => k_from_l(spec),
            };
            for (sub, s) in expansion.coeffs {
                out.add(sub, s * c).expect("subsets share the degree");
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DecompositionJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Decomposition> {
        let raw: DecompositionJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.try_into()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return writeln!(f, "0");
        }
        for (spec, c) in self.terms() {
            writeln!(f, "{c} {}_{{{},{spec}}}", self.basis, self.degree)?;
        }
        Ok(())
    }
}

/// Wire form: `{"degree": d, "basis": "K"|"L", "terms": [{"set": [..], "coeff": c}, ..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub degree: usize,
    pub basis: Basis,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub set: Vec<usize>,
    pub coeff: serde_json::Number,
}

impl From<&Decomposition> for DecompositionJson {
    fn from(d: &Decomposition) -> Self {
        DecompositionJson {
            degree: d.degree,
            basis: d.basis,
            terms: d
                .terms()
                .into_iter()
                .map(|(spec, c)| TermJson {
                    set: spec.members().to_vec(),
                    coeff: bigint_number(c),
                })
                .collect(),
        }
    }
}

impl TryFrom<DecompositionJson> for Decomposition {
    type Error = Error;

    fn try_from(raw: DecompositionJson) -> Result<Self> {
        let mut d = Decomposition::new(raw.degree, raw.basis);
        for t in raw.terms {
            let spec = SubsetSpec::new(raw.degree, t.set)?;
            let c: BigInt = t
                .coeff
                .to_string()
                .parse()
                .map_err(|_| Error::Parse(format!("coefficient `{}` is not an integer", t.coeff)))?;
            d.add(spec, c)?;
        }
        Ok(d)
    }
}

/// An arbitrary-precision integer as a JSON number.
pub(crate) fn bigint_number(c: &BigInt) -> serde_json::Number {
    serde_json::from_str(&c.to_string()).expect("integers are valid JSON numbers")
}

fn signed_subsets(spec: &SubsetSpec, basis: Basis) -> Decomposition {
    let mut out = Decomposition::new(spec.n(), basis);
    for sub in spec.subsets() {
        let sign = if sub.len() % 2 == 0 { 1 } else { -1 };
        out.coeffs.insert(sub, BigInt::from(sign));
    }
    out
}

/// `K_{n,Λ} = Σ_{Ω⊆Λ} (-1)^|Ω| L_{n,Ω}`.
pub fn k_from_l(spec: &SubsetSpec) -> Decomposition {
    signed_subsets(spec, Basis::L)
}

/// `L_{n,Λ} = Σ_{Ω⊆Λ} (-1)^|Ω| K_{n,Ω}`.
pub fn l_from_k(spec: &SubsetSpec) -> Decomposition {
    signed_subsets(spec, Basis::K)
}

fn check_trunc(target: &Series) -> Result<()> {
    if (target.trunc() as usize) < target.degree() {
        return Err(Error::TruncationTooSmall {
            needed: target.degree() as u32,
            got: target.trunc(),
        });
    }
    Ok(())
}

/// Decomposes `target` in the `L` basis, visiting subsets by size and then
/// lexicographically.
pub fn decompose_l(target: &Series) -> Result<Decomposition> {
    check_trunc(target)?;
    decompose_l_ordered(target, &all_subsets(target.degree()))
}

/// Same as [`decompose_l`] with a caller-chosen visiting order. The order
/// must list every subset of `[degree]` exactly once with nondecreasing
/// sizes; only the order inside a size class is free.
pub fn decompose_l_ordered(target: &Series, order: &[SubsetSpec]) -> Result<Decomposition> {
    check_trunc(target)?;
    let d = target.degree();
    check_order(d, order)?;

    let trunc = target.trunc();
    let mut residual = target.clone();
    let mut out = Decomposition::new(d, Basis::L);
    for spec in order {
        let Some(w) = m_generic_monomial(spec, trunc)? else {
            continue;
        };
        let read = residual.coefficient(&w);
        if read.is_zero() {
            continue;
        }
        let weight = generic_weight(&w);
        let (c, rem) = read.div_rem(&weight);
        if !rem.is_zero() {
            return Err(Error::NotDivisible {
                set: spec.clone(),
                monomial: w,
                coefficient: read.to_string(),
                divisor: weight.to_string(),
            });
        }
        debug!("L_{{{d},{spec}}}: {c} (read {read} at {w})");
        residual.add_scaled(&l_series(spec, trunc), &-&c)?;
        out.add(spec.clone(), c)?;
    }
    if let Some((m, c)) = residual.iter().next() {
        return Err(Error::NonzeroResidual {
            monomial: m.clone(),
            coefficient: c.to_string(),
        });
    }
    Ok(out)
}

fn check_order(d: usize, order: &[SubsetSpec]) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidSubset(msg));
    if order.len() != 1 << d {
        return bad(format!("order lists {} subsets, expected {}", order.len(), 1usize << d));
    }
    if let Some(s) = order.iter().find(|s| s.n() != d) {
        return bad(format!("{s} is not a subset of [{d}]"));
    }
    if order.windows(2).any(|w| w[0].len() > w[1].len()) {
        return bad("order does not visit subsets by nondecreasing size".into());
    }
    let mut seen: Vec<&SubsetSpec> = order.iter().collect();
    seen.sort();
    seen.dedup();
    if seen.len() != order.len() {
        return bad("order repeats a subset".into());
    }
    Ok(())
}

/// Decomposes `target` in the `K` basis by rewriting its `L` decomposition.
pub fn decompose_k(target: &Series) -> Result<Decomposition> {
    Ok(decompose_l(target)?.to_basis(Basis::K))
}

/// Evaluates a decomposition back to a series at truncation `trunc`.
pub fn reconstruct(dec: &Decomposition, trunc: u32) -> Result<Series> {
    if (trunc as usize) < dec.degree {
        return Err(Error::TruncationTooSmall {
            needed: dec.degree as u32,
            got: trunc,
        });
    }
    let mut out = Series::zero(dec.degree, trunc);
    for (spec, c) in &dec.coeffs {
        out.add_scaled(&dec.basis.member(spec, trunc), c)?;
    }
    Ok(out)
}
