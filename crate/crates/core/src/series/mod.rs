//! Homogeneous formal power series with integer coefficients, truncated to
//! the natural variables `x_1..x_V` together with the border variables
//! `x_0` and `x_inf`.

mod index;
mod monomial;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use index::ExtIndex;
pub use monomial::Monomial;

/// A homogeneous series of a fixed degree over `x_0, x_1..x_trunc, x_inf`.
///
/// The zero series keeps its degree so that the arithmetic contracts stay
/// checkable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    degree: usize,
    trunc: u32,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Series {
    pub fn zero(degree: usize, trunc: u32) -> Self {
        Self {
            degree,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    /// The constant series `1`.
    pub fn one(trunc: u32) -> Self {
        let mut s = Self::zero(0, trunc);
        s.terms.insert(Monomial::one(), BigInt::one());
        s
    }

    /// Collects terms into a series, summing repeated monomials.
    pub fn from_terms<I, C>(degree: usize, trunc: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let mut s = Self::zero(degree, trunc);
        for (m, c) in terms {
            s.check_monomial(&m)?;
            s.add_term(m, c.into());
        }
        Ok(s)
    }

    fn check_monomial(&self, m: &Monomial) -> Result<()> {
        if m.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: m.degree(),
            });
        }
        match m.max_natural() {
            Some(i) if i > self.trunc => Err(Error::IndexOutOfRange {
                index: i,
                trunc: self.trunc,
            }),
            _ => Ok(()),
        }
    }

    /// Adds `c * m` without validating `m`; callers guarantee homogeneity and
    /// the truncation bound.
    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        debug_assert!(m.degree() == self.degree);
        debug_assert!(m.max_natural().is_none_or(|i| i <= self.trunc));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    /// Number of stored (nonzero) terms.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in monomial order.
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// `[m](self)`; zero for monomials that are absent or of another degree.
    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn check_compatible(&self, other: &Series) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch {
                left: self.trunc,
                right: other.trunc,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    /// `self += c * other`, the elimination step of the decomposition.
    pub fn add_scaled(&mut self, other: &Series, c: &BigInt) -> Result<()> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        if c.is_zero() {
            return Ok(());
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
        Ok(())
    }

    pub fn scale(&self, c: &BigInt) -> Series {
        if c.is_zero() {
            return Series::zero(self.degree, self.trunc);
        }
        Series {
            degree: self.degree,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_compatible(other)?;
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        Ok(Series {
            degree: self.degree + other.degree,
            trunc: self.trunc,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Sets every natural variable above `trunc` to zero.
    ///
    /// Restricting to a larger truncation only changes the tag.
    pub fn restrict(&self, trunc: u32) -> Series {
        Series {
            degree: self.degree,
            trunc,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.max_natural().is_none_or(|i| i <= trunc))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// True iff the series is quasisymmetric in the natural variables: moving
    /// the natural support of any monomial onto another increasing sequence in
    /// `1..=trunc` (borders fixed) never changes the coefficient.
    pub fn relabel_check(&self) -> bool {
        // shape = (x_0 exponent, x_inf exponent, natural exponent word)
        let mut shapes: HashMap<(u32, u32, Vec<u32>), (&BigInt, usize)> = HashMap::new();
        for (m, c) in &self.terms {
            let word: Vec<u32> = m
                .factors()
                .iter()
                .filter(|p| p.0.is_natural())
                .map(|p| p.1)
                .collect();
            let key = (m.exponent(ExtIndex::Zero), m.exponent(ExtIndex::Inf), word);
            match shapes.get_mut(&key) {
                Some((first, count)) => {
                    if *first != c {
                        return false;
                    }
                    *count += 1;
                }
                None => {
                    shapes.insert(key, (c, 1));
                }
            }
        }
        shapes.iter().all(|((_, _, word), (_, count))| {
            binomial(self.trunc as usize, word.len()) == *count
        })
    }
}

/// Wire form: `{"degree": d, "vars": V, "terms": [{"monomial": "x0*x1", "coeff": 2}, ..]}`
/// with terms in monomial order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesJson {
    pub degree: usize,
    pub vars: u32,
    pub terms: Vec<SeriesTermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesTermJson {
    pub monomial: String,
    pub coeff: serde_json::Number,
}

impl Series {
    pub fn to_json(&self) -> String {
        let raw = SeriesJson {
            degree: self.degree,
            vars: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| SeriesTermJson {
                    monomial: m.to_string(),
                    coeff: serde_json::from_str(&c.to_string()).expect("integer literal"),
                })
                .collect(),
        };
        serde_json::to_string(&raw).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Series> {
        let raw: SeriesJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let terms = raw
            .terms
            .into_iter()
            .map(|t| {
                let m: Monomial = t.monomial.parse()?;
                let c: BigInt = t
                    .coeff
                    .to_string()
                    .parse()
                    .map_err(|_| Error::Parse(format!("coefficient `{}` is not an integer", t.coeff)))?;
                Ok((m, c))
            })
            .collect::<Result<Vec<_>>>()?;
        Series::from_terms(raw.degree, raw.vars, terms)
    }
}

impl fmt::Display for Series {
    /// One term per line, `coeff monomial`, in monomial order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for (m, c) in &self.terms {
            writeln!(f, "{c} {m}")?;
        }
        Ok(())
    }
}

/// Every nondecreasing index tuple of length `len` over the alphabet at
/// truncation `trunc`, in lexicographic order.
pub fn nondecreasing_tuples(len: usize, trunc: u32) -> Vec<Vec<ExtIndex>> {
    let alphabet = ExtIndex::alphabet(trunc);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(
        alphabet: &[ExtIndex],
        start: usize,
        len: usize,
        cur: &mut Vec<ExtIndex>,
        out: &mut Vec<Vec<ExtIndex>>,
    ) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for k in start..alphabet.len() {
            cur.push(alphabet[k]);
            rec(alphabet, k, len, cur, out);
            cur.pop();
        }
    }
    rec(&alphabet, 0, len, &mut cur, &mut out);
    out
}

/// Every monomial of the given degree over `x_0, x_1..x_trunc, x_inf`.
pub fn all_monomials(degree: usize, trunc: u32) -> Vec<Monomial> {
    nondecreasing_tuples(degree, trunc)
        .iter()
        .map(|t| Monomial::from_tuple(t).expect("generated tuples are sorted"))
        .collect()
}
