use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::ExtIndex;
use crate::error::{Error, Result};

/// A monomial `x_{g_1} x_{g_2} ... x_{g_d}` stored as a sparse exponent map.
///
/// Entries are kept sorted by index with no zero exponents, so structural
/// equality is monomial equality. Ordering compares the nondecreasing index
/// tuples lexicographically, which puts `x0^2` before `x0*x1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(ExtIndex, u32)>,
    degree: usize,
}

impl Monomial {
    /// The empty product.
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds a monomial from its nondecreasing subscript tuple.
    pub fn from_tuple(tuple: &[ExtIndex]) -> Result<Self> {
        if let Some(position) = tuple.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::UnsortedTuple {
                position: position + 1,
            });
        }
        let mut factors: Vec<(ExtIndex, u32)> = Vec::new();
        for &g in tuple {
            check_index(g)?;
            match factors.last_mut() {
                Some((idx, e)) if *idx == g => *e += 1,
                _ => factors.push((g, 1)),
            }
        }
        Ok(Self {
            factors,
            degree: tuple.len(),
        })
    }

    /// Builds a monomial from `(index, exponent)` pairs in any order.
    /// Repeated indices accumulate and zero exponents are dropped.
    pub fn from_exponents<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExtIndex, u32)>,
    {
        let mut factors: Vec<(ExtIndex, u32)> = pairs.into_iter().filter(|p| p.1 > 0).collect();
        for &(g, _) in &factors {
            check_index(g)?;
        }
        factors.sort_unstable_by_key(|p| p.0);
        factors.dedup_by(|next, prev| {
            if next.0 == prev.0 {
                prev.1 += next.1;
                true
            } else {
                false
            }
        });
        Ok(Self::from_sorted(factors))
    }

    pub(crate) fn from_sorted(factors: Vec<(ExtIndex, u32)>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(factors.iter().all(|p| p.1 > 0));
        let degree = factors.iter().map(|p| p.1 as usize).sum();
        Self { factors, degree }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, idx: ExtIndex) -> u32 {
        self.factors
            .binary_search_by_key(&idx, |p| p.0)
            .map(|k| self.factors[k].1)
            .unwrap_or(0)
    }

    /// `(index, exponent)` pairs in increasing index order.
    pub fn factors(&self) -> &[(ExtIndex, u32)] {
        &self.factors
    }

    /// Expands back to the nondecreasing subscript tuple.
    pub fn tuple(&self) -> Vec<ExtIndex> {
        self.tuple_iter().collect()
    }

    fn tuple_iter(&self) -> impl Iterator<Item = ExtIndex> + '_ {
        self.factors
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n(g, e as usize))
    }

    /// Number of distinct natural variables that occur.
    pub fn distinct_naturals(&self) -> usize {
        self.factors.iter().filter(|p| p.0.is_natural()).count()
    }

    /// Largest natural index in use, if any.
    pub fn max_natural(&self) -> Option<u32> {
        self.factors.iter().rev().find_map(|p| match p.0 {
            ExtIndex::Nat(i) => Some(i),
            _ => None,
        })
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut a, mut b) = (self.factors.iter().peekable(), other.factors.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(ga, ea)), Some(&&(gb, eb))) => match ga.cmp(&gb) {
                    Ordering::Less => {
                        out.push((ga, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((gb, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((ga, ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(_), None) => out.extend(a.by_ref().copied()),
                (None, Some(_)) => out.extend(b.by_ref().copied()),
                (None, None) => break,
            }
        }
        Monomial {
            factors: out,
            degree: self.degree + other.degree,
        }
    }

    /// `self / x_idx`, or `None` when `x_idx` does not divide `self`.
    pub fn divide_by_var(&self, idx: ExtIndex) -> Option<Monomial> {
        let k = self.factors.binary_search_by_key(&idx, |p| p.0).ok()?;
        let mut factors = self.factors.clone();
        if factors[k].1 == 1 {
            factors.remove(k);
        } else {
            factors[k].1 -= 1;
        }
        Some(Monomial {
            factors,
            degree: self.degree - 1,
        })
    }
}

fn check_index(g: ExtIndex) -> Result<()> {
    if g == ExtIndex::Nat(0) {
        return Err(Error::IndexOutOfRange { index: 0, trunc: 0 });
    }
    Ok(())
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.tuple_iter().cmp(other.tuple_iter()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    /// Canonical text form, e.g. `x0^2*x3*xinf^2`; the empty monomial is `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, (g, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{g}")?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = Error;

    /// Accepts the canonical encoding. Factors must appear in strictly
    /// increasing index order and exponents must be at least 2 when written,
    /// so every monomial has exactly one accepted spelling.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::one());
        }
        let mut factors = Vec::new();
        for part in s.split('*') {
            let (var, exp) = match part.split_once('^') {
                Some((v, e)) => {
                    let e: u32 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{part}`")))?;
                    if e < 2 || e.to_string() != part.split_once('^').unwrap().1 {
                        return Err(Error::Parse(format!("non-canonical exponent in `{part}`")));
                    }
                    (v, e)
                }
                None => (part, 1),
            };
            let g: ExtIndex = var.parse()?;
            check_index(g)?;
            if let Some(&(prev, _)) = factors.last() {
                if prev >= g {
                    return Err(Error::Parse(format!(
                        "factors of `{s}` are not in increasing index order"
                    )));
                }
            }
            factors.push((g, exp));
        }
        Ok(Monomial::from_sorted(factors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ExtIndex::*;

    #[test]
    fn tuple_reading() {
        let m = Monomial::from_tuple(&[Zero, Zero, Nat(5), Nat(5), Nat(5)]).unwrap();
        assert_eq!(m.degree(), 5);
        assert_eq!(m.exponent(Zero), 2);
        assert_eq!(m.exponent(Nat(5)), 3);
        assert_eq!(m.to_string(), "x0^2*x5^3");

        let e = Monomial::from_tuple(&[]).unwrap();
        assert!(e.is_one());
        assert_eq!(e.degree(), 0);

        let m = Monomial::from_tuple(&[Nat(1), Inf]).unwrap();
        assert_eq!(m.degree(), 2);
        assert_eq!(m.to_string(), "x1*xinf");
    }

    #[test]
    fn unsorted_tuple_rejected() {
        let err = Monomial::from_tuple(&[Nat(2), Nat(1)]).unwrap_err();
        assert_eq!(err, Error::UnsortedTuple { position: 1 });
        assert!(Monomial::from_tuple(&[Inf, Zero]).is_err());
        assert!(Monomial::from_tuple(&[Nat(0)]).is_err());
    }

    #[test]
    fn exponents_accumulate() {
        let m = Monomial::from_exponents([(Inf, 1), (Zero, 2), (Inf, 1), (Nat(3), 0)]).unwrap();
        assert_eq!(m.to_string(), "x0^2*xinf^2");
        assert_eq!(m.degree(), 4);
    }

    #[test]
    fn multiplication_merges() {
        let a: Monomial = "x0*x2^2".parse().unwrap();
        let b: Monomial = "x1*x2*xinf".parse().unwrap();
        let p = a.mul(&b);
        assert_eq!(p.to_string(), "x0*x1*x2^3*xinf");
        assert_eq!(p.degree(), 6);
        assert_eq!(p.distinct_naturals(), 2);
        assert_eq!(p.max_natural(), Some(2));
        assert_eq!(a.mul(&Monomial::one()), a);
    }

    #[test]
    fn divide() {
        let m: Monomial = "x0*x1^2".parse().unwrap();
        assert_eq!(m.divide_by_var(Zero).unwrap().to_string(), "x1^2");
        assert_eq!(m.divide_by_var(Nat(1)).unwrap().to_string(), "x0*x1");
        assert!(m.divide_by_var(Inf).is_none());
    }

    #[test]
    fn text_encoding() {
        for s in ["1", "x0", "x0^2*x3*xinf^2", "x1*x10"] {
            assert_eq!(s.parse::<Monomial>().unwrap().to_string(), s);
        }
        for bad in ["x3*x1", "x1^1", "x1^02", "x1*x1", "", "x0^", "z1"] {
            assert!(bad.parse::<Monomial>().is_err(), "{bad}");
        }
    }

    #[test]
    fn ordering_follows_tuples() {
        let mut v: Vec<Monomial> = ["x0*x1", "x0^2", "x1*xinf", "x1^2"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        v.sort();
        let names: Vec<String> = v.iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["x0^2", "x0*x1", "x1^2", "x1*xinf"]);
    }
}
