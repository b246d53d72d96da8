use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A subset of `[n] = {1, ..., n}` together with its ambient `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubsetSpec {
    n: usize,
    members: Vec<usize>,
}

impl SubsetSpec {
    /// Members may come in any order; duplicates and values outside `1..=n`
    /// are rejected.
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidSubset(format!("duplicate member {}", w[0])));
        }
        if let Some(&bad) = members.iter().find(|&&m| m == 0 || m > n) {
            return Err(Error::InvalidSubset(format!("member {bad} is outside 1..={n}")));
        }
        Ok(Self { n, members })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            members: Vec::new(),
        }
    }

    /// `[n]` itself.
    pub fn full(n: usize) -> Self {
        Self {
            n,
            members: (1..=n).collect(),
        }
    }

    /// Parses the comma-separated member list (`"1,2,4"`, `""` for the empty set).
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Self::empty(n));
        }
        let members = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad set member `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, members)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &SubsetSpec) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    /// Sort key used for every canonical listing: size first, then the sorted
    /// member list.
    pub fn size_lex_key(&self) -> (usize, &[usize]) {
        (self.members.len(), &self.members)
    }

    /// All subsets of this set, in size-then-lexicographic order.
    pub fn subsets(&self) -> Vec<SubsetSpec> {
        (0..=self.members.len())
            .flat_map(|k| self.members.iter().copied().combinations(k))
            .map(|members| SubsetSpec { n: self.n, members })
            .collect()
    }

    /// Comma-separated members, empty for the empty set.
    pub fn members_text(&self) -> String {
        self.members.iter().join(",")
    }
}

/// Every subset of `[n]`, smallest first and lexicographic within a size.
pub fn all_subsets(n: usize) -> Vec<SubsetSpec> {
    SubsetSpec::full(n).subsets()
}

impl fmt::Display for SubsetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.members_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert_eq!(SubsetSpec::new(5, [4, 1, 5]).unwrap().members(), &[1, 4, 5]);
        assert!(SubsetSpec::new(3, [0]).is_err());
        assert!(SubsetSpec::new(3, [4]).is_err());
        assert!(SubsetSpec::new(3, [2, 2]).is_err());
        assert!(SubsetSpec::new(0, []).unwrap().is_empty());
    }

    #[test]
    fn text_form() {
        let s = SubsetSpec::parse(4, "1,2,4").unwrap();
        assert_eq!(s.members_text(), "1,2,4");
        assert_eq!(s.to_string(), "{1,2,4}");
        assert!(SubsetSpec::parse(4, "").unwrap().is_empty());
        assert!(SubsetSpec::parse(4, "1,x").is_err());
        assert!(SubsetSpec::parse(2, "3").is_err());
    }

    #[test]
    fn size_then_lex_order() {
        let all = all_subsets(3);
        let texts: Vec<String> = all.iter().map(|s| s.to_string()).collect();
        assert_eq!(
            texts,
            ["{}", "{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]
        );
        assert_eq!(all_subsets(0).len(), 1);
        assert_eq!(all_subsets(6).len(), 64);
    }

    #[test]
    fn subset_relation() {
        let a = SubsetSpec::new(4, [2]).unwrap();
        let b = SubsetSpec::new(4, [1, 2, 3]).unwrap();
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        assert_eq!(b.subsets().len(), 8);
    }
}
