//! String forms of subsets, shuffles, generalized peak sets, and the
//! product rule `K_{1,{}} K_{m,Ω} = Σ_{s} K_{m+1,Gp(s)}` over the shuffles
//! `s` of `{}` ⊆ [1] with `Ω`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::SubsetSpec;

/// Letters ordered `A > B > C > D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    D,
    C,
    B,
    A,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::B => 'B',
            Letter::C => 'C',
            Letter::D => 'D',
        }
    }
}

impl TryFrom<char> for Letter {
    type Error = Error;

    fn try_from(c: char) -> Result<Self> {
        match c {
            'A' => Ok(Letter::A),
            'B' => Ok(Letter::B),
            'C' => Ok(Letter::C),
            'D' => Ok(Letter::D),
            _ => Err(Error::Parse(format!("letter `{c}` is not one of A, B, C, D"))),
        }
    }
}

pub const LEFT_PAIR: (Letter, Letter) = (Letter::A, Letter::B);
pub const RIGHT_PAIR: (Letter, Letter) = (Letter::C, Letter::D);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LetterString(Vec<Letter>);

impl LetterString {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    /// The subsequence made of the given letters.
    pub fn restricted_to(&self, pair: (Letter, Letter)) -> LetterString {
        LetterString(
            self.0
                .iter()
                .copied()
                .filter(|&l| l == pair.0 || l == pair.1)
                .collect(),
        )
    }
}

impl fmt::Display for LetterString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|l| write!(f, "{}", l.as_char()))
    }
}

impl FromStr for LetterString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(Letter::try_from)
            .collect::<Result<Vec<_>>>()
            .map(LetterString)
    }
}

/// Position `i` gets the first letter of `pair` when `i` is a member, the
/// second otherwise.
pub fn string_form(spec: &SubsetSpec, pair: (Letter, Letter)) -> LetterString {
    LetterString(
        (1..=spec.n())
            .map(|i| if spec.contains(i) { pair.0 } else { pair.1 })
            .collect(),
    )
}

/// All interleavings of the `(A,B)` form of `left` with the `(C,D)` form of
/// `right`; there are `C(n+m, n)` of them.
pub fn shuffles(left: &SubsetSpec, right: &SubsetSpec) -> Vec<LetterString> {
    let a = string_form(left, LEFT_PAIR);
    let b = string_form(right, RIGHT_PAIR);
    let total = a.len() + b.len();
    (0..total)
        .combinations(a.len())
        .map(|slots| {
            let (mut ia, mut ib) = (a.0.iter(), b.0.iter());
            let mut slots = slots.into_iter().peekable();
            let letters = (0..total)
                .map(|pos| {
                    if slots.peek() == Some(&pos) {
                        slots.next();
                        *ia.next().unwrap()
                    } else {
                        *ib.next().unwrap()
                    }
                })
                .collect();
            LetterString(letters)
        })
        .collect()
}

/// Generalized peak set: positions (1-based) whose letter is not `D` and is
/// at least every existing neighbor.
pub fn gp(s: &LetterString) -> SubsetSpec {
    let l = &s.0;
    let members = (0..l.len()).filter(|&k| {
        l[k] != Letter::D
            && (k == 0 || l[k] >= l[k - 1])
            && (k + 1 == l.len() || l[k] >= l[k + 1])
    });
    SubsetSpec::new(l.len(), members.map(|k| k + 1)).expect("positions lie in 1..=len")
}

/// A multiset of subsets, listed by size and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpecMultiset {
    counts: BTreeMap<SubsetSpec, usize>,
}

impl SpecMultiset {
    pub fn insert(&mut self, spec: SubsetSpec) {
        *self.counts.entry(spec).or_default() += 1;
    }

    pub fn multiplicity(&self, spec: &SubsetSpec) -> usize {
        self.counts.get(spec).copied().unwrap_or(0)
    }

    /// Total size, counting repeats.
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn entries(&self) -> Vec<(&SubsetSpec, usize)> {
        let mut v: Vec<_> = self.counts.iter().map(|(s, &k)| (s, k)).collect();
        v.sort_by(|a, b| a.0.size_lex_key().cmp(&b.0.size_lex_key()));
        v
    }

    /// Every element with repeats, in listing order.
    pub fn expanded(&self) -> Vec<&SubsetSpec> {
        self.entries()
            .into_iter()
            .flat_map(|(s, k)| std::iter::repeat_n(s, k))
            .collect()
    }

    pub fn to_json(&self) -> String {
        let raw: Vec<MultisetEntryJson> = self
            .entries()
            .into_iter()
            .map(|(s, k)| MultisetEntryJson {
                set: s.members().to_vec(),
                multiplicity: k,
            })
            .collect();
        serde_json::to_string(&raw).expect("plain data serializes")
    }

    /// Parses the wire form; every set lives in `[n]`.
    pub fn from_json(n: usize, text: &str) -> Result<SpecMultiset> {
        let raw: Vec<MultisetEntryJson> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = SpecMultiset::default();
        for e in raw {
            let spec = SubsetSpec::new(n, e.set)?;
            *out.counts.entry(spec).or_default() += e.multiplicity;
        }
        out.counts.retain(|_, k| *k > 0);
        Ok(out)
    }
}

impl FromIterator<SubsetSpec> for SpecMultiset {
    fn from_iter<I: IntoIterator<Item = SubsetSpec>>(iter: I) -> Self {
        let mut out = SpecMultiset::default();
        iter.into_iter().for_each(|s| out.insert(s));
        out
    }
}

impl fmt::Display for SpecMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, k) in self.entries() {
            writeln!(f, "{k} x {s}")?;
        }
        Ok(())
    }
}

/// Wire form of one multiset entry: `{"set": [..], "multiplicity": k}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MultisetEntryJson {
    pub set: Vec<usize>,
    pub multiplicity: usize,
}

/// The subsets `Ξ` (with multiplicity) such that
/// `K_{1,{}} K_{m,Ω} = Σ K_{m+1,Ξ}`.
pub fn k1_product(right: &SubsetSpec) -> SpecMultiset {
    shuffles(&SubsetSpec::empty(1), right)
        .iter()
        .map(gp)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, members: &[usize]) -> SubsetSpec {
        SubsetSpec::new(n, members.iter().copied()).unwrap()
    }

    fn word(s: &str) -> LetterString {
        s.parse().unwrap()
    }

    #[test]
    fn letter_order() {
        assert!(Letter::A > Letter::B && Letter::B > Letter::C && Letter::C > Letter::D);
        assert!("ABE".parse::<LetterString>().is_err());
        assert_eq!(word("DCACB").to_string(), "DCACB");
    }

    #[test]
    fn string_forms() {
        assert_eq!(string_form(&set(5, &[1, 4, 5]), LEFT_PAIR).to_string(), "ABBAA");
        assert_eq!(string_form(&set(4, &[]), LEFT_PAIR).to_string(), "BBBB");
        assert_eq!(string_form(&set(3, &[2, 3]), RIGHT_PAIR).to_string(), "DCC");
        assert!(string_form(&set(0, &[]), RIGHT_PAIR).is_empty());
    }

    #[test]
    fn shuffle_examples() {
        let all = shuffles(&set(2, &[1]), &set(3, &[2, 3]));
        assert_eq!(all.len(), 10);
        assert!(all.contains(&word("ABDCC")));
        assert!(all.contains(&word("DCACB")));
        for s in &all {
            assert_eq!(s.restricted_to(LEFT_PAIR).to_string(), "AB");
            assert_eq!(s.restricted_to(RIGHT_PAIR).to_string(), "DCC");
        }
        assert_eq!(
            shuffles(&set(0, &[]), &set(3, &[2])),
            vec![word("DCD")]
        );
        assert_eq!(shuffles(&set(1, &[]), &set(5, &[1, 2, 4])).len(), 6);
    }

    #[test]
    fn peak_sets() {
        assert_eq!(gp(&word("BCACDD")), set(6, &[1, 3]));
        assert!(!gp(&word("BCACDD")).contains(6));
        assert_eq!(gp(&word("AAAA")), set(4, &[1, 2, 3, 4]));
        assert_eq!(gp(&word("DDD")), set(3, &[]));
        assert_eq!(gp(&word("")), set(0, &[]));
    }

    #[test]
    fn k1_examples() {
        let got = k1_product(&set(5, &[1, 2, 4]));
        let expected: SpecMultiset = [
            set(6, &[2, 5]),
            set(6, &[1, 2, 4]),
            set(6, &[1, 2, 5]),
            set(6, &[1, 3, 5]),
            set(6, &[1, 3, 5]),
            set(6, &[1, 2, 4, 6]),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, expected);
        assert_eq!(got.multiplicity(&set(6, &[1, 3, 5])), 2);
        assert_eq!(got.total(), 6);

        let unit = k1_product(&set(0, &[]));
        assert_eq!(unit.expanded(), vec![&set(1, &[1])]);

        let two = k1_product(&set(1, &[]));
        assert_eq!(two.expanded(), vec![&set(2, &[1]), &set(2, &[2])]);
    }

    #[test]
    fn multiset_json() {
        let ms = k1_product(&set(5, &[1, 2, 4]));
        let text = ms.to_json();
        assert_eq!(
            text,
            r#"[{"set":[2,5],"multiplicity":1},{"set":[1,2,4],"multiplicity":1},{"set":[1,2,5],"multiplicity":1},{"set":[1,3,5],"multiplicity":2},{"set":[1,2,4,6],"multiplicity":1}]"#
        );
        assert_eq!(SpecMultiset::from_json(6, &text).unwrap(), ms);
        assert!(SpecMultiset::from_json(3, &text).is_err());
    }
}
