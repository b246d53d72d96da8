use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A variable subscript: the lower border `0`, a natural index, or the upper
/// border `inf`.
///
/// The derived order is the one the family definitions rely on:
/// `Zero < Nat(1) < Nat(2) < ... < Inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtIndex {
    Zero,
    Nat(u32),
    Inf,
}

impl ExtIndex {
    pub fn is_border(self) -> bool {
        !self.is_natural()
    }

    pub fn is_natural(self) -> bool {
        matches!(self, ExtIndex::Nat(_))
    }

    /// Every value usable at truncation `trunc`, in increasing order.
    pub fn alphabet(trunc: u32) -> Vec<ExtIndex> {
        let mut out = Vec::with_capacity(trunc as usize + 2);
        out.push(ExtIndex::Zero);
        out.extend((1..=trunc).map(ExtIndex::Nat));
        out.push(ExtIndex::Inf);
        out
    }
}

impl fmt::Display for ExtIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtIndex::Zero => write!(f, "x0"),
            ExtIndex::Nat(i) => write!(f, "x{i}"),
            ExtIndex::Inf => write!(f, "xinf"),
        }
    }
}

impl FromStr for ExtIndex {
    type Err = Error;

    /// Parses a single variable name: `x0`, `x<i>` or `xinf`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s
            .strip_prefix('x')
            .ok_or_else(|| Error::Parse(format!("variable `{s}` must start with `x`")))?;
        match body {
            "inf" => Ok(ExtIndex::Inf),
            "0" => Ok(ExtIndex::Zero),
            _ => {
                let i: u32 = body
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad variable index in `{s}`")))?;
                if body.starts_with('0') {
                    return Err(Error::Parse(format!("leading zero in `{s}`")));
                }
                Ok(ExtIndex::Nat(i))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_order() {
        assert!(ExtIndex::Zero < ExtIndex::Nat(1));
        assert!(ExtIndex::Nat(1) < ExtIndex::Nat(2));
        assert!(ExtIndex::Nat(u32::MAX) < ExtIndex::Inf);
        let alpha = ExtIndex::alphabet(3);
        assert!(alpha.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(alpha.len(), 5);
    }

    #[test]
    fn parse_and_print() {
        for s in ["x0", "x1", "x17", "xinf"] {
            let idx: ExtIndex = s.parse().unwrap();
            assert_eq!(idx.to_string(), s);
        }
        assert!("y1".parse::<ExtIndex>().is_err());
        assert!("x01".parse::<ExtIndex>().is_err());
        assert!("x".parse::<ExtIndex>().is_err());
    }
}
