//! Exact linear solves over the rationals, used to decide membership in the
//! span of a finite list of truncated series by brute force.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::series::{Monomial, Series};

/// Outcome of a consistent system `Σ x_j · columns[j] = target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanSolution {
    /// One solution, with every free variable set to zero.
    pub particular: Vec<BigRational>,
    pub rank: usize,
    /// Dimension of the solution space.
    pub nullity: usize,
}

impl SpanSolution {
    /// The particular solution when all its entries are integers.
    pub fn integral(&self) -> Option<Vec<BigInt>> {
        self.particular
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }
}

/// Solves `Σ x_j · columns[j] = target` coefficientwise over the union of
/// the supports. `None` when the system is inconsistent, which proves the
/// target is outside even the rational span.
pub fn solve_in_span(columns: &[Series], target: &Series) -> Option<SpanSolution> {
    let rows: Vec<Monomial> = columns
        .iter()
        .chain(std::iter::once(target))
        .flat_map(|s| s.iter().map(|(m, _)| m.clone()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let width = columns.len();
    let mut matrix: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|m| {
            columns
                .iter()
                .chain(std::iter::once(target))
                .map(|s| BigRational::from_integer(s.coefficient(m)))
                .collect()
        })
        .collect();

    let pivots = row_reduce(&mut matrix, width);
    // a pivot in the augmented column means 0 = nonzero
    if pivots.last() == Some(&width) {
        return None;
    }
    let mut particular = vec![BigRational::zero(); width];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = matrix[r][width].clone();
    }
    Some(SpanSolution {
        particular,
        rank: pivots.len(),
        nullity: width - pivots.len(),
    })
}

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row. Columns up to and including `width` take part.
fn row_reduce(matrix: &mut [Vec<BigRational>], width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..=width {
        if row == matrix.len() {
            break;
        }
        let Some(p) = (row..matrix.len()).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(row, p);
        let inv = BigRational::one() / matrix[row][col].clone();
        for x in matrix[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = matrix[row].clone();
        for (r, other) in matrix.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (x, p) in other[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &f * p;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Renders a rational vector compactly, for reports.
pub fn format_vector(v: &[BigRational]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|x| {
            if x.is_integer() {
                x.to_integer().to_string()
            } else if x.is_negative() {
                format!("-{}/{}", x.numer().abs(), x.denom())
            } else {
                format!("{}/{}", x.numer(), x.denom())
            }
        })
        .collect();
    format!("[{}]", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(degree: usize, trunc: u32, terms: &[(&str, i64)]) -> Series {
        Series::from_terms(
            degree,
            trunc,
            terms.iter().map(|&(m, c)| (m.parse::<Monomial>().unwrap(), c)),
        )
        .unwrap()
    }

    #[test]
    fn consistent_system() {
        let a = series(1, 1, &[("x0", 1), ("x1", 2)]);
        let b = series(1, 1, &[("x1", 1)]);
        let t = series(1, 1, &[("x0", 3), ("x1", 10)]);
        let sol = solve_in_span(&[a, b], &t).unwrap();
        assert_eq!(sol.rank, 2);
        assert_eq!(sol.nullity, 0);
        assert_eq!(sol.integral().unwrap(), vec![BigInt::from(3), BigInt::from(4)]);
    }

    #[test]
    fn inconsistent_system() {
        let a = series(1, 1, &[("x0", 1), ("x1", 1)]);
        let t = series(1, 1, &[("x0", 1), ("x1", 2)]);
        assert!(solve_in_span(&[a], &t).is_none());
    }

    #[test]
    fn dependent_columns_and_fractions() {
        let a = series(1, 1, &[("x0", 2)]);
        let t = series(1, 1, &[("x0", 1)]);
        let sol = solve_in_span(&[a.clone(), a], &t).unwrap();
        assert_eq!(sol.rank, 1);
        assert_eq!(sol.nullity, 1);
        assert!(sol.integral().is_none());
        assert_eq!(format_vector(&sol.particular), "[1/2, 0]");
    }

    #[test]
    fn zero_target() {
        let sol = solve_in_span(&[], &Series::zero(2, 2)).unwrap();
        assert!(sol.particular.is_empty());
    }
}
