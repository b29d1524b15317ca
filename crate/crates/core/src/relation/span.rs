//! Exact linear algebra over Q on coefficient vectors.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;

use super::{Monomial, Polynomial, RelationError, RelationSet};

fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = BigRational::from_integer(1.into()) / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &factor * y;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

fn matrix<'a>(polys: impl Iterator<Item = &'a Polynomial> + Clone) -> Vec<Vec<BigRational>> {
    let basis: BTreeSet<&Monomial> = polys
        .clone()
        .flat_map(|p| p.terms().map(|(m, _)| m))
        .collect();
    polys
        .map(|p| {
            basis
                .iter()
                .map(|m| BigRational::from_integer(p.coefficient(m)))
                .collect()
        })
        .collect()
}

/// Dimension of the Q-span of the relations in `rs`.
pub fn span_rank(rs: &RelationSet) -> usize {
    rank(matrix(rs.iter().map(|r| &r.poly)))
}

/// Whether `target` lies in the Q-linear span of `rs`. Every polynomial
/// involved must be homogeneous of one common degree.
pub fn span_contains(target: &Polynomial, rs: &RelationSet) -> Result<bool, RelationError> {
    if target.is_zero() {
        return Ok(true);
    }
    let d = target.homogeneous_degree();
    if d.is_none() {
        return Err(RelationError::DegreeMismatch {
            target: None,
            found: None,
        });
    }
    for r in rs {
        let e = r.poly.homogeneous_degree();
        if e != d {
            return Err(RelationError::DegreeMismatch {
                target: d,
                found: e,
            });
        }
    }
    let polys: Vec<&Polynomial> = rs.iter().map(|r| &r.poly).collect();
    let without = rank(matrix(polys.iter().copied()));
    let with = rank(matrix(polys.iter().copied().chain([target])));
    Ok(with == without)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::{rm_relations, RelationFamily};

    type P = Polynomial;

    fn set(polys: Vec<P>) -> RelationSet {
        RelationSet::from_polys(RelationFamily::External, "r", polys)
    }

    #[test]
    fn trivial_spans() {
        let r = P::a(1, 3).pow(2) - P::a(1, 0) * P::a(2, 1);
        assert!(span_contains(&r, &set(vec![r.clone()])).unwrap());
        assert!(span_contains(&(-5 * r.clone()), &set(vec![r.clone()])).unwrap());
        assert!(!span_contains(&P::a(0, 0).pow(2), &set(vec![P::a(0, 1).pow(2)])).unwrap());
        let x = P::a(0, 0).pow(2);
        let y = P::a(0, 1).pow(2);
        assert!(span_contains(
            &(2 * x.clone() - 3 * y.clone()),
            &set(vec![x + y.clone(), y])
        )
        .unwrap());
    }

    #[test]
    fn degree_checks() {
        let quad = set(vec![P::a(0, 1).pow(2)]);
        assert_eq!(
            span_contains(&P::a(0, 0), &quad),
            Err(RelationError::DegreeMismatch {
                target: Some(1),
                found: Some(2)
            })
        );
        assert!(span_contains(&(P::a(0, 0) + P::a(0, 1).pow(2)), &quad).is_err());
    }

    #[test]
    fn correspondence_block_is_spanned() {
        type Q = P;
        let a = Q::a;
        let rm = rm_relations();
        let block = [
            a(1, 3).pow(2) - a(1, 0) * a(2, 1) - a(1, 2) * a(0, 1) + a(1, 1).pow(2),
            -(a(0, 0) * a(0, 2)) + 2 * (a(1, 0) * a(0, 1))
                - a(2, 2) * a(2, 0)
                - a(0, 2) * a(2, 2)
                - a(2, 0) * a(0, 0)
                + 2 * (a(1, 2) * a(2, 1)),
            -a(2, 0).pow(2) - 2 * (a(0, 0) * a(2, 2)) - a(0, 2).pow(2) + 4 * (a(1, 3) * a(1, 1)),
        ];
        for b in &block {
            assert!(span_contains(b, &rm).unwrap(), "{b}");
        }
    }
}
