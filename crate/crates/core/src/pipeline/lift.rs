//! Going down (level 4 → level 2) by direct evaluation, and going up by
//! square roots and linear solves.
//!
//! Root extraction is projective: with anchor v_k (the first nonzero value)
//! the roots of (v_j) are taken as (sqrt(v_j·v_k)), i.e. every root scaled
//! by sqrt(v_k). The anchor itself never needs a root and its sign is fixed,
//! which removes the global sign.

use std::collections::HashMap;

use crate::field::{Field, FieldElement};

use super::mumford::mumford_residuals;
use super::{Level2Data, PipelineError, ThetaPoint2, ThetaPoint4};

/// Memoized square roots; lifting many sign classes of one point repeats
/// the same radicands.
#[derive(Debug, Default)]
pub struct SqrtCache {
    roots: HashMap<FieldElement, Option<FieldElement>>,
}

impl SqrtCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn sqrt(&mut self, field: &Field, x: &FieldElement) -> Option<FieldElement> {
        if let Some(r) = self.roots.get(x) {
            return r.clone();
        }
        let r = field.sqrt(x);
        self.roots.insert(x.clone(), r.clone());
        r
    }
}

/// All sign variants of projectively anchored roots of `values`, anchor
/// sign fixed. `None` if all values vanish or a root is missing.
fn signed_roots(
    values: &[FieldElement],
    field: &Field,
    cache: &mut SqrtCache,
) -> Option<Vec<Vec<FieldElement>>> {
    let k = values.iter().position(|v| !v.is_zero())?;
    let anchor = &values[k];
    let mut roots = Vec::with_capacity(values.len());
    for (j, v) in values.iter().enumerate() {
        roots.push(if j == k {
            anchor.clone()
        } else if v.is_zero() {
            field.zero()
        } else {
            cache.sqrt(field, &field.mul(v, anchor))?
        });
    }
    let free: Vec<usize> = (0..roots.len())
        .filter(|&j| j != k && !roots[j].is_zero())
        .collect();
    let variants = (0u32..1 << free.len())
        .map(|mask| {
            let mut r = roots.clone();
            for (bit, &j) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    r[j] = field.neg(&r[j]);
                }
            }
            r
        })
        .collect();
    Some(variants)
}

/// (x0+x1+x2+x3, x0−x1+x2−x3, x0+x1−x2−x3, x0−x1−x2+x3).
fn hadamard(f: &Field, x: &[FieldElement]) -> [FieldElement; 4] {
    let (p01, m01) = (f.add(&x[0], &x[1]), f.sub(&x[0], &x[1]));
    let (p23, m23) = (f.add(&x[2], &x[3]), f.sub(&x[2], &x[3]));
    [
        f.add(&p01, &p23),
        f.add(&m01, &m23),
        f.sub(&p01, &p23),
        f.sub(&m01, &m23),
    ]
}

/// The level-2 data of a level-4 point:
/// b00² = a00²+a02²+a20²+a22², b01² = 2(a00a02+a20a22), ...,
/// b01b00 = 2(a01²+a21²), ..., b11b10 = 4a01a21.
pub fn level4_to_level2(p: &ThetaPoint4) -> Result<Level2Data, PipelineError> {
    if let Some(k) = mumford_residuals(p).iter().position(|r| !r.is_zero()) {
        return Err(PipelineError::NotAThetaNullPoint(format!("m{}", k + 1)));
    }
    let f = p.field();
    let a = |i, j| p.at(i, j);
    let sq = |i, j| f.square(a(i, j));
    let mul = |x: &FieldElement, y: &FieldElement| f.mul(x, y);
    let sum2 = |x: FieldElement, y: FieldElement| f.add(&x, &y);
    let b00 = sum2(sum2(sq(0, 0), sq(0, 2)), sum2(sq(2, 0), sq(2, 2)));
    let b01 = f.scale(&sum2(mul(a(0, 0), a(0, 2)), mul(a(2, 0), a(2, 2))), 2);
    let b10 = f.scale(&sum2(mul(a(0, 0), a(2, 0)), mul(a(0, 2), a(2, 2))), 2);
    let b11 = f.scale(&sum2(mul(a(0, 0), a(2, 2)), mul(a(0, 2), a(2, 0))), 2);
    let products = [
        f.scale(&sum2(sq(0, 1), sq(2, 1)), 2),
        f.scale(&sum2(sq(1, 2), sq(1, 0)), 2),
        f.scale(&sum2(sq(1, 1), sq(1, 3)), 2),
        f.scale(&mul(a(1, 1), a(1, 3)), 4),
        f.scale(&mul(a(1, 0), a(1, 2)), 4),
        f.scale(&mul(a(0, 1), a(2, 1)), 4),
    ];
    Ok(Level2Data {
        squares: [b00, b01, b10, b11],
        products,
    })
}

/// Level-2 points with the given data. The anchor is the first nonzero
/// square; b_anchor = b_anchor² and b_j = b_anchor·b_j, a single class.
pub fn level2_point_from_data(
    d: &Level2Data,
    field: &Field,
) -> Result<Vec<ThetaPoint2>, PipelineError> {
    for x in d.squares.iter().chain(&d.products) {
        field.check(x)?;
    }
    let k = d
        .squares
        .iter()
        .position(|s| !s.is_zero())
        .ok_or(PipelineError::AllZero)?;
    if !d.is_consistent(field) {
        return Err(PipelineError::InconsistentLevel2Data);
    }
    let coords = std::array::from_fn(|j| {
        if j == k {
            d.squares[k].clone()
        } else {
            d.product(k, j).clone()
        }
    });
    Ok(vec![ThetaPoint2::new(field, coords)?])
}

/// Level-2 points with the given squares only: every sign class, anchor
/// sign fixed (up to 8).
pub fn level2_points_from_squares(
    squares: &[FieldElement; 4],
    field: &Field,
    cache: &mut SqrtCache,
) -> Result<Vec<ThetaPoint2>, PipelineError> {
    if squares.iter().all(FieldElement::is_zero) {
        return Err(PipelineError::AllZero);
    }
    let variants = signed_roots(squares, field, cache).ok_or(PipelineError::NoSquareRoots)?;
    variants
        .into_iter()
        .map(|v| ThetaPoint2::new(field, v.try_into().expect("four roots")))
        .collect()
}

/// Level-2 squares (b00², b01², b10², b11²) from the Thomae values r with
/// T_i² = r_i: one tuple per sign class of the T_i.
pub fn level2_squares_from_thomae(
    r: &[FieldElement; 4],
    field: &Field,
) -> Result<Vec<[FieldElement; 4]>, PipelineError> {
    level2_squares_cached(r, field, &mut SqrtCache::new())
}

pub(super) fn level2_squares_cached(
    r: &[FieldElement; 4],
    field: &Field,
    cache: &mut SqrtCache,
) -> Result<Vec<[FieldElement; 4]>, PipelineError> {
    let variants = signed_roots(r, field, cache).ok_or(PipelineError::NoSquareRoots)?;
    let quarter = field.inv(&field.from_i64(4))?;
    Ok(variants
        .iter()
        .map(|s| hadamard(field, s).map(|x| field.mul(&x, &quarter)))
        .collect())
}

/// Every sign choice for going up from `b`, before any filtering. Each
/// candidate is symmetric by construction.
pub fn lift_candidates(
    b: &ThetaPoint2,
    cache: &mut SqrtCache,
) -> Result<Vec<ThetaPoint4>, PipelineError> {
    let f = b.field();
    let [b00, b01, b10, b11] = b.coords();
    let half = f.inv(&f.from_i64(2))?;
    let quarter = f.square(&half);
    let t = hadamard(f, &b.squares());
    let pm = |x: FieldElement, y: FieldElement| {
        [f.mul(&f.add(&x, &y), &half), f.mul(&f.sub(&x, &y), &half)]
    };
    let [v4, v5] = pm(f.mul(b01, b00), f.mul(b11, b10));
    let [v6, v7] = pm(f.mul(b11, b00), f.mul(b01, b10));
    let [v8, v9] = pm(f.mul(b10, b00), f.mul(b11, b01));
    let values = [
        t[0].clone(),
        t[1].clone(),
        t[2].clone(),
        t[3].clone(),
        v4,
        v5,
        v6,
        v7,
        v8,
        v9,
    ];
    let variants = signed_roots(&values, f, cache).ok_or(PipelineError::NoLift)?;
    let mut out = Vec::with_capacity(variants.len());
    for r in variants {
        let h = hadamard(f, &r[..4]).map(|x| f.mul(&x, &quarter));
        let [s01, d01] = pm(r[4].clone(), r[5].clone());
        let [s11, d11] = pm(r[6].clone(), r[7].clone());
        let [s10, d10] = pm(r[8].clone(), r[9].clone());
        // h = (a00, a02, a20, a22)
        let [a00, a02, a20, a22] = h;
        let reps = [a00, s01, a02, s10, s11, d10, d11, a20, d01, a22];
        match ThetaPoint4::from_representatives(f, reps) {
            Ok(p) => out.push(p),
            Err(PipelineError::AllZero) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn push_unique(list: &mut Vec<ThetaPoint4>, p: ThetaPoint4) {
    let n = p.normalized();
    if !list.iter().any(|q| q.normalized() == n) {
        list.push(n);
    }
}

/// Level-4 points over `b`: every sign choice that satisfies the Mumford
/// relations, normalized, without projective repeats. May be empty.
pub fn level2_to_level4(b: &ThetaPoint2) -> Result<Vec<ThetaPoint4>, PipelineError> {
    let mut out = Vec::new();
    for p in lift_candidates(b, &mut SqrtCache::new())? {
        if mumford_residuals(&p).iter().all(FieldElement::is_zero) {
            push_unique(&mut out, p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::Index;

    #[test]
    fn representative_layout() {
        // lift_candidates fills representatives in this order
        let want = [
            (0, 0),
            (0, 1),
            (0, 2),
            (1, 0),
            (1, 1),
            (1, 2),
            (1, 3),
            (2, 0),
            (2, 1),
            (2, 2),
        ];
        let got: Vec<Index> = Index::symmetric_representatives().collect();
        assert_eq!(got, want.map(|(i, j)| Index::new(i, j)));
    }

    #[test]
    fn thomae_inversion_examples() {
        let f = Field::prime_u64(1009).unwrap();
        let r = [16, 16, 16, 16].map(|k| f.from_i64(k));
        let classes = level2_squares_from_thomae(&r, &f).unwrap();
        assert_eq!(classes.len(), 8);
        assert_eq!(classes[0], [16, 0, 0, 0].map(|k| f.from_i64(k)));
        let nr = (2..1009).find(|&k| !f.is_square(&f.from_i64(k))).unwrap();
        let r = [1, nr, 1, 1].map(|k| f.from_i64(k));
        assert_eq!(
            level2_squares_from_thomae(&r, &f),
            Err(PipelineError::NoSquareRoots)
        );
    }

    #[test]
    fn data_extraction_examples() {
        let f = Field::prime_u64(1009).unwrap();
        let e = |k| f.from_i64(k);
        let d = Level2Data {
            squares: [e(16), e(0), e(0), e(0)],
            products: [e(0), e(0), e(0), e(0), e(0), e(0)],
        };
        let pts = level2_point_from_data(&d, &f).unwrap();
        assert_eq!(pts.len(), 1);
        let want = ThetaPoint2::new(&f, [e(4), e(0), e(0), e(0)]).unwrap();
        assert!(pts[0].projectively_equal(&want));

        let d = Level2Data {
            squares: [e(4), e(4), e(4), e(4)],
            products: [e(4), e(4), e(4), e(4), e(4), e(4)],
        };
        let pts = level2_point_from_data(&d, &f).unwrap();
        let want = ThetaPoint2::new(&f, [e(2), e(2), e(2), e(2)]).unwrap();
        assert!(pts[0].projectively_equal(&want));

        let zero = Level2Data {
            squares: [e(0), e(0), e(0), e(0)],
            products: [e(0), e(0), e(0), e(0), e(0), e(0)],
        };
        assert_eq!(
            level2_point_from_data(&zero, &f),
            Err(PipelineError::AllZero)
        );
        let bad = Level2Data {
            squares: [e(4), e(4), e(4), e(4)],
            products: [e(4), e(4), e(4), e(4), e(4), e(5)],
        };
        assert_eq!(
            level2_point_from_data(&bad, &f),
            Err(PipelineError::InconsistentLevel2Data)
        );
    }

    #[test]
    fn all_ones_goes_down_to_fours() {
        let f = Field::prime_u64(13).unwrap();
        let d = level4_to_level2(&ThetaPoint4::all_ones(&f)).unwrap();
        assert_eq!(d.squares, [4, 4, 4, 4].map(|k| f.from_i64(k)));
        assert_eq!(d.products, [4, 4, 4, 4, 4, 4].map(|k| f.from_i64(k)));
        assert!(d.is_consistent(&f));
    }

    #[test]
    fn all_ones_round_trip() {
        let f = Field::prime_u64(13).unwrap();
        let p = ThetaPoint4::all_ones(&f);
        let d = level4_to_level2(&p).unwrap();
        let b = level2_point_from_data(&d, &f).unwrap().remove(0);
        let lifted = level2_to_level4(&b).unwrap();
        assert!(lifted.iter().any(|q| q.projectively_equal(&p)));
    }
}
