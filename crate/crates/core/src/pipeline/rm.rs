//! The √3-RM decision for Rosenhain curves and products of elliptic curves.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::field::{Field, FieldElement};
use crate::relation::{evaluate, rm_relations, RelationSet};

use super::lift::level2_squares_cached;
use super::mumford::mumford_holds;
use super::{
    level2_points_from_squares, lift_candidates, thomae_squares, PipelineError, RosenhainCurve,
    SqrtCache, ThetaPoint4,
};

/// Limits for [`rm_test`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Branch orderings tried, at most 120.
    pub max_orderings: usize,
    /// Level-4 candidates examined before giving up.
    pub max_candidates: usize,
    /// Over a prime field, retry over a quadratic extension when every
    /// branch needs roots outside the field.
    pub auto_extend: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_orderings: 120,
            max_candidates: 100_000,
            auto_extend: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    /// A level-4 theta null point satisfying the Mumford and RM relations.
    /// `ordering[k]` is the position in (0, 1, λ1, λ2, λ3) used as e_{k+1}.
    Positive {
        witness: ThetaPoint4,
        ordering: [usize; 5],
        examined: usize,
    },
    /// No witness among the enumerated theta structures. `complete` is false
    /// when the candidate limit stopped the search.
    Negative {
        examined: usize,
        orderings: usize,
        complete: bool,
    },
}

impl Decision {
    pub fn is_positive(&self) -> bool {
        matches!(self, Decision::Positive { .. })
    }
}

/// Permutations of 0..5 in lexicographic order, identity first.
fn orderings() -> Vec<[usize; 5]> {
    let mut out = Vec::with_capacity(120);
    let mut p = [0, 1, 2, 3, 4];
    loop {
        out.push(p);
        let Some(i) = (0..4).rev().find(|&i| p[i] < p[i + 1]) else {
            return out;
        };
        let j = (i + 1..5)
            .rev()
            .find(|&j| p[j] > p[i])
            .expect("successor exists");
        p.swap(i, j);
        p[i + 1..].reverse();
    }
}

fn satisfies_all(rs: &RelationSet, p: &ThetaPoint4) -> bool {
    rs.iter().all(|r| {
        evaluate(&r.poly, p, p.field())
            .map(|v| v.is_zero())
            .unwrap_or(false)
    })
}

/// Searches the theta structures of `curve` for a level-4 theta null point
/// satisfying the Mumford and RM relations. The returned witness is the
/// first in serial order: orderings, then level-2 square classes, then
/// level-2 sign classes, then lift sign choices.
pub fn rm_test(curve: &RosenhainCurve, config: &SearchConfig) -> Result<Decision, PipelineError> {
    let field = curve.field();
    if config.max_orderings == 0 || config.max_candidates == 0 {
        return Err(PipelineError::InvalidCurve(
            "search limits must be positive".into(),
        ));
    }
    if (field.characteristic() % 3u32).is_zero() {
        return Err(PipelineError::CharacteristicDividesSix(
            field.characteristic().to_string(),
        ));
    }
    match search(curve, config) {
        Err(PipelineError::FieldTooSmall { .. }) if config.auto_extend && field.degree() == 1 => {
            let ext = quadratic_extension(field)?;
            let lifted = curve.map(&ext, |x| ext.constant(x.coeffs()[0].clone()));
            search(&lifted, config)
        }
        other => other,
    }
}

fn quadratic_extension(field: &Field) -> Result<Field, PipelineError> {
    let n = field.non_residue();
    let c = n.as_constant().expect("prime field element").clone();
    let minus_n = -BigInt::from(c);
    Ok(field.extend("t", &[minus_n, BigInt::zero(), BigInt::from(1)], false)?)
}

fn search(curve: &RosenhainCurve, config: &SearchConfig) -> Result<Decision, PipelineError> {
    let field = curve.field();
    let rm = rm_relations();
    let base = curve.branch_points();
    let mut cache = SqrtCache::new();
    let mut examined = 0;
    let mut reached_lift = false;
    let orders = orderings();
    let tried = orders.len().min(config.max_orderings);
    for ordering in &orders[..tried] {
        let r = thomae_squares(&base.permuted(ordering), field);
        let Ok(square_classes) = level2_squares_cached(&r, field, &mut cache) else {
            continue;
        };
        for squares in &square_classes {
            let Ok(points) = level2_points_from_squares(squares, field, &mut cache) else {
                continue;
            };
            for b in &points {
                let Ok(candidates) = lift_candidates(b, &mut cache) else {
                    continue;
                };
                reached_lift = true;
                for p in candidates {
                    if examined == config.max_candidates {
                        return Ok(Decision::Negative {
                            examined,
                            orderings: tried,
                            complete: false,
                        });
                    }
                    examined += 1;
                    // the RM quadrics are cheaper than the Mumford quartics
                    if satisfies_all(&rm, &p) && mumford_holds(&p) {
                        return Ok(Decision::Positive {
                            witness: p.normalized(),
                            ordering: *ordering,
                            examined,
                        });
                    }
                }
            }
        }
    }
    if !reached_lift {
        return Err(PipelineError::FieldTooSmall {
            hint: "the theta constants need square roots outside the field; \
                   retry over an extension of degree 2, 4 or 8"
                .into(),
        });
    }
    Ok(Decision::Negative {
        examined,
        orderings: tried,
        complete: true,
    })
}

/// Checks (x0² + x2²)x0x2 = 2x1⁴, x1 = x3 and that x is not zero.
pub fn is_elliptic_theta_null(x: &[FieldElement; 4], field: &Field) -> Result<(), PipelineError> {
    for v in x {
        field.check(v)?;
    }
    let bad = |m: &str| Err(PipelineError::NotEllipticThetaNull(m.into()));
    if x.iter().all(FieldElement::is_zero) {
        return bad("all coordinates are zero");
    }
    if x[1] != x[3] {
        return bad("x1 != x3");
    }
    let f = field;
    let lhs = f.mul(
        &f.add(&f.square(&x[0]), &f.square(&x[2])),
        &f.mul(&x[0], &x[2]),
    );
    let rhs = f.scale(&f.square(&f.square(&x[1])), 2);
    if lhs != rhs {
        return bad("(x0² + x2²)x0x2 != 2x1⁴");
    }
    Ok(())
}

/// The product theta null point a(i, j) = x_i·y_j.
pub fn product_point(
    x: &[FieldElement; 4],
    y: &[FieldElement; 4],
    field: &Field,
) -> Result<ThetaPoint4, PipelineError> {
    is_elliptic_theta_null(x, field)?;
    is_elliptic_theta_null(y, field)?;
    ThetaPoint4::from_fn(field, |u| field.mul(&x[u.i() as usize], &y[u.j() as usize]))
}
