//! The relation generators. Hand transcriptions are regression-locked by
//! evaluating them at the worked example point (see the tests).

use crate::index::{equivalent_pairs, Index};

use super::{Family, Polynomial, Relation, RelationFamily, RelationSet, VarRef};

type P = Polynomial;

fn a(i: i64, j: i64) -> P {
    P::a(i, j)
}

fn sq(p: P) -> P {
    p.pow(2)
}

/// The defining relations of level-4 theta null points: 20 quartics and
/// 6 linear symmetry identities.
pub fn mumford_relations() -> RelationSet {
    let q = || sq(a(0, 0)) + sq(a(0, 2)) + sq(a(2, 0)) + sq(a(2, 2));
    let rows: Vec<(P, P)> = vec![
        (
            q() * (a(0, 0) * a(0, 2) + a(2, 0) * a(2, 2)),
            2 * sq(sq(a(0, 1)) + sq(a(2, 1))),
        ),
        (
            q() * (a(0, 0) * a(2, 0) + a(0, 2) * a(2, 2)),
            2 * sq(sq(a(1, 0)) + sq(a(1, 2))),
        ),
        (
            q() * (a(0, 0) * a(2, 2) + a(2, 0) * a(0, 2)),
            2 * sq(sq(a(1, 1)) + sq(a(1, 3))),
        ),
        (
            (a(0, 0) * a(2, 0) + a(0, 2) * a(2, 2)) * (a(0, 0) * a(2, 2) + a(0, 2) * a(2, 0)),
            4 * (sq(a(0, 1)) * sq(a(2, 1))),
        ),
        (
            (a(0, 0) * a(0, 2) + a(2, 0) * a(2, 2)) * (a(0, 0) * a(2, 2) + a(0, 2) * a(2, 0)),
            4 * (sq(a(1, 0)) * sq(a(1, 2))),
        ),
        (
            (a(0, 0) * a(0, 2) + a(2, 0) * a(2, 2)) * (a(0, 0) * a(2, 0) + a(0, 2) * a(2, 2)),
            4 * (sq(a(1, 1)) * sq(a(1, 3))),
        ),
        (
            q() * a(1, 3) * a(1, 1),
            (sq(a(1, 2)) + sq(a(1, 0))) * (sq(a(0, 1)) + sq(a(2, 1))),
        ),
        (
            q() * a(0, 1) * a(2, 1),
            (sq(a(1, 2)) + sq(a(1, 0))) * (sq(a(1, 1)) + sq(a(1, 3))),
        ),
        (
            q() * a(1, 0) * a(1, 2),
            (sq(a(0, 1)) + sq(a(2, 1))) * (sq(a(1, 1)) + sq(a(1, 3))),
        ),
        (
            (a(0, 2) * a(2, 0) + a(0, 0) * a(2, 2)) * a(1, 1) * a(1, 3),
            2 * (a(0, 1) * a(1, 0) * a(2, 1) * a(1, 2)),
        ),
        (
            (a(2, 0) * a(0, 0) + a(2, 2) * a(0, 2)) * a(1, 0) * a(1, 2),
            2 * (a(1, 1) * a(1, 3) * a(2, 1) * a(0, 1)),
        ),
        (
            (a(0, 0) * a(0, 2) + a(2, 0) * a(2, 2)) * a(2, 1) * a(0, 1),
            2 * (a(1, 1) * a(1, 3) * a(1, 0) * a(1, 2)),
        ),
        (
            (a(0, 2) * a(2, 0) + a(0, 0) * a(2, 2)) * (sq(a(0, 1)) + sq(a(2, 1))),
            2 * (a(1, 0) * a(1, 2)) * (sq(a(1, 1)) + sq(a(1, 3))),
        ),
        (
            (a(0, 0) * a(0, 2) + a(2, 0) * a(2, 2)) * (sq(a(1, 1)) + sq(a(1, 3))),
            2 * (a(1, 0) * a(1, 2)) * (sq(a(0, 1)) + sq(a(2, 1))),
        ),
        (
            (a(0, 2) * a(2, 0) + a(0, 0) * a(2, 2)) * (sq(a(1, 0)) + sq(a(1, 2))),
            2 * (a(2, 1) * a(0, 1)) * (sq(a(1, 1)) + sq(a(1, 3))),
        ),
        (
            (a(2, 0) * a(0, 0) + a(2, 2) * a(0, 2)) * (sq(a(1, 3)) + sq(a(1, 1))),
            2 * (a(2, 1) * a(0, 1)) * (sq(a(1, 0)) + sq(a(1, 2))),
        ),
        (
            (a(2, 0) * a(0, 0) + a(2, 2) * a(0, 2)) * (sq(a(2, 1)) + sq(a(0, 1))),
            2 * (a(1, 1) * a(1, 3)) * (sq(a(1, 0)) + sq(a(1, 2))),
        ),
        (
            (a(0, 0) * a(0, 2) + a(2, 0) * a(2, 2)) * (sq(a(1, 2)) + sq(a(1, 0))),
            2 * (a(1, 1) * a(1, 3)) * (sq(a(0, 1)) + sq(a(2, 1))),
        ),
        (
            a(0, 1) * a(2, 1) * (sq(a(0, 1)) + sq(a(2, 1))),
            a(1, 0) * a(1, 2) * (sq(a(1, 0)) + sq(a(1, 2))),
        ),
        (
            a(0, 1) * a(2, 1) * (sq(a(0, 1)) + sq(a(2, 1))),
            a(1, 1) * a(1, 3) * (sq(a(1, 1)) + sq(a(1, 3))),
        ),
        (a(1, 1), a(3, 3)),
        (a(1, 0), a(3, 0)),
        (a(0, 1), a(0, 3)),
        (a(1, 3), a(3, 1)),
        (a(3, 2), a(1, 2)),
        (a(2, 1), a(2, 3)),
    ];
    RelationSet::from_polys(
        RelationFamily::Mumford,
        "m",
        rows.into_iter().map(|(l, r)| l - r),
    )
}

/// One relation per pair of equivalent triples (x, y1, z1) ~ (x, y2, z2):
/// Σ_{u ∈ Z2} b(y1+u)·a(z1+u) − Σ_{v ∈ Z2} b(y2+v)·a(z2+v).
pub fn rm_bilinear_relations() -> RelationSet {
    let side = |y: Index, z: Index| {
        Index::two_torsion().into_iter().fold(P::zero(), |acc, u| {
            acc + P::var(VarRef::b(y.add(u))) * P::var(VarRef::a(z.add(u)))
        })
    };
    let polys = equivalent_pairs()
        .into_iter()
        .map(|(t1, t2)| side(t1.y, t1.z) - side(t2.y, t2.z));
    RelationSet::from_polys(RelationFamily::RmBilinear, "rb", polys)
}

/// The bilinear relations after b(v) := a(Mv) and a(u) := a(min(u, -u)).
/// Quadratic in the ten symmetric coordinates.
pub fn rm_relations() -> RelationSet {
    let polys = rm_bilinear_relations().relations.into_iter().map(|r| {
        r.poly.substitute(|v| {
            let u = match v.family {
                Family::A => v.index,
                Family::B => v.index.apply_m(),
            };
            VarRef::a(u.symmetric_representative())
        })
    });
    RelationSet::from_polys(RelationFamily::Rm, "rm", polys)
}

/// The quartic cutting out products of elliptic curves with product theta
/// structure: 4a11^4 = (a00² + a02² + a20² + a22²)·a00·a22.
pub fn split_product_relation() -> Relation {
    let lhs = 4 * a(1, 1).pow(4);
    let rhs = (sq(a(0, 0)) + sq(a(0, 2)) + sq(a(2, 0)) + sq(a(2, 2))) * a(0, 0) * a(2, 2);
    Relation {
        id: "sp1".into(),
        poly: (lhs - rhs).normalize(),
    }
}

/// Squares E × E of a single elliptic curve: 7 quadrics and the listed
/// linear identities (repeats dropped).
pub fn split_square_relations() -> RelationSet {
    let rows: Vec<(P, P)> = vec![
        (a(1, 1) * a(2, 2), sq(a(2, 1))),
        (a(1, 0) * a(2, 1), a(1, 1) * a(2, 0)),
        (a(1, 0) * a(2, 2), a(2, 0) * a(2, 1)),
        (2 * sq(a(1, 1)), a(0, 0) * a(2, 0) + a(2, 0) * a(2, 2)),
        (a(0, 0) * a(2, 1), a(1, 0) * a(2, 0)),
        (a(0, 0) * a(1, 1), sq(a(1, 0))),
        (a(0, 0) * a(2, 2), sq(a(2, 0))),
        (a(1, 3), a(3, 1)),
        (a(0, 3), a(3, 0)),
        (a(2, 3), a(3, 2)),
        (a(0, 1), a(1, 0)),
        (a(1, 1), a(3, 3)),
        (a(1, 3), a(3, 1)),
        (a(0, 1), a(0, 3)),
        (a(1, 2), a(3, 2)),
        (a(1, 1), a(1, 3)),
        (a(0, 2), a(2, 0)),
        (a(1, 2), a(2, 1)),
        (a(2, 1), a(2, 3)),
        (a(3, 1), a(3, 3)),
        (a(2, 1), a(2, 3)),
        (a(0, 1), a(0, 3)),
        (a(1, 0), a(3, 0)),
    ];
    RelationSet::from_polys(
        RelationFamily::SplitSquare,
        "sq",
        rows.into_iter().map(|(l, r)| l - r),
    )
}
