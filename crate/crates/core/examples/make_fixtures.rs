//! Regenerates `data/fixtures`: valid level-4 theta null points over small
//! fields, built by the forward pipeline from Rosenhain curves and as
//! products of elliptic theta null points.
//!
//! cargo run --release -p thetarm-core --example make_fixtures

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use thetarm_core::field::{format_field_file, Field, FieldElement};
use thetarm_core::pipeline::{
    format_point4, is_elliptic_theta_null, level2_points_from_squares, level2_squares_from_thomae,
    level2_to_level4, product_point, thomae_squares, RosenhainCurve, SqrtCache, ThetaPoint4,
};

fn extension(p: u64, degree: usize) -> Field {
    let base = Field::prime_u64(p).unwrap();
    for c in 1..p as i64 {
        for d in 0..p as i64 {
            let mut m: Vec<BigInt> = vec![0.into(); degree + 1];
            m[0] = c.into();
            m[1] = d.into();
            m[degree] = 1.into();
            if let Ok(f) = base.extend("t", &m, true) {
                return f;
            }
        }
    }
    unreachable!("no irreducible t^{degree} + d*t + c over F_{p}")
}

/// First Mumford-valid lift with ten nonzero coordinates, over the curves
/// with small integer λ in increasing order.
fn lifted_point(f: &Field) -> Option<ThetaPoint4> {
    let p = f.characteristic().to_u64_digits()[0] as i64;
    let mut cache = SqrtCache::new();
    for l1 in 2..p {
        for l2 in l1 + 1..p {
            for l3 in l2 + 1..p {
                let lambdas = [f.from_i64(l1), f.from_i64(l2), f.from_i64(l3)];
                let Ok(c) = RosenhainCurve::new(f, lambdas) else {
                    continue;
                };
                let r = thomae_squares(&c.branch_points(), f);
                let Ok(classes) = level2_squares_from_thomae(&r, f) else {
                    continue;
                };
                for sq in &classes {
                    for b in level2_points_from_squares(sq, f, &mut cache).unwrap_or_default() {
                        for q in level2_to_level4(&b).unwrap_or_default() {
                            let dense = thetarm_core::index::Index::symmetric_representatives()
                                .all(|u| !q.get(u).is_zero());
                            if dense {
                                return Some(q);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

fn elliptic_tuples(f: &Field) -> Vec<[FieldElement; 4]> {
    let p = f.characteristic().to_u64_digits()[0] as i64;
    let mut out = Vec::new();
    for x0 in 0..p {
        for x1 in 0..p {
            for x2 in 0..p {
                let x = [
                    f.from_i64(x0),
                    f.from_i64(x1),
                    f.from_i64(x2),
                    f.from_i64(x1),
                ];
                if x0 * x1 * x2 != 0 && is_elliptic_theta_null(&x, f).is_ok() {
                    out.push(x);
                }
            }
        }
    }
    out
}

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/fixtures");
    let mut fixtures: Vec<(Field, ThetaPoint4)> = Vec::new();
    for p in [7, 11, 13, 17, 19, 23, 29] {
        for degree in [2, 4] {
            let f = extension(p, degree);
            if let Some(q) = lifted_point(&f) {
                fixtures.push((f, q));
            }
        }
    }
    for p in [7u64, 11, 13] {
        let f = Field::prime_u64(p).unwrap();
        let tuples = elliptic_tuples(&f);
        let x = &tuples[0];
        let y = &tuples[tuples.len() / 2];
        fixtures.push((f.clone(), product_point(x, y, &f).unwrap()));
        fixtures.push((f.clone(), product_point(y, y, &f).unwrap()));
    }
    fixtures.truncate(20);
    assert_eq!(fixtures.len(), 20, "not enough fixtures");
    for (k, (f, q)) in fixtures.iter().enumerate() {
        let dir = root.join(format!("{:02}", k + 1));
        fs::create_dir_all(&dir).unwrap();
        fs::write(dir.join("field.txt"), format_field_file(f)).unwrap();
        fs::write(dir.join("point.txt"), format_point4(q)).unwrap();
        println!("{:02}: F_{}^{}", k + 1, f.characteristic(), f.degree());
    }
}
