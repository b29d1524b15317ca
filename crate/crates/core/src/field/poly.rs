//! Dense univariate polynomials over F_p, little-endian coefficient vectors.
//!
//! Only what the extension layer needs: Euclidean division, gcd, and the
//! extended gcd used for inversion modulo the defining polynomial.

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub(crate) fn trim(mut a: Vec<BigUint>) -> Vec<BigUint> {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn sub_mod(a: &BigUint, b: &BigUint, p: &BigUint) -> BigUint {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

fn inv_mod(a: &BigUint, p: &BigUint) -> BigUint {
    a.modinv(p)
        .expect("nonzero residue modulo a prime is invertible")
}

/// Returns (quotient, remainder) of `a / b`. `b` must be nonzero and trimmed.
pub(crate) fn div_rem(a: &[BigUint], b: &[BigUint], p: &BigUint) -> (Vec<BigUint>, Vec<BigUint>) {
    debug_assert!(!b.is_empty());
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = inv_mod(b.last().unwrap(), p);
    let mut quot = vec![BigUint::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let factor = (rem.last().unwrap() * &lead_inv) % p;
        for (i, bi) in b.iter().enumerate() {
            let t = (&factor * bi) % p;
            rem[shift + i] = sub_mod(&rem[shift + i], &t, p);
        }
        quot[shift] = factor;
        rem = trim(rem);
    }
    (quot, rem)
}

fn mul(a: &[BigUint], b: &[BigUint], p: &BigUint) -> Vec<BigUint> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out.into_iter().map(|c| c % p).collect())
}

fn sub(a: &[BigUint], b: &[BigUint], p: &BigUint) -> Vec<BigUint> {
    let len = a.len().max(b.len());
    let zero = BigUint::zero();
    let out = (0..len)
        .map(|i| sub_mod(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero), p))
        .collect();
    trim(out)
}

/// Monic gcd of two polynomials.
pub(crate) fn gcd(a: &[BigUint], b: &[BigUint], p: &BigUint) -> Vec<BigUint> {
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    while !r1.is_empty() {
        let (_, r) = div_rem(&r0, &r1, p);
        r0 = r1;
        r1 = r;
    }
    if let Some(lead) = r0.last() {
        let inv = inv_mod(lead, p);
        for c in r0.iter_mut() {
            *c = (&*c * &inv) % p;
        }
    }
    r0
}

/// Inverse of `a` modulo `f`, or `None` when they share a factor.
pub(crate) fn inverse_mod(a: &[BigUint], f: &[BigUint], p: &BigUint) -> Option<Vec<BigUint>> {
    let (mut r0, mut r1) = (trim(f.to_vec()), trim(a.to_vec()));
    let (mut s0, mut s1): (Vec<BigUint>, Vec<BigUint>) = (Vec::new(), vec![BigUint::one()]);
    if r1.is_empty() {
        return None;
    }
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is now the gcd (up to a unit) and s0 * a = r0 mod f.
    if r0.len() != 1 {
        return None;
    }
    let unit = inv_mod(&r0[0], p);
    let (_, s) = div_rem(&s0, f, p);
    Some(s.into_iter().map(|c| (c * &unit) % p).collect())
}
