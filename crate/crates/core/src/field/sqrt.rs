//! Square roots in F_q.
//!
//! q = 3 mod 4 uses a^((q+1)/4); everything else goes through
//! Tonelli-Shanks with a deterministically chosen non-residue.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{Field, FieldElement};

#[derive(Debug)]
pub(super) struct SqrtData {
    kind: Kind,
}

#[derive(Debug)]
enum Kind {
    /// q = 3 mod 4: exponent (q+1)/4.
    ThreeModFour(BigUint),
    /// q - 1 = 2^s * t with t odd; stores s, (t-1)/2 and z^t for a non-residue z.
    TonelliShanks {
        s: u64,
        half_t: BigUint,
        root_of_unity: FieldElement,
    },
}

impl Field {
    /// The first non-residue in the fixed search order: the constants
    /// 2, 3, ... (up to 64), then x^j, then x^j + c.
    pub fn non_residue(&self) -> FieldElement {
        let p_small = self.characteristic().to_u64().unwrap_or(u64::MAX);
        for c in 2..p_small.min(64) {
            let e = self.constant(BigUint::from(c));
            if !self.is_square(&e) {
                return e;
            }
        }
        if let Some(x) = self.generator() {
            let mut powers = vec![x.clone()];
            for _ in 2..self.degree() {
                let next = self.mul(powers.last().unwrap(), &x);
                powers.push(next);
            }
            for c in 0..p_small.min(64) {
                for xj in &powers {
                    let e = self.add(xj, &self.constant(BigUint::from(c)));
                    if !self.is_square(&e) {
                        return e;
                    }
                }
            }
        }
        // Fall back to a full enumeration of coefficient vectors in base
        // min(p, 16); half of all nonzero elements qualify.
        let base = p_small.min(16);
        let mut counter: u64 = 1;
        loop {
            let mut digits = Vec::with_capacity(self.degree());
            let mut k = counter;
            for _ in 0..self.degree() {
                digits.push(BigUint::from(k % base));
                k /= base;
            }
            let e = self.from_coeffs(digits).expect("degree-length vector");
            if !self.is_square(&e) {
                return e;
            }
            counter += 1;
        }
    }

    fn sqrt_data(&self) -> &SqrtData {
        self.0.sqrt.get_or_init(|| {
            let q = self.order();
            if (q % 4u32) == BigUint::from(3u32) {
                return SqrtData {
                    kind: Kind::ThreeModFour((q + 1u32) >> 2),
                };
            }
            let mut t = q - 1u32;
            let mut s = 0;
            while t.is_even() {
                t >>= 1;
                s += 1;
            }
            let z = self.non_residue();
            let root_of_unity = self.pow(&z, &t);
            SqrtData {
                kind: Kind::TonelliShanks {
                    s,
                    half_t: (t - 1u32) >> 1,
                    root_of_unity,
                },
            }
        })
    }

    /// A square root of `a` if one exists, normalized by
    /// [`Field::canonical_sign`].
    pub fn sqrt(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return Some(self.zero());
        }
        if !self.is_square(a) {
            return None;
        }
        let root = match &self.sqrt_data().kind {
            Kind::ThreeModFour(e) => self.pow(a, e),
            Kind::TonelliShanks {
                s,
                half_t,
                root_of_unity,
            } => self.tonelli_shanks(a, *s, half_t, root_of_unity),
        };
        debug_assert_eq!(&self.square(&root), a);
        Some(self.canonical_sign(root))
    }

    fn tonelli_shanks(
        &self,
        a: &FieldElement,
        s: u64,
        half_t: &BigUint,
        root_of_unity: &FieldElement,
    ) -> FieldElement {
        let w = self.pow(a, half_t);
        let mut x = self.mul(a, &w); // a^((t+1)/2)
        let mut b = self.mul(&x, &w); // a^t
        let mut c = root_of_unity.clone();
        let mut m = s;
        while !self.is_one(&b) {
            let mut i = 1;
            let mut b2 = self.square(&b);
            while !self.is_one(&b2) {
                b2 = self.square(&b2);
                i += 1;
            }
            debug_assert!(i < m, "input was checked to be a square");
            let mut g = c;
            for _ in 0..(m - i - 1) {
                g = self.square(&g);
            }
            x = self.mul(&x, &g);
            c = self.square(&g);
            b = self.mul(&b, &c);
            m = i;
        }
        x
    }
}
