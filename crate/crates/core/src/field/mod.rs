//! Exact arithmetic in a prime field F_p or a single extension F_p[x]/(f).
//!
//! A [`Field`] is a cheap handle (`Arc`) describing the arena; a
//! [`FieldElement`] is a bare coefficient vector and carries no reference to
//! its field. All arithmetic goes through `Field` methods, which assume their
//! inputs are members. Boundary code validates untrusted elements with
//! [`Field::check`].

mod poly;
pub mod prime;
mod sqrt;
mod text;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub use prime::is_probable_prime;
pub use text::{format_field_file, parse_field_file};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is even")]
    EvenCharacteristic(BigUint),
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(BigUint),
    #[error("extension modulus is not monic")]
    NotMonic,
    #[error("extension modulus must have degree at least 2, got {0}")]
    ModulusDegree(usize),
    #[error("only a single extension of the prime field is supported")]
    TowerTooDeep,
    #[error("extension modulus is reducible")]
    Reducible,
    #[error("element does not belong to this field")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("expected {expected} coefficients, found {found}")]
    CoefficientCountMismatch { expected: usize, found: usize },
    #[error("embedding image is not a root of the subfield modulus")]
    BadEmbedding,
}

/// Defining data of a degree-n extension F_p[name]/(modulus).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub name: String,
    /// n + 1 coefficients, constant term first, leading coefficient 1.
    pub modulus: Vec<BigUint>,
}

/// How to fold x^n back into lower degrees: x^n = sum_i (-f_i) x^i.
#[derive(Debug)]
enum Fold {
    /// f_i fits a machine word; add `f_i * (p - top)`.
    Small(usize, u64),
    /// general case; add `top * (-f_i mod p)`.
    Big(usize, BigUint),
}

#[derive(Debug)]
struct Inner {
    p: BigUint,
    extension: Option<Extension>,
    degree: usize,
    order: BigUint,
    folds: Vec<Fold>,
    sqrt: OnceLock<sqrt::SqrtData>,
    /// Row i holds the Frobenius image of x^i.
    frobenius: OnceLock<Vec<FieldElement>>,
}

/// A finite field F_q with q = p^n, n >= 1.
#[derive(Debug, Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.extension.as_ref().map(|e| &e.modulus)
                    == other.0.extension.as_ref().map(|e| &e.modulus))
    }
}

impl Eq for Field {}

/// Coefficients with respect to 1, x, ..., x^(n-1), each reduced mod p.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(Vec<BigUint>);

impl FieldElement {
    pub fn coeffs(&self) -> &[BigUint] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Residue if the element lies in the prime subfield.
    pub fn as_constant(&self) -> Option<&BigUint> {
        if self.0[1..].iter().all(Zero::is_zero) {
            Some(&self.0[0])
        } else {
            None
        }
    }
}

fn reduce_signed(v: &BigInt, p: &BigUint) -> BigUint {
    let m = v.mod_floor(&BigInt::from_biguint(Sign::Plus, p.clone()));
    m.to_biguint()
        .expect("mod_floor by a positive modulus is non-negative")
}

impl Field {
    /// The prime field F_p.
    pub fn prime(p: BigUint) -> Result<Self, FieldError> {
        if p.is_even() {
            return Err(FieldError::EvenCharacteristic(p));
        }
        if !is_probable_prime(&p) {
            return Err(FieldError::CompositeCharacteristic(p));
        }
        Ok(Self::build(p, None))
    }

    pub fn prime_u64(p: u64) -> Result<Self, FieldError> {
        Self::prime(BigUint::from(p))
    }

    fn build(p: BigUint, extension: Option<Extension>) -> Self {
        let degree = extension.as_ref().map_or(1, |e| e.modulus.len() - 1);
        let order = num_traits::pow(p.clone(), degree);
        let folds = extension
            .as_ref()
            .map(|e| {
                e.modulus[..degree]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| match c.to_u64() {
                        Some(small) => Fold::Small(i, small),
                        None => Fold::Big(i, &p - c),
                    })
                    .collect()
            })
            .unwrap_or_default();
        Field(Arc::new(Inner {
            p,
            extension,
            degree,
            order,
            folds,
            sqrt: OnceLock::new(),
            frobenius: OnceLock::new(),
        }))
    }

    /// F_p[name]/(modulus), `modulus` given constant term first. With
    /// `check_irreducible` the modulus is tested with Rabin's criterion;
    /// otherwise it is trusted.
    pub fn extend(
        &self,
        name: &str,
        modulus: &[BigInt],
        check_irreducible: bool,
    ) -> Result<Self, FieldError> {
        if self.0.extension.is_some() {
            return Err(FieldError::TowerTooDeep);
        }
        let p = &self.0.p;
        let modulus: Vec<BigUint> = modulus.iter().map(|c| reduce_signed(c, p)).collect();
        if modulus.len() < 3 {
            return Err(FieldError::ModulusDegree(modulus.len().saturating_sub(1)));
        }
        if !modulus.last().unwrap().is_one() {
            return Err(FieldError::NotMonic);
        }
        let field = Self::build(
            p.clone(),
            Some(Extension {
                name: name.to_string(),
                modulus,
            }),
        );
        if check_irreducible && !field.modulus_is_irreducible() {
            return Err(FieldError::Reducible);
        }
        Ok(field)
    }

    /// Rabin: f of degree n is irreducible iff x^(p^n) = x mod f and
    /// gcd(x^(p^(n/r)) - x, f) = 1 for every prime r | n.
    fn modulus_is_irreducible(&self) -> bool {
        let n = self.0.degree;
        let p = &self.0.p;
        let modulus = &self.0.extension.as_ref().unwrap().modulus;
        let x = self.generator().unwrap();
        // frobenius_powers[k] = x^(p^k) mod f
        let mut frobenius_powers = vec![x.clone()];
        for _ in 0..n {
            let next = self.pow(frobenius_powers.last().unwrap(), p);
            frobenius_powers.push(next);
        }
        if frobenius_powers[n] != x {
            return false;
        }
        let prime_divisors =
            (2..=n).filter(|r| n.is_multiple_of(*r) && (2..*r).all(|d| r % d != 0));
        for r in prime_divisors {
            let h = self.sub(&frobenius_powers[n / r], &x);
            if poly::gcd(&h.0, modulus, p).len() != 1 {
                return false;
            }
        }
        true
    }

    pub fn characteristic(&self) -> &BigUint {
        &self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// q = p^n.
    pub fn order(&self) -> &BigUint {
        &self.0.order
    }

    pub fn extension(&self) -> Option<&Extension> {
        self.0.extension.as_ref()
    }

    /// The prime field underneath (itself if already prime).
    pub fn prime_subfield(&self) -> Field {
        if self.0.extension.is_none() {
            self.clone()
        } else {
            Self::build(self.0.p.clone(), None)
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(vec![BigUint::zero(); self.0.degree])
    }

    pub fn one(&self) -> FieldElement {
        self.constant(BigUint::one())
    }

    pub fn constant(&self, c: BigUint) -> FieldElement {
        let mut v = vec![BigUint::zero(); self.0.degree];
        v[0] = c % &self.0.p;
        FieldElement(v)
    }

    pub fn from_i64(&self, c: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(c))
    }

    pub fn from_bigint(&self, c: &BigInt) -> FieldElement {
        self.constant(reduce_signed(c, &self.0.p))
    }

    /// Element with the given coefficients, reduced mod p.
    pub fn from_coeffs(&self, coeffs: Vec<BigUint>) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.0.degree {
            return Err(FieldError::CoefficientCountMismatch {
                expected: self.0.degree,
                found: coeffs.len(),
            });
        }
        Ok(FieldElement(
            coeffs.into_iter().map(|c| c % &self.0.p).collect(),
        ))
    }

    /// The class of the extension variable, `None` for a prime field.
    pub fn generator(&self) -> Option<FieldElement> {
        self.0.extension.as_ref()?;
        let mut v = vec![BigUint::zero(); self.0.degree];
        v[1] = BigUint::one();
        Some(FieldElement(v))
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        a.0.len() == self.0.degree && a.0.iter().all(|c| c < &self.0.p)
    }

    pub fn check(&self, a: &FieldElement) -> Result<(), FieldError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn is_one(&self, a: &FieldElement) -> bool {
        a.0[0].is_one() && a.0[1..].iter().all(Zero::is_zero)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = &self.0.p;
        FieldElement(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| {
                    let s = x + y;
                    if &s >= p {
                        s - p
                    } else {
                        s
                    }
                })
                .collect(),
        )
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = &self.0.p;
        FieldElement(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| if x >= y { x - y } else { p - (y - x) })
                .collect(),
        )
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = &self.0.p;
        FieldElement(
            a.0.iter()
                .map(|x| if x.is_zero() { BigUint::zero() } else { p - x })
                .collect(),
        )
    }

    /// Multiplication by a small signed integer.
    pub fn scale(&self, a: &FieldElement, k: i64) -> FieldElement {
        let p = &self.0.p;
        let m = reduce_signed(&BigInt::from(k), p);
        FieldElement(a.0.iter().map(|x| (x * &m) % p).collect())
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let n = self.0.degree;
        if n == 1 {
            return FieldElement(vec![(&a.0[0] * &b.0[0]) % &self.0.p]);
        }
        let mut prod = vec![BigUint::zero(); 2 * n - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.fold(prod)
    }

    pub fn square(&self, a: &FieldElement) -> FieldElement {
        let n = self.0.degree;
        if n == 1 {
            return FieldElement(vec![(&a.0[0] * &a.0[0]) % &self.0.p]);
        }
        let mut prod = vec![BigUint::zero(); 2 * n - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            prod[2 * i] += x * x;
            for (j, y) in a.0.iter().enumerate().skip(i + 1) {
                if !y.is_zero() {
                    prod[i + j] += (x * y) << 1u32;
                }
            }
        }
        self.fold(prod)
    }

    /// Reduces an unreduced product of length 2n-1 modulo (p, f).
    fn fold(&self, mut prod: Vec<BigUint>) -> FieldElement {
        let n = self.0.degree;
        let p = &self.0.p;
        for k in (n..prod.len()).rev() {
            let top = std::mem::take(&mut prod[k]) % p;
            if top.is_zero() {
                continue;
            }
            for fold in &self.0.folds {
                match fold {
                    Fold::Small(i, c) => prod[k - n + i] += (p - &top) * *c,
                    Fold::Big(i, c) => prod[k - n + i] += &top * c,
                }
            }
        }
        prod.truncate(n);
        FieldElement(prod.into_iter().map(|c| c % p).collect())
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let p = &self.0.p;
        match &self.0.extension {
            None => Ok(FieldElement(vec![a.0[0]
                .modinv(p)
                .ok_or(FieldError::DivisionByZero)?])),
            Some(ext) => {
                let mut inv =
                    poly::inverse_mod(&a.0, &ext.modulus, p).ok_or(FieldError::DivisionByZero)?;
                inv.resize(self.0.degree, BigUint::zero());
                Ok(FieldElement(inv))
            }
        }
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// a^e by left-to-right sliding window (width 4).
    pub fn pow(&self, a: &FieldElement, e: &BigUint) -> FieldElement {
        if e.is_zero() {
            return self.one();
        }
        if self.0.degree == 1 {
            return FieldElement(vec![a.0[0].modpow(e, &self.0.p)]);
        }
        const WIDTH: u64 = 4;
        // odd[k] = a^(2k+1)
        let a2 = self.square(a);
        let mut odd = vec![a.clone()];
        for k in 1..(1usize << (WIDTH - 1)) {
            let next = self.mul(&odd[k - 1], &a2);
            odd.push(next);
        }
        let mut acc = self.one();
        let mut i = e.bits() as i64 - 1;
        while i >= 0 {
            if !e.bit(i as u64) {
                acc = self.square(&acc);
                i -= 1;
                continue;
            }
            // longest window e[i..=j] of width <= WIDTH ending in a set bit
            let mut j = (i - WIDTH as i64 + 1).max(0);
            while !e.bit(j as u64) {
                j += 1;
            }
            let mut window = 0usize;
            for b in (j..=i).rev() {
                window = (window << 1) | e.bit(b as u64) as usize;
            }
            for _ in j..=i {
                acc = self.square(&acc);
            }
            acc = self.mul(&acc, &odd[window >> 1]);
            i = j - 1;
        }
        acc
    }

    pub fn pow_u64(&self, a: &FieldElement, e: u64) -> FieldElement {
        self.pow(a, &BigUint::from(e))
    }

    fn frobenius_table(&self) -> &[FieldElement] {
        self.0.frobenius.get_or_init(|| {
            let n = self.0.degree;
            let x = self
                .generator()
                .expect("frobenius table only for extensions");
            let xp = self.pow(&x, &self.0.p);
            let mut rows = vec![self.one()];
            for i in 1..n {
                let next = self.mul(&rows[i - 1], &xp);
                rows.push(next);
            }
            rows
        })
    }

    /// The p-power Frobenius a -> a^p.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        if self.0.degree == 1 {
            return a.clone();
        }
        let p = &self.0.p;
        let table = self.frobenius_table();
        let mut acc = vec![BigUint::zero(); self.0.degree];
        for (c, row) in a.0.iter().zip(table) {
            if c.is_zero() {
                continue;
            }
            for (slot, r) in acc.iter_mut().zip(&row.0) {
                *slot += c * r;
            }
        }
        FieldElement(acc.into_iter().map(|c| c % p).collect())
    }

    /// Norm down to F_p: the product of all Galois conjugates.
    pub fn norm(&self, a: &FieldElement) -> BigUint {
        let mut conj = a.clone();
        let mut acc = a.clone();
        for _ in 1..self.0.degree {
            conj = self.frobenius(&conj);
            acc = self.mul(&acc, &conj);
        }
        debug_assert!(acc.as_constant().is_some(), "norm must lie in F_p");
        acc.0[0].clone()
    }

    /// Euler's criterion a^((q-1)/2) = 1, evaluated through the norm:
    /// a^((q-1)/2) = N(a)^((p-1)/2).
    pub fn is_square(&self, a: &FieldElement) -> bool {
        if a.is_zero() {
            return true;
        }
        let p = &self.0.p;
        let n = if self.0.degree == 1 {
            a.0[0].clone()
        } else {
            self.norm(a)
        };
        n.modpow(&((p - 1u32) >> 1), p).is_one()
    }

    /// Of {r, -r}, the one whose coefficient vector read from the top
    /// coefficient down is lexicographically smaller.
    pub fn canonical_sign(&self, r: FieldElement) -> FieldElement {
        let minus = self.neg(&r);
        if minus.0.iter().rev().lt(r.0.iter().rev()) {
            minus
        } else {
            r
        }
    }

    /// Maps `F_p[y]/(g)` into `self` by sending y to `image`, which must be a
    /// root of g in `self`.
    pub fn embedding(&self, sub: &Field, image: FieldElement) -> Result<Embedding, FieldError> {
        self.check(&image)?;
        if sub.characteristic() != self.characteristic() || sub.degree() > self.degree() {
            return Err(FieldError::BadEmbedding);
        }
        let embedding = Embedding {
            target: self.clone(),
            image,
        };
        if let Some(ext) = sub.extension() {
            let g = FieldElement({
                let mut v = ext.modulus.clone();
                v.resize(v.len().max(self.degree()), BigUint::zero());
                v
            });
            if !embedding.evaluate_poly(&g.0).is_zero() {
                return Err(FieldError::BadEmbedding);
            }
        }
        Ok(embedding)
    }
}

/// A field homomorphism `F_p[y]/(g) -> F`, determined by the image of y.
#[derive(Debug, Clone)]
pub struct Embedding {
    target: Field,
    image: FieldElement,
}

impl Embedding {
    fn evaluate_poly(&self, coeffs: &[BigUint]) -> FieldElement {
        let f = &self.target;
        let mut acc = f.zero();
        for c in coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, &self.image), &f.constant(c.clone()));
        }
        acc
    }

    pub fn apply(&self, a: &FieldElement) -> FieldElement {
        self.evaluate_poly(a.coeffs())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.extension {
            None => write!(f, "F_{}", self.0.p),
            Some(ext) => write!(f, "F_{}[{}]/(deg {})", self.0.p, ext.name, self.0.degree),
        }
    }
}
