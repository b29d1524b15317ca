//! Sparse multivariate polynomials with integer coefficients over the theta
//! coordinates a(u) and a^√3(u) (written b(u)), and the relation families
//! built from them.

mod eval;
mod families;
mod span;
mod text;

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::field::FieldError;
use crate::index::Index;

pub use eval::{evaluate, verify, Assignment, RelationCheck, VerificationReport};
pub use families::{
    mumford_relations, rm_bilinear_relations, rm_relations, split_product_relation,
    split_square_relations,
};
pub use span::{span_contains, span_rank};
pub use text::{parse_relations, serialize_relations};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelationError {
    #[error("no value assigned to {0}")]
    MissingVariable(VarRef),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("degree mismatch: target has degree {target:?}, set contains degree {found:?}")]
    DegreeMismatch {
        target: Option<u32>,
        found: Option<u32>,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown relation set {0:?}")]
    UnknownSet(String),
}

/// Which theta null point a variable refers to: `A` is the point itself,
/// `B` the point attached to the √3-pulled-back theta structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarRef {
    pub family: Family,
    pub index: Index,
}

impl VarRef {
    pub fn a(index: Index) -> Self {
        VarRef {
            family: Family::A,
            index,
        }
    }

    pub fn b(index: Index) -> Self {
        VarRef {
            family: Family::B,
            index,
        }
    }
}

impl fmt::Display for VarRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::A => 'a',
            Family::B => 'b',
        };
        write!(f, "{name}({},{})", self.index.i(), self.index.j())
    }
}

/// A power product of variables. Stored sorted by variable with positive
/// exponents.
///
/// Ordering is graded reverse lexicographic with a(0,0) > a(0,1) > ... >
/// a(3,3) > b(0,0) > ... : higher total degree is greater; within a degree,
/// the monomial with the smaller exponent in the last variable where the
/// two differ is greater.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(VarRef, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarRef) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (VarRef, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in powers {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn powers(&self) -> &[(VarRef, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// Degree in one family only.
    pub fn family_degree(&self, family: Family) -> u32 {
        self.0
            .iter()
            .filter(|(v, _)| v.family == family)
            .map(|&(_, e)| e)
            .sum()
    }

    fn exponent(&self, v: VarRef) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map_or(0, |k| self.0[k].1)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_powers(self.0.iter().chain(&other.0).copied())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let mut vars: Vec<VarRef> = self.0.iter().chain(&other.0).map(|&(v, _)| v).collect();
            vars.sort_unstable_by(|x, y| y.cmp(x));
            vars.dedup();
            vars.into_iter()
                .map(|v| other.exponent(v).cmp(&self.exponent(v)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial with exact integer coefficients. Zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::from_terms([(Monomial::one(), BigInt::from(c))])
    }

    pub fn var(v: VarRef) -> Self {
        Self::from_terms([(Monomial::var(v), BigInt::one())])
    }

    /// The coordinate a(i, j).
    pub fn a(i: i64, j: i64) -> Self {
        Self::var(VarRef::a(Index::new(i, j)))
    }

    /// The coordinate a^√3(i, j).
    pub fn b(i: i64, j: i64) -> Self {
        Self::var(VarRef::b(Index::new(i, j)))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut out = Polynomial::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the leading (greatest) monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common degree of all terms if the polynomial is homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    pub fn variables(&self) -> Vec<VarRef> {
        let mut vs: Vec<VarRef> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn scale(&self, k: &BigInt) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c * k)))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        (0..e).fold(Polynomial::constant(1), |acc, _| &acc * self)
    }

    /// Renames variables; colliding monomials are merged.
    pub fn substitute(&self, f: impl Fn(VarRef) -> VarRef) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| {
            (
                Monomial::from_powers(m.0.iter().map(|&(v, e)| (f(v), e))),
                c.clone(),
            )
        }))
    }

    /// Canonical form: integer content 1 and positive leading coefficient.
    pub fn normalize(&self) -> Polynomial {
        let Some((_, lead)) = self.leading() else {
            return Polynomial::zero();
        };
        let content = self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c));
        let divisor = if lead.is_negative() {
            -content
        } else {
            content
        };
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c / &divisor))
                .collect(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        *self == self.normalize()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul<Polynomial> for i64 {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        rhs.scale(&BigInt::from(self))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            if m.degree() == 0 {
                write!(f, "{sign}{}", c.abs())?;
            } else {
                write!(f, "{sign}{}*{m}", c.abs())?;
            }
        }
        Ok(())
    }
}

/// A named polynomial relation `poly = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub id: String,
    pub poly: Polynomial,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rel {}: {}", self.id, self.poly)
    }
}

/// Where a relation set came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationFamily {
    /// The 26 defining relations of level-4 theta null points.
    Mumford,
    /// The √3-correspondence in coordinates a and a^√3.
    RmBilinear,
    /// The correspondence after a^√3(v) = a(Mv) and a(u) = a(-u).
    Rm,
    /// The single quartic cutting out products of elliptic curves.
    SplitProduct,
    /// Squares of a single elliptic curve.
    SplitSquare,
    /// Read from a file.
    External,
}

impl RelationFamily {
    pub const GENERATED: [RelationFamily; 5] = [
        RelationFamily::Mumford,
        RelationFamily::Rm,
        RelationFamily::RmBilinear,
        RelationFamily::SplitProduct,
        RelationFamily::SplitSquare,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationFamily::Mumford => "mumford",
            RelationFamily::RmBilinear => "rm-bilinear",
            RelationFamily::Rm => "rm",
            RelationFamily::SplitProduct => "split-product",
            RelationFamily::SplitSquare => "split-square",
            RelationFamily::External => "external",
        }
    }

    /// Runs the generator for this family. `External` yields an empty set.
    pub fn generate(self) -> RelationSet {
        match self {
            RelationFamily::Mumford => mumford_relations(),
            RelationFamily::RmBilinear => rm_bilinear_relations(),
            RelationFamily::Rm => rm_relations(),
            RelationFamily::SplitProduct => {
                RelationSet::from_polys(self, "sp", [split_product_relation().poly])
            }
            RelationFamily::SplitSquare => split_square_relations(),
            RelationFamily::External => RelationSet::from_polys(self, "r", []),
        }
    }
}

impl FromStr for RelationFamily {
    type Err = RelationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::GENERATED
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| RelationError::UnknownSet(s.to_string()))
    }
}

impl fmt::Display for RelationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An ordered list of canonical, pairwise distinct, nonzero relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    family: RelationFamily,
    relations: Vec<Relation>,
}

impl RelationSet {
    /// Normalizes, drops zeros and repeats (first occurrence wins) and names
    /// the survivors `{prefix}1`, `{prefix}2`, ...
    pub fn from_polys(
        family: RelationFamily,
        prefix: &str,
        polys: impl IntoIterator<Item = Polynomial>,
    ) -> Self {
        let mut seen = std::collections::HashSet::new();
        let mut relations = Vec::new();
        for p in polys {
            let p = p.normalize();
            if p.is_zero() || !seen.insert(p.clone()) {
                continue;
            }
            relations.push(Relation {
                id: format!("{prefix}{}", relations.len() + 1),
                poly: p,
            });
        }
        RelationSet { family, relations }
    }

    /// Like [`RelationSet::from_polys`] but keeps the given ids.
    pub fn from_relations(
        family: RelationFamily,
        input: impl IntoIterator<Item = Relation>,
    ) -> Self {
        let mut seen = std::collections::HashSet::new();
        let relations = input
            .into_iter()
            .map(|r| Relation {
                id: r.id,
                poly: r.poly.normalize(),
            })
            .filter(|r| !r.poly.is_zero() && seen.insert(r.poly.clone()))
            .collect();
        RelationSet { family, relations }
    }

    pub fn family(&self) -> RelationFamily {
        self.family
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Relation> {
        self.relations.iter()
    }

    pub fn get(&self, id: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.id == id)
    }

    /// Whether the set contains `p` up to normalization.
    pub fn contains_poly(&self, p: &Polynomial) -> bool {
        let p = p.normalize();
        self.relations.iter().any(|r| r.poly == p)
    }
}

impl<'a> IntoIterator for &'a RelationSet {
    type Item = &'a Relation;
    type IntoIter = std::slice::Iter<'a, Relation>;
    fn into_iter(self) -> Self::IntoIter {
        self.relations.iter()
    }
}
