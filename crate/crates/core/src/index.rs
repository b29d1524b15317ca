//! The index group (Z/4Z)^2 labelling level-4 theta coordinates, its
//! 2-torsion subgroup {0,2}^2, and the triple set used by the √3
//! correspondence.

use std::fmt;

/// An element u = (i, j) of (Z/4Z)^2, components reduced to 0..=3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Index {
    i: u8,
    j: u8,
}

impl Index {
    pub const ZERO: Index = Index { i: 0, j: 0 };

    /// Reduces both components mod 4.
    pub fn new(i: i64, j: i64) -> Self {
        Index {
            i: i.rem_euclid(4) as u8,
            j: j.rem_euclid(4) as u8,
        }
    }

    pub fn i(self) -> u8 {
        self.i
    }

    pub fn j(self) -> u8 {
        self.j
    }

    /// All 16 indexes in lexicographic order.
    pub fn all() -> impl Iterator<Item = Index> {
        (0..16).map(|k| Index { i: k / 4, j: k % 4 })
    }

    /// The 2-torsion subgroup {0,2}^2.
    pub fn two_torsion() -> [Index; 4] {
        [
            Index::new(0, 0),
            Index::new(0, 2),
            Index::new(2, 0),
            Index::new(2, 2),
        ]
    }

    /// The ten representatives min(u, -u), in lexicographic order.
    pub fn symmetric_representatives() -> impl Iterator<Item = Index> {
        Index::all().filter(|u| *u == u.symmetric_representative())
    }

    pub fn add(self, other: Index) -> Index {
        Index::new((self.i + other.i) as i64, (self.j + other.j) as i64)
    }

    pub fn sub(self, other: Index) -> Index {
        self.add(other.neg())
    }

    pub fn scale(self, k: i64) -> Index {
        Index::new(k * self.i as i64, k * self.j as i64)
    }

    pub fn neg(self) -> Index {
        self.scale(-1)
    }

    /// Whether both components are even, i.e. u lies in {0,2}^2.
    pub fn is_two_torsion(self) -> bool {
        self.i.is_multiple_of(2) && self.j.is_multiple_of(2)
    }

    /// The matrix M = [[0, 3], [1, 0]] applied to u as a column vector:
    /// (i, j) -> (3j, i). M^2 = 3·I.
    pub fn apply_m(self) -> Index {
        Index::new(3 * self.j as i64, self.i as i64)
    }

    /// The lexicographically smaller of u and -u.
    pub fn symmetric_representative(self) -> Index {
        self.min(self.neg())
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// A triple (x, y, z) of indexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub x: Index,
    pub y: Index,
    pub z: Index,
}

/// The multiset {x - 2y, x + y - z, x + y + z}, stored sorted. Two triples
/// are related by a permutation matrix exactly when their keys agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TripleKey([Index; 3]);

impl TripleKey {
    pub fn members(&self) -> [Index; 3] {
        self.0
    }
}

impl Triple {
    pub fn new(x: Index, y: Index, z: Index) -> Self {
        Triple { x, y, z }
    }

    /// (x - 2y, x + y - z, x + y + z) in that order.
    pub fn derived(&self) -> [Index; 3] {
        let xy = self.x.add(self.y);
        [self.x.sub(self.y.scale(2)), xy.sub(self.z), xy.add(self.z)]
    }

    pub fn key(&self) -> TripleKey {
        let mut d = self.derived();
        d.sort();
        TripleKey(d)
    }

    /// Membership in S: all three derived indexes lie in {0,2}^2.
    pub fn in_s(&self) -> bool {
        self.derived().iter().all(|u| u.is_two_torsion())
    }
}

/// All members of S in lexicographic order of (x, y, z).
pub fn enumerate_s() -> Vec<Triple> {
    let mut out = Vec::with_capacity(256);
    for x in Index::all() {
        for y in Index::all() {
            for z in Index::all() {
                let t = Triple::new(x, y, z);
                if t.in_s() {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Unordered pairs of distinct members of S with the same x and the same
/// key, in lexicographic order of (first, second) with first < second.
pub fn equivalent_pairs() -> Vec<(Triple, Triple)> {
    let s = enumerate_s();
    let mut out = Vec::new();
    for (k, t1) in s.iter().enumerate() {
        let key = t1.key();
        for t2 in &s[k + 1..] {
            if t2.x == t1.x && t2.key() == key {
                out.push((*t1, *t2));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negation_and_m_examples() {
        assert_eq!(Index::new(0, 0).neg(), Index::new(0, 0));
        assert_eq!(Index::new(1, 3).neg(), Index::new(3, 1));
        assert_eq!(Index::new(2, 2).neg(), Index::new(2, 2));
        assert_eq!(Index::new(0, 0).apply_m(), Index::new(0, 0));
        assert_eq!(Index::new(1, 0).apply_m(), Index::new(0, 1));
        assert_eq!(Index::new(0, 1).apply_m(), Index::new(3, 0));
    }

    #[test]
    fn group_laws() {
        for u in Index::all() {
            assert_eq!(u.neg().neg(), u);
            assert_eq!(u.apply_m().apply_m(), u.scale(3));
            assert_eq!(u.add(u.neg()), Index::ZERO);
            let r = u.symmetric_representative();
            assert!(r == u || r == u.neg());
            assert!(r <= u && r <= u.neg());
        }
        assert_eq!(Index::all().count(), 16);
        assert_eq!(Index::symmetric_representatives().count(), 10);
    }

    #[test]
    fn membership_examples() {
        let t = |a: (i64, i64), b: (i64, i64), c: (i64, i64)| {
            Triple::new(
                Index::new(a.0, a.1),
                Index::new(b.0, b.1),
                Index::new(c.0, c.1),
            )
        };
        assert!(t((0, 0), (0, 0), (0, 0)).in_s());
        let member = t((2, 0), (1, 1), (1, 1));
        assert_eq!(
            member.derived(),
            [Index::new(0, 2), Index::new(2, 0), Index::new(0, 2)]
        );
        assert!(member.in_s());
        assert!(!t((1, 0), (0, 0), (0, 0)).in_s());
    }

    #[test]
    fn enumeration_is_sorted_and_filtered() {
        let s = enumerate_s();
        assert_eq!(s.len(), 256);
        assert_eq!(s[0], Triple::new(Index::ZERO, Index::ZERO, Index::ZERO));
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert!(s.iter().all(Triple::in_s));
        assert_eq!(enumerate_s(), s);
    }

    #[test]
    fn pairs_share_x_and_key() {
        let pairs = equivalent_pairs();
        for (a, b) in &pairs {
            assert_eq!(a.x, b.x);
            assert_eq!(a.key(), b.key());
            assert!(a < b);
        }
        assert_eq!(equivalent_pairs(), pairs);
    }
}
