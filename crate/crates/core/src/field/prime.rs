//! Probable-prime testing for field characteristics.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Number of Miller-Rabin rounds used above 2^64. The witnesses are the
/// first `MILLER_RABIN_ROUNDS` primes, so the test is reproducible.
pub const MILLER_RABIN_ROUNDS: usize = 40;

/// Witness set that makes Miller-Rabin deterministic for all n < 3.3 * 10^24.
const DETERMINISTIC_BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn small_primes(count: usize) -> Vec<u32> {
    let mut primes = Vec::with_capacity(count);
    let mut candidate = 2u32;
    while primes.len() < count {
        if primes
            .iter()
            .take_while(|&&q| q * q <= candidate)
            .all(|&q| !candidate.is_multiple_of(q))
        {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

/// Returns true if `n` passes trial division and Miller-Rabin.
///
/// Below 2^64 the answer is exact. Above, a composite passes with probability
/// at most 4^-40 for a random n.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for q in small_primes(168) {
        let q = BigUint::from(q);
        if n == &q {
            return true;
        }
        if (n % &q).is_zero() {
            return false;
        }
    }

    let n_minus_one = n - 1u32;
    let mut d = n_minus_one.clone();
    let mut s = 0u64;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }

    let bases: Vec<u32> = if n.to_u64().is_some() {
        DETERMINISTIC_BASES.to_vec()
    } else {
        small_primes(MILLER_RABIN_ROUNDS)
    };

    'witness: for base in bases {
        let a = BigUint::from(base) % n;
        if a.is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
            if x.is_one() {
                return false;
            }
        }
        return false;
    }
    true
}
