//! Integer helpers: generalized binomials, Euler's totient, primality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::Error;

/// Generalized binomial coefficient `n (n-1) ... (n-k+1) / k!`, defined for
/// every integer `n` and every `k >= 0`.
pub fn binomial(n: i64, k: i64) -> Result<BigInt, Error> {
    if k < 0 {
        return Err(Error::Argument(format!("binomial({n}, {k}): negative k")));
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        // acc = C(n, j) here; the running quotient stays integral
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    Ok(acc)
}

/// [`binomial`] for callers that know the value fits in an `i64`.
pub(crate) fn binom(n: i64, k: i64) -> i64 {
    if k < 0 {
        return 0;
    }
    binomial(n, k)
        .ok()
        .and_then(|b| b.to_i64())
        .expect("binomial fits in i64")
}

/// Number of `1 <= i <= d` with `gcd(i, d) = 1`.
pub fn euler_phi(d: i64) -> Result<i64, Error> {
    if d <= 0 {
        return Err(Error::Argument(format!("euler_phi({d}): argument must be positive")));
    }
    let mut n = d;
    let mut phi = d;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    Ok(phi)
}

#[cfg(test)]
pub(crate) fn phi(d: u64) -> u64 {
    euler_phi(d as i64).expect("positive") as u64
}

pub fn is_prime(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Divisors of `n` in increasing order.
pub(crate) fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 3).unwrap(), BigInt::from(10));
        assert_eq!(binomial(2, 3).unwrap(), BigInt::from(0));
        assert_eq!(binomial(-2, 2).unwrap(), BigInt::from(3));
        assert_eq!(binomial(-1, 5).unwrap(), BigInt::from(-1));
        assert_eq!(binomial(7, 0).unwrap(), BigInt::from(1));
        assert!(binomial(3, -1).is_err());
    }

    #[test]
    fn pascal_rule() {
        for n in -20..=20 {
            for k in 1..=20 {
                assert_eq!(
                    binomial(n, k).unwrap(),
                    binomial(n - 1, k - 1).unwrap() + binomial(n - 1, k).unwrap(),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(13).unwrap(), 12);
        // enumerate residues coprime to 6
        let brute = (1..=6).filter(|i| gcd(*i, 6) == 1).count() as i64;
        assert_eq!(euler_phi(6).unwrap(), brute);
        assert!(euler_phi(0).is_err());
        assert!(euler_phi(-3).is_err());
    }

    #[test]
    fn phi_matches_enumeration_and_is_multiplicative() {
        for d in 1..=100i64 {
            let brute = (1..=d).filter(|i| gcd(*i, d) == 1).count() as i64;
            assert_eq!(euler_phi(d).unwrap(), brute);
        }
        for a in 1..=100i64 {
            for b in 1..=100i64 {
                if gcd(a, b) == 1 && a * b <= 10_000 {
                    assert_eq!(
                        euler_phi(a * b).unwrap(),
                        euler_phi(a).unwrap() * euler_phi(b).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|d| is_prime(*d)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
