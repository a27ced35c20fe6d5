//! Elements of cyclotomic fields `Q(zeta_N)` in the power basis
//! `1, zeta, ..., zeta^(phi(N)-1)`.
//!
//! Elements of different conductors can be combined: both operands are
//! embedded into the field of the least common multiple first.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use super::number::{divisors, gcd, lcm};
use super::rational::Rational;
use crate::Error;

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest degree
/// first. Monic of degree `phi(n)`.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cache lock").get(&n) {
        return p.clone();
    }
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    // x^n - 1 divided by every Phi_d, d | n, d < n
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d < n {
            num = divide_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    let p = Arc::new(num);
    cache.lock().expect("cache lock").insert(n, p.clone());
    p
}

/// Exact quotient of `a` by the monic `b`; the remainder must vanish.
fn divide_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let dq = rem.len() - 1 - db;
    let mut q = vec![0i64; dq + 1];
    for k in (0..=dq).rev() {
        let c = rem[k + db];
        q[k] = c;
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= c * bj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// An element of `Q(zeta_N)`.
#[derive(Clone)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    /// Build from power-basis coefficients; `coeffs` may be any length and is
    /// reduced modulo the cyclotomic polynomial.
    pub fn from_coeffs(conductor: u64, coeffs: Vec<Rational>) -> Result<Self, Error> {
        if conductor == 0 {
            return Err(Error::Argument("cyclotomic conductor must be positive".into()));
        }
        Ok(Self::reduce(conductor, coeffs))
    }

    pub fn rational(conductor: u64, q: Rational) -> Self {
        Self::reduce(conductor, vec![q])
    }

    pub fn zero(conductor: u64) -> Self {
        Self::rational(conductor, Rational::zero())
    }

    pub fn one(conductor: u64) -> Self {
        Self::rational(conductor, Rational::one())
    }

    /// `zeta_N^k` for any integer `k`.
    pub fn zeta_pow(conductor: u64, k: i64) -> Self {
        let e = k.rem_euclid(conductor as i64) as usize;
        let mut c = vec![Rational::zero(); e + 1];
        c[e] = Rational::one();
        Self::reduce(conductor, c)
    }

    fn reduce(conductor: u64, mut c: Vec<Rational>) -> Self {
        let p = cyclotomic_polynomial(conductor);
        let deg = p.len() - 1;
        // fold x^N = 1 first so the polynomial division below stays short
        let n = conductor as usize;
        if c.len() > n {
            for k in (n..c.len()).rev() {
                let v = std::mem::take(&mut c[k]);
                c[k % n] += v;
            }
            c.truncate(n);
        }
        for k in (deg..c.len()).rev() {
            let lead = std::mem::take(&mut c[k]);
            if lead.is_zero() {
                continue;
            }
            for (j, pj) in p.iter().enumerate().take(deg) {
                if *pj != 0 {
                    c[k - deg + j] -= &(&lead * &Rational::from(*pj));
                }
            }
        }
        c.resize(deg, Rational::zero());
        Cyclotomic { conductor, coeffs: c }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// `Some(q)` when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(Rational::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Image in `Q(zeta_M)` for a multiple `M` of the conductor.
    pub fn embed(&self, m: u64) -> Result<Self, Error> {
        if m == 0 || !m.is_multiple_of(self.conductor) {
            return Err(Error::Argument(format!(
                "cannot embed conductor {} into {m}",
                self.conductor
            )));
        }
        let step = (m / self.conductor) as usize;
        let mut c = vec![Rational::zero(); step * self.coeffs.len().max(1)];
        for (k, x) in self.coeffs.iter().enumerate() {
            c[k * step] = x.clone();
        }
        Ok(Self::reduce(m, c))
    }

    /// The automorphism `zeta_N -> zeta_N^t`, for `t` coprime to `N`.
    pub fn galois_conjugate(&self, t: i64) -> Result<Self, Error> {
        let n = self.conductor as i64;
        if gcd(t, n) != 1 {
            return Err(Error::Argument(format!(
                "galois_conjugate: {t} is not coprime to the conductor {n}"
            )));
        }
        let mut c = vec![Rational::zero(); self.conductor as usize];
        for (k, x) in self.coeffs.iter().enumerate() {
            let e = (k as i64 * t).rem_euclid(n) as usize;
            c[e] += x;
        }
        Ok(Self::reduce(self.conductor, c))
    }

    /// Complex conjugate, i.e. the automorphism `t = -1`.
    pub fn conj(&self) -> Self {
        self.galois_conjugate(-1).expect("-1 is a unit")
    }

    fn lift_pair(&self, other: &Self) -> (Self, Self) {
        if self.conductor == other.conductor {
            return (self.clone(), other.clone());
        }
        let m = lcm(self.conductor, other.conductor);
        (self.embed(m).expect("multiple"), other.embed(m).expect("multiple"))
    }

    /// Trace from `Q(zeta_N)` down to `Q`.
    pub fn trace(&self) -> Rational {
        let n = self.conductor as i64;
        (1..=n.max(1))
            .filter(|&t| gcd(t, n) == 1)
            .map(|t| self.galois_conjugate(t).expect("unit").coeffs[0].clone())
            .sum()
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.lift_pair(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Add<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.lift_pair(rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Cyclotomic { conductor: a.conductor, coeffs }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
        }
    }
}

impl Sub<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Mul<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.lift_pair(rhs);
        let mut c = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        Cyclotomic::reduce(a.conductor, c)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cyclotomic {
    /// `1 - 2 z5^3` style: `zN` is the primitive `N`-th root in the power basis.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let monomial = match k {
                0 => String::new(),
                1 => format!("z{}", self.conductor),
                _ => format!("z{}^{k}", self.conductor),
            };
            let (sign, mag) = if c.is_negative() { ("-", c.abs()) } else { ("+", c.clone()) };
            let coeff = match (k, mag.is_integer() && mag == Rational::one()) {
                (0, _) => mag.to_string(),
                (_, true) => String::new(),
                _ if mag.is_integer() => format!("{mag} "),
                _ => format!("({mag}) "),
            };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(&coeff);
            out.push_str(&monomial);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::number::phi;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for n in 1..=40 {
            assert_eq!(cyclotomic_polynomial(n).len() as u64 - 1, phi(n));
        }
    }

    #[test]
    fn conjugate_examples() {
        let z4 = Cyclotomic::zeta_pow(4, 1);
        assert_eq!(z4.galois_conjugate(3).unwrap(), -&z4);

        // 1 + zeta_3 -> 1 + zeta_3^2 = -zeta_3
        let z3 = Cyclotomic::zeta_pow(3, 1);
        let x = &Cyclotomic::one(3) + &z3;
        assert_eq!(x.galois_conjugate(2).unwrap(), -&z3);

        let q = Cyclotomic::rational(7, Rational::ratio(5, 3));
        for t in 1..7 {
            assert_eq!(q.galois_conjugate(t).unwrap(), q);
        }
        assert!(z4.galois_conjugate(2).is_err());
    }

    #[test]
    fn roots_of_unity_multiply() {
        for n in 1..=15u64 {
            for a in -3..(n as i64 + 3) {
                for b in 0..n as i64 {
                    assert_eq!(
                        &Cyclotomic::zeta_pow(n, a) * &Cyclotomic::zeta_pow(n, b),
                        Cyclotomic::zeta_pow(n, a + b)
                    );
                }
            }
            // 1 + zeta + ... + zeta^(n-1) = 0 for n > 1
            let s = (0..n as i64).fold(Cyclotomic::zero(n), |acc, k| &acc + &Cyclotomic::zeta_pow(n, k));
            assert_eq!(s.is_zero(), n > 1);
        }
    }

    #[test]
    fn mixed_conductors() {
        // zeta_6 = -zeta_3^2
        let z6 = Cyclotomic::zeta_pow(6, 1);
        let z3sq = Cyclotomic::zeta_pow(3, 2);
        assert_eq!(z6, -&z3sq);
        assert_eq!((&z6 + &z3sq).as_rational(), Some(Rational::zero()));
        // i^2 = -1 is rational
        let i = Cyclotomic::zeta_pow(4, 1);
        assert_eq!((&i * &i).as_rational(), Some(Rational::from(-1)));
    }

    #[test]
    fn conjugation_composes() {
        let n = 12;
        let x = Cyclotomic::from_coeffs(
            n,
            vec![Rational::ratio(1, 2), Rational::from(3), Rational::from(-1), Rational::ratio(2, 5)],
        )
        .unwrap();
        let units: Vec<i64> = (1..12).filter(|t| gcd(*t, 12) == 1).collect();
        for &t in &units {
            for &s in &units {
                let lhs = x.galois_conjugate(t).unwrap().galois_conjugate(s).unwrap();
                let rhs = x.galois_conjugate((t * s) % 12).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn trace_of_roots() {
        // trace of zeta_p is -1 for p prime
        assert_eq!(Cyclotomic::zeta_pow(5, 1).trace(), Rational::from(-1));
        assert_eq!(Cyclotomic::one(5).trace(), Rational::from(4));
    }
}
