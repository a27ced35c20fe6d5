//! Truncated bivariate power series in `y`, `z` over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::number::binomial;
use super::rational::Rational;

/// The two binomial bases used by the generating-function engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesBase {
    /// `1 + y z`
    OnePlusYz,
    /// `1 - z`
    OneMinusZ,
}

/// A power series `sum c[a][b] y^a z^b` truncated at `y^max_y`, `z^max_z`.
///
/// Every product and sum is truncated to the same orders; mixing series of
/// different orders is a logic error and panics.
#[derive(Clone, PartialEq, Eq)]
pub struct BiSeries {
    max_y: usize,
    max_z: usize,
    coeffs: Vec<Rational>,
}

impl BiSeries {
    pub fn zero(max_y: usize, max_z: usize) -> Self {
        BiSeries {
            max_y,
            max_z,
            coeffs: vec![Rational::zero(); (max_y + 1) * (max_z + 1)],
        }
    }

    pub fn one(max_y: usize, max_z: usize) -> Self {
        Self::monomial(max_y, max_z, 0, 0, Rational::one())
    }

    /// `c y^a z^b`, or zero if the monomial is beyond the truncation.
    pub fn monomial(max_y: usize, max_z: usize, a: usize, b: usize, c: Rational) -> Self {
        let mut s = Self::zero(max_y, max_z);
        if a <= max_y && b <= max_z {
            s.coeffs[a * (max_z + 1) + b] = c;
        }
        s
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.max_y, self.max_z)
    }

    /// Coefficient of `y^a z^b`; zero outside the truncation window.
    pub fn coeff(&self, a: usize, b: usize) -> Rational {
        if a <= self.max_y && b <= self.max_z {
            self.coeffs[a * (self.max_z + 1) + b].clone()
        } else {
            Rational::zero()
        }
    }

    fn slot(&mut self, a: usize, b: usize) -> &mut Rational {
        &mut self.coeffs[a * (self.max_z + 1) + b]
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BiSeries {
            max_y: self.max_y,
            max_z: self.max_z,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `base^exponent` for any integer exponent, via generalized binomials.
    pub fn binomial_power(base: SeriesBase, exponent: i64, max_y: usize, max_z: usize) -> Self {
        let mut s = Self::zero(max_y, max_z);
        match base {
            SeriesBase::OnePlusYz => {
                for j in 0..=max_y.min(max_z) {
                    let c = binomial(exponent, j as i64).expect("j >= 0");
                    *s.slot(j, j) = Rational::from(c);
                }
            }
            SeriesBase::OneMinusZ => {
                for j in 0..=max_z {
                    let c = binomial(exponent, j as i64).expect("j >= 0");
                    let c = if j % 2 == 1 { -c } else { c };
                    *s.slot(0, j) = Rational::from(c);
                }
            }
        }
        s
    }

    fn check_orders(&self, other: &Self) {
        assert_eq!(
            self.orders(),
            other.orders(),
            "series truncation orders must agree"
        );
    }
}

impl Add<&BiSeries> for &BiSeries {
    type Output = BiSeries;
    fn add(self, rhs: &BiSeries) -> BiSeries {
        self.check_orders(rhs);
        BiSeries {
            max_y: self.max_y,
            max_z: self.max_z,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&BiSeries> for &BiSeries {
    type Output = BiSeries;
    fn sub(self, rhs: &BiSeries) -> BiSeries {
        self + &(-rhs)
    }
}

impl Neg for &BiSeries {
    type Output = BiSeries;
    fn neg(self) -> BiSeries {
        self.scale(&Rational::from(-1))
    }
}

impl Mul<&BiSeries> for &BiSeries {
    type Output = BiSeries;
    fn mul(self, rhs: &BiSeries) -> BiSeries {
        self.check_orders(rhs);
        let mut out = BiSeries::zero(self.max_y, self.max_z);
        for a1 in 0..=self.max_y {
            for b1 in 0..=self.max_z {
                let c1 = &self.coeffs[a1 * (self.max_z + 1) + b1];
                if c1.is_zero() {
                    continue;
                }
                for a2 in 0..=(self.max_y - a1) {
                    for b2 in 0..=(self.max_z - b1) {
                        let c2 = &rhs.coeffs[a2 * (self.max_z + 1) + b2];
                        if !c2.is_zero() {
                            *out.slot(a1 + a2, b1 + b2) += c1 * c2;
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for a in 0..=self.max_y {
            for b in 0..=self.max_z {
                let c = self.coeff(a, b);
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "({c})y^{a}z^{b}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(y^{}, z^{})", self.max_y + 1, self.max_z + 1)
    }
}
