//! Eigenspace Hodge numbers on `(P^1)^n` by Künneth.
//!
//! On a factor with `s` log points and twist `t`, the eigensheaf pieces are
//! `O(-t)` in form degree 0 and `Omega^1(log S)(-t) = O(s - 2 - t)` in form
//! degree 1. Their `h^0`, `h^1` are read off directly, so no vanishing
//! theorem is needed and every bidegree is exact.

use crate::algebra::number::binom;
use crate::cover::{log_support, twist_vector, Base, CoverSpec};
use crate::Error;

use super::{EigenHodgeTable, HodgeBlock, Provenance};

fn h0_p1(m: i64) -> i64 {
    (m + 1).max(0)
}

fn h1_p1(m: i64) -> i64 {
    (-m - 1).max(0)
}

/// The table of a cover of `(P^1)^n`.
pub fn hodge_product(spec: &CoverSpec) -> Result<EigenHodgeTable, Error> {
    let Base::ProductP1 { points_per_factor } = spec.base() else {
        return Err(Error::Argument("Künneth route needs a product-of-lines base".into()));
    };
    let n = points_per_factor.len();
    let factors = spec.base().component_factors();
    let mut blocks = Vec::new();
    for chi in spec.characters() {
        let t = twist_vector(spec, &chi)?;
        let support = log_support(spec, &chi);
        let mut s = vec![0i64; n];
        for j in support.iter() {
            s[factors[j]] += 1;
        }
        // running product of per-factor polynomials in (form degree, cohomological degree)
        let mut poly = vec![vec![0i64; n + 1]; n + 1];
        poly[0][0] = 1;
        for f in 0..n {
            let o = -t[f];
            let omega = s[f] - 2 - t[f];
            let local = [[h0_p1(o), h1_p1(o)], [h0_p1(omega), h1_p1(omega)]];
            let mut next = vec![vec![0i64; n + 1]; n + 1];
            for p in 0..=f {
                for q in 0..=f {
                    if poly[p][q] == 0 {
                        continue;
                    }
                    for (e, row) in local.iter().enumerate() {
                        for (dq, &c) in row.iter().enumerate() {
                            next[p + e][q + dq] += poly[p][q] * c;
                        }
                    }
                }
            }
            poly = next;
        }
        blocks.push(HodgeBlock { support: support.len(), character: chi, provenance: Provenance::Kunneth, h: poly });
    }
    EigenHodgeTable::new(n, blocks)
}

/// Degree-`d` cyclic cover of `(P^1)^n` with `d` points on every factor.
pub fn hodge_product_p1(n: usize, d: u64) -> Result<EigenHodgeTable, Error> {
    if n == 0 || d < 2 {
        return Err(Error::Argument(format!("need n >= 1 and d >= 2, got n={n}, d={d}")));
    }
    let spec = CoverSpec::cyclic_product(vec![d as usize; n], d)?;
    hodge_product(&spec)
}

/// Coefficients of `chi_(n,i)(y) = (1 - i + (d - i - 1) y)^n`, lowest first:
/// the generating function of `chi(Omega^k(log D) (x) L^(-i))` on `(P^1)^n`.
pub fn product_chi_polynomial(n: usize, d: i64, i: i64) -> Vec<i64> {
    (0..=n)
        .map(|k| binom(n as i64, k as i64) * (d - i - 1).pow(k as u32) * (1 - i).pow((n - k) as u32))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_matches_kunneth() {
        for d in 2..=7u64 {
            for n in 1..=4usize {
                let table = hodge_product_p1(n, d).unwrap();
                for (i, block) in table.blocks().iter().enumerate().skip(1) {
                    let chi = product_chi_polynomial(n, d as i64, i as i64);
                    for k in 0..=n {
                        let sign = if (n - k) % 2 == 0 { 1 } else { -1 };
                        assert_eq!(block.h[k][n - k], sign * chi[k], "d={d} n={n} i={i} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn small_cases() {
        let t = hodge_product_p1(1, 3).unwrap();
        assert_eq!(t.blocks()[2].h, vec![vec![0, 1], vec![0, 0]]);
        assert_eq!(t.blocks()[0].h, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(hodge_product_p1(2, 3).unwrap().nontrivial_total(), 2);
        assert_eq!(product_chi_polynomial(1, 3, 2), vec![-1, 0]);
    }

    #[test]
    fn trivial_block_is_product_of_lines() {
        let t = hodge_product_p1(3, 4).unwrap();
        let h = &t.blocks()[0].h;
        for p in 0..=3 {
            for q in 0..=3 {
                assert_eq!(h[p][q], if p == q { binom(3, p as i64) } else { 0 });
            }
        }
    }
}
