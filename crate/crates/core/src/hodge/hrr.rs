//! The Chern-character route: Hirzebruch–Riemann–Roch on `P^M` for every
//! stratum of the arrangement, assembled from the weight-zero K-class
//!
//! `[W_0] = sum_I (-1)^|I| Omega^(p-|I|)_(D_I)(log D|_(D_I)) (x) V_chi`,
//!
//! `I` running over sets of zero-residue components. Log forms on a stratum
//! are unwound by the residue filtration, so every term ends up as
//! `chi(P^M, Omega^m (x) V_chi)` on a closed flat `P^M`.

use std::collections::HashMap;
use std::ops::{Add, Mul};

use serde::Serialize;

use crate::algebra::number::binom;
use crate::algebra::Rational;
use crate::arrangement::{is_normal_crossing, IndexSet};
use crate::cover::{log_support, residues, Base, Character, CoverSpec};
use crate::Error;

use super::{euler_only, EigenHodgeTable, HodgeBlock, Provenance};

/// An element of `Q[h] / (h^(n+1))`, `h` the hyperplane class of `P^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyClassPn {
    n: usize,
    coeffs: Vec<Rational>,
}

impl CohomologyClassPn {
    pub fn zero(n: usize) -> Self {
        CohomologyClassPn { n, coeffs: vec![Rational::zero(); n + 1] }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut x = Self::zero(n);
        x.coeffs[0] = c;
        x
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    /// `h`
    pub fn hyperplane(n: usize) -> Self {
        let mut x = Self::zero(n);
        if n >= 1 {
            x.coeffs[1] = Rational::one();
        }
        x
    }

    pub fn from_coeffs(n: usize, mut coeffs: Vec<Rational>) -> Self {
        coeffs.resize(n + 1, Rational::zero());
        coeffs.truncate(n + 1);
        CohomologyClassPn { n, coeffs }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `exp(a h)`
    pub fn exp_hyperplane(n: usize, a: &Rational) -> Self {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut term = Rational::one();
        for k in 0..=n {
            coeffs.push(term.clone());
            term = &term * a / Rational::from(k as i64 + 1);
        }
        CohomologyClassPn { n, coeffs }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CohomologyClassPn { n: self.n, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(self.n), |acc, _| &acc * self)
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<Self, Error> {
        let c0 = self.coeffs[0].recip()?;
        let mut inv = vec![Rational::zero(); self.n + 1];
        inv[0] = c0.clone();
        for k in 1..=self.n {
            let s: Rational = (1..=k).map(|j| &self.coeffs[j] * &inv[k - j]).sum();
            inv[k] = -(s * &c0);
        }
        Ok(CohomologyClassPn { n: self.n, coeffs: inv })
    }

    /// `int_(P^n)`: the coefficient of `h^n`.
    pub fn integrate(&self) -> Rational {
        self.coeffs[self.n].clone()
    }
}

impl Add<&CohomologyClassPn> for &CohomologyClassPn {
    type Output = CohomologyClassPn;
    fn add(self, rhs: &CohomologyClassPn) -> CohomologyClassPn {
        assert_eq!(self.n, rhs.n, "classes on different projective spaces");
        CohomologyClassPn { n: self.n, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Mul<&CohomologyClassPn> for &CohomologyClassPn {
    type Output = CohomologyClassPn;
    fn mul(self, rhs: &CohomologyClassPn) -> CohomologyClassPn {
        assert_eq!(self.n, rhs.n, "classes on different projective spaces");
        let mut out = CohomologyClassPn::zero(self.n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=self.n - i].iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

/// `td(P^M) = (h / (1 - e^(-h)))^(M+1)`.
pub fn todd_pn(m: usize) -> CohomologyClassPn {
    // (1 - e^(-h)) / h = sum_k (-1)^k h^k / (k+1)!
    let mut coeffs = Vec::with_capacity(m + 1);
    let mut fact = Rational::one();
    for k in 0..=m {
        fact = fact * Rational::from(k as i64 + 1);
        let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
        coeffs.push(sign / &fact);
    }
    let q = CohomologyClassPn::from_coeffs(m, coeffs);
    q.inverse().expect("constant term is 1").pow(m + 1)
}

/// `ch(Omega^k_(P^M)) = sum_(j<=k) (-1)^(k-j) C(M+1, j) e^(-j h)`, from
/// `Omega^1 = O(-1)^(M+1) - O` in K-theory.
pub fn ch_omega_pn(m: usize, k: usize) -> CohomologyClassPn {
    let mut out = CohomologyClassPn::zero(m);
    for j in 0..=k {
        let c = binom(m as i64 + 1, j as i64) * if (k - j).is_multiple_of(2) { 1 } else { -1 };
        let e = CohomologyClassPn::exp_hyperplane(m, &Rational::from(-(j as i64)));
        out = &out + &e.scale(&Rational::from(c));
    }
    out
}

/// `chi(P^M, Omega^k (x) V)` by HRR, `V` a (possibly fractional) line-bundle
/// class with `ch(V) = e^(a h)`.
pub fn hrr_chi_omega(m: usize, k: usize, a: &Rational) -> Rational {
    if k > m {
        return Rational::zero();
    }
    let ch = &ch_omega_pn(m, k) * &CohomologyClassPn::exp_hyperplane(m, a);
    (&ch * &todd_pn(m)).integrate()
}

/// `chi(W_0(Omega^p (log D) (x) V_chi))` on `P^n` through the stratified
/// K-class and HRR on each stratum.
fn hrr_euler(spec: &CoverSpec, chi: &Character, p: usize, cache: &mut HashMap<(usize, usize), Rational>) -> Rational {
    let n = spec.dim();
    let poset = spec.poset().expect("projective base");
    let r = residues(spec, chi);
    // ch(V_chi) = exp(-sum_j r_j [D_j]) and every [D_j] restricts to h
    let a = -r.iter().cloned().sum::<Rational>();
    let zero_residue = IndexSet::from_indices((0..r.len()).filter(|&j| r[j].is_zero()));

    let mut stratum = |dim: usize, m: usize| -> Rational {
        cache.entry((dim, m)).or_insert_with(|| hrr_chi_omega(dim, m, &a)).clone()
    };

    // ambient stratum: I = J = {}
    let mut total = stratum(n, p);
    for flat in poset.flats() {
        let k = flat.containing;
        if k.len() > p {
            continue;
        }
        let dim = flat.dim as usize;
        let m = p - k.len();
        // K = I + J with I inside the zero-residue set; each I contributes
        // (-1)^|I| Omega^(p-|I|-|J|) on D_K
        let zeros: Vec<usize> = k.iter().filter(|&j| zero_residue.contains(j)).collect();
        let mut signed = 0i64;
        for mask in 0u32..(1 << zeros.len()) {
            signed += if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        }
        if signed != 0 {
            total += stratum(dim, m) * Rational::from(signed);
        }
    }
    total
}

/// `h^(p, n-p)_chi` for nontrivial `chi` (and `h^(p,p)` for the trivial
/// character) by the HRR route.
pub fn hodge_via_hrr(spec: &CoverSpec, chi: &Character, p: usize) -> Result<i64, Error> {
    let mut cache = HashMap::new();
    hodge_via_hrr_cached(spec, chi, p, &mut cache)
}

fn hodge_via_hrr_cached(
    spec: &CoverSpec,
    chi: &Character,
    p: usize,
    cache: &mut HashMap<(usize, usize), Rational>,
) -> Result<i64, Error> {
    check_route(spec)?;
    let n = spec.dim();
    if p > n {
        return Err(Error::Argument(format!("p = {p} exceeds the dimension {n}")));
    }
    let e = hrr_euler(spec, chi, p, cache);
    // only H^p (trivial) or H^(n-p) (nontrivial) survives
    let degree = if chi.is_trivial() { p } else { n - p };
    let h = if degree % 2 == 0 { e } else { -e };
    let value = h
        .to_i64()
        .ok_or_else(|| Error::Invariant(format!("HRR value {h} for {} is not an integer", chi.label())))?;
    if value < 0 {
        return Err(Error::Invariant(format!("negative HRR Hodge number {value} for {}", chi.label())));
    }
    Ok(value)
}

fn check_route(spec: &CoverSpec) -> Result<(), Error> {
    match spec.base() {
        Base::ProjectiveSpace(_) => {}
        Base::ProductP1 { .. } => {
            return Err(Error::Argument("the HRR route is implemented for projective-space bases".into()))
        }
    }
    let poset = spec.poset().expect("projective base");
    let nc = is_normal_crossing(poset);
    if !nc.normal_crossing {
        return Err(euler_only(spec, format!("arrangement fails normal crossings at {} flat(s)", nc.violators.len())));
    }
    Ok(())
}

/// The full eigenspace table by the HRR route.
pub fn hodge_table_hrr(spec: &CoverSpec) -> Result<EigenHodgeTable, Error> {
    check_route(spec)?;
    let n = spec.dim();
    let mut blocks = Vec::new();
    for chi in spec.characters() {
        let mut cache = HashMap::new();
        let mut h = vec![vec![0i64; n + 1]; n + 1];
        for p in 0..=n {
            let v = hodge_via_hrr_cached(spec, &chi, p, &mut cache)?;
            if chi.is_trivial() {
                h[p][p] = v;
            } else {
                h[p][n - p] = v;
            }
        }
        blocks.push(HodgeBlock { support: log_support(spec, &chi).len(), character: chi, provenance: Provenance::Hrr, h });
    }
    EigenHodgeTable::new(n, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::genfun::chi_omega_pn;

    #[test]
    fn todd_class_of_small_spaces() {
        // td(P^1) = 1 + h, td(P^2) = 1 + 3/2 h + h^2
        assert_eq!(todd_pn(1).coeffs(), &[Rational::one(), Rational::one()]);
        assert_eq!(todd_pn(2).coeffs(), &[Rational::one(), Rational::ratio(3, 2), Rational::one()]);
        // integral of the Todd class is chi(O) = 1
        for m in 0..=6 {
            assert_eq!(todd_pn(m).integrate(), Rational::one());
        }
    }

    #[test]
    fn hrr_matches_generating_function() {
        for m in 0..=5usize {
            for k in 0..=m {
                for t in -10..=10i64 {
                    assert_eq!(hrr_chi_omega(m, k, &Rational::from(t)), Rational::from(chi_omega_pn(m, k, t)));
                }
            }
        }
    }

    #[test]
    fn inverse_and_powers() {
        let x = &CohomologyClassPn::one(4) + &CohomologyClassPn::hyperplane(4).scale(&Rational::ratio(2, 3));
        assert_eq!(&x * &x.inverse().unwrap(), CohomologyClassPn::one(4));
        assert_eq!(CohomologyClassPn::hyperplane(3).pow(4), CohomologyClassPn::zero(3));
        assert!(CohomologyClassPn::hyperplane(3).inverse().is_err());
    }
}
