//! Local models `y^d = x_1^{a_1} ... x_n^{a_n}` of the cover over a point of
//! the branch divisor, their normalization as a saturated affine semigroup,
//! and the diagonal form of an abelian local cover.
//!
//! The normalization is `C[L ∩ R_{>=0}^n]` where `L = dZ^n + Z a`. Every
//! irreducible element of that semigroup lies in the box `[0, d]^n`, so the
//! Hilbert basis is found by enumerating the box.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::matrix::smith_normal_form;
use crate::algebra::number::gcd;
use crate::algebra::IntMatrix;
use crate::Error;

pub const MAX_LOCAL_DEGREE: u64 = 12;
pub const MAX_LOCAL_DIM: usize = 4;

/// Exponents `a_1..a_n` and degree `d >= 1` of `y^d = prod x_i^{a_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentData {
    pub exponents: Vec<u64>,
    pub degree: u64,
}

impl ExponentData {
    pub fn new(exponents: Vec<u64>, degree: u64) -> Result<Self, Error> {
        if degree == 0 {
            return Err(Error::Argument("local degree d must be >= 1".into()));
        }
        Ok(ExponentData { exponents, degree })
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }
}

impl std::fmt::Display for ExponentData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let a: Vec<String> = self.exponents.iter().map(u64::to_string).collect();
        write!(f, "({}; {})", a.join(","), self.degree)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub original: ExponentData,
    /// `gcd(a_1, ..., a_n, d)`: the number of components, each isomorphic to
    /// the reduced model.
    pub components: u64,
    /// Positive exponents only, gcd 1.
    pub reduced: ExponentData,
    /// Original positions of the zero exponents; each is a smooth factor `C`.
    pub smooth_factors: Vec<usize>,
}

pub fn reduce_exponents(e: &ExponentData) -> Result<Reduction, Error> {
    let e = ExponentData::new(e.exponents.clone(), e.degree)?;
    let g = e.exponents.iter().fold(e.degree as i64, |g, &a| gcd(g, a as i64)) as u64;
    let smooth_factors: Vec<usize> = (0..e.dim()).filter(|&i| e.exponents[i] == 0).collect();
    let reduced = ExponentData {
        exponents: e.exponents.iter().filter(|&&a| a > 0).map(|a| a / g).collect(),
        degree: e.degree / g,
    };
    Ok(Reduction { original: e, components: g, reduced, smooth_factors })
}

/// The semigroup `S` generated by `d e_1, ..., d e_n, a` and its saturation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemigroupData {
    pub model: ExponentData,
    /// `v_1 = d e_1, ..., v_n = d e_n, v_{n+1} = a`.
    pub generators: Vec<Vec<i64>>,
    /// Hermite basis of the lattice `L` spanned by the generators.
    pub lattice_basis: Vec<Vec<i64>>,
    /// Minimal generators of `L ∩ R_{>=0}^n`, sorted.
    pub hilbert_basis: Vec<Vec<i64>>,
    /// Hilbert basis elements missing from `S`.
    pub added: Vec<Vec<i64>>,
    /// `S` equals its saturation, i.e. `R` is already normal.
    pub saturated: bool,
    /// Order of the finite group `G` with normalization `C^n / G`.
    pub quotient_order: u64,
    pub smooth: bool,
}

fn in_lattice(x: &[i64], a: &[u64], d: u64) -> bool {
    let d = d as i64;
    (0..d).any(|k| x.iter().zip(a).all(|(&xi, &ai)| (xi - k * ai as i64).rem_euclid(d) == 0))
}

fn in_semigroup(x: &[i64], a: &[u64], d: u64) -> bool {
    let d = d as i64;
    let mut m = 0i64;
    loop {
        let rest: Vec<i64> = x.iter().zip(a).map(|(&xi, &ai)| xi - m * ai as i64).collect();
        if rest.iter().any(|&r| r < 0) {
            return false;
        }
        if rest.iter().all(|&r| r % d == 0) {
            return true;
        }
        m += 1;
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
fn hermite_basis(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = rows.to_vec();
    let mut basis = Vec::new();
    for col in 0..n {
        loop {
            rows.retain(|r| r.iter().any(|&x| x != 0));
            let Some(pivot) = rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r[col] != 0)
                .min_by_key(|(_, r)| r[col].abs())
                .map(|(i, _)| i)
            else {
                break;
            };
            let p = rows[pivot].clone();
            let mut done = true;
            for (i, r) in rows.iter_mut().enumerate() {
                if i != pivot && r[col] != 0 {
                    let q = r[col].div_euclid(p[col]);
                    for (x, y) in r.iter_mut().zip(&p) {
                        *x -= q * y;
                    }
                    if r[col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                let mut p = rows.swap_remove(pivot);
                if p[col] < 0 {
                    p.iter_mut().for_each(|x| *x = -*x);
                }
                basis.push(p);
                break;
            }
        }
        // rows left have zero in this column
    }
    // reduce above the pivots
    for i in 0..basis.len() {
        let col = basis[i].iter().position(|&x| x != 0).expect("nonzero row");
        for j in 0..i {
            let q = basis[j][col].div_euclid(basis[i][col]);
            let bi = basis[i].clone();
            for (x, y) in basis[j].iter_mut().zip(&bi) {
                *x -= q * y;
            }
        }
    }
    basis
}

fn check_scale(e: &ExponentData) -> Result<(), Error> {
    if e.degree > MAX_LOCAL_DEGREE || e.dim() > MAX_LOCAL_DIM {
        return Err(Error::ScaleExceeded(format!(
            "Hilbert basis enumeration is limited to d <= {MAX_LOCAL_DEGREE} and n <= {MAX_LOCAL_DIM}, got d = {}, n = {}",
            e.degree,
            e.dim()
        )));
    }
    Ok(())
}

/// Hilbert basis of the saturation of `S`, for reduced data (gcd 1, all
/// exponents positive) with `d <= 12`, `n <= 4`.
pub fn saturation_hilbert_basis(e: &ExponentData) -> Result<SemigroupData, Error> {
    let e = ExponentData::new(e.exponents.clone(), e.degree)?;
    check_scale(&e)?;
    if e.exponents.contains(&0) {
        return Err(Error::Argument(format!("{e}: zero exponents must be split off first")));
    }
    let g = e.exponents.iter().fold(e.degree as i64, |g, &a| gcd(g, a as i64));
    if g != 1 {
        return Err(Error::Argument(format!("{e}: gcd of exponents and degree is {g}, reduce first")));
    }
    let (n, d, a) = (e.dim(), e.degree, &e.exponents);
    let mut generators: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { d as i64 } else { 0 }).collect())
        .collect();
    generators.push(a.iter().map(|&x| x as i64).collect());

    // nonzero lattice points of the box, lexicographic
    let mut points: Vec<Vec<i64>> = Vec::new();
    let mut x = vec![0i64; n];
    'outer: loop {
        if x.iter().any(|&c| c != 0) && in_lattice(&x, a, d) {
            points.push(x.clone());
        }
        for c in x.iter_mut().rev() {
            if *c < d as i64 {
                *c += 1;
                continue 'outer;
            }
            *c = 0;
        }
        break;
    }
    let mut hilbert_basis: Vec<Vec<i64>> = points
        .iter()
        .filter(|x| {
            !points.iter().any(|y| {
                y != *x && y.iter().zip(x.iter()).all(|(a, b)| a <= b) && {
                    let z: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
                    in_lattice(&z, a, d)
                }
            })
        })
        .cloned()
        .collect();
    hilbert_basis.sort();
    let added: Vec<Vec<i64>> = hilbert_basis.iter().filter(|x| !in_semigroup(x, a, d)).cloned().collect();

    // C[L ∩ orthant] is the invariant ring of C[L' ∩ orthant], L' spanned by
    // the primitive ray points m_i e_i, under the dual of L / L'.
    let index_zn_l: i64 = {
        let b = hermite_basis(&generators, n);
        b.iter().enumerate().map(|(i, r)| r[i]).product()
    };
    let rays: i64 = (0..n)
        .map(|i| {
            (1..=d as i64)
                .find(|&m| {
                    let mut v = vec![0; n];
                    v[i] = m;
                    in_lattice(&v, a, d)
                })
                .expect("d e_i lies in L")
        })
        .product();
    let quotient_order = (rays / index_zn_l) as u64;
    let lattice_basis = hermite_basis(&generators, n);
    let smooth = hilbert_basis.len() == n;
    if smooth != (quotient_order == 1) {
        return Err(Error::Invariant(format!(
            "{e}: Hilbert basis of size {} but quotient order {quotient_order}",
            hilbert_basis.len()
        )));
    }
    Ok(SemigroupData {
        model: e,
        generators,
        lattice_basis,
        saturated: added.is_empty(),
        hilbert_basis,
        added,
        quotient_order,
        smooth,
    })
}

/// One factor `y^d = prod_j x_j^{a_j}` of a diagonalized abelian local cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalFactor {
    pub degree: u64,
    /// Exponents reduced to `[0, d)`.
    pub exponents: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalAbelianModel {
    /// Every invariant factor, including the trivial ones `d_i = 1`.
    pub factors: Vec<LocalFactor>,
    /// `[Z^k : Gamma] = prod d_i`.
    pub index: u64,
    /// Row operations `U` with `U Gamma V = diag(d_i)`.
    #[serde(serialize_with = "ser_matrix")]
    pub u: IntMatrix,
    #[serde(serialize_with = "ser_matrix")]
    pub v: IntMatrix,
}

fn ser_matrix<S: serde::Serializer>(m: &IntMatrix, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.rows()))?;
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

impl LocalAbelianModel {
    pub fn nontrivial(&self) -> impl Iterator<Item = &LocalFactor> {
        self.factors.iter().filter(|f| f.degree > 1)
    }
}

/// Diagonal form of the cover of a polydisc minus `x_1 ... x_k = 0` given by
/// the subgroup `Gamma` of `pi_1 = Z^k` spanned by the columns of `gamma`.
///
/// With `U Gamma V = diag(d_i)`, `Gamma` has basis `d_i U^{-1} e_i`, and the
/// loop around `x_j = 0` acts on `y_i` through `U_{ij} mod d_i`.
pub fn local_abelian_model(gamma: &IntMatrix) -> Result<LocalAbelianModel, Error> {
    let k = gamma.rows();
    if k == 0 {
        return Err(Error::Argument("empty local fundamental group".into()));
    }
    let snf = smith_normal_form(gamma);
    let diag = snf.d.diagonal_entries();
    if diag.len() < k || diag.iter().take(k).any(Zero::is_zero) {
        return Err(Error::Argument(format!(
            "columns of {gamma:?} span a subgroup of rank {} in Z^{k}: not of finite index",
            snf.rank()
        )));
    }
    let mut factors = Vec::with_capacity(k);
    let mut index: u64 = 1;
    for (i, di) in diag.iter().take(k).enumerate() {
        let d = di
            .abs()
            .to_u64()
            .ok_or_else(|| Error::ScaleExceeded(format!("invariant factor {di} does not fit in 64 bits")))?;
        index = index
            .checked_mul(d)
            .ok_or_else(|| Error::ScaleExceeded("index does not fit in 64 bits".into()))?;
        let modulus = BigInt::from(d);
        let exponents = (0..k)
            .map(|j| {
                let r = ((snf.u.get(i, j) % &modulus) + &modulus) % &modulus;
                r.to_u64().expect("reduced below d")
            })
            .collect();
        factors.push(LocalFactor { degree: d, exponents });
    }
    Ok(LocalAbelianModel { factors, index, u: snf.u, v: snf.v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ed(a: &[u64], d: u64) -> ExponentData {
        ExponentData::new(a.to_vec(), d).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let r = reduce_exponents(&ed(&[2, 2], 4)).unwrap();
        assert_eq!((r.components, r.reduced.clone()), (2, ed(&[1, 1], 2)));
        let r = reduce_exponents(&ed(&[1, 0, 1], 3)).unwrap();
        assert_eq!((r.components, r.reduced.clone(), r.smooth_factors), (1, ed(&[1, 1], 3), vec![1]));
        let r = reduce_exponents(&ed(&[1, 1], 2)).unwrap();
        assert_eq!((r.components, r.reduced), (1, ed(&[1, 1], 2)));
        assert!(ExponentData::new(vec![1], 0).is_err());
    }

    #[test]
    fn saturation_examples() {
        let s = saturation_hilbert_basis(&ed(&[1, 1], 2)).unwrap();
        assert!(s.saturated);
        assert_eq!(s.hilbert_basis, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(s.quotient_order, 2);

        let s = saturation_hilbert_basis(&ed(&[2], 3)).unwrap();
        assert!(!s.saturated && s.smooth);
        assert_eq!(s.hilbert_basis, vec![vec![1]]);
        assert_eq!(s.added, vec![vec![1]]);

        for d in 1..=12 {
            let s = saturation_hilbert_basis(&ed(&[1], d)).unwrap();
            assert_eq!(s.hilbert_basis, vec![vec![1]]);
            assert!(s.smooth);
        }
        assert!(matches!(saturation_hilbert_basis(&ed(&[1, 1], 13)), Err(Error::ScaleExceeded(_))));
        assert!(saturation_hilbert_basis(&ed(&[2, 2], 4)).is_err());
    }

    #[test]
    fn all_ones_is_normal() {
        for d in 1..=12 {
            for n in 1..=4 {
                let s = saturation_hilbert_basis(&ed(&vec![1; n], d)).unwrap();
                assert!(s.saturated, "d={d} n={n}");
                assert_eq!(s.quotient_order, if n == 1 { 1 } else { d });
            }
        }
    }

    #[test]
    fn hermite() {
        assert_eq!(hermite_basis(&[vec![2, 0], vec![0, 2], vec![1, 1]], 2), vec![vec![1, 1], vec![0, 2]]);
        assert_eq!(hermite_basis(&[vec![3], vec![2]], 1), vec![vec![1]]);
    }

    #[test]
    fn abelian_examples() {
        let m = local_abelian_model(&IntMatrix::identity(3)).unwrap();
        assert_eq!(m.index, 1);
        assert_eq!(m.nontrivial().count(), 0);

        let m = local_abelian_model(&IntMatrix::diagonal(&[5, 5])).unwrap();
        assert_eq!(m.index, 25);
        let f: Vec<_> = m.nontrivial().collect();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|x| x.degree == 5 && x.exponents.iter().filter(|&&a| a != 0).count() == 1));

        let m = local_abelian_model(&IntMatrix::from_rows(&[vec![2, 1], vec![0, 2]]).unwrap()).unwrap();
        assert_eq!(m.index, 4);
        let f: Vec<_> = m.nontrivial().collect();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].degree, 4);

        assert!(local_abelian_model(&IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap()).is_err());
        assert!(local_abelian_model(&IntMatrix::from_rows(&[vec![1], vec![0]]).unwrap()).is_err());
    }

    /// Every lattice element of the orthant is a nonnegative combination of
    /// the Hilbert basis.
    fn generated_by(x: &[i64], basis: &[Vec<i64>]) -> bool {
        if x.iter().all(|&c| c == 0) {
            return true;
        }
        basis.iter().any(|b| {
            let z: Vec<i64> = x.iter().zip(b).map(|(a, b)| a - b).collect();
            z.iter().all(|&c| c >= 0) && generated_by(&z, basis)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn hilbert_basis_properties(a in prop::collection::vec(1u64..12, 1..=3), d in 1u64..=8) {
            let r = reduce_exponents(&ExponentData::new(a, d).unwrap()).unwrap();
            let s = saturation_hilbert_basis(&r.reduced).unwrap();
            let (a, d) = (&s.model.exponents, s.model.degree);
            // minimal: no element is a sum of two nonzero saturated elements
            for x in &s.hilbert_basis {
                prop_assert!(in_lattice(x, a, d));
                for y in &s.hilbert_basis {
                    let z: Vec<i64> = x.iter().zip(y).map(|(p, q)| p - q).collect();
                    prop_assert!(y == x || z.iter().any(|&c| c < 0) || !in_lattice(&z, a, d));
                }
            }
            // generating: lattice points in a doubled box
            let n = a.len();
            let top = 2 * d as i64;
            let mut x = vec![0i64; n];
            'outer: loop {
                if in_lattice(&x, a, d) {
                    prop_assert!(generated_by(&x, &s.hilbert_basis));
                }
                for c in x.iter_mut().rev() {
                    if *c < top { *c += 1; continue 'outer; }
                    *c = 0;
                }
                break;
            }
            // idempotent: the saturation is its own saturation
            prop_assert!(s.hilbert_basis.iter().all(|x| in_lattice(x, a, d)));
            prop_assert_eq!(saturation_hilbert_basis(&s.model).unwrap().hilbert_basis, s.hilbert_basis.clone());
            prop_assert_eq!(s.smooth, s.quotient_order == 1);
        }

        #[test]
        fn index_is_determinant(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 3)) {
            let m = IntMatrix::from_rows(&rows).unwrap();
            let det = m.determinant().unwrap();
            match local_abelian_model(&m) {
                Ok(model) => prop_assert_eq!(BigInt::from(model.index), det.abs()),
                Err(_) => prop_assert!(det.is_zero()),
            }
        }
    }
}
