//! Eigenspace Hodge numbers `h^(p,q)_chi` of abelian covers.
//!
//! Three routes fill an [`EigenHodgeTable`]:
//!
//! * [`eigen_hodge`]: Esnault–Viehweg eigensheaves `Omega^p(log D_chi)(-t_chi)`
//!   on `P^n`, Euler characteristics from the Hirzebruch generating function,
//!   and vanishing outside `p + q = n` for nontrivial characters;
//! * [`hodge_table_hrr`]: the same Euler characteristics recomputed from
//!   Chern characters and Todd classes, stratum by stratum;
//! * [`hodge_product`]: exact Künneth on `(P^1)^n`.
//!
//! Tables hold nonnegative integers only. When the exact reading of Hodge
//! numbers from Euler characteristics is not justified, the computation
//! fails with [`Error::HodgeUnavailable`] carrying per-character topological
//! Euler characteristics instead.

pub mod genfun;
pub mod hrr;
pub mod product;

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::euler_phi;
use crate::arrangement::is_normal_crossing;
use crate::bounds::character_euler;
use crate::cover::{log_support, twist_integer, Base, Character, CoverSpec};
use crate::Error;

pub use genfun::{chi_log, chi_omega_pn};
pub use hrr::{hodge_table_hrr, hodge_via_hrr, CohomologyClassPn};
pub use product::{hodge_product, hodge_product_p1, product_chi_polynomial};

/// Which route produced a block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    GeneratingFunction,
    Hrr,
    Kunneth,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::GeneratingFunction => "generating-function",
            Provenance::Hrr => "HRR",
            Provenance::Kunneth => "Künneth",
        })
    }
}

/// `h^(p,q)_chi` for one character; `h[p][q]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeBlock {
    pub character: Character,
    /// Number of components with nonzero residue.
    pub support: usize,
    pub provenance: Provenance,
    pub h: Vec<Vec<i64>>,
}

impl HodgeBlock {
    pub fn total(&self) -> i64 {
        self.h.iter().flatten().sum()
    }
}

/// Eigenspace Hodge numbers for every character of the deck group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenHodgeTable {
    n: usize,
    blocks: Vec<HodgeBlock>,
}

impl EigenHodgeTable {
    /// Checks shapes and nonnegativity.
    pub fn new(n: usize, blocks: Vec<HodgeBlock>) -> Result<Self, Error> {
        for b in &blocks {
            if b.h.len() != n + 1 || b.h.iter().any(|row| row.len() != n + 1) {
                return Err(Error::Invariant(format!("block {} is not {0}x{0}", n + 1)));
            }
            if let Some(v) = b.h.iter().flatten().find(|&&v| v < 0) {
                return Err(Error::Invariant(format!(
                    "negative Hodge number {v} for {}",
                    b.character.label()
                )));
            }
        }
        Ok(EigenHodgeTable { n, blocks })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[HodgeBlock] {
        &self.blocks
    }

    pub fn block(&self, chi: &Character) -> Option<&HodgeBlock> {
        self.blocks.iter().find(|b| &b.character == chi)
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &HodgeBlock> {
        self.blocks.iter().filter(|b| !b.character.is_trivial())
    }

    /// `h^(p,q)_nt`: summed over nontrivial characters.
    pub fn nontrivial_entry(&self, p: usize, q: usize) -> i64 {
        self.nontrivial().map(|b| b.h[p][q]).sum()
    }

    /// Total dimension of the nontrivial part in degree `i`.
    pub fn nontrivial_degree(&self, i: usize) -> i64 {
        (0..=i.min(self.n))
            .filter(|&p| i - p <= self.n)
            .map(|p| self.nontrivial_entry(p, i - p))
            .sum()
    }

    /// Total dimension of the nontrivial part in all degrees.
    pub fn nontrivial_total(&self) -> i64 {
        self.nontrivial().map(HodgeBlock::total).sum()
    }

    /// Checks `h^(p,q)_chi = h^(q,p)_conj(chi)`.
    pub fn check_real_structure(&self) -> Result<(), Error> {
        for b in &self.blocks {
            let c = self
                .block(&b.character.conj())
                .ok_or_else(|| Error::Invariant(format!("no block for conjugate of {}", b.character.label())))?;
            for p in 0..=self.n {
                for q in 0..=self.n {
                    if b.h[p][q] != c.h[q][p] {
                        return Err(Error::Invariant(format!(
                            "h^({p},{q}) of {} differs from h^({q},{p}) of its conjugate",
                            b.character.label()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Entrywise comparison of the numbers, ignoring provenance.
    pub fn same_numbers(&self, other: &EigenHodgeTable) -> bool {
        self.n == other.n
            && self.blocks.len() == other.blocks.len()
            && self
                .blocks
                .iter()
                .zip(&other.blocks)
                .all(|(a, b)| a.character == b.character && a.h == b.h)
    }
}

impl fmt::Display for EigenHodgeTable {
    /// One aligned block per character, rows `p`, columns `q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .blocks
            .iter()
            .flat_map(|b| b.h.iter().flatten())
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1)
            .max(2);
        for (idx, b) in self.blocks.iter().enumerate() {
            if idx > 0 {
                writeln!(f)?;
            }
            writeln!(f, "{} [{}]", b.character.label(), b.provenance)?;
            write!(f, "{:>4}", "p\\q")?;
            for q in 0..=self.n {
                write!(f, " {q:>width$}")?;
            }
            writeln!(f)?;
            for (p, row) in b.h.iter().enumerate() {
                write!(f, "{p:>4}")?;
                for v in row {
                    write!(f, " {v:>width$}")?;
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// The topological Euler characteristic of one eigenspace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterEuler {
    pub character: Character,
    pub euler: i64,
}

/// What is returned instead of Hodge numbers when the vanishing needed to
/// read them off fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerOnly {
    pub reason: String,
    pub n: usize,
    pub characters: Vec<CharacterEuler>,
}

pub(crate) fn euler_only(spec: &CoverSpec, reason: String) -> Error {
    let characters = spec
        .characters()
        .into_iter()
        .zip(character_euler(spec))
        .map(|(character, euler)| CharacterEuler { character, euler })
        .collect();
    Error::HodgeUnavailable(Box::new(EulerOnly { reason, n: spec.dim(), characters }))
}

/// Eigenspace Hodge numbers on `P^n` by the generating-function route:
/// `h^(k,n-k)_chi = (-1)^(n-k) chi_log(n, k, |supp chi|, -t_chi)` for
/// nontrivial `chi`, zero off the antidiagonal, and the Hodge numbers of
/// `P^n` for the trivial character.
///
/// Requires the reduced arrangement to have normal crossings. Then every
/// nontrivial character has `1 <= t_chi` and nonempty support, which is what
/// the vanishing outside the middle degree needs.
pub fn eigen_hodge(spec: &CoverSpec) -> Result<EigenHodgeTable, Error> {
    if !matches!(spec.base(), Base::ProjectiveSpace(_)) {
        return Err(Error::Argument("eigen_hodge needs a projective-space base; use hodge_product".into()));
    }
    let poset = spec.poset().expect("projective base");
    let nc = is_normal_crossing(poset);
    if !nc.normal_crossing {
        return Err(euler_only(spec, format!("arrangement fails normal crossings at {} flat(s)", nc.violators.len())));
    }
    let n = spec.dim();
    let blocks = spec
        .characters()
        .into_par_iter()
        .map(|chi| -> Result<HodgeBlock, Error> {
            let mut h = vec![vec![0i64; n + 1]; n + 1];
            let support = log_support(spec, &chi).len();
            if chi.is_trivial() {
                for (p, row) in h.iter_mut().enumerate() {
                    row[p] = 1;
                }
            } else {
                let t = twist_integer(spec, &chi)?;
                for k in 0..=n {
                    let sign = if (n - k).is_multiple_of(2) { 1 } else { -1 };
                    h[k][n - k] = sign * chi_log(n, k, support, -t);
                }
            }
            Ok(HodgeBlock { character: chi, support, provenance: Provenance::GeneratingFunction, h })
        })
        .collect::<Result<Vec<_>, _>>()?;
    EigenHodgeTable::new(n, blocks)
}

/// The table for either base: generating functions on `P^n`, Künneth on
/// `(P^1)^n`.
pub fn hodge_table(spec: &CoverSpec) -> Result<EigenHodgeTable, Error> {
    match spec.base() {
        Base::ProjectiveSpace(_) => eigen_hodge(spec),
        Base::ProductP1 { .. } => hodge_product(spec),
    }
}

/// `phi(d) h^(0,n)_(eps^(d-1))` against `dim H^n_nt`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionB {
    pub degree: u64,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
    pub equality: bool,
}

/// Condition (b) in degree `n` for a cyclic cover with a computed table.
pub fn condition_b_check(spec: &CoverSpec, table: &EigenHodgeTable) -> Result<ConditionB, Error> {
    let d = spec
        .group()
        .cyclic_order()
        .ok_or_else(|| Error::Argument("condition (b) is stated for cyclic covers".into()))?;
    let n = table.dim();
    let top = spec.group().character(&[d as i64 - 1])?;
    let block = table
        .block(&top)
        .ok_or_else(|| Error::Invariant(format!("table has no block for {}", top.label())))?;
    let lhs = euler_phi(d as i64)? * block.h[0][n];
    let rhs = table.nontrivial_degree(n);
    Ok(ConditionB { degree: d, lhs, rhs, holds: lhs >= rhs, equality: lhs == rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::number::binom;
    use crate::arrangement::{Arrangement, Hyperplane};

    fn generic_cyclic(n: usize, d: u64) -> CoverSpec {
        CoverSpec::cyclic(Arrangement::generic(n, d as usize).unwrap(), d).unwrap()
    }

    #[test]
    fn five_lines_degree_five() {
        let t = eigen_hodge(&generic_cyclic(2, 5)).unwrap();
        let rows: Vec<[i64; 3]> = t.nontrivial().map(|b| [b.h[0][2], b.h[1][1], b.h[2][0]]).collect();
        // eps^i has twist i: h^(0,2) grows with i
        assert_eq!(rows, vec![[0, 0, 3], [0, 2, 1], [1, 2, 0], [3, 0, 0]]);
        t.check_real_structure().unwrap();
    }

    #[test]
    fn six_lines_antidiagonals() {
        let t = eigen_hodge(&generic_cyclic(2, 6)).unwrap();
        for k in 0..=2 {
            assert_eq!(t.nontrivial_entry(k, 2 - k), 10);
        }
        assert_eq!(t.blocks()[0].h, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn genus_one_double_cover() {
        let t = eigen_hodge(&generic_cyclic(1, 4).clone()).unwrap();
        let _ = t;
        let spec = CoverSpec::cyclic(Arrangement::generic(1, 4).unwrap(), 2).unwrap();
        let t = eigen_hodge(&spec).unwrap();
        assert_eq!(t.blocks()[1].h, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(hodge_via_hrr(&spec, &spec.characters()[1], 1).unwrap(), 1);
    }

    #[test]
    fn routes_agree_on_small_cases() {
        for n in 1..=3 {
            for d in 2..=7 {
                let spec = generic_cyclic(n, d);
                let a = eigen_hodge(&spec).unwrap();
                let b = hodge_table_hrr(&spec).unwrap();
                assert!(a.same_numbers(&b), "n={n} d={d}\n{a}\n{b}");
            }
        }
    }

    #[test]
    fn binomial_lemma_small() {
        for n in 1..=3usize {
            for d in 2..=8u64 {
                let t = eigen_hodge(&generic_cyclic(n, d)).unwrap();
                for k in 0..=n {
                    assert_eq!(t.nontrivial_entry(k, n - k), binom(d as i64 - 1, n as i64 + 1));
                }
            }
        }
    }

    #[test]
    fn condition_b_examples() {
        let spec = generic_cyclic(2, 5);
        let c = condition_b_check(&spec, &eigen_hodge(&spec).unwrap()).unwrap();
        assert_eq!((c.lhs, c.rhs, c.equality), (12, 12, true));
        let spec = generic_cyclic(2, 4);
        let c = condition_b_check(&spec, &eigen_hodge(&spec).unwrap()).unwrap();
        assert_eq!((c.lhs, c.rhs, c.holds), (2, 3, false));
        let spec = generic_cyclic(3, 3);
        let c = condition_b_check(&spec, &eigen_hodge(&spec).unwrap()).unwrap();
        assert_eq!((c.lhs, c.rhs, c.holds, c.equality), (0, 0, true, true));
    }

    #[test]
    fn non_normal_crossing_degrades() {
        let hs = vec![
            Hyperplane::from_ints(&[1, 0, 0], 1).unwrap(),
            Hyperplane::from_ints(&[0, 1, 0], 1).unwrap(),
            Hyperplane::from_ints(&[1, -1, 0], 1).unwrap(),
        ];
        let spec = CoverSpec::cyclic(Arrangement::new(2, hs).unwrap(), 3).unwrap();
        match eigen_hodge(&spec) {
            Err(Error::HodgeUnavailable(e)) => {
                assert_eq!(e.characters.len(), 3);
                assert_eq!(e.characters[0].euler, 3);
                assert!(e.to_owned().reason.contains("normal crossings"));
            }
            other => panic!("expected degraded output, got {other:?}"),
        }
        assert!(matches!(hodge_via_hrr(&spec, &spec.characters()[1], 0), Err(Error::HodgeUnavailable(_))));
    }

    #[test]
    fn multiplicities_and_abelian_groups() {
        // d = 4 with a_j = 2 on one line: eps^2 has a smaller log support
        let a = Arrangement::generic_weighted(2, &[2, 1, 1, 1, 3]).unwrap();
        let spec = CoverSpec::cyclic(a, 4).unwrap();
        let t = eigen_hodge(&spec).unwrap();
        t.check_real_structure().unwrap();
        assert!(t.same_numbers(&hodge_table_hrr(&spec).unwrap()));
        // (Z/2)^2 over four lines
        let spec = CoverSpec::new(
            Base::ProjectiveSpace(Arrangement::generic(2, 4).unwrap()),
            crate::cover::AbelianGroup::new(vec![2, 2]).unwrap(),
            vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]],
        )
        .unwrap();
        let t = eigen_hodge(&spec).unwrap();
        t.check_real_structure().unwrap();
        assert!(t.same_numbers(&hodge_table_hrr(&spec).unwrap()));
    }
}
