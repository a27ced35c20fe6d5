//! Branching data `(Z, D, rho)` for finite abelian covers, and the
//! per-character data read off from it: residues, twists and log-pole
//! supports.
//!
//! Convention: a character `chi` has residue `r_j` along component `j` when
//! `chi(rho(gamma_j)) = exp(2 pi i r_j)`. For the cyclic cover `y^d = f` and
//! `chi = eps^i` this gives `r_j = {i a_j / d}`, and the eigensheaf on `P^n`
//! is `O(-t)` with `t = sum_j r_j deg D_j`.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::number::{gcd, lcm};
use crate::algebra::{smith_normal_form, Cyclotomic, IntMatrix, Rational};
use crate::arrangement::{build_poset, Arrangement, IndexSet, IntersectionPoset};
use crate::Error;

/// A group element as an exponent vector, reduced modulo the cyclic orders.
pub type GroupElement = Vec<u64>;

/// `Z/o_1 x ... x Z/o_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroup {
    orders: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self, Error> {
        if orders.is_empty() {
            return Err(Error::Argument("abelian group needs at least one cyclic factor".into()));
        }
        if orders.contains(&0) {
            return Err(Error::Argument("cyclic orders must be at least 1".into()));
        }
        Ok(AbelianGroup { orders })
    }

    pub fn cyclic(d: u64) -> Result<Self, Error> {
        Self::new(vec![d])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &o| lcm(acc, o))
    }

    /// The cyclic order when the group has a single factor.
    pub fn cyclic_order(&self) -> Option<u64> {
        (self.orders.len() == 1).then(|| self.orders[0])
    }

    pub fn identity(&self) -> GroupElement {
        vec![0; self.orders.len()]
    }

    pub fn reduce(&self, g: &[i64]) -> Result<GroupElement, Error> {
        if g.len() != self.orders.len() {
            return Err(Error::Argument(format!(
                "group element {g:?} has {} coordinates, group has {} factors",
                g.len(),
                self.orders.len()
            )));
        }
        Ok(g.iter()
            .zip(&self.orders)
            .map(|(&x, &o)| x.rem_euclid(o as i64) as u64)
            .collect())
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> GroupElement {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((x, y), o)| (x + y) % o)
            .collect()
    }

    /// Every element, in lexicographic order of exponent vectors.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![Vec::new()];
        for &o in &self.orders {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..o).map(move |x| {
                        let mut v = prefix.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// Order of the subgroup generated by `gens`, via the Smith form of the
    /// relation matrix `[diag(orders) | gens]`.
    pub fn subgroup_order<'a>(&self, gens: impl IntoIterator<Item = &'a GroupElement>) -> u64 {
        let k = self.orders.len();
        let gens: Vec<&GroupElement> = gens.into_iter().collect();
        let cols = k + gens.len();
        let mut m = IntMatrix::zeros(k, cols);
        for (i, &o) in self.orders.iter().enumerate() {
            m.set(i, i, BigInt::from(o));
        }
        for (c, g) in gens.iter().enumerate() {
            for (i, &x) in g.iter().enumerate() {
                m.set(i, k + c, BigInt::from(x));
            }
        }
        let index: BigInt = smith_normal_form(&m).invariant_factors().iter().product();
        let index = index.to_u64().expect("index fits");
        self.order() / index
    }

    /// All characters, trivial first, in lexicographic order of exponents.
    pub fn characters(&self) -> Vec<Character> {
        self.elements()
            .into_iter()
            .map(|e| Character { exponents: e, orders: self.orders.clone() })
            .collect()
    }

    pub fn character(&self, exponents: &[i64]) -> Result<Character, Error> {
        Ok(Character { exponents: self.reduce(exponents)?, orders: self.orders.clone() })
    }
}

/// A character `g -> exp(2 pi i sum_k e_k g_k / o_k)` of an abelian group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    exponents: Vec<u64>,
    orders: Vec<u64>,
}

impl Character {
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Order of the character; its values generate `Q(zeta_order)`.
    pub fn order(&self) -> u64 {
        self.exponents
            .iter()
            .zip(&self.orders)
            .map(|(&e, &o)| o / gcd(e as i64, o as i64) as u64)
            .fold(1, lcm)
    }

    /// The `c in [0, 1)` with `chi(g) = exp(2 pi i c)`.
    pub fn phase(&self, g: &[u64]) -> Rational {
        self.exponents
            .iter()
            .zip(g)
            .zip(&self.orders)
            .map(|((&e, &x), &o)| Rational::ratio((e * x % o) as i64, o as i64))
            .sum::<Rational>()
            .fract_part()
    }

    /// `chi(g)` in the cyclotomic field of conductor `order()`.
    pub fn value(&self, g: &[u64]) -> Cyclotomic {
        let n = self.order();
        let k = self.phase(g) * Rational::from(n as i64);
        Cyclotomic::zeta_pow(n, k.to_i64().expect("phase has denominator dividing the order"))
    }

    pub fn conj(&self) -> Character {
        Character {
            exponents: self.exponents.iter().zip(&self.orders).map(|(&e, &o)| (o - e) % o).collect(),
            orders: self.orders.clone(),
        }
    }

    /// `chi^t`.
    pub fn pow(&self, t: i64) -> Character {
        Character {
            exponents: self
                .exponents
                .iter()
                .zip(&self.orders)
                .map(|(&e, &o)| (e as i64 * t).rem_euclid(o as i64) as u64)
                .collect(),
            orders: self.orders.clone(),
        }
    }

    /// `eps^i` for cyclic groups, `chi(e_1,...,e_k)` otherwise.
    pub fn label(&self) -> String {
        if self.exponents.len() == 1 {
            format!("eps^{}", self.exponents[0])
        } else {
            let parts: Vec<String> = self.exponents.iter().map(ToString::to_string).collect();
            format!("chi({})", parts.join(","))
        }
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for Character {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.exponents.serialize(s)
    }
}

/// The base variety together with its branch divisor.
#[derive(Clone, Debug)]
pub enum Base {
    /// `P^n` with a hyperplane arrangement; every component has degree 1.
    ProjectiveSpace(Arrangement),
    /// `(P^1)^n` with `points_per_factor[f]` distinct branch points on the
    /// `f`-th factor. Components are ordered factor by factor.
    ProductP1 { points_per_factor: Vec<usize> },
}

impl Base {
    pub fn dim(&self) -> usize {
        match self {
            Base::ProjectiveSpace(a) => a.dim(),
            Base::ProductP1 { points_per_factor } => points_per_factor.len(),
        }
    }

    pub fn component_count(&self) -> usize {
        match self {
            Base::ProjectiveSpace(a) => a.len(),
            Base::ProductP1 { points_per_factor } => points_per_factor.iter().sum(),
        }
    }

    /// Topological Euler characteristic of the base.
    pub fn euler(&self) -> i64 {
        match self {
            Base::ProjectiveSpace(a) => a.dim() as i64 + 1,
            Base::ProductP1 { points_per_factor } => 1 << points_per_factor.len(),
        }
    }

    /// Factor index of each component (always 0 on `P^n`).
    pub fn component_factors(&self) -> Vec<usize> {
        match self {
            Base::ProjectiveSpace(a) => vec![0; a.len()],
            Base::ProductP1 { points_per_factor } => points_per_factor
                .iter()
                .enumerate()
                .flat_map(|(f, &s)| std::iter::repeat_n(f, s))
                .collect(),
        }
    }
}

/// Validated branching data for a finite abelian cover.
#[derive(Clone, Debug)]
pub struct CoverSpec {
    base: Base,
    group: AbelianGroup,
    monodromy: Vec<GroupElement>,
    poset: OnceLock<IntersectionPoset>,
}

impl CoverSpec {
    /// Builds and validates; see [`validate_cover`].
    pub fn new(base: Base, group: AbelianGroup, monodromy: Vec<Vec<i64>>) -> Result<Self, Error> {
        let monodromy = monodromy
            .iter()
            .map(|g| group.reduce(g))
            .collect::<Result<Vec<_>, _>>()?;
        let spec = CoverSpec { base, group, monodromy, poset: OnceLock::new() };
        validate_cover(&spec)?;
        Ok(spec)
    }

    /// `y^d = prod h_j^{a_j}`: monodromy `a_j mod d` around each hyperplane.
    pub fn cyclic(arrangement: Arrangement, d: u64) -> Result<Self, Error> {
        let monodromy = arrangement.multiplicities().iter().map(|&a| vec![a as i64]).collect();
        Self::new(Base::ProjectiveSpace(arrangement), AbelianGroup::cyclic(d)?, monodromy)
    }

    /// Degree-`d` cyclic cover of `(P^1)^n` branched over the given points,
    /// each with monodromy 1.
    pub fn cyclic_product(points_per_factor: Vec<usize>, d: u64) -> Result<Self, Error> {
        let count: usize = points_per_factor.iter().sum();
        Self::new(
            Base::ProductP1 { points_per_factor },
            AbelianGroup::cyclic(d)?,
            vec![vec![1]; count],
        )
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn monodromy(&self) -> &[GroupElement] {
        &self.monodromy
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn arrangement(&self) -> Option<&Arrangement> {
        match &self.base {
            Base::ProjectiveSpace(a) => Some(a),
            Base::ProductP1 { .. } => None,
        }
    }

    /// Intersection poset of the arrangement (computed once).
    pub fn poset(&self) -> Option<&IntersectionPoset> {
        self.arrangement().map(|a| self.poset.get_or_init(|| build_poset(a)))
    }

    pub fn characters(&self) -> Vec<Character> {
        self.group.characters()
    }

    /// `|G(J)|`: order of the subgroup generated by the monodromy around the
    /// components in `set`.
    pub fn inertia_order(&self, set: &IndexSet) -> u64 {
        self.group.subgroup_order(set.iter().map(|j| &self.monodromy[j]))
    }
}

/// Checks that the monodromy data define a connected cover of the base:
/// the abelianized relation `sum_j deg(D_j) rho(gamma_j) = 0` (one relation
/// per factor on `(P^1)^n`), and surjectivity onto the group.
pub fn validate_cover(spec: &CoverSpec) -> Result<(), Error> {
    let comps = spec.base.component_count();
    if spec.monodromy.len() != comps {
        return Err(Error::InvalidCover(format!(
            "{} monodromy elements for {comps} branch components",
            spec.monodromy.len()
        )));
    }
    if let Base::ProductP1 { points_per_factor } = &spec.base {
        if points_per_factor.is_empty() {
            return Err(Error::InvalidCover("product base needs at least one factor".into()));
        }
    }
    let factors = spec.base.component_factors();
    let nfactors = match &spec.base {
        Base::ProjectiveSpace(_) => 1,
        Base::ProductP1 { points_per_factor } => points_per_factor.len(),
    };
    for f in 0..nfactors {
        let total = spec
            .monodromy
            .iter()
            .zip(&factors)
            .filter(|(_, &ff)| ff == f)
            .fold(spec.group.identity(), |acc, (g, _)| spec.group.add(&acc, g));
        if total != spec.group.identity() {
            let which = match &spec.base {
                Base::ProjectiveSpace(_) => String::new(),
                Base::ProductP1 { .. } => format!(" on factor {f}"),
            };
            return Err(Error::InvalidCover(format!(
                "not a cover of the stated base: monodromy{which} sums to {total:?}, not the identity"
            )));
        }
    }
    if spec.group.subgroup_order(&spec.monodromy) != spec.group.order() {
        return Err(Error::InvalidCover(
            "cover disconnected; pass the image subgroup instead".into(),
        ));
    }
    Ok(())
}

/// `r_j(chi)` for every component.
pub fn residues(spec: &CoverSpec, chi: &Character) -> Vec<Rational> {
    spec.monodromy.iter().map(|g| chi.phase(g)).collect()
}

/// `t_chi = sum_j r_j(chi) deg D_j` on `P^n`; the eigensheaf is `O(-t_chi)`.
pub fn twist_integer(spec: &CoverSpec, chi: &Character) -> Result<i64, Error> {
    if !matches!(spec.base, Base::ProjectiveSpace(_)) {
        return Err(Error::Argument("twist_integer needs a projective-space base; use twist_vector".into()));
    }
    Ok(twist_vector(spec, chi)?[0])
}

/// Per-factor twists: on `(P^1)^n` the eigensheaf is `O(-t_1, ..., -t_n)`.
pub fn twist_vector(spec: &CoverSpec, chi: &Character) -> Result<Vec<i64>, Error> {
    let nfactors = match &spec.base {
        Base::ProjectiveSpace(_) => 1,
        Base::ProductP1 { points_per_factor } => points_per_factor.len(),
    };
    let mut sums = vec![Rational::zero(); nfactors];
    for (r, f) in residues(spec, chi).into_iter().zip(spec.base.component_factors()) {
        sums[f] += r;
    }
    sums.into_iter()
        .map(|t| {
            t.to_i64().ok_or_else(|| {
                Error::Invariant(format!("twist {t} of {} is not an integer", chi.label()))
            })
        })
        .collect()
}

/// Components with nonzero residue: where the eigensheaf forms keep log poles.
pub fn log_support(spec: &CoverSpec, chi: &Character) -> IndexSet {
    IndexSet::from_indices(
        residues(spec, chi)
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_zero())
            .map(|(j, _)| j),
    )
}

/// `i m' - sum_j floor(i a_j / d)`, the twist of the `eps^i` eigensheaf of a
/// cyclic cover written in the integral-part form `L^{-i}([i D / d])`.
pub fn cyclic_twist_closed_form(multiplicities: &[u64], d: u64, i: u64) -> i64 {
    let total: u64 = multiplicities.iter().sum();
    let m_prime = (total / d) as i64;
    let floors: i64 = multiplicities.iter().map(|&a| ((i * a) / d) as i64).sum();
    i as i64 * m_prime - floors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Hyperplane;

    fn lines(count: usize) -> Arrangement {
        Arrangement::generic(2, count).unwrap()
    }

    #[test]
    fn group_basics() {
        let g = AbelianGroup::new(vec![2, 6]).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.exponent(), 6);
        assert_eq!(g.elements().len(), 12);
        assert_eq!(g.subgroup_order(&[vec![1, 0]]), 2);
        assert_eq!(g.subgroup_order(&[vec![1, 3], vec![0, 2]]), 6);
        assert_eq!(g.subgroup_order(&[vec![1, 1]]), 6);
        assert_eq!(g.subgroup_order(&[]), 1);
        assert!(AbelianGroup::new(vec![]).is_err());
        assert!(AbelianGroup::new(vec![3, 0]).is_err());
    }

    #[test]
    fn validation() {
        assert!(CoverSpec::cyclic(lines(6), 3).is_ok());
        let err = CoverSpec::cyclic(lines(3), 4).unwrap_err();
        assert!(err.to_string().contains("not a cover of the stated base"), "{err}");
        let trivial = CoverSpec::new(
            Base::ProjectiveSpace(lines(3)),
            AbelianGroup::cyclic(3).unwrap(),
            vec![vec![0]; 3],
        )
        .unwrap_err();
        assert!(trivial.to_string().contains("cover disconnected"), "{trivial}");
        let wrong_count =
            CoverSpec::new(Base::ProjectiveSpace(lines(3)), AbelianGroup::cyclic(3).unwrap(), vec![vec![1]; 2]);
        assert!(wrong_count.is_err());
        // (Z/2)^2 over four lines with monodromy (1,0),(1,0),(0,1),(0,1)
        let ok = CoverSpec::new(
            Base::ProjectiveSpace(lines(4)),
            AbelianGroup::new(vec![2, 2]).unwrap(),
            vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]],
        );
        assert!(ok.is_ok());
        // product base: relation per factor
        assert!(CoverSpec::cyclic_product(vec![3, 3], 3).is_ok());
        assert!(CoverSpec::cyclic_product(vec![3, 2], 3).is_err());
    }

    #[test]
    fn residues_and_twists() {
        let a = Arrangement::generic_weighted(2, &[2, 2, 2]).unwrap();
        let spec = CoverSpec::cyclic(a, 3).unwrap();
        let chars = spec.characters();
        assert_eq!(residues(&spec, &chars[1]), vec![Rational::ratio(2, 3); 3]);
        assert_eq!(residues(&spec, &chars[2]), vec![Rational::ratio(1, 3); 3]);
        assert!(residues(&spec, &chars[0]).iter().all(Rational::is_zero));

        let spec = CoverSpec::cyclic(lines(2), 2).unwrap();
        assert_eq!(twist_integer(&spec, &spec.characters()[1]).unwrap(), 1);

        let spec = CoverSpec::cyclic(lines(5), 5).unwrap();
        for (i, chi) in spec.characters().iter().enumerate() {
            assert_eq!(twist_integer(&spec, chi).unwrap(), i as i64);
        }
    }

    #[test]
    fn log_supports() {
        let spec = CoverSpec::cyclic(lines(5), 5).unwrap();
        for (i, chi) in spec.characters().iter().enumerate() {
            assert_eq!(log_support(&spec, chi).len(), if i == 0 { 0 } else { 5 });
        }
        // d = 4 with a_j = 2 on the first line: eps^2 has zero residue there
        let hs = vec![
            Hyperplane::from_ints(&[1, 0, 0], 2).unwrap(),
            Hyperplane::from_ints(&[0, 1, 0], 1).unwrap(),
            Hyperplane::from_ints(&[0, 0, 1], 1).unwrap(),
        ];
        let spec = CoverSpec::cyclic(Arrangement::new(2, hs).unwrap(), 4).unwrap();
        let eps2 = &spec.characters()[2];
        let supp = log_support(&spec, eps2);
        assert!(!supp.contains(0) && supp.contains(1) && supp.contains(2));
    }

    #[test]
    fn conjugate_flips_residues() {
        let spec = CoverSpec::new(
            Base::ProjectiveSpace(lines(4)),
            AbelianGroup::new(vec![2, 4]).unwrap(),
            vec![vec![1, 1], vec![1, 3], vec![1, 2], vec![1, 2]],
        )
        .unwrap();
        for chi in spec.characters() {
            let r = residues(&spec, &chi);
            let rb = residues(&spec, &chi.conj());
            for (a, b) in r.iter().zip(&rb) {
                if a.is_zero() {
                    assert!(b.is_zero());
                } else {
                    assert_eq!(b, &(Rational::one() - a));
                }
            }
            assert!(twist_integer(&spec, &chi).is_ok());
        }
    }

    #[test]
    fn closed_form_twist_matches() {
        for d in 2..=9u64 {
            for mults in [vec![1; d as usize], vec![1, 2, 2 * d - 3], vec![3, d * 2 - 3]] {
                let g = mults.iter().fold(d as i64, |g, &a| gcd(g, a as i64));
                if mults.iter().sum::<u64>() % d != 0 || g != 1 {
                    continue;
                }
                let a = Arrangement::generic_weighted(2, &mults).unwrap();
                let spec = CoverSpec::cyclic(a, d).unwrap();
                for (i, chi) in spec.characters().iter().enumerate() {
                    assert_eq!(
                        twist_integer(&spec, chi).unwrap(),
                        cyclic_twist_closed_form(&mults, d, i as u64)
                    );
                }
            }
        }
    }

    #[test]
    fn character_values() {
        let g = AbelianGroup::new(vec![4, 6]).unwrap();
        let chi = g.character(&[1, 2]).unwrap();
        assert_eq!(chi.order(), 12);
        assert_eq!(g.character(&[2, 3]).unwrap().order(), 2);
        assert!(g.character(&[0, 0]).unwrap().is_trivial());
        assert_eq!(g.character(&[0, 0]).unwrap().order(), 1);
        // chi(a) chi(b) = chi(a + b)
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(&chi.value(&a) * &chi.value(&b), chi.value(&g.add(&a, &b)));
            }
        }
    }
}
