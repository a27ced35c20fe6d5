//! Weighted hyperplane arrangements in `P^n` over the rationals, their
//! intersection posets and the combinatorial diagnostics built on them.
//!
//! Flats are identified by their *containing set*: the indices of every
//! hyperplane that contains the intersection subspace. Two index sets with
//! the same span therefore give the same flat. The ambient `P^n` itself is
//! not stored as a flat, and empty intersections are dropped.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::number::gcd;
use crate::algebra::rational::common_denominator;
use crate::algebra::Rational;
use crate::Error;

/// Arrangements are limited to this many hyperplanes (index sets are `u128`).
pub const MAX_HYPERPLANES: usize = 128;

/// A set of hyperplane indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct IndexSet(u128);

impl IndexSet {
    pub fn empty() -> Self {
        IndexSet(0)
    }

    pub fn singleton(i: usize) -> Self {
        IndexSet(1u128 << i)
    }

    pub fn from_indices(idx: impl IntoIterator<Item = usize>) -> Self {
        IndexSet(idx.into_iter().fold(0, |acc, i| acc | (1u128 << i)))
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        IndexSet(self.0 | other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..128).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A hyperplane `sum normal_i x_i = 0` carrying a multiplicity `a_j >= 1`.
///
/// The normal is stored projectively normalized: its first nonzero
/// coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hyperplane {
    normal: Vec<Rational>,
    multiplicity: u64,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rational>, multiplicity: u64) -> Result<Self, Error> {
        if multiplicity == 0 {
            return Err(Error::Argument("hyperplane multiplicity must be positive".into()));
        }
        let Some(lead) = normal.iter().find(|x| !x.is_zero()).cloned() else {
            return Err(Error::Argument("hyperplane normal is zero".into()));
        };
        let normal = normal.iter().map(|x| x / &lead).collect();
        Ok(Hyperplane { normal, multiplicity })
    }

    pub fn from_ints(normal: &[i64], multiplicity: u64) -> Result<Self, Error> {
        Self::new(normal.iter().map(|&x| Rational::from(x)).collect(), multiplicity)
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    /// The normal scaled to a primitive integer vector.
    fn primitive_normal(&self) -> Vec<BigInt> {
        let den = common_denominator(&self.normal);
        let v: Vec<BigInt> = self
            .normal
            .iter()
            .map(|x| x.numer() * (&den / x.denom()))
            .collect();
        make_primitive(v)
    }
}

fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x = &*x / &g;
        }
    }
    v
}

/// Distinct weighted hyperplanes in `P^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::Argument("ambient dimension must be at least 1".into()));
        }
        if hyperplanes.len() > MAX_HYPERPLANES {
            return Err(Error::ScaleExceeded(format!(
                "{} hyperplanes; at most {MAX_HYPERPLANES} are supported",
                hyperplanes.len()
            )));
        }
        for (j, h) in hyperplanes.iter().enumerate() {
            if h.normal.len() != dim + 1 {
                return Err(Error::Argument(format!(
                    "hyperplane {j} has {} coordinates, expected {}",
                    h.normal.len(),
                    dim + 1
                )));
            }
            if let Some(i) = hyperplanes[..j].iter().position(|g| g.normal == h.normal) {
                return Err(Error::Argument(format!("hyperplanes {i} and {j} coincide")));
            }
        }
        Ok(Arrangement { dim, hyperplanes })
    }

    /// `count` hyperplanes in general position: normals on the moment curve
    /// `(1, t, t^2, ..., t^n)`, `t = 0, 1, ..., count-1`, so any `n+1` of
    /// them are independent by Vandermonde.
    pub fn generic(dim: usize, count: usize) -> Result<Self, Error> {
        Self::generic_weighted(dim, &vec![1; count])
    }

    /// As [`Arrangement::generic`] with the given multiplicities.
    pub fn generic_weighted(dim: usize, multiplicities: &[u64]) -> Result<Self, Error> {
        let hs = multiplicities
            .iter()
            .enumerate()
            .map(|(t, &a)| {
                let normal: Vec<i64> = (0..=dim as u32).map(|k| (t as i64).pow(k)).collect();
                Hyperplane::from_ints(&normal, a)
            })
            .collect::<Result<_, _>>()?;
        Self::new(dim, hs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn multiplicities(&self) -> Vec<u64> {
        self.hyperplanes.iter().map(|h| h.multiplicity).collect()
    }

    pub fn is_reduced(&self) -> bool {
        self.hyperplanes.iter().all(|h| h.multiplicity == 1)
    }

    /// Sum of multiplicities, i.e. the degree of the branch divisor.
    pub fn total_degree(&self) -> u64 {
        self.hyperplanes.iter().map(|h| h.multiplicity).sum()
    }

    /// Sum of multiplicities over `set`.
    pub fn incidence_number(&self, set: &IndexSet) -> u64 {
        set.iter().map(|j| self.hyperplanes[j].multiplicity).sum()
    }
}

/// Row-echelon basis of a span of integer vectors.
#[derive(Clone, Debug)]
struct Echelon {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// `v` reduced against the basis; zero iff `v` lies in the span.
    fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let a = &row[*pivot];
            let b = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x = &*x * a - &b * r;
            }
            v = make_primitive(v);
        }
        v
    }

    fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` if independent; returns whether the rank grew.
    fn insert(&mut self, v: &[BigInt]) -> bool {
        let r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                let r = if r[p].is_negative() { r.iter().map(|x| -x).collect() } else { r };
                self.rows.push((p, r));
                true
            }
            None => false,
        }
    }
}

/// A nonempty intersection of hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    /// An independent subset of hyperplanes cutting out the flat.
    pub generators: IndexSet,
    /// Every hyperplane containing the flat.
    pub containing: IndexSet,
    /// Projective dimension, `n - rank`.
    pub dim: i64,
}

impl Flat {
    pub fn codim(&self, n: usize) -> i64 {
        n as i64 - self.dim
    }
}

/// All nonempty intersections of hyperplanes, ordered by decreasing
/// dimension, with the Möbius function of the inclusion order.
#[derive(Clone, Debug)]
pub struct IntersectionPoset {
    n: usize,
    flats: Vec<Flat>,
    index: HashMap<IndexSet, usize>,
    open_euler: Vec<i64>,
    /// `mobius[f]` lists `(g, mu(F, G))` for every flat `G` contained in `F`.
    mobius: OnceLock<Vec<Vec<(usize, i64)>>>,
}

/// Intersection poset of `arr`, with every distinct nonempty intersection
/// listed once.
pub fn build_poset(arr: &Arrangement) -> IntersectionPoset {
    let n = arr.dim;
    let normals: Vec<Vec<BigInt>> = arr.hyperplanes.iter().map(Hyperplane::primitive_normal).collect();
    let m = normals.len();

    let mut flats: Vec<Flat> = Vec::new();
    let mut echelons: Vec<Echelon> = Vec::new();
    let mut index: HashMap<IndexSet, usize> = HashMap::new();

    let mut frontier: Vec<usize> = Vec::new();
    for (j, v) in normals.iter().enumerate() {
        let mut e = Echelon::new();
        e.insert(v);
        let containing = closure(&e, &normals, IndexSet::singleton(j));
        if index.contains_key(&containing) {
            continue;
        }
        index.insert(containing, flats.len());
        frontier.push(flats.len());
        flats.push(Flat {
            generators: IndexSet::singleton(j),
            containing,
            dim: n as i64 - 1,
        });
        echelons.push(e);
    }

    // rank r flats -> rank r+1 flats; rank n+1 would be empty
    for rank in 1..n {
        let mut next = Vec::new();
        for &f in &frontier {
            let mut covered = flats[f].containing;
            for j in 0..m {
                if covered.contains(j) {
                    continue;
                }
                let mut e = echelons[f].clone();
                e.insert(&normals[j]);
                debug_assert_eq!(e.rank(), rank + 1);
                let containing = closure(&e, &normals, flats[f].containing.union(&IndexSet::singleton(j)));
                covered = covered.union(&containing);
                if index.contains_key(&containing) {
                    continue;
                }
                let mut generators = flats[f].generators;
                generators.insert(j);
                index.insert(containing, flats.len());
                next.push(flats.len());
                flats.push(Flat { generators, containing, dim: (n - rank - 1) as i64 });
                echelons.push(e);
            }
        }
        frontier = next;
    }

    // deterministic order: dimension descending, then containing set
    let mut order: Vec<usize> = (0..flats.len()).collect();
    order.sort_by_key(|&i| (-flats[i].dim, flats[i].containing.to_vec()));
    let flats: Vec<Flat> = order.iter().map(|&i| flats[i].clone()).collect();
    let index = flats.iter().enumerate().map(|(i, f)| (f.containing, i)).collect();

    // open stratum of F is F minus the strictly smaller flats, and a closed
    // flat of dimension k is P^k
    let mut open_euler = vec![0i64; flats.len()];
    for f in (0..flats.len()).rev() {
        let inner: i64 = (f + 1..flats.len())
            .filter(|&g| flats[g].dim < flats[f].dim && flats[f].containing.is_subset(&flats[g].containing))
            .map(|g| open_euler[g])
            .sum();
        open_euler[f] = flats[f].dim + 1 - inner;
    }

    IntersectionPoset { n, flats, index, open_euler, mobius: OnceLock::new() }
}

fn closure(e: &Echelon, normals: &[Vec<BigInt>], known: IndexSet) -> IndexSet {
    let mut out = known;
    for (l, v) in normals.iter().enumerate() {
        if !out.contains(l) && e.contains(v) {
            out.insert(l);
        }
    }
    out
}

impl IntersectionPoset {
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    /// The flat whose containing set is exactly `containing`.
    pub fn find(&self, containing: &IndexSet) -> Option<usize> {
        self.index.get(containing).copied()
    }

    /// The smallest flat containing every hyperplane in `set`, i.e. their
    /// intersection; `None` when that intersection is empty.
    pub fn meet(&self, set: &IndexSet) -> Option<usize> {
        // flats are sorted by decreasing dimension; the intersection is the
        // largest flat whose containing set includes `set`
        (0..self.flats.len()).find(|&f| set.is_subset(&self.flats[f].containing))
    }

    fn mobius_table(&self) -> &[Vec<(usize, i64)>] {
        self.mobius.get_or_init(|| {
            let flats = &self.flats;
            flats
                .iter()
                .map(|top| {
                    // flats inside `top`, already sorted by decreasing dimension
                    let interval: Vec<usize> = (0..flats.len())
                        .filter(|&g| top.containing.is_subset(&flats[g].containing))
                        .collect();
                    let mut mu: Vec<(usize, i64)> = Vec::with_capacity(interval.len());
                    for &g in &interval {
                        let value = if flats[g] == *top {
                            1
                        } else {
                            -mu.iter()
                                .filter(|(k, _)| flats[*k].containing.is_subset(&flats[g].containing))
                                .map(|(_, v)| v)
                                .sum::<i64>()
                        };
                        mu.push((g, value));
                    }
                    mu
                })
                .collect()
        })
    }

    /// `mu(F, G)` for `G` contained in `F`; zero when `G` is not inside `F`.
    pub fn mobius(&self, f: usize, g: usize) -> i64 {
        self.mobius_table()[f]
            .iter()
            .find(|(k, _)| *k == g)
            .map_or(0, |(_, v)| *v)
    }

    /// Flats whose number of containing hyperplanes exceeds their codimension.
    pub fn non_normal_crossing(&self) -> Vec<usize> {
        (0..self.flats.len())
            .filter(|&f| self.flats[f].containing.len() as i64 > self.flats[f].codim(self.n))
            .collect()
    }

    /// Euler characteristic of the open stratum of flat `f`: the flat minus
    /// every smaller flat. A closed flat of dimension `k` is `P^k`, so
    /// Möbius inversion gives `sum_G mu(F, G) (dim G + 1)`.
    pub fn stratum_euler(&self, f: usize) -> i64 {
        self.open_euler[f]
    }

    /// [`IntersectionPoset::stratum_euler`] evaluated literally through the
    /// Möbius function.
    pub fn stratum_euler_mobius(&self, f: usize) -> i64 {
        self.mobius_table()[f]
            .iter()
            .map(|(g, mu)| mu * (self.flats[*g].dim + 1))
            .sum()
    }
}

/// Normal-crossing verdict and the flats that violate it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalCrossing {
    pub normal_crossing: bool,
    pub violators: Vec<usize>,
}

pub fn is_normal_crossing(poset: &IntersectionPoset) -> NormalCrossing {
    let violators = poset.non_normal_crossing();
    NormalCrossing { normal_crossing: violators.is_empty(), violators }
}

/// Incidence numbers (sums of multiplicities of containing hyperplanes) at
/// the flats where normal crossings fail.
pub fn essential_incidence_numbers(arr: &Arrangement, poset: &IntersectionPoset) -> BTreeSet<u64> {
    poset
        .non_normal_crossing()
        .into_iter()
        .map(|f| arr.incidence_number(&poset.flats[f].containing))
        .collect()
}

/// Coprimality checks for a degree-`d` cyclic cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverHypotheses {
    pub degree: u64,
    pub multiplicities_coprime: bool,
    pub essential_incidences_coprime: bool,
    /// Hyperplane arrangements are always of arrangement type.
    pub arrangement_type: bool,
    pub failing_multiplicities: Vec<u64>,
    pub failing_incidences: Vec<u64>,
    pub passed: bool,
}

pub fn check_cover_hypotheses(
    arr: &Arrangement,
    poset: &IntersectionPoset,
    d: u64,
) -> Result<CoverHypotheses, Error> {
    if d < 2 {
        return Err(Error::Argument(format!("cover degree must be at least 2, got {d}")));
    }
    let coprime = |x: u64| gcd(x as i64, d as i64) == 1;
    let failing_multiplicities: Vec<u64> = arr
        .multiplicities()
        .into_iter()
        .filter(|&a| !coprime(a))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let failing_incidences: Vec<u64> = essential_incidence_numbers(arr, poset)
        .into_iter()
        .filter(|&a| !coprime(a))
        .collect();
    let multiplicities_coprime = failing_multiplicities.is_empty();
    let essential_incidences_coprime = failing_incidences.is_empty();
    Ok(CoverHypotheses {
        degree: d,
        multiplicities_coprime,
        essential_incidences_coprime,
        arrangement_type: true,
        failing_multiplicities,
        failing_incidences,
        passed: multiplicities_coprime && essential_incidences_coprime,
    })
}

/// Blow-up centres of the canonical log resolution (non-normal-crossing
/// flats by increasing dimension) with the multiplicity of the pulled-back
/// divisor along each exceptional divisor.
pub fn resolution_pullback_coefficients(arr: &Arrangement, poset: &IntersectionPoset) -> Vec<(usize, u64)> {
    let mut centres = poset.non_normal_crossing();
    centres.sort_by_key(|&f| (poset.flats[f].dim, poset.flats[f].containing.to_vec()));
    centres
        .into_iter()
        .map(|f| (f, arr.incidence_number(&poset.flats[f].containing)))
        .collect()
}

/// Euler characteristic of `P^n` minus the arrangement.
pub fn complement_euler(poset: &IntersectionPoset) -> i64 {
    let strata: i64 = (0..poset.len()).map(|f| poset.stratum_euler(f)).sum();
    poset.n as i64 + 1 - strata
}
