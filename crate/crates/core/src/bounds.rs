//! Euler characteristics of covers, the nontrivial middle cohomology, the
//! Hodge-cycle bound and the consolidated theorem report.

use serde::Serialize;

use crate::algebra::is_prime;
use crate::arrangement::{check_cover_hypotheses, complement_euler, is_normal_crossing, CoverHypotheses, IndexSet};
use crate::chars::{characters_abelian, rational_span_breakdown, CharTable, OrbitContribution};
use crate::cover::{log_support, twist_vector, Base, CoverSpec};
use crate::hodge::{condition_b_check, hodge_table, ConditionB, EigenHodgeTable};
use crate::Error;

/// One stratum of the branch stratification: its topological Euler
/// characteristic and the components through it.
struct Stratum {
    euler: i64,
    components: IndexSet,
}

/// The open complement (empty component set) followed by the open strata of
/// the divisor.
fn strata(spec: &CoverSpec) -> Vec<Stratum> {
    match spec.base() {
        Base::ProjectiveSpace(_) => {
            let poset = spec.poset().expect("projective base");
            std::iter::once(Stratum { euler: complement_euler(poset), components: IndexSet::empty() })
                .chain((0..poset.len()).map(|f| Stratum {
                    euler: poset.stratum_euler(f),
                    components: poset.flats()[f].containing,
                }))
                .collect()
        }
        Base::ProductP1 { points_per_factor } => {
            // per factor: the open curve P^1 - S_f, or one of its points
            let mut out = vec![Stratum { euler: 1, components: IndexSet::empty() }];
            let mut offset = 0;
            for &s in points_per_factor {
                let mut next = Vec::with_capacity(out.len() * (s + 1));
                for st in &out {
                    next.push(Stratum { euler: st.euler * (2 - s as i64), components: st.components });
                    for j in 0..s {
                        let mut c = st.components;
                        c.insert(offset + j);
                        next.push(Stratum { euler: st.euler, components: c });
                    }
                }
                out = next;
                offset += s;
            }
            out
        }
    }
}

/// `e(Y) = |G| e(Z - D) + sum_J (|G| / |G(J)|) e(D_J')`, `G(J)` generated by
/// the monodromy around the components through the stratum.
pub fn euler_cover(spec: &CoverSpec) -> i64 {
    let g = spec.group().order() as i64;
    strata(spec)
        .iter()
        .map(|s| s.euler * g / spec.inertia_order(&s.components) as i64)
        .sum()
}

/// Topological Euler characteristic of each eigenspace of `H^*(Y)`, in the
/// order of [`CoverSpec::characters`]: a stratum contributes to `chi` exactly
/// when `chi` is trivial on its inertia group.
pub fn character_euler(spec: &CoverSpec) -> Vec<i64> {
    let strata = strata(spec);
    spec.characters()
        .iter()
        .map(|chi| {
            strata
                .iter()
                .filter(|s| s.components.iter().all(|j| chi.phase(&spec.monodromy()[j]).is_zero()))
                .map(|s| s.euler)
                .sum()
        })
        .collect()
}

/// Whether `H^i(Z) -> H^i(Y)` is an isomorphism for `i != n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakLefschetz {
    pub holds: bool,
    pub reason: String,
}

pub fn weak_lefschetz(spec: &CoverSpec) -> WeakLefschetz {
    match spec.base() {
        Base::ProjectiveSpace(_) => {
            let nc = is_normal_crossing(spec.poset().expect("projective base"));
            if nc.normal_crossing {
                WeakLefschetz {
                    holds: true,
                    reason: "normal crossings: every nontrivial eigensheaf has positive twist and nonempty log support".into(),
                }
            } else {
                WeakLefschetz { holds: false, reason: "not established without normal crossings".into() }
            }
        }
        Base::ProductP1 { points_per_factor } => {
            let factors = spec.base().component_factors();
            for chi in spec.characters().iter().filter(|c| !c.is_trivial()) {
                let support = log_support(spec, chi);
                let mut hit = vec![false; points_per_factor.len()];
                for j in support.iter() {
                    hit[factors[j]] = true;
                }
                if let Some(f) = hit.iter().position(|h| !h) {
                    return WeakLefschetz {
                        holds: false,
                        reason: format!("{} is unramified over factor {f}", chi.label()),
                    };
                }
            }
            WeakLefschetz {
                holds: true,
                reason: "every nontrivial character ramifies over every factor".into(),
            }
        }
    }
}

/// `dim H^n_nt(Y) = (-1)^n (e(Y) - e(Z))`, valid under weak Lefschetz.
pub fn dim_h_nt(spec: &CoverSpec) -> Result<i64, Error> {
    let wl = weak_lefschetz(spec);
    if !wl.holds {
        return Err(Error::Hypothesis(format!("weak Lefschetz property: {}", wl.reason)));
    }
    let n = spec.dim();
    let diff = euler_cover(spec) - spec.base().euler();
    let v = if n.is_multiple_of(2) { diff } else { -diff };
    if v < 0 {
        return Err(Error::Hypothesis(format!("(-1)^n (e(Y) - e(Z)) = {v} is negative")));
    }
    Ok(v)
}

/// The upper bound on sub Hodge structures of `H^i_nt` of level `< i - 2k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub degree: usize,
    pub level: usize,
    pub dim_h_nt: i64,
    /// Rational span of the band `H^(0,i) + ... + H^(k,i-k)` and its conjugate.
    pub sigma: u64,
    /// `dim_h_nt - sigma` before clipping.
    pub raw: i64,
    pub bound: i64,
    /// The same difference with the band `p + q = i, p - q >= k` summed term
    /// by term, for comparison.
    pub alternative_raw: i64,
    pub breakdown: Vec<OrbitContribution>,
}

/// Default level: `i/2 - 1` for even `i` (Hodge cycles), `(i-1)/2` for odd.
pub fn default_level(i: usize) -> Option<usize> {
    if i.is_multiple_of(2) {
        (i / 2).checked_sub(1)
    } else {
        Some((i - 1) / 2)
    }
}

/// The bound for isotypic Hodge numbers `h[chi][p][q]` indexed like the rows
/// of `chars`.
pub fn band_bound(h: &[Vec<Vec<i64>>], chars: &CharTable, i: usize, k: usize) -> Result<BoundReport, Error> {
    if 2 * k >= i {
        return Err(Error::Argument(format!("level k = {k} must be < i/2 = {i}/2: band overlaps its conjugate")));
    }
    if h.len() != chars.len() {
        return Err(Error::Argument(format!("{} Hodge blocks for {} characters", h.len(), chars.len())));
    }
    let trivial = chars.trivial();
    let get = |c: usize, p: usize, q: usize| -> i64 { h[c].get(p).and_then(|r| r.get(q)).copied().unwrap_or(0) };
    let dim_h_nt: i64 = (0..h.len())
        .filter(|&c| c != trivial)
        .map(|c| (0..=i).map(|p| get(c, p, i - p)).sum::<i64>())
        .sum();
    let mut n = vec![0u64; h.len()];
    for (c, slot) in n.iter_mut().enumerate() {
        if c == trivial {
            continue;
        }
        let band: i64 = (0..=k).map(|p| get(c, p, i - p) + get(c, i - p, p)).sum();
        let degree = chars.characters()[c].degree as i64;
        if band % degree != 0 {
            return Err(Error::Input(format!(
                "isotypic dimension {band} of {} is not divisible by its degree {degree}",
                chars.characters()[c].label
            )));
        }
        *slot = (band / degree) as u64;
    }
    let (sigma, breakdown) = rational_span_breakdown(&n, chars)?;
    let raw = dim_h_nt - sigma as i64;

    let mut alternative = 0i64;
    for o in crate::chars::galois_orbits(chars) {
        if o.members.contains(&trivial) {
            continue;
        }
        for p in 0..=i {
            let q = i - p;
            if (p as i64 - q as i64) < k as i64 {
                continue;
            }
            let copies = o
                .members
                .iter()
                .map(|&c| (get(c, p, q) as u64).div_ceil(o.schur_index * o.degree))
                .max()
                .unwrap_or(0);
            alternative += (o.size * o.schur_index * copies) as i64;
        }
    }
    Ok(BoundReport {
        degree: i,
        level: k,
        dim_h_nt,
        sigma,
        raw,
        bound: raw.max(0),
        alternative_raw: dim_h_nt - alternative,
        breakdown,
    })
}

/// [`band_bound`] for a table of an abelian cover; blocks are matched to
/// table rows by label.
pub fn hodge_cycle_bound(table: &EigenHodgeTable, chars: &CharTable, i: usize, k: usize) -> Result<BoundReport, Error> {
    let n = table.dim();
    let mut h = vec![vec![vec![0i64; n + 1]; n + 1]; chars.len()];
    for b in table.blocks() {
        let label = b.character.label();
        let idx = chars
            .index_of(&label)
            .ok_or_else(|| Error::Argument(format!("character {label} is not in table {}", chars.name())))?;
        h[idx] = b.h.clone();
    }
    band_bound(&h, chars, i, k)
}

/// Whether a conclusion applies, and why.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub licensed: bool,
    pub reason: String,
}

impl Verdict {
    fn yes(reason: impl Into<String>) -> Self {
        Verdict { licensed: true, reason: reason.into() }
    }

    fn no(reason: impl Into<String>) -> Self {
        Verdict { licensed: false, reason: reason.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub normal_crossing: bool,
    pub non_normal_crossing_flats: usize,
    /// Coprimality checks (cyclic covers of `P^n`).
    pub coprimality: Option<CoverHypotheses>,
    pub degree_prime: Option<bool>,
    pub condition_b: Option<ConditionB>,
    pub weak_lefschetz: WeakLefschetz,
    /// `None` when exact Hodge numbers are available, else why not.
    pub hodge_unavailable: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conclusions {
    pub beilinson_hodge: Verdict,
    pub generalized_hodge: Verdict,
    /// Bound at `i = n` and the default level.
    pub hodge_cycle_bound: Option<BoundReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub dim: usize,
    pub group_orders: Vec<u64>,
    pub euler_cover: i64,
    pub dim_h_nt: Option<i64>,
    pub hypotheses: Hypotheses,
    pub conclusions: Conclusions,
}

impl TheoremReport {
    /// False when a computational hypothesis fails: coprimality, normal
    /// crossings, exact Hodge numbers, or weak Lefschetz.
    pub fn hypotheses_pass(&self) -> bool {
        let h = &self.hypotheses;
        h.normal_crossing
            && h.coprimality.as_ref().is_none_or(|c| c.passed)
            && h.hodge_unavailable.is_none()
            && h.weak_lefschetz.holds
    }
}

/// Runs every check and states which conclusions the hypotheses license.
pub fn theorem_report(spec: &CoverSpec) -> Result<TheoremReport, Error> {
    let n = spec.dim();
    let cyclic = spec.group().cyclic_order();
    let (normal_crossing, nnc) = match spec.poset() {
        Some(p) => {
            let nc = is_normal_crossing(p);
            (nc.normal_crossing, nc.violators.len())
        }
        None => (true, 0),
    };
    let coprimality = match (spec.arrangement(), cyclic) {
        (Some(a), Some(d)) if d >= 2 => Some(check_cover_hypotheses(a, spec.poset().expect("projective"), d)?),
        _ => None,
    };
    let wl = weak_lefschetz(spec);
    let (table, hodge_unavailable) = match hodge_table(spec) {
        Ok(t) => (Some(t), None),
        Err(Error::HodgeUnavailable(e)) => (None, Some(e.reason.clone())),
        Err(e) => return Err(e),
    };
    let condition_b = match (&table, cyclic) {
        (Some(t), Some(d)) if d >= 2 => Some(condition_b_check(spec, t)?),
        _ => None,
    };
    let chars = characters_abelian(spec.group())?;
    let bound_at = |k: usize| -> Result<Option<BoundReport>, Error> {
        match &table {
            Some(t) if n >= 1 && 2 * k < n => hodge_cycle_bound(t, &chars, n, k).map(Some),
            _ => Ok(None),
        }
    };
    let bound = match default_level(n) {
        Some(k) => bound_at(k)?,
        None => None,
    };
    let bound_zero = bound_at(0)?;

    let beilinson_hodge = match (spec.base(), cyclic, &coprimality) {
        (Base::ProductP1 { .. }, _, _) => Verdict::no("stated for covers of projective space"),
        (_, None, _) | (_, Some(1), _) => Verdict::no("stated for cyclic covers"),
        (_, Some(d), Some(c)) if c.passed => {
            Verdict::yes(format!("multiplicities and essential incidence numbers coprime to d = {d}"))
        }
        (_, Some(d), Some(c)) => {
            let mut bad: Vec<String> = Vec::new();
            if !c.failing_multiplicities.is_empty() {
                bad.push(format!("multiplicities {:?}", c.failing_multiplicities));
            }
            if !c.failing_incidences.is_empty() {
                bad.push(format!("essential incidence numbers {:?}", c.failing_incidences));
            }
            Verdict::no(format!("{} not coprime to d = {d}", bad.join(" and ")))
        }
        _ => Verdict::no("coprimality not checked"),
    };

    let generalized_hodge = if !normal_crossing {
        Verdict::no("branch divisor does not have normal crossings")
    } else if let Some(reason) = &hodge_unavailable {
        Verdict::no(format!("Hodge numbers unavailable: {reason}"))
    } else if !wl.holds {
        Verdict::no(format!("weak Lefschetz: {}", wl.reason))
    } else if let Some(b) = condition_b.as_ref().filter(|b| b.holds) {
        let d = b.degree;
        if is_prime(d) {
            Verdict::yes("d prime, condition (b) equality")
        } else if b.equality {
            Verdict::yes("condition (b) equality")
        } else {
            Verdict::yes("condition (b) holds")
        }
    } else if bound_zero.as_ref().is_some_and(|b| b.bound == 0) {
        Verdict::yes("Hodge-cycle bound at level 0 vanishes")
    } else if condition_b.is_some() {
        Verdict::no("condition (b) fails")
    } else {
        Verdict::no("Hodge-cycle bound at level 0 is positive")
    };

    let dim_h_nt = if wl.holds { dim_h_nt(spec).ok() } else { None };
    Ok(TheoremReport {
        dim: n,
        group_orders: spec.group().orders().to_vec(),
        euler_cover: euler_cover(spec),
        dim_h_nt,
        hypotheses: Hypotheses {
            normal_crossing,
            non_normal_crossing_flats: nnc,
            coprimality,
            degree_prime: cyclic.map(is_prime),
            condition_b,
            weak_lefschetz: wl,
            hodge_unavailable,
        },
        conclusions: Conclusions { beilinson_hodge, generalized_hodge, hodge_cycle_bound: bound },
    })
}

/// Per-factor twists of every character, for reports on product bases.
pub fn twists(spec: &CoverSpec) -> Result<Vec<Vec<i64>>, Error> {
    spec.characters().iter().map(|c| twist_vector(spec, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{Arrangement, Hyperplane};
    use crate::chars::quaternion_group;
    use crate::cover::AbelianGroup;
    use crate::hodge::{eigen_hodge, EigenHodgeTable};

    fn generic_cyclic(n: usize, count: usize, d: u64) -> CoverSpec {
        CoverSpec::cyclic(Arrangement::generic(n, count).unwrap(), d).unwrap()
    }

    fn concurrent(d: u64) -> CoverSpec {
        let hs = vec![
            Hyperplane::from_ints(&[1, 0, 0], 1).unwrap(),
            Hyperplane::from_ints(&[0, 1, 0], 1).unwrap(),
            Hyperplane::from_ints(&[1, -1, 0], 1).unwrap(),
        ];
        CoverSpec::cyclic(Arrangement::new(2, hs).unwrap(), d).unwrap()
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_cover(&generic_cyclic(2, 3, 3)), 3);
        assert_eq!(euler_cover(&generic_cyclic(2, 4, 4)), 6);
        assert_eq!(dim_h_nt(&generic_cyclic(2, 4, 4)).unwrap(), 3);
        assert_eq!(dim_h_nt(&generic_cyclic(2, 3, 3)).unwrap(), 0);
        // degree-1 cover
        let spec = CoverSpec::new(
            Base::ProjectiveSpace(Arrangement::generic(2, 3).unwrap()),
            AbelianGroup::cyclic(1).unwrap(),
            vec![vec![0]; 3],
        )
        .unwrap();
        assert_eq!(euler_cover(&spec), 3);
        // genus 1: e = 0
        assert_eq!(euler_cover(&generic_cyclic(1, 4, 2)), 0);
    }

    #[test]
    fn character_euler_sums_to_cover() {
        for spec in [generic_cyclic(2, 5, 5), generic_cyclic(3, 6, 3), concurrent(3)] {
            let e = character_euler(&spec);
            assert_eq!(e.iter().sum::<i64>(), euler_cover(&spec));
            assert_eq!(e[0], spec.base().euler());
        }
        let spec = CoverSpec::cyclic_product(vec![3, 3], 3).unwrap();
        assert_eq!(character_euler(&spec).iter().sum::<i64>(), euler_cover(&spec));
    }

    #[test]
    fn bound_examples() {
        let spec = generic_cyclic(2, 5, 5);
        let t = eigen_hodge(&spec).unwrap();
        let chars = characters_abelian(spec.group()).unwrap();
        let b = hodge_cycle_bound(&t, &chars, 2, 0).unwrap();
        assert_eq!((b.dim_h_nt, b.sigma, b.bound), (12, 12, 0));
        assert!(b.alternative_raw < 0);

        let spec = generic_cyclic(2, 4, 4);
        let t = eigen_hodge(&spec).unwrap();
        let chars = characters_abelian(spec.group()).unwrap();
        let b = hodge_cycle_bound(&t, &chars, 2, 0).unwrap();
        assert_eq!((b.dim_h_nt, b.sigma, b.bound), (3, 2, 1));
        assert!(hodge_cycle_bound(&t, &chars, 2, 1).is_err());

        let zero = EigenHodgeTable::new(2, Vec::new()).unwrap();
        assert_eq!(hodge_cycle_bound(&zero, &chars, 2, 0).unwrap().bound, 0);
    }

    #[test]
    fn band_bound_with_schur_index() {
        // one copy of the 2-dimensional quaternion representation in H^(2,0)
        // and its conjugate in H^(0,2): isotypic dimension 2 + 2
        let q = quaternion_group();
        let mut h = vec![vec![vec![0i64; 3]; 3]; q.len()];
        h[4][2][0] = 2;
        h[4][0][2] = 2;
        h[4][1][1] = 4;
        let b = band_bound(&h, &q, 2, 0).unwrap();
        assert_eq!((b.dim_h_nt, b.sigma, b.bound), (8, 4, 4));
        h[4][2][0] = 3;
        assert!(matches!(band_bound(&h, &q, 2, 0), Err(Error::Input(_))));
    }

    #[test]
    fn reports() {
        let r = theorem_report(&generic_cyclic(2, 5, 5)).unwrap();
        assert!(r.conclusions.beilinson_hodge.licensed);
        assert!(r.conclusions.generalized_hodge.licensed);
        assert_eq!(r.conclusions.generalized_hodge.reason, "d prime, condition (b) equality");
        assert!(r.hypotheses_pass());

        let r = theorem_report(&generic_cyclic(2, 4, 4)).unwrap();
        assert!(r.conclusions.beilinson_hodge.licensed);
        assert!(!r.conclusions.generalized_hodge.licensed);
        assert_eq!(r.conclusions.hodge_cycle_bound.as_ref().unwrap().bound, 1);

        let r = theorem_report(&concurrent(3)).unwrap();
        assert!(!r.conclusions.beilinson_hodge.licensed);
        assert!(r.conclusions.beilinson_hodge.reason.contains("[3]"));
        assert!(!r.hypotheses_pass());

        let r = theorem_report(&CoverSpec::cyclic_product(vec![3, 3], 3).unwrap()).unwrap();
        assert!(r.conclusions.generalized_hodge.licensed);
        assert!(!r.conclusions.beilinson_hodge.licensed);
        assert_eq!(r.dim_h_nt, Some(2));
    }

    #[test]
    fn default_levels() {
        assert_eq!(default_level(0), None);
        assert_eq!(default_level(2), Some(0));
        assert_eq!(default_level(3), Some(1));
        assert_eq!(default_level(4), Some(1));
    }
}
