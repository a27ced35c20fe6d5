//! Invariants checked on random inputs. Arrangements are drawn in general
//! position with random multiplicities, so every draw has normal crossings.

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use hodge_covers::algebra::{binomial, euler_phi, smith_normal_form, Cyclotomic, IntMatrix, Rational};
use hodge_covers::bounds::{dim_h_nt, hodge_cycle_bound};
use hodge_covers::chars::{characters_abelian, rational_span};
use hodge_covers::cover::{cyclic_twist_closed_form, residues, twist_integer};
use hodge_covers::hodge::{eigen_hodge, hodge_table_hrr};
use hodge_covers::{AbelianGroup, Arrangement, CoverSpec};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A cyclic cover of `P^n` branched over general hyperplanes whose
/// multiplicities sum to a multiple of `d`; none is divisible by `d`.
fn arb_cover(max_d: u64, max_n: usize) -> impl Strategy<Value = CoverSpec> {
    (2..=max_d, 1..=max_n, 2usize..=6).prop_flat_map(|(d, n, count)| {
        proptest::collection::vec(1..d, count).prop_filter_map("cover must be connected", move |mut m| {
            let rest: u64 = m[..m.len() - 1].iter().sum();
            // when the others already sum to zero the last one is dropped
            match (d - rest % d) % d {
                0 => {
                    m.pop();
                }
                last => *m.last_mut().unwrap() = last,
            }
            CoverSpec::cyclic(Arrangement::generic_weighted(n, &m).ok()?, d).ok()
        })
    })
}

fn arb_small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r))
}

fn arb_cyclotomic(conductor: u64) -> impl Strategy<Value = Cyclotomic> {
    proptest::collection::vec((-4i64..=4, 1i64..=3), conductor as usize).prop_map(move |cs| {
        let mut acc = Cyclotomic::zero(conductor);
        for (k, (a, b)) in cs.into_iter().enumerate() {
            let term = &Cyclotomic::rational(conductor, Rational::ratio(a, b)) * &Cyclotomic::zeta_pow(conductor, k as i64);
            acc = &acc + &term;
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn pascal_rule(n in 1i64..40, k in 1i64..40) {
        prop_assert_eq!(binomial(n, k).unwrap(), binomial(n - 1, k - 1).unwrap() + binomial(n - 1, k).unwrap());
    }

    #[test]
    fn totient_is_multiplicative(a in 1u64..200, b in 1u64..200) {
        prop_assume!(gcd(a, b) == 1);
        let phi = |x: u64| euler_phi(x as i64).unwrap();
        prop_assert_eq!(phi(a * b), phi(a) * phi(b));
    }

    #[test]
    fn smith_form_properties(rows in arb_small_matrix()) {
        let m = IntMatrix::from_rows(&rows).unwrap();
        let s = smith_normal_form(&m);
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.d.clone());
        prop_assert!(s.u.determinant().unwrap().abs().is_one());
        prop_assert!(s.v.determinant().unwrap().abs().is_one());
        prop_assert!(s.d.is_diagonal());
        let diag = s.d.diagonal_entries();
        prop_assert!(diag.iter().all(|x| !x.is_negative()));
        for w in diag.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
        // the invariant factors of a matrix and its transpose agree
        prop_assert_eq!(smith_normal_form(&m.transpose()).d.diagonal_entries(), diag);
    }

    #[test]
    fn galois_action_composes(x in arb_cyclotomic(12), y in arb_cyclotomic(12)) {
        for s in [1i64, 5, 7, 11] {
            for t in [1i64, 5, 7, 11] {
                let st = x.galois_conjugate(s).unwrap().galois_conjugate(t).unwrap();
                prop_assert_eq!(st, x.galois_conjugate(s * t).unwrap());
            }
            // each conjugation is a ring homomorphism
            let prod = (&x * &y).galois_conjugate(s).unwrap();
            prop_assert_eq!(prod, &x.galois_conjugate(s).unwrap() * &y.galois_conjugate(s).unwrap());
        }
        prop_assert_eq!(x.conj(), x.galois_conjugate(-1).unwrap());
    }

    #[test]
    fn residues_sum_to_integers_and_flip_under_conjugation(spec in arb_cover(9, 2)) {
        for chi in spec.characters() {
            let r = residues(&spec, &chi);
            prop_assert!(r.iter().all(|x| !x.is_negative() && *x < Rational::one()));
            // every component is a hyperplane, so the degree-weighted sum is plain
            let total = r.iter().fold(Rational::zero(), |acc, x| &acc + x);
            prop_assert!(total.is_integer());
            let rc = residues(&spec, &chi.conj());
            for (a, b) in r.iter().zip(&rc) {
                if a.is_zero() {
                    prop_assert!(b.is_zero());
                } else {
                    prop_assert_eq!(&(a + b), &Rational::one());
                }
            }
        }
    }

    #[test]
    fn twist_matches_closed_form(spec in arb_cover(9, 3)) {
        let d = spec.group().order();
        let m = spec.arrangement().unwrap().multiplicities();
        for (i, chi) in spec.characters().iter().enumerate() {
            prop_assert_eq!(twist_integer(&spec, chi).unwrap(), cyclic_twist_closed_form(&m, d, i as u64));
        }
    }

    #[test]
    fn hodge_symmetries_and_nonnegativity(spec in arb_cover(7, 3)) {
        let t = eigen_hodge(&spec).unwrap();
        let n = spec.dim();
        for b in t.blocks() {
            let bar = t.block(&b.character.conj()).unwrap();
            for p in 0..=n {
                for q in 0..=n {
                    prop_assert!(b.h[p][q] >= 0);
                    // complex conjugation
                    prop_assert_eq!(b.h[p][q], bar.h[q][p]);
                    // Serre duality
                    prop_assert_eq!(b.h[p][q], bar.h[n - p][n - q]);
                }
            }
        }
    }

    #[test]
    fn hrr_route_agrees(spec in arb_cover(7, 3)) {
        let a = eigen_hodge(&spec).unwrap();
        let b = hodge_table_hrr(&spec).unwrap();
        for x in a.blocks() {
            prop_assert_eq!(&x.h, &b.block(&x.character).unwrap().h);
        }
    }

    #[test]
    fn euler_route_matches_hodge_sum(spec in arb_cover(8, 3)) {
        let n = spec.dim();
        let t = eigen_hodge(&spec).unwrap();
        prop_assert_eq!(dim_h_nt(&spec).unwrap(), t.nontrivial_degree(n));
    }

    #[test]
    fn reduced_generic_total(d in 2u64..=9, n in 1usize..=4) {
        let spec = CoverSpec::cyclic(Arrangement::generic(n, d as usize).unwrap(), d).unwrap();
        let t = eigen_hodge(&spec).unwrap();
        let want = (d as i64 - 1) * i64::try_from(binomial(d as i64 - 2, n as i64).unwrap()).unwrap();
        prop_assert_eq!(t.nontrivial_total(), want);
    }

    #[test]
    fn bound_is_monotone_in_level(spec in arb_cover(7, 3)) {
        let n = spec.dim();
        let t = eigen_hodge(&spec).unwrap();
        let chars = characters_abelian(spec.group()).unwrap();
        let mut last = i64::MAX;
        for k in 0..n.div_ceil(2) {
            let r = hodge_cycle_bound(&t, &chars, n, k).unwrap();
            prop_assert!(r.bound >= 0 && r.bound <= r.dim_h_nt);
            prop_assert!(r.bound <= last);
            last = r.bound;
        }
    }

    #[test]
    fn rational_span_properties(
        orders in prop::sample::select(vec![vec![5u64], vec![6], vec![8], vec![12], vec![2, 2], vec![2, 4], vec![3, 3]]),
        seed in proptest::collection::vec(0u64..=4, 16),
        bump in 0usize..16,
    ) {
        let group = AbelianGroup::new(orders).unwrap();
        let table = characters_abelian(&group).unwrap();
        let n: Vec<u64> = seed[..table.len()].to_vec();
        let s = rational_span(&n, &table).unwrap();
        // zero exactly for the zero representation, and at least its dimension
        prop_assert_eq!(s == 0, n.iter().all(|&x| x == 0));
        prop_assert!(s >= n.iter().sum::<u64>());
        // monotone
        let mut m = n.clone();
        m[bump % table.len()] += 1;
        prop_assert!(rational_span(&m, &table).unwrap() >= s);
        // a representation and its complex conjugate have the same span
        let chars = group.characters();
        let conj: Vec<u64> = chars.iter().map(|c| n[chars.iter().position(|x| *x == c.conj()).unwrap()]).collect();
        prop_assert_eq!(rational_span(&conj, &table).unwrap(), s);
    }
}
