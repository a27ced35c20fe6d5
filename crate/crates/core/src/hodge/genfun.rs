//! Sheaf Euler characteristics on `P^n` from the Hirzebruch generating
//! function `(1 + yz)^(t-1) / (1 - z)^(t+1)`.

use num_traits::ToPrimitive;

use crate::algebra::number::binom;
use crate::algebra::{BiSeries, SeriesBase};

/// `chi(P^n, Omega^k(t))`: the coefficient of `y^k z^n` in
/// `(1 + yz)^(t-1) / (1 - z)^(t+1)`. Zero for `k > n`.
pub fn chi_omega_pn(n: usize, k: usize, t: i64) -> i64 {
    if k > n {
        return 0;
    }
    let num = BiSeries::binomial_power(SeriesBase::OnePlusYz, t - 1, k, n);
    let den = BiSeries::binomial_power(SeriesBase::OneMinusZ, -(t + 1), k, n);
    let c = (&num * &den).coeff(k, n);
    debug_assert!(c.is_integer());
    c.numer().to_i64().expect("sheaf Euler characteristic fits in i64")
}

/// `chi(P^n, Omega^k(log A)(t))` for `s` hyperplanes `A` in general position:
/// `sum_r C(s, r) chi(P^(n-r), Omega^(k-r)(t))`.
pub fn chi_log(n: usize, k: usize, s: usize, t: i64) -> i64 {
    (0..=k.min(n))
        .map(|r| binom(s as i64, r as i64) * chi_omega_pn(n - r, k - r, t))
        .sum()
}

/// `sum_(i=1)^(d-1) sum_(n,k) chi(Omega^k(log D)(-i)) y^k z^n` for `d`
/// hyperplanes in general position, as a truncated series.
pub fn log_series_sum(d: u64, max_y: usize, max_z: usize) -> BiSeries {
    let d = d as i64;
    let mut total = BiSeries::zero(max_y, max_z);
    for i in 1..d {
        let a = BiSeries::binomial_power(SeriesBase::OnePlusYz, d - i - 1, max_y, max_z);
        let b = BiSeries::binomial_power(SeriesBase::OneMinusZ, i - 1, max_y, max_z);
        total = &total + &(&a * &b);
    }
    total
}

/// Closed form of [`log_series_sum`]: the `y^k z^n` coefficient is
/// `C(d-1, n+1) (-1)^(n-k)` for `k <= n`.
pub fn log_series_closed_form(d: u64, max_y: usize, max_z: usize) -> BiSeries {
    let mut out = BiSeries::zero(max_y, max_z);
    for n in 0..=max_z {
        for k in 0..=n.min(max_y) {
            let c = binom(d as i64 - 1, n as i64 + 1) * if (n - k) % 2 == 0 { 1 } else { -1 };
            out = &out + &BiSeries::monomial(max_y, max_z, k, n, c.into());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(chi_omega_pn(2, 1, 0), -1);
        assert_eq!(chi_omega_pn(2, 1, -3), 8);
        assert_eq!(chi_omega_pn(2, 0, -3), 1);
        assert_eq!(chi_omega_pn(2, 3, 5), 0);
        assert_eq!(chi_log(2, 1, 5, -2), -2);
        assert_eq!(chi_log(2, 2, 5, -1), 3);
        assert_eq!(chi_log(1, 1, 4, -2), 1);
        for t in -6..6 {
            assert_eq!(chi_log(3, 0, 7, t), chi_omega_pn(3, 0, t));
        }
    }

    /// Euler sequence oracle: `chi(Omega^1(t)) = (n+1) chi(O(t-1)) - chi(O(t))`
    /// and `chi(O(t)) = C(t+n, n)`.
    #[test]
    fn euler_sequence_oracle() {
        for n in 0..=5usize {
            for t in -12..=12i64 {
                let o = |s: i64| binom(s + n as i64, n as i64);
                assert_eq!(chi_omega_pn(n, 0, t), o(t));
                if n >= 1 {
                    assert_eq!(chi_omega_pn(n, 1, t), (n as i64 + 1) * o(t - 1) - o(t));
                }
            }
        }
    }

    #[test]
    fn serre_duality() {
        for n in 0..=5usize {
            for k in 0..=n {
                for t in -12..=12 {
                    let sign = if n % 2 == 0 { 1 } else { -1 };
                    assert_eq!(chi_omega_pn(n, k, t), sign * chi_omega_pn(n, n - k, -t), "n={n} k={k} t={t}");
                }
            }
        }
    }

    #[test]
    fn generating_function_identity() {
        for d in 2..=12u64 {
            assert_eq!(log_series_sum(d, 6, 6), log_series_closed_form(d, 6, 6), "d={d}");
        }
    }

    proptest! {
        #[test]
        fn log_series_matches_chi_log(d in 2u64..=9, n in 0usize..=4, k in 0usize..=4) {
            let series = log_series_sum(d, 4, 4);
            let direct: i64 = (1..d as i64).map(|i| chi_log(n, k, d as usize, -i)).sum();
            prop_assert_eq!(series.coeff(k, n), direct.into());
        }
    }
}
