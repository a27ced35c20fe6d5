//! The exact substrate: rationals, truncated series, cyclotomic numbers and
//! Smith normal form.

use hodge_covers::algebra::{smith_normal_form, BiSeries, Cyclotomic, IntMatrix, Rational, SeriesBase};
use hodge_covers::hodge::chi_omega_pn;

fn main() -> Result<(), hodge_covers::Error> {
    let q: Rational = "-6/4".parse()?;
    println!("-6/4 = {q}, floor {}, fractional part {}", q.floor(), q.fract_part());

    // (1 + yz)^(t-1) / (1 - z)^(t+1) at t = -3: coefficient of y^1 z^2
    let (t, n) = (-3i64, 2usize);
    let num = BiSeries::binomial_power(SeriesBase::OnePlusYz, t - 1, n, n);
    let den = BiSeries::binomial_power(SeriesBase::OneMinusZ, -(t + 1), n, n);
    let f = &num * &den;
    println!("chi(Omega^1_P2(-3)) = {} (direct: {})", f.coeff(1, 2), chi_omega_pn(2, 1, t));

    let z = Cyclotomic::zeta_pow(5, 1);
    let sum = (1..5).fold(Cyclotomic::zero(5), |acc, k| &acc + &Cyclotomic::zeta_pow(5, k));
    println!("zeta_5 = {z}; zeta + ... + zeta^4 = {sum}; trace(zeta_5) = {}", z.trace());

    let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])?;
    let s = smith_normal_form(&m);
    let factors: Vec<String> = s.invariant_factors().iter().map(ToString::to_string).collect();
    println!("invariant factors of {m:?}: {}", factors.join(", "));
    println!("U M V == D: {}", &(&s.u * &m) * &s.v == s.d);
    Ok(())
}
