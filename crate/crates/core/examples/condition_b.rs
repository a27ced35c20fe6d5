//! phi(d) h^(0,n)_(eps^(d-1)) against dim H^n_nt for general arrangements of
//! d hyperplanes: equality for prime d, failure for composite d once the
//! middle cohomology is nonzero.

use hodge_covers::algebra::is_prime;
use hodge_covers::hodge::{condition_b_check, eigen_hodge};
use hodge_covers::{Arrangement, CoverSpec};

fn main() -> Result<(), hodge_covers::Error> {
    println!(" d  n  prime      lhs      rhs  verdict");
    for d in 2..=12u64 {
        for n in 1..=4usize {
            let spec = CoverSpec::cyclic(Arrangement::generic(n, d as usize)?, d)?;
            let b = condition_b_check(&spec, &eigen_hodge(&spec)?)?;
            if b.rhs == 0 {
                continue;
            }
            let verdict = match (b.holds, b.equality) {
                (true, true) => "equality",
                (true, false) => "holds",
                _ => "fails",
            };
            println!("{d:>2} {n:>2} {:>6} {:>8} {:>8}  {verdict}", is_prime(d), b.lhs, b.rhs);
        }
    }
    Ok(())
}
