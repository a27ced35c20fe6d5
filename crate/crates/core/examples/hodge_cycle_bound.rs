//! The Hodge-cycle bound and the theorem report for lines in P^2.

use hodge_covers::bounds::{hodge_cycle_bound, theorem_report};
use hodge_covers::chars::characters_abelian;
use hodge_covers::hodge::eigen_hodge;
use hodge_covers::{Arrangement, CoverSpec};

fn main() -> Result<(), hodge_covers::Error> {
    for d in [4u64, 5, 6, 7] {
        let spec = CoverSpec::cyclic(Arrangement::generic(2, d as usize)?, d)?;
        let table = eigen_hodge(&spec)?;
        let chars = characters_abelian(spec.group())?;
        let b = hodge_cycle_bound(&table, &chars, 2, 0)?;
        println!(
            "d={d}: dim H^2_nt = {:>3}, span of H^(2,0) + H^(0,2) = {:>3}, bound = {}",
            b.dim_h_nt, b.sigma, b.bound
        );
    }

    let spec = CoverSpec::cyclic(Arrangement::generic(2, 4)?, 4)?;
    let report = theorem_report(&spec)?;
    println!("\nfour lines, degree 4:");
    println!("  Beilinson-Hodge: {:?}", report.conclusions.beilinson_hodge);
    println!("  GHC: {:?}", report.conclusions.generalized_hodge);
    Ok(())
}
