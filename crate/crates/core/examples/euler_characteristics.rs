//! Topological Euler characteristics of covers from the stratification of
//! the branch locus, per cover and per character.

use hodge_covers::bounds::{character_euler, dim_h_nt, euler_cover};
use hodge_covers::{Arrangement, CoverSpec, Hyperplane};

fn main() -> Result<(), hodge_covers::Error> {
    for d in [3u64, 4, 5] {
        let spec = CoverSpec::cyclic(Arrangement::generic(2, d as usize)?, d)?;
        println!("{d} general lines, degree {d}: e(Y) = {}, dim H^2_nt = {}", euler_cover(&spec), dim_h_nt(&spec)?);
    }

    // three concurrent lines: no normal crossings, but Euler characteristics
    // are still defined
    let lines = vec![
        Hyperplane::from_ints(&[1, 0, 0], 1)?,
        Hyperplane::from_ints(&[0, 1, 0], 1)?,
        Hyperplane::from_ints(&[1, -1, 0], 1)?,
    ];
    let spec = CoverSpec::cyclic(Arrangement::new(2, lines)?, 3)?;
    println!("\nthree concurrent lines, degree 3: e(Y) = {}", euler_cover(&spec));
    for (chi, e) in spec.characters().iter().zip(character_euler(&spec)) {
        println!("  {}: {e}", chi.label());
    }

    let spec = CoverSpec::cyclic_product(vec![4, 4], 4)?;
    println!("\n(P^1)^2, four points per factor, degree 4: e(Y) = {}", euler_cover(&spec));
    Ok(())
}
