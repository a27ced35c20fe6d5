//! Intersection posets of hyperplane arrangements: flats, Möbius values,
//! normal crossings and essential incidence numbers.

use hodge_covers::arrangement::{
    build_poset, check_cover_hypotheses, complement_euler, essential_incidence_numbers, is_normal_crossing,
};
use hodge_covers::{Arrangement, Hyperplane};

fn main() -> Result<(), hodge_covers::Error> {
    // the braid arrangement x_i = x_j in P^2, with the line at infinity
    let mut hs = Vec::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let mut v = vec![0i64; 3];
        v[i] = 1;
        v[j] = -1;
        hs.push(Hyperplane::from_ints(&v, 1)?);
    }
    hs.push(Hyperplane::from_ints(&[1, 1, 1], 1)?);
    let arr = Arrangement::new(2, hs)?;
    let poset = build_poset(&arr);

    for (f, flat) in poset.flats().iter().enumerate() {
        println!("flat {f}: dim {}, through {:?}, open Euler characteristic {}", flat.dim, flat.containing, poset.stratum_euler(f));
    }
    println!("e(P^2 - D) = {}", complement_euler(&poset));

    let nc = is_normal_crossing(&poset);
    println!("normal crossings: {} (violating flats {:?})", nc.normal_crossing, nc.violators);
    println!("essential incidence numbers: {:?}", essential_incidence_numbers(&arr, &poset));
    for d in [2, 3, 4] {
        println!("degree {d}: coprimality passes = {}", check_cover_hypotheses(&arr, &poset, d)?.passed);
    }
    Ok(())
}
