//! Eigenspace Hodge numbers of the degree-5 cover of P^2 branched over five
//! general lines, by the generating-function route and by HRR.

use hodge_covers::hodge::{eigen_hodge, hodge_table_hrr};
use hodge_covers::{Arrangement, CoverSpec};

fn main() -> Result<(), hodge_covers::Error> {
    let spec = CoverSpec::cyclic(Arrangement::generic(2, 5)?, 5)?;
    let table = eigen_hodge(&spec)?;
    print!("{table}");

    let hrr = hodge_table_hrr(&spec)?;
    println!("\nHRR route agrees: {}", table.same_numbers(&hrr));
    println!("dim H^2_nt = {}", table.nontrivial_degree(2));

    // every nontrivial antidiagonal entry is C(d-1, n+1)
    for (n, d) in [(1, 5), (2, 6), (3, 7)] {
        let t = eigen_hodge(&CoverSpec::cyclic(Arrangement::generic(n, d)?, d as u64)?)?;
        let row: Vec<i64> = (0..=n).map(|k| t.nontrivial_entry(k, n - k)).collect();
        println!("n={n} d={d}: h^(k,n-k)_nt = {row:?}");
    }
    Ok(())
}
