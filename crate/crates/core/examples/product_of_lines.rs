//! Cyclic covers of (P^1)^n with d branch points per factor: Künneth
//! tables, the polynomial (1 - i + (d - i - 1) y)^n, and the total
//! (d - 1)(d - 2)^n.

use hodge_covers::hodge::{hodge_product_p1, product_chi_polynomial};

fn main() -> Result<(), hodge_covers::Error> {
    let table = hodge_product_p1(2, 3)?;
    print!("{table}");

    println!("\n d  n  dim H^n_nt  (d-1)(d-2)^n");
    for d in 2..=6u64 {
        for n in 1..=3usize {
            let t = hodge_product_p1(n, d)?;
            println!("{d:>2} {n:>2} {:>11} {:>13}", t.nontrivial_total(), (d - 1) * (d - 2).pow(n as u32));
        }
    }

    println!("\nchi_(2,i)(y) for d = 5, lowest coefficient first:");
    for i in 1..5 {
        println!("  i={i}: {:?}", product_chi_polynomial(2, 5, i));
    }
    Ok(())
}
