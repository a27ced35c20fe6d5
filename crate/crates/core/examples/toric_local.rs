//! Local models y^d = x_1^a_1 ... x_n^a_n: reduction, normalization by
//! saturation, and diagonal forms of abelian local covers.

use hodge_covers::toric::{local_abelian_model, reduce_exponents, saturation_hilbert_basis, ExponentData};
use hodge_covers::IntMatrix;

fn main() -> Result<(), hodge_covers::Error> {
    for (a, d) in [(vec![1, 1], 2), (vec![2], 3), (vec![2, 2], 4), (vec![1, 0, 1], 3), (vec![1, 2], 5), (vec![1, 1, 1], 4)] {
        let r = reduce_exponents(&ExponentData::new(a, d)?)?;
        let s = saturation_hilbert_basis(&r.reduced)?;
        println!(
            "{} -> {} component(s) of {}, {} smooth factor(s); Hilbert basis {:?}; {}{}",
            r.original,
            r.components,
            r.reduced,
            r.smooth_factors.len(),
            s.hilbert_basis,
            if s.saturated { "already normal" } else { "normalization adds points" },
            if s.smooth { ", smooth".to_string() } else { format!(", quotient of order {}", s.quotient_order) },
        );
    }

    let gamma = IntMatrix::from_rows(&[vec![2, 1], vec![0, 2]])?;
    let m = local_abelian_model(&gamma)?;
    println!("\nGamma = {gamma:?}: index {}", m.index);
    for f in m.nontrivial() {
        println!("  y^{} with exponents {:?}", f.degree, f.exponents);
    }
    Ok(())
}
