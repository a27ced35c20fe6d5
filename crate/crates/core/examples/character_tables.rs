//! Character tables, Galois orbits, Schur indices and rational spans.

use hodge_covers::chars::{
    characters_abelian, galois_orbits, phi_invariant, quaternion_group, rational_span_breakdown, symmetric_group,
};
use hodge_covers::AbelianGroup;

fn main() -> Result<(), hodge_covers::Error> {
    let z12 = characters_abelian(&AbelianGroup::cyclic(12)?)?;
    println!("Z/12 Galois orbits:");
    for o in galois_orbits(&z12) {
        let labels: Vec<&str> = o.members.iter().map(|&i| z12.characters()[i].label.as_str()).collect();
        println!("  {{{}}}  Phi = {}", labels.join(", "), phi_invariant(&z12, o.members[0]));
    }

    let q8 = quaternion_group();
    let two = q8.index_of("chi_2").expect("Q8 has a degree-2 character");
    println!("\nQ8: degree-2 character has Schur index {} and Phi = {}", q8.characters()[two].schur_index, phi_invariant(&q8, two));

    // one copy of the degree-2 representation needs two over Q
    let mut n = vec![0; q8.len()];
    n[two] = 1;
    let (sigma, _) = rational_span_breakdown(&n, &q8)?;
    println!("rational span of one copy: dimension {sigma}");

    let s4 = symmetric_group(4)?;
    println!("\nS4 classes: {:?}", s4.classes().iter().map(|c| (&c.label, c.size)).collect::<Vec<_>>());
    for c in s4.characters() {
        let vals: Vec<String> = c.values.iter().map(ToString::to_string).collect();
        println!("  {:>10}: {}", c.label, vals.join(" "));
    }

    let z6 = characters_abelian(&AbelianGroup::cyclic(6)?)?;
    let (sigma, parts) = rational_span_breakdown(&[0, 2, 0, 1, 0, 1], &z6)?;
    println!("\nZ/6 with n = (0,2,0,1,0,1): sigma = {sigma}");
    for p in parts.iter().filter(|p| p.contribution > 0) {
        println!("  {:?}: {} x {}", p.members, p.copies, p.sigma_orbit);
    }
    Ok(())
}
