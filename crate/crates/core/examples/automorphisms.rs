//! Automorphism group of a weighing matrix, its certification, and an
//! explicit equivalence between two members of one class.

use iwmat::autiso::{aut_group, certify, find_isomorphism, new_aut, AutGroup, NewAut};
use iwmat::IntMatrix;

fn main() -> iwmat::Result<()> {
    let c = IntMatrix::from_rows(&[[-4i64, -2, -2, -1], [-2, -1, 4, 2], [-2, 4, -1, 2], [-1, 2, 2, -4]])?;
    let g = aut_group(&c)?;
    println!("|Aut| = {} from {} generators", g.order, g.generators.len());
    assert_eq!(new_aut(&c, &g, 2)?, NewAut::Verified);

    // rebuild the group from nothing by repeated certification
    let (rebuilt, added) = certify(&c, &AutGroup::trivial(&c), 2)?;
    println!("certification from the trivial group added {added} elements, order {}", rebuilt.order);

    let t = c.transpose();
    match find_isomorphism(&c, &t)? {
        Some(h) => println!("equivalent to its transpose: L·A·Rᵀ = Aᵀ with L = {:?}", h.left),
        None => println!("not equivalent to its transpose"),
    }
    Ok(())
}
