//! Symmetric and antisymmetric members of a class, split into classes under
//! X ↦ T·X·Tᵀ.

use iwmat::autiso::{aut_group, DEFAULT_STREAM_BOUND};
use iwmat::symmetry::{classify_members, taut_group, Sign};
use iwmat::IntMatrix;

fn main() -> iwmat::Result<()> {
    let c = IntMatrix::from_rows(&[[-4i64, -2, -2, -1], [-2, -1, 4, 2], [-2, 4, -1, 2], [-1, 2, 2, -4]])?;
    let g = aut_group(&c)?;
    println!("|Aut| = {}, |TAut| = {}", g.order, taut_group(&c, &g)?.order());
    for sign in [Sign::Symmetric, Sign::Antisymmetric] {
        match classify_members(&c, &g, sign, DEFAULT_STREAM_BOUND)? {
            None => println!("{sign:?}: no members"),
            Some(classes) => {
                println!("{sign:?}: {} subclasses", classes.len());
                for (r, o) in classes.reps.iter().zip(&classes.saut_orders) {
                    println!("  |SAut| = {o}\n{}", r.to_text());
                }
            }
        }
    }
    Ok(())
}
