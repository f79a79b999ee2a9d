//! Weighing matrix of the projective plane over F3 and its symmetric
//! classes, compared with the closed-form prediction.

use iwmat::autiso::DEFAULT_STREAM_BOUND;
use iwmat::projective::{projective_weighing, verify_projective_symmetric_count, ProjectiveSpace};

fn main() -> iwmat::Result<()> {
    let space = ProjectiveSpace::new(2, 3)?;
    let pw = projective_weighing(&space);
    println!("W({}, {}):\n{}", pw.rows(), pw.row(0).iter().filter(|&&x| x != 0).count(), pw.to_text());
    let check = verify_projective_symmetric_count(&space, false, DEFAULT_STREAM_BOUND)?;
    println!("|Aut| = {} (predicted {})", check.aut_order, check.predicted_aut_order);
    println!("symmetric subclasses: {} (predicted {})", check.computed, check.predicted);
    Ok(())
}
