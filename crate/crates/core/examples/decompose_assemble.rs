//! Primitive decomposition of a direct sum, and the full classification of a
//! size assembled from primitive blocks.

use iwmat::config::EngineConfig;
use iwmat::library::Library;
use iwmat::structure::{assemble_full_classification, PrimitiveIndex};
use iwmat::IntMatrix;

fn main() -> iwmat::Result<()> {
    let lib = Library::build(5, 25, &EngineConfig::default(), false)?;
    let letters = lib.primitives.size_letters();

    let b = IntMatrix::from_rows(&[[3i64, 4], [4, -3]])?;
    let five = IntMatrix::scalar(1, 5);
    let a = IntMatrix::block_sum(&[&b, &five, &b]);
    let d = PrimitiveIndex::new(&lib.primitives.classes)?.decompose(&a)?;
    println!("{} has shape {}", d.signature(), d.shape(&letters));

    let full = assemble_full_classification(&lib.primitives, 5)?;
    println!("\nIW(5,25): {} H-classes, {} TH-classes", full.h_count, full.th_count);
    for row in full.shape_table(&letters) {
        println!("  {:<8} TH {:>2}  H {:>2}", row.shape, row.th_count, row.h_count);
    }
    println!("total {}", full.total_cardinality());
    Ok(())
}
