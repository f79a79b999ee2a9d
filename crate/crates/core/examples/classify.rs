//! Hadamard classes of partial and square integer weighing matrices.
//!
//! `cargo run --release --example classify -- 3 4 25`

use iwmat::autiso::aut_group;
use iwmat::search::{classify_piw, SearchConfig};

fn main() -> iwmat::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("integer argument"));
    let m = args.next().unwrap_or(4) as usize;
    let n = args.next().unwrap_or(4) as usize;
    let k = args.next().unwrap_or(25);
    let reps = classify_piw(m, n, k, &SearchConfig::default())?;
    println!("PIW({m},{n},{k}): {} classes", reps.len());
    for (i, a) in reps.iter().enumerate() {
        println!("\nclass {} with |Aut| = {}\n{}", i + 1, aut_group(a)?.order, a.to_text());
    }
    Ok(())
}
