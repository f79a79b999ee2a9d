//! Exact counts of integer weighing matrices from the primitive classes.
//!
//! `cargo run --release --example counting -- 6`

use iwmat::config::EngineConfig;
use iwmat::counting::{count_iw, count_sym_iw, iw_series};
use iwmat::library::Library;
use iwmat::symmetry::{symmetric_counts, Sign};

fn main() -> iwmat::Result<()> {
    let top: usize = std::env::args().nth(1).map_or(5, |a| a.parse().expect("size"));
    let lib = Library::build(top, 25, &EngineConfig::default(), true)?;
    let counts = lib.primitives.counts();
    println!("series: {}", iw_series(&counts, top)?);
    let sym = symmetric_counts(&lib.primitives, &lib.symmetric, Sign::Symmetric)?;
    let anti = symmetric_counts(&lib.primitives, &lib.symmetric, Sign::Antisymmetric)?;
    println!("{:>2} {:>16} {:>10} {:>8}", "n", "IW", "SIW", "AIW");
    for n in 1..=top {
        println!("{n:>2} {:>16} {:>10} {:>8}", count_iw(&counts, n)?, count_sym_iw(&sym, n)?, count_sym_iw(&anti, n)?);
    }
    Ok(())
}
