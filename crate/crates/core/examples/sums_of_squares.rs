//! Representations of an integer as a sum of a fixed number of squares.
//!
//! `cargo run --example sums_of_squares -- 25 4`

use iwmat::nsoks::nsoks;

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("integer argument"));
    let n = args.next().unwrap_or(25);
    let r = args.next().unwrap_or(4) as usize;
    let reps = nsoks(n, r, None);
    println!("{n} as a sum of {r} squares: {} ways", reps.len());
    for rep in &reps {
        let roots: Vec<String> = rep.roots().iter().map(|s| format!("{s}²")).collect();
        println!("  {}", roots.join(" + "));
    }
}
