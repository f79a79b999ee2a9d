//! Class minimum and code invariant are unchanged by row and column
//! permutations and sign changes.

use iwmat::canon::{code_invariant, minclass_with_witness};
use iwmat::{HadamardPair, IntMatrix, SignedPerm};

fn main() -> iwmat::Result<()> {
    let a = IntMatrix::from_rows(&[[3i64, 4, 0, 0], [4, -3, 0, 0], [0, 0, 5, 0], [0, 0, 0, 5]])?;
    let scramble = HadamardPair::new(SignedPerm::new(vec![2, 0, 3, 1], vec![1, -1, 1, -1])?, SignedPerm::new(vec![1, 3, 0, 2], vec![-1, 1, 1, 1])?);
    let b = scramble.apply(&a)?;
    let (min_a, _) = minclass_with_witness(&a)?;
    let (min_b, witness) = minclass_with_witness(&b)?;
    println!("scrambled:\n{}", b.to_text());
    println!("class minimum:\n{}", min_b.to_text());
    assert_eq!(min_a, min_b);
    assert_eq!(witness.apply(&b)?, min_b);
    assert_eq!(code_invariant(&a, 2)?, code_invariant(&b, 2)?);
    println!("code invariant at depth 2: {:?}", code_invariant(&b, 2)?.codes);
    Ok(())
}
