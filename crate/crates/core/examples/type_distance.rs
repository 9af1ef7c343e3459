// Releasing a binary dataset of length n when the released dataset must
// have a type (number of ones) within m of the original. The optimal
// mechanism maps every type to one of ⌈(n+1)/(2m+1)⌉ evenly spaced types.
//
// ```bash
// cargo run --example type_distance
// ```

use alpha_leakage::datasets::type_distance_crosscheck;
use alpha_leakage::{type_distance_put, LogBase, Result};

pub fn run_example() -> Result<()> {
    let put = type_distance_put(9, 2)?;
    println!("n = 9, m = 2: {} bits, output types {:?}", LogBase::Bits.from_nats(put.value), put.index_set.members);
    for i in 0..=9 {
        println!("  type {i} -> type {} e.g. {:?}", put.descriptor[i], put.representative(i));
    }
    assert_eq!(put.index_set.members, vec![2, 7]);

    for (n, m) in [(10, 1), (12, 3), (7, 0)] {
        let r = type_distance_put(n, m)?;
        println!("n = {n}, m = {m}: {:.6} nats via {:?}", r.value, r.index_set.members);
        assert!(type_distance_crosscheck(n, m)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
