// Releasing a q-ary dataset of length n within Hamming distance m. The
// optimal mechanism releases a uniform dataset from the Hamming ball around
// the input; ball sizes are computed exactly.
//
// ```bash
// cargo run --example hamming_datasets
// ```

use alpha_leakage::datasets::hamming_crosscheck;
use alpha_leakage::{hamming_put, Result};

pub fn run_example() -> Result<()> {
    let put = hamming_put(2, 1, 3)?;
    println!(
        "n = 2, m = 1, q = 3: {:.12} nats, ball of {} datasets, each released with probability {}",
        put.value, put.ball_size, put.mechanism_entry
    );
    assert!((put.value - (9.0f64 / 5.0).ln()).abs() < 1e-12);
    assert!(hamming_crosscheck(2, 1, 3)?);

    // far beyond brute force
    let big = hamming_put(500, 25, 4)?;
    println!("n = 500, m = 25, q = 4: {:.6} nats, ball size has {} digits", big.value, big.ball_size.to_string().len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
