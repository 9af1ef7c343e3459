// A Bernoulli(p) bit released through a binary channel whose average
// Hamming distortion is at most D. As α grows the optimal channel stops
// flipping zeros and flips ones with probability D/p.
//
// ```bash
// cargo run --release --example average_hamming
// ```

use alpha_leakage::avg_hamming::{DEFAULT_GRID, DEFAULT_REFINE_ITERS};
use alpha_leakage::{avg_hamming_binary_put, Result};

pub fn run_example() -> Result<()> {
    let (p, d) = (0.4, 0.2);
    println!("{:>6} {:>10} {:>8} {:>8} {:>8}", "alpha", "value", "rho1", "rho2", "guess");
    let mut previous = 0.0;
    for alpha in [1.01, 1.5, 2.0, 3.0, 4.0, 40.0] {
        let r = avg_hamming_binary_put(p, d, alpha, DEFAULT_GRID, DEFAULT_REFINE_ITERS)?;
        println!("{alpha:>6} {:>10.6} {:>8.4} {:>8.4} {:>8.4}", r.value, r.rho1, r.rho2, r.guess_prob);
        assert!(r.value >= previous - 1e-9);
        previous = r.value;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
