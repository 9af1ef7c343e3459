// The guessing strategy that minimizes expected α-loss: the posterior
// tilted to the power α and renormalized. α = 1 keeps the posterior,
// α = ∞ is the MAP guess.
//
// ```bash
// cargo run --example optimal_strategy
// ```

use alpha_leakage::leakage::{expected_alpha_loss, optimal_strategy_for};
use alpha_leakage::{min_expected_alpha_loss, AlphaOrder, Channel, Joint, Result};

pub fn run_example() -> Result<()> {
    let joint = Joint::from_matrix(vec![vec![0.30, 0.05, 0.10], vec![0.05, 0.25, 0.25]])?;

    for alpha in [1.0, 2.0, 10.0, f64::INFINITY] {
        let order = AlphaOrder::new(alpha)?;
        let best = optimal_strategy_for(&joint, order)?;
        println!("alpha = {order}: expected loss {:.6}", best.expected_loss);
        for (y, row) in best.strategy.rows().enumerate() {
            println!("  y = {y}: guess {:?}", row.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>());
        }
        assert!((best.expected_loss - min_expected_alpha_loss(&joint, order)?).abs() < 1e-12);

        // guessing uniformly is never better
        let uniform = Channel::from_rows(vec![vec![0.5, 0.5]; 3])?;
        assert!(expected_alpha_loss(&joint, &uniform, order)? >= best.expected_loss);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
