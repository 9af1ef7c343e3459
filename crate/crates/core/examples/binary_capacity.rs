// Maximal α-leakage of binary channels: the general capacity solver against
// the closed form, the uniform-input lower bound, and two channels whose
// ordering flips as α grows.
//
// ```bash
// cargo run --example binary_capacity
// ```

use alpha_leakage::report::{compare_table, crossing_report, parse_sweep, RunConfig};
use alpha_leakage::{
    binary_maximal_alpha_leakage, maximal_alpha_leakage, uniform_input_bound, AlphaOrder, Channel, Result,
    SolverOptions,
};

pub fn run_example() -> Result<()> {
    let channel = Channel::binary(0.05, 0.4)?;
    for alpha in [1.5, 2.0, 4.0, 10.0] {
        let solved = maximal_alpha_leakage(&channel, AlphaOrder::Finite(alpha), None, SolverOptions::default())?
            .require_converged()?;
        let closed = binary_maximal_alpha_leakage(0.05, 0.4, alpha)?;
        let lower = uniform_input_bound(&channel, alpha)?;
        println!(
            "alpha = {alpha:>4}: solver {:.10} closed form {closed:.10} uniform input {:.10} (P* = {:.4?}, residual {:.1e})",
            solved.value,
            lower.bound,
            solved.optimal_input.mass(),
            solved.kkt_residual,
        );
        assert!((solved.value - closed).abs() < 1e-9);
        assert!(lower.bound <= solved.value + 1e-12);
    }

    // the asymmetric channel leaks less than BSC(0.2) for small α and more
    // for large α
    let cfg = RunConfig::new(parse_sweep("1.1:10:0.5,inf")?);
    let (table, crossings) = compare_table(&channel, &Channel::bsc(0.2)?, &cfg)?;
    print!("{}", table.to_csv());
    print!("{}", crossing_report(&crossings));
    assert!(!crossings.is_empty());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
