// Entropies, mutual informations and α-leakage of a Bernoulli source seen
// through a binary symmetric channel.
//
// ```bash
// cargo run --example measures
// ```

use alpha_leakage::{
    alpha_leakage, arimoto_cond_entropy, arimoto_mi, make_joint, min_expected_alpha_loss, renyi_entropy, sibson_mi,
    AlphaOrder, Channel, Dist, Result,
};

pub fn run_example() -> Result<()> {
    let prior = Dist::bernoulli(0.4)?;
    let channel = Channel::bsc(0.1)?;
    let joint = make_joint(&prior, &channel)?;

    println!("{:>6} {:>10} {:>10} {:>10} {:>10} {:>10}", "alpha", "H_a(X)", "H_a(X|Y)", "I_a^A", "I_a^S", "loss");
    for alpha in [1.0, 1.5, 2.0, 5.0, f64::INFINITY] {
        let order = AlphaOrder::new(alpha)?;
        let leak = alpha_leakage(&joint, order)?;
        // α-leakage is Arimoto's mutual information
        assert!((leak - arimoto_mi(&joint, order)).abs() < 1e-12);
        println!(
            "{:>6} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            order.to_string(),
            renyi_entropy(&prior, order),
            arimoto_cond_entropy(&joint, order),
            leak,
            sibson_mi(&prior, &channel, order)?,
            min_expected_alpha_loss(&joint, order)?,
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
