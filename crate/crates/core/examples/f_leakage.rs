// f-divergence based leakages. The Hellinger family of order α corresponds
// one-to-one to (maximal) α-leakage, and the KL generator gives mutual
// information and Shannon capacity.
//
// ```bash
// cargo run --example f_leakage
// ```

use alpha_leakage::leakage::{alpha_leakage_from_hellinger, hellinger_from_alpha_leakage};
use alpha_leakage::{
    f_leakage, make_joint, maximal_alpha_leakage, maximal_f_leakage, shannon_mi, sibson_mi, AlphaOrder, Channel, Dist,
    FGenerator, Result, SolverOptions,
};

pub fn run_example() -> Result<()> {
    let opts = SolverOptions::default();
    let channel = Channel::bsc(0.1)?;
    let prior = Dist::bernoulli(0.3)?;
    let joint = make_joint(&prior, &channel)?;

    let kl = f_leakage(&joint, &FGenerator::Kl, opts)?;
    println!("KL f-leakage {:.10} = I(X;Y) {:.10}", kl.value, shannon_mi(&joint));

    let alpha = 2.0;
    let hel = f_leakage(&joint, &FGenerator::hellinger(alpha)?, opts)?;
    let sibson = sibson_mi(&prior, &channel, AlphaOrder::Finite(alpha))?;
    println!(
        "Hellinger-2 f-leakage {:.10} maps back to {:.10} (Sibson {sibson:.10})",
        hel.value,
        alpha_leakage_from_hellinger(hel.value, alpha)
    );

    let max_hel = maximal_f_leakage(&channel, &FGenerator::hellinger(alpha)?, opts)?;
    let max_alpha = maximal_alpha_leakage(&channel, AlphaOrder::Finite(alpha), None, opts)?;
    println!(
        "maximal Hellinger-2 leakage {:.10}, from maximal 2-leakage {:.10}",
        max_hel.value,
        hellinger_from_alpha_leakage(max_alpha.value, alpha)
    );
    assert!((max_hel.value - 0.64).abs() < 1e-9);

    let capacity = maximal_f_leakage(&channel, &FGenerator::Kl, opts)?;
    let h = -(0.1f64 * 0.1f64.ln() + 0.9 * 0.9f64.ln());
    println!("maximal KL leakage {:.10} = log 2 − h(0.1) = {:.10}", capacity.value, 2f64.ln() - h);

    // a user-supplied generator: χ², f(t) = (t − 1)², which differs from the
    // order-2 Hellinger generator by a linear term and so gives the same value
    let chi2 = FGenerator::custom("chi-square", |t| (t - 1.0) * (t - 1.0), |t| 2.0 * (t - 1.0), 1.0, f64::INFINITY)?;
    let custom = f_leakage(&joint, &chi2, opts)?;
    println!("χ² f-leakage {:.10} (certified gap {:.1e})", custom.value, custom.gap);
    assert!((custom.value - hel.value).abs() < 1e-8);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
