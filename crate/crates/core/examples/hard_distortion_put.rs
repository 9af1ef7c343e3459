// Privacy-utility tradeoff under a hard distortion constraint: every input
// may only be released as an output within distance D. The optimal
// mechanism is the same for every α > 1; its leakage is −log q*, where q* is
// the best worst-case mass a single output distribution can put on a ball.
//
// ```bash
// cargo run --example hard_distortion_put
// ```

use alpha_leakage::put::put_max_f_leakage;
use alpha_leakage::{
    distortion_balls, put_max_alpha_leakage, q_star, AlphaOrder, Dist, DistortionSpec, Error, FGenerator, Result,
    SolverOptions,
};

pub fn run_example() -> Result<()> {
    // five points on a line, |x − y| ≤ 1
    let d: Vec<Vec<f64>> = (0..5).map(|x: i32| (0..5).map(|y: i32| (x - y).abs() as f64).collect()).collect();
    let spec = DistortionSpec::from_matrix(d, 1.0)?;
    let balls = distortion_balls(&spec)?;
    let qs = q_star(&balls, 1e-10)?;
    println!("q* = {:.6}, output distribution {:.4?}, duality gap {:.1e}", qs.q, qs.primal.mass(), qs.gap);

    let opts = SolverOptions::default();
    for alpha in [1.5, 2.0, 10.0, f64::INFINITY] {
        let sol = put_max_alpha_leakage(&balls, AlphaOrder::new(alpha)?, None, opts)?;
        println!("alpha = {alpha:>4}: leakage {:.6} nats", sol.value);
        assert!((sol.value + qs.q.ln()).abs() < 1e-12);
    }
    let sol = put_max_alpha_leakage(&balls, AlphaOrder::Finite(2.0), None, opts)?;
    for (x, row) in sol.mechanism.rows().enumerate() {
        println!("  x = {x}: {:.4?}", row);
    }

    // α = 1 is a different program: it depends on the prior
    let prior = Dist::from_vec(vec![0.4, 0.1, 0.1, 0.1, 0.3])?;
    let one = put_max_alpha_leakage(&balls, AlphaOrder::One, Some(&prior), opts)?;
    println!("alpha = 1 with a skewed prior: {:.6} nats", one.value);

    // f-leakages need f(0) < ∞ here, which rules out reverse KL
    let hel = put_max_f_leakage(&balls, &FGenerator::hellinger(2.0)?, 1e-10)?;
    println!("maximal Hellinger-2 leakage {:.6}", hel.value);
    let reverse_kl = FGenerator::custom("reverse-kl", |t| -t.ln(), |t| -1.0 / t, f64::INFINITY, 0.0)?;
    assert!(matches!(put_max_f_leakage(&balls, &reverse_kl, 1e-10), Err(Error::IncompatibleGenerator)));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
