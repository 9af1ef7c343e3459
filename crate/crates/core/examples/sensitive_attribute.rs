// Lower bound on what a distortion-constrained release of X reveals about a
// correlated sensitive attribute S, and a mechanism attaining it when one
// exists.
//
// ```bash
// cargo run --example sensitive_attribute
// ```

use alpha_leakage::{arimoto_mi, sensitive_lower_bound, AlphaOrder, DistortionSpec, Joint, Result, SensitiveJoint};

pub fn run_example() -> Result<()> {
    // S tells whether X ∈ {0, …, 5} is below 3; outputs must be within 1 of X
    let joint = Joint::from_matrix(vec![vec![0.2, 0.15, 0.15, 0.0, 0.0, 0.0], vec![0.0, 0.0, 0.0, 0.1, 0.15, 0.25]])?;
    let d: Vec<Vec<f64>> = (0..6).map(|x: i32| (0..6).map(|y: i32| (x - y).abs() as f64).collect()).collect();
    let sj = SensitiveJoint::new(joint.clone(), DistortionSpec::from_matrix(d.clone(), 1.0)?)?;
    for alpha in [1.0, 2.0, f64::INFINITY] {
        let order = AlphaOrder::new(alpha)?;
        let b = sensitive_lower_bound(&sj, order)?;
        print!("alpha = {order}: bound {:.6}", b.bound);
        if let Some(w) = &b.witness {
            let attained = arimoto_mi(&sj.induced(w)?, order);
            print!(", attained by a witness with leakage {attained:.6}");
        } else {
            print!(", no mechanism meets the equality conditions");
        }
        println!();
    }

    // independent S and X leak nothing
    let independent = Joint::from_matrix(vec![vec![0.1, 0.05, 0.1, 0.05, 0.1, 0.1]; 2])?;
    let sj = SensitiveJoint::new(independent, DistortionSpec::from_matrix(d, 1.0)?)?;
    assert_eq!(sensitive_lower_bound(&sj, AlphaOrder::Finite(2.0))?.bound, 0.0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
