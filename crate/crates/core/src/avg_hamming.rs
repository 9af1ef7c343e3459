//! Binary privacy-utility tradeoff under an average Hamming distortion
//! constraint, for `X ~ Bernoulli(p)` released through the binary channel
//! `[[1−ρ₁, ρ₁], [ρ₂, 1−ρ₂]]` with `(1−p)ρ₁ + pρ₂ ≤ D`.

use crate::error::{Error, Result};
use crate::leakage::binary_maximal_alpha_leakage;
use crate::measures::map_success;
use crate::prob::{make_joint, Channel, Dist};

/// Optimal crossover probabilities and the leakage they attain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AvgHammingPut {
    pub rho1: f64,
    pub rho2: f64,
    /// Maximal α-leakage in nats.
    pub value: f64,
    /// MAP success probability `Σ_y max_x P(x, y)` under the mechanism.
    pub guess_prob: f64,
}

pub const DEFAULT_GRID: usize = 401;
pub const DEFAULT_REFINE_ITERS: usize = 60;

/// Minimizes maximal α-leakage over the feasible crossover pairs: a dense
/// grid, then pattern search along both axes and the constraint boundary
/// with the step halved `refine_iters` times starting from the grid pitch.
pub fn avg_hamming_binary_put(p: f64, d: f64, alpha: f64, grid: usize, refine_iters: usize) -> Result<AvgHammingPut> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::OutOfRange { name: "p", value: p, expected: "0 < p < 1" });
    }
    let d_max = 1.0 - p.max(1.0 - p);
    if !(d > 0.0 && d < d_max) {
        return Err(Error::OutOfRange { name: "D", value: d, expected: "0 < D < 1 - max(p, 1-p)" });
    }
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(Error::OutOfRange { name: "alpha", value: alpha, expected: "1 < alpha < inf" });
    }
    if grid < 2 {
        return Err(Error::OutOfRange { name: "grid", value: grid as f64, expected: "at least 2" });
    }
    let feasible =
        |r1: f64, r2: f64| (0.0..=1.0).contains(&r1) && (0.0..=1.0).contains(&r2) && (1.0 - p) * r1 + p * r2 <= d;
    let objective = |r1: f64, r2: f64| binary_maximal_alpha_leakage(r1, r2, alpha);

    let top1 = (d / (1.0 - p)).min(1.0);
    let top2 = (d / p).min(1.0);
    let h1 = top1 / (grid - 1) as f64;
    let h2 = top2 / (grid - 1) as f64;
    let mut best = (0.0, 0.0, objective(0.0, 0.0)?);
    for i in 0..grid {
        let r1 = i as f64 * h1;
        for k in 0..grid {
            let r2 = k as f64 * h2;
            if !feasible(r1, r2) {
                break;
            }
            let v = objective(r1, r2)?;
            if v < best.2 {
                best = (r1, r2, v);
            }
        }
    }

    let tangent = {
        let (a, b) = (p, -(1.0 - p));
        let n = a.hypot(b);
        (a / n, b / n)
    };
    let mut step = h1.max(h2);
    for _ in 0..refine_iters {
        loop {
            let (r1, r2, v) = best;
            let moves = [
                (step, 0.0),
                (-step, 0.0),
                (0.0, step),
                (0.0, -step),
                (step * tangent.0, step * tangent.1),
                (-step * tangent.0, -step * tangent.1),
            ];
            let mut improved = false;
            for (dr1, dr2) in moves {
                let (c1, c2) = (r1 + dr1, r2 + dr2);
                if feasible(c1, c2) {
                    let cv = objective(c1, c2)?;
                    if cv < v {
                        best = (c1, c2, cv);
                        improved = true;
                        break;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        step *= 0.5;
    }

    let (rho1, rho2, value) = best;
    let prior = Dist::from_vec(vec![1.0 - p, p])?;
    let joint = make_joint(&prior, &Channel::binary(rho1, rho2)?)?;
    Ok(AvgHammingPut { rho1, rho2, value, guess_prob: map_success(&joint) })
}
