//! Exponentiated-gradient descent on the probability simplex.
//!
//! A step is accepted when it lowers the objective beyond roundoff, and the
//! step size then doubles. Once the objective is flat to roundoff, a step is
//! accepted only if the objective is still descending at the trial point or
//! the residual drops, and the step size is kept; this stops noise from
//! pumping the step into endless overshoot. Rejected steps halve it.
//! Periodic pairwise moves transfer mass between coordinates directly.

/// Entries below this are treated as outside the support.
pub(crate) const PRUNE_MASS: f64 = 1e-14;

const MIN_STEP: f64 = 1e-300;

/// Iterations between pairwise moves, which shift mass from the worst support
/// coordinate straight to the best one. Multiplicative updates only shrink a
/// coordinate geometrically, which crawls when two are nearly tied.
const PAIRWISE_EVERY: usize = 16;
const PAIRWISE_HALVINGS: usize = 40;

#[derive(Clone, Debug)]
pub(crate) struct Outcome {
    pub point: Vec<f64>,
    pub value: f64,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Frank-Wolfe gap `Σ p g − min g`, an upper bound on suboptimality for a
/// convex objective.
pub(crate) fn frank_wolfe_gap(point: &[f64], grad: &[f64]) -> f64 {
    let mean: f64 = point.iter().zip(grad).filter(|(p, _)| **p > 0.0).map(|(p, g)| p * g).sum();
    let min = grad.iter().cloned().fold(f64::INFINITY, f64::min);
    let gap = mean - min;
    if gap.is_nan() {
        f64::INFINITY
    } else {
        gap.max(0.0)
    }
}

/// Minimizes `eval` from `start`. `eval` returns the objective and its
/// gradient; `residual` maps (point, gradient) to the stopping certificate.
pub(crate) fn minimize<E, R>(start: Vec<f64>, mut eval: E, residual: R, tol: f64, max_iter: usize) -> Outcome
where
    E: FnMut(&[f64]) -> (f64, Vec<f64>),
    R: Fn(&[f64], &[f64]) -> f64,
{
    let mut point = start;
    let (mut value, mut grad) = eval(&point);
    let mut res = residual(&point, &grad);
    let spread =
        grad.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - grad.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut step = if spread > 0.0 && spread.is_finite() { 1.0 / spread } else { 1.0 };
    let mut iterations = 0;

    while res > tol && iterations < max_iter {
        iterations += 1;
        let trial = eg_step(&point, &grad, step);
        let (tv, tg) = eval(&trial);
        let tr = residual(&trial, &tg);
        let noise = 64.0 * f64::EPSILON * value.abs().max(1.0);
        let decreases = tv < value - noise;
        // below roundoff in the value, trust the slope at the trial point
        // (centering the gradient removes its common part, which only adds
        // roundoff since the step sums to zero)
        let center: f64 = tg.iter().zip(&trial).map(|(g, p)| g * p).sum();
        let slope: f64 = tg.iter().zip(trial.iter().zip(&point)).map(|(g, (a, b))| (g - center) * (a - b)).sum();
        let ties = tv <= value + noise && (slope < 0.0 || tr < res);
        if tv.is_finite() && (decreases || ties) {
            point = trial;
            value = tv;
            grad = tg;
            res = tr;
            if decreases {
                step *= 2.0;
            }
        } else {
            step *= 0.5;
            if step < MIN_STEP {
                break;
            }
        }
        if iterations % PAIRWISE_EVERY == 0 && res > tol {
            for (i, j) in pairs(&point, &grad) {
                if !(grad[i] > grad[j]) {
                    continue;
                }
                let mut amount = point[i];
                for _ in 0..PAIRWISE_HALVINGS {
                    let mut trial = point.clone();
                    trial[i] -= amount;
                    trial[j] += amount;
                    let (tv, tg) = eval(&trial);
                    let tr = residual(&trial, &tg);
                    let noise = 64.0 * f64::EPSILON * value.abs().max(1.0);
                    if tv.is_finite() && (tv < value - noise || (tv <= value + noise && tr < res)) {
                        point = trial;
                        value = tv;
                        grad = tg;
                        res = tr;
                        break;
                    }
                    amount *= 0.5;
                }
            }
        }
    }
    Outcome { converged: res <= tol, point, value, residual: res, iterations }
}

/// Moves from each worse support coordinate, worst first, to the coordinate
/// with the smallest gradient.
fn pairs(point: &[f64], grad: &[f64]) -> Vec<(usize, usize)> {
    let Some(best) = (0..point.len()).min_by(|&a, &b| grad[a].total_cmp(&grad[b])) else {
        return Vec::new();
    };
    let mut away: Vec<usize> = (0..point.len()).filter(|&i| point[i] > 0.0 && grad[i] > grad[best]).collect();
    away.sort_by(|&a, &b| grad[b].total_cmp(&grad[a]));
    away.into_iter().map(|i| (i, best)).collect()
}

fn eg_step(point: &[f64], grad: &[f64], step: f64) -> Vec<f64> {
    let logs: Vec<f64> =
        point.iter().zip(grad).map(|(p, g)| if *p > 0.0 { p.ln() - step * g } else { f64::NEG_INFINITY }).collect();
    let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut out: Vec<f64> = logs.iter().map(|l| (l - top).exp()).collect();
    let z: f64 = out.iter().sum();
    for v in &mut out {
        *v /= z;
    }
    out
}

/// Zeroes entries below [`PRUNE_MASS`] and renormalizes.
pub(crate) fn prune(point: &mut [f64]) {
    for v in point.iter_mut() {
        if *v < PRUNE_MASS {
            *v = 0.0;
        }
    }
    let z: f64 = point.iter().sum();
    for v in point.iter_mut() {
        *v /= z;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_quadratic_to_interior_point() {
        let target = [0.2, 0.3, 0.5];
        let eval = |p: &[f64]| {
            let v = p.iter().zip(&target).map(|(a, b)| (a - b) * (a - b)).sum();
            let g = p.iter().zip(&target).map(|(a, b)| 2.0 * (a - b)).collect();
            (v, g)
        };
        let out = minimize(vec![1.0 / 3.0; 3], eval, frank_wolfe_gap, 1e-12, 100_000);
        assert!(out.converged);
        for (a, b) in out.point.iter().zip(&target) {
            assert!((a - b).abs() < 1e-6);
        }
    }

    #[test]
    fn linear_objective_moves_mass_to_best_vertex() {
        let c = [3.0, 1.0, 2.0];
        let eval = |p: &[f64]| (p.iter().zip(&c).map(|(a, b)| a * b).sum(), c.to_vec());
        let out = minimize(vec![1.0 / 3.0; 3], eval, frank_wolfe_gap, 1e-10, 10_000);
        assert!(out.converged);
        assert!(out.point[1] > 1.0 - 1e-10);
    }
}
