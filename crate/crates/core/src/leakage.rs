//! α-loss, optimal guessing strategies, α-leakage, maximal α-leakage and the
//! f-divergence leakage family.

use crate::error::{Error, Result};
use crate::measures::{
    arimoto_cond_entropy, arimoto_mi, f_divergence_raw, log_sibson_center, map_success, shannon_mi, sibson_mi,
    FGenerator,
};
use crate::prob::{log_alpha_norm_unchecked, log_sum_exp, make_joint, AlphaOrder, Channel, Dist, Joint};
use crate::simplex::{self, frank_wolfe_gap};
use nalgebra::{DMatrix, DVector};

/// Iteration controls shared by the iterative solvers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { tol: 1e-10, max_iter: 100_000 }
    }
}

/// α-loss of assigning probability `prob_correct` to the true value.
pub fn alpha_loss(prob_correct: f64, order: AlphaOrder) -> Result<f64> {
    if !(0.0..=1.0).contains(&prob_correct) {
        return Err(Error::OutOfRange { name: "prob_correct", value: prob_correct, expected: "0 <= p <= 1" });
    }
    let p = prob_correct;
    Ok(match order {
        AlphaOrder::One => -p.ln(),
        AlphaOrder::Infinity => 1.0 - p,
        AlphaOrder::Finite(a) => a / (a - 1.0) * (1.0 - p.powf((a - 1.0) / a)),
    })
}

/// Expected α-loss `E[ℓ_α(S(X|Y))]` of a guessing strategy `S` (rows indexed
/// by `y`) against a joint over `X × Y`.
pub fn expected_alpha_loss(joint: &Joint, strategy: &Channel, order: AlphaOrder) -> Result<f64> {
    order.require_at_least_one()?;
    if strategy.n_inputs() != joint.n_cols() || strategy.n_outputs() != joint.n_rows() {
        return Err(Error::Shape("strategy must map Y to X".into()));
    }
    let mut s = 0.0;
    for x in 0..joint.n_rows() {
        for y in 0..joint.n_cols() {
            let v = joint.get(x, y);
            if v > 0.0 {
                s += v * alpha_loss(strategy.get(y, x), order)?;
            }
        }
    }
    Ok(s)
}

/// Guessing strategy minimizing the expected α-loss, given the posterior
/// rows `P(·|y)`: the α-tilted posterior. At `α = ∞` the mass is split evenly
/// over the MAP ties.
pub fn optimal_strategy(posterior: &Channel, order: AlphaOrder) -> Result<Channel> {
    order.require_at_least_one()?;
    let rows = posterior
        .rows()
        .map(|row| match order {
            AlphaOrder::One => row.to_vec(),
            AlphaOrder::Infinity => {
                let top = row.iter().cloned().fold(0.0, f64::max);
                let ties = row.iter().filter(|v| **v == top).count() as f64;
                row.iter().map(|v| if *v == top { 1.0 / ties } else { 0.0 }).collect()
            }
            AlphaOrder::Finite(a) => {
                let l = log_alpha_norm_unchecked(row, order) * a;
                row.iter().map(|v| if *v > 0.0 { (a * v.ln() - l).exp() } else { 0.0 }).collect()
            }
        })
        .collect();
    Channel::new(posterior.input().clone(), posterior.output().clone(), rows)
}

/// Optimal strategy together with the loss it attains.
#[derive(Clone, Debug)]
pub struct StrategyResult {
    pub strategy: Channel,
    pub expected_loss: f64,
}

/// Builds the posterior of `joint`, tilts it and evaluates the loss.
pub fn optimal_strategy_for(joint: &Joint, order: AlphaOrder) -> Result<StrategyResult> {
    let post = crate::prob::posterior_of(joint);
    let strategy = optimal_strategy(&post.channel, order)?;
    let expected_loss = expected_alpha_loss(joint, &strategy, order)?;
    Ok(StrategyResult { strategy, expected_loss })
}

/// Minimal expected α-loss over all strategies.
pub fn min_expected_alpha_loss(joint: &Joint, order: AlphaOrder) -> Result<f64> {
    order.require_at_least_one()?;
    Ok(match order {
        AlphaOrder::One => arimoto_cond_entropy(joint, order),
        AlphaOrder::Infinity => (1.0 - map_success(joint)).max(0.0),
        AlphaOrder::Finite(a) => {
            let l = log_sum_exp((0..joint.n_cols()).map(|y| log_alpha_norm_unchecked(&joint.column(y), order)));
            (a / (a - 1.0) * -l.exp_m1()).max(0.0)
        }
    })
}

/// α-leakage from `X` to `Y`; equals the Arimoto mutual information.
pub fn alpha_leakage(joint: &Joint, order: AlphaOrder) -> Result<f64> {
    order.require_at_least_one()?;
    Ok(arimoto_mi(joint, order))
}

/// Maximal leakage `log Σ_y max_x W(y|x)`.
pub fn maximal_leakage(channel: &Channel) -> f64 {
    let s: f64 = (0..channel.n_outputs()).map(|y| channel.column(y).into_iter().fold(0.0, f64::max)).sum();
    s.ln().max(0.0)
}

/// Output of the maximal α-leakage solver.
#[derive(Clone, Debug)]
pub struct CapacityResult {
    /// Leakage in nats.
    pub value: f64,
    pub optimal_input: Dist,
    /// The output distribution attaining the inner infimum.
    pub target_output: Dist,
    /// `log max_x k_x − log Σ_x P(x) k_x` with
    /// `k_x = k_α(W(·|x) ‖ target_output)`; zero at the optimum, and the
    /// value is within `α/(α−1)` times this of the true leakage.
    pub kkt_residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl CapacityResult {
    /// Turns a non-converged result into an error.
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NotConverged { iterations: self.iterations, residual: self.kkt_residual })
        }
    }
}

/// Maximal α-leakage of a channel.
///
/// For `α > 1` this is the order-α Arimoto capacity, found by maximizing
/// `F(P) = Σ_y (Σ_x P(x) W(y|x)^α)^{1/α}` with a certified ascent. At `α = 1`
/// it is the mutual information at `prior_for_one`, which is required. At
/// `α = ∞` it is maximal leakage.
pub fn maximal_alpha_leakage(
    channel: &Channel,
    order: AlphaOrder,
    prior_for_one: Option<&Dist>,
    opts: SolverOptions,
) -> Result<CapacityResult> {
    order.require_at_least_one()?;
    match order {
        AlphaOrder::One => {
            let prior = prior_for_one.ok_or(Error::MissingPrior)?;
            let joint = make_joint(prior, channel)?;
            Ok(CapacityResult {
                value: shannon_mi(&joint),
                optimal_input: prior.clone(),
                target_output: joint.col_marginal(),
                kkt_residual: 0.0,
                iterations: 0,
                converged: true,
            })
        }
        AlphaOrder::Infinity => {
            let maxima: Vec<f64> =
                (0..channel.n_outputs()).map(|y| channel.column(y).into_iter().fold(0.0, f64::max)).collect();
            Ok(CapacityResult {
                value: maximal_leakage(channel),
                optimal_input: Dist::uniform_on(channel.input().clone()),
                target_output: Dist::from_weights(channel.output().clone(), &maxima)?,
                kkt_residual: 0.0,
                iterations: 0,
                converged: true,
            })
        }
        AlphaOrder::Finite(a) => sibson_capacity(channel, a, opts),
    }
}

struct CapacityState {
    log_f: f64,
    log_center: Vec<f64>,
    log_k: Vec<f64>,
}

fn capacity_state(channel: &Channel, prior: &[f64], alpha: f64) -> CapacityState {
    let log_s = log_sibson_center(prior, channel, alpha);
    let log_f = log_sum_exp(log_s.iter().cloned());
    let log_center: Vec<f64> = log_s.iter().map(|l| l - log_f).collect();
    let log_k = (0..channel.n_inputs())
        .map(|x| {
            log_sum_exp(
                channel
                    .row(x)
                    .iter()
                    .zip(&log_center)
                    .filter(|(w, _)| **w > 0.0)
                    .map(|(w, lq)| alpha * w.ln() + (1.0 - alpha) * lq),
            )
        })
        .collect();
    CapacityState { log_f, log_center, log_k }
}

/// `log max_x k_x − log Σ_x P(x) k_x`. Since `F` is concave and
/// 1-homogeneous, `Σ_x P(x) k_x` is proportional to `F(P)` and `max_x k_x` to
/// an upper bound on `F*`, so this bounds `log(F*/F(P))` and vanishes exactly
/// at the optimum. Inputs whose mass is dying out no longer hold it up.
fn log_residual(prior: &[f64], log_k: &[f64]) -> f64 {
    let top = log_k.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mean = log_sum_exp(log_k.iter().zip(prior).filter(|(_, p)| **p > 0.0).map(|(k, p)| k + p.ln()));
    (top - mean).max(0.0)
}

/// Mass below this on an input that is strictly worse than the best one is
/// the tail of a decay towards zero.
const DOMINATED_MASS: f64 = 1e-8;

/// Zeroes inputs on their way out of the support, unless that would worsen
/// the certificate.
fn drop_dominated(channel: &Channel, point: &mut Vec<f64>, alpha: f64) {
    let st = capacity_state(channel, point, alpha);
    let top = st.log_k.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut trimmed = point.clone();
    for (p, lk) in trimmed.iter_mut().zip(&st.log_k) {
        if *p < DOMINATED_MASS && *lk < top - 1e-9 {
            *p = 0.0;
        }
    }
    if trimmed == *point {
        return;
    }
    let z: f64 = trimmed.iter().sum();
    trimmed.iter_mut().for_each(|v| *v /= z);
    let before = log_residual(point, &st.log_k);
    let after = log_residual(&trimmed, &capacity_state(channel, &trimmed, alpha).log_k);
    if after <= before.max(1e-12) {
        *point = trimmed;
    }
}

/// First-order iterations between Newton polishes.
const NEWTON_EVERY: usize = 2000;
const NEWTON_ITERS: usize = 30;
const NEWTON_HALVINGS: usize = 40;

fn current_residual(channel: &Channel, point: &[f64], alpha: f64) -> f64 {
    log_residual(point, &capacity_state(channel, point, alpha).log_k)
}

/// Newton steps for `max F` on the face spanned by the support of `point`.
///
/// First-order steps crawl along directions where `F` is nearly flat, which
/// is where near-duplicate rows put the optimum; the Hessian
/// `(1/α)(1/α − 1) Σ_y W_xy^α W_x'y^α s_y^{1/α − 2}` with
/// `s_y = Σ_x P(x) W_xy^α` resolves them. Steps that would leave the simplex
/// are clipped, dropping the blocking input. Returns the steps taken.
fn newton_polish(channel: &Channel, point: &mut Vec<f64>, alpha: f64, tol: f64, max_steps: usize) -> usize {
    let ny = channel.n_outputs();
    let mut res = current_residual(channel, point, alpha);
    for step in 0..max_steps {
        if res <= tol {
            return step;
        }
        let support: Vec<usize> = (0..point.len()).filter(|&x| point[x] > 0.0).collect();
        let m = support.len();
        let pow: Vec<Vec<f64>> =
            support.iter().map(|&x| channel.row(x).iter().map(|w| w.powf(alpha)).collect()).collect();
        let s: Vec<f64> = (0..ny).map(|y| support.iter().zip(&pow).map(|(&x, r)| point[x] * r[y]).sum()).collect();
        if s.iter().zip(0..ny).any(|(v, y)| *v == 0.0 && pow.iter().any(|r| r[y] > 0.0)) {
            return step;
        }
        let inv = 1.0 / alpha;
        let mut kkt = DMatrix::<f64>::zeros(m + 1, m + 1);
        let mut rhs = DVector::<f64>::zeros(m + 1);
        for i in 0..m {
            rhs[i] = -(0..ny).filter(|&y| s[y] > 0.0).map(|y| inv * pow[i][y] * s[y].powf(inv - 1.0)).sum::<f64>();
            for j in 0..m {
                kkt[(i, j)] = (0..ny)
                    .filter(|&y| s[y] > 0.0)
                    .map(|y| inv * (inv - 1.0) * pow[i][y] * pow[j][y] * s[y].powf(inv - 2.0))
                    .sum();
            }
            kkt[(i, m)] = 1.0;
            kkt[(m, i)] = 1.0;
        }
        let Ok(sol) = kkt.svd(true, true).solve(&rhs, 1e-14) else {
            return step;
        };
        let dir: Vec<f64> = (0..m).map(|i| sol[i]).collect();
        // longest step that stays on the simplex
        let (mut t, mut blocking) = (1.0, None);
        for (i, d) in dir.iter().enumerate() {
            let x = support[i];
            if *d < 0.0 && point[x] + d * t < 0.0 {
                t = point[x] / -d;
                blocking = Some(x);
            }
        }
        let mut improved = false;
        for _ in 0..NEWTON_HALVINGS {
            let mut trial = point.clone();
            for (i, d) in dir.iter().enumerate() {
                trial[support[i]] = (point[support[i]] + t * d).max(0.0);
            }
            if let Some(x) = blocking {
                trial[x] = 0.0;
            }
            let z: f64 = trial.iter().sum();
            trial.iter_mut().for_each(|v| *v /= z);
            let tr = current_residual(channel, &trial, alpha);
            if tr < res {
                *point = trial;
                res = tr;
                improved = true;
                break;
            }
            t *= 0.5;
            blocking = None;
        }
        if !improved {
            return step + 1;
        }
    }
    max_steps
}

fn sibson_capacity(channel: &Channel, alpha: f64, opts: SolverOptions) -> Result<CapacityResult> {
    let n = channel.n_inputs();
    // Objective −log F; its gradient is −k_x / (α F^α).
    let eval = |p: &[f64]| {
        let st = capacity_state(channel, p, alpha);
        let grad = st.log_k.iter().map(|lk| -(lk - alpha * st.log_f).exp() / alpha).collect();
        (-st.log_f, grad)
    };
    let residual = |p: &[f64], g: &[f64]| {
        let log_k: Vec<f64> = g.iter().map(|v| (-v * alpha).ln()).collect();
        log_residual(p, &log_k)
    };
    let mut point = vec![1.0 / n as f64; n];
    let mut iterations = 0;
    loop {
        let budget = NEWTON_EVERY.min(opts.max_iter - iterations);
        let out = simplex::minimize(point, eval, residual, opts.tol, budget);
        iterations += out.iterations;
        point = out.point;
        simplex::prune(&mut point);
        drop_dominated(channel, &mut point, alpha);
        if current_residual(channel, &point, alpha) > opts.tol {
            let steps = NEWTON_ITERS.min(opts.max_iter - iterations);
            iterations += newton_polish(channel, &mut point, alpha, opts.tol, steps);
        }
        if current_residual(channel, &point, alpha) <= opts.tol || iterations >= opts.max_iter || out.iterations == 0 {
            break;
        }
    }
    let st = capacity_state(channel, &point, alpha);
    let kkt_residual = log_residual(&point, &st.log_k);
    let center: Vec<f64> = st.log_center.iter().map(|l| l.exp()).collect();
    let optimal_input = Dist::from_weights(channel.input().clone(), &point)?;
    Ok(CapacityResult {
        value: (alpha / (alpha - 1.0) * st.log_f).max(0.0),
        target_output: Dist::from_weights(channel.output().clone(), &center)?,
        optimal_input,
        converged: kkt_residual <= opts.tol,
        kkt_residual,
        iterations,
    })
}

/// Log-ratios below this make the binary closed form numerically void.
const BINARY_DEGENERATE_LOG_GAP: f64 = 1e-10;

/// `(log |e^a − e^b|, |a − b|)`.
fn log_abs_diff(a: f64, b: f64) -> (f64, f64) {
    if a == b {
        return (f64::NEG_INFINITY, 0.0);
    }
    let gap = (a - b).abs();
    (a.max(b) + (-(-gap).exp_m1()).ln(), gap)
}

/// Closed-form maximal α-leakage of the binary channel
/// `[[1−ρ₁, ρ₁], [ρ₂, 1−ρ₂]]` for `1 < α < ∞`.
///
/// Evaluated in the log domain. Near the rank-one locus `ρ₁ + ρ₂ = 1` the
/// formula cancels to nothing, and the capacity solver is used instead.
pub fn binary_maximal_alpha_leakage(rho1: f64, rho2: f64, alpha: f64) -> Result<f64> {
    for (name, v) in [("rho1", rho1), ("rho2", rho2)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::OutOfRange { name, value: v, expected: "0 <= rho <= 1" });
        }
    }
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(Error::OutOfRange { name: "alpha", value: alpha, expected: "1 < alpha < inf" });
    }
    let ln = |v: f64| v.ln();
    let (l1, l2) = (ln(1.0 - rho1), ln(1.0 - rho2));
    let (r1, r2) = (ln(rho1), ln(rho2));
    let (log_a, ga) = log_abs_diff(alpha * (l1 + l2), alpha * (r1 + r2));
    let (log_b1, g1) = log_abs_diff(alpha * l2, alpha * r1);
    let (log_b2, g2) = log_abs_diff(alpha * l1, alpha * r2);
    if ga.min(g1).min(g2) < BINARY_DEGENERATE_LOG_GAP {
        let w = Channel::binary(rho1, rho2)?;
        let res = maximal_alpha_leakage(&w, AlphaOrder::Finite(alpha), None, SolverOptions::default())?;
        return Ok(res.require_converged()?.value);
    }
    let inv = 1.0 / (1.0 - alpha);
    let v = log_a / (alpha - 1.0) + log_sum_exp([log_b1 * inv, log_b2 * inv]);
    Ok(v.max(0.0))
}

/// Maximal α-leakage of the binary symmetric channel.
pub fn bsc_maximal_alpha_leakage(rho: f64, alpha: f64) -> f64 {
    log_sum_exp([alpha * (1.0 - rho).ln(), alpha * rho.ln()]) / (alpha - 1.0) + std::f64::consts::LN_2
}

/// Lower bound obtained from the uniform input, and whether the channel
/// meets the equality condition (so that the bound is the exact value).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UniformInputBound {
    pub bound: f64,
    pub tight: bool,
}

const UNIFORM_TIGHT_TOL: f64 = 1e-9;

/// `(α/(α−1)) log(Σ_y ‖W(y|·)‖_α / |𝒳|^{1/α})`, with equality iff
/// `Σ_y W(y|x)^α / ‖W(y|·)‖_α^{α−1}` does not depend on `x`.
pub fn uniform_input_bound(channel: &Channel, alpha: f64) -> Result<UniformInputBound> {
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(Error::OutOfRange { name: "alpha", value: alpha, expected: "1 < alpha < inf" });
    }
    let uniform = Dist::uniform_on(channel.input().clone());
    let bound = sibson_mi(&uniform, channel, AlphaOrder::Finite(alpha))?;
    let order = AlphaOrder::Finite(alpha);
    let log_norms: Vec<f64> =
        (0..channel.n_outputs()).map(|y| log_alpha_norm_unchecked(&channel.column(y), order)).collect();
    let c: Vec<f64> = channel
        .rows()
        .map(|row| {
            log_sum_exp(
                row.iter()
                    .zip(&log_norms)
                    .filter(|(w, _)| **w > 0.0)
                    .map(|(w, ln)| alpha * w.ln() - (alpha - 1.0) * ln),
            )
        })
        .collect();
    let top = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let low = c.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(UniformInputBound { bound, tight: top - low <= UNIFORM_TIGHT_TOL })
}

/// f-leakage of a joint and the output distribution attaining it.
#[derive(Clone, Debug)]
pub struct FLeakage {
    pub value: f64,
    pub target_output: Dist,
    /// Frank-Wolfe gap of the final iterate (zero for closed forms).
    pub gap: f64,
}

/// `inf_Q Σ_x P(x) D_f(W(·|x) ‖ Q)` for the joint `P(x) W(y|x)`.
pub fn f_leakage(joint: &Joint, gen: &FGenerator, opts: SolverOptions) -> Result<FLeakage> {
    let fac = crate::prob::conditional_of(joint);
    let out = joint.col_alphabet().clone();
    match gen {
        FGenerator::Kl => Ok(FLeakage { value: shannon_mi(joint), target_output: joint.col_marginal(), gap: 0.0 }),
        FGenerator::Hellinger(a) => {
            let l = sibson_mi(&fac.prior, &fac.channel, AlphaOrder::Finite(*a))?;
            let log_s = log_sibson_center(fac.prior.mass(), &fac.channel, *a);
            let log_f = log_sum_exp(log_s.iter().cloned());
            let q: Vec<f64> = log_s.iter().map(|v| (v - log_f).exp()).collect();
            Ok(FLeakage {
                value: hellinger_from_alpha_leakage(l, *a),
                target_output: Dist::from_weights(out, &q)?,
                gap: 0.0,
            })
        }
        FGenerator::Custom(_) => {
            let (q, value, gap) = f_center(fac.prior.mass(), &fac.channel, gen, None, opts)?;
            Ok(FLeakage { value: value.max(0.0), target_output: Dist::from_weights(out, &q)?, gap })
        }
    }
}

/// Minimizes `Σ_x P(x) D_f(W_x ‖ Q)` over `Q`; returns `(Q, value, gap)`.
fn f_center(
    prior: &[f64],
    channel: &Channel,
    gen: &FGenerator,
    warm: Option<&[f64]>,
    opts: SolverOptions,
) -> Result<(Vec<f64>, f64, f64)> {
    let ny = channel.n_outputs();
    let eval = |q: &[f64]| {
        let value: f64 = prior
            .iter()
            .zip(channel.rows())
            .filter(|(p, _)| **p > 0.0)
            .map(|(p, row)| p * f_divergence_raw(row, q, gen))
            .sum();
        let grad = (0..ny)
            .map(|y| {
                prior
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| **p > 0.0)
                    .map(|(x, p)| {
                        let w = channel.get(x, y);
                        if w == 0.0 {
                            return p * gen.eval(0.0);
                        }
                        let t = w / q[y];
                        p * (gen.eval(t) - t * gen.derivative(t))
                    })
                    .sum()
            })
            .collect();
        (value, grad)
    };
    // the marginal is a good interior starting point
    let start: Vec<f64> = match warm {
        Some(w) => w.to_vec(),
        None => {
            let mut m = vec![0.0; ny];
            for (p, row) in prior.iter().zip(channel.rows()) {
                for (acc, w) in m.iter_mut().zip(row) {
                    *acc += p * w;
                }
            }
            m.iter().map(|v| 0.999 * v + 0.001 / ny as f64).collect()
        }
    };
    let out = simplex::minimize(start, eval, frank_wolfe_gap, opts.tol, opts.max_iter);
    if !out.converged {
        return Err(Error::NotConverged { iterations: out.iterations, residual: out.residual });
    }
    Ok((out.point, out.value, out.residual))
}

/// Hellinger-order-α f-leakage corresponding to an α-leakage value `l`.
pub fn hellinger_from_alpha_leakage(l: f64, alpha: f64) -> f64 {
    ((alpha - 1.0) * l).exp_m1() / (alpha - 1.0)
}

/// Inverse of [`hellinger_from_alpha_leakage`].
pub fn alpha_leakage_from_hellinger(h: f64, alpha: f64) -> f64 {
    ((alpha - 1.0) * h).ln_1p() / (alpha - 1.0)
}

/// Maximal f-leakage and the input distribution attaining it.
#[derive(Clone, Debug)]
pub struct MaximalFLeakage {
    pub value: f64,
    pub optimal_input: Dist,
    /// Bound on the distance to the optimum.
    pub gap: f64,
}

/// `sup_P inf_Q Σ_x P(x) D_f(W_x ‖ Q)`.
///
/// The Hellinger family maps onto maximal α-leakage. Otherwise the outer
/// problem is solved by ascent on `P` using `D_f(W_x ‖ Q*(P))` as the
/// gradient; with the KL generator this is the Blahut-Arimoto iteration.
pub fn maximal_f_leakage(channel: &Channel, gen: &FGenerator, opts: SolverOptions) -> Result<MaximalFLeakage> {
    if let FGenerator::Hellinger(a) = gen {
        let cap = maximal_alpha_leakage(channel, AlphaOrder::Finite(*a), None, opts)?.require_converged()?;
        return Ok(MaximalFLeakage {
            value: hellinger_from_alpha_leakage(cap.value, *a),
            optimal_input: cap.optimal_input,
            gap: 0.0,
        });
    }
    let n = channel.n_inputs();
    let inner_opts = SolverOptions { tol: opts.tol * 0.1, max_iter: opts.max_iter };
    let mut warm: Option<Vec<f64>> = None;
    let mut failure: Option<Error> = None;
    let mut inner_gap = 0.0;
    let eval = |p: &[f64]| {
        let (q, gap) = match gen {
            FGenerator::Kl => {
                let mut m = vec![0.0; channel.n_outputs()];
                for (px, row) in p.iter().zip(channel.rows()) {
                    for (acc, w) in m.iter_mut().zip(row) {
                        *acc += px * w;
                    }
                }
                (m, 0.0)
            }
            _ => match f_center(p, channel, gen, warm.as_deref(), inner_opts) {
                Ok((q, _, gap)) => (q, gap),
                Err(e) => {
                    failure = Some(e);
                    return (f64::NAN, vec![0.0; n]);
                }
            },
        };
        let d: Vec<f64> = channel.rows().map(|row| f_divergence_raw(row, &q, gen)).collect();
        let value: f64 = p.iter().zip(&d).map(|(a, b)| a * b).sum();
        warm = Some(q);
        inner_gap = gap;
        (-value, d.into_iter().map(|v| -v).collect())
    };
    let out = simplex::minimize(vec![1.0 / n as f64; n], eval, frank_wolfe_gap, opts.tol, opts.max_iter);
    if let Some(e) = failure {
        return Err(e);
    }
    if !out.converged {
        return Err(Error::NotConverged { iterations: out.iterations, residual: out.residual });
    }
    Ok(MaximalFLeakage {
        value: (-out.value).max(0.0),
        optimal_input: Dist::from_weights(channel.input().clone(), &out.point)?,
        gap: out.residual + inner_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(v: f64) -> AlphaOrder {
        AlphaOrder::new(v).unwrap()
    }
    fn close(x: f64, y: f64, tol: f64) {
        assert!((x - y).abs() <= tol, "{x} vs {y}");
    }

    #[test]
    fn alpha_loss_examples() {
        for o in [1.0, 2.0, 5.0, f64::INFINITY] {
            close(alpha_loss(1.0, a(o)).unwrap(), 0.0, 1e-15);
        }
        close(alpha_loss(0.0, AlphaOrder::Infinity).unwrap(), 1.0, 0.0);
        close(alpha_loss(0.5, a(2.0)).unwrap(), 2.0 * (1.0 - 0.5f64.sqrt()), 1e-15);
        assert_eq!(alpha_loss(0.0, AlphaOrder::One).unwrap(), f64::INFINITY);
        assert!(alpha_loss(1.5, a(2.0)).is_err());
    }

    #[test]
    fn strategy_examples() {
        let post = Channel::from_rows(vec![vec![0.6, 0.4], vec![0.5, 0.5]]).unwrap();
        let s = optimal_strategy(&post, AlphaOrder::Infinity).unwrap();
        assert_eq!(s.to_rows(), vec![vec![1.0, 0.0], vec![0.5, 0.5]]);
        assert_eq!(optimal_strategy(&post, AlphaOrder::One).unwrap().to_rows(), post.to_rows());
        let s = optimal_strategy(&post, a(2.0)).unwrap();
        close(s.get(0, 0), 0.36 / 0.52, 1e-15);
        assert!(matches!(optimal_strategy(&post, a(0.5)), Err(Error::OrderBelowOne(_))));
    }

    #[test]
    fn min_loss_examples() {
        let det = Joint::from_matrix(vec![vec![0.2, 0.0], vec![0.0, 0.8]]).unwrap();
        let ind = Joint::from_matrix(vec![vec![0.25, 0.25], vec![0.25, 0.25]]).unwrap();
        let j = Joint::from_matrix(vec![vec![0.36, 0.04], vec![0.06, 0.54]]).unwrap();
        for o in [1.0, 1.7, 3.0, f64::INFINITY] {
            close(min_expected_alpha_loss(&det, a(o)).unwrap(), 0.0, 1e-15);
            let s = optimal_strategy_for(&j, a(o)).unwrap();
            close(s.expected_loss, min_expected_alpha_loss(&j, a(o)).unwrap(), 1e-14);
        }
        close(min_expected_alpha_loss(&ind, AlphaOrder::Infinity).unwrap(), 0.5, 1e-15);
        close(min_expected_alpha_loss(&j, AlphaOrder::Infinity).unwrap(), 0.1, 1e-15);
    }

    #[test]
    fn maximal_leakage_examples() {
        close(maximal_leakage(&Channel::identity(4).unwrap()), 4f64.ln(), 1e-15);
        close(maximal_leakage(&Channel::bsc(0.1).unwrap()), 1.8f64.ln(), 1e-15);
        let rank1 = Channel::constant(3, &Dist::from_vec(vec![0.1, 0.9]).unwrap()).unwrap();
        close(maximal_leakage(&rank1), 0.0, 1e-15);
    }

    #[test]
    fn capacity_matches_bsc_formula() {
        let r = maximal_alpha_leakage(&Channel::bsc(0.1).unwrap(), a(2.0), None, SolverOptions::default()).unwrap();
        assert!(r.converged);
        close(r.value, 1.64f64.ln(), 1e-12);
        close(r.optimal_input.mass()[0], 0.5, 1e-9);
    }

    #[test]
    fn capacity_rank_one_is_zero() {
        let rank1 = Channel::constant(3, &Dist::from_vec(vec![0.3, 0.7]).unwrap()).unwrap();
        for o in [1.5, 2.0, 10.0] {
            let r = maximal_alpha_leakage(&rank1, a(o), None, SolverOptions::default()).unwrap();
            assert!(r.converged);
            close(r.value, 0.0, 1e-15);
            assert_eq!(r.iterations, 0);
        }
    }

    #[test]
    fn capacity_alpha_one_needs_prior() {
        let w = Channel::bsc(0.1).unwrap();
        assert!(matches!(
            maximal_alpha_leakage(&w, AlphaOrder::One, None, SolverOptions::default()),
            Err(Error::MissingPrior)
        ));
        assert!(matches!(
            maximal_alpha_leakage(&w, a(0.5), None, SolverOptions::default()),
            Err(Error::OrderBelowOne(_))
        ));
    }

    #[test]
    fn capacity_drops_dominated_inputs() {
        // the middle row is a mixture of the outer two and carries no mass
        let w = Channel::from_rows(vec![vec![0.9, 0.1], vec![0.5, 0.5], vec![0.1, 0.9]]).unwrap();
        let r = maximal_alpha_leakage(&w, a(3.0), None, SolverOptions::default()).unwrap();
        assert!(r.converged, "residual {}", r.kkt_residual);
        assert_eq!(r.optimal_input.mass()[1], 0.0);
        close(r.value, bsc_maximal_alpha_leakage(0.1, 3.0), 1e-10);
    }

    #[test]
    fn binary_closed_form_examples() {
        for al in [1.1, 2.0, 7.0] {
            close(binary_maximal_alpha_leakage(0.0, 0.0, al).unwrap(), 2f64.ln(), 1e-15);
            close(binary_maximal_alpha_leakage(0.5, 0.5, al).unwrap(), 0.0, 1e-12);
            close(binary_maximal_alpha_leakage(0.3, 0.7, al).unwrap(), 0.0, 1e-12);
        }
        close(binary_maximal_alpha_leakage(0.1, 0.1, 2.0).unwrap(), 1.64f64.ln(), 1e-14);
        let cf = binary_maximal_alpha_leakage(0.05, 0.2, 3.0).unwrap();
        let w = Channel::binary(0.05, 0.2).unwrap();
        let r = maximal_alpha_leakage(&w, a(3.0), None, SolverOptions::default()).unwrap();
        close(cf, r.value, 1e-10);
        // relabelled outputs give the same value
        close(binary_maximal_alpha_leakage(0.95, 0.8, 3.0).unwrap(), cf, 1e-12);
        assert!(binary_maximal_alpha_leakage(-0.1, 0.2, 2.0).is_err());
    }

    #[test]
    fn uniform_bound_examples() {
        let b = uniform_input_bound(&Channel::bsc(0.2).unwrap(), 2.5).unwrap();
        assert!(b.tight);
        close(b.bound, bsc_maximal_alpha_leakage(0.2, 2.5), 1e-14);
        let rank1 = Channel::constant(2, &Dist::from_vec(vec![0.4, 0.6]).unwrap()).unwrap();
        let b = uniform_input_bound(&rank1, 2.0).unwrap();
        assert!(b.tight);
        close(b.bound, 0.0, 1e-15);
        let w = Channel::binary(0.05, 0.3).unwrap();
        let b = uniform_input_bound(&w, 2.0).unwrap();
        let r = maximal_alpha_leakage(&w, a(2.0), None, SolverOptions::default()).unwrap();
        assert!(!b.tight);
        assert!(b.bound < r.value - 1e-6);
    }

    #[test]
    fn f_leakage_closed_forms() {
        let prior = Dist::bernoulli(0.4).unwrap();
        let joint = make_joint(&prior, &Channel::bsc(0.1).unwrap()).unwrap();
        let kl = f_leakage(&joint, &FGenerator::Kl, SolverOptions::default()).unwrap();
        close(kl.value, shannon_mi(&joint), 0.0);
        // Hellinger order 2 against a fine grid over Q
        let h = f_leakage(&joint, &FGenerator::Hellinger(2.0), SolverOptions::default()).unwrap();
        let rows = joint.to_matrix();
        let px = joint.row_marginal();
        let mut best = f64::INFINITY;
        for k in 1..100_000 {
            let q = k as f64 / 100_000.0;
            let qv = [1.0 - q, q];
            let v: f64 = (0..2)
                .map(|x| {
                    let w: Vec<f64> = rows[x].iter().map(|v| v / px.mass()[x]).collect();
                    px.mass()[x] * f_divergence_raw(&w, &qv, &FGenerator::Hellinger(2.0))
                })
                .sum();
            best = best.min(v);
        }
        close(h.value, best, 1e-9);
    }

    #[test]
    fn custom_f_leakage_matches_kl_generator() {
        let kl_custom =
            FGenerator::custom("kl", |t: f64| t * t.ln(), |t: f64| t.ln() + 1.0, 0.0, f64::INFINITY).unwrap();
        let prior = Dist::from_vec(vec![0.2, 0.5, 0.3]).unwrap();
        let w = Channel::from_rows(vec![vec![0.7, 0.2, 0.1], vec![0.1, 0.8, 0.1], vec![0.3, 0.3, 0.4]]).unwrap();
        let joint = make_joint(&prior, &w).unwrap();
        let r = f_leakage(&joint, &kl_custom, SolverOptions::default()).unwrap();
        close(r.value, shannon_mi(&joint), 1e-9);
        for (q, m) in r.target_output.mass().iter().zip(joint.col_marginal().mass()) {
            close(*q, *m, 1e-4);
        }
    }

    #[test]
    fn maximal_f_leakage_examples() {
        let bsc = Channel::bsc(0.1).unwrap();
        let h = maximal_f_leakage(&bsc, &FGenerator::Hellinger(2.0), SolverOptions::default()).unwrap();
        close(h.value, 0.64, 1e-12);
        let kl = maximal_f_leakage(&bsc, &FGenerator::Kl, SolverOptions::default()).unwrap();
        let h2 = -(0.1f64 * 0.1f64.ln() + 0.9 * 0.9f64.ln());
        close(kl.value, 2f64.ln() - h2, 1e-9);
        let rank1 = Channel::constant(2, &Dist::from_vec(vec![0.4, 0.6]).unwrap()).unwrap();
        for g in [FGenerator::Kl, FGenerator::Hellinger(3.0)] {
            close(maximal_f_leakage(&rank1, &g, SolverOptions::default()).unwrap().value, 0.0, 1e-12);
        }
    }

    #[test]
    fn hellinger_bijection_round_trips() {
        for (l, al) in [(0.3, 2.0), (1.2, 1.5), (0.0, 4.0)] {
            close(alpha_leakage_from_hellinger(hellinger_from_alpha_leakage(l, al), al), l, 1e-15);
        }
    }
}
