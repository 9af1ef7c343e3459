//! Privacy-utility tradeoffs under a hard distortion constraint `d(X,Y) ≤ D`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::leakage::SolverOptions;
use crate::lp::LinearProgram;
use crate::measures::FGenerator;
use crate::prob::{AlphaOrder, Alphabet, Channel, Dist};
use crate::simplex::{self, frank_wolfe_gap};

/// Distortion matrix `d(x, y)` with bound `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct DistortionSpec {
    input: Alphabet,
    output: Alphabet,
    d: Vec<Vec<f64>>,
    bound: f64,
}

impl DistortionSpec {
    pub fn new(input: Alphabet, output: Alphabet, d: Vec<Vec<f64>>, bound: f64) -> Result<Self> {
        if d.len() != input.len() {
            return Err(Error::Shape(format!("{} distortion rows for {} inputs", d.len(), input.len())));
        }
        for (x, row) in d.iter().enumerate() {
            if row.len() != output.len() {
                return Err(Error::Shape(format!(
                    "distortion row {x} has {} entries, expected {}",
                    row.len(),
                    output.len()
                )));
            }
            if let Some(v) = row.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
                return Err(Error::OutOfRange { name: "distortion", value: *v, expected: "finite and >= 0" });
            }
        }
        if !bound.is_finite() {
            return Err(Error::OutOfRange { name: "D", value: bound, expected: "finite" });
        }
        Ok(DistortionSpec { input, output, d, bound })
    }

    pub fn from_matrix(d: Vec<Vec<f64>>, bound: f64) -> Result<Self> {
        let nx = d.len();
        let ny = d.first().map_or(0, Vec::len);
        Self::new(Alphabet::indexed(nx)?, Alphabet::indexed(ny)?, d, bound)
    }

    /// `d(x,y) = 0` on the diagonal and `1` elsewhere.
    pub fn identity(n: usize, bound: f64) -> Result<Self> {
        let d = (0..n).map(|i| (0..n).map(|j| if i == j { 0.0 } else { 1.0 }).collect()).collect();
        Self::from_matrix(d, bound)
    }

    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn output(&self) -> &Alphabet {
        &self.output
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.d
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    input: Alphabet,
    output: Alphabet,
    d: Vec<Vec<f64>>,
    #[serde(rename = "D")]
    bound: f64,
}

impl Serialize for DistortionSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawSpec { input: self.input.clone(), output: self.output.clone(), d: self.d.clone(), bound: self.bound }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DistortionSpec {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSpec::deserialize(de)?;
        DistortionSpec::new(raw.input, raw.output, raw.d, raw.bound).map_err(serde::de::Error::custom)
    }
}

/// The feasible output sets `B_D(x) = {y : d(x,y) ≤ D}`, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Balls {
    input: Alphabet,
    output: Alphabet,
    sets: Vec<Vec<usize>>,
}

impl Balls {
    /// Balls over indexed alphabets; every set must be nonempty.
    pub fn new(sets: Vec<Vec<usize>>, n_outputs: usize) -> Result<Self> {
        let input = Alphabet::indexed(sets.len())?;
        let output = Alphabet::indexed(n_outputs)?;
        Self::with_alphabets(input, output, sets)
    }

    pub fn with_alphabets(input: Alphabet, output: Alphabet, mut sets: Vec<Vec<usize>>) -> Result<Self> {
        if sets.len() != input.len() {
            return Err(Error::Shape(format!("{} balls for {} inputs", sets.len(), input.len())));
        }
        for (x, s) in sets.iter_mut().enumerate() {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::EmptyBall { input: input.label(x).to_string() });
            }
            if s.iter().any(|&y| y >= output.len()) {
                return Err(Error::Shape(format!("ball of input {x} names an output beyond {}", output.len())));
            }
        }
        Ok(Balls { input, output, sets })
    }

    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn output(&self) -> &Alphabet {
        &self.output
    }

    pub fn n_inputs(&self) -> usize {
        self.sets.len()
    }

    pub fn n_outputs(&self) -> usize {
        self.output.len()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn ball(&self, x: usize) -> &[usize] {
        &self.sets[x]
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.sets[x].binary_search(&y).is_ok()
    }

    /// `Q(B(x))` for every input.
    pub fn masses(&self, q: &[f64]) -> Vec<f64> {
        self.sets.iter().map(|s| s.iter().map(|&y| q[y]).sum()).collect()
    }
}

/// Computes the balls with the inclusive, exact comparison `d(x,y) ≤ D`.
pub fn distortion_balls(spec: &DistortionSpec) -> Result<Balls> {
    let sets = spec.d.iter().map(|row| (0..row.len()).filter(|&y| row[y] <= spec.bound).collect()).collect();
    Balls::with_alphabets(spec.input.clone(), spec.output.clone(), sets)
}

/// Like [`distortion_balls`], but empty balls are allowed for inputs where
/// `mass` is zero.
pub(crate) fn balls_on_support(spec: &DistortionSpec, mass: &[f64]) -> Result<Vec<Vec<usize>>> {
    spec.d
        .iter()
        .enumerate()
        .map(|(x, row)| {
            let ball: Vec<usize> = (0..row.len()).filter(|&y| row[y] <= spec.bound).collect();
            if ball.is_empty() && mass[x] > 0.0 {
                Err(Error::EmptyBall { input: spec.input.label(x).to_string() })
            } else {
                Ok(ball)
            }
        })
        .collect()
}

/// Solution of `q* = sup_Q min_x Q(B(x))`.
#[derive(Clone, Debug)]
pub struct QStar {
    pub q: f64,
    pub primal: Dist,
    /// Minimax weights `μ` over inputs.
    pub dual: Dist,
    /// `max_y Σ_{x: y ∈ B(x)} μ(x) − min_x Q(B(x))`, an upper bound on the
    /// error of `q`.
    pub gap: f64,
}

/// Solves the maximin program by linear programming and certifies the answer
/// with the dual.
pub fn q_star(balls: &Balls, tol: f64) -> Result<QStar> {
    let ny = balls.n_outputs();
    // variables: q_0..q_{ny-1}, t
    let mut lp = LinearProgram::new(ny + 1);
    lp.objective[ny] = 1.0;
    for set in balls.sets() {
        let mut row = vec![0.0; ny + 1];
        for &y in set {
            row[y] = -1.0;
        }
        row[ny] = 1.0;
        lp.add_le(row, 0.0);
    }
    let mut simplex_row = vec![1.0; ny + 1];
    simplex_row[ny] = 0.0;
    lp.add_eq(simplex_row, 1.0);
    let sol = lp.solve()?;

    let primal = Dist::from_weights(balls.output().clone(), &sol.x[..ny])?;
    let dual = if sol.ub_duals.iter().sum::<f64>() > 0.0 {
        Dist::from_weights(balls.input().clone(), &sol.ub_duals)?
    } else {
        Dist::uniform_on(balls.input().clone())
    };
    let q = balls.masses(primal.mass()).into_iter().fold(f64::INFINITY, f64::min);
    let mut cover = vec![0.0; ny];
    for (mu, set) in dual.mass().iter().zip(balls.sets()) {
        for &y in set {
            cover[y] += mu;
        }
    }
    let upper = cover.into_iter().fold(0.0, f64::max);
    let gap = (upper - q).max(0.0);
    if gap > tol {
        return Err(Error::NotConverged { iterations: 0, residual: gap });
    }
    Ok(QStar { q, primal, dual, gap })
}

/// Row `x` is `target` restricted to `B(x)` and renormalized.
pub fn optimal_mechanism(target: &Dist, balls: &Balls) -> Result<Channel> {
    if target.len() != balls.n_outputs() {
        return Err(Error::Shape(format!("target has {} outputs, balls have {}", target.len(), balls.n_outputs())));
    }
    let rows = balls
        .sets()
        .iter()
        .enumerate()
        .map(|(x, set)| {
            let z: f64 = set.iter().map(|&y| target.mass()[y]).sum();
            if z <= 0.0 {
                return Err(Error::ZeroTargetMass { input: balls.input().label(x).to_string() });
            }
            let mut row = vec![0.0; balls.n_outputs()];
            for &y in set {
                row[y] = target.mass()[y] / z;
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Channel::new(balls.input().clone(), balls.output().clone(), rows)
}

/// Optimal mechanism for a hard-distortion tradeoff.
#[derive(Clone, Debug)]
pub struct PutSolution {
    pub mechanism: Channel,
    pub q_star: f64,
    pub target_output: Dist,
    /// Leakage in nats.
    pub value: f64,
    pub dual_certificate: Dist,
    pub duality_gap: f64,
}

fn require_finite_f0(gen: &FGenerator) -> Result<()> {
    if gen.at_zero().is_finite() {
        Ok(())
    } else {
        Err(Error::IncompatibleGenerator)
    }
}

/// `q f(1/q) + (1 − q) f(0)`.
pub fn put_value_from_q(q: f64, gen: &FGenerator) -> f64 {
    if q >= 1.0 {
        return 0.0;
    }
    match gen {
        FGenerator::Kl => -q.ln(),
        _ => q * gen.eval(1.0 / q) + (1.0 - q) * gen.at_zero(),
    }
}

fn solution_from_q(balls: &Balls, qs: QStar, value: f64) -> Result<PutSolution> {
    Ok(PutSolution {
        mechanism: optimal_mechanism(&qs.primal, balls)?,
        q_star: qs.q,
        target_output: qs.primal,
        value: value.max(0.0),
        dual_certificate: qs.dual,
        duality_gap: qs.gap,
    })
}

/// Distribution-free tradeoff for maximal f-leakage.
pub fn put_max_f_leakage(balls: &Balls, gen: &FGenerator, tol: f64) -> Result<PutSolution> {
    require_finite_f0(gen)?;
    let qs = q_star(balls, tol)?;
    let value = put_value_from_q(qs.q, gen);
    solution_from_q(balls, qs, value)
}

/// Distribution-aware tradeoff for f-leakage.
#[derive(Clone, Debug)]
pub struct PriorPut {
    pub value: f64,
    pub target_output: Dist,
    /// Frank-Wolfe gap of the final iterate.
    pub gap: f64,
}

/// `h(u) = u (f(1/u) − f(0))` and its derivative.
fn ball_penalty(gen: &FGenerator, u: f64) -> (f64, f64) {
    match gen {
        FGenerator::Kl => (-u.ln(), -1.0 / u),
        FGenerator::Hellinger(a) => (u.powf(1.0 - a) / (a - 1.0), -u.powf(-a)),
        FGenerator::Custom(_) => {
            let t = 1.0 / u;
            let f0 = gen.at_zero();
            let ft = gen.eval(t);
            (u * (ft - f0), ft - f0 - gen.derivative(t) * t)
        }
    }
}

/// `f(0) + inf_Q Σ_x P(x) h(Q(B(x)))`, minimized by exponentiated gradient.
pub fn put_f_leakage(prior: &Dist, balls: &Balls, gen: &FGenerator, opts: SolverOptions) -> Result<PriorPut> {
    require_finite_f0(gen)?;
    if prior.alphabet() != balls.input() {
        return Err(Error::AlphabetMismatch("prior alphabet differs from distortion input alphabet".into()));
    }
    let ny = balls.n_outputs();
    let f0 = gen.at_zero();
    let p = prior.mass();
    let eval = |q: &[f64]| {
        let masses = balls.masses(q);
        let mut value = f0;
        let mut grad = vec![0.0; ny];
        for (x, set) in balls.sets().iter().enumerate() {
            if p[x] == 0.0 {
                continue;
            }
            let (h, dh) = ball_penalty(gen, masses[x]);
            value += p[x] * h;
            for &y in set {
                grad[y] += p[x] * dh;
            }
        }
        (value, grad)
    };
    let out = simplex::minimize(vec![1.0 / ny as f64; ny], eval, frank_wolfe_gap, opts.tol, opts.max_iter);
    if !out.converged {
        return Err(Error::NotConverged { iterations: out.iterations, residual: out.residual });
    }
    Ok(PriorPut {
        value: out.value.max(0.0),
        target_output: Dist::from_weights(balls.output().clone(), &out.point)?,
        gap: out.residual,
    })
}

/// Tradeoff for maximal α-leakage.
///
/// For every `α > 1` (including `∞`) the value is `−log q*` with the same
/// mechanism. At `α = 1` the value is `inf_Q E[log 1/Q(B(X))]` under
/// `prior_for_one`; the mechanism is then built on that minimizer and
/// `duality_gap` reports the convex program's gap, while `q_star` and
/// `dual_certificate` still describe the maximin program.
pub fn put_max_alpha_leakage(
    balls: &Balls,
    order: AlphaOrder,
    prior_for_one: Option<&Dist>,
    opts: SolverOptions,
) -> Result<PutSolution> {
    order.require_at_least_one()?;
    let qs = q_star(balls, opts.tol)?;
    match order {
        AlphaOrder::One => {
            let prior = prior_for_one.ok_or(Error::MissingPrior)?;
            let pp = put_f_leakage(prior, balls, &FGenerator::Kl, opts)?;
            Ok(PutSolution {
                mechanism: optimal_mechanism(&pp.target_output, balls)?,
                q_star: qs.q,
                target_output: pp.target_output,
                value: pp.value,
                dual_certificate: qs.dual,
                duality_gap: pp.gap,
            })
        }
        _ => {
            let value = -qs.q.ln();
            solution_from_q(balls, qs, value)
        }
    }
}
