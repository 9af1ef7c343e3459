//! Lower bound on the α-leakage about a sensitive attribute `S` when a
//! mechanism `P(y|s,x)` must satisfy a hard distortion constraint on `X`.

use crate::error::{Error, Result};
use crate::lp::LinearProgram;
use crate::prob::{AlphaOrder, Alphabet, Channel, Joint};
use crate::put::{balls_on_support, DistortionSpec};

/// Joint `P(s, x)` with a distortion constraint on `X × Y`.
#[derive(Clone, Debug)]
pub struct SensitiveJoint {
    joint: Joint,
    spec: DistortionSpec,
    balls: Vec<Vec<usize>>,
}

impl SensitiveJoint {
    pub fn new(joint: Joint, spec: DistortionSpec) -> Result<Self> {
        if joint.col_alphabet() != spec.input() {
            return Err(Error::AlphabetMismatch("joint columns differ from distortion inputs".into()));
        }
        let balls = balls_on_support(&spec, joint.col_marginal().mass())?;
        Ok(SensitiveJoint { joint, spec, balls })
    }

    pub fn joint(&self) -> &Joint {
        &self.joint
    }

    pub fn spec(&self) -> &DistortionSpec {
        &self.spec
    }

    pub fn ball(&self, x: usize) -> &[usize] {
        &self.balls[x]
    }

    pub fn n_outputs(&self) -> usize {
        self.spec.output().len()
    }

    /// `S_D(y)`: values of `s` that can co-occur with some `x` allowed to
    /// release `y`.
    pub fn feasible_secrets(&self, y: usize) -> Vec<usize> {
        (0..self.joint.n_rows())
            .filter(|&s| (0..self.joint.n_cols()).any(|x| self.joint.get(s, x) > 0.0 && self.balls[x].contains(&y)))
            .collect()
    }

    /// Joint `P(s, y)` induced by a mechanism with rows indexed by `(s, x)`
    /// in lexicographic order.
    pub fn induced(&self, mechanism: &Channel) -> Result<Joint> {
        let (ns, nx, ny) = (self.joint.n_rows(), self.joint.n_cols(), self.n_outputs());
        if mechanism.n_inputs() != ns * nx || mechanism.n_outputs() != ny {
            return Err(Error::Shape(format!("mechanism must be {}x{ny}", ns * nx)));
        }
        let mass = (0..ns)
            .map(|s| {
                (0..ny).map(|y| (0..nx).map(|x| self.joint.get(s, x) * mechanism.get(s * nx + x, y)).sum()).collect()
            })
            .collect();
        Joint::new(self.joint.row_alphabet().clone(), self.spec.output().clone(), mass)
    }

    /// Whether `mechanism` only releases outputs inside each ball.
    pub fn respects_distortion(&self, mechanism: &Channel) -> bool {
        let nx = self.joint.n_cols();
        (0..mechanism.n_inputs()).all(|r| {
            let x = r % nx;
            let s = r / nx;
            self.joint.get(s, x) == 0.0
                || mechanism.row(r).iter().enumerate().all(|(y, v)| *v == 0.0 || self.balls[x].contains(&y))
        })
    }
}

/// Lower bound and, when the tightness conditions can be met, a mechanism
/// attaining it.
#[derive(Clone, Debug)]
pub struct SensitiveBound {
    pub bound: f64,
    pub tight: bool,
    /// Rows indexed by `(s, x)` in lexicographic order.
    pub witness: Option<Channel>,
}

const ARGMAX_REL_TOL: f64 = 1e-12;

/// Lower bound on `min I_α^A(S;Y)` over mechanisms obeying the distortion
/// constraint. `tight` is reported only when a witness mechanism meeting the
/// equality conditions is found; `false` does not assert a gap.
pub fn sensitive_lower_bound(sj: &SensitiveJoint, order: AlphaOrder) -> Result<SensitiveBound> {
    order.require_at_least_one()?;
    let j = &sj.joint;
    let (ns, nx, ny) = (j.n_rows(), j.n_cols(), sj.n_outputs());
    let ps = j.row_marginal();
    let ps = ps.mass();
    let weight = |s: usize| match order {
        AlphaOrder::Finite(a) => ps[s].powf(a),
        _ => ps[s],
    };
    let secrets: Vec<Vec<usize>> = (0..ny).map(|y| sj.feasible_secrets(y)).collect();
    let cover: Vec<f64> = secrets.iter().map(|set| set.iter().map(|&s| weight(s)).sum()).collect();
    let support: Vec<usize> = (0..ns).filter(|&s| ps[s] > 0.0).collect();
    let px = j.col_marginal();

    // balls that reach an output seen by every secret make the bound vanish
    let full =
        (0..nx).filter(|&x| px.mass()[x] > 0.0).all(|x| sj.balls[x].iter().any(|&y| secrets[y].len() == support.len()));

    let best: Vec<f64> = (0..nx).map(|x| sj.balls[x].iter().map(|&y| cover[y]).fold(0.0, f64::max)).collect();
    let pairs = || (0..ns).flat_map(move |s| (0..nx).map(move |x| (s, x))).filter(|&(s, x)| j.get(s, x) > 0.0);
    let bound = if full {
        0.0
    } else {
        let v = match order {
            AlphaOrder::One => pairs().map(|(s, x)| -j.get(s, x) * best[x].ln()).sum(),
            AlphaOrder::Infinity => {
                let top = ps.iter().cloned().fold(0.0, f64::max);
                pairs().map(|(s, x)| ps[s] * j.get(s, x) / best[x]).sum::<f64>().ln() - top.ln()
            }
            AlphaOrder::Finite(a) => {
                let norm = crate::prob::log_alpha_norm(ps, order)?.exp();
                let sum: f64 = pairs()
                    .map(|(s, x)| ps[s].powf(a) * j.get(s, x) / ps[s] / norm * best[x].powf((1.0 - a) / a))
                    .sum();
                a / (a - 1.0) * sum.ln()
            }
        };
        v.max(0.0)
    };

    let witness = tightness_witness(sj, &cover, &best, &secrets)?;
    Ok(SensitiveBound { bound, tight: witness.is_some(), witness })
}

/// Searches for `P(y|s,x)` supported on the outputs of `B(x)` maximizing the
/// cover weight, such that `Σ_x P(y|s,x) P(x|s)` is the same for every
/// `s ∈ S_D(y)`.
#[allow(clippy::needless_range_loop)]
fn tightness_witness(
    sj: &SensitiveJoint,
    cover: &[f64],
    best: &[f64],
    secrets: &[Vec<usize>],
) -> Result<Option<Channel>> {
    let j = &sj.joint;
    let (ns, nx, ny) = (j.n_rows(), j.n_cols(), sj.n_outputs());
    let ps = j.row_marginal();
    let mut vars: Vec<(usize, usize, usize)> = Vec::new();
    for s in 0..ns {
        for x in 0..nx {
            if j.get(s, x) > 0.0 {
                for &y in &sj.balls[x] {
                    if cover[y] >= best[x] * (1.0 - ARGMAX_REL_TOL) {
                        vars.push((s, x, y));
                    }
                }
            }
        }
    }
    let n = vars.len() + ny;
    let mut lp = LinearProgram::new(n);
    for s in 0..ns {
        for x in 0..nx {
            if j.get(s, x) > 0.0 {
                let mut row = vec![0.0; n];
                for (k, v) in vars.iter().enumerate() {
                    if v.0 == s && v.1 == x {
                        row[k] = 1.0;
                    }
                }
                lp.add_eq(row, 1.0);
            }
        }
    }
    for (y, set) in secrets.iter().enumerate() {
        for &s in set {
            let mut row = vec![0.0; n];
            for (k, v) in vars.iter().enumerate() {
                if v.0 == s && v.2 == y {
                    row[k] = j.get(s, v.1) / ps.mass()[s];
                }
            }
            row[vars.len() + y] = -1.0;
            lp.add_eq(row, 0.0);
        }
    }
    let sol = match lp.solve() {
        Ok(sol) => sol,
        Err(Error::Infeasible) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut rows = vec![vec![0.0; ny]; ns * nx];
    for (k, &(s, x, y)) in vars.iter().enumerate() {
        rows[s * nx + x][y] = sol.x[k];
    }
    for s in 0..ns {
        for x in 0..nx {
            let row = &mut rows[s * nx + x];
            let z: f64 = row.iter().sum();
            if z > 0.0 {
                row.iter_mut().for_each(|v| *v /= z);
            } else {
                // unreachable pair: any feasible output will do
                let ball = &sj.balls[x];
                let targets: Vec<usize> = if ball.is_empty() { (0..ny).collect() } else { ball.clone() };
                for &y in &targets {
                    row[y] = 1.0 / targets.len() as f64;
                }
            }
        }
    }
    let labels = Alphabet::product(&[j.row_alphabet(), j.col_alphabet()])?;
    Ok(Some(Channel::new(labels, sj.spec.output().clone(), rows)?))
}
