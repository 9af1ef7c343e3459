//! Rényi, Shannon, Sibson and Arimoto information measures, f-divergences and
//! the `k_α` divergence. All values are in nats; use [`LogBase`] to convert
//! at the boundary.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::prob::{log_alpha_norm_unchecked, log_sum_exp, make_joint, AlphaOrder, Channel, Dist, Joint};

/// Output unit for reported values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Nats,
    Bits,
}

impl LogBase {
    pub fn from_nats(self, v: f64) -> f64 {
        match self {
            LogBase::Nats => v,
            LogBase::Bits => v / std::f64::consts::LN_2,
        }
    }
}

impl std::str::FromStr for LogBase {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "nats" => Ok(LogBase::Nats),
            "bits" => Ok(LogBase::Bits),
            _ => Err(format!("unknown base {s:?}, expected nats or bits")),
        }
    }
}

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// User-supplied convex generator with `f(1) = 0`.
#[derive(Clone)]
pub struct CustomGenerator {
    name: String,
    f: ScalarFn,
    df: ScalarFn,
    f_zero: f64,
    slope_at_infinity: f64,
}

/// Generator `f` of an f-divergence `Σ Q f(P/Q)`.
#[derive(Clone)]
pub enum FGenerator {
    /// `f(t) = t log t`.
    Kl,
    /// `f_α(t) = (t^α − 1)/(α − 1)` for `α > 1`.
    Hellinger(f64),
    Custom(CustomGenerator),
}

impl fmt::Debug for FGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FGenerator::Kl => write!(f, "Kl"),
            FGenerator::Hellinger(a) => write!(f, "Hellinger({a})"),
            FGenerator::Custom(c) => write!(f, "Custom({})", c.name),
        }
    }
}

const CONVEXITY_PROBES: usize = 10_000;

impl FGenerator {
    pub fn hellinger(alpha: f64) -> Result<Self> {
        if !(alpha > 1.0 && alpha.is_finite()) {
            return Err(Error::OutOfRange { name: "alpha", value: alpha, expected: "1 < alpha < inf" });
        }
        Ok(FGenerator::Hellinger(alpha))
    }

    pub fn name(&self) -> String {
        match self {
            FGenerator::Kl => "kl".into(),
            FGenerator::Hellinger(a) => format!("hellinger:{a}"),
            FGenerator::Custom(c) => c.name.clone(),
        }
    }

    /// Builds a custom generator from `f`, its derivative `df` on `t > 0`,
    /// the value `f(0)` and `lim f(t)/t` as `t → ∞` (either may be `+inf`).
    ///
    /// The generator is probed for convexity at random midpoints and for
    /// `f(1) = 0`; failing either rejects it.
    pub fn custom(
        name: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f_zero: f64,
        slope_at_infinity: f64,
    ) -> Result<Self> {
        let name = name.into();
        let one = f(1.0);
        if !(one.abs() <= 1e-12) {
            return Err(Error::InvalidGenerator(format!("{name}: f(1) = {one}, expected 0")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
        for _ in 0..CONVEXITY_PROBES {
            let a = (rng.gen_range(-8.0..4.0f64)).exp();
            let b = (rng.gen_range(-8.0..4.0f64)).exp();
            let lam: f64 = rng.gen_range(0.0..1.0);
            let mid = lam * a + (1.0 - lam) * b;
            let (fa, fb, fm) = (f(a), f(b), f(mid));
            let chord = lam * fa + (1.0 - lam) * fb;
            let slack = 1e-9 * (1.0 + fa.abs() + fb.abs());
            if !fm.is_finite() || fm > chord + slack {
                return Err(Error::InvalidGenerator(format!("{name}: convexity violated between t = {a} and t = {b}")));
            }
        }
        if f_zero.is_nan() || slope_at_infinity.is_nan() {
            return Err(Error::InvalidGenerator(format!("{name}: limits must not be NaN")));
        }
        Ok(FGenerator::Custom(CustomGenerator { name, f: Arc::new(f), df: Arc::new(df), f_zero, slope_at_infinity }))
    }

    /// `f(t)` for `t > 0`; `f(0)` at `t = 0`.
    pub fn eval(&self, t: f64) -> f64 {
        if t == 0.0 {
            return self.at_zero();
        }
        match self {
            FGenerator::Kl => t * t.ln(),
            FGenerator::Hellinger(a) => (t.powf(*a) - 1.0) / (a - 1.0),
            FGenerator::Custom(c) => (c.f)(t),
        }
    }

    /// `f'(t)` for `t > 0`.
    pub fn derivative(&self, t: f64) -> f64 {
        match self {
            FGenerator::Kl => t.ln() + 1.0,
            FGenerator::Hellinger(a) => a / (a - 1.0) * t.powf(a - 1.0),
            FGenerator::Custom(c) => (c.df)(t),
        }
    }

    pub fn at_zero(&self) -> f64 {
        match self {
            FGenerator::Kl => 0.0,
            FGenerator::Hellinger(a) => -1.0 / (a - 1.0),
            FGenerator::Custom(c) => c.f_zero,
        }
    }

    pub fn slope_at_infinity(&self) -> f64 {
        match self {
            FGenerator::Kl | FGenerator::Hellinger(_) => f64::INFINITY,
            FGenerator::Custom(c) => c.slope_at_infinity,
        }
    }
}

/// Rényi entropy `H_α(P)`.
pub fn renyi_entropy(dist: &Dist, order: AlphaOrder) -> f64 {
    let p = dist.mass();
    match order {
        AlphaOrder::One => shannon_entropy(p),
        AlphaOrder::Infinity => -dist.max().ln(),
        AlphaOrder::Finite(a) => {
            let h = a / (1.0 - a) * log_alpha_norm_unchecked(p, order);
            h.max(0.0)
        }
    }
}

pub(crate) fn shannon_entropy(p: &[f64]) -> f64 {
    -p.iter().filter(|v| **v > 0.0).map(|v| v * v.ln()).sum::<f64>()
}

/// Rényi divergence `D_α(P‖Q)`; `+inf` when the support condition fails.
pub fn renyi_divergence(p: &Dist, q: &Dist, order: AlphaOrder) -> Result<f64> {
    p.same_alphabet(q, "divergence arguments")?;
    let pairs = p.mass().iter().zip(q.mass()).filter(|(a, _)| **a > 0.0);
    Ok(match order {
        AlphaOrder::One => {
            let mut s = 0.0;
            for (a, b) in pairs {
                if *b == 0.0 {
                    return Ok(f64::INFINITY);
                }
                s += a * (a / b).ln();
            }
            s.max(0.0)
        }
        AlphaOrder::Infinity => {
            let mut m: f64 = 0.0;
            for (a, b) in pairs {
                if *b == 0.0 {
                    return Ok(f64::INFINITY);
                }
                m = m.max(a / b);
            }
            m.ln().max(0.0)
        }
        AlphaOrder::Finite(alpha) => {
            let mut terms = Vec::new();
            for (a, b) in pairs {
                if *b == 0.0 {
                    if alpha > 1.0 {
                        return Ok(f64::INFINITY);
                    }
                    continue;
                }
                terms.push(alpha * a.ln() + (1.0 - alpha) * b.ln());
            }
            let l = log_sum_exp(terms);
            if l == f64::NEG_INFINITY {
                return Ok(f64::INFINITY);
            }
            (l / (alpha - 1.0)).max(0.0)
        }
    })
}

/// Shannon mutual information of a joint.
pub fn shannon_mi(joint: &Joint) -> f64 {
    let px = joint.row_marginal();
    let py = joint.col_marginal();
    let mut s = 0.0;
    for x in 0..joint.n_rows() {
        for y in 0..joint.n_cols() {
            let v = joint.get(x, y);
            if v > 0.0 {
                s += v * (v / (px.mass()[x] * py.mass()[y])).ln();
            }
        }
    }
    s.max(0.0)
}

fn check_prior(prior: &Dist, channel: &Channel) -> Result<()> {
    if prior.alphabet() != channel.input() {
        return Err(Error::AlphabetMismatch("prior alphabet differs from channel input alphabet".into()));
    }
    Ok(())
}

/// `log s_y = (1/α) log Σ_x P(x) W(y|x)^α` for each output.
pub(crate) fn log_sibson_center(prior: &[f64], channel: &Channel, alpha: f64) -> Vec<f64> {
    (0..channel.n_outputs())
        .map(|y| {
            log_sum_exp(prior.iter().enumerate().filter_map(|(x, &p)| {
                let w = channel.get(x, y);
                (p > 0.0 && w > 0.0).then(|| p.ln() + alpha * w.ln())
            })) / alpha
        })
        .collect()
}

/// Sibson mutual information `I_α^S(X;Y)` of a prior and channel.
pub fn sibson_mi(prior: &Dist, channel: &Channel, order: AlphaOrder) -> Result<f64> {
    check_prior(prior, channel)?;
    Ok(match order {
        AlphaOrder::One => shannon_mi(&make_joint(prior, channel)?),
        AlphaOrder::Infinity => {
            let s: f64 = (0..channel.n_outputs())
                .map(|y| {
                    (0..channel.n_inputs())
                        .filter(|&x| prior.mass()[x] > 0.0)
                        .map(|x| channel.get(x, y))
                        .fold(0.0, f64::max)
                })
                .sum();
            s.ln().max(0.0)
        }
        AlphaOrder::Finite(a) => {
            let l = log_sum_exp(log_sibson_center(prior.mass(), channel, a));
            (a / (a - 1.0) * l).max(0.0)
        }
    })
}

/// Arimoto conditional entropy `H_α^A(X|Y)` of a joint over `X × Y`.
///
/// At `α = ∞` this is `−log Σ_y max_x P(x,y)`, so that `exp(−H_∞^A)` is the
/// MAP success probability.
pub fn arimoto_cond_entropy(joint: &Joint, order: AlphaOrder) -> f64 {
    match order {
        AlphaOrder::One => {
            let mut s = 0.0;
            let py = joint.col_marginal();
            for y in 0..joint.n_cols() {
                for x in 0..joint.n_rows() {
                    let v = joint.get(x, y);
                    if v > 0.0 {
                        s -= v * (v / py.mass()[y]).ln();
                    }
                }
            }
            s.max(0.0)
        }
        AlphaOrder::Infinity => -map_success(joint).ln(),
        AlphaOrder::Finite(a) => {
            let l = log_sum_exp((0..joint.n_cols()).map(|y| log_alpha_norm_unchecked(&joint.column(y), order)));
            a / (1.0 - a) * l
        }
    }
}

/// `Σ_y max_x P(x, y)`.
pub fn map_success(joint: &Joint) -> f64 {
    (0..joint.n_cols()).map(|y| joint.column(y).into_iter().fold(0.0, f64::max)).sum()
}

/// Arimoto mutual information `I_α^A(X;Y) = H_α(X) − H_α^A(X|Y)`.
pub fn arimoto_mi(joint: &Joint, order: AlphaOrder) -> f64 {
    let px = joint.row_marginal();
    match order {
        AlphaOrder::One => shannon_mi(joint),
        AlphaOrder::Infinity => (map_success(joint) / px.max()).ln().max(0.0),
        AlphaOrder::Finite(a) => {
            let cols = log_sum_exp((0..joint.n_cols()).map(|y| log_alpha_norm_unchecked(&joint.column(y), order)));
            let marg = log_alpha_norm_unchecked(px.mass(), order);
            (a / (a - 1.0) * (cols - marg)).max(0.0)
        }
    }
}

/// f-divergence `D_f(P‖Q) = Σ Q f(P/Q)`, with mass of `P` on the zero set
/// of `Q` weighted by `lim f(t)/t`.
pub fn f_divergence(p: &Dist, q: &Dist, gen: &FGenerator) -> Result<f64> {
    p.same_alphabet(q, "divergence arguments")?;
    Ok(f_divergence_raw(p.mass(), q.mass(), gen))
}

pub(crate) fn f_divergence_raw(p: &[f64], q: &[f64], gen: &FGenerator) -> f64 {
    match gen {
        FGenerator::Kl => {
            let mut s = 0.0;
            for (a, b) in p.iter().zip(q) {
                if *a > 0.0 {
                    if *b == 0.0 {
                        return f64::INFINITY;
                    }
                    s += a * (a / b).ln();
                }
            }
            s
        }
        FGenerator::Hellinger(alpha) => {
            let k = k_alpha_raw(p, q, *alpha);
            (k - 1.0) / (alpha - 1.0)
        }
        FGenerator::Custom(_) => {
            let mut s = 0.0;
            let mut orphan = 0.0;
            for (a, b) in p.iter().zip(q) {
                if *b > 0.0 {
                    s += b * gen.eval(a / b);
                } else {
                    orphan += a;
                }
            }
            if orphan > 0.0 {
                s += orphan * gen.slope_at_infinity();
            }
            s
        }
    }
}

/// `k_α(P‖Q) = Σ Q (P/Q)^α` for `α > 1`; `+inf` if `P` charges a zero of `Q`.
pub fn k_alpha(p: &Dist, q: &Dist, alpha: f64) -> Result<f64> {
    p.same_alphabet(q, "k_alpha arguments")?;
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(Error::OutOfRange { name: "alpha", value: alpha, expected: "1 < alpha < inf" });
    }
    Ok(k_alpha_raw(p.mass(), q.mass(), alpha))
}

pub(crate) fn log_k_alpha_raw(p: &[f64], q: &[f64], alpha: f64) -> f64 {
    let mut terms = Vec::with_capacity(p.len());
    for (a, b) in p.iter().zip(q) {
        if *a > 0.0 {
            if *b == 0.0 {
                return f64::INFINITY;
            }
            terms.push(alpha * a.ln() + (1.0 - alpha) * b.ln());
        }
    }
    log_sum_exp(terms)
}

pub(crate) fn k_alpha_raw(p: &[f64], q: &[f64], alpha: f64) -> f64 {
    log_k_alpha_raw(p, q, alpha).exp()
}

/// Weighted center minimizing `Σ_k k_α(P_k‖P)` over `P`.
#[derive(Clone, Debug)]
pub struct AlphaCenter {
    pub center: Dist,
    /// Normalizer `Z = Σ_y (Σ_k P_k(y)^α)^{1/α}`.
    pub normalizer: f64,
}

/// `P_c(y) = (Σ_k P_k(y)^α)^{1/α} / Z`.
pub fn alpha_center(components: &[Dist], alpha: f64) -> Result<AlphaCenter> {
    let first = components.first().ok_or(Error::EmptyList("components"))?;
    for c in components {
        first.same_alphabet(c, "center components")?;
    }
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(Error::OutOfRange { name: "alpha", value: alpha, expected: "1 < alpha < inf" });
    }
    let order = AlphaOrder::Finite(alpha);
    let logs: Vec<f64> = (0..first.len())
        .map(|y| {
            let col: Vec<f64> = components.iter().map(|c| c.mass()[y]).collect();
            log_alpha_norm_unchecked(&col, order)
        })
        .collect();
    let log_z = log_sum_exp(logs.iter().cloned());
    let weights: Vec<f64> = logs.iter().map(|l| (l - log_z).exp()).collect();
    Ok(AlphaCenter { center: Dist::from_weights(first.alphabet().clone(), &weights)?, normalizer: log_z.exp() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::make_joint;

    fn a(v: f64) -> AlphaOrder {
        AlphaOrder::new(v).unwrap()
    }
    fn d(v: &[f64]) -> Dist {
        Dist::from_vec(v.to_vec()).unwrap()
    }
    fn close(x: f64, y: f64, tol: f64) {
        assert!((x - y).abs() <= tol, "{x} vs {y}");
    }

    const ORDERS: [f64; 6] = [0.5, 1.0, 1.5, 2.0, 7.0, f64::INFINITY];

    #[test]
    fn renyi_entropy_examples() {
        for o in ORDERS {
            close(renyi_entropy(&Dist::uniform(5).unwrap(), a(o)), 5f64.ln(), 1e-14);
            close(renyi_entropy(&d(&[0.0, 1.0, 0.0]), a(o)), 0.0, 1e-15);
        }
        close(renyi_entropy(&d(&[0.75, 0.25]), a(2.0)), -(0.625f64).ln(), 1e-15);
    }

    #[test]
    fn renyi_divergence_examples() {
        let p = d(&[0.7, 0.3]);
        for o in ORDERS {
            close(renyi_divergence(&p, &p, a(o)).unwrap(), 0.0, 1e-15);
        }
        close(renyi_divergence(&d(&[1.0, 0.0]), &d(&[0.5, 0.5]), AlphaOrder::Infinity).unwrap(), 2f64.ln(), 1e-15);
        close(renyi_divergence(&p, &d(&[0.5, 0.5]), a(2.0)).unwrap(), 1.16f64.ln(), 1e-14);
        assert_eq!(renyi_divergence(&p, &d(&[1.0, 0.0]), a(2.0)).unwrap(), f64::INFINITY);
        assert_eq!(renyi_divergence(&p, &d(&[1.0, 0.0]), a(1.0)).unwrap(), f64::INFINITY);
        assert!(renyi_divergence(&p, &d(&[1.0, 0.0]), a(0.5)).unwrap().is_finite());
        let other = Dist::new(crate::prob::Alphabet::new(["a", "b"]).unwrap(), vec![0.5, 0.5]).unwrap();
        assert!(renyi_divergence(&p, &other, a(2.0)).is_err());
    }

    #[test]
    fn sibson_examples() {
        let w = Channel::constant(3, &d(&[0.2, 0.8])).unwrap();
        for o in ORDERS {
            close(sibson_mi(&Dist::uniform(3).unwrap(), &w, a(o)).unwrap(), 0.0, 1e-14);
        }
        let u2 = Dist::uniform(2).unwrap();
        close(sibson_mi(&u2, &Channel::identity(2).unwrap(), AlphaOrder::Infinity).unwrap(), 2f64.ln(), 1e-15);
        close(sibson_mi(&u2, &Channel::bsc(0.1).unwrap(), a(2.0)).unwrap(), (2.0 * 0.82f64).ln(), 1e-14);
    }

    #[test]
    fn sibson_matches_infimum_over_output_grid() {
        // I_α^S = inf_Q D_α(P_XY ‖ P_X × Q) for |Y| = 2
        let prior = d(&[0.3, 0.7]);
        let w = Channel::binary(0.15, 0.35).unwrap();
        let joint = make_joint(&prior, &w).unwrap();
        let flat = |m: Vec<Vec<f64>>| Dist::from_vec(m.into_iter().flatten().collect()).unwrap();
        for alpha in [1.5, 2.0, 4.0] {
            let mut best = f64::INFINITY;
            for k in 1..20_000 {
                let q = k as f64 / 20_000.0;
                let prod = flat(vec![vec![0.3 * (1.0 - q), 0.3 * q], vec![0.7 * (1.0 - q), 0.7 * q]]);
                let dv = renyi_divergence(&flat(joint.to_matrix()), &prod, a(alpha)).unwrap();
                best = best.min(dv);
            }
            close(sibson_mi(&prior, &w, a(alpha)).unwrap(), best, 1e-8);
        }
    }

    #[test]
    fn arimoto_examples() {
        let det = Joint::from_matrix(vec![vec![0.2, 0.0, 0.3], vec![0.0, 0.5, 0.0]]).unwrap();
        for o in ORDERS {
            close(arimoto_cond_entropy(&det, a(o)), 0.0, 1e-15);
        }
        let px = d(&[0.2, 0.3, 0.5]);
        let ind = Joint::independent(&px, &d(&[0.6, 0.4])).unwrap();
        for o in ORDERS {
            close(arimoto_cond_entropy(&ind, a(o)), renyi_entropy(&px, a(o)), 1e-14);
            close(arimoto_mi(&ind, a(o)), 0.0, 1e-14);
        }
        let j = Joint::from_matrix(vec![vec![0.36, 0.04], vec![0.06, 0.54]]).unwrap();
        close(arimoto_cond_entropy(&j, AlphaOrder::Infinity), -(0.9f64).ln(), 1e-15);
        close(arimoto_mi(&j, AlphaOrder::Infinity), (0.9f64 / 0.6).ln(), 1e-15);
        let diag = Joint::from_matrix(vec![vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        close(arimoto_mi(&diag, a(2.0)), 2f64.ln(), 1e-15);
    }

    #[test]
    fn f_divergence_examples() {
        let p = d(&[0.7, 0.3]);
        let q = d(&[0.5, 0.5]);
        let tv = FGenerator::custom("tv", |t| 0.5 * (t - 1.0).abs(), |t| 0.5 * (t - 1.0).signum(), 0.5, 0.5).unwrap();
        for g in [FGenerator::Kl, FGenerator::Hellinger(3.0), tv.clone()] {
            close(f_divergence(&p, &p, &g).unwrap(), 0.0, 1e-15);
        }
        close(
            f_divergence(&p, &q, &FGenerator::Kl).unwrap(),
            renyi_divergence(&p, &q, AlphaOrder::One).unwrap(),
            1e-15,
        );
        close(f_divergence(&p, &q, &FGenerator::Hellinger(2.0)).unwrap(), 0.16, 1e-14);
        close(f_divergence(&p, &q, &tv).unwrap(), 0.2, 1e-15);
        // orphan mass uses the slope at infinity
        close(f_divergence(&d(&[0.6, 0.4]), &d(&[1.0, 0.0]), &tv).unwrap(), 0.4, 1e-15);
        assert_eq!(f_divergence(&d(&[0.6, 0.4]), &d(&[1.0, 0.0]), &FGenerator::Hellinger(2.0)).unwrap(), f64::INFINITY);
    }

    #[test]
    fn custom_generator_rejections() {
        assert!(matches!(
            FGenerator::custom("concave", |t: f64| -(t * t) + 1.0, |t| -2.0 * t, 1.0, f64::NEG_INFINITY),
            Err(Error::InvalidGenerator(_))
        ));
        assert!(matches!(
            FGenerator::custom("shifted", |t: f64| t * t, |t| 2.0 * t, 0.0, f64::INFINITY),
            Err(Error::InvalidGenerator(_))
        ));
        assert!(FGenerator::hellinger(1.0).is_err());
    }

    #[test]
    fn hellinger_relates_to_renyi() {
        let p = d(&[0.1, 0.6, 0.3]);
        let q = d(&[0.3, 0.3, 0.4]);
        for alpha in [1.2, 2.0, 3.5, 9.0] {
            let h = f_divergence(&p, &q, &FGenerator::Hellinger(alpha)).unwrap();
            let r = renyi_divergence(&p, &q, a(alpha)).unwrap();
            close(r, (1.0 + (alpha - 1.0) * h).ln() / (alpha - 1.0), 1e-12);
        }
    }

    #[test]
    fn k_alpha_examples() {
        let p = d(&[0.6, 0.4]);
        close(k_alpha(&p, &p, 2.5).unwrap(), 1.0, 1e-15);
        close(k_alpha(&d(&[1.0, 0.0]), &d(&[0.5, 0.5]), 2.0).unwrap(), 2.0, 1e-15);
        close(k_alpha(&p, &d(&[0.5, 0.5]), 2.0).unwrap(), 1.04, 1e-15);
        assert_eq!(k_alpha(&p, &d(&[1.0, 0.0]), 2.0).unwrap(), f64::INFINITY);
        assert!(k_alpha(&p, &p, 1.0).is_err());
    }

    #[test]
    fn alpha_center_examples() {
        let p = d(&[0.2, 0.5, 0.3]);
        let c = alpha_center(std::slice::from_ref(&p), 3.0).unwrap();
        close(c.normalizer, 1.0, 1e-15);
        for (u, v) in c.center.mass().iter().zip(p.mass()) {
            close(*u, *v, 1e-15);
        }
        let c = alpha_center(&[p.clone(), p.clone()], 3.0).unwrap();
        close(c.normalizer, 2f64.powf(1.0 / 3.0), 1e-14);
        for (u, v) in c.center.mass().iter().zip(p.mass()) {
            close(*u, *v, 1e-15);
        }
        let bsc = Channel::bsc(0.1).unwrap();
        let rows: Vec<Dist> = bsc.rows().map(d).collect();
        let c = alpha_center(&rows, 2.0).unwrap();
        close(c.center.mass()[0], 0.5, 1e-15);
        let sum: f64 = rows.iter().map(|r| k_alpha(r, &c.center, 2.0).unwrap()).sum();
        close(sum, c.normalizer.powf(2.0), 1e-12);
        assert!(matches!(alpha_center(&[], 2.0), Err(Error::EmptyList(_))));
    }

    #[test]
    fn log_base_conversion() {
        close(LogBase::Bits.from_nats(2f64.ln()), 1.0, 1e-15);
        close(LogBase::Nats.from_nats(0.3), 0.3, 0.0);
    }
}
