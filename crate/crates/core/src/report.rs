//! Tabular and JSON reports behind the `alphaleak` command-line tool.
//!
//! Every CSV has a header row; numbers are printed with 12 significant digits.

use std::fmt::Write as _;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::avg_hamming::avg_hamming_binary_put;
use crate::datasets::{hamming_put, type_distance_put};
use crate::error::{Error, Result};
use crate::leakage::{
    alpha_leakage, binary_maximal_alpha_leakage, maximal_alpha_leakage, min_expected_alpha_loss, optimal_strategy,
    SolverOptions,
};
use crate::measures::{arimoto_cond_entropy, renyi_entropy, FGenerator, LogBase};
use crate::prob::{AlphaOrder, Channel, Dist, Joint};
use crate::put::{distortion_balls, put_max_alpha_leakage, put_max_f_leakage, DistortionSpec, PutSolution};

/// Settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub alphas: Vec<AlphaOrder>,
    pub base: LogBase,
    pub opts: SolverOptions,
}

impl RunConfig {
    pub fn new(alphas: Vec<AlphaOrder>) -> Self {
        RunConfig { alphas, base: LogBase::Nats, opts: SolverOptions::default() }
    }
}

/// Parses a comma-separated list of orders: numbers, `inf`, or ranges
/// `start:stop:step` (inclusive of `stop` up to rounding). The result must be
/// strictly increasing.
pub fn parse_sweep(text: &str) -> Result<Vec<AlphaOrder>> {
    let mut out: Vec<AlphaOrder> = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [single] => out.push(single.parse()?),
            [start, stop, step] => {
                let num = |s: &str| -> Result<f64> {
                    s.trim().parse().map_err(|_| Error::Syntax(format!("{s:?} in range {item:?} is not a number")))
                };
                let (a, b, h) = (num(start)?, num(stop)?, num(step)?);
                if !(h > 0.0 && a.is_finite() && b.is_finite()) {
                    return Err(Error::Syntax(format!("range {item:?} needs finite bounds and a positive step")));
                }
                let count = ((b - a) / h + 1e-9).floor();
                if count < 0.0 {
                    return Err(Error::Syntax(format!("range {item:?} is empty")));
                }
                for k in 0..=(count as usize) {
                    out.push(AlphaOrder::new(a + k as f64 * h)?);
                }
            }
            _ => return Err(Error::Syntax(format!("{item:?} is neither an order nor start:stop:step"))),
        }
    }
    if out.is_empty() {
        return Err(Error::Syntax("empty order list".into()));
    }
    for w in out.windows(2) {
        if !(w[0].value() < w[1].value()) {
            return Err(Error::Syntax(format!("orders must be strictly increasing ({} then {})", w[0], w[1])));
        }
    }
    Ok(out)
}

/// `%.12g`-style formatting.
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.11e}", v);
    let (mant, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let trim = |s: &str| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim(&format!("{:.*}", decimals, v))
    } else {
        format!("{}e{}{:02}", trim(mant), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

/// A CSV table.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }

    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let k = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k].as_str()).collect())
    }
}

/// Reads and validates a JSON input file.
pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let wrap = |e: Error| Error::Input { path: path.display().to_string(), source: Box::new(e) };
    let text = std::fs::read_to_string(path).map_err(|e| wrap(e.into()))?;
    serde_json::from_str(&text).map_err(|e| wrap(e.into()))
}

fn order_cell(a: AlphaOrder) -> String {
    match a {
        AlphaOrder::Infinity => "inf".into(),
        _ => fmt_num(a.value()),
    }
}

/// One row per order: Rényi entropy of `X`, Arimoto conditional entropy,
/// α-leakage and the minimal expected α-loss. The first three follow the
/// configured base; the loss is reported as is.
pub fn measures_table(joint: &Joint, cfg: &RunConfig) -> Result<Table> {
    let mut t =
        Table::new(["alpha", "renyi_entropy_X", "arimoto_cond_entropy", "alpha_leakage", "min_expected_alpha_loss"]);
    let px = joint.row_marginal();
    for &a in &cfg.alphas {
        let a = a.require_at_least_one()?;
        let b = cfg.base;
        t.rows.push(vec![
            order_cell(a),
            fmt_num(b.from_nats(renyi_entropy(&px, a))),
            fmt_num(b.from_nats(arimoto_cond_entropy(joint, a))),
            fmt_num(b.from_nats(alpha_leakage(joint, a)?)),
            fmt_num(min_expected_alpha_loss(joint, a)?),
        ]);
    }
    Ok(t)
}

/// Rows `(alpha, y, x, probability)` of the optimal guessing strategy for a
/// posterior channel with rows `P(·|y)`.
pub fn strategy_table(posterior: &Channel, cfg: &RunConfig) -> Result<Table> {
    let mut t = Table::new(["alpha", "y", "x", "probability"]);
    for &a in &cfg.alphas {
        let s = optimal_strategy(posterior, a)?;
        for y in 0..s.n_inputs() {
            for x in 0..s.n_outputs() {
                t.rows.push(vec![
                    order_cell(a),
                    s.input().label(y).to_string(),
                    s.output().label(x).to_string(),
                    fmt_num(s.get(y, x)),
                ]);
            }
        }
    }
    Ok(t)
}

/// Maximal α-leakage sweep.
#[derive(Debug)]
pub struct CapacityReport {
    pub table: Table,
    pub warnings: Vec<String>,
    /// `Some` when at least one order failed to reach the tolerance.
    pub unconverged: Option<Error>,
}

fn binary_rhos(channel: &Channel) -> Option<(f64, f64)> {
    (channel.n_inputs() == 2 && channel.n_outputs() == 2).then(|| (channel.get(0, 1), channel.get(1, 0)))
}

/// Rows `(alpha, value, kkt_residual, iterations, converged, input_*)`, plus
/// `closed_form, closed_form_gap` for binary channels (blank outside
/// `1 < α < ∞`). At `α = 1`, `prior` defaults to uniform with a warning.
pub fn capacity_table(channel: &Channel, prior: Option<&Dist>, cfg: &RunConfig) -> Result<CapacityReport> {
    let binary = binary_rhos(channel);
    let mut header =
        vec!["alpha".to_string(), "value".into(), "kkt_residual".into(), "iterations".into(), "converged".into()];
    header.extend(channel.input().labels().iter().map(|l| format!("input_{l}")));
    if binary.is_some() {
        header.push("closed_form".into());
        header.push("closed_form_gap".into());
    }
    let mut table = Table { header, rows: Vec::new() };
    let mut warnings = Vec::new();
    let mut unconverged = None;
    let uniform = Dist::uniform_on(channel.input().clone());
    for &a in &cfg.alphas {
        let p = if a == AlphaOrder::One && prior.is_none() {
            warnings.push("alpha = 1 gives I(X;Y) at a prior; none supplied, using uniform".to_string());
            Some(&uniform)
        } else {
            prior
        };
        let r = maximal_alpha_leakage(channel, a, p, cfg.opts)?;
        if !r.converged && unconverged.is_none() {
            unconverged = Some(Error::NotConverged { iterations: r.iterations, residual: r.kkt_residual });
        }
        let mut row = vec![
            order_cell(a),
            fmt_num(cfg.base.from_nats(r.value)),
            fmt_num(r.kkt_residual),
            r.iterations.to_string(),
            r.converged.to_string(),
        ];
        row.extend(r.optimal_input.mass().iter().map(|v| fmt_num(*v)));
        if let Some((r1, r2)) = binary {
            match a {
                AlphaOrder::Finite(al) => {
                    let cf = binary_maximal_alpha_leakage(r1, r2, al)?;
                    row.push(fmt_num(cfg.base.from_nats(cf)));
                    row.push(fmt_num(cfg.base.from_nats((cf - r.value).abs())));
                }
                _ => {
                    row.push(String::new());
                    row.push(String::new());
                }
            }
        }
        table.rows.push(row);
    }
    Ok(CapacityReport { table, warnings, unconverged })
}

/// An order interval where the sign of `value_a − value_b` flips.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Crossing {
    pub from: AlphaOrder,
    pub to: AlphaOrder,
}

/// Sweeps two channels side by side and locates changes in their ordering.
pub fn compare_table(a: &Channel, b: &Channel, cfg: &RunConfig) -> Result<(Table, Vec<Crossing>)> {
    let mut t = Table::new(["alpha", "value_a", "value_b", "difference"]);
    let mut crossings = Vec::new();
    let mut prev: Option<(AlphaOrder, f64)> = None;
    let (ua, ub) = (Dist::uniform_on(a.input().clone()), Dist::uniform_on(b.input().clone()));
    for &al in &cfg.alphas {
        let va = maximal_alpha_leakage(a, al, Some(&ua), cfg.opts)?.require_converged()?.value;
        let vb = maximal_alpha_leakage(b, al, Some(&ub), cfg.opts)?.require_converged()?.value;
        let diff = va - vb;
        if let Some((pa, pd)) = prev {
            if pd != 0.0 && diff != 0.0 && pd.signum() != diff.signum() {
                crossings.push(Crossing { from: pa, to: al });
            }
        }
        if diff != 0.0 {
            prev = Some((al, diff));
        }
        let b_ = cfg.base;
        t.rows.push(vec![
            order_cell(al),
            fmt_num(b_.from_nats(va)),
            fmt_num(b_.from_nats(vb)),
            fmt_num(b_.from_nats(diff)),
        ]);
    }
    Ok((t, crossings))
}

pub fn crossing_report(crossings: &[Crossing]) -> String {
    if crossings.is_empty() {
        return "no change in the ordering of the two channels over the sweep\n".into();
    }
    let mut s = String::new();
    for c in crossings {
        let _ = writeln!(s, "ordering of the two channels changes between alpha = {} and alpha = {}", c.from, c.to);
    }
    s
}

fn matrix_json(ch: &Channel) -> Value {
    Value::from(ch.to_rows())
}

/// JSON for a hard-distortion solution, together with a one-line summary.
pub fn put_hard_report(
    spec: &DistortionSpec,
    prior: Option<&Dist>,
    order: AlphaOrder,
    cfg: &RunConfig,
) -> Result<(Value, String)> {
    let balls = distortion_balls(spec)?;
    let sol: PutSolution = put_max_alpha_leakage(&balls, order, prior, cfg.opts)?;
    let v = json!({
        "alpha": order_cell(order),
        "q_star": sol.q_star,
        "value_nats": sol.value,
        "value_bits": LogBase::Bits.from_nats(sol.value),
        "Q_star": sol.target_output.mass(),
        "mechanism": matrix_json(&sol.mechanism),
        "dual_certificate": sol.dual_certificate.mass(),
        "duality_gap": sol.duality_gap,
    });
    let summary = format!(
        "alpha = {order}: leakage {} {}, q* = {}, duality gap {}",
        fmt_num(cfg.base.from_nats(sol.value)),
        unit(cfg.base),
        fmt_num(sol.q_star),
        fmt_num(sol.duality_gap)
    );
    Ok((v, summary))
}

/// Parses a generator name: `kl`, `hellinger:<order>`, `chi2` or
/// `reverse-kl`.
pub fn parse_generator(text: &str) -> Result<FGenerator> {
    let t = text.trim().to_ascii_lowercase();
    match t.as_str() {
        "kl" => Ok(FGenerator::Kl),
        "chi2" => FGenerator::custom("chi2", |t| (t - 1.0) * (t - 1.0), |t| 2.0 * (t - 1.0), 1.0, f64::INFINITY),
        "reverse-kl" => FGenerator::custom("reverse-kl", |t| -t.ln(), |t| -1.0 / t, f64::INFINITY, 0.0),
        _ => match t.strip_prefix("hellinger:") {
            Some(a) => {
                FGenerator::hellinger(a.parse().map_err(|_| Error::Syntax(format!("{a:?} is not a Hellinger order")))?)
            }
            None => Err(Error::Syntax(format!(
                "unknown generator {text:?}; expected kl, hellinger:<order>, chi2 or reverse-kl"
            ))),
        },
    }
}

/// JSON for the distribution-free maximal f-leakage tradeoff.
pub fn put_hard_f_report(spec: &DistortionSpec, gen: &FGenerator, cfg: &RunConfig) -> Result<(Value, String)> {
    let balls = distortion_balls(spec)?;
    let sol = put_max_f_leakage(&balls, gen, cfg.opts.tol)?;
    let v = json!({
        "generator": gen.name(),
        "q_star": sol.q_star,
        "value": sol.value,
        "Q_star": sol.target_output.mass(),
        "mechanism": matrix_json(&sol.mechanism),
        "dual_certificate": sol.dual_certificate.mass(),
        "duality_gap": sol.duality_gap,
    });
    let summary = format!(
        "{}: maximal f-leakage {}, q* = {}, duality gap {}",
        gen.name(),
        fmt_num(sol.value),
        fmt_num(sol.q_star),
        fmt_num(sol.duality_gap)
    );
    Ok((v, summary))
}

fn unit(base: LogBase) -> &'static str {
    match base {
        LogBase::Nats => "nats",
        LogBase::Bits => "bits",
    }
}

/// JSON for the binary type-distance tradeoff.
pub fn put_types_report(n: usize, m: usize, cfg: &RunConfig) -> Result<(Value, String)> {
    let r = type_distance_put(n, m)?;
    let v = json!({
        "n": n,
        "m": m,
        "value": cfg.base.from_nats(r.value),
        "value_nats": r.value,
        "value_bits": LogBase::Bits.from_nats(r.value),
        "index_set": r.index_set.members,
        "offset": r.index_set.offset,
        "descriptor": r.descriptor,
    });
    let summary = format!(
        "n = {n}, m = {m}: leakage {} {}, output types {:?}",
        fmt_num(cfg.base.from_nats(r.value)),
        unit(cfg.base),
        r.index_set.members
    );
    Ok((v, summary))
}

/// JSON for the Hamming tradeoff on `q`-ary datasets.
pub fn put_hamming_report(n: usize, m: usize, q: usize, cfg: &RunConfig) -> Result<(Value, String)> {
    let r = hamming_put(n, m, q)?;
    let v = json!({
        "n": n,
        "m": m,
        "q": q,
        "value": cfg.base.from_nats(r.value),
        "value_nats": r.value,
        "value_bits": LogBase::Bits.from_nats(r.value),
        "ball_size": r.ball_size.to_string(),
        "mechanism_entry": r.mechanism_entry.to_string(),
    });
    let summary = format!(
        "n = {n}, m = {m}, q = {q}: leakage {} {}, ball size {}, every feasible output has probability {}",
        fmt_num(cfg.base.from_nats(r.value)),
        unit(cfg.base),
        r.ball_size,
        r.mechanism_entry
    );
    Ok((v, summary))
}

/// Rows `(alpha, value, rho1, rho2, guess_prob)` of the average-Hamming
/// binary tradeoff.
pub fn avg_binary_table(p: f64, d: f64, grid: usize, refine_iters: usize, cfg: &RunConfig) -> Result<Table> {
    let mut t = Table::new(["alpha", "value", "rho1", "rho2", "guess_prob"]);
    for &a in &cfg.alphas {
        let AlphaOrder::Finite(al) = a else {
            return Err(Error::OutOfRange { name: "alpha", value: a.value(), expected: "1 < alpha < inf" });
        };
        let r = avg_hamming_binary_put(p, d, al, grid, refine_iters)?;
        t.rows.push(vec![
            order_cell(a),
            fmt_num(cfg.base.from_nats(r.value)),
            fmt_num(r.rho1),
            fmt_num(r.rho2),
            fmt_num(r.guess_prob),
        ]);
    }
    Ok(t)
}
