//! Finite-alphabet probability objects.
//!
//! [`Dist`], [`Channel`] and [`Joint`] validate their simplex constraints at
//! construction (tolerance [`MASS_TOL`]) and are immutable afterwards. Every
//! order-dependent primitive works in the log domain so that large orders do
//! not underflow.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Construction tolerance for normalization of masses and rows.
pub const MASS_TOL: f64 = 1e-12;

/// Orders within this distance of 1 are treated as exactly 1.
pub const ORDER_ONE_SNAP: f64 = 1e-9;

/// Ordered set of distinct symbol labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Alphabet {
    labels: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut sorted: Vec<&String> = labels.iter().collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0].clone()));
        }
        Ok(Alphabet { labels })
    }

    /// Labels `"0"`, `"1"`, ..., `"n-1"`.
    pub fn indexed(n: usize) -> Result<Self> {
        Alphabet::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Lexicographic product alphabet with labels joined by `,`.
    pub fn product(parts: &[&Alphabet]) -> Result<Self> {
        let mut labels = vec![String::new()];
        for (k, part) in parts.iter().enumerate() {
            let mut next = Vec::with_capacity(labels.len() * part.len());
            for prefix in &labels {
                for l in part.labels() {
                    if k == 0 {
                        next.push(l.clone());
                    } else {
                        next.push(format!("{prefix},{l}"));
                    }
                }
            }
            labels = next;
        }
        Alphabet::new(labels)
    }
}

impl<'de> Deserialize<'de> for Alphabet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<String>::deserialize(d)?;
        Alphabet::new(labels).map_err(serde::de::Error::custom)
    }
}

/// Order of a Rényi-type quantity, with the two continuous extensions kept
/// as separate variants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AlphaOrder {
    One,
    Finite(f64),
    Infinity,
}

impl AlphaOrder {
    /// Accepts any `alpha > 0`; values within [`ORDER_ONE_SNAP`] of 1 map to
    /// [`AlphaOrder::One`] and `+inf` to [`AlphaOrder::Infinity`].
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_nan() || alpha <= 0.0 {
            return Err(Error::InvalidOrder(alpha));
        }
        if alpha == f64::INFINITY {
            Ok(AlphaOrder::Infinity)
        } else if (alpha - 1.0).abs() < ORDER_ONE_SNAP {
            Ok(AlphaOrder::One)
        } else {
            Ok(AlphaOrder::Finite(alpha))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            AlphaOrder::One => 1.0,
            AlphaOrder::Finite(a) => a,
            AlphaOrder::Infinity => f64::INFINITY,
        }
    }

    /// Rejects orders below 1.
    pub fn require_at_least_one(self) -> Result<Self> {
        match self {
            AlphaOrder::Finite(a) if a < 1.0 => Err(Error::OrderBelowOne(a)),
            o => Ok(o),
        }
    }

    /// Rejects orders that are not strictly above 1.
    pub fn require_above_one(self) -> Result<Self> {
        match self {
            AlphaOrder::Finite(a) if a > 1.0 => Ok(self),
            AlphaOrder::Infinity => Ok(self),
            o => Err(Error::OutOfRange { name: "alpha", value: o.value(), expected: "alpha > 1" }),
        }
    }
}

impl fmt::Display for AlphaOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaOrder::One => write!(f, "1"),
            AlphaOrder::Finite(a) => write!(f, "{a}"),
            AlphaOrder::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for AlphaOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "inf" | "Inf" | "infinity" | "∞" => Ok(AlphaOrder::Infinity),
            _ => {
                let v: f64 = t.parse().map_err(|_| Error::InvalidOrder(f64::NAN))?;
                AlphaOrder::new(v)
            }
        }
    }
}

fn check_masses(values: &[f64]) -> Result<f64> {
    let mut sum = 0.0;
    for (index, &value) in values.iter().enumerate() {
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::InvalidMass { index, value });
        }
        sum += value;
    }
    Ok(sum)
}

/// Probability mass function over a labeled finite alphabet.
#[derive(Clone, Debug, PartialEq)]
pub struct Dist {
    alphabet: Alphabet,
    mass: Vec<f64>,
}

impl Dist {
    pub fn new(alphabet: Alphabet, mass: Vec<f64>) -> Result<Self> {
        if alphabet.len() != mass.len() {
            return Err(Error::Shape(format!(
                "alphabet has {} symbols but {} masses were given",
                alphabet.len(),
                mass.len()
            )));
        }
        let sum = check_masses(&mass)?;
        if (sum - 1.0).abs() > MASS_TOL {
            return Err(Error::NotNormalized { sum });
        }
        Ok(Dist { alphabet, mass })
    }

    /// Distribution over the indexed alphabet `0..mass.len()`.
    pub fn from_vec(mass: Vec<f64>) -> Result<Self> {
        Dist::new(Alphabet::indexed(mass.len())?, mass)
    }

    /// Normalizes nonnegative weights; fails on an all-zero vector.
    pub fn from_weights(alphabet: Alphabet, weights: &[f64]) -> Result<Self> {
        let sum = check_masses(weights)?;
        if sum <= 0.0 {
            return Err(Error::NotNormalized { sum });
        }
        Dist::new(alphabet, weights.iter().map(|w| w / sum).collect())
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Dist::from_vec(vec![1.0 / n as f64; n])
    }

    pub fn uniform_on(alphabet: Alphabet) -> Self {
        let n = alphabet.len();
        Dist { alphabet, mass: vec![1.0 / n as f64; n] }
    }

    /// `(1 - p, p)` on `{0, 1}`.
    pub fn bernoulli(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::OutOfRange { name: "p", value: p, expected: "0 <= p <= 1" });
        }
        Dist::from_vec(vec![1.0 - p, p])
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.mass.iter().cloned().fold(0.0, f64::max)
    }

    pub(crate) fn same_alphabet(&self, other: &Dist, what: &str) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(what.to_string()));
        }
        Ok(())
    }
}

/// Row-stochastic conditional distribution, one row per input symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct Channel {
    input: Alphabet,
    output: Alphabet,
    entries: Vec<f64>,
}

impl Channel {
    pub fn new(input: Alphabet, output: Alphabet, rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.len() != input.len() {
            return Err(Error::Shape(format!("{} rows for {} input symbols", rows.len(), input.len())));
        }
        let n_out = output.len();
        let mut entries = Vec::with_capacity(rows.len() * n_out);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n_out {
                return Err(Error::Shape(format!("row {row} has {} entries for {n_out} output symbols", r.len())));
            }
            let sum = check_masses(r)?;
            if (sum - 1.0).abs() > MASS_TOL {
                return Err(Error::RowNotNormalized { row, sum });
            }
            entries.extend_from_slice(r);
        }
        Ok(Channel { input, output, entries })
    }

    /// Channel over indexed alphabets.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_out = rows.first().map(Vec::len).unwrap_or(0);
        Channel::new(Alphabet::indexed(rows.len())?, Alphabet::indexed(n_out)?, rows)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Channel::from_rows((0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect())
    }

    /// Binary channel `[[1 - rho1, rho1], [rho2, 1 - rho2]]`.
    pub fn binary(rho1: f64, rho2: f64) -> Result<Self> {
        for (name, v) in [("rho1", rho1), ("rho2", rho2)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::OutOfRange { name, value: v, expected: "0 <= rho <= 1" });
            }
        }
        Channel::from_rows(vec![vec![1.0 - rho1, rho1], vec![rho2, 1.0 - rho2]])
    }

    pub fn bsc(rho: f64) -> Result<Self> {
        Channel::binary(rho, rho)
    }

    /// Every input mapped to the same output distribution.
    pub fn constant(n_inputs: usize, output: &Dist) -> Result<Self> {
        Channel::new(Alphabet::indexed(n_inputs)?, output.alphabet().clone(), vec![output.mass().to_vec(); n_inputs])
    }

    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn output(&self) -> &Alphabet {
        &self.output
    }

    pub fn n_inputs(&self) -> usize {
        self.input.len()
    }

    pub fn n_outputs(&self) -> usize {
        self.output.len()
    }

    pub fn row(&self, x: usize) -> &[f64] {
        let n = self.n_outputs();
        &self.entries[x * n..(x + 1) * n]
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.entries[x * self.n_outputs() + y]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks(self.n_outputs())
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    /// Entries of output `y` across all inputs.
    pub fn column(&self, y: usize) -> Vec<f64> {
        (0..self.n_inputs()).map(|x| self.get(x, y)).collect()
    }

    /// `lambda * self + (1 - lambda) * other`.
    pub fn mix(&self, other: &Channel, lambda: f64) -> Result<Channel> {
        if self.input != other.input || self.output != other.output {
            return Err(Error::AlphabetMismatch("mixed channels".into()));
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::OutOfRange { name: "lambda", value: lambda, expected: "0 <= lambda <= 1" });
        }
        let rows = self
            .rows()
            .zip(other.rows())
            .map(|(a, b)| a.iter().zip(b).map(|(u, v)| lambda * u + (1.0 - lambda) * v).collect())
            .collect();
        Channel::new(self.input.clone(), self.output.clone(), rows)
    }

    /// True when all rows agree within `tol` (output independent of input).
    pub fn is_rank_one(&self, tol: f64) -> bool {
        let first = self.row(0);
        self.rows().all(|r| r.iter().zip(first).all(|(a, b)| (a - b).abs() <= tol))
    }
}

/// Joint pmf over a product alphabet.
#[derive(Clone, Debug, PartialEq)]
pub struct Joint {
    row_alphabet: Alphabet,
    col_alphabet: Alphabet,
    entries: Vec<f64>,
}

impl Joint {
    pub fn new(row_alphabet: Alphabet, col_alphabet: Alphabet, mass: Vec<Vec<f64>>) -> Result<Self> {
        if mass.len() != row_alphabet.len() {
            return Err(Error::Shape(format!("{} rows for {} row symbols", mass.len(), row_alphabet.len())));
        }
        let n_cols = col_alphabet.len();
        let mut entries = Vec::with_capacity(mass.len() * n_cols);
        for (row, r) in mass.iter().enumerate() {
            if r.len() != n_cols {
                return Err(Error::Shape(format!("row {row} has {} entries for {n_cols} column symbols", r.len())));
            }
            entries.extend_from_slice(r);
        }
        let sum = check_masses(&entries)?;
        if (sum - 1.0).abs() > MASS_TOL {
            return Err(Error::NotNormalized { sum });
        }
        Ok(Joint { row_alphabet, col_alphabet, entries })
    }

    pub fn from_matrix(mass: Vec<Vec<f64>>) -> Result<Self> {
        let n_cols = mass.first().map(Vec::len).unwrap_or(0);
        Joint::new(Alphabet::indexed(mass.len())?, Alphabet::indexed(n_cols)?, mass)
    }

    /// Product joint `p × q`.
    pub fn independent(p: &Dist, q: &Dist) -> Result<Self> {
        Joint::new(
            p.alphabet().clone(),
            q.alphabet().clone(),
            p.mass().iter().map(|a| q.mass().iter().map(|b| a * b).collect()).collect(),
        )
    }

    pub fn row_alphabet(&self) -> &Alphabet {
        &self.row_alphabet
    }

    pub fn col_alphabet(&self) -> &Alphabet {
        &self.col_alphabet
    }

    pub fn n_rows(&self) -> usize {
        self.row_alphabet.len()
    }

    pub fn n_cols(&self) -> usize {
        self.col_alphabet.len()
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.entries[x * self.n_cols() + y]
    }

    pub fn row(&self, x: usize) -> &[f64] {
        let n = self.n_cols();
        &self.entries[x * n..(x + 1) * n]
    }

    pub fn column(&self, y: usize) -> Vec<f64> {
        (0..self.n_rows()).map(|x| self.get(x, y)).collect()
    }

    pub fn to_matrix(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.n_cols()).map(<[f64]>::to_vec).collect()
    }

    pub fn row_marginal(&self) -> Dist {
        let mass: Vec<f64> = (0..self.n_rows()).map(|x| self.row(x).iter().sum()).collect();
        Dist { alphabet: self.row_alphabet.clone(), mass }
    }

    pub fn col_marginal(&self) -> Dist {
        let mass: Vec<f64> = (0..self.n_cols()).map(|y| self.column(y).iter().sum()).collect();
        Dist { alphabet: self.col_alphabet.clone(), mass }
    }

    pub fn transpose(&self) -> Joint {
        Joint {
            row_alphabet: self.col_alphabet.clone(),
            col_alphabet: self.row_alphabet.clone(),
            entries: (0..self.n_cols())
                .flat_map(|y| (0..self.n_rows()).map(move |x| (x, y)))
                .map(|(x, y)| self.get(x, y))
                .collect(),
        }
    }
}

/// Row marginal and conditional recovered from a joint.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub prior: Dist,
    pub channel: Channel,
    /// Inputs with zero marginal; their conditional rows are uniform.
    pub degenerate_rows: Vec<usize>,
}

/// `P_{X,Y}(x, y) = P_X(x) P_{Y|X}(y|x)`.
pub fn make_joint(prior: &Dist, channel: &Channel) -> Result<Joint> {
    if prior.alphabet() != channel.input() {
        return Err(Error::AlphabetMismatch("prior alphabet differs from channel input alphabet".into()));
    }
    let mass = channel.rows().zip(prior.mass()).map(|(row, p)| row.iter().map(|w| p * w).collect()).collect();
    Joint::new(prior.alphabet().clone(), channel.output().clone(), mass)
}

/// Factors a joint into its row marginal and conditional.
pub fn conditional_of(joint: &Joint) -> Factorization {
    let prior = joint.row_marginal();
    let n_cols = joint.n_cols();
    let mut degenerate_rows = Vec::new();
    let mut entries = Vec::with_capacity(joint.n_rows() * n_cols);
    for (x, &p) in prior.mass().iter().enumerate() {
        if p > 0.0 {
            entries.extend(joint.row(x).iter().map(|v| v / p));
        } else {
            degenerate_rows.push(x);
            entries.extend(std::iter::repeat_n(1.0 / n_cols as f64, n_cols));
        }
    }
    Factorization {
        channel: Channel { input: joint.row_alphabet.clone(), output: joint.col_alphabet.clone(), entries },
        prior,
        degenerate_rows,
    }
}

/// Posterior channel `P_{X|Y}` (rows indexed by `y`) of a joint over `X × Y`.
pub fn posterior_of(joint: &Joint) -> Factorization {
    conditional_of(&joint.transpose())
}

/// Composition `X -> Y -> Z` of two channels.
pub fn cascade(first: &Channel, second: &Channel) -> Result<Channel> {
    if first.output() != second.input() {
        return Err(Error::AlphabetMismatch("first channel output differs from second channel input".into()));
    }
    let rows = first
        .rows()
        .map(|r| {
            (0..second.n_outputs()).map(|z| r.iter().enumerate().map(|(y, w)| w * second.get(y, z)).sum()).collect()
        })
        .collect();
    Channel::new(first.input().clone(), second.output().clone(), rows)
}

/// Memoryless product channel over lexicographically ordered product
/// alphabets.
pub fn product_channel(components: &[Channel]) -> Result<Channel> {
    let (first, rest) = components.split_first().ok_or(Error::EmptyList("channel components"))?;
    if rest.is_empty() {
        return Ok(first.clone());
    }
    let inputs: Vec<&Alphabet> = components.iter().map(Channel::input).collect();
    let outputs: Vec<&Alphabet> = components.iter().map(Channel::output).collect();
    let mut rows: Vec<Vec<f64>> = first.to_rows();
    for c in rest {
        let mut next = Vec::with_capacity(rows.len() * c.n_inputs());
        for r in &rows {
            for cr in c.rows() {
                next.push(r.iter().flat_map(|a| cr.iter().map(move |b| a * b)).collect());
            }
        }
        rows = next;
    }
    Channel::new(Alphabet::product(&inputs)?, Alphabet::product(&outputs)?, rows)
}

/// Product distribution over the lexicographic product alphabet.
pub fn product_dist(components: &[Dist]) -> Result<Dist> {
    if components.is_empty() {
        return Err(Error::EmptyList("distribution components"));
    }
    let alphabets: Vec<&Alphabet> = components.iter().map(Dist::alphabet).collect();
    let mut mass = vec![1.0];
    for d in components {
        mass = mass.iter().flat_map(|a| d.mass().iter().map(move |b| a * b)).collect();
    }
    Dist::new(Alphabet::product(&alphabets)?, mass)
}

/// `log Σ exp(v)`, returning `-inf` for an empty or all `-inf` input.
pub fn log_sum_exp(values: impl IntoIterator<Item = f64>) -> f64 {
    let values: Vec<f64> = values.into_iter().collect();
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if max == f64::INFINITY {
        return f64::INFINITY;
    }
    max + values.iter().map(|v| (v - max).exp()).sum::<f64>().ln()
}

/// `log ‖v‖_α` for a nonnegative vector; zero entries are skipped and the
/// all-zero vector yields `-inf`.
pub fn log_alpha_norm(values: &[f64], order: AlphaOrder) -> Result<f64> {
    if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v >= 0.0)) {
        return Err(Error::InvalidMass { index, value });
    }
    Ok(log_alpha_norm_unchecked(values, order))
}

pub(crate) fn log_alpha_norm_unchecked(values: &[f64], order: AlphaOrder) -> f64 {
    let positive = values.iter().filter(|v| **v > 0.0);
    match order {
        AlphaOrder::One => {
            let s: f64 = positive.sum();
            s.ln()
        }
        AlphaOrder::Infinity => positive.cloned().fold(0.0, f64::max).ln(),
        AlphaOrder::Finite(a) => log_sum_exp(positive.map(|v| a * v.ln())) / a,
    }
}

// JSON schemas.

#[derive(Serialize, Deserialize)]
struct DistJson {
    alphabet: Alphabet,
    mass: Vec<f64>,
}

impl Serialize for Dist {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DistJson { alphabet: self.alphabet.clone(), mass: self.mass.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Dist {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DistJson::deserialize(d)?;
        Dist::new(raw.alphabet, raw.mass).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct ChannelJson {
    input: Alphabet,
    output: Alphabet,
    rows: Vec<Vec<f64>>,
}

impl Serialize for Channel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ChannelJson { input: self.input.clone(), output: self.output.clone(), rows: self.to_rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Channel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ChannelJson::deserialize(d)?;
        Channel::new(raw.input, raw.output, raw.rows).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct JointJson {
    rows: Alphabet,
    cols: Alphabet,
    mass: Vec<Vec<f64>>,
}

impl Serialize for Joint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        JointJson { rows: self.row_alphabet.clone(), cols: self.col_alphabet.clone(), mass: self.to_matrix() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Joint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = JointJson::deserialize(d)?;
        Joint::new(raw.rows, raw.cols, raw.mass).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn alphabet_rejects_duplicates_and_empty() {
        assert!(matches!(Alphabet::new(["a", "b", "a"]), Err(Error::DuplicateLabel(_))));
        assert!(matches!(Alphabet::new(Vec::<String>::new()), Err(Error::EmptyAlphabet)));
        let a = Alphabet::new(["x", "y"]).unwrap();
        assert_eq!(a.index_of("y"), Some(1));
    }

    #[test]
    fn dist_validation() {
        assert!(Dist::from_vec(vec![0.5, 0.5]).is_ok());
        assert!(Dist::from_vec(vec![0.5, 0.5 + 1e-13]).is_ok());
        assert!(matches!(Dist::from_vec(vec![0.5, 0.5 + 1e-10]), Err(Error::NotNormalized { .. })));
        assert!(matches!(Dist::from_vec(vec![1.5, -0.5]), Err(Error::InvalidMass { index: 1, .. })));
        assert!(matches!(Dist::from_vec(vec![f64::NAN, 1.0]), Err(Error::InvalidMass { .. })));
    }

    #[test]
    fn channel_validation() {
        assert!(matches!(
            Channel::from_rows(vec![vec![0.5, 0.4], vec![0.5, 0.5]]),
            Err(Error::RowNotNormalized { row: 0, .. })
        ));
        assert!(matches!(Channel::from_rows(vec![vec![1.0], vec![0.5, 0.5]]), Err(Error::Shape(_))));
    }

    #[test]
    fn order_snapping() {
        assert_eq!(AlphaOrder::new(1.0 + 1e-10).unwrap(), AlphaOrder::One);
        assert_eq!(AlphaOrder::new(f64::INFINITY).unwrap(), AlphaOrder::Infinity);
        assert_eq!(AlphaOrder::new(2.0).unwrap(), AlphaOrder::Finite(2.0));
        assert!(AlphaOrder::new(0.0).is_err());
        assert!(AlphaOrder::new(-1.0).is_err());
        assert!(AlphaOrder::new(0.5).unwrap().require_at_least_one().is_err());
        assert_eq!("inf".parse::<AlphaOrder>().unwrap(), AlphaOrder::Infinity);
        assert_eq!("1".parse::<AlphaOrder>().unwrap(), AlphaOrder::One);
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn make_joint_examples() {
        let j = make_joint(&Dist::uniform(2).unwrap(), &Channel::identity(2).unwrap()).unwrap();
        assert_eq!(j.to_matrix(), vec![vec![0.5, 0.0], vec![0.0, 0.5]]);

        let bsc = Channel::bsc(0.3).unwrap();
        let j = make_joint(&Dist::from_vec(vec![1.0, 0.0]).unwrap(), &bsc).unwrap();
        assert_eq!(j.row(1), &[0.0, 0.0]);
        assert!(close(j.row(0).iter().sum::<f64>(), 1.0, 1e-15));

        let j = make_joint(&Dist::bernoulli(0.6).unwrap(), &Channel::bsc(0.1).unwrap()).unwrap();
        let expected = [[0.36, 0.04], [0.06, 0.54]];
        for x in 0..2 {
            for y in 0..2 {
                assert!(close(j.get(x, y), expected[x][y], 1e-15));
            }
        }
    }

    #[test]
    fn make_joint_alphabet_mismatch() {
        let prior = Dist::new(Alphabet::new(["a", "b"]).unwrap(), vec![0.5, 0.5]).unwrap();
        assert!(matches!(make_joint(&prior, &Channel::bsc(0.1).unwrap()), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn conditional_examples() {
        let f = conditional_of(&Joint::from_matrix(vec![vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap());
        assert_eq!(f.prior.mass(), &[0.5, 0.5]);
        assert_eq!(f.channel, Channel::identity(2).unwrap());
        assert!(f.degenerate_rows.is_empty());

        let f = conditional_of(&Joint::from_matrix(vec![vec![0.36, 0.04], vec![0.06, 0.54]]).unwrap());
        assert!(close(f.prior.mass()[0], 0.4, 1e-15));
        assert!(close(f.channel.get(0, 1), 0.1, 1e-15));
        assert!(close(f.channel.get(1, 0), 0.1, 1e-15));

        let f = conditional_of(&Joint::from_matrix(vec![vec![0.3, 0.7], vec![0.0, 0.0]]).unwrap());
        assert_eq!(f.prior.mass(), &[1.0, 0.0]);
        assert_eq!(f.channel.row(1), &[0.5, 0.5]);
        assert_eq!(f.degenerate_rows, vec![1]);
    }

    #[test]
    fn cascade_examples() {
        let w = Channel::from_rows(vec![vec![0.2, 0.5, 0.3], vec![0.6, 0.1, 0.3]]).unwrap();
        assert_eq!(cascade(&w, &Channel::identity(3).unwrap()).unwrap(), w);

        let (a, b) = (0.1, 0.25);
        let c = cascade(&Channel::bsc(a).unwrap(), &Channel::bsc(b).unwrap()).unwrap();
        let e = a + b - 2.0 * a * b;
        assert!(close(c.get(0, 1), e, 1e-15) && close(c.get(1, 0), e, 1e-15));

        let r1 = Channel::constant(3, &Dist::from_vec(vec![0.3, 0.7]).unwrap()).unwrap();
        assert!(cascade(&w, &r1).unwrap().is_rank_one(1e-15));

        assert!(cascade(&Channel::bsc(0.1).unwrap(), &w).is_ok());
        assert!(matches!(cascade(&w, &w), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn product_channel_examples() {
        let b = Channel::bsc(0.1).unwrap();
        assert_eq!(product_channel(std::slice::from_ref(&b)).unwrap(), b);
        let id = Channel::identity(2).unwrap();
        let p = product_channel(&[id.clone(), id]).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(p.get(x, y), if x == y { 1.0 } else { 0.0 });
            }
        }
        let p = product_channel(&[Channel::bsc(0.1).unwrap(), Channel::bsc(0.2).unwrap()]).unwrap();
        let x = p.input().index_of("0,0").unwrap();
        let y = p.output().index_of("1,1").unwrap();
        assert!(close(p.get(x, y), 0.1 * 0.2, 1e-16));
        assert!(matches!(product_channel(&[]), Err(Error::EmptyList(_))));
    }

    #[test]
    fn log_alpha_norm_examples() {
        let a2 = AlphaOrder::new(2.0).unwrap();
        assert!(close(log_alpha_norm(&[1.0, 1.0], a2).unwrap(), 2f64.sqrt().ln(), 1e-15));
        assert!(close(log_alpha_norm(&[0.5, 0.5], AlphaOrder::Infinity).unwrap(), 0.5f64.ln(), 1e-15));
        let a3 = AlphaOrder::new(3.0).unwrap();
        assert!(close(log_alpha_norm(&[0.9, 0.1], a3).unwrap(), 0.730f64.ln() / 3.0, 1e-15));
        assert_eq!(log_alpha_norm(&[0.0, 0.0], a3).unwrap(), f64::NEG_INFINITY);
        assert!(matches!(log_alpha_norm(&[0.5, -0.1], a3), Err(Error::InvalidMass { .. })));
        // survives orders where the linear-domain sum underflows
        let big = AlphaOrder::new(1000.0).unwrap();
        assert!(close(log_alpha_norm(&[0.5, 0.5], big).unwrap(), 0.5f64.ln() + 2f64.ln() / 1000.0, 1e-14));
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let d: Dist = serde_json::from_str(r#"{"alphabet": ["a", "b"], "mass": [0.25, 0.75]}"#).unwrap();
        assert_eq!(d.mass(), &[0.25, 0.75]);
        let back: Dist = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(back, d);

        let c: Channel =
            serde_json::from_str(r#"{"input": ["0","1"], "output": ["a","b"], "rows": [[1,0],[0.5,0.5]]}"#).unwrap();
        assert_eq!(c.get(1, 1), 0.5);
        let j: Joint = serde_json::from_str(r#"{"rows": ["0","1"], "cols": ["a"], "mass": [[0.5],[0.5]]}"#).unwrap();
        assert_eq!(j.col_marginal().mass(), &[1.0]);

        let bad = serde_json::from_str::<Dist>(r#"{"alphabet": ["a", "b"], "mass": [0.2, 0.2]}"#);
        assert!(bad.is_err());
        let dup = serde_json::from_str::<Dist>(r#"{"alphabet": ["a", "a"], "mass": [0.5, 0.5]}"#);
        assert!(dup.is_err());
    }
}
