//! Closed-form tradeoffs for releasing whole datasets: binary datasets under
//! a hard bound on the type distance, and datasets over any finite alphabet
//! under a hard Hamming bound.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::put::{q_star, Balls};

fn check_nm(n: usize, m: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange { name: "n", value: 0.0, expected: "n >= 1" });
    }
    if m > n {
        return Err(Error::OutOfRange { name: "m", value: m as f64, expected: "0 <= m <= n" });
    }
    Ok(())
}

/// Output type indices `l + (2m+1)k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeIndexSet {
    pub offset: usize,
    pub members: Vec<usize>,
}

/// Optimal type-distance tradeoff for binary datasets of length `n` with
/// distortion at most `m/n`.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeDistancePut {
    pub n: usize,
    pub m: usize,
    /// `log ⌈(n+1)/(2m+1)⌉` in nats.
    pub value: f64,
    pub index_set: TypeIndexSet,
    /// Output type for every input type `0..=n`.
    pub descriptor: Vec<usize>,
}

impl TypeDistancePut {
    /// Dataset released for every input of type `i`: the lexicographically
    /// smallest member `0^{n−j} 1^j` of the assigned output type `j`. Any
    /// member of that type is equally optimal.
    pub fn representative(&self, i: usize) -> Vec<u8> {
        let j = self.descriptor[i];
        let mut out = vec![0u8; self.n - j];
        out.extend(std::iter::repeat_n(1u8, j));
        out
    }
}

/// Number of output types `⌈(n+1)/(2m+1)⌉`.
pub fn type_cover_size(n: usize, m: usize) -> usize {
    (n + 1).div_ceil(2 * m + 1)
}

/// Offset `l` of the optimal output types: `m` when the last member still lands
/// in `[0, n]`, otherwise the set is anchored so that its last member is `n`.
pub fn type_offset(n: usize, m: usize) -> usize {
    let k = type_cover_size(n, m);
    let w = 2 * m + 1;
    if k * w - (n + 1) <= m {
        m
    } else {
        n - (k - 1) * w
    }
}

/// The tradeoff for type distance, with the type-class mechanism.
pub fn type_distance_put(n: usize, m: usize) -> Result<TypeDistancePut> {
    check_nm(n, m)?;
    let k = type_cover_size(n, m);
    let offset = type_offset(n, m);
    let members: Vec<usize> = (0..k).map(|i| offset + (2 * m + 1) * i).collect();
    let descriptor =
        (0..=n).map(|i| *members.iter().find(|&&j| i.abs_diff(j) <= m).expect("members cover every type")).collect();
    Ok(TypeDistancePut { n, m, value: (k as f64).ln(), index_set: TypeIndexSet { offset, members }, descriptor })
}

/// Balls `{j : |i − j| ≤ m}` on the `n + 1` types.
pub fn type_balls(n: usize, m: usize) -> Result<Balls> {
    check_nm(n, m)?;
    let sets = (0..=n).map(|i| (0..=n).filter(|&j| i.abs_diff(j) <= m).collect()).collect();
    Balls::new(sets, n + 1)
}

/// Compares the closed form to `−log q*` of the type-level program.
pub fn type_distance_crosscheck(n: usize, m: usize) -> Result<bool> {
    if n > 12 {
        return Err(Error::OutOfRange { name: "n", value: n as f64, expected: "n <= 12 for the enumeration check" });
    }
    let closed = type_distance_put(n, m)?.value;
    let qs = q_star(&type_balls(n, m)?, 1e-10)?;
    Ok((-qs.q.ln() - closed).abs() < 1e-9)
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `|B_m(xⁿ)| = Σ_{i≤m} C(n,i)(q−1)^i`, computed exactly.
pub fn hamming_ball_size(n: usize, m: usize, q: usize) -> Result<BigUint> {
    check_nm(n, m)?;
    if q < 2 {
        return Err(Error::OutOfRange { name: "q", value: q as f64, expected: "alphabet size >= 2" });
    }
    let base = BigUint::from(q - 1);
    Ok((0..=m).fold(BigUint::zero(), |acc, i| acc + binomial(n, i) * base.pow(i as u32)))
}

/// Natural log of an arbitrarily large integer.
fn ln_big(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 900;
    (v >> shift).to_f64().expect("fits in f64").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Optimal Hamming tradeoff; the mechanism releases a uniformly random
/// dataset from the ball around the input.
#[derive(Clone, Debug, PartialEq)]
pub struct HammingPut {
    pub n: usize,
    pub m: usize,
    pub q: usize,
    /// `log(qⁿ / |B|)` in nats.
    pub value: f64,
    pub ball_size: BigUint,
    /// Probability of every output inside the ball, exactly `1/|B|`.
    pub mechanism_entry: Ratio<BigUint>,
}

pub fn hamming_put(n: usize, m: usize, q: usize) -> Result<HammingPut> {
    let ball_size = hamming_ball_size(n, m, q)?;
    let space = BigUint::from(q).pow(n as u32);
    let value = if ball_size == space { 0.0 } else { n as f64 * (q as f64).ln() - ln_big(&ball_size) };
    Ok(HammingPut { n, m, q, value, mechanism_entry: Ratio::new(BigUint::one(), ball_size.clone()), ball_size })
}

/// All datasets in `[q]ⁿ`, lexicographic.
pub fn enumerate_datasets(n: usize, q: usize) -> Vec<Vec<usize>> {
    let total = q.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut word = vec![0; n];
            for slot in word.iter_mut().rev() {
                *slot = idx % q;
                idx /= q;
            }
            word
        })
        .collect()
}

/// Balls `{yⁿ : d_H(xⁿ, yⁿ) ≤ m/n}` on the enumerated datasets.
pub fn hamming_balls(n: usize, m: usize, q: usize) -> Result<Balls> {
    check_nm(n, m)?;
    let words = enumerate_datasets(n, q);
    let sets = words
        .iter()
        .map(|a| (0..words.len()).filter(|&j| a.iter().zip(&words[j]).filter(|(u, v)| u != v).count() <= m).collect())
        .collect();
    Balls::new(sets, words.len())
}

/// Compares the closed form to `−log q*` on the explicit `qⁿ × qⁿ` program.
/// For binary alphabets it also checks that the Hamming value is at least the
/// type-distance value, since a Hamming ball lies inside the type ball.
pub fn hamming_crosscheck(n: usize, m: usize, q: usize) -> Result<bool> {
    let size = (q as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if size > 81 {
        return Err(Error::OutOfRange {
            name: "q^n",
            value: size as f64,
            expected: "q^n <= 81 for the enumeration check",
        });
    }
    let closed = hamming_put(n, m, q)?.value;
    let qs = q_star(&hamming_balls(n, m, q)?, 1e-10)?;
    let mut ok = (-qs.q.ln() - closed).abs() < 1e-9;
    if q == 2 {
        ok &= closed >= type_distance_put(n, m)?.value - 1e-9;
    }
    Ok(ok)
}
