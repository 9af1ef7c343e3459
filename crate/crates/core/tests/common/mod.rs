//! Random fixtures shared by the integration suites.
#![allow(dead_code)]

use alpha_leakage::{Channel, Dist, Joint};
use proptest::prelude::*;
use rand::Rng;

/// Normalizes non-negative weights, falling back to uniform.
pub fn normalize(w: &[f64]) -> Vec<f64> {
    let z: f64 = w.iter().sum();
    if z > 0.0 {
        w.iter().map(|v| v / z).collect()
    } else {
        vec![1.0 / w.len() as f64; w.len()]
    }
}

fn weight() -> impl Strategy<Value = f64> {
    prop_oneof![1 => Just(0.0), 5 => 0.01f64..1.0]
}

pub fn dist_strategy(min: usize, max: usize) -> impl Strategy<Value = Dist> {
    (min..=max)
        .prop_flat_map(|n| prop::collection::vec(0.01f64..1.0, n))
        .prop_map(|w| Dist::from_vec(normalize(&w)).unwrap())
}

pub fn channel_of(n_in: usize, n_out: usize) -> impl Strategy<Value = Channel> {
    prop::collection::vec(prop::collection::vec(weight(), n_out), n_in)
        .prop_map(|rows| Channel::from_rows(rows.iter().map(|r| normalize(r)).collect()).unwrap())
}

pub fn channel_strategy(max_in: usize, max_out: usize) -> impl Strategy<Value = Channel> {
    (2..=max_in, 2..=max_out).prop_flat_map(|(a, b)| channel_of(a, b))
}

pub fn joint_strategy(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Joint> {
    (2..=max_rows, 2..=max_cols)
        .prop_flat_map(|(a, b)| prop::collection::vec(prop::collection::vec(weight(), b), a))
        .prop_map(|m| {
            let flat: Vec<f64> = m.iter().flatten().cloned().collect();
            let z: f64 = flat.iter().sum();
            let n = flat.len() as f64;
            let mass = m.iter().map(|r| r.iter().map(|v| if z > 0.0 { v / z } else { 1.0 / n }).collect()).collect();
            Joint::from_matrix(mass).unwrap()
        })
}

pub fn random_weights<R: Rng>(rng: &mut R, n: usize, zero_prob: f64) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| if rng.gen_bool(zero_prob) { 0.0 } else { rng.gen_range(0.01..1.0) }).collect();
    normalize(&w)
}

pub fn random_dist<R: Rng>(rng: &mut R, n: usize) -> Dist {
    Dist::from_vec(random_weights(rng, n, 0.0)).unwrap()
}

pub fn random_channel<R: Rng>(rng: &mut R, n_in: usize, n_out: usize) -> Channel {
    Channel::from_rows((0..n_in).map(|_| random_weights(rng, n_out, 0.15)).collect()).unwrap()
}

pub fn random_joint<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Joint {
    let flat = random_weights(rng, rows * cols, 0.15);
    Joint::from_matrix(flat.chunks(cols).map(<[f64]>::to_vec).collect()).unwrap()
}

/// `W(y₁, y₂ | x) = W₁(y₁|x) W₂(y₂|x)`: both outputs observe the same input.
pub fn paired_channel(a: &Channel, b: &Channel) -> Channel {
    let rows = (0..a.n_inputs())
        .map(|x| a.row(x).iter().flat_map(|u| b.row(x).iter().map(move |v| u * v)).collect())
        .collect();
    Channel::from_rows(rows).unwrap()
}
