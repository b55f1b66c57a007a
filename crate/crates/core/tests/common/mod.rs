//! Test-only oracles, written independently of the library's code paths.
#![allow(dead_code)]

use fuzzy_mlp::network::NetworkWeights;

pub fn logistic(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Plain-loop evaluation of the network output from raw parameter slices.
pub fn output(v: &[f64], w: &[f64], b1: &[f64], b2: f64, x: &[f64]) -> f64 {
    let m = w.len();
    let mut y_in = b2;
    for j in 0..m {
        let mut z_in = b1[j];
        for (i, xi) in x.iter().enumerate() {
            z_in += xi * v[i * m + j];
        }
        y_in += logistic(z_in) * w[j];
    }
    logistic(y_in)
}

pub fn half_squared_error(net: &NetworkWeights, x: &[f64], target: f64) -> f64 {
    let e = target - output(&net.v, &net.w, &net.b1, net.b2, x);
    0.5 * e * e
}

/// Central-difference gradient of `0.5 (T - Y)^2` with respect to every
/// parameter, in the order `v`, `w`, `b1`, `b2`.
pub fn numeric_gradient(net: &NetworkWeights, x: &[f64], target: f64, h: f64) -> Vec<f64> {
    let mut grads = Vec::new();
    let mut probe = net.clone();
    let count = net.v.len() + net.w.len() + net.b1.len() + 1;
    for k in 0..count {
        let mut loss_at = |delta: f64| {
            let slot = param_mut(&mut probe, k);
            let orig = *slot;
            *slot = orig + delta;
            let loss = half_squared_error(&probe, x, target);
            *param_mut(&mut probe, k) = orig;
            loss
        };
        grads.push((loss_at(h) - loss_at(-h)) / (2.0 * h));
    }
    grads
}

pub fn param_mut(net: &mut NetworkWeights, mut k: usize) -> &mut f64 {
    if k < net.v.len() {
        return &mut net.v[k];
    }
    k -= net.v.len();
    if k < net.w.len() {
        return &mut net.w[k];
    }
    k -= net.w.len();
    if k < net.b1.len() {
        return &mut net.b1[k];
    }
    &mut net.b2
}

pub fn flat_params(net: &NetworkWeights) -> Vec<f64> {
    net.v.iter().chain(&net.w).chain(&net.b1).copied().chain([net.b2]).collect()
}

/// `|a - b| <= rel * max(|a|, |b|) + abs_floor`
pub fn close(a: f64, b: f64, rel: f64, abs_floor: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()) + abs_floor
}

/// S membership written out branch by branch.
pub fn s_curve(x: f64, a: f64, b: f64) -> f64 {
    let mid = (a + b) / 2.0;
    if x < a {
        0.0
    } else if x <= mid {
        2.0 * ((x - a) / (b - a)).powi(2)
    } else if x <= b {
        1.0 - 2.0 * ((x - b) / (b - a)).powi(2)
    } else {
        1.0
    }
}
