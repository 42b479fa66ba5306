//! Independent reference computations and random inputs shared by the
//! integration tests. Nothing here calls into the library's statistics.

#![allow(dead_code)]

use std::path::PathBuf;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// `1 - |r|` from the centred sums, 1 when either column is constant.
pub fn cc_oracle(x: &[f64], y: &[f64]) -> f64 {
    let (mx, my) = (mean(x), mean(y));
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return 1.0;
    }
    1.0 - (sxy / (sxx * syy).sqrt()).abs()
}

/// Mean squared residual of the least-squares line predicting `y` from `x`.
pub fn lsre_oracle(x: &[f64], y: &[f64]) -> f64 {
    let (mx, my) = (mean(x), mean(y));
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let intercept = my - slope * mx;
    x.iter()
        .zip(y)
        .map(|(a, b)| {
            let r = b - intercept - slope * a;
            r * r
        })
        .sum::<f64>()
        / x.len() as f64
}

pub fn covariance(x: &[f64], y: &[f64]) -> [[f64; 2]; 2] {
    let (mx, my) = (mean(x), mean(y));
    let n = x.len() as f64;
    let vx = x.iter().map(|a| (a - mx) * (a - mx)).sum::<f64>() / n;
    let vy = y.iter().map(|b| (b - my) * (b - my)).sum::<f64>() / n;
    let c = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum::<f64>() / n;
    [[vx, c], [c, vy]]
}

/// Smaller eigenvalue of a symmetric 2×2 matrix by repeated Jacobi
/// rotations until the off-diagonal entry vanishes.
pub fn min_eigen_jacobi(m: [[f64; 2]; 2]) -> f64 {
    let [[mut a, mut b], [_, mut d]] = m;
    for _ in 0..64 {
        if b == 0.0 {
            break;
        }
        let theta = (d - a) / (2.0 * b);
        let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
        let (na, nd) = (a - t * b, d + t * b);
        a = na;
        d = nd;
        b = 0.0;
    }
    a.min(d).max(0.0)
}

pub fn mici_oracle(x: &[f64], y: &[f64]) -> f64 {
    min_eigen_jacobi(covariance(x, y))
}

/// `|got - want| <= tol · max(1, scale)`, with `scale` the magnitude of the
/// inputs the value was computed from.
pub fn close(got: f64, want: f64, tol: f64, scale: f64) -> bool {
    (got - want).abs() <= tol * scale.abs().max(want.abs()).max(1.0)
}

/// A random column pair of length 2..=max_len drawn from one of several
/// shapes: correlated Gaussians, integer counts, rates, and constants.
pub fn random_pair(rng: &mut ChaCha8Rng, max_len: usize) -> (Vec<f64>, Vec<f64>) {
    let n = rng.random_range(2..=max_len);
    let scale = 10f64.powi(rng.random_range(-3..=4));
    let rho: f64 = rng.random_range(-1.0..1.0);
    let std = Normal::new(0.0, 1.0).unwrap();
    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    let shape = rng.random_range(0..5);
    for _ in 0..n {
        let a: f64 = std.sample(rng);
        let b: f64 = std.sample(rng);
        let (u, v) = match shape {
            0 => (a * scale, (rho * a + (1.0 - rho * rho).sqrt() * b) * scale + 3.0),
            1 => ((a.abs() * 5.0).floor(), (b.abs() * 50.0).floor() + (a.abs() * 5.0).floor()),
            2 => ((rng.random::<f64>() * 100.0).round() / 100.0, (rng.random::<f64>() * 100.0).round() / 100.0),
            3 => (7.0, b * scale),
            _ => (a, 2.0 * a - 1.0),
        };
        x.push(u);
        y.push(v);
    }
    if rng.random_bool(0.5) {
        (x, y)
    } else {
        (y, x)
    }
}

/// The bundled 1000-row fixture.
pub fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/kdd_fixture_1000.csv")
}

/// The official 10% file, when `KDD_10_PERCENT` points at one.
pub fn official_file() -> Option<PathBuf> {
    std::env::var_os("KDD_10_PERCENT")
        .map(PathBuf::from)
        .filter(|p| p.is_file())
}
