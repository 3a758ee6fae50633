#![allow(dead_code)]

use std::path::PathBuf;

use myofibril::validation::Curve;
use rand::Rng;

pub fn euclid(a: (f64, f64), b: (f64, f64)) -> f64 {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    (dx * dx + dy * dy).sqrt()
}

/// Minimum over every monotone coupling path of the maximum paired distance,
/// found by walking all paths explicitly.
pub fn frechet_brute_force(p: &[(f64, f64)], q: &[(f64, f64)]) -> f64 {
    fn walk(p: &[(f64, f64)], q: &[(f64, f64)], i: usize, j: usize, worst: f64, best: &mut f64) {
        let worst = worst.max(euclid(p[i], q[j]));
        if worst >= *best {
            return;
        }
        if i + 1 == p.len() && j + 1 == q.len() {
            *best = worst;
            return;
        }
        if i + 1 < p.len() {
            walk(p, q, i + 1, j, worst, best);
        }
        if j + 1 < q.len() {
            walk(p, q, i, j + 1, worst, best);
        }
        if i + 1 < p.len() && j + 1 < q.len() {
            walk(p, q, i + 1, j + 1, worst, best);
        }
    }
    let mut best = f64::INFINITY;
    walk(p, q, 0, 0, 0.0, &mut best);
    best
}

/// Random curve with 2..=max_points points, coarse values so ties occur.
pub fn random_curve<R: Rng>(rng: &mut R, max_points: usize) -> Curve {
    let n = rng.random_range(2..=max_points);
    let mut x = rng.random_range(-2.0..2.0_f64);
    let points = (0..n)
        .map(|_| {
            x += rng.random_range(1..=4) as f64 * 0.25;
            (x, rng.random_range(-8..=8) as f64 * 0.5)
        })
        .collect();
    Curve::new("random", points).unwrap()
}

pub fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_myofibril"))
}

pub fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

pub fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join(name)
}
