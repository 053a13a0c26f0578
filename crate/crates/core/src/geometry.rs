//! Euclidean distances between polytopes given by their vertices.

use crate::lp::{dot, solve_dense};

/// Nearest point of `conv(points)` to `target`, by Wolfe's minimum-norm-point
/// algorithm on the translated points. Returns the point and its distance.
pub fn nearest_point(points: &[Vec<f64>], target: &[f64]) -> (Vec<f64>, f64) {
    assert!(!points.is_empty(), "nearest point in an empty hull");
    let shifted: Vec<Vec<f64>> = points
        .iter()
        .map(|p| p.iter().zip(target).map(|(a, b)| a - b).collect())
        .collect();
    let scale = shifted.iter().map(|p| dot(p, p)).fold(0.0, f64::max).max(1e-300);

    let start = (0..shifted.len())
        .min_by(|&i, &j| dot(&shifted[i], &shifted[i]).total_cmp(&dot(&shifted[j], &shifted[j])))
        .unwrap();
    let mut active = vec![start];
    let mut weights = vec![1.0];
    let mut x = shifted[start].clone();

    for _ in 0..1000 {
        let (j, xp) = (0..shifted.len())
            .map(|i| (i, dot(&x, &shifted[i])))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if dot(&x, &x) - xp <= 1e-15 * scale || active.contains(&j) {
            break;
        }
        active.push(j);
        weights.push(0.0);
        loop {
            let alpha = affine_min_norm(&shifted, &active);
            if alpha.iter().all(|&a| a > 1e-14) {
                weights = alpha;
                break;
            }
            let mut theta = 1.0f64;
            for (w, a) in weights.iter().zip(&alpha) {
                if *a <= 1e-14 && w - a > 0.0 {
                    theta = theta.min(w / (w - a));
                }
            }
            for (w, a) in weights.iter_mut().zip(&alpha) {
                *w = theta * a + (1.0 - theta) * *w;
            }
            let mut k = 0;
            while k < active.len() {
                if weights[k] <= 1e-14 {
                    active.remove(k);
                    weights.remove(k);
                } else {
                    k += 1;
                }
            }
            let total: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= total);
            if active.len() == 1 {
                weights = vec![1.0];
                break;
            }
        }
        x = combine(&shifted, &active, &weights);
    }
    let dist = dot(&x, &x).sqrt();
    let point = x.iter().zip(target).map(|(a, b)| a + b).collect();
    (point, dist)
}

fn combine(points: &[Vec<f64>], active: &[usize], weights: &[f64]) -> Vec<f64> {
    let mut x = vec![0.0; points[0].len()];
    for (&i, &w) in active.iter().zip(weights) {
        for (xv, pv) in x.iter_mut().zip(&points[i]) {
            *xv += w * pv;
        }
    }
    x
}

/// Affine coefficients (summing to one) of the minimum-norm point in the
/// affine hull of the active points.
fn affine_min_norm(points: &[Vec<f64>], active: &[usize]) -> Vec<f64> {
    let k = active.len();
    let mut a = vec![vec![0.0; k + 1]; k + 1];
    for (r, &i) in active.iter().enumerate() {
        for (c, &j) in active.iter().enumerate() {
            a[r][c] = dot(&points[i], &points[j]);
        }
        a[r][k] = 1.0;
        a[k][r] = 1.0;
    }
    let mut b = vec![0.0; k + 1];
    b[k] = 1.0;
    match solve_dense(a.clone(), b.clone()) {
        Some(sol) => sol[..k].to_vec(),
        None => {
            // Affinely dependent points: regularize the Gram block.
            for (r, row) in a.iter_mut().enumerate().take(k) {
                row[r] += 1e-12;
            }
            solve_dense(a, b).map(|s| s[..k].to_vec()).unwrap_or_else(|| vec![1.0 / k as f64; k])
        }
    }
}

/// Directed distance `max_{a in A} dist(a, conv B)`; the maximum of a convex
/// function over `conv A` is attained at a vertex.
pub fn directed_hausdorff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter().map(|p| nearest_point(b, p).1).fold(0.0, f64::max)
}

/// Symmetric Hausdorff distance between `conv A` and `conv B`.
pub fn hausdorff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

/// Largest pairwise distance between points.
pub fn diameter(points: &[Vec<f64>]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            let s: f64 = p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum();
            d = d.max(s.sqrt());
        }
    }
    d
}
