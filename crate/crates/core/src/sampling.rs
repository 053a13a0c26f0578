//! Seeded random generators for lotteries, acts, priors and polytopes.
//!
//! All randomness in the crate flows through [`seeded`] so every run, and
//! every reported witness, is reproducible from a single `u64`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::lp::{enumerate_vertices, HalfSpace};
use crate::types::{constant_act, mix_lotteries, Act, Lottery};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw from the probability simplex (flat Dirichlet).
pub fn random_prior<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let draws: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = draws.iter().sum();
    draws.into_iter().map(|v| v / total).collect()
}

/// Half the draws are point masses (so ties and boundary cases show up),
/// a quarter are two-prize mixtures and the rest are flat Dirichlet.
pub fn random_lottery<R: Rng>(rng: &mut R, m: usize) -> Lottery {
    let u: f64 = rng.random();
    if u < 0.5 {
        Lottery::degenerate(m, rng.random_range(0..m))
    } else if u < 0.75 {
        let a = Lottery::degenerate(m, rng.random_range(0..m));
        let b = Lottery::degenerate(m, rng.random_range(0..m));
        mix_lotteries(rng.random(), &a, &b).expect("weight in [0, 1]")
    } else {
        let mut p = random_prior(rng, m);
        // Push the rounding residue into the largest entry.
        let total: f64 = p.iter().sum();
        let k = (0..m).max_by(|&i, &j| p[i].total_cmp(&p[j])).unwrap();
        p[k] += 1.0 - total;
        Lottery::new(p).expect("normalized draw")
    }
}

pub fn random_act<R: Rng>(rng: &mut R, n: usize, m: usize) -> Act {
    Act::new((0..n).map(|_| random_lottery(rng, m)).collect()).expect("consistent dimensions")
}

pub fn random_constant_act<R: Rng>(rng: &mut R, n: usize, m: usize) -> Act {
    constant_act(&random_lottery(rng, m), n)
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(lo..=hi)).collect()
}

/// Uniform direction on the unit sphere.
pub fn random_direction<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// A random polytope inside the simplex: a few random cuts through a
/// neighborhood of a random interior point. Returns the cuts (the simplex
/// constraints are implicit) and the vertex list; redraws until the vertex
/// count is at most `max_vertices`.
pub fn random_polytope<R: Rng>(rng: &mut R, n: usize, max_vertices: usize) -> (Vec<HalfSpace>, Vec<Vec<f64>>) {
    assert!((2..=6).contains(&n));
    loop {
        let center = random_prior(rng, n);
        let cuts = rng.random_range(1..=3);
        let hrep: Vec<HalfSpace> = (0..cuts)
            .map(|_| {
                let d = random_direction(rng, n);
                let spread = d.iter().cloned().fold(f64::MIN, f64::max) - d.iter().cloned().fold(f64::MAX, f64::min);
                let offset = rng.random_range(0.02..0.4) * spread;
                let bound = d.iter().zip(&center).map(|(a, b)| a * b).sum::<f64>() - offset;
                HalfSpace::new(d, bound)
            })
            .collect();
        let Ok(vertices) = enumerate_vertices(n, &hrep, 1e-9) else {
            continue;
        };
        if !vertices.is_empty() && vertices.len() <= max_vertices {
            return (hrep, vertices);
        }
    }
}
