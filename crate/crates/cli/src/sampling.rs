//! Seeded point samplers and random colorings.

use chroma_mst_core::Point2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` i.i.d. uniform points in `[0,1)^2`.
pub fn sample_uniform(n: usize, seed: u64) -> Vec<Point2> {
    uniform_from(&mut rng(seed), n)
}

pub fn uniform_from<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Point2> {
    (0..n).map(|_| Point2::new(rng.random(), rng.random())).collect()
}

/// A Poisson number of uniform points with mean `intensity`.
pub fn sample_poisson(intensity: f64, seed: u64) -> Vec<Point2> {
    poisson_from(&mut rng(seed), intensity)
}

pub fn poisson_from<R: Rng + ?Sized>(rng: &mut R, intensity: f64) -> Vec<Point2> {
    assert!(intensity > 0.0, "intensity must be positive");
    let k = Poisson::new(intensity).expect("positive intensity").sample(rng) as usize;
    uniform_from(rng, k)
}

/// Independent labels, color 0 with probability `p`.
pub fn random_coloring(points: &[Point2], p: f64, seed: u64) -> (Vec<Point2>, Vec<Point2>) {
    coloring_from(&mut rng(seed), points, p)
}

pub fn coloring_from<R: Rng + ?Sized>(rng: &mut R, points: &[Point2], p: f64) -> (Vec<Point2>, Vec<Point2>) {
    assert!(p > 0.0 && p < 1.0, "color probability must lie in (0, 1)");
    let mut split = (Vec::new(), Vec::new());
    for &q in points {
        if rng.random_bool(p) {
            split.0.push(q);
        } else {
            split.1.push(q);
        }
    }
    split
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `trial` at size `n`, independent of the order in which
/// trials run. Both topologies share it, so they see the same points.
pub fn trial_seed(root: u64, n: u64, trial: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(root) ^ n) ^ trial)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_repeatable() {
        assert!(sample_uniform(0, 3).is_empty());
        assert_eq!(sample_uniform(50, 9), sample_uniform(50, 9));
        assert_ne!(sample_uniform(50, 9), sample_uniform(50, 10));
        assert_eq!(sample_poisson(30.0, 4), sample_poisson(30.0, 4));
        let pts = sample_uniform(40, 1);
        assert_eq!(random_coloring(&pts, 0.5, 2), random_coloring(&pts, 0.5, 2));
    }

    #[test]
    fn coordinate_mean() {
        // 3σ = 3 / (√12 · 1000)
        let pts = sample_uniform(1_000_000, 11);
        let mx = pts.iter().map(|p| p.x).sum::<f64>() / 1e6;
        let my = pts.iter().map(|p| p.y).sum::<f64>() / 1e6;
        assert!((mx - 0.5).abs() < 0.002 && (my - 0.5).abs() < 0.002);
        assert!(pts.iter().all(|p| (0.0..1.0).contains(&p.x) && (0.0..1.0).contains(&p.y)));
    }

    #[test]
    fn poisson_counts() {
        let lambda = 50.0;
        let draws = 10_000;
        let counts: Vec<f64> = (0..draws).map(|s| sample_poisson(lambda, s).len() as f64).collect();
        let mean = counts.iter().sum::<f64>() / draws as f64;
        let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (draws - 1) as f64;
        let se = (lambda / draws as f64).sqrt();
        assert!((mean - lambda).abs() < 3.0 * se);
        // the sample variance of a Poisson count has standard error about
        // sqrt(2λ² / draws) for large λ
        let var_se = (2.0 * lambda * lambda / draws as f64).sqrt();
        assert!((var - lambda).abs() < 3.0 * var_se);
    }

    #[test]
    fn binomial_split() {
        let n = 10_000;
        let pts = sample_uniform(n, 5);
        let (a0, a1) = random_coloring(&pts, 0.5, 6);
        assert_eq!(a0.len() + a1.len(), n);
        let sd = (n as f64 / 4.0).sqrt();
        assert!((a0.len() as f64 - n as f64 / 2.0).abs() < 3.0 * sd);
    }

    #[test]
    fn poisson_halves() {
        // each color of a fair split behaves as a sample of half the intensity
        let lambda = 200.0;
        let draws = 2000;
        let mut sum = 0.0;
        for s in 0..draws {
            let pts = sample_poisson(lambda, s);
            sum += random_coloring(&pts, 0.5, s + 1_000_000).0.len() as f64;
        }
        let mean = sum / draws as f64;
        let se = (lambda / 2.0 / draws as f64).sqrt();
        assert!((mean - lambda / 2.0).abs() < 3.0 * se);
    }

    #[test]
    fn trial_seeds_differ() {
        let seeds: Vec<u64> = (0..100).map(|t| trial_seed(1, 500, t)).collect();
        let mut dedup = seeds.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), seeds.len());
        assert_ne!(trial_seed(1, 500, 0), trial_seed(1, 1000, 0));
    }
}
