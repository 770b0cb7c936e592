//! Least-squares fits of `a1 √n + a0` and per-n aggregation.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerN {
    pub n: usize,
    pub mean: f64,
    pub std: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub a1: f64,
    pub a0: f64,
    /// Euclidean norm of the residuals of the means.
    pub residual: f64,
    pub per_n: Vec<PerN>,
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum FitError {
    #[error("need at least two distinct n values to fit a1 sqrt(n) + a0")]
    Singular,
    #[error("{0} n values but {1} means")]
    Length(usize, usize),
}

/// Mean and sample standard deviation (zero for a single value).
pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    let k = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / k;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, var.sqrt())
}

/// Ordinary least squares of `means` on the design `(√n, 1)`.
pub fn fit_sqrt(n_values: &[usize], means: &[f64]) -> Result<(f64, f64, f64), FitError> {
    if n_values.len() != means.len() {
        return Err(FitError::Length(n_values.len(), means.len()));
    }
    let k = n_values.len() as f64;
    let xs: Vec<f64> = n_values.iter().map(|&n| (n as f64).sqrt()).collect();
    let mx = xs.iter().sum::<f64>() / k;
    let my = means.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if !(sxx > 1e-12 * mx * mx) {
        return Err(FitError::Singular);
    }
    let sxy: f64 = xs.iter().zip(means).map(|(x, y)| (x - mx) * (y - my)).sum();
    let a1 = sxy / sxx;
    let a0 = my - a1 * mx;
    let residual = xs
        .iter()
        .zip(means)
        .map(|(x, y)| (y - a1 * x - a0).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok((a1, a0, residual))
}

/// Aggregates samples per n (in the given order) and fits their means.
pub fn fit_samples(groups: &[(usize, Vec<f64>)]) -> Result<FitResult, FitError> {
    let per_n: Vec<PerN> = groups
        .iter()
        .map(|(n, xs)| {
            let (mean, std) = mean_std(xs);
            PerN { n: *n, mean, std }
        })
        .collect();
    let ns: Vec<usize> = per_n.iter().map(|p| p.n).collect();
    let means: Vec<f64> = per_n.iter().map(|p| p.mean).collect();
    let (a1, a0, residual) = fit_sqrt(&ns, &means)?;
    Ok(FitResult {
        a1,
        a0,
        residual,
        per_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, Normal};

    #[test]
    fn exact_curves() {
        let ns = [100, 400, 900, 1600];
        let ys: Vec<f64> = ns.iter().map(|&n| 0.3 * (n as f64).sqrt() - 2.5).collect();
        let (a1, a0, r) = fit_sqrt(&ns, &ys).unwrap();
        assert!((a1 - 0.3).abs() < 1e-12 && (a0 + 2.5).abs() < 1e-12 && r < 1e-12);
        let (a1, a0, _) = fit_sqrt(&[100, 400], &[10.0, 20.0]).unwrap();
        assert!((a1 - 1.0).abs() < 1e-12 && a0.abs() < 1e-12);
    }

    #[test]
    fn singular_design() {
        assert_eq!(fit_sqrt(&[500, 500], &[1.0, 2.0]), Err(FitError::Singular));
        assert_eq!(fit_sqrt(&[500], &[1.0]), Err(FitError::Singular));
        assert_eq!(fit_sqrt(&[1, 2], &[1.0]), Err(FitError::Length(2, 1)));
    }

    #[test]
    fn noisy_recovery() {
        // with σ = 0.01 √n at these six sizes one fit has a standard error
        // of about 0.022 in a1, so the check is on bias and spread over
        // many replicates against the textbook OLS variance
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ns = [2000, 3000, 4000, 5000, 6000, 7000];
        let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).sqrt()).collect();
        let mx = xs.iter().sum::<f64>() / 6.0;
        let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        let var: f64 = xs.iter().map(|x| (x - mx).powi(2) * (0.01 * x).powi(2)).sum::<f64>() / (sxx * sxx);
        let reps = 2000;
        let a1s: Vec<f64> = (0..reps)
            .map(|_| {
                let ys: Vec<f64> = xs
                    .iter()
                    .map(|&s| 0.65 * s + Normal::new(0.0, 0.01 * s).unwrap().sample(&mut rng))
                    .collect();
                fit_sqrt(&ns, &ys).unwrap().0
            })
            .collect();
        let (m, sd) = mean_std(&a1s);
        assert!((m - 0.65).abs() < 3.0 * var.sqrt() / (reps as f64).sqrt());
        assert!((sd / var.sqrt() - 1.0).abs() < 0.1);
        let within = a1s.iter().filter(|a| (*a - 0.65).abs() < 0.02).count() as f64 / reps as f64;
        assert!(within > 0.55);
    }

    #[test]
    fn aggregation() {
        let (m, s) = mean_std(&[1.0, 2.0, 3.0]);
        assert_eq!((m, s), (2.0, 1.0));
        assert_eq!(mean_std(&[4.0]), (4.0, 0.0));
        let f = fit_samples(&[(100, vec![9.0, 11.0]), (400, vec![20.0])]).unwrap();
        assert_eq!(f.per_n[0].mean, 10.0);
        assert!((f.a1 - 1.0).abs() < 1e-12);
    }
}
