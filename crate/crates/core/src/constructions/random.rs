//! Seeded random distance matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ConstructionError;
use crate::metric::DistanceMatrix;

#[derive(Debug, Clone, PartialEq)]
pub enum Sampler {
    /// Off-diagonal entries i.i.d. uniform on `[1, 2]`. Any such matrix
    /// satisfies the triangle inequality since `2 <= 1 + 1`.
    SafeBand,
    /// Entries of `base` shifted by independent uniform noise on
    /// `[-amplitude, amplitude]`, redrawn until the result is a metric.
    /// `amplitude` must be below half the codiameter of `base`.
    Perturbed {
        base: DistanceMatrix,
        amplitude: f64,
        max_attempts: usize,
    },
}

/// Draws a random `n`-point space. The same `(n, seed, sampler)` always
/// yields the same matrix, bit for bit.
pub fn random_space(n: usize, seed: u64, sampler: &Sampler) -> Result<DistanceMatrix, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::InvalidParameter("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match sampler {
        Sampler::SafeBand => {
            let mut d = vec![0.0; n * n];
            for i in 0..n {
                for j in (i + 1)..n {
                    let v = rng.random_range(1.0..=2.0);
                    d[i * n + j] = v;
                    d[j * n + i] = v;
                }
            }
            Ok(DistanceMatrix::from_row_major(n, d)?)
        }
        Sampler::Perturbed {
            base,
            amplitude,
            max_attempts,
        } => {
            if base.len() != n {
                return Err(ConstructionError::InvalidParameter(format!(
                    "base has {} points, expected {n}",
                    base.len()
                )));
            }
            let amplitude = *amplitude;
            let limit = base.codiameter().map_or(f64::INFINITY, |c| 0.5 * c);
            if !(amplitude >= 0.0 && amplitude < limit) {
                return Err(ConstructionError::InvalidParameter(format!(
                    "amplitude {amplitude} must lie in [0, {limit})"
                )));
            }
            for _ in 0..*max_attempts {
                let mut d = base.as_slice().to_vec();
                for i in 0..n {
                    for j in (i + 1)..n {
                        let v = base.get(i, j) + rng.random_range(-amplitude..=amplitude);
                        d[i * n + j] = v;
                        d[j * n + i] = v;
                    }
                }
                if let Ok(m) = DistanceMatrix::from_row_major(n, d) {
                    return Ok(m);
                }
            }
            Err(ConstructionError::RejectionBudgetExceeded(*max_attempts))
        }
    }
}
