//! Covering and packing numbers, scale profiles and box-dimension estimates.
//!
//! Coverage uses closed balls (`d <= eps`) centred at points of the space;
//! packing requires pairwise distances `>= eps`. With these conventions
//! `N(X, eps) <= M(X, eps) <= N(X, eps / 3)`.

mod bitset;
mod cover;
mod packing;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::metric::DistanceMatrix;

pub use cover::{covering_number, Cover};
pub use packing::{packing_number, Packing};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoverError {
    #[error("invalid scale {0}")]
    InvalidScale(f64),
    #[error("scales must be positive and strictly decreasing")]
    InvalidScales,
    #[error("window holds {0} scales; at least two are needed")]
    WindowTooSmall(usize),
}

/// Exact `N` and `M` over a decreasing list of scales.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaleProfile {
    pub scales: Vec<f64>,
    pub counts_n: Vec<usize>,
    pub counts_m: Vec<usize>,
    /// Below this scale (the codiameter) both counts equal the cardinality.
    /// `None` for a single point.
    pub saturation_scale: Option<f64>,
}

pub fn scale_profile(x: &DistanceMatrix, scales: &[f64]) -> Result<ScaleProfile, CoverError> {
    let decreasing = scales.windows(2).all(|w| w[1] < w[0]);
    if !decreasing || scales.iter().any(|&s| !(s > 0.0 && s.is_finite())) {
        return Err(CoverError::InvalidScales);
    }
    let counts: Vec<(usize, usize)> = scales
        .par_iter()
        .map(|&eps| -> Result<(usize, usize), CoverError> {
            Ok((
                covering_number(x, eps)?.count,
                packing_number(x, eps)?.count,
            ))
        })
        .collect::<Result<_, _>>()?;
    Ok(ScaleProfile {
        scales: scales.to_vec(),
        counts_n: counts.iter().map(|c| c.0).collect(),
        counts_m: counts.iter().map(|c| c.1).collect(),
        saturation_scale: x.codiameter().ok(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BracketRow {
    pub scale: f64,
    pub covering: usize,
    pub packing: usize,
    /// `N(X, scale / 3)`.
    pub covering_third: usize,
}

impl BracketRow {
    pub fn holds(&self) -> bool {
        self.covering <= self.packing && self.packing <= self.covering_third
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BracketCheck {
    pub holds: bool,
    pub rows: Vec<BracketRow>,
}

/// Checks `N(X, eps) <= M(X, eps) <= N(X, eps/3)` at every profiled scale.
pub fn bracket_check(profile: &ScaleProfile, x: &DistanceMatrix) -> Result<BracketCheck, CoverError> {
    let rows: Vec<BracketRow> = profile
        .scales
        .par_iter()
        .zip(&profile.counts_n)
        .zip(&profile.counts_m)
        .map(|((&scale, &covering), &packing)| {
            Ok(BracketRow {
                scale,
                covering,
                packing,
                covering_third: covering_number(x, scale / 3.0)?.count,
            })
        })
        .collect::<Result<_, CoverError>>()?;
    Ok(BracketCheck {
        holds: rows.iter().all(BracketRow::holds),
        rows,
    })
}

/// Slopes of `log N` against `log(1/eps)` over a window of scales.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionEstimate {
    /// Smallest slope between consecutive scales.
    pub lower_slope: f64,
    /// Largest slope between consecutive scales.
    pub upper_slope: f64,
    /// Least-squares slope.
    pub fit_slope: f64,
    /// `(largest, smallest)` scale used.
    pub window: (f64, f64),
    pub saturation_scale: Option<f64>,
}

/// Estimates box dimension from the profiled scales within
/// `window = (eps_max, eps_min)` (inclusive), or all scales when `None`.
///
/// For a finite space counts freeze at the cardinality below the saturation
/// scale, so only windows above it say anything about the shape.
pub fn box_dimension(
    profile: &ScaleProfile,
    window: Option<(f64, f64)>,
) -> Result<DimensionEstimate, CoverError> {
    let (hi, lo) = window.unwrap_or((f64::INFINITY, 0.0));
    let slack = 1e-12;
    let points: Vec<(f64, f64, f64)> = profile
        .scales
        .iter()
        .zip(&profile.counts_n)
        .filter(|(&s, _)| s <= hi * (1.0 + slack) && s >= lo * (1.0 - slack))
        .map(|(&s, &count)| (s, -s.ln(), (count as f64).ln()))
        .collect();
    if points.len() < 2 {
        return Err(CoverError::WindowTooSmall(points.len()));
    }
    let slopes: Vec<f64> = points
        .windows(2)
        .map(|w| (w[1].2 - w[0].2) / (w[1].1 - w[0].1))
        .collect();
    let lower_slope = slopes.iter().copied().fold(f64::INFINITY, f64::min);
    let upper_slope = slopes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let k = points.len() as f64;
    let mean_u = points.iter().map(|p| p.1).sum::<f64>() / k;
    let mean_v = points.iter().map(|p| p.2).sum::<f64>() / k;
    let (mut num, mut den) = (0.0, 0.0);
    for &(_, u, v) in &points {
        num += (u - mean_u) * (v - mean_v);
        den += (u - mean_u) * (u - mean_u);
    }
    // The least-squares slope is a positive combination of consecutive
    // slopes; clamp away rounding.
    let fit_slope = (num / den).clamp(lower_slope, upper_slope);
    Ok(DimensionEstimate {
        lower_slope,
        upper_slope,
        fit_slope,
        window: (points[0].0, points[points.len() - 1].0),
        saturation_scale: profile.saturation_scale,
    })
}

/// Geometric grid `diam, diam/ratio, ...` down to the codiameter (inclusive).
pub fn auto_scales(x: &DistanceMatrix, ratio: f64) -> Vec<f64> {
    let diam = x.diameter();
    let Ok(cdm) = x.codiameter() else {
        return vec![1.0, 1.0 / ratio];
    };
    let mut scales = vec![diam];
    let mut s = diam / ratio;
    while s > cdm * (1.0 + 1e-12) {
        scales.push(s);
        s /= ratio;
    }
    if *scales.last().expect("non-empty") > cdm {
        scales.push(cdm);
    }
    if scales.len() < 2 {
        scales.push(diam / ratio);
    }
    scales
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::cantor_level;
    use crate::metric::validate;

    fn line(points: &[f64]) -> DistanceMatrix {
        validate(
            points
                .iter()
                .map(|p| points.iter().map(|q| (p - q).abs()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn profile_of_a_line() {
        let l = line(&[0.0, 1.0, 2.0, 3.0]);
        let p = scale_profile(&l, &[1.0, 1.0 / 3.0]).unwrap();
        assert_eq!(p.counts_n, vec![2, 4]);
        assert_eq!(p.counts_m, vec![4, 4]);
        let b = bracket_check(&p, &l).unwrap();
        assert!(b.holds);
        assert_eq!(b.rows[0].covering_third, 4);
        assert!(scale_profile(&l, &[1.0, 2.0]).is_err());
        assert!(scale_profile(&l, &[1.0, 0.0]).is_err());
    }

    #[test]
    fn one_point_profile() {
        let p = scale_profile(&DistanceMatrix::singleton(), &[1.0, 0.1, 0.01]).unwrap();
        assert_eq!(p.counts_n, vec![1, 1, 1]);
        assert_eq!(p.counts_m, vec![1, 1, 1]);
        assert!(bracket_check(&p, &DistanceMatrix::singleton()).unwrap().holds);
        let d = box_dimension(&p, None).unwrap();
        assert_eq!(d.fit_slope, 0.0);
        assert_eq!(d.saturation_scale, None);
    }

    #[test]
    fn cantor_counts_and_slope() {
        let c = cantor_level(3).unwrap();
        let scales: Vec<f64> = (0..=3).map(|k| 3f64.powi(-k)).collect();
        assert_eq!(scale_profile(&c, &scales).unwrap().counts_n, vec![1, 2, 4, 8]);

        let c = cantor_level(5).unwrap();
        let scales: Vec<f64> = (1..=5).map(|k| 3f64.powi(-k)).collect();
        let p = scale_profile(&c, &scales).unwrap();
        assert_eq!(p.counts_n, vec![2, 4, 8, 16, 32]);
        let d = box_dimension(&p, None).unwrap();
        assert!((d.fit_slope - 2f64.ln() / 3f64.ln()).abs() < 1e-9);
        assert!(d.lower_slope <= d.fit_slope && d.fit_slope <= d.upper_slope);
    }

    #[test]
    fn window_selection() {
        let l = line(&[0.0, 1.0, 2.0, 3.0]);
        let p = scale_profile(&l, &[2.0, 1.0, 0.5]).unwrap();
        assert!(matches!(
            box_dimension(&p, Some((0.9, 0.6))),
            Err(CoverError::WindowTooSmall(0))
        ));
        let d = box_dimension(&p, Some((2.0, 1.0))).unwrap();
        assert_eq!(d.window, (2.0, 1.0));
        assert_eq!(d.fit_slope, 1.0);
    }

    #[test]
    fn automatic_grid() {
        let l = line(&[0.0, 1.0, 2.0, 3.0]);
        assert_eq!(auto_scales(&l, 2.0), vec![3.0, 1.5, 1.0]);
        assert_eq!(auto_scales(&DistanceMatrix::singleton(), 2.0).len(), 2);
    }
}
