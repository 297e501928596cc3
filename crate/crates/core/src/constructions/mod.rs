//! Explicit finite metric spaces: thickenings of a given space, the
//! four-point non-Euclidean gadget, Cantor approximations and random samples.
//!
//! Each thickening comes with a projection onto the original space whose
//! distortion certifies its Gromov-Hausdorff distance from it.

mod random;

use serde::Serialize;
use thiserror::Error;

use crate::gh::{distortion, Correspondence};
use crate::metric::{DistanceMatrix, MetricError};

pub use random::{random_space, Sampler};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("eps = {eps} must be below the codiameter {codiameter}")]
    EpsTooLarge { eps: f64, codiameter: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("construction would have {size} points, over the cap of {cap}")]
    SizeOverflow { size: usize, cap: usize },
    #[error("no valid sample after {0} attempts")]
    RejectionBudgetExceeded(usize),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// Where a constructed point comes from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Layer {
    /// The original point itself.
    Base,
    /// Height `s` in the segment `[0, eps]` attached to the origin.
    Height(f64),
    /// One of the three spike tips attached to the base point.
    Spike(u8),
    /// Offset vector in the ball attached to the origin.
    Offset(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointLabel {
    /// Index of the point of the source space this point projects to.
    pub origin: usize,
    pub layer: Layer,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabeledSpace {
    pub matrix: DistanceMatrix,
    pub labels: Vec<PointLabel>,
}

impl LabeledSpace {
    fn new(matrix: DistanceMatrix, labels: Vec<PointLabel>) -> Self {
        debug_assert_eq!(matrix.len(), labels.len());
        Self { matrix, labels }
    }

    /// Relates each source point to every constructed point projecting to it.
    /// The source space is on the left.
    pub fn projection(&self, source_len: usize) -> Result<Correspondence, crate::gh::GhError> {
        Correspondence::new(
            self.labels.iter().enumerate().map(|(i, l)| (l.origin, i)).collect(),
            source_len,
            self.labels.len(),
        )
    }

    /// Half the distortion of [`projection`](Self::projection): an upper
    /// bound on `d_GH(source, self)`.
    pub fn certified_gh_bound(&self, source: &DistanceMatrix) -> Result<f64, crate::gh::GhError> {
        Ok(0.5 * distortion(&self.projection(source.len())?, source, &self.matrix)?)
    }
}

fn check_eps_below_codiameter(f: &DistanceMatrix, eps: f64) -> Result<(), ConstructionError> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(ConstructionError::InvalidParameter(format!(
            "eps must be positive, got {eps}"
        )));
    }
    if let Ok(codiameter) = f.codiameter() {
        if eps >= codiameter {
            return Err(ConstructionError::EpsTooLarge { eps, codiameter });
        }
    }
    Ok(())
}

/// The four-point space with three points pairwise `2 eps` apart and a
/// centre at `eps` from each. Its Cayley-Menger value is `-eps⁶/9`.
pub fn gadget(eps: f64) -> DistanceMatrix {
    assert!(eps > 0.0 && eps.is_finite(), "gadget scale must be positive");
    let (a, b) = (eps, 2.0 * eps);
    DistanceMatrix::from_trusted(
        4,
        vec![
            0.0, b, b, a, //
            b, 0.0, b, a, //
            b, b, 0.0, a, //
            a, a, a, 0.0,
        ],
    )
}

/// Attaches a segment of length `eps`, sampled at `k + 1` heights, to every
/// point of `f`:
///
/// ```text
/// d((a,s),(b,t)) = d(a,b) + s + t   if a != b
/// d((a,s),(a,t)) = |s - t|
/// ```
///
/// Points are ordered by origin, then by height.
pub fn perfectify(f: &DistanceMatrix, eps: f64, k: usize) -> Result<LabeledSpace, ConstructionError> {
    check_eps_below_codiameter(f, eps)?;
    if k == 0 {
        return Err(ConstructionError::InvalidParameter("k must be at least 1".into()));
    }
    let heights: Vec<f64> = (0..=k).map(|j| eps * j as f64 / k as f64).collect();
    let points: Vec<(usize, f64)> = (0..f.len())
        .flat_map(|a| heights.iter().map(move |&s| (a, s)))
        .collect();
    let m = points.len();
    let mut d = vec![0.0; m * m];
    for (p, &(a, s)) in points.iter().enumerate() {
        for (q, &(b, t)) in points.iter().enumerate() {
            d[p * m + q] = if a != b {
                f.get(a, b) + (s + t)
            } else {
                (s - t).abs()
            };
        }
    }
    let matrix = DistanceMatrix::from_row_major(m, d)?;
    let labels = points
        .into_iter()
        .map(|(origin, s)| PointLabel {
            origin,
            layer: Layer::Height(s),
        })
        .collect();
    Ok(LabeledSpace::new(matrix, labels))
}

/// Adds three tips `y1, y2, y3` to `f`, pairwise `2 eps` apart and at
/// `d(x, base) + eps` from each point `x` of `f`. The tips and `base` span a
/// copy of [`gadget`]. Output order: the three tips, then the points of `f`.
pub fn spike(f: &DistanceMatrix, base: usize, eps: f64) -> Result<LabeledSpace, ConstructionError> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(ConstructionError::InvalidParameter(format!(
            "eps must be positive, got {eps}"
        )));
    }
    f.check_index(base)?;
    let n = f.len();
    let m = n + 3;
    let mut d = vec![0.0; m * m];
    for p in 0..m {
        for q in 0..m {
            if p == q {
                continue;
            }
            d[p * m + q] = match (p < 3, q < 3) {
                (true, true) => 2.0 * eps,
                (true, false) => f.get(q - 3, base) + eps,
                (false, true) => f.get(p - 3, base) + eps,
                (false, false) => f.get(p - 3, q - 3),
            };
        }
    }
    let matrix = DistanceMatrix::from_row_major(m, d)?;
    let labels = (0..3u8)
        .map(|tip| PointLabel {
            origin: base,
            layer: Layer::Spike(tip),
        })
        .chain((0..n).map(|origin| PointLabel {
            origin,
            layer: Layer::Base,
        }))
        .collect();
    Ok(LabeledSpace::new(matrix, labels))
}

pub const DEFAULT_MAX_POINTS: usize = 4096;
const MAX_GRID: usize = 1 << 24;

/// Attaches a discretised `dim`-dimensional Euclidean ball of radius `eps` to
/// every point of `f`:
///
/// ```text
/// d((a,u),(b,v)) = d(a,b) + |u| + |v|   if a != b
/// d((a,u),(a,v)) = |u - v|
/// ```
///
/// The ball is sampled at the points of a `resolution^dim` grid on
/// `[-eps, eps]^dim` that lie in the closed ball.
pub fn grid_ball_product(
    f: &DistanceMatrix,
    dim: usize,
    eps: f64,
    resolution: usize,
) -> Result<LabeledSpace, ConstructionError> {
    grid_ball_product_capped(f, dim, eps, resolution, DEFAULT_MAX_POINTS)
}

pub fn grid_ball_product_capped(
    f: &DistanceMatrix,
    dim: usize,
    eps: f64,
    resolution: usize,
    max_points: usize,
) -> Result<LabeledSpace, ConstructionError> {
    check_eps_below_codiameter(f, eps)?;
    if dim == 0 || resolution == 0 {
        return Err(ConstructionError::InvalidParameter(
            "dimension and resolution must be positive".into(),
        ));
    }
    // Bounds the enumeration of the cube grid before clipping to the ball.
    let grid_size = u32::try_from(dim)
        .ok()
        .and_then(|d| resolution.checked_pow(d))
        .filter(|&g| g <= MAX_GRID)
        .ok_or(ConstructionError::SizeOverflow {
            size: usize::MAX,
            cap: max_points,
        })?;
    let axis: Vec<f64> = if resolution == 1 {
        vec![0.0]
    } else {
        (0..resolution)
            .map(|i| -eps + 2.0 * eps * i as f64 / (resolution - 1) as f64)
            .collect()
    };
    let mut offsets: Vec<Vec<f64>> = Vec::new();
    for code in 0..grid_size {
        let mut rest = code;
        let u: Vec<f64> = (0..dim)
            .map(|_| {
                let c = axis[rest % resolution];
                rest /= resolution;
                c
            })
            .rev()
            .collect();
        if norm(&u) <= eps * (1.0 + 1e-12) {
            offsets.push(u);
        }
    }
    if offsets.is_empty() {
        return Err(ConstructionError::InvalidParameter(format!(
            "no point of the {resolution}-point grid lies in the {dim}-ball"
        )));
    }
    let size = f.len() * offsets.len();
    if size > max_points {
        return Err(ConstructionError::SizeOverflow {
            size,
            cap: max_points,
        });
    }
    let norms: Vec<f64> = offsets.iter().map(|u| norm(u)).collect();
    let points: Vec<(usize, usize)> = (0..f.len())
        .flat_map(|a| (0..offsets.len()).map(move |k| (a, k)))
        .collect();
    let mut d = vec![0.0; size * size];
    for (p, &(a, u)) in points.iter().enumerate() {
        for (q, &(b, v)) in points.iter().enumerate() {
            d[p * size + q] = if a != b {
                f.get(a, b) + (norms[u] + norms[v])
            } else {
                let diff: Vec<f64> = offsets[u].iter().zip(&offsets[v]).map(|(x, y)| x - y).collect();
                norm(&diff)
            };
        }
    }
    let matrix = DistanceMatrix::from_row_major(size, d)?;
    let labels = points
        .into_iter()
        .map(|(origin, k)| PointLabel {
            origin,
            layer: Layer::Offset(offsets[k].clone()),
        })
        .collect();
    Ok(LabeledSpace::new(matrix, labels))
}

fn norm(u: &[f64]) -> f64 {
    u.iter().map(|c| c * c).sum::<f64>().sqrt()
}

pub const MAX_CANTOR_DEPTH: u32 = 14;

/// Left endpoints of the `2^depth` intervals of the middle-thirds
/// construction at the given depth, in increasing order.
pub fn cantor_level(depth: u32) -> Result<DistanceMatrix, ConstructionError> {
    if depth > MAX_CANTOR_DEPTH {
        return Err(ConstructionError::SizeOverflow {
            size: 1usize.checked_shl(depth).unwrap_or(usize::MAX),
            cap: 1 << MAX_CANTOR_DEPTH,
        });
    }
    let n = 1usize << depth;
    let points: Vec<f64> = (0..n)
        .map(|code| {
            (0..depth)
                .filter(|bit| code >> (depth - 1 - bit) & 1 == 1)
                .map(|bit| 2.0 * 3f64.powi(-(bit as i32 + 1)))
                .sum()
        })
        .collect();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            d[i * n + j] = (points[i] - points[j]).abs();
        }
    }
    Ok(DistanceMatrix::from_row_major(n, d)?)
}
