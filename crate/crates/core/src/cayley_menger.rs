//! Cayley-Menger obstruction to embedding four points in Euclidean space.
//!
//! `cayley_menger(r, s, t, r2, s2, t2)` is the squared volume of a tetrahedron
//! with face sides `r, s, t` and opposite edges `r2, s2, t2` (edge `r2` is
//! opposite `r`, and so on). It is the bordered 5×5 determinant
//!
//! ```text
//!         | 0  1    1    1    1   |
//!         | 1  0    t²   s²   r2² |
//! 1/288 · | 1  t²   0    r²   s2² |
//!         | 1  s²   r²   0    t2² |
//!         | 1  r2²  s2²  t2²  0   |
//! ```
//!
//! extended as a polynomial to all sextuples. A negative value certifies that
//! the four-point space embeds in no Euclidean or Hilbert space.

use serde::Serialize;

use crate::ddouble::DoubleDouble;
use crate::metric::{DistanceMatrix, MetricError};

/// Evaluates the Cayley-Menger polynomial.
///
/// With `a = r², b = s², c = t²` and primes for the opposite edges, the
/// determinant expands to
///
/// ```text
/// 144 φ = a a' (b + b' + c + c' - a - a')
///       + b b' (a + a' + c + c' - b - b')
///       + c c' (a + a' + b + b' - c - c')
///       - (a b c + a b' c' + a' b c' + a' b' c)
/// ```
///
/// The four products in the last line are the four faces. Squares are formed
/// exactly and the sum is accumulated in double-double precision, so the
/// result keeps full `f64` relative accuracy unless the cancellation exceeds
/// roughly 10^15.
pub fn cayley_menger(r: f64, s: f64, t: f64, r2: f64, s2: f64, t2: f64) -> f64 {
    let (a, b, c) = (
        DoubleDouble::square(r),
        DoubleDouble::square(s),
        DoubleDouble::square(t),
    );
    let (a2, b2, c2) = (
        DoubleDouble::square(r2),
        DoubleDouble::square(s2),
        DoubleDouble::square(t2),
    );
    let edges = a + a2 + b + b2 + c + c2;
    let pair_a = a * a2 * (edges - (a + a2) - (a + a2));
    let pair_b = b * b2 * (edges - (b + b2) - (b + b2));
    let pair_c = c * c2 * (edges - (c + c2) - (c + c2));
    let faces = a * b * c + a * b2 * c2 + a2 * b * c2 + a2 * b2 * c;
    let total = pair_a + pair_b + pair_c - faces;
    total.to_f64() / 144.0
}

/// φ of four labelled points `[a0, a1, a2, a3]` of `x`: the face is
/// `a1 a2 a3` and `a0` is the apex.
pub fn cayley_menger_of(x: &DistanceMatrix, points: [usize; 4]) -> f64 {
    let [a0, a1, a2, a3] = points;
    cayley_menger(
        x.get(a1, a2),
        x.get(a2, a3),
        x.get(a3, a1),
        x.get(a0, a3),
        x.get(a0, a1),
        x.get(a0, a2),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CayleyMengerMinimum {
    pub value: f64,
    /// Increasing indices of the minimising 4-subset.
    pub witness: [usize; 4],
}

/// Minimum of φ over all 4-subsets, each evaluated under its increasing
/// labelling. Ties keep the lexicographically first subset.
pub fn min_cayley_menger(x: &DistanceMatrix) -> Result<CayleyMengerMinimum, MetricError> {
    let n = x.len();
    if n < 4 {
        return Err(MetricError::TooFewPoints { needed: 4, got: n });
    }
    let mut best = CayleyMengerMinimum {
        value: f64::INFINITY,
        witness: [0, 1, 2, 3],
    };
    for p0 in 0..n {
        for p1 in (p0 + 1)..n {
            for p2 in (p1 + 1)..n {
                for p3 in (p2 + 1)..n {
                    let value = cayley_menger_of(x, [p0, p1, p2, p3]);
                    if value < best.value {
                        best = CayleyMengerMinimum {
                            value,
                            witness: [p0, p1, p2, p3],
                        };
                    }
                }
            }
        }
    }
    Ok(best)
}
