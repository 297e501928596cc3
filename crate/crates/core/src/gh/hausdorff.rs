use super::{GhError, Side};
use crate::metric::DistanceMatrix;

/// Hausdorff distance between two subsets of the same finite space.
pub fn hausdorff(z: &DistanceMatrix, a: &[usize], b: &[usize]) -> Result<f64, GhError> {
    if a.is_empty() || b.is_empty() {
        return Err(GhError::EmptySubset);
    }
    for (side, set) in [(Side::Left, a), (Side::Right, b)] {
        if let Some(&index) = set.iter().find(|&&i| i >= z.len()) {
            return Err(GhError::IndexOutOfRange {
                side,
                index,
                len: z.len(),
            });
        }
    }
    let directed = |from: &[usize], to: &[usize]| {
        from.iter()
            .map(|&p| to.iter().map(|&q| z.get(p, q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    Ok(directed(a, b).max(directed(b, a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::validate;

    #[test]
    fn examples() {
        let z = validate(vec![
            vec![0.0, 1.0, 3.0],
            vec![1.0, 0.0, 2.0],
            vec![3.0, 2.0, 0.0],
        ])
        .unwrap();
        assert_eq!(hausdorff(&z, &[0, 2], &[2, 0]).unwrap(), 0.0);
        assert_eq!(hausdorff(&z, &[0], &[2]).unwrap(), 3.0);
        assert_eq!(hausdorff(&z, &[0, 1], &[1, 2]).unwrap(), 2.0);
        assert_eq!(hausdorff(&z, &[], &[1]).unwrap_err(), GhError::EmptySubset);
        assert!(hausdorff(&z, &[0], &[3]).is_err());
    }
}
