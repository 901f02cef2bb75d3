//! Small shared helpers.

use crate::scalar::{real, Scalar};

/// `count` evenly spaced points covering `[start, stop]` inclusive.
pub fn linspace<T: Scalar>(start: T, stop: T, count: usize) -> Vec<T> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / real::<T>((count - 1) as f64);
            (0..count)
                .map(|i| {
                    if i == count - 1 {
                        stop
                    } else {
                        start + step * real::<T>(i as f64)
                    }
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_endpoints_exact() {
        let g = linspace(0.0f64, 15.0, 31);
        assert_eq!(g.len(), 31);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[30], 15.0);
        assert!((g[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn linspace_degenerate_counts() {
        assert!(linspace(1.0f64, 2.0, 0).is_empty());
        assert_eq!(linspace(1.0f64, 2.0, 1), vec![1.0]);
    }
}
