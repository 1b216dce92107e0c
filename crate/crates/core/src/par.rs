//! Data-parallel map helper with a sequential fallback.
//!
//! All grid-level sweeps in the library funnel through [`map_indexed`]. With
//! the default `parallel` feature the work is distributed with rayon; without
//! it (or with [`ExecMode::Sequential`]) the same closure runs on one thread,
//! which the bench suite uses as the baseline.

/// Execution strategy for grid sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    /// Use rayon when the `parallel` feature is enabled.
    #[default]
    Auto,
    /// Force a single-threaded sweep.
    Sequential,
}

/// Applies `f` to `0..n`, preserving index order in the output.
pub fn map_indexed<T, F>(mode: ExecMode, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if mode == ExecMode::Auto {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    let _ = mode;
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let a = map_indexed(ExecMode::Auto, 257, |i| i * i + 1);
        let b = map_indexed(ExecMode::Sequential, 257, |i| i * i + 1);
        assert_eq!(a, b);
    }
}
