//! Thread-parallel trial execution.

use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};
use sirnet_core::montecarlo::TrialRunner;

use crate::error::AppError;

/// Runs trials on a rayon pool. Results come back in trial order, so the
/// output does not depend on the number of workers.
pub struct Rayon {
    pool: Option<ThreadPool>,
}

impl Rayon {
    /// `None` uses the global pool.
    pub fn new(workers: Option<usize>) -> Result<Self, AppError> {
        let pool = match workers {
            None => None,
            Some(0) => return Err(AppError::Usage("--workers must be at least 1".into())),
            Some(n) => Some(
                ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| AppError::Usage(format!("cannot start {n} workers: {e}")))?,
            ),
        };
        Ok(Self { pool })
    }
}

impl TrialRunner for Rayon {
    fn run<T, F>(&self, trials: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        let go = || (0..trials).into_par_iter().map(&f).collect();
        match &self.pool {
            Some(pool) => pool.install(go),
            None => go(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sirnet_core::montecarlo::Sequential;

    #[test]
    fn matches_sequential_order() {
        let f = |i: u64| i.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        let seq = Sequential.run(1000, f);
        for w in [1, 3, 8] {
            assert_eq!(Rayon::new(Some(w)).unwrap().run(1000, f), seq);
        }
        assert!(Rayon::new(Some(0)).is_err());
    }
}
