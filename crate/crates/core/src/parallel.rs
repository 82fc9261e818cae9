//! Worker-pool configuration and progress reporting.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Called with `(done, total)` as enumeration work units finish.
pub type ProgressFn = Arc<dyn Fn(usize, usize) + Send + Sync>;

/// Knobs shared by the enumerative computations.
#[derive(Clone, Default)]
pub struct RunOptions {
    /// Lift the default enumeration budget.
    pub allow_long: bool,
    pub progress: Option<ProgressFn>,
}

impl RunOptions {
    pub fn allow_long() -> Self {
        Self {
            allow_long: true,
            progress: None,
        }
    }

    pub(crate) fn check_budget(&self, what: String, size: usize, limit: usize) -> Result<()> {
        if size > limit && !self.allow_long {
            return Err(Error::BudgetExceeded {
                what,
                limit,
                hint: "pass --allow-long to run it anyway".into(),
            });
        }
        Ok(())
    }

    pub(crate) fn tracker(&self, total: usize) -> Tracker<'_> {
        Tracker {
            done: AtomicUsize::new(0),
            total,
            progress: self.progress.as_ref(),
        }
    }
}

impl std::fmt::Debug for RunOptions {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RunOptions")
            .field("allow_long", &self.allow_long)
            .field("progress", &self.progress.is_some())
            .finish()
    }
}

pub(crate) struct Tracker<'a> {
    done: AtomicUsize,
    total: usize,
    progress: Option<&'a ProgressFn>,
}

impl Tracker<'_> {
    pub(crate) fn tick(&self) {
        if let Some(p) = self.progress {
            let d = self.done.fetch_add(1, Ordering::Relaxed) + 1;
            p(d, self.total);
        }
    }
}

/// Run `f` on a pool of `workers` threads, or the global pool when `None`.
pub fn with_workers<R: Send>(workers: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match workers {
        None => Ok(f()),
        Some(0) => Err(Error::InvalidInput("worker count must be positive".into())),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::InvalidInput(format!("cannot start {w} workers: {e}")))?;
            Ok(pool.install(f))
        }
    }
}
