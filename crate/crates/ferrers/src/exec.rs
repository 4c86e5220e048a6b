//! Execution strategy for the data-parallel loops.
//!
//! Every helper returns results in input order, so output never depends on
//! the schedule.

use std::ops::Range;

/// How a data-parallel loop is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    /// Plain iterator on the calling thread.
    Sequential,
    /// rayon work stealing; sequential when the `parallel` feature is off.
    #[default]
    Parallel,
}

impl Exec {
    /// True when this strategy actually runs on several threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "FERRERS_THREADS";

/// Caps the global pool at `FERRERS_THREADS` workers when the variable is
/// set. Returns the cap that was applied.
pub fn init_from_env() -> crate::Result<Option<usize>> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(None);
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| crate::Error::domain(format!("{THREADS_ENV}={raw:?} is not a thread count")))?;
    if n == 0 {
        return Err(crate::Error::domain(format!("{THREADS_ENV} must be positive")));
    }
    #[cfg(feature = "parallel")]
    {
        // A second initialization keeps the existing pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(Some(n))
}

pub(crate) fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

pub(crate) fn map_range<R, F>(exec: Exec, range: Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).collect();
    }
    let _ = exec;
    range.map(f).collect()
}

/// First `Some` in input order.
pub(crate) fn find_first<T, R, F>(exec: Exec, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().find_map_first(f);
    }
    let _ = exec;
    items.iter().find_map(f)
}

/// Execution strategy plus the resource-guard override.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunOptions {
    pub exec: Exec,
    /// Skip resource guards.
    pub force: bool,
}

impl RunOptions {
    pub fn sequential() -> Self {
        Self { exec: Exec::Sequential, force: false }
    }

    pub fn forced(self) -> Self {
        Self { force: true, ..self }
    }
}
