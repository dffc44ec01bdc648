//! Execution strategy for campaign loops.

/// How independent work items are mapped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Data-parallel over the global rayon pool; sequential when built without `parallel`.
    Parallel,
}

impl Default for Exec {
    fn default() -> Exec {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }

    /// Sets the worker count of the global pool. Has no effect without `parallel`
    /// or once the pool has started.
    pub fn configure_threads(threads: usize) -> bool {
        #[cfg(feature = "parallel")]
        {
            rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().is_ok()
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = threads;
            false
        }
    }
}
