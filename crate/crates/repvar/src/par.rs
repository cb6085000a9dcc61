//! Data-parallel map with a sequential fallback.
//!
//! The classifier fans out over candidate strata; each candidate is
//! independent, so the work is a plain parallel map.  Compiling without the
//! `parallel` feature (or passing `parallel: false` at runtime) degrades to
//! a sequential loop with identical results — output order is the input
//! order either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, in parallel when compiled with the `parallel`
/// feature and `parallel` is true; sequentially otherwise.  The result
/// order matches the input order.
pub fn map_items<T, U, F>(items: Vec<T>, parallel: bool, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel {
            return items.into_par_iter().map(f).collect();
        }
    }
    let _ = parallel;
    items.into_iter().map(f).collect()
}
