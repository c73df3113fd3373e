//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the helpers fan out over rayon's global pool
//! when the caller's [`Config`] asks for it. Results are always returned in
//! input order, so callers never observe scheduling.

use crate::Config;

/// Ordered map over a slice.
pub fn map<T, R, F>(cfg: &Config, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if cfg.parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = cfg;
    items.iter().map(f).collect()
}

/// Ordered map over `0..len`.
pub fn map_range<R, F>(cfg: &Config, len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if cfg.parallel {
        use rayon::prelude::*;
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = cfg;
    (0..len).map(f).collect()
}

/// `true` iff `f` holds for every item. Short-circuits in both modes.
pub fn all<T, F>(cfg: &Config, items: &[T], f: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if cfg.parallel {
        use rayon::prelude::*;
        return items.par_iter().all(f);
    }
    let _ = cfg;
    items.iter().all(f)
}

/// Ordered fallible map; returns the error of the lowest failing index.
pub fn try_map<T, R, E, F>(cfg: &Config, items: &[T], f: F) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<R, E> + Sync + Send,
{
    map(cfg, items, f).into_iter().collect()
}

/// The lowest index in `0..len` for which `f` returns `Some`, with its value.
/// The parallel path still reports the lowest index, not the first found.
pub fn find_first<R, F>(cfg: &Config, len: usize, f: F) -> Option<(usize, R)>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if cfg.parallel {
        use rayon::prelude::*;
        return (0..len)
            .into_par_iter()
            .find_map_first(|i| f(i).map(|r| (i, r)));
    }
    let _ = cfg;
    (0..len).find_map(|i| f(i).map(|r| (i, r)))
}
