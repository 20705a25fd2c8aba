//! Data-parallel map used by the exhaustive checks.
//!
//! With the `parallel` feature (on by default) work is spread over a rayon
//! pool; `GROWTHKIT_THREADS` caps its size. Without the feature everything
//! runs on the calling thread.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

/// Applies `f` to every item, preserving order.
pub fn map<T, U, F>(strategy: Strategy, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match strategy {
        Strategy::Sequential => items.iter().map(f).collect(),
        Strategy::Parallel => par_map(items, f),
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    match pool() {
        Some(p) => p.install(|| items.par_iter().map(&f).collect()),
        None => items.par_iter().map(&f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
fn pool() -> Option<&'static rayon::ThreadPool> {
    use std::sync::OnceLock;
    static POOL: OnceLock<Option<rayon::ThreadPool>> = OnceLock::new();
    POOL.get_or_init(|| {
        let n = configured_threads()?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()
    })
    .as_ref()
}

/// Worker cap from `GROWTHKIT_THREADS`, if set to a positive integer.
pub fn configured_threads() -> Option<usize> {
    std::env::var("GROWTHKIT_THREADS")
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
}

/// Number of workers a parallel map will use.
pub fn threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        pool().map_or_else(rayon::current_num_threads, |p| p.current_num_threads())
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let v: Vec<u64> = (0..1000).collect();
        let a = map(Strategy::Sequential, &v, |x| x * x);
        let b = map(Strategy::Parallel, &v, |x| x * x);
        assert_eq!(a, b);
    }
}
