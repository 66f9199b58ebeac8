use rayon::prelude::*;

/// Runs `f` for every trial index in `range` on a pool of `threads` workers
/// (0 picks the rayon default). Results come back in trial order, so any
/// fold over them is independent of the thread count.
pub fn run_trials<T, F>(threads: usize, range: std::ops::Range<u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(|| range.into_par_iter().map(f).collect())
}
