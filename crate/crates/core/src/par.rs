//! Trial scheduling. With the `parallel` feature, independent trials run on
//! the rayon pool; without it they run in order on the calling thread. Both
//! paths return results in trial order.

/// Runs `f(0..n)` sequentially.
pub fn map_trials_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Runs `f(0..n)`, in parallel when the `parallel` feature is enabled.
#[cfg(feature = "parallel")]
pub fn map_trials<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_trials<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    map_trials_seq(n, f)
}

/// Maps `f` over a slice, in parallel when enabled.
#[cfg(feature = "parallel")]
pub fn map_slice<A, T, F>(items: &[A], f: F) -> Vec<T>
where
    A: Sync,
    T: Send,
    F: Fn(&A) -> T + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_slice<A, T, F>(items: &[A], f: F) -> Vec<T>
where
    A: Sync,
    T: Send,
    F: Fn(&A) -> T + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let f = |i: usize| (i * i) as u64 ^ 0xabcd;
        assert_eq!(map_trials(1000, f), map_trials_seq(1000, f));
        let xs: Vec<u32> = (0..50).collect();
        assert_eq!(map_slice(&xs, |x| x + 1), (1..51).collect::<Vec<_>>());
    }
}
