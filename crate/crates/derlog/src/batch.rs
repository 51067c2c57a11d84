//! Batch mapping over independent work items: data-parallel with rayon
//! when the `parallel` feature is enabled, plain sequential otherwise.
//! Every value crossing the boundary is immutable.

/// Applies `f` to every item. `jobs` bounds the worker pool: 1 forces a
/// sequential run even in parallel builds, 0 uses the default pool size.
#[cfg(feature = "parallel")]
pub fn map_batch<T, U, F>(items: &[T], jobs: usize, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    match jobs {
        1 => items.iter().map(f).collect(),
        0 => items.par_iter().map(f).collect(),
        n => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("worker pool");
            pool.install(|| items.par_iter().map(f).collect())
        }
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map_batch<T, U, F>(items: &[T], _jobs: usize, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order_and_values() {
        let items: Vec<u64> = (0..64).collect();
        let seq = map_batch(&items, 1, |x| x * x);
        let par = map_batch(&items, 0, |x| x * x);
        let bounded = map_batch(&items, 3, |x| x * x);
        assert_eq!(seq, par);
        assert_eq!(seq, bounded);
        assert_eq!(seq[9], 81);
    }
}
