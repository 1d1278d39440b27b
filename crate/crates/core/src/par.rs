//! Deterministic work partitioning over scoped threads.
//!
//! The classifiers and enumerators split an index range into one contiguous
//! chunk per worker, run the chunks on scoped threads, and concatenate the
//! results in chunk order. Output is therefore byte-identical for every
//! worker count; parallelism only changes wall-clock time.

/// Applies `f` to every index in `0..n` and concatenates the per-index
/// result vectors in index order, fanned out across `workers` threads.
pub(crate) fn flat_map_indexed<R, F>(n: usize, workers: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> Vec<R> + Sync,
{
    let workers = workers.max(1).min(n.max(1));
    if workers == 1 || n <= 1 {
        return (0..n).flat_map(&f).collect();
    }
    // ceil-sized contiguous chunks keep the merge a plain concatenation
    let chunk = n.div_ceil(workers);
    let mut per_chunk: Vec<Vec<R>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let f = &f;
                let lo = w * chunk;
                let hi = ((w + 1) * chunk).min(n);
                scope.spawn(move || (lo..hi).flat_map(f).collect::<Vec<R>>())
            })
            .collect();
        per_chunk = handles.into_iter().map(|h| h.join().expect("worker panicked")).collect();
    });
    per_chunk.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_order_is_independent_of_worker_count() {
        let f = |i: usize| vec![i * i, i];
        let one = flat_map_indexed(37, 1, f);
        for workers in [2, 3, 5, 8, 64] {
            assert_eq!(flat_map_indexed(37, workers, f), one);
        }
    }

    #[test]
    fn degenerate_sizes() {
        let f = |i: usize| vec![i];
        assert!(flat_map_indexed(0, 4, f).is_empty());
        assert_eq!(flat_map_indexed(1, 4, f), vec![0]);
    }
}
