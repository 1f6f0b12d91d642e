//! Row-parallel sweeps over grid storage.
//!
//! Output bytes never depend on the worker count: each row is written by
//! exactly one thread into its own disjoint slice, and rows are assigned in
//! contiguous blocks. `SW_THREADS` caps the number of workers.

/// Worker count for a sweep over `rows` rows: min of `SW_THREADS` (when set),
/// the hardware parallelism, and the row count.
pub fn worker_count(rows: usize) -> usize {
    let hw = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    let cap = std::env::var("SW_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(hw);
    cap.min(hw).max(1).min(rows.max(1))
}

/// Apply `f(j, row)` to every `row_len`-sized row of `data`, in parallel.
pub fn for_each_row<T, F>(data: &mut [T], row_len: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync,
{
    assert!(row_len > 0 && data.len() % row_len == 0);
    let rows = data.len() / row_len;
    let workers = worker_count(rows);
    if workers <= 1 {
        for (j, row) in data.chunks_mut(row_len).enumerate() {
            f(j, row);
        }
        return;
    }
    let rows_per_block = rows.div_ceil(workers);
    std::thread::scope(|scope| {
        for (block_index, block) in data.chunks_mut(rows_per_block * row_len).enumerate() {
            let f = &f;
            scope.spawn(move || {
                for (r, row) in block.chunks_mut(row_len).enumerate() {
                    f(block_index * rows_per_block + r, row);
                }
            });
        }
    });
}
