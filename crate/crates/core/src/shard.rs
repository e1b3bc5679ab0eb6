//! Fan-out over disjoint shards with scoped threads.

/// Runs `work(shard, shards)` for every shard and returns the results in
/// shard order. One shard runs inline.
pub fn run_sharded<T, F>(shards: usize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, usize) -> T + Sync,
{
    let shards = shards.max(1);
    if shards == 1 {
        return vec![work(0, 1)];
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..shards)
            .map(|i| {
                let work = &work;
                scope.spawn(move || work(i, shards))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("shard panicked")).collect()
    })
}

/// Default shard count: `WANTZEL_SHARDS` if set, else the available
/// parallelism.
pub fn default_shards() -> usize {
    std::env::var("WANTZEL_SHARDS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&n: &usize| n >= 1)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}
