//! Data-parallel helpers with a sequential fallback. With the `parallel`
//! feature and more than one worker the work runs on a rayon pool; otherwise
//! (and always with one worker) it runs in order on the calling thread. Both
//! paths produce the same results: `find_map_first` returns the earliest hit
//! in input order, not the earliest to finish.

/// Runs `op` inside a pool of `workers` threads (no-op when sequential).
pub fn install<R: Send>(workers: usize, op: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if workers > 1 {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
            return pool.install(op);
        }
    }
    let _ = workers;
    op()
}

pub fn find_map_first<T, R, F>(items: &[T], workers: usize, f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if workers > 1 {
        use rayon::prelude::*;
        return items.par_iter().find_map_first(f);
    }
    let _ = workers;
    items.iter().find_map(f)
}

pub fn map<T, R, F>(items: &[T], workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if workers > 1 {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = workers;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_hit_is_in_input_order() {
        let items: Vec<u32> = (0..1000).collect();
        for workers in [1, 4] {
            let hit = install(workers, || {
                find_map_first(&items, workers, |&x| (x % 97 == 96).then_some(x))
            });
            assert_eq!(hit, Some(96));
            let sq = install(workers, || map(&items[..5], workers, |&x| x * x));
            assert_eq!(sq, vec![0, 1, 4, 9, 16]);
        }
    }
}
