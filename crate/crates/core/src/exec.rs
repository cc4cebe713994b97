//! Execution layer: data-parallel helpers with a sequential fallback.
//!
//! With the default `parallel` feature the helpers dispatch to rayon; without
//! it they run the identical loops single-threaded. Chunk sizes and merge-tree
//! shapes are fixed by the caller, never by the scheduler, so both modes — and
//! any thread count — produce bit-identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Label for the compiled execution mode; benches and reports use it.
pub const MODE: &str = if cfg!(feature = "parallel") { "par" } else { "seq" };

/// Configure the global thread pool. A no-op without the `parallel` feature,
/// and silently a no-op if a pool was already installed (rayon allows one
/// global pool per process).
pub fn set_threads(n: usize) {
    #[cfg(feature = "parallel")]
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = n;
}

/// Map `f` over fixed-size chunks of `items`, preserving chunk order.
pub fn chunk_map<T, R, F>(items: &[T], chunk: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&[T]) -> R + Sync + Send,
{
    assert!(chunk > 0);
    #[cfg(feature = "parallel")]
    {
        items.par_chunks(chunk).map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.chunks(chunk).map(f).collect()
    }
}

/// Like [`chunk_map`], but passes the chunk index (chunk `i` starts at
/// element `i * chunk` of `items`).
pub fn chunk_map_indexed<T, R, F>(items: &[T], chunk: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &[T]) -> R + Sync + Send,
{
    assert!(chunk > 0);
    #[cfg(feature = "parallel")]
    {
        items.par_chunks(chunk).enumerate().map(|(i, c)| f(i, c)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.chunks(chunk).enumerate().map(|(i, c)| f(i, c)).collect()
    }
}

/// Run `f(chunk_index, chunk)` over fixed-size mutable chunks of `data`.
/// Chunks are disjoint, so the write pattern is scheduler-independent.
pub fn for_each_chunk_mut<T, F>(data: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    assert!(chunk > 0);
    #[cfg(feature = "parallel")]
    {
        data.par_chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c));
    }
    #[cfg(not(feature = "parallel"))]
    {
        data.chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c));
    }
}

/// Fold `nodes` with a fixed-shape binary tree: split at the midpoint,
/// recurse, merge. The shape depends only on `nodes.len()`, so the result is
/// identical in parallel and sequential builds (given an associative-enough
/// `merge`; exact-arithmetic merges are associative outright, and callers that
/// fold floats rely on the fixed shape rather than associativity).
pub fn tree_fold<R, F>(mut nodes: Vec<R>, merge: F) -> Option<R>
where
    R: Send,
    F: Fn(R, R) -> R + Sync + Send,
{
    fn fold_range<R, F>(slice: &mut [Option<R>], merge: &F) -> Option<R>
    where
        R: Send,
        F: Fn(R, R) -> R + Sync + Send,
    {
        match slice.len() {
            0 => None,
            1 => slice[0].take(),
            n => {
                let mid = n / 2;
                let (left, right) = slice.split_at_mut(mid);
                #[cfg(feature = "parallel")]
                let (a, b) = rayon::join(|| fold_range(left, merge), || fold_range(right, merge));
                #[cfg(not(feature = "parallel"))]
                let (a, b) = (fold_range(left, merge), fold_range(right, merge));
                match (a, b) {
                    (Some(a), Some(b)) => Some(merge(a, b)),
                    (Some(a), None) => Some(a),
                    (None, Some(b)) => Some(b),
                    (None, None) => None,
                }
            }
        }
    }

    let mut slots: Vec<Option<R>> = nodes.drain(..).map(Some).collect();
    fold_range(&mut slots, &merge)
}
