//! Chunked enumeration of F_p^n with deterministic aggregation.
//!
//! The index space `0..p^n` is cut into contiguous chunks. Chunk results are
//! combined in chunk order, so sums and collected lists do not depend on the
//! number of worker threads.

use rayon::prelude::*;

use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountOptions {
    /// Maximum number of points any single enumeration may visit.
    pub budget: u64,
    pub threads: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            threads: 1,
        }
    }
}

impl CountOptions {
    pub fn with_threads(threads: usize) -> Self {
        Self {
            threads: threads.max(1),
            ..Self::default()
        }
    }

    pub fn check(&self, required: u128) -> Result<()> {
        if required > self.budget as u128 {
            Err(Error::BudgetExceeded {
                required,
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }
}

pub fn cube_size(p: u64, n: usize) -> u128 {
    (p as u128).saturating_pow(n as u32)
}

const CHUNKS: u64 = 256;

fn chunk_bounds(total: u64) -> Vec<(u64, u64)> {
    let chunks = CHUNKS.min(total.max(1));
    let step = total.div_ceil(chunks).max(1);
    (0..total)
        .step_by(step as usize)
        .map(|lo| (lo, (lo + step).min(total)))
        .collect()
}

fn decode(mut index: u64, p: u64, point: &mut [u64]) {
    for slot in point.iter_mut().rev() {
        *slot = index % p;
        index /= p;
    }
}

fn advance(point: &mut [u64], p: u64) {
    for slot in point.iter_mut().rev() {
        *slot += 1;
        if *slot < p {
            return;
        }
        *slot = 0;
    }
}

fn run_chunk<T>(
    p: u64,
    n: usize,
    (lo, hi): (u64, u64),
    mut visit: impl FnMut(&[u64]) -> T,
) -> Vec<T> {
    let mut point = vec![0u64; n];
    decode(lo, p, &mut point);
    let mut out = Vec::with_capacity((hi - lo) as usize);
    for _ in lo..hi {
        out.push(visit(&point));
        advance(&mut point, p);
    }
    out
}

fn with_pool<R: Send>(threads: usize, job: impl FnOnce() -> R + Send) -> R {
    if threads <= 1 {
        return job();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(job),
        Err(_) => job(),
    }
}

/// Sum of `f` over every point of F_p^n, in lexicographic point order.
pub fn sum_over_cube<T, F>(p: u64, n: usize, opts: &CountOptions, f: F) -> Result<T>
where
    T: Copy + Send + Default + std::ops::AddAssign + std::iter::Sum,
    F: Fn(&[u64]) -> T + Sync,
{
    let total = cube_size(p, n);
    opts.check(total)?;
    let total = total as u64;
    let bounds = chunk_bounds(total);
    let chunk_sum = |b: &(u64, u64)| -> T {
        let mut point = vec![0u64; n];
        decode(b.0, p, &mut point);
        let mut s = T::default();
        for _ in b.0..b.1 {
            s += f(&point);
            advance(&mut point, p);
        }
        s
    };
    Ok(with_pool(opts.threads, || {
        if opts.threads <= 1 {
            bounds.iter().map(chunk_sum).sum()
        } else {
            bounds.par_iter().map(chunk_sum).sum()
        }
    }))
}

/// All `Some` results of `f` over F_p^n, in lexicographic point order.
pub fn collect_over_cube<T, F>(p: u64, n: usize, opts: &CountOptions, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&[u64]) -> Option<T> + Sync,
{
    let total = cube_size(p, n);
    opts.check(total)?;
    let bounds = chunk_bounds(total as u64);
    let chunk =
        |b: &(u64, u64)| -> Vec<T> { run_chunk(p, n, *b, &f).into_iter().flatten().collect() };
    let parts: Vec<Vec<T>> = with_pool(opts.threads, || {
        if opts.threads <= 1 {
            bounds.iter().map(chunk).collect()
        } else {
            bounds.par_iter().map(chunk).collect()
        }
    });
    Ok(parts.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn visits_every_point_once_in_order() {
        let pts = collect_over_cube(3, 3, &CountOptions::default(), |x| Some(x.to_vec())).unwrap();
        assert_eq!(pts.len(), 27);
        assert_eq!(pts[0], vec![0, 0, 0]);
        assert_eq!(pts[1], vec![0, 0, 1]);
        assert_eq!(pts[26], vec![2, 2, 2]);
        for w in pts.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let f = |x: &[u64]| (x[0] * 7 + x[1] * x[2]) % 5;
        let one = sum_over_cube(13, 3, &CountOptions::with_threads(1), f).unwrap();
        let eight = sum_over_cube(13, 3, &CountOptions::with_threads(8), f).unwrap();
        assert_eq!(one, eight);
        let g = |x: &[u64]| (x[0] + x[1] == 3).then(|| x.to_vec());
        let a = collect_over_cube(7, 3, &CountOptions::with_threads(1), g).unwrap();
        let b = collect_over_cube(7, 3, &CountOptions::with_threads(8), g).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_dimensional_cube_has_one_point() {
        assert_eq!(
            sum_over_cube(7, 0, &CountOptions::default(), |_| 1u64).unwrap(),
            1
        );
    }

    #[test]
    fn budget_is_enforced() {
        let opts = CountOptions {
            budget: 100,
            threads: 1,
        };
        assert_eq!(
            sum_over_cube(7, 3, &opts, |_| 1u64),
            Err(Error::BudgetExceeded {
                required: 343,
                budget: 100
            })
        );
    }
}
