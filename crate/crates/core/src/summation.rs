//! Order-independent reductions.
//!
//! Every long sum in the crate goes through [`pairwise_sum`], so that results
//! only depend on the index order of the terms and not on how the terms were
//! produced (serially or in parallel).

use std::ops::Add;

use num_traits::Zero;

const LEAF: usize = 16;

/// Pairwise (tree) summation in index order.
pub fn pairwise_sum<T>(terms: &[T]) -> T
where
    T: Copy + Zero + Add<Output = T>,
{
    if terms.len() <= LEAF {
        return terms.iter().fold(T::zero(), |acc, &x| acc + x);
    }
    let mid = terms.len() / 2;
    pairwise_sum(&terms[..mid]) + pairwise_sum(&terms[mid..])
}

/// Pairwise summation of `f(i)` for `i` in `0..n` without materialising
/// more than one leaf at a time.
pub fn pairwise_sum_by<T, F>(n: usize, f: &F) -> T
where
    T: Copy + Zero + Add<Output = T>,
    F: Fn(usize) -> T,
{
    fn go<T, F>(lo: usize, hi: usize, f: &F) -> T
    where
        T: Copy + Zero + Add<Output = T>,
        F: Fn(usize) -> T,
    {
        if hi - lo <= LEAF {
            return (lo..hi).fold(T::zero(), |acc, i| acc + f(i));
        }
        let mid = lo + (hi - lo) / 2;
        go(lo, mid, f) + go(mid, hi, f)
    }
    go(0, n, f)
}
