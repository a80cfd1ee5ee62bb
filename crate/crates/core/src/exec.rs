//! Sequential and data-parallel execution of the embarrassingly parallel
//! loops (fuzz trials, group enumeration, witness search).
//!
//! Every helper returns results in index order, so output never depends on
//! the strategy or on thread scheduling. Without the `parallel` feature,
//! [`Strategy::Parallel`] runs sequentially.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }

    /// `f(i)` for every `i` in `range`, in order.
    pub fn map_range<U, F>(self, range: Range<u64>, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(u64) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    /// `f(item)` for every item, in order.
    pub fn map_slice<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Smallest `i` in `range` with `pred(i)`.
    pub fn find_first_in_range<F>(self, range: Range<u64>, pred: F) -> Option<u64>
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().find_first(|&i| pred(i));
        }
        range.into_iter().find(|&i| pred(i))
    }

    /// Position of the first item satisfying `pred`.
    pub fn position_first<T, F>(self, items: &[T], pred: F) -> Option<usize>
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().position_first(pred);
        }
        items.iter().position(pred)
    }

    /// Items of `range` satisfying `keep`, in order.
    pub fn filter_range<F>(self, range: Range<u64>, keep: F) -> Vec<u64>
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().filter(|&i| keep(i)).collect();
        }
        range.filter(|&i| keep(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        for s in [Strategy::Sequential, Strategy::Parallel] {
            assert_eq!(s.map_range(0..5, |i| i * i), vec![0, 1, 4, 9, 16]);
            assert_eq!(s.find_first_in_range(0..10_000, |i| i > 10 && i % 97 == 0), Some(97));
            assert_eq!(s.find_first_in_range(0..100, |_| false), None);
            assert_eq!(s.position_first(&[3, 8, 9, 10], |x| x % 2 == 0), Some(1));
            assert_eq!(s.filter_range(0..10, |i| i % 3 == 0), vec![0, 3, 6, 9]);
            assert_eq!(s.map_slice(&[1, 2], |x| x + 1), vec![2, 3]);
        }
    }
}
