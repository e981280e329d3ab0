//! Array-backed Fenwick tree over a fixed index universe.

use std::ops::{Add, AddAssign, Sub};

#[derive(Debug, Clone)]
pub struct FenwickTree<T> {
    tree: Vec<T>,
}

impl<T> FenwickTree<T>
where
    T: Copy + Default + AddAssign + Add<Output = T> + Sub<Output = T>,
{
    /// `n` zero-initialized slots.
    pub fn new(n: usize) -> Self {
        Self {
            tree: vec![T::default(); n + 1],
        }
    }

    /// O(n) construction from initial slot values.
    pub fn from_slice(values: &[T]) -> Self {
        let n = values.len();
        let mut tree = vec![T::default(); n + 1];
        tree[1..].copy_from_slice(values);
        for i in 1..=n {
            let parent = i + lowbit(i);
            if parent <= n {
                let child = tree[i];
                tree[parent] += child;
            }
        }
        Self { tree }
    }

    pub fn len(&self) -> usize {
        self.tree.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Adds `delta` to slot `i` (0-based).
    #[inline]
    pub fn add(&mut self, i: usize, delta: T) {
        debug_assert!(i < self.len());
        let mut idx = i + 1;
        while idx < self.tree.len() {
            self.tree[idx] += delta;
            idx += lowbit(idx);
        }
    }

    /// Sum of slots `[0, end)`.
    #[inline]
    pub fn prefix(&self, end: usize) -> T {
        debug_assert!(end <= self.len());
        let mut idx = end;
        let mut acc = T::default();
        while idx > 0 {
            acc += self.tree[idx];
            idx -= lowbit(idx);
        }
        acc
    }

    /// Sum of slots `[start, end)`.
    pub fn range(&self, start: usize, end: usize) -> T {
        self.prefix(end) - self.prefix(start)
    }
}

#[inline]
fn lowbit(i: usize) -> usize {
    i & i.wrapping_neg()
}
