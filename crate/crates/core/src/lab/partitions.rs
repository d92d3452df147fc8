//! Set partitions via restricted growth strings, in lexicographic order.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest base accepted by [`enumerate_partitions`]; Bell(10) = 115 975.
pub const PARTITION_BOUND: usize = 10;

/// Iterator over all partitions of a base set. Blocks are listed in order
/// of their first element; elements keep the base order.
#[derive(Clone, Debug)]
pub struct Partitions<T> {
    base: Vec<T>,
    rgs: Vec<usize>,
    done: bool,
}

/// Every partition of `base` exactly once; `|base|` ≤ [`PARTITION_BOUND`].
pub fn enumerate_partitions<T: Clone>(base: &[T]) -> Result<Partitions<T>> {
    partitions_bounded(base, PARTITION_BOUND)
}

pub(crate) fn partitions_bounded<T: Clone>(base: &[T], bound: usize) -> Result<Partitions<T>> {
    if base.len() > bound {
        return Err(Error::PartitionSpaceTooLarge { size: base.len(), bound });
    }
    Ok(Partitions { base: base.to_vec(), rgs: vec![0; base.len()], done: false })
}

impl<T: Clone> Iterator for Partitions<T> {
    type Item = Vec<Vec<T>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let blocks = self.rgs.iter().max().map_or(0, |m| m + 1);
        let mut out: Vec<Vec<T>> = vec![Vec::new(); blocks];
        for (x, &b) in self.base.iter().zip(&self.rgs) {
            out[b].push(x.clone());
        }
        // advance: rightmost position that may grow
        self.done = true;
        let mut prefix_max = vec![0; self.rgs.len()];
        for i in 1..self.rgs.len() {
            prefix_max[i] = prefix_max[i - 1].max(self.rgs[i - 1]);
        }
        for i in (1..self.rgs.len()).rev() {
            if self.rgs[i] <= prefix_max[i] {
                self.rgs[i] += 1;
                for r in &mut self.rgs[i + 1..] {
                    *r = 0;
                }
                self.done = false;
                break;
            }
        }
        Some(out)
    }
}
