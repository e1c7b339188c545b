use std::collections::BTreeMap;

use super::BlockRange;

/// Tracks committed ranges that may arrive out of order and reports the
/// contiguous frontier: the highest block with everything below committed.
#[derive(Debug, Clone)]
pub struct FrontierTracker {
    frontier: Option<u64>,
    next: u64,
    pending: BTreeMap<u64, u64>,
}

impl FrontierTracker {
    /// Starts expecting `start` as the next block to commit.
    pub fn new(start: u64) -> Self {
        FrontierTracker {
            frontier: start.checked_sub(1),
            next: start,
            pending: BTreeMap::new(),
        }
    }

    pub fn frontier(&self) -> Option<u64> {
        self.frontier
    }

    /// Records a committed range; returns the frontier if it moved.
    pub fn commit(&mut self, range: BlockRange) -> Option<u64> {
        if range.last < self.next {
            return None;
        }
        let e = self.pending.entry(range.first).or_insert(range.last);
        *e = (*e).max(range.last);
        let before = self.frontier;
        while let Some((&first, &last)) = self.pending.first_key_value() {
            if first > self.next {
                break;
            }
            self.pending.pop_first();
            if last >= self.next {
                self.frontier = Some(last);
                self.next = last + 1;
            }
        }
        (self.frontier != before).then_some(self.frontier).flatten()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn out_of_order_commits_wait() {
        let mut t = FrontierTracker::new(0);
        assert_eq!(t.commit(BlockRange::new(10, 19)), None);
        assert_eq!(t.frontier(), None);
        assert_eq!(t.commit(BlockRange::new(0, 9)), Some(19));
        assert_eq!(t.commit(BlockRange::new(30, 39)), None);
        assert_eq!(t.commit(BlockRange::new(20, 29)), Some(39));
    }

    #[test]
    fn resumes_mid_chain() {
        let mut t = FrontierTracker::new(50);
        assert_eq!(t.frontier(), Some(49));
        assert_eq!(t.commit(BlockRange::new(50, 74)), Some(74));
    }
}
