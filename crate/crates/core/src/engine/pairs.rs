use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use serde::{Deserialize, Serialize};

use super::{Element, EngineStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// Leading monomials are coprime.
    Product,
    /// Some third leading monomial divides the lcm and both of its pairs
    /// with the current two are already settled.
    Chain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedPair {
    pub i: usize,
    pub j: usize,
    pub criterion: Criterion,
}

/// Pending critical pairs under the normal strategy.
#[derive(Default)]
pub(crate) struct PairQueue {
    heap: BinaryHeap<Reverse<(u64, u64, usize, usize)>>,
    pending: HashSet<(usize, usize)>,
    seq: u64,
}

impl PairQueue {
    /// Register pairs between `basis[new]` and every earlier element.
    pub fn add_element(&mut self, new: usize, basis: &[Element], stats: &mut EngineStats) {
        for i in 0..new {
            let lcm = basis[i].lead.lcm(&basis[new].lead);
            self.heap.push(Reverse((lcm.degree(), self.seq, i, new)));
            self.pending.insert((i, new));
            self.seq += 1;
            stats.pairs_created += 1;
        }
    }

    pub fn pop(&mut self) -> Option<(usize, usize)> {
        let Reverse((_, _, i, j)) = self.heap.pop()?;
        self.pending.remove(&(i, j));
        Some((i, j))
    }

    fn is_pending(&self, a: usize, b: usize) -> bool {
        self.pending.contains(&(a.min(b), a.max(b)))
    }

    pub fn criterion(
        &self,
        i: usize,
        j: usize,
        basis: &[Element],
        chain: bool,
    ) -> Option<Criterion> {
        let (li, lj) = (&basis[i].lead, &basis[j].lead);
        if li.is_coprime(lj) {
            return Some(Criterion::Product);
        }
        if chain {
            let lcm = li.lcm(lj);
            let hit = basis.iter().enumerate().any(|(k, e)| {
                k != i
                    && k != j
                    && e.lead.divides(&lcm)
                    && !self.is_pending(i, k)
                    && !self.is_pending(j, k)
            });
            if hit {
                return Some(Criterion::Chain);
            }
        }
        None
    }
}
