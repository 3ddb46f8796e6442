//! Ground truth by direct counting: the recursion
//! `W(s, d) - W(s - d_m, d) = W(s, d without d_m)` and the truncated
//! expansion of `prod 1 / (1 - t^d_i)`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::waves::SummandSet;

/// `W(s, d)` for `s = 0..=max_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    summands: SummandSet,
    counts: Vec<BigUint>,
}

impl CountTable {
    pub fn summands(&self) -> &SummandSet {
        &self.summands
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn get(&self, s: usize) -> Option<&BigUint> {
        self.counts.get(s)
    }
}

/// Adds summands one at a time, starting from the empty-set function
/// (1 at `s = 0`, else 0).
pub fn dp_count(d: &SummandSet, max_s: usize) -> CountTable {
    let mut counts = vec![BigUint::zero(); max_s + 1];
    counts[0] = BigUint::one();
    for &di in d.elements() {
        let di = di as usize;
        for s in di..=max_s {
            let prev = counts[s - di].clone();
            counts[s] += prev;
        }
    }
    CountTable {
        summands: d.clone(),
        counts,
    }
}

/// Multiplies the truncated series `sum_k t^(k d_i)` together.
pub fn series_count(d: &SummandSet, max_s: usize) -> CountTable {
    let mut series = vec![BigUint::zero(); max_s + 1];
    series[0] = BigUint::one();
    for &di in d.elements() {
        let di = di as usize;
        let mut next = vec![BigUint::zero(); max_s + 1];
        for (e, c) in series.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for t in (e..=max_s).step_by(di) {
                next[t] += c;
            }
        }
        series = next;
    }
    CountTable {
        summands: d.clone(),
        counts: series,
    }
}
