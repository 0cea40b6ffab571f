//! Enumeration of k-element subsets of `{0, …, n-1}` in colexicographic
//! order, plus exact binomial counts for budget checks.
//!
//! Colex order compares subsets by their largest differing element, so the
//! sequence for `k = 3`, `n = 5` is `{0,1,2}, {0,1,3}, {0,2,3}, {1,2,3},
//! {0,1,4}, …`. The successor step increments the lowest member that has room
//! before the next one and resets everything below it — an O(k) revolving-door
//! style update that never revisits a subset. Enumeration order is a contract:
//! "first maximizer" ties resolve to the colex-smallest subset.

/// Exact binomial coefficient `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiply because
        // acc already holds C(n, i).
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i + 1) as u128,
            None => return u128::MAX,
        };
    }
    acc
}

/// Streaming enumerator of the k-subsets of `{0, …, n-1}` in colex order.
///
/// Usage pattern for hot loops (no per-step allocation):
///
/// ```
/// use ripcert_core::subsets::ColexSubsets;
/// let mut it = ColexSubsets::new(4, 2);
/// let mut seen = Vec::new();
/// while let Some(s) = it.next_subset() {
///     seen.push(s.to_vec());
/// }
/// assert_eq!(seen.len(), 6);
/// assert_eq!(seen[0], vec![0, 1]);
/// assert_eq!(seen[5], vec![2, 3]);
/// ```
#[derive(Debug, Clone)]
pub struct ColexSubsets {
    n: usize,
    k: usize,
    current: Vec<usize>,
    started: bool,
    exhausted: bool,
}

impl ColexSubsets {
    /// Enumerator over the k-subsets of `{0, …, n-1}`; empty when `k > n`.
    /// `k = 0` yields exactly one (empty) subset.
    pub fn new(n: usize, k: usize) -> Self {
        ColexSubsets {
            n,
            k,
            current: (0..k).collect(),
            started: false,
            exhausted: k > n,
        }
    }

    /// Advances to the next subset and returns it, or `None` when done. The
    /// returned slice is only valid until the next call.
    pub fn next_subset(&mut self) -> Option<&[usize]> {
        if self.exhausted {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.current);
        }
        // Find the lowest member that can move up without colliding with its
        // successor, advance it, and reset everything below to 0..i.
        let k = self.k;
        let mut i = 0;
        loop {
            if i == k {
                self.exhausted = true;
                return None;
            }
            let ceiling = if i + 1 < k { self.current[i + 1] } else { self.n };
            if self.current[i] + 1 < ceiling {
                self.current[i] += 1;
                for (j, slot) in self.current.iter_mut().enumerate().take(i) {
                    *slot = j;
                }
                return Some(&self.current);
            }
            i += 1;
        }
    }

    /// Collects the remaining subsets; convenient in tests.
    pub fn collect_all(mut self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        while let Some(s) = self.next_subset() {
            out.push(s.to_vec());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(5, 5), 1);
        assert_eq!(binomial(4, 6), 0);
        assert_eq!(binomial(96, 4), 3_321_960);
        assert_eq!(binomial(30, 10), 30_045_015);
    }

    #[test]
    fn binomial_saturates_instead_of_overflowing() {
        assert_eq!(binomial(1000, 500), u128::MAX);
    }

    #[test]
    fn colex_order_for_3_of_5() {
        let got = ColexSubsets::new(5, 3).collect_all();
        let want: Vec<Vec<usize>> = vec![
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![0, 2, 3],
            vec![1, 2, 3],
            vec![0, 1, 4],
            vec![0, 2, 4],
            vec![1, 2, 4],
            vec![0, 3, 4],
            vec![1, 3, 4],
            vec![2, 3, 4],
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn colex_edge_cases() {
        assert_eq!(ColexSubsets::new(3, 0).collect_all(), vec![Vec::<usize>::new()]);
        assert_eq!(ColexSubsets::new(2, 3).collect_all(), Vec::<Vec<usize>>::new());
        assert_eq!(ColexSubsets::new(3, 3).collect_all(), vec![vec![0, 1, 2]]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn colex_visits_each_subset_once_sorted(n in 1usize..10, k in 0usize..6) {
            let all = ColexSubsets::new(n, k).collect_all();
            prop_assert_eq!(all.len() as u128, binomial(n as u64, k as u64));
            for s in &all {
                prop_assert!(s.windows(2).all(|w| w[0] < w[1]));
                prop_assert!(s.iter().all(|&v| v < n));
            }
            let mut dedup = all.clone();
            dedup.sort();
            dedup.dedup();
            prop_assert_eq!(dedup.len(), all.len());
        }

        #[test]
        fn colex_order_is_monotone(n in 2usize..9, k in 1usize..5) {
            // Colex comparison: compare the reversed sorted tuples.
            let all = ColexSubsets::new(n, k).collect_all();
            for w in all.windows(2) {
                let (a, b) = (&w[0], &w[1]);
                let rev_a: Vec<usize> = a.iter().rev().copied().collect();
                let rev_b: Vec<usize> = b.iter().rev().copied().collect();
                prop_assert!(rev_a < rev_b);
            }
        }
    }
}
