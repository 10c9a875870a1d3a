//! Brute-force set-partition enumeration.
//!
//! Partitions of `{0, .., n-1}` are in bijection with restricted growth
//! strings `a` (`a[0] = 0`, `a[i] <= 1 + max(a[..i])`), where `a[i]` is the
//! block holding element `i`. This walks every such string, so it knows
//! nothing about the Stirling recurrence and serves as its oracle.

/// `counts[k]` is the number of partitions of an `n`-set into `k` blocks.
pub fn block_count_histogram(n: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n + 1];
    walk(n, 0, 0, &mut counts);
    counts
}

fn walk(n: usize, placed: usize, blocks: usize, counts: &mut [u64]) {
    if placed == n {
        counts[blocks] += 1;
        return;
    }
    // existing blocks, then a fresh one
    for block in 0..=blocks {
        walk(n, placed + 1, blocks.max(block + 1), counts);
    }
}

/// Calls `visit` with the block assignment of every partition of an `n`-set.
pub fn for_each_partition(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut assignment = vec![0usize; n];
    assign(&mut assignment, 0, 0, &mut visit);
}

fn assign(
    assignment: &mut [usize],
    placed: usize,
    blocks: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    if placed == assignment.len() {
        visit(assignment);
        return;
    }
    for block in 0..=blocks {
        assignment[placed] = block;
        assign(assignment, placed + 1, blocks.max(block + 1), visit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn small_histograms() {
        assert_eq!(block_count_histogram(0), vec![1]);
        assert_eq!(block_count_histogram(1), vec![0, 1]);
        assert_eq!(block_count_histogram(4), vec![0, 1, 7, 6, 1]);
    }

    #[test]
    fn partitions_are_distinct() {
        let mut seen = BTreeSet::new();
        for_each_partition(5, |a| {
            let mut blocks: Vec<Vec<usize>> = Vec::new();
            for (elem, &b) in a.iter().enumerate() {
                if blocks.len() <= b {
                    blocks.resize(b + 1, Vec::new());
                }
                blocks[b].push(elem);
            }
            assert!(blocks.iter().all(|b| !b.is_empty()));
            assert!(seen.insert(blocks));
        });
        assert_eq!(seen.len(), 52);
    }
}
