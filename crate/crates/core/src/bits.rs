//! Bitmask helpers for subsets of an indexed point set (at most 64 points).

use std::cmp::Ordering;

/// True when every bit of `a` is also set in `b`.
pub(crate) fn is_subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

/// Indices of the set bits, ascending.
pub(crate) fn indices(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

/// Canonical subset order: smaller sets first, ties broken lexicographically
/// on the ascending index lists. For equal cardinality the lex comparison is
/// decided by the smallest index where the sets differ, i.e. the lowest set
/// bit of `a ^ b`: whichever set contains it is the smaller.
pub(crate) fn canonical_mask_cmp(a: u64, b: u64) -> Ordering {
    match a.count_ones().cmp(&b.count_ones()) {
        Ordering::Equal => {
            let diff = a ^ b;
            if diff == 0 {
                Ordering::Equal
            } else if a & (diff & diff.wrapping_neg()) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn index_list(mask: u64) -> Vec<usize> {
        indices(mask).collect()
    }

    #[test]
    fn subset_and_index_basics() {
        assert!(is_subset(0b0101, 0b1101));
        assert!(!is_subset(0b0101, 0b1001));
        assert!(is_subset(0, 0));
        assert_eq!(index_list(0b1011), vec![0, 1, 3]);
        assert_eq!(index_list(0), Vec::<usize>::new());
    }

    #[test]
    fn canonical_cmp_matches_cardinality_then_lex_order() {
        // Oracle: compare (popcount, ascending index list) lexicographically.
        for a in 0u64..256 {
            for b in 0u64..256 {
                let oracle = (a.count_ones(), index_list(a)).cmp(&(b.count_ones(), index_list(b)));
                assert_eq!(canonical_mask_cmp(a, b), oracle, "a={a:#b} b={b:#b}");
            }
        }
    }
}
