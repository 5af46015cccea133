//! Exhaustive generators for the label families.

use itertools::Itertools;

use crate::normal_forms::{is_parking_function, PackedWord, ParkingFunction, Permutation};
use crate::word::Letter;

/// All `alphabet^n` words of length `n`, in lexicographic order.
pub fn all_words(n: usize, alphabet: Letter) -> Vec<Vec<Letter>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (0..n).map(|_| 1..=alphabet).multi_cartesian_product().collect()
}

/// The `n!` permutations of size `n`, lexicographically.
pub fn permutations(n: usize) -> Vec<Permutation> {
    (1..=n as Letter).permutations(n).map(Permutation::from_vec).collect()
}

/// Packed words of length `n` (ordered set partitions of `{1..n}`).
pub fn packed_words(n: usize) -> Vec<PackedWord> {
    fn go(n: usize, current: &mut Vec<Letter>, used: u64, max: Letter, out: &mut Vec<PackedWord>) {
        let remaining = n - current.len();
        let missing = max as usize - used.count_ones() as usize;
        if missing > remaining {
            return;
        }
        if remaining == 0 {
            out.push(PackedWord::from_vec(current.clone()));
            return;
        }
        // a new letter above max leaves the gap max+1..letter-1 to fill later
        for letter in 1..=n as Letter {
            let new_max = max.max(letter);
            let new_used = used | (1 << letter);
            let missing_after = new_max as usize - new_used.count_ones() as usize;
            if missing_after > remaining - 1 {
                continue;
            }
            current.push(letter);
            go(n, current, new_used, new_max, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::with_capacity(n), 0, 0, &mut out);
    out
}

/// Parking functions of length `n`.
pub fn parking_functions(n: usize) -> Vec<ParkingFunction> {
    fn go(n: usize, current: &mut Vec<Letter>, out: &mut Vec<ParkingFunction>) {
        if current.len() == n {
            if is_parking_function(current) {
                out.push(ParkingFunction::from_vec(current.clone()));
            }
            return;
        }
        for letter in 1..=n as Letter {
            current.push(letter);
            // at most n - i letters may still exceed i
            let remaining = n - current.len();
            let feasible = (1..=n).all(|i| current.iter().filter(|&&a| a as usize <= i).count() + remaining >= i);
            if feasible {
                go(n, current, out);
            }
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Integer compositions of `n`, as part vectors.
pub fn compositions(n: usize) -> Vec<Vec<Letter>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (0..1u64 << (n - 1))
        .map(|mask| {
            let mut parts = Vec::new();
            let mut part = 1;
            for i in 0..n - 1 {
                if mask >> i & 1 == 1 {
                    parts.push(part);
                    part = 1;
                } else {
                    part += 1;
                }
            }
            parts.push(part);
            parts
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_forms::pack;

    #[test]
    fn counts() {
        let packed: Vec<usize> = (1..=6).map(|n| packed_words(n).len()).collect();
        assert_eq!(packed, [1, 3, 13, 75, 541, 4683]);
        let parking: Vec<usize> = (1..=5).map(|n| parking_functions(n).len()).collect();
        assert_eq!(parking, [1, 3, 16, 125, 1296]);
        assert_eq!(permutations(5).len(), 120);
        assert_eq!(compositions(6).len(), 32);
    }

    #[test]
    fn packed_words_match_filter() {
        for n in 1..=5 {
            let filtered: Vec<Vec<Letter>> =
                all_words(n, n as Letter).into_iter().filter(|w| pack(w).as_slice() == w.as_slice()).collect();
            let generated: Vec<Vec<Letter>> = packed_words(n).iter().map(|u| u.as_slice().to_vec()).collect();
            assert_eq!(generated, filtered);
        }
    }
}
