//! Dictionary-tally enumeration of Ulam words.
//!
//! This is a slow, independent route to the same sets the bitset sieve in
//! [`crate::engine`] produces. It only uses [`Word`] primitives: every ordered
//! pair of distinct lower-level words is concatenated and tallied by its text.

use std::collections::{BTreeSet, HashMap};

use crate::word::Word;

/// Level `n` given the oracle's own levels `1..n-1` (`lower[i]` is level
/// `i + 1`).
pub fn naive_level_oracle(n: u32, lower: &[BTreeSet<Word>]) -> BTreeSet<Word> {
    assert!(
        n >= 2 && lower.len() >= n as usize - 1,
        "oracle needs levels 1..{}",
        n - 1
    );
    let mut tally: HashMap<String, (Word, u32)> = HashMap::new();
    for k in 1..n {
        let left = &lower[k as usize - 1];
        let right = &lower[(n - k) as usize - 1];
        for u1 in left {
            for u2 in right {
                if u1 == u2 {
                    continue;
                }
                let joined = u1.concat(u2).expect("length within range");
                tally.entry(joined.to_string()).or_insert((joined, 0)).1 += 1;
            }
        }
    }
    tally
        .into_values()
        .filter(|&(_, c)| c == 1)
        .map(|(w, _)| w)
        .collect()
}

/// Oracle levels `1..=max_length`.
pub fn oracle_levels(max_length: u32) -> Vec<BTreeSet<Word>> {
    let base: BTreeSet<Word> = ["0", "1"].iter().map(|s| s.parse().unwrap()).collect();
    let mut levels = vec![base];
    for n in 2..=max_length {
        let next = naive_level_oracle(n, &levels);
        levels.push(next);
    }
    levels
}
