//! Level-by-level enumeration of Ulam words.
//!
//! A word of length `n ≥ 2` is Ulam when it splits as `u₁⌢u₂` with both parts
//! Ulam and `u₁ ≠ u₂` in exactly one way. Level `n` therefore depends on every
//! level below it, and [`UlamTable`] builds them strictly in order.
//!
//! The sieve works on whole blocks: for a split `k` and prefix `a ∈ 𝒰_k`, the
//! codes `a·2^{n-k} + b` with `b ∈ 𝒰_{n-k}` form the contiguous block
//! `[a·2^{n-k}, (a+1)·2^{n-k})` whose bit pattern is exactly the level
//! `n-k` bitset. Two accumulators `once`/`twice` act as a saturating
//! counter; the level is `once ∖ twice`.

use crate::bitset::Bitset;
use crate::error::{Result, UlamError};
use crate::word::{Word, MAX_WORD_LENGTH};

/// Default working-memory budget for a single level build (1 GiB).
pub const DEFAULT_MEMORY_BUDGET: u64 = 1 << 30;

/// Default number of levels built by [`UlamTable::build_default`].
pub const DEFAULT_MAX_LENGTH: u32 = 24;

/// Published level sizes `#𝒰_n` for `n = 13..=30`.
pub const KNOWN_COUNTS: [(u32, u64); 18] = [
    (13, 1916),
    (14, 3812),
    (15, 7772),
    (16, 14822),
    (17, 29368),
    (18, 58478),
    (19, 114300),
    (20, 225166),
    (21, 441724),
    (22, 876238),
    (23, 1717748),
    (24, 3406884),
    (25, 6720784),
    (26, 13303332),
    (27, 26273948),
    (28, 52010642),
    (29, 102933200),
    (30, 203695342),
];

/// All Ulam words of one length, as a membership bitset over their codes.
#[derive(Clone, PartialEq, Eq)]
pub struct LevelSet {
    length: u32,
    members: Bitset,
    count: u64,
}

impl LevelSet {
    /// `𝒰₁ = {0, 1}`.
    pub fn base() -> Self {
        let mut members = Bitset::new(2);
        members.set(0);
        members.set(1);
        LevelSet {
            length: 1,
            members,
            count: 2,
        }
    }

    pub fn from_bitset(length: u32, members: Bitset) -> Result<Self> {
        if length == 0 || length > MAX_WORD_LENGTH {
            return Err(UlamError::Length(length));
        }
        if members.len() != 1u64 << length {
            return Err(UlamError::State(format!(
                "bitset of {} bits cannot hold level {length}",
                members.len()
            )));
        }
        let count = members.count_ones();
        Ok(LevelSet {
            length,
            members,
            count,
        })
    }

    /// Builds a level from explicit codes; used by tests and bindings.
    pub fn from_codes(length: u32, codes: impl IntoIterator<Item = u64>) -> Result<Self> {
        if length == 0 || length > MAX_WORD_LENGTH {
            return Err(UlamError::Length(length));
        }
        let mut members = Bitset::new(1u64 << length);
        for c in codes {
            if c >= members.len() {
                return Err(UlamError::Range { length, value: c });
            }
            members.set(c);
        }
        LevelSet::from_bitset(length, members)
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn members(&self) -> &Bitset {
        &self.members
    }

    /// Membership of code `value`; out-of-range codes are never members.
    pub fn contains(&self, value: u64) -> bool {
        value < self.members.len() && self.members.get(value)
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        w.len() == self.length && self.members.get(w.value())
    }

    /// Member codes in ascending order.
    pub fn codes(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter_ones()
    }

    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        let n = self.length;
        self.codes()
            .map(move |c| Word::decode(n, c).expect("code in range"))
    }
}

impl std::fmt::Debug for LevelSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LevelSet")
            .field("length", &self.length)
            .field("count", &self.count)
            .finish()
    }
}

/// Bytes of working memory needed to build level `n`: three level-`n`
/// bitsets plus all stored lower levels.
pub fn working_memory_bytes(n: u32) -> u64 {
    let level = |i: u32| (1u64 << i).div_ceil(8);
    3 * level(n) + (1..n).map(level).sum::<u64>()
}

#[derive(Clone, Debug)]
pub struct UlamTable {
    levels: Vec<LevelSet>,
    memory_budget: u64,
}

impl Default for UlamTable {
    fn default() -> Self {
        UlamTable::new()
    }
}

impl UlamTable {
    /// A table holding only the axiomatic level `𝒰₁`.
    pub fn new() -> Self {
        UlamTable {
            levels: vec![LevelSet::base()],
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }

    pub fn with_memory_budget(mut self, bytes: u64) -> Self {
        self.memory_budget = bytes;
        self
    }

    pub fn memory_budget(&self) -> u64 {
        self.memory_budget
    }

    /// Builds levels `1..=max_length`.
    pub fn build(max_length: u32) -> Result<Self> {
        let mut table = UlamTable::new();
        table.extend_to(max_length)?;
        Ok(table)
    }

    pub fn build_default() -> Result<Self> {
        UlamTable::build(DEFAULT_MAX_LENGTH)
    }

    /// Reassembles a table from previously computed levels `1..=N`, checking
    /// contiguity and the base level.
    pub fn from_levels(levels: Vec<LevelSet>) -> Result<Self> {
        if levels.first() != Some(&LevelSet::base()) {
            return Err(UlamError::State("level 1 must be exactly {0, 1}".into()));
        }
        for (i, l) in levels.iter().enumerate() {
            if l.length() != i as u32 + 1 {
                return Err(UlamError::State(format!(
                    "expected level {} at position {i}, found level {}",
                    i + 1,
                    l.length()
                )));
            }
        }
        Ok(UlamTable {
            levels,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        })
    }

    pub fn max_length(&self) -> u32 {
        self.levels.len() as u32
    }

    pub fn level(&self, n: u32) -> Option<&LevelSet> {
        if n == 0 {
            return None;
        }
        self.levels.get(n as usize - 1)
    }

    pub fn levels(&self) -> &[LevelSet] {
        &self.levels
    }

    pub fn into_levels(self) -> Vec<LevelSet> {
        self.levels
    }

    /// `(n, #𝒰_n)` for every stored level.
    pub fn counts(&self) -> Vec<(u32, u64)> {
        self.levels
            .iter()
            .map(|l| (l.length(), l.count()))
            .collect()
    }

    /// Computes and stores levels up to `max_length`, invoking `progress`
    /// after each new level.
    pub fn extend_to_with(
        &mut self,
        max_length: u32,
        mut progress: impl FnMut(&LevelSet),
    ) -> Result<()> {
        while self.max_length() < max_length {
            let level = self.compute_level(self.max_length() + 1)?;
            progress(&level);
            self.levels.push(level);
        }
        Ok(())
    }

    pub fn extend_to(&mut self, max_length: u32) -> Result<()> {
        self.extend_to_with(max_length, |_| {})
    }

    fn check_level_request(&self, n: u32) -> Result<()> {
        if n < 2 {
            return Err(UlamError::Domain(format!(
                "level {n} is axiomatic or empty; compute_level needs n >= 2"
            )));
        }
        if n > MAX_WORD_LENGTH {
            return Err(UlamError::Length(n));
        }
        if self.max_length() < n - 1 {
            return Err(UlamError::State(format!(
                "level {n} needs levels 1..{} but only 1..{} are built",
                n - 1,
                self.max_length()
            )));
        }
        let needed = working_memory_bytes(n);
        if needed > self.memory_budget {
            return Err(UlamError::Resource {
                length: n,
                needed,
                budget: self.memory_budget,
            });
        }
        Ok(())
    }

    /// Level `n` from levels `1..n-1`, processing splits in ascending order.
    pub fn compute_level(&self, n: u32) -> Result<LevelSet> {
        self.check_level_request(n)?;
        let order: Vec<u32> = (1..n).collect();
        self.sieve(n, &order)
    }

    /// As [`compute_level`](Self::compute_level) with an explicit split
    /// order, which must be a permutation of `1..n`.
    pub fn compute_level_with_split_order(&self, n: u32, order: &[u32]) -> Result<LevelSet> {
        self.check_level_request(n)?;
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (1..n).collect::<Vec<_>>() {
            return Err(UlamError::Domain(format!(
                "split order must be a permutation of 1..{n}"
            )));
        }
        self.sieve(n, order)
    }

    fn sieve(&self, n: u32, order: &[u32]) -> Result<LevelSet> {
        let size = 1u64 << n;
        let mut once = Bitset::new(size);
        let mut twice = Bitset::new(size);
        {
            let once = once.words_mut();
            let twice = twice.words_mut();
            for &k in order {
                let m = n - k;
                let prefixes = &self.levels[k as usize - 1];
                let suffixes = &self.levels[m as usize - 1];
                let diagonal = k == m;
                for a in prefixes.codes() {
                    let excluded = if diagonal { Some(a) } else { None };
                    accumulate_block(once, twice, a << m, suffixes.members(), m, excluded);
                }
            }
        }
        once.difference_with(&twice);
        LevelSet::from_bitset(n, once)
    }

    /// Number of splits `w = u₁⌢u₂` with both parts Ulam and `u₁ ≠ u₂`,
    /// saturating at 2.
    pub fn representation_count(&self, w: &Word) -> Result<u32> {
        let n = w.len();
        if n < 2 {
            return Err(UlamError::Domain("representations need |w| >= 2".into()));
        }
        if self.max_length() < n - 1 {
            return Err(UlamError::State(format!(
                "word of length {n} needs levels 1..{}; table has 1..{}",
                n - 1,
                self.max_length()
            )));
        }
        let mut count = 0;
        for k in 1..n {
            let (u1, u2) = (w.prefix(k), w.suffix(n - k));
            if 2 * k == n && u1 == u2 {
                continue;
            }
            if self.levels[k as usize - 1].contains_word(&u1)
                && self.levels[(n - k) as usize - 1].contains_word(&u2)
            {
                count += 1;
                if count == 2 {
                    break;
                }
            }
        }
        Ok(count)
    }

    pub fn is_ulam(&self, w: &Word) -> Result<bool> {
        match self.level(w.len()) {
            Some(level) => Ok(level.contains_word(w)),
            None => Err(UlamError::State(format!(
                "word of length {} exceeds table max length {}",
                w.len(),
                self.max_length()
            ))),
        }
    }
}

/// ORs the block `{offset + b : b ∈ src}` (minus `offset + excluded`) into the
/// saturating counter. `offset` is a multiple of `2^m`.
fn accumulate_block(
    once: &mut [u64],
    twice: &mut [u64],
    offset: u64,
    src: &Bitset,
    m: u32,
    excluded: Option<u64>,
) {
    if m >= 6 {
        let start = (offset / 64) as usize;
        let src = src.words();
        let ex = excluded.map(|e| ((e / 64) as usize, !(1u64 << (e % 64))));
        for (j, &s) in src.iter().enumerate() {
            let mut s = s;
            if let Some((ej, mask)) = ex {
                if ej == j {
                    s &= mask;
                }
            }
            let i = start + j;
            twice[i] |= once[i] & s;
            once[i] |= s;
        }
    } else {
        let mut s = src.words()[0];
        if let Some(e) = excluded {
            s &= !(1u64 << e);
        }
        let s = s << (offset % 64);
        let i = (offset / 64) as usize;
        twice[i] |= once[i] & s;
        once[i] |= s;
    }
}
