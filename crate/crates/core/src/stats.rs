//! Densities, gap distributions, residue profiles and growth checks over
//! computed levels.
//!
//! Count-derived quantities are kept as integers; floats appear only in the
//! accessor methods that report them.

use std::collections::BTreeMap;

use crate::bitset::Bitset;
use crate::engine::LevelSet;
use crate::error::{Result, UlamError};

/// Prime powers below 30, the moduli used for discrepancy reports.
pub const PRIME_POWERS_BELOW_30: [u64; 16] =
    [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29];

/// `ρ(n) = #𝒰_n / 2^n`.
pub fn density(level: &LevelSet) -> f64 {
    level.count() as f64 / (1u64 << level.length()) as f64
}

/// `|ρ(n) − c·n^e| / (c·n^e)`.
pub fn density_fit_error(level: &LevelSet, c: f64, e: f64) -> f64 {
    let fit = c * (level.length() as f64).powf(e);
    (density(level) - fit).abs() / fit
}

/// Summary of the gaps between consecutive member codes.
///
/// Only the histogram and exact power sums are stored; the gap sequence
/// itself is available from [`gaps`] without materialising it.
#[derive(Clone, Debug, PartialEq)]
pub struct GapStats {
    length: u32,
    word_count: u64,
    histogram: BTreeMap<u64, u64>,
    gap_sum: u64,
    gap_square_sum: u128,
    max_gap: u64,
}

/// Consecutive differences of the ascending member codes.
pub fn gaps(level: &LevelSet) -> impl Iterator<Item = u64> + '_ {
    level
        .codes()
        .scan(None, |prev: &mut Option<u64>, c| {
            let gap = prev.map(|p| c - p);
            *prev = Some(c);
            Some(gap)
        })
        .flatten()
}

pub fn gap_stats(level: &LevelSet) -> Result<GapStats> {
    if level.count() < 2 {
        return Err(UlamError::Domain(format!(
            "gap statistics need at least two members, level {} has {}",
            level.length(),
            level.count()
        )));
    }
    let mut histogram = BTreeMap::new();
    let (mut gap_sum, mut gap_square_sum, mut max_gap) = (0u64, 0u128, 0u64);
    for g in gaps(level) {
        *histogram.entry(g).or_insert(0) += 1;
        gap_sum += g;
        gap_square_sum += g as u128 * g as u128;
        max_gap = max_gap.max(g);
    }
    Ok(GapStats {
        length: level.length(),
        word_count: level.count(),
        histogram,
        gap_sum,
        gap_square_sum,
        max_gap,
    })
}

impl GapStats {
    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn histogram(&self) -> &BTreeMap<u64, u64> {
        &self.histogram
    }

    pub fn gap_count(&self) -> u64 {
        self.word_count - 1
    }

    pub fn gap_sum(&self) -> u64 {
        self.gap_sum
    }

    /// Mean gap as the exact fraction `(sum, count)`.
    pub fn mean_ratio(&self) -> (u64, u64) {
        (self.gap_sum, self.gap_count())
    }

    pub fn mean(&self) -> f64 {
        self.gap_sum as f64 / self.gap_count() as f64
    }

    /// `k·Σ(g−μ)² = k·Σg² − (Σg)²` over the `k` gaps, exact.
    fn scaled_square_deviation(&self) -> u128 {
        let k = self.gap_count() as u128;
        let s = self.gap_sum as u128;
        k * self.gap_square_sum - s * s
    }

    /// Standard deviation of the gaps with divisor `k_n`, the number of words
    /// (one more than the number of gaps). This is the convention of the
    /// published standard-deviation table.
    pub fn stddev(&self) -> f64 {
        let k = self.gap_count() as u128;
        let words = k + 1;
        (self.scaled_square_deviation() as f64 / (k * words) as f64).sqrt()
    }

    /// Population standard deviation of the gaps (divisor = number of gaps).
    pub fn population_stddev(&self) -> f64 {
        let k = self.gap_count() as u128;
        (self.scaled_square_deviation() as f64).sqrt() / k as f64
    }

    /// Sample standard deviation (divisor = number of gaps − 1).
    pub fn sample_stddev(&self) -> f64 {
        let k = self.gap_count() as u128;
        if k < 2 {
            return 0.0;
        }
        (self.scaled_square_deviation() as f64 / (k * (k - 1)) as f64).sqrt()
    }

    pub fn max_gap(&self) -> u64 {
        self.max_gap
    }

    /// Number of gaps in each residue class mod `modulus`.
    pub fn mod_profile(&self, modulus: u64) -> Result<Vec<u64>> {
        if modulus == 0 {
            return Err(UlamError::Domain("modulus must be >= 1".into()));
        }
        let mut counts = vec![0u64; modulus as usize];
        for (&g, &c) in &self.histogram {
            counts[(g % modulus) as usize] += c;
        }
        Ok(counts)
    }
}

/// `|μ_g(n) − c·n^e| / μ_g(n)`, as a fraction (multiply by 100 for percent).
///
/// Measured relative to the actual mean, which is how the published
/// relative-error table was produced.
pub fn gap_mean_fit_error(stats: &GapStats, c: f64, e: f64) -> f64 {
    let fit = c * (stats.length() as f64).powf(e);
    let mean = stats.mean();
    (mean - fit).abs() / mean
}

/// `p_n(g)`: the fraction of gaps equal to `g`.
pub fn gap_distribution(level: &LevelSet) -> Result<BTreeMap<u64, f64>> {
    let stats = gap_stats(level)?;
    let total = stats.gap_count() as f64;
    Ok(stats
        .histogram()
        .iter()
        .map(|(&g, &c)| (g, c as f64 / total))
        .collect())
}

/// Member counts per residue class of `π(w) mod N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularProfile {
    length: u32,
    modulus: u64,
    class_counts: Vec<u64>,
    total: u64,
}

impl ModularProfile {
    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn class_counts(&self) -> &[u64] {
        &self.class_counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// `ρ_{a,N}(n)`
    pub fn density(&self, residue: u64) -> f64 {
        self.class_counts[(residue % self.modulus) as usize] as f64 / self.total as f64
    }

    pub fn densities(&self) -> Vec<f64> {
        (0..self.modulus).map(|a| self.density(a)).collect()
    }

    /// Largest minus smallest class count; zero iff the discrepancy is zero.
    pub fn count_spread(&self) -> u64 {
        let max = self.class_counts.iter().max().copied().unwrap_or(0);
        let min = self.class_counts.iter().min().copied().unwrap_or(0);
        max - min
    }
}

pub fn modular_profile(level: &LevelSet, modulus: u64) -> Result<ModularProfile> {
    if modulus == 0 {
        return Err(UlamError::Domain("modulus must be >= 1".into()));
    }
    let mut class_counts = vec![0u64; modulus as usize];
    for c in level.codes() {
        class_counts[(c % modulus) as usize] += 1;
    }
    Ok(ModularProfile {
        length: level.length(),
        modulus,
        class_counts,
        total: level.count(),
    })
}

/// `d_N(n) = max_{a,b} |ρ_{a,N} − ρ_{b,N}|`.
pub fn discrepancy(profile: &ModularProfile) -> f64 {
    if profile.total == 0 {
        return 0.0;
    }
    profile.count_spread() as f64 / profile.total as f64
}

/// Largest `ℓ ≤ n` such that the member codes hit every residue mod `2^ℓ`.
///
/// The residues mod `2^(ℓ-1)` are obtained from those mod `2^ℓ` by OR-ing
/// the two halves, so one folding pass from `ℓ = n` downward suffices.
pub fn surjectivity_index(level: &LevelSet) -> u32 {
    if level.count() == 0 {
        return 0;
    }
    let n = level.length();
    let mut residues: Bitset = level.members().clone();
    let mut ell = n;
    loop {
        if residues.count_ones() == residues.len() {
            return ell;
        }
        if ell == 0 {
            return 0;
        }
        residues = fold_half(&residues);
        ell -= 1;
    }
}

fn fold_half(bits: &Bitset) -> Bitset {
    let half = bits.len() / 2;
    if half >= 64 {
        let words = bits.words();
        let h = (half / 64) as usize;
        let merged: Vec<u64> = (0..h).map(|i| words[i] | words[i + h]).collect();
        return Bitset::from_words(merged, half);
    }
    let mut out = Bitset::new(half);
    for i in bits.iter_ones() {
        out.set(i % half);
    }
    out
}

/// `α₀ = (#𝒰_{n₁} / (2(n₁+1)))^{1/n₁}`; requires `count > 2n₁ + 2`.
pub fn alpha_zero(n1: u32, count: u64) -> Result<f64> {
    if n1 == 0 {
        return Err(UlamError::Domain("n1 must be positive".into()));
    }
    let floor = 2 * (n1 as u64 + 1);
    if count <= floor {
        return Err(UlamError::Domain(format!(
            "alpha_zero needs count > 2(n1+1) = {floor}, got {count}"
        )));
    }
    Ok((count as f64 / floor as f64).powf(1.0 / n1 as f64))
}

/// Violations of the growth inequalities over a table of counts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GrowthReport {
    /// `n ≥ 6` where `#𝒰_n < 2n + 4`.
    pub linear_violations: Vec<u32>,
    /// `n` where `#𝒰_n² > Σ_{i=n}^{2n} #𝒰_i`.
    pub weak_violations: Vec<u32>,
    /// `n` where `(n+1)·max_{n≤i≤2n} #𝒰_i < #𝒰_n²`.
    pub max_violations: Vec<u32>,
    pub linear_checked: Vec<u32>,
    pub weak_checked: Vec<u32>,
}

impl GrowthReport {
    pub fn is_clean(&self) -> bool {
        self.linear_violations.is_empty()
            && self.weak_violations.is_empty()
            && self.max_violations.is_empty()
    }
}

pub fn check_growth_bounds(counts: &BTreeMap<u32, u64>) -> GrowthReport {
    let mut report = GrowthReport::default();
    for (&n, &count) in counts {
        if n >= 6 {
            report.linear_checked.push(n);
            if count < 2 * n as u64 + 4 {
                report.linear_violations.push(n);
            }
        }
        let window: Option<Vec<u64>> = (n..=2 * n).map(|i| counts.get(&i).copied()).collect();
        if let Some(window) = window {
            report.weak_checked.push(n);
            let square = count as u128 * count as u128;
            let sum: u128 = window.iter().map(|&c| c as u128).sum();
            if square > sum {
                report.weak_violations.push(n);
            }
            let max = window.iter().copied().max().unwrap_or(0) as u128;
            if (n as u128 + 1) * max < square {
                report.max_violations.push(n);
            }
        }
    }
    report
}
