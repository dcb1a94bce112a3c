//! Closed-form membership rules for special word families.
//!
//! Every predicate here is pure arithmetic and never consults the engine, so
//! they can answer for lengths far beyond what can be enumerated. Agreement
//! with the enumeration is checked in the test suites.

use std::collections::BTreeSet;

use crate::engine::UlamTable;
use crate::error::{Result, UlamError};
use crate::word::Word;

/// Gould's sequence: `2^(popcount k)`, the number of odd entries in row `k`
/// of Pascal's triangle.
pub fn gould(k: u64) -> u64 {
    1 << k.count_ones()
}

/// Parity of `C(a+b, a)` via the carry-free criterion: odd iff `a & b == 0`.
pub fn binom_is_odd(a: u64, b: u64) -> bool {
    a & b == 0
}

/// `0^a 1 0^b`
pub fn predict_single_one(a: u64, b: u64) -> bool {
    binom_is_odd(a, b)
}

/// `0^a 1² 0^b`: Ulam iff the length is odd.
pub fn predict_double_one(a: u64, b: u64) -> bool {
    (a + b) % 2 == 1
}

/// `0^a 101 0^b` with `a + b ≥ 2`: Ulam iff the length is even.
pub fn predict_101(a: u64, b: u64) -> Result<bool> {
    if a + b < 2 {
        return Err(UlamError::Domain(format!(
            "0^a1010^b rule needs a+b >= 2, got {}",
            a + b
        )));
    }
    Ok((a + b) % 2 == 1)
}

/// `0^a 1⁴ 0^b` with `a + b ≥ 1`: Ulam iff `a + b ≡ 1 (mod 4)`.
pub fn predict_quad_one(a: u64, b: u64) -> Result<bool> {
    if a + b == 0 {
        return Err(UlamError::Domain("0^a1111 0^b rule needs a+b >= 1".into()));
    }
    Ok((a + b) % 4 == 1)
}

/// `1³ 0^{n-3}`: Ulam iff `n ≡ 0, 1 (mod 4)`.
pub fn predict_triple_one_suffix(n: u64) -> Result<bool> {
    if n < 3 {
        return Err(UlamError::Domain(format!(
            "1110^(n-3) rule needs n >= 3, got {n}"
        )));
    }
    Ok(matches!(n % 4, 0 | 1))
}

/// `0^a 10101 0^b` with `a + b ≥ 1`: Ulam iff both are even and one is zero.
pub fn predict_10101(a: u64, b: u64) -> Result<bool> {
    if a + b == 0 {
        return Err(UlamError::Domain("0^a10101 0^b rule needs a+b >= 1".into()));
    }
    Ok(a.is_multiple_of(2) && b.is_multiple_of(2) && a.min(b) == 0)
}

/// A level of the discrete Sierpiński triangle recursion
/// `S₀ = {(2,1)}`, `S_{k+1} = S_k ∪ (S_k + (2^k,0)) ∪ (S_k + (2^k,2^k))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SierpinskiSet {
    level: u32,
    points: BTreeSet<(u64, u64)>,
}

impl SierpinskiSet {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn points(&self) -> &BTreeSet<(u64, u64)> {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: u64, y: u64) -> bool {
        self.points.contains(&(x, y))
    }
}

pub fn sierpinski_points(k: u32) -> SierpinskiSet {
    let mut points = BTreeSet::from([(2u64, 1u64)]);
    for level in 0..k {
        let shift = 1u64 << level;
        let shifted: Vec<_> = points
            .iter()
            .flat_map(|&(x, y)| [(x + shift, y), (x + shift, y + shift)])
            .collect();
        points.extend(shifted);
    }
    SierpinskiSet { level: k, points }
}

/// `1^y 0^{x-y}` for `1 ≤ y ≤ x`.
///
/// With Pascal's triangle rotated so its apex sits at `(2,1)`, the entry at
/// `(x,y)` is `C(x-2, y-1)`; the word is Ulam iff that entry is odd, plus the
/// single letter `1` at `(1,1)`.
pub fn predict_ones_then_zeros(x: u64, y: u64) -> Result<bool> {
    if y == 0 || y > x {
        return Err(UlamError::Domain(format!(
            "need 1 <= y <= x, got x={x} y={y}"
        )));
    }
    if x == 1 {
        return Ok(true);
    }
    if y == x {
        return Ok(false);
    }
    Ok(binom_is_odd(y - 1, x - 1 - y))
}

/// `#{a ∈ [1, n-1] : 0^a 1^{n-a} is Ulam}`, via the reverse of `1^{n-a} 0^a`.
pub fn count_zeros_then_ones(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(UlamError::Domain(format!("need n >= 2, got {n}")));
    }
    let mut count = 0;
    for a in 1..n {
        if predict_ones_then_zeros(n, n - a)? {
            count += 1;
        }
    }
    Ok(count)
}

/// One disagreement between the `0^a 1^{2^k} 0^b` rule and the enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerCounterexample {
    pub a: u32,
    pub b: u32,
    pub length: u32,
    pub engine_says_ulam: bool,
}

/// Scans `0^a 1^{2^k} 0^b` with `a, b ≥ 1` over the table's range and lists
/// every word where membership differs from `n ≡ 1 (mod 2^k)`.
pub fn check_power_conjecture(table: &UlamTable, k: u32) -> Result<Vec<PowerCounterexample>> {
    if k == 0 || k > 5 {
        return Err(UlamError::Domain(format!(
            "power exponent k={k} outside 1..=5"
        )));
    }
    let ones = 1u32 << k;
    let max = table.max_length();
    let mut out = Vec::new();
    for a in 1..max {
        for b in 1..max {
            let n = a + ones + b;
            if n > max {
                break;
            }
            let word = Word::from_runs(&[(false, a), (true, ones), (false, b)])?;
            let actual = table.is_ulam(&word)?;
            let predicted = n % ones == 1;
            if actual != predicted {
                out.push(PowerCounterexample {
                    a,
                    b,
                    length: n,
                    engine_says_ulam: actual,
                });
            }
        }
    }
    Ok(out)
}

/// Outcome of checking every closed-form family against a table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyReport {
    pub checked: u64,
    /// `(family, word)` for each disagreement.
    pub mismatches: Vec<(&'static str, Word)>,
}

/// Compares each predicate with table membership on every word of its
/// family up to the table's maximum length.
pub fn check_families(table: &UlamTable) -> Result<FamilyReport> {
    let mut report = FamilyReport::default();
    let mut check = |family: &'static str, runs: &[(bool, u32)], predicted: bool| -> Result<()> {
        let word = Word::from_runs(runs)?;
        report.checked += 1;
        if table.is_ulam(&word)? != predicted {
            report.mismatches.push((family, word));
        }
        Ok(())
    };
    for n in 1..=table.max_length() {
        let n64 = n as u64;
        for a in 0..n {
            let b = n - 1 - a;
            check(
                "0^a10^b",
                &[(false, a), (true, 1), (false, b)],
                predict_single_one(a as u64, b as u64),
            )?;
        }
        if n >= 2 {
            for a in 0..=n - 2 {
                let b = n - 2 - a;
                check(
                    "0^a110^b",
                    &[(false, a), (true, 2), (false, b)],
                    predict_double_one(a as u64, b as u64),
                )?;
            }
        }
        if n >= 5 {
            for a in 0..=n - 3 {
                let b = n - 3 - a;
                let runs = [(false, a), (true, 1), (false, 1), (true, 1), (false, b)];
                check("0^a1010^b", &runs, predict_101(a as u64, b as u64)?)?;
            }
            for a in 0..=n - 4 {
                let b = n - 4 - a;
                check(
                    "0^a11110^b",
                    &[(false, a), (true, 4), (false, b)],
                    predict_quad_one(a as u64, b as u64)?,
                )?;
            }
        }
        if n >= 3 {
            check(
                "1110^b",
                &[(true, 3), (false, n - 3)],
                predict_triple_one_suffix(n64)?,
            )?;
        }
        if n >= 6 {
            for a in 0..=n - 5 {
                let b = n - 5 - a;
                let runs = [
                    (false, a),
                    (true, 1),
                    (false, 1),
                    (true, 1),
                    (false, 1),
                    (true, 1),
                    (false, b),
                ];
                check("0^a101010^b", &runs, predict_10101(a as u64, b as u64)?)?;
            }
        }
        for y in 1..=n {
            check(
                "1^y0^(x-y)",
                &[(true, y), (false, n - y)],
                predict_ones_then_zeros(n64, y as u64)?,
            )?;
        }
    }
    Ok(report)
}
