//! Binary words and their integer encoding.
//!
//! A [`Word`] is stored as its length plus the big-endian reading of its
//! letters: the leftmost letter is the most significant bit. Leading zeros are
//! significant, so `"0"` and `"00"` are different words with the same value.

use std::fmt;
use std::str::FromStr;

use crate::error::{Result, UlamError};

/// Longest word representable in a single machine word.
pub const MAX_WORD_LENGTH: u32 = 63;

/// A length-tagged code `π(w)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Code {
    pub length: u32,
    pub value: u64,
}

impl Code {
    pub fn new(length: u32, value: u64) -> Result<Self> {
        check_length(length)?;
        if value > mask(length) {
            return Err(UlamError::Range { length, value });
        }
        Ok(Code { length, value })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    length: u32,
    bits: u64,
}

#[inline]
fn mask(length: u32) -> u64 {
    (1u64 << length) - 1
}

fn check_length(length: u32) -> Result<()> {
    if length == 0 || length > MAX_WORD_LENGTH {
        Err(UlamError::Length(length))
    } else {
        Ok(())
    }
}

impl Word {
    /// Builds a word from explicit letters, index 0 being the leftmost.
    pub fn from_letters(letters: &[bool]) -> Result<Self> {
        let length = letters.len() as u32;
        check_length(length)?;
        let bits = letters.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
        Ok(Word { length, bits })
    }

    /// `decode(n, value)`: the length-`n` word whose binary reading is `value`.
    pub fn decode(length: u32, value: u64) -> Result<Self> {
        let code = Code::new(length, value)?;
        Ok(Word::from(code))
    }

    /// `0^zeros 1^ones`-style run construction: concatenates the given runs.
    pub fn from_runs(runs: &[(bool, u32)]) -> Result<Self> {
        let length: u32 = runs.iter().map(|&(_, r)| r).sum();
        check_length(length)?;
        let bits = runs.iter().fold(0u64, |acc, &(bit, run)| {
            if run == 0 {
                acc
            } else if bit {
                (acc << run) | mask(run)
            } else {
                acc << run
            }
        });
        Ok(Word { length, bits })
    }

    pub fn len(&self) -> u32 {
        self.length
    }

    /// Always false; words have at least one letter.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn encode(&self) -> Code {
        Code {
            length: self.length,
            value: self.bits,
        }
    }

    pub fn value(&self) -> u64 {
        self.bits
    }

    /// Letter at `index`, counted from the left.
    pub fn letter(&self, index: u32) -> bool {
        assert!(index < self.length, "letter index {index} out of range");
        (self.bits >> (self.length - 1 - index)) & 1 == 1
    }

    pub fn letters(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.length).map(move |i| self.letter(i))
    }

    pub fn ones(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn complement(&self) -> Word {
        Word {
            length: self.length,
            bits: !self.bits & mask(self.length),
        }
    }

    pub fn reverse(&self) -> Word {
        let bits = self.bits.reverse_bits() >> (64 - self.length);
        Word {
            length: self.length,
            bits,
        }
    }

    /// `u⌢v`. Fails only if the result would exceed [`MAX_WORD_LENGTH`].
    pub fn concat(&self, other: &Word) -> Result<Word> {
        let length = self.length + other.length;
        check_length(length)?;
        Ok(Word {
            length,
            bits: (self.bits << other.length) | other.bits,
        })
    }

    /// Prefix of `k` letters.
    pub fn prefix(&self, k: u32) -> Word {
        assert!(k >= 1 && k <= self.length);
        Word {
            length: k,
            bits: self.bits >> (self.length - k),
        }
    }

    /// Suffix of `k` letters.
    pub fn suffix(&self, k: u32) -> Word {
        assert!(k >= 1 && k <= self.length);
        Word {
            length: k,
            bits: self.bits & mask(k),
        }
    }
}

impl From<Code> for Word {
    fn from(code: Code) -> Self {
        Word {
            length: code.length,
            bits: code.value,
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.letters() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

impl FromStr for Word {
    type Err = UlamError;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(UlamError::Parse(s.to_owned()));
        }
        let letters = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(UlamError::Parse(s.to_owned())),
            })
            .collect::<Result<Vec<_>>>()?;
        Word::from_letters(&letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(
            w("110").encode(),
            Code {
                length: 3,
                value: 6
            }
        );
        for n in 1..=20 {
            let one = Word::from_runs(&[(false, n - 1), (true, 1)]).unwrap();
            assert_eq!(one.encode().value, 1);
        }
        for n in 2..=20 {
            let top = Word::from_runs(&[(true, n - 1), (false, 1)]).unwrap();
            assert_eq!(top.encode().value, (1 << n) - 2);
        }
    }

    #[test]
    fn decode_examples() {
        assert_eq!(Word::decode(4, 1).unwrap().to_string(), "0001");
        assert_eq!(Word::decode(3, 6).unwrap().to_string(), "110");
        assert_eq!(Word::decode(1, 0).unwrap().to_string(), "0");
        assert!(matches!(Word::decode(3, 8), Err(UlamError::Range { .. })));
        assert!(matches!(Word::decode(0, 0), Err(UlamError::Length(0))));
    }

    #[test]
    fn length_is_part_of_identity() {
        assert_ne!(w("0"), w("00"));
        assert_eq!(w("0").value(), w("00").value());
    }

    #[test]
    fn complement_reverse_concat_examples() {
        assert_eq!(w("0001").complement(), w("1110"));
        assert_eq!(w("01").complement(), w("10"));
        assert_eq!(w("0100110").complement().complement(), w("0100110"));
        assert_eq!(w("0011").reverse(), w("1100"));
        assert_eq!(w("010").reverse(), w("010"));
        assert_eq!(w("001").complement().reverse(), w("011"));
        assert_eq!(w("001").reverse().complement(), w("011"));
        assert_eq!(w("0").concat(&w("01")).unwrap(), w("001"));
        assert_eq!(w("01").concat(&w("0")).unwrap(), w("010"));
        assert_eq!(w("10").concat(&w("11")).unwrap().value(), 11);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!("".parse::<Word>(), Err(UlamError::Parse(_))));
        assert!(matches!("01a".parse::<Word>(), Err(UlamError::Parse(_))));
        assert!(matches!("0 1".parse::<Word>(), Err(UlamError::Parse(_))));
        assert!("1".repeat(64).parse::<Word>().is_err());
    }

    #[test]
    fn prefix_suffix() {
        let x = w("110100");
        assert_eq!(x.prefix(2), w("11"));
        assert_eq!(x.suffix(3), w("100"));
        assert_eq!(x.prefix(2).concat(&x.suffix(4)).unwrap(), x);
    }

    fn word() -> impl Strategy<Value = Word> {
        (1u32..=MAX_WORD_LENGTH)
            .prop_flat_map(|n| (Just(n), any::<u64>()))
            .prop_map(|(n, v)| Word::decode(n, v & mask(n)).unwrap())
    }

    proptest! {
        #[test]
        fn decode_encode_round_trip(n in 1u32..=MAX_WORD_LENGTH, v in any::<u64>()) {
            let v = v & mask(n);
            prop_assert_eq!(Word::decode(n, v).unwrap().encode(), Code { length: n, value: v });
        }

        #[test]
        fn text_round_trip(x in word()) {
            prop_assert_eq!(x.to_string().parse::<Word>().unwrap(), x);
            prop_assert_eq!(x.to_string().len() as u32, x.len());
        }

        #[test]
        fn complement_value(x in word()) {
            prop_assert_eq!(x.complement().value(), mask(x.len()) - x.value());
            prop_assert_eq!(x.complement().complement(), x);
        }

        #[test]
        fn reverse_involution_commutes(x in word()) {
            prop_assert_eq!(x.reverse().reverse(), x);
            prop_assert_eq!(x.reverse().complement(), x.complement().reverse());
            let rev: Vec<bool> = x.letters().collect::<Vec<_>>().into_iter().rev().collect();
            prop_assert_eq!(x.reverse(), Word::from_letters(&rev).unwrap());
        }

        #[test]
        fn concat_value(a in word(), b in word()) {
            prop_assume!(a.len() + b.len() <= MAX_WORD_LENGTH);
            let c = a.concat(&b).unwrap();
            prop_assert_eq!(c.len(), a.len() + b.len());
            prop_assert_eq!(c.value(), (a.value() << b.len()) + b.value());
        }
    }
}
