use std::fmt;

use crate::error::{Error, Result};

/// Largest number of wires into one gate.
pub const MAX_ARITY: usize = 16;

/// A boolean function of `arity` wires. Entry `i` is the value on the
/// assignment whose bit `t` is wire `t`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    arity: usize,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn constant(arity: usize, value: bool) -> Self {
        assert!(arity <= MAX_ARITY, "gate arity {arity} above {MAX_ARITY}");
        let mut t = Self {
            arity,
            words: vec![0; (1usize << arity).div_ceil(64)],
        };
        if value {
            for i in 0..t.len() {
                t.set(i, true);
            }
        }
        t
    }

    pub fn from_fn(arity: usize, f: impl Fn(usize) -> bool) -> Self {
        let mut t = Self::constant(arity, false);
        for i in 0..t.len() {
            if f(i) {
                t.set(i, true);
            }
        }
        t
    }

    /// Parity of all wires.
    pub fn parity(arity: usize) -> Self {
        Self::parity_of(arity, (1u64 << arity) - 1)
    }

    /// Parity of the wires selected by `mask`.
    pub fn parity_of(arity: usize, mask: u64) -> Self {
        Self::from_fn(arity, |i| (i as u64 & mask).count_ones() % 2 == 1)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        1 << self.arity
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len());
        if value {
            self.words[i >> 6] |= 1 << (i & 63);
        } else {
            self.words[i >> 6] &= !(1 << (i & 63));
        }
    }

    /// The mask `c` with `f(i) = <c, i>` for every assignment, if `f` is a
    /// parity of a subset of its wires.
    pub fn as_parity(&self) -> Option<u64> {
        if self.get(0) {
            return None;
        }
        let mask = (0..self.arity)
            .filter(|&t| self.get(1 << t))
            .fold(0u64, |acc, t| acc | (1 << t));
        (0..self.len())
            .all(|i| self.get(i) == ((i as u64 & mask).count_ones() % 2 == 1))
            .then_some(mask)
    }

    /// Fixed-width big-endian hex of the integer whose bit `i` is entry `i`.
    pub fn to_hex(&self) -> String {
        let digits = (self.len() / 4).max(1);
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let nibble = (0..4)
                .filter(|&b| 4 * d + b < self.len() && self.get(4 * d + b))
                .fold(0u32, |acc, b| acc | (1 << b));
            s.push(char::from_digit(nibble, 16).expect("nibble < 16"));
        }
        s
    }

    pub fn from_hex(arity: usize, hex: &str) -> Result<Self> {
        if arity > MAX_ARITY {
            return Err(Error::InvalidCircuit(format!(
                "gate arity {arity} above {MAX_ARITY}"
            )));
        }
        let mut t = Self::constant(arity, false);
        let digits = (t.len() / 4).max(1);
        if hex.len() != digits {
            return Err(Error::InvalidCircuit(format!(
                "truth table {hex:?} should have {digits} hex digits for arity {arity}"
            )));
        }
        for (pos, c) in hex.chars().rev().enumerate() {
            let nibble = c.to_digit(16).ok_or_else(|| {
                Error::InvalidCircuit(format!("bad hex digit {c:?} in truth table"))
            })?;
            for b in 0..4 {
                if (nibble >> b) & 1 == 1 {
                    let i = 4 * pos + b;
                    if i >= t.len() {
                        return Err(Error::InvalidCircuit(format!(
                            "truth table {hex:?} sets entries beyond arity {arity}"
                        )));
                    }
                    t.set(i, true);
                }
            }
        }
        Ok(t)
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable({}, {})", self.arity, self.to_hex())
    }
}
