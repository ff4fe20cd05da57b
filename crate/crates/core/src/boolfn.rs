//! Total Boolean functions `B^a -> B^b` stored as explicit truth tables.
//!
//! Tuples are packed little-endian: the first component of `(x_0, x_1, ...)`
//! is bit 0 of the basis index. Table entry `i` holds `f(i)` under the same
//! packing, and XOR on packed words is componentwise XOR on tuples.

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Largest input or output width a single function may have.
pub const MAX_ARITY: u32 = 16;

/// Packs a bit tuple into a basis index, first component least significant.
pub fn pack_bits(tuple: &[bool], width: u32) -> Result<u32> {
    if tuple.len() != width as usize {
        return Err(Error::Encoding {
            expected: width,
            got: tuple.len(),
        });
    }
    if width > 32 {
        return Err(Error::Width { width, cap: 32 });
    }
    Ok(tuple
        .iter()
        .enumerate()
        .fold(0u32, |acc, (j, &bit)| acc | (u32::from(bit) << j)))
}

/// Inverse of [`pack_bits`]; bits of `index` above `width` are ignored.
pub fn unpack_bits(index: u32, width: u32) -> Vec<bool> {
    (0..width).map(|j| (index >> j) & 1 == 1).collect()
}

pub(crate) fn mask(width: u32) -> u32 {
    if width >= 32 {
        u32::MAX
    } else {
        (1u32 << width) - 1
    }
}

fn check_arity(width: u32) -> Result<()> {
    if width == 0 || width > MAX_ARITY {
        return Err(Error::Width {
            width,
            cap: MAX_ARITY,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoolFunc {
    arity_in: u32,
    arity_out: u32,
    table: Vec<u32>,
}

impl BoolFunc {
    /// Validating constructor. Rejects zero or over-cap arities, a table whose
    /// length is not `2^arity_in`, and entries that do not fit `arity_out` bits.
    pub fn new(arity_in: u32, arity_out: u32, table: Vec<u32>) -> Result<Self> {
        check_arity(arity_in)?;
        check_arity(arity_out)?;
        let expected = 1usize << arity_in;
        if table.len() != expected {
            return Err(Error::TableLength {
                arity_in,
                expected,
                got: table.len(),
            });
        }
        if let Some((index, &value)) = table
            .iter()
            .enumerate()
            .find(|(_, &v)| v > mask(arity_out))
        {
            return Err(Error::EntryOutOfRange {
                index,
                value,
                arity_out,
            });
        }
        Ok(Self {
            arity_in,
            arity_out,
            table,
        })
    }

    pub fn identity(width: u32) -> Result<Self> {
        check_arity(width)?;
        Self::new(width, width, (0..1u32 << width).collect())
    }

    pub fn constant(arity_in: u32, arity_out: u32, value: u32) -> Result<Self> {
        check_arity(arity_in)?;
        Self::new(arity_in, arity_out, vec![value; 1usize << arity_in])
    }

    /// Deterministic pseudo-random function: entry `x` is the `x`-th draw of
    /// `SplitMix64::new(seed).bits(arity_out)`.
    pub fn random(arity_in: u32, arity_out: u32, seed: u64) -> Result<Self> {
        check_arity(arity_in)?;
        check_arity(arity_out)?;
        let mut rng = SplitMix64::new(seed);
        let table = (0..1usize << arity_in)
            .map(|_| rng.bits(arity_out))
            .collect();
        Self::new(arity_in, arity_out, table)
    }

    pub fn arity_in(&self) -> u32 {
        self.arity_in
    }

    pub fn arity_out(&self) -> u32 {
        self.arity_out
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn eval(&self, x: u32) -> Result<u32> {
        self.table.get(x as usize).copied().ok_or(Error::Domain {
            x,
            arity: self.arity_in,
        })
    }

    /// `f(x)` for an `x` already known to be in range (masked to the domain).
    pub(crate) fn eval_masked(&self, x: u32) -> u32 {
        self.table[(x & mask(self.arity_in)) as usize]
    }

    /// True when every entry is zero, so the lifted involution is the identity.
    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|&v| v == 0)
    }

    /// `self ∘ inner`, i.e. `x ↦ self(inner(x))`.
    pub fn compose(&self, inner: &BoolFunc) -> Result<BoolFunc> {
        if inner.arity_out != self.arity_in {
            return Err(Error::Compose {
                inner_out: inner.arity_out,
                outer_in: self.arity_in,
            });
        }
        let table = inner
            .table
            .iter()
            .map(|&y| self.table[y as usize])
            .collect();
        Ok(BoolFunc {
            arity_in: inner.arity_in,
            arity_out: self.arity_out,
            table,
        })
    }
}
