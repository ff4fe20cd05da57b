//! Bijections of the global basis `{0, ..., 2^W - 1}`.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Hard ceiling on permutation width; `2^W` mapping entries are materialized.
pub const MAX_PERM_WIDTH: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    width: u32,
    mapping: Vec<u32>,
}

impl Perm {
    pub fn identity(width: u32) -> Result<Self> {
        check_width(width)?;
        Ok(Self {
            width,
            mapping: (0..1u32 << width).collect(),
        })
    }

    /// Builds a permutation from its image table, checking it is a bijection.
    pub fn from_mapping(width: u32, mapping: Vec<u32>) -> Result<Self> {
        check_width(width)?;
        let size = 1usize << width;
        if mapping.len() != size {
            return Err(Error::NotBijection {
                size,
                reason: format!("mapping has {} entries", mapping.len()),
            });
        }
        let mut seen = vec![false; size];
        for (i, &image) in mapping.iter().enumerate() {
            let slot = seen.get_mut(image as usize).ok_or_else(|| Error::NotBijection {
                size,
                reason: format!("point {i} maps to out-of-range {image}"),
            })?;
            if *slot {
                return Err(Error::NotBijection {
                    size,
                    reason: format!("image {image} is hit twice"),
                });
            }
            *slot = true;
        }
        Ok(Self { width, mapping })
    }

    /// Builds `s ↦ image(s)` over the whole basis. `image` must be a bijection.
    pub(crate) fn from_fn(width: u32, image: impl Fn(u32) -> u32) -> Self {
        let mapping = (0..1u32 << width).map(image).collect();
        let perm = Self { width, mapping };
        debug_assert!(Self::from_mapping(width, perm.mapping.clone()).is_ok());
        perm
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn mapping(&self) -> &[u32] {
        &self.mapping
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn apply(&self, s: u32) -> u32 {
        self.mapping[s as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    pub fn is_involution(&self) -> bool {
        self.mapping
            .iter()
            .enumerate()
            .all(|(i, &v)| self.mapping[v as usize] == i as u32)
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &Perm) -> Result<Perm> {
        if self.width != inner.width {
            return Err(Error::WidthMismatch {
                left: self.width,
                right: inner.width,
            });
        }
        Ok(self.compose_unchecked(inner))
    }

    pub(crate) fn compose_unchecked(&self, inner: &Perm) -> Perm {
        Perm {
            width: self.width,
            mapping: inner
                .mapping
                .iter()
                .map(|&s| self.mapping[s as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut mapping = vec![0u32; self.mapping.len()];
        for (i, &v) in self.mapping.iter().enumerate() {
            mapping[v as usize] = i as u32;
        }
        Perm {
            width: self.width,
            mapping,
        }
    }

    pub fn pow(&self, exponent: u64) -> Perm {
        let mut result = Perm {
            width: self.width,
            mapping: (0..self.mapping.len() as u32).collect(),
        };
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = base.compose_unchecked(&result);
            }
            base = base.compose_unchecked(&base);
            e >>= 1;
        }
        result
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        let mut visited = vec![false; self.mapping.len()];
        let mut order = 1u64;
        for start in 0..self.mapping.len() {
            if visited[start] {
                continue;
            }
            let mut len = 0u64;
            let mut s = start;
            while !visited[s] {
                visited[s] = true;
                s = self.mapping[s] as usize;
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    /// Number of points `s` with `self(s) = s`.
    pub fn fixed_points(&self) -> usize {
        self.mapping
            .iter()
            .enumerate()
            .filter(|(i, &v)| *i as u32 == v)
            .count()
    }

    /// Points moved by the permutation.
    pub fn support(&self) -> HashSet<u32> {
        self.mapping
            .iter()
            .enumerate()
            .filter(|(i, &v)| *i as u32 != v)
            .map(|(i, _)| i as u32)
            .collect()
    }
}

fn check_width(width: u32) -> Result<()> {
    if width > MAX_PERM_WIDTH {
        return Err(Error::Width {
            width,
            cap: MAX_PERM_WIDTH,
        });
    }
    Ok(())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Evaluates a word `[i_1, ..., i_k]` as `g_{i_1} ∘ ... ∘ g_{i_k}`; the
/// rightmost symbol acts first. The empty word is the identity.
pub fn evaluate_word(generators: &[Perm], word: &[usize], width: u32) -> Result<Perm> {
    let mut acc = Perm::identity(width)?;
    for &symbol in word.iter().rev() {
        let g = generators.get(symbol).ok_or(Error::RelatorSymbol {
            generator: symbol,
            count: generators.len(),
        })?;
        acc = g.compose(&acc)?;
    }
    Ok(acc)
}
