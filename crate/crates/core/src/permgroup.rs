//! Explicit closure of the group generated by a set of permutations.
//!
//! Elements are discovered breadth-first from the identity by right
//! multiplication `e ↦ e ∘ g_i`, scanning elements in discovery order and
//! generators in index order. Each element is therefore stored with the
//! lexicographically least among its shortest generator words, where a word
//! `[i_1, ..., i_k]` denotes `g_{i_1} ∘ ... ∘ g_{i_k}`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;

pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

#[derive(Debug)]
pub struct GroupClosure {
    elements: IndexSet<Perm>,
    words: Vec<Vec<usize>>,
    generator_count: usize,
    /// `right[e][i]` is the index of `elements[e] ∘ g_i`.
    right: Vec<Vec<u32>>,
    cayley: OnceLock<Vec<Vec<u32>>>,
}

/// Enumerates `⟨generators⟩`, failing with [`Error::ElementCap`] once more
/// than `element_cap` elements would be stored.
pub fn closure(generators: &[Perm], element_cap: usize) -> Result<GroupClosure> {
    let first = generators.first().ok_or(Error::NoGenerators)?;
    let width = first.width();
    if let Some(g) = generators.iter().find(|g| g.width() != width) {
        return Err(Error::WidthMismatch {
            left: width,
            right: g.width(),
        });
    }
    if element_cap == 0 {
        return Err(Error::ElementCap { cap: 0 });
    }

    let mut elements = IndexSet::new();
    elements.insert(Perm::identity(width)?);
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut right: Vec<Vec<u32>> = Vec::new();

    let mut cursor = 0;
    while cursor < elements.len() {
        let mut row = Vec::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            let product = elements[cursor].compose_unchecked(g);
            let (index, inserted) = match elements.get_index_of(&product) {
                Some(index) => (index, false),
                None => {
                    if elements.len() >= element_cap {
                        return Err(Error::ElementCap { cap: element_cap });
                    }
                    elements.insert_full(product)
                }
            };
            if inserted {
                let mut word = words[cursor].clone();
                word.push(i);
                words.push(word);
            }
            row.push(index as u32);
        }
        right.push(row);
        cursor += 1;
    }

    Ok(GroupClosure {
        elements,
        words,
        generator_count: generators.len(),
        right,
        cayley: OnceLock::new(),
    })
}

impl GroupClosure {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn element(&self, index: usize) -> Result<&Perm> {
        self.elements.get_index(index).ok_or(Error::ElementIndex {
            index,
            order: self.order(),
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = &Perm> {
        self.elements.iter()
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.elements.get_index_of(p)
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    /// Shortest word for an element, ties broken lexicographically.
    pub fn shortest_word(&self, index: usize) -> Result<&[usize]> {
        self.words
            .get(index)
            .map(Vec::as_slice)
            .ok_or(Error::ElementIndex {
                index,
                order: self.order(),
            })
    }

    /// Index of the generator `g_i` itself.
    pub fn generator_index(&self, i: usize) -> Option<usize> {
        self.right.first()?.get(i).map(|&x| x as usize)
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn product(&self, a: usize, b: usize) -> Result<usize> {
        self.element(a)?;
        let word = self.shortest_word(b)?;
        Ok(word
            .iter()
            .fold(a, |acc, &g| self.right[acc][g] as usize))
    }

    pub fn inverse(&self, a: usize) -> Result<usize> {
        let inv = self.element(a)?.inverse();
        Ok(self
            .index_of(&inv)
            .expect("closure is closed under inverses"))
    }

    /// Full multiplication table, `cayley()[a][b] = index(a ∘ b)`.
    pub fn cayley(&self) -> &[Vec<u32>] {
        self.cayley.get_or_init(|| {
            (0..self.order())
                .map(|a| {
                    (0..self.order())
                        .map(|b| self.product(a, b).expect("valid indices") as u32)
                        .collect()
                })
                .collect()
        })
    }

    pub fn element_order(&self, index: usize) -> Result<u64> {
        Ok(self.element(index)?.order())
    }

    /// Element order → number of elements of that order.
    pub fn order_histogram(&self) -> BTreeMap<u64, usize> {
        let mut hist = BTreeMap::new();
        for p in &self.elements {
            *hist.entry(p.order()).or_insert(0) += 1;
        }
        hist
    }

    /// Size of the subgroup generated by the listed element indices.
    fn generated_order(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.order()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(e) = stack.pop() {
            for &g in gens {
                let next = self.product(e, g).expect("valid indices");
                if !seen[next] {
                    seen[next] = true;
                    count += 1;
                    stack.push(next);
                }
            }
        }
        count
    }

    /// Looks for `A` of order 4 and `B` of order 2 with `BAB = A⁻¹` and
    /// `⟨A, B⟩` the whole group, which happens iff the group is `D_8`. For a
    /// two-generator closure the pair `A = g_1 ∘ g_2`, `B = g_2` is tried first.
    pub fn dihedral_8_witness(&self) -> Option<DihedralWitness> {
        if self.order() != 8 {
            return None;
        }
        let is_witness = |a, b| self.is_dihedral_pair(a, b);

        if self.generator_count == 2 {
            let g1 = self.generator_index(0)?;
            let g2 = self.generator_index(1)?;
            let a = self.product(g1, g2).ok()?;
            if is_witness(a, g2) {
                return Some(DihedralWitness {
                    a,
                    b: g2,
                    generator_form: true,
                });
            }
        }
        for a in 0..8 {
            for b in 0..8 {
                if is_witness(a, b) {
                    return Some(DihedralWitness {
                        a,
                        b,
                        generator_form: false,
                    });
                }
            }
        }
        None
    }

    fn is_dihedral_pair(&self, a: usize, b: usize) -> bool {
        if self.elements[a].order() != 4 || self.elements[b].order() != 2 {
            return false;
        }
        let (Ok(ba), Ok(a_inv)) = (self.product(b, a), self.inverse(a)) else {
            return false;
        };
        self.product(ba, b).ok() == Some(a_inv) && self.generated_order(&[a, b]) == 8
    }

    pub fn is_dihedral_8(&self) -> bool {
        self.dihedral_8_witness().is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DihedralWitness {
    /// Element index of the order-4 rotation.
    pub a: usize,
    /// Element index of the order-2 reflection.
    pub b: usize,
    /// True when `A = g_1 ∘ g_2` and `B = g_2`.
    pub generator_form: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DegeneracyIssue {
    /// Generator (0-based) is the identity permutation.
    IdentityGenerator { generator: usize },
    /// Two generators are the same permutation.
    DuplicateGenerators { first: usize, second: usize },
    /// Generator does not square to the identity.
    NotInvolution { generator: usize, order: u64 },
    /// `g_k ∘ g_{k+1}` does not have order 4.
    AdjacentOrder { first: usize, order: u64 },
}

/// Problems that keep the generators from forming a distinct set of
/// non-trivial involutions (the Coxeter precondition).
pub fn involution_issues(generators: &[Perm]) -> Vec<DegeneracyIssue> {
    let mut issues = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        if g.is_identity() {
            issues.push(DegeneracyIssue::IdentityGenerator { generator: i });
        } else if !g.is_involution() {
            issues.push(DegeneracyIssue::NotInvolution {
                generator: i,
                order: g.order(),
            });
        }
    }
    for i in 0..generators.len() {
        for j in i + 1..generators.len() {
            if generators[i] == generators[j] {
                issues.push(DegeneracyIssue::DuplicateGenerators {
                    first: i,
                    second: j,
                });
            }
        }
    }
    issues
}

/// [`involution_issues`] plus any adjacent product whose order is not 4.
/// An empty result means the generators are nondegenerate.
pub fn nondegeneracy_issues(generators: &[Perm]) -> Vec<DegeneracyIssue> {
    let mut issues = involution_issues(generators);
    for (k, pair) in generators.windows(2).enumerate() {
        if let Ok(prod) = pair[0].compose(&pair[1]) {
            let order = prod.order();
            if order != 4 {
                issues.push(DegeneracyIssue::AdjacentOrder { first: k, order });
            }
        }
    }
    issues
}

pub fn is_nondegenerate(generators: &[Perm]) -> bool {
    nondegeneracy_issues(generators).is_empty()
}
