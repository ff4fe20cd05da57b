//! Test-only oracles. Nothing here goes through `lifting::extend`; the
//! closed forms are built straight from the tuple formulas.
#![allow(dead_code)]

use coxlift::boolfn::BoolFunc;
use coxlift::lifting::PipelineSpec;
use coxlift::perm::Perm;

/// A two-step pipeline split into its pieces, registers `(x, y, z)` with
/// widths `(n, m, k)` packed `x | y << n | z << (n + m)`.
#[derive(Debug)]
pub struct TwoStep {
    pub n: u32,
    pub m: u32,
    pub k: u32,
    pub f: BoolFunc,
    pub g: BoolFunc,
}

impl TwoStep {
    pub fn random(widths: [u32; 3], seed: u64) -> Self {
        let [n, m, k] = widths;
        Self {
            n,
            m,
            k,
            f: BoolFunc::random(n, m, seed.wrapping_mul(2)).unwrap(),
            g: BoolFunc::random(m, k, seed.wrapping_mul(2).wrapping_add(1)).unwrap(),
        }
    }

    pub fn spec(&self) -> PipelineSpec {
        PipelineSpec::new(vec![self.n, self.m, self.k], vec![self.f.clone(), self.g.clone()])
            .unwrap()
    }

    pub fn width(&self) -> u32 {
        self.n + self.m + self.k
    }

    fn split(&self, s: u32) -> (u32, u32, u32) {
        let x = s & ((1 << self.n) - 1);
        let y = (s >> self.n) & ((1 << self.m) - 1);
        let z = s >> (self.n + self.m);
        (x, y, z)
    }

    fn join(&self, (x, y, z): (u32, u32, u32)) -> u32 {
        x | (y << self.n) | (z << (self.n + self.m))
    }

    pub fn f(&self, x: u32) -> u32 {
        self.f.table()[x as usize]
    }

    pub fn g(&self, y: u32) -> u32 {
        self.g.table()[y as usize]
    }

    /// Permutation of the basis given by a rule on `(x, y, z)`.
    pub fn closed_form(&self, rule: impl Fn(&Self, u32, u32, u32) -> (u32, u32, u32)) -> Perm {
        let mapping = (0..1u32 << self.width())
            .map(|s| {
                let (x, y, z) = self.split(s);
                self.join(rule(self, x, y, z))
            })
            .collect();
        Perm::from_mapping(self.width(), mapping).unwrap()
    }
}

/// Every width triple with entries in `lo..=hi`.
pub fn width_triples(lo: u32, hi: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in lo..=hi {
        for b in lo..=hi {
            for c in lo..=hi {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Left-regular action of `D_{2m}` on its own elements `r^k s^e`, indexed
/// `k + m e`, embedded in `2^W` points (extra points fixed). Returns the two
/// reflections `s` and `s r`, whose product has order `m`.
pub fn dihedral_reflections(m: u32) -> (Perm, Perm) {
    let size = 2 * m;
    let width = 32 - (size - 1).leading_zeros();
    let act = |twist: u32| {
        let mapping = (0..1u32 << width)
            .map(|p| {
                if p >= size {
                    return p;
                }
                let (k, e) = (p % m, p / m);
                // (s r^t) · r^k s^e = r^{-(k+t)} s^{1+e}
                let k2 = (m - (k + twist) % m) % m;
                let e2 = (e + 1) % 2;
                k2 + m * e2
            })
            .collect();
        Perm::from_mapping(width, mapping).unwrap()
    };
    (act(0), act(1))
}
