//! Todd–Coxeter coset enumeration over the trivial subgroup (HLT strategy).
//!
//! Columns: generator `i` owns column `2i` and its inverse owns `2i + 1`.
//! Cosets are processed in creation order; at each live coset every relator is
//! scanned and filled in presentation order, then any remaining empty entries
//! of that row are defined in column order. Coincidences are resolved with the
//! standard queue-based merge (smaller index survives). No lookahead.

use serde::{Deserialize, Serialize};

use super::Presentation;

pub const DEFAULT_COSET_CAP: usize = 100_000;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Enumeration {
    /// The table closed; the value is the number of live cosets (the group order).
    Finite(usize),
    /// More than `cap` cosets would have been defined.
    BoundExceeded(usize),
}

impl Enumeration {
    pub fn finite(self) -> Option<usize> {
        match self {
            Enumeration::Finite(n) => Some(n),
            Enumeration::BoundExceeded(_) => None,
        }
    }
}

struct Overflow;

struct CosetTable {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    cap: usize,
    queue: Vec<u32>,
}

impl CosetTable {
    fn new(cols: usize, cap: usize) -> Self {
        Self {
            cols,
            table: vec![NONE; cols],
            parent: vec![0],
            cap,
            queue: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.cols + x] = d;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<(), Overflow> {
        if self.len() >= self.cap {
            return Err(Overflow);
        }
        let d = self.len() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.set(c, x, d);
        self.set(d, inv(x), c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut walk = c;
        while self.parent[walk as usize] != root {
            let next = self.parent[walk as usize];
            self.parent[walk as usize] = root;
            walk = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.parent[drop as usize] = keep;
        self.queue.push(drop);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                self.set(f, inv(x), NONE);
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let ex = self.get(e1, x);
                if ex != NONE {
                    self.merge(f1, ex);
                } else {
                    let fx = self.get(f1, inv(x));
                    if fx != NONE {
                        self.merge(e1, fx);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, inv(x), e1);
                    }
                }
            }
        }
    }

    /// Traces `relator` from coset `c` in both directions, defining new cosets
    /// until the cycle closes; closes by deduction or records a coincidence.
    fn scan_and_fill(&mut self, c: u32, relator: &[usize]) -> Result<(), Overflow> {
        if relator.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i: isize = 0;
        let mut j: isize = relator.len() as isize - 1;
        loop {
            while i <= j && self.get(f, relator[i as usize]) != NONE {
                f = self.get(f, relator[i as usize]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, inv(relator[j as usize])) != NONE {
                b = self.get(b, inv(relator[j as usize]));
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = relator[i as usize];
                self.set(f, x, b);
                self.set(b, inv(x), f);
                return Ok(());
            }
            self.define(f, relator[i as usize])?;
        }
    }

    fn live_count(&self) -> usize {
        (0..self.len() as u32).filter(|&c| self.is_live(c)).count()
    }
}

fn inv(x: usize) -> usize {
    x ^ 1
}

/// Enumerates the cosets of the trivial subgroup of the presented group.
/// `coset_cap` bounds the total number of cosets ever defined.
pub fn todd_coxeter(pres: &Presentation, coset_cap: usize) -> Enumeration {
    let cols = 2 * pres.generator_count();
    if coset_cap == 0 {
        return Enumeration::BoundExceeded(0);
    }
    if cols == 0 {
        return Enumeration::Finite(1);
    }
    let relators: Vec<Vec<usize>> = pres
        .relators()
        .iter()
        .map(|r| r.expanded().into_iter().map(|g| 2 * g).collect())
        .collect();

    let mut t = CosetTable::new(cols, coset_cap);
    let mut c = 0u32;
    while (c as usize) < t.len() {
        if t.is_live(c) {
            if run_coset(&mut t, c, &relators).is_err() {
                return Enumeration::BoundExceeded(coset_cap);
            }
        }
        c += 1;
    }
    Enumeration::Finite(t.live_count())
}

fn run_coset(t: &mut CosetTable, c: u32, relators: &[Vec<usize>]) -> Result<(), Overflow> {
    for rel in relators {
        t.scan_and_fill(c, rel)?;
        if !t.is_live(c) {
            return Ok(());
        }
    }
    for x in 0..t.cols {
        if t.get(c, x) == NONE {
            t.define(c, x)?;
        }
    }
    Ok(())
}
