//! XOR-lifting of non-invertible pipelines to involutions on one register space.
//!
//! A step `f: B^a -> B^b` becomes `f̂(x, y) = (x, y ⊕ f(x))` on `a + b` bits.
//! For a pipeline `f_1, ..., f_n` over registers `r_0, ..., r_n`, step `i` is
//! padded with identities on every other register, giving the involution
//! `φ_i` that replaces `r_i` by `r_i ⊕ f_i(r_{i-1})` and fixes everything else.
//! Registers are packed with `r_0` in the least significant bits.
//!
//! Steps are numbered from 1, registers from 0, so step `i` reads register
//! `i - 1` and writes register `i`.

use crate::boolfn::{mask, BoolFunc};
use crate::error::{Error, Result};
use crate::perm::{evaluate_word, Perm, MAX_PERM_WIDTH};

/// Default cap on the total register width `W`.
pub const DEFAULT_WIDTH_CAP: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineSpec {
    widths: Vec<u32>,
    steps: Vec<BoolFunc>,
}

impl PipelineSpec {
    pub fn new(widths: Vec<u32>, steps: Vec<BoolFunc>) -> Result<Self> {
        Self::with_width_cap(widths, steps, DEFAULT_WIDTH_CAP)
    }

    pub fn with_width_cap(widths: Vec<u32>, steps: Vec<BoolFunc>, cap: u32) -> Result<Self> {
        if cap > MAX_PERM_WIDTH {
            return Err(Error::Width {
                width: cap,
                cap: MAX_PERM_WIDTH,
            });
        }
        if steps.is_empty() || widths.len() < 2 {
            return Err(Error::EmptyPipeline);
        }
        if widths.len() != steps.len() + 1 {
            return Err(Error::StepCount {
                registers: widths.len(),
                steps: steps.len(),
            });
        }
        for (i, f) in steps.iter().enumerate() {
            let (want_in, want_out) = (widths[i], widths[i + 1]);
            if f.arity_in() != want_in || f.arity_out() != want_out {
                return Err(Error::StepArity {
                    step: i + 1,
                    want_in,
                    want_out,
                    got_in: f.arity_in(),
                    got_out: f.arity_out(),
                });
            }
        }
        let total: u32 = widths.iter().sum();
        if total > cap {
            return Err(Error::TotalWidth { total, cap });
        }
        Ok(Self { widths, steps })
    }

    /// Pipeline with seeded random steps; step `i` uses seed `seed + i`.
    pub fn random(widths: &[u32], seed: u64) -> Result<Self> {
        let steps = widths
            .windows(2)
            .enumerate()
            .map(|(i, w)| BoolFunc::random(w[0], w[1], seed.wrapping_add(i as u64)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(widths.to_vec(), steps)
    }

    pub fn widths(&self) -> &[u32] {
        &self.widths
    }

    pub fn steps(&self) -> &[BoolFunc] {
        &self.steps
    }

    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    pub fn total_width(&self) -> u32 {
        self.widths.iter().sum()
    }

    pub fn layout(&self) -> RegisterLayout {
        RegisterLayout::new(&self.widths)
    }

    /// The non-invertible reference: `(x, f_1(x), f_2(f_1(x)), ...)` by direct evaluation.
    pub fn eval_chain(&self, x: u32) -> Result<Vec<u32>> {
        let mut trace = Vec::with_capacity(self.widths.len());
        if x > mask(self.widths[0]) {
            return Err(Error::Domain {
                x,
                arity: self.widths[0],
            });
        }
        trace.push(x);
        let mut current = x;
        for f in &self.steps {
            current = f.eval(current)?;
            trace.push(current);
        }
        Ok(trace)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterLayout {
    offsets: Vec<u32>,
    widths: Vec<u32>,
    total_width: u32,
}

impl RegisterLayout {
    pub fn new(widths: &[u32]) -> Self {
        let mut offsets = Vec::with_capacity(widths.len());
        let mut acc = 0;
        for &w in widths {
            offsets.push(acc);
            acc += w;
        }
        Self {
            offsets,
            widths: widths.to_vec(),
            total_width: acc,
        }
    }

    pub fn offsets(&self) -> &[u32] {
        &self.offsets
    }

    pub fn widths(&self) -> &[u32] {
        &self.widths
    }

    pub fn total_width(&self) -> u32 {
        self.total_width
    }

    pub fn register_count(&self) -> usize {
        self.widths.len()
    }

    fn check_register(&self, register: usize) -> Result<()> {
        if register >= self.widths.len() {
            return Err(Error::RegisterIndex {
                register,
                registers: self.widths.len(),
            });
        }
        Ok(())
    }

    pub fn register_width(&self, register: usize) -> Result<u32> {
        self.check_register(register)?;
        Ok(self.widths[register])
    }

    /// Packs per-register values into one basis index.
    pub fn pack(&self, values: &[u32]) -> Result<u32> {
        if values.len() != self.widths.len() {
            return Err(Error::RegisterCount {
                expected: self.widths.len(),
                got: values.len(),
            });
        }
        let mut index = 0u32;
        for (register, (&value, (&off, &width))) in values
            .iter()
            .zip(self.offsets.iter().zip(&self.widths))
            .enumerate()
        {
            if value > mask(width) {
                return Err(Error::RegisterValue {
                    register,
                    value,
                    width,
                });
            }
            index |= value << off;
        }
        Ok(index)
    }

    pub fn unpack(&self, index: u32) -> Vec<u32> {
        self.offsets
            .iter()
            .zip(&self.widths)
            .map(|(&off, &w)| (index >> off) & mask(w))
            .collect()
    }

    pub fn extract(&self, index: u32, register: usize) -> Result<u32> {
        self.check_register(register)?;
        Ok((index >> self.offsets[register]) & mask(self.widths[register]))
    }
}

/// `f̂(x, y) = (x, y ⊕ f(x))` on `a + b` bits, `x` in the low `a` bits.
pub fn lift_hat(f: &BoolFunc) -> Result<Perm> {
    lift_hat_with_cap(f, DEFAULT_WIDTH_CAP)
}

pub fn lift_hat_with_cap(f: &BoolFunc, cap: u32) -> Result<Perm> {
    let (a, b) = (f.arity_in(), f.arity_out());
    let total = a + b;
    if total > cap.min(MAX_PERM_WIDTH) {
        return Err(Error::TotalWidth {
            total,
            cap: cap.min(MAX_PERM_WIDTH),
        });
    }
    Ok(Perm::from_fn(total, |s| s ^ (f.eval_masked(s) << a)))
}

/// The extended involution `φ_step` on the full register space.
pub fn extend(p: &PipelineSpec, step: usize) -> Result<Perm> {
    let n = p.step_count();
    if step == 0 || step > n {
        return Err(Error::StepIndex { step, steps: n });
    }
    let layout = p.layout();
    let f = &p.steps()[step - 1];
    let src_off = layout.offsets()[step - 1];
    let dst_off = layout.offsets()[step];
    Ok(Perm::from_fn(layout.total_width(), |s| {
        s ^ (f.eval_masked(s >> src_off) << dst_off)
    }))
}

/// `φ_n ∘ ... ∘ φ_1`.
pub fn forward_perm(p: &PipelineSpec) -> Result<Perm> {
    LiftedPipeline::new(p).map(|l| l.forward())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    /// Registers read back from the invertible evaluation.
    pub registers: Vec<u32>,
    /// The same values from direct evaluation of the non-invertible chain.
    pub reference: Vec<u32>,
}

/// Runs the pipeline invertibly from `(x, 0, ..., 0)` and checks it against
/// the direct chain.
pub fn run_classical(p: &PipelineSpec, x: u32) -> Result<Trace> {
    LiftedPipeline::new(p)?.run(x)
}

/// A pipeline together with its materialized generators `φ_1, ..., φ_n`.
#[derive(Debug, Clone)]
pub struct LiftedPipeline {
    spec: PipelineSpec,
    layout: RegisterLayout,
    generators: Vec<Perm>,
}

impl LiftedPipeline {
    pub fn new(spec: &PipelineSpec) -> Result<Self> {
        let generators = (1..=spec.step_count())
            .map(|i| extend(spec, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            layout: spec.layout(),
            spec: spec.clone(),
            generators,
        })
    }

    pub fn spec(&self) -> &PipelineSpec {
        &self.spec
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn width(&self) -> u32 {
        self.layout.total_width()
    }

    /// Word `[n-1, ..., 0]`, i.e. `φ_n ∘ ... ∘ φ_1` with 0-based symbols.
    pub fn forward_word(&self) -> Vec<usize> {
        (0..self.generators.len()).rev().collect()
    }

    pub fn forward(&self) -> Perm {
        self.evaluate(&self.forward_word())
            .expect("forward word uses valid symbols")
    }

    /// Evaluates a word of 0-based generator symbols, rightmost first.
    pub fn evaluate(&self, word: &[usize]) -> Result<Perm> {
        evaluate_word(&self.generators, word, self.width())
    }

    pub fn run(&self, x: u32) -> Result<Trace> {
        let reference = self.spec.eval_chain(x)?;
        let mut start = vec![0u32; self.layout.register_count()];
        start[0] = x;
        let initial = self.layout.pack(&start)?;
        let registers = self.layout.unpack(self.forward().apply(initial));
        assert_eq!(
            registers, reference,
            "invertible evaluation diverged from the direct chain"
        );
        Ok(Trace {
            registers,
            reference,
        })
    }
}
