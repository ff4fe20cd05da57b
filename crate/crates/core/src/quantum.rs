//! Permutation unitaries on the `W`-qubit register space.
//!
//! Every group element `ψ` acts on basis states by its permutation, and the
//! linear extension `U_ψ` is a permutation matrix. States are sparse maps from
//! basis index to amplitude, so applying `U_ψ` just relabels the support.

use std::collections::{BTreeMap, HashSet};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lifting::RegisterLayout;
use crate::perm::Perm;
use crate::permgroup::GroupClosure;
use crate::rng::SplitMix64;

/// Tolerance for amplitude and norm comparisons.
pub const AMPLITUDE_TOLERANCE: f64 = 1e-12;
/// Amplitudes with magnitude below this are dropped.
pub const PRUNE_THRESHOLD: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QState {
    width: u32,
    amplitudes: BTreeMap<u32, Complex64>,
}

impl QState {
    /// Normalizes and prunes the given amplitudes. Fails on a zero vector or
    /// out-of-range index.
    pub fn from_amplitudes(
        width: u32,
        amplitudes: impl IntoIterator<Item = (u32, Complex64)>,
    ) -> Result<Self> {
        let size = 1u64 << width;
        let mut map = BTreeMap::new();
        for (i, a) in amplitudes {
            if u64::from(i) >= size {
                return Err(Error::State(format!(
                    "basis index {i} outside a {width}-qubit space"
                )));
            }
            *map.entry(i).or_insert(Complex64::new(0.0, 0.0)) += a;
        }
        let norm = map.values().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::State("state has zero or non-finite norm".into()));
        }
        let amplitudes = map
            .into_iter()
            .map(|(i, a)| (i, a / norm))
            .filter(|(_, a)| a.norm() >= PRUNE_THRESHOLD)
            .collect();
        Ok(Self { width, amplitudes })
    }

    pub fn basis(width: u32, index: u32) -> Result<Self> {
        Self::from_amplitudes(width, [(index, Complex64::new(1.0, 0.0))])
    }

    /// Random state on `support` distinct basis indices; real and imaginary
    /// parts are drawn uniformly from `[-1, 1)` before normalizing.
    pub fn random(width: u32, support: usize, seed: u64) -> Result<Self> {
        let size = 1u64 << width;
        let support = support.clamp(1, size as usize);
        let mut rng = SplitMix64::new(seed);
        let mut chosen = BTreeMap::new();
        while chosen.len() < support {
            let index = rng.below(size) as u32;
            let re = 2.0 * rng.unit_f64() - 1.0;
            let im = 2.0 * rng.unit_f64() - 1.0;
            chosen.entry(index).or_insert(Complex64::new(re, im));
        }
        Self::from_amplitudes(width, chosen)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn amplitudes(&self) -> &BTreeMap<u32, Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: u32) -> Complex64 {
        self.amplitudes
            .get(&index)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .values()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Same support and every amplitude within `tol`.
    pub fn approx_eq(&self, other: &QState, tol: f64) -> bool {
        self.width == other.width
            && self.amplitudes.len() == other.amplitudes.len()
            && self
                .amplitudes
                .iter()
                .all(|(i, a)| (a - other.amplitude(*i)).norm() <= tol)
            && other.amplitudes.keys().all(|i| self.amplitudes.contains_key(i))
    }
}

/// `|values_0⟩|values_1⟩...` packed by the layout.
pub fn basis_state(layout: &RegisterLayout, values: &[u32]) -> Result<QState> {
    QState::basis(layout.total_width(), layout.pack(values)?)
}

/// Replaces register `register` (which must be 0 in every term of `base`)
/// by an equal superposition of all its values.
pub fn uniform_superposition(
    layout: &RegisterLayout,
    register: usize,
    base: &QState,
) -> Result<QState> {
    let width = layout.register_width(register)?;
    if base.width() != layout.total_width() {
        return Err(Error::WidthMismatch {
            left: base.width(),
            right: layout.total_width(),
        });
    }
    if base.amplitudes().len() != 1 {
        return Err(Error::State("base must be a single basis state".into()));
    }
    let (&index, &amp) = base.amplitudes().iter().next().expect("one term");
    if layout.extract(index, register)? != 0 {
        return Err(Error::State(format!(
            "register {register} of the base state is not zero"
        )));
    }
    let offset = layout.offsets()[register];
    let scale = (f64::from(1u32 << width)).sqrt().recip();
    let terms = (0..1u32 << width).map(|v| (index | (v << offset), amp * scale));
    QState::from_amplitudes(layout.total_width(), terms)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermUnitary {
    perm: Perm,
}

impl PermUnitary {
    pub fn new(perm: Perm) -> Self {
        Self { perm }
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn width(&self) -> u32 {
        self.perm.width()
    }

    pub fn adjoint(&self) -> PermUnitary {
        PermUnitary::new(self.perm.inverse())
    }

    /// `U_ψ |i⟩ = |ψ(i)⟩`, extended linearly.
    pub fn apply(&self, s: &QState) -> Result<QState> {
        if s.width() != self.width() {
            return Err(Error::WidthMismatch {
                left: self.width(),
                right: s.width(),
            });
        }
        Ok(QState {
            width: s.width,
            amplitudes: s
                .amplitudes
                .iter()
                .map(|(&i, &a)| (self.perm.apply(i), a))
                .collect(),
        })
    }
}

pub fn apply(u: &PermUnitary, s: &QState) -> Result<QState> {
    u.apply(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementResult {
    pub register: usize,
    #[serde(deserialize_with = "crate::keyed::deserialize")]
    pub counts: BTreeMap<u32, u64>,
    pub seed: u64,
    pub shots: u64,
}

/// Exact marginal distribution of one register's value.
pub fn marginal(s: &QState, layout: &RegisterLayout, register: usize) -> Result<BTreeMap<u32, f64>> {
    layout.register_width(register)?;
    let mut dist = BTreeMap::new();
    for (&i, a) in s.amplitudes() {
        *dist.entry(layout.extract(i, register)?).or_insert(0.0) += a.norm_sqr();
    }
    Ok(dist)
}

/// Samples `shots` independent measurements of one register. Each shot draws
/// `u = SplitMix64(seed).unit_f64()` and returns the first value (ascending)
/// whose cumulative probability exceeds `u`.
pub fn measure(
    s: &QState,
    layout: &RegisterLayout,
    register: usize,
    seed: u64,
    shots: u64,
) -> Result<MeasurementResult> {
    if shots == 0 {
        return Err(Error::State("shots must be at least 1".into()));
    }
    let dist = marginal(s, layout, register)?;
    let total: f64 = dist.values().sum();
    let mut cumulative = Vec::with_capacity(dist.len());
    let mut acc = 0.0;
    for (&v, &p) in &dist {
        acc += p / total;
        cumulative.push((v, acc));
    }
    let mut rng = SplitMix64::new(seed);
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        let u = rng.unit_f64();
        let value = cumulative
            .iter()
            .find(|(_, c)| u < *c)
            .or(cumulative.last())
            .map(|(v, _)| *v)
            .expect("nonempty state");
        *counts.entry(value).or_insert(0) += 1;
    }
    Ok(MeasurementResult {
        register,
        counts,
        seed,
        shots,
    })
}

/// Groups up to this order are checked on every pair.
pub const EXHAUSTIVE_PAIR_LIMIT: usize = 64;
/// Pairs sampled for larger groups.
pub const SAMPLED_PAIRS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationReport {
    pub group_order: usize,
    pub exhaustive: bool,
    pub pairs_checked: usize,
    pub states_per_pair: usize,
    /// Pairs `(a, b)` where `U_{a∘b} s ≠ U_a U_b s` for some trial state.
    pub homomorphism_failures: Vec<(usize, usize)>,
    /// Pairs of distinct elements with identical unitaries.
    pub injectivity_failures: Vec<(usize, usize)>,
    /// Elements whose unitary changed a norm or failed `U† U = I`.
    pub unitarity_failures: Vec<usize>,
}

impl RepresentationReport {
    pub fn passed(&self) -> bool {
        self.homomorphism_failures.is_empty()
            && self.injectivity_failures.is_empty()
            && self.unitarity_failures.is_empty()
    }
}

/// Checks that `ψ ↦ U_ψ` is a faithful unitary representation of the closure.
pub fn representation_check(g: &GroupClosure, trials: usize, seed: u64) -> Result<RepresentationReport> {
    let order = g.order();
    let width = g.element(0)?.width();
    let unitaries: Vec<PermUnitary> = g.elements().cloned().map(PermUnitary::new).collect();
    let mut rng = SplitMix64::new(seed);
    let support = (1usize << width).min(8);
    let fresh_state = |rng: &mut SplitMix64| QState::random(width, support, rng.next_u64());

    let pairs: Vec<(usize, usize)> = if order <= EXHAUSTIVE_PAIR_LIMIT {
        (0..order).flat_map(|a| (0..order).map(move |b| (a, b))).collect()
    } else {
        (0..SAMPLED_PAIRS)
            .map(|_| {
                (
                    rng.below(order as u64) as usize,
                    rng.below(order as u64) as usize,
                )
            })
            .collect()
    };

    let mut homomorphism_failures = Vec::new();
    for &(a, b) in &pairs {
        let ab = g.product(a, b)?;
        for _ in 0..trials {
            let s = fresh_state(&mut rng)?;
            let direct = unitaries[ab].apply(&s)?;
            let staged = unitaries[a].apply(&unitaries[b].apply(&s)?)?;
            if !direct.approx_eq(&staged, AMPLITUDE_TOLERANCE) {
                homomorphism_failures.push((a, b));
                break;
            }
        }
    }

    let mut injectivity_failures = Vec::new();
    let mut seen: HashSet<&[u32]> = HashSet::new();
    for (i, u) in unitaries.iter().enumerate() {
        if !seen.insert(u.perm().mapping()) {
            let j = unitaries[..i]
                .iter()
                .position(|v| v == u)
                .expect("duplicate was seen");
            injectivity_failures.push((j, i));
        }
    }

    let mut unitarity_failures = Vec::new();
    for (i, u) in unitaries.iter().enumerate() {
        let adjoint = u.adjoint();
        let mut ok = true;
        for _ in 0..trials.max(1) {
            let s = fresh_state(&mut rng)?;
            let out = u.apply(&s)?;
            let back = adjoint.apply(&out)?;
            if (out.norm() - 1.0).abs() > AMPLITUDE_TOLERANCE || !back.approx_eq(&s, AMPLITUDE_TOLERANCE) {
                ok = false;
            }
        }
        if !ok {
            unitarity_failures.push(i);
        }
    }

    Ok(RepresentationReport {
        group_order: order,
        exhaustive: order <= EXHAUSTIVE_PAIR_LIMIT,
        pairs_checked: pairs.len(),
        states_per_pair: trials,
        homomorphism_failures,
        injectivity_failures,
        unitarity_failures,
    })
}
