//! Coxeter matrices, chain presentations, and the check that a lifted
//! pipeline's concrete group really is the presented Coxeter group.
//!
//! For an `n`-step pipeline the claimed presentation on `s_1, ..., s_n` is
//!
//! - `s_i^2` for every `i`,
//! - `(s_k s_{k+1})^4` for adjacent steps,
//! - `(s_p s_q)^2` whenever `|p - q| >= 2`.
//!
//! The concrete group always satisfies these relations, so it is a quotient
//! of the presented group. [`verify_pipeline`] decides whether the quotient is
//! an isomorphism by comparing the concrete order with a coset enumeration.

mod coset;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use coset::{todd_coxeter, Enumeration, DEFAULT_COSET_CAP};

use crate::error::{Error, Result};
use crate::lifting::{LiftedPipeline, PipelineSpec};
use crate::perm::{evaluate_word, Perm};
use crate::permgroup::{closure, involution_issues, DegeneracyIssue};

/// Matrix entry meaning "no relation" (`m_ij = ∞`).
pub const INFINITE: u64 = 0;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterMatrix {
    entries: Vec<Vec<u64>>,
}

impl CoxeterMatrix {
    /// Validates unit diagonal, symmetry and off-diagonal entries `>= 2`
    /// (or [`INFINITE`]).
    pub fn new(entries: Vec<Vec<u64>>) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::GeneratorCount {
                    expected: n,
                    got: row.len(),
                });
            }
            for (j, &m) in row.iter().enumerate() {
                let ok = if i == j {
                    m == 1
                } else {
                    (m == INFINITE || m >= 2) && entries[j][i] == m
                };
                if !ok {
                    return Err(Error::State(format!(
                        "invalid Coxeter entry m[{i}][{j}] = {m}"
                    )));
                }
            }
        }
        Ok(Self { entries })
    }

    /// Empirical matrix: `m_ij` is the order of `g_i ∘ g_j`.
    ///
    /// Fails with the list of offenders unless the generators are distinct,
    /// non-identity involutions.
    pub fn from_generators(
        generators: &[Perm],
    ) -> std::result::Result<Self, Vec<DegeneracyIssue>> {
        let issues = involution_issues(generators);
        if !issues.is_empty() {
            return Err(issues);
        }
        Ok(Self {
            entries: pair_orders(generators),
        })
    }

    /// The matrix claimed for an `n`-step pipeline: 4 on adjacent pairs, 2 elsewhere.
    pub fn chain(n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.abs_diff(j) {
                        0 => 1,
                        1 => 4,
                        _ => 2,
                    })
                    .collect()
            })
            .collect();
        Self { entries }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    /// `⟨s_i | (s_i s_j)^{m_ij}⟩`: squares first, then pairs `i < j` in row order.
    /// Infinite entries contribute no relator.
    pub fn presentation(&self) -> Presentation {
        let n = self.rank();
        let mut relators: Vec<Relator> = (0..n).map(|i| Relator::new(vec![i], 2)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let m = self.entries[i][j];
                if m != INFINITE {
                    relators.push(Relator::new(vec![i, j], m as u32));
                }
            }
        }
        Presentation {
            generator_count: n,
            relators,
        }
    }
}

/// `base^exponent` as a word over generator symbols `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relator {
    pub base: Vec<usize>,
    pub exponent: u32,
}

impl Relator {
    pub fn new(base: Vec<usize>, exponent: u32) -> Self {
        Self { base, exponent }
    }

    pub fn expanded(&self) -> Vec<usize> {
        self.base
            .iter()
            .copied()
            .cycle()
            .take(self.base.len() * self.exponent as usize)
            .collect()
    }
}

impl fmt::Display for Relator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base: String = self.base.iter().map(|g| format!("s{}", g + 1)).collect();
        match (self.base.len(), self.exponent) {
            (_, 1) => write!(f, "{base}"),
            (1, e) => write!(f, "{base}^{e}"),
            (_, e) => write!(f, "({base})^{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    generator_count: usize,
    relators: Vec<Relator>,
}

impl Presentation {
    pub fn new(generator_count: usize, relators: Vec<Relator>) -> Result<Self> {
        if relators.is_empty() {
            return Err(Error::State("presentation has no relators".into()));
        }
        for r in &relators {
            if let Some(&generator) = r.base.iter().find(|&&g| g >= generator_count) {
                return Err(Error::RelatorSymbol {
                    generator,
                    count: generator_count,
                });
            }
        }
        Ok(Self {
            generator_count,
            relators,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (1..=self.generator_count).map(|i| format!("s{i}")).collect();
        let rels: Vec<String> = self.relators.iter().map(|r| r.to_string()).collect();
        write!(f, "⟨{} | {}⟩", gens.join(", "), rels.join(", "))
    }
}

/// Chain presentation for `n >= 1` steps, in the order squares, adjacent
/// pairs, then non-adjacent pairs `(p, q)` with `p < q` lexicographically.
fn chain_presentation(n: usize) -> Presentation {
    let mut relators: Vec<Relator> = (0..n).map(|i| Relator::new(vec![i], 2)).collect();
    relators.extend((0..n.saturating_sub(1)).map(|k| Relator::new(vec![k, k + 1], 4)));
    for p in 0..n {
        for q in p + 2..n {
            relators.push(Relator::new(vec![p, q], 2));
        }
    }
    Presentation {
        generator_count: n,
        relators,
    }
}

/// The claimed Coxeter presentation of the group of an `n`-step pipeline.
pub fn paper_presentation(n: usize) -> Result<Presentation> {
    if n < 2 {
        return Err(Error::PresentationSize { min: 2, got: n });
    }
    Ok(chain_presentation(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub relator: Relator,
    pub holds: bool,
}

/// Evaluates every relator on the concrete generators and compares with the identity.
pub fn relations_hold(generators: &[Perm], pres: &Presentation) -> Result<Vec<RelationCheck>> {
    if generators.len() != pres.generator_count() {
        return Err(Error::GeneratorCount {
            expected: pres.generator_count(),
            got: generators.len(),
        });
    }
    let width = generators.first().ok_or(Error::NoGenerators)?.width();
    pres.relators()
        .iter()
        .map(|r| {
            let p = evaluate_word(generators, &r.expanded(), width)?;
            Ok(RelationCheck {
                relator: r.clone(),
                holds: p.is_identity(),
            })
        })
        .collect()
}

fn pair_orders(generators: &[Perm]) -> Vec<Vec<u64>> {
    generators
        .iter()
        .map(|a| {
            generators
                .iter()
                .map(|b| a.compose_unchecked(b).order())
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// Relations hold and the presented group has the concrete order: isomorphic.
    Confirmed,
    /// Relations hold but the presented group is strictly larger.
    ProperQuotient,
    /// Coset enumeration hit its cap before closing.
    BoundExceeded,
    /// Some generator is the identity, repeated, or not an involution.
    Degenerate,
    /// A claimed relation fails on the concrete generators.
    RelationsViolated,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Confirmed => "CONFIRMED",
            Verdict::ProperQuotient => "PROPER_QUOTIENT",
            Verdict::BoundExceeded => "BOUND_EXCEEDED",
            Verdict::Degenerate => "DEGENERATE",
            Verdict::RelationsViolated => "RELATIONS_VIOLATED",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub steps: usize,
    pub relations_hold: bool,
    pub relations: Vec<RelationCheck>,
    pub concrete_order: usize,
    /// `None` when enumeration was skipped because the generators are degenerate.
    pub abstract_order: Option<Enumeration>,
    pub verdict: Verdict,
    /// Orders of all pairwise products `g_i ∘ g_j`.
    pub pair_orders: Vec<Vec<u64>>,
    pub empirical_matrix: Option<CoxeterMatrix>,
    pub claimed_matrix: CoxeterMatrix,
    /// Off-diagonal `(i, j, empirical, claimed)` where the two matrices differ.
    pub mismatches: Vec<(usize, usize, u64, u64)>,
    pub degeneracy: Vec<DegeneracyIssue>,
    pub note: String,
}

/// Lifts the pipeline, enumerates its concrete group, and tests it against the
/// claimed chain presentation.
pub fn verify_pipeline(
    p: &PipelineSpec,
    coset_cap: usize,
    element_cap: usize,
) -> Result<VerificationReport> {
    let lifted = LiftedPipeline::new(p)?;
    let gens = lifted.generators();
    let n = gens.len();
    let group = closure(gens, element_cap)?;
    let concrete_order = group.order();
    let pres = chain_presentation(n);
    let relations = relations_hold(gens, &pres)?;
    let all_hold = relations.iter().all(|r| r.holds);
    let pair_orders = pair_orders(gens);
    let claimed_matrix = CoxeterMatrix::chain(n);
    let empirical = CoxeterMatrix::from_generators(gens);
    let degeneracy = empirical.as_ref().err().cloned().unwrap_or_default();
    let empirical_matrix = empirical.ok();

    let mismatches = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| pair_orders[i][j] != claimed_matrix.get(i, j))
        .map(|(i, j)| (i, j, pair_orders[i][j], claimed_matrix.get(i, j)))
        .collect();

    let (abstract_order, verdict) = if !degeneracy.is_empty() {
        (None, Verdict::Degenerate)
    } else if !all_hold {
        (None, Verdict::RelationsViolated)
    } else {
        let e = todd_coxeter(&pres, coset_cap);
        let verdict = match e {
            Enumeration::Finite(a) if a == concrete_order => Verdict::Confirmed,
            Enumeration::Finite(a) if a > concrete_order => Verdict::ProperQuotient,
            Enumeration::Finite(a) => {
                // Relations holding gives a surjection onto the concrete group.
                unreachable!("presented order {a} below concrete order {concrete_order}")
            }
            Enumeration::BoundExceeded(_) => Verdict::BoundExceeded,
        };
        (Some(e), verdict)
    };

    let note = match verdict {
        Verdict::Confirmed => format!(
            "relations hold, so s_i -> g_i extends to a surjection from the presented group; \
             both groups have order {concrete_order}, so it is an isomorphism"
        ),
        Verdict::ProperQuotient => format!(
            "relations hold but the presented group has order {} > {concrete_order}; \
             the concrete group is a proper quotient",
            abstract_order.and_then(Enumeration::finite).unwrap_or(0)
        ),
        Verdict::BoundExceeded => format!(
            "relations hold; coset enumeration exceeded {coset_cap} cosets, so the presented \
             group has order above that bound while the concrete group has order {concrete_order}"
        ),
        Verdict::Degenerate => {
            "generators are not distinct non-identity involutions; no Coxeter matrix".to_string()
        }
        Verdict::RelationsViolated => "a claimed relation fails on the concrete generators".into(),
    };

    Ok(VerificationReport {
        steps: n,
        relations_hold: all_hold,
        relations,
        concrete_order,
        abstract_order,
        verdict,
        pair_orders,
        empirical_matrix,
        claimed_matrix,
        mismatches,
        degeneracy,
        note,
    })
}
