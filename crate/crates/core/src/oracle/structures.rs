use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::klm::{Rank, RankedInterpretation};
use crate::semantics::RankedStandpointStructure;
use crate::syntax::{DrslStatement, KnowledgeBase, StandpointId};

use super::enumerate::{closed_form_count, enumerate_ranked_interpretations};
use super::{EnumerationBudget, OracleError};

/// Widths whose interpretations are materialized for exhaustive structure enumeration.
const EXHAUSTIVE_WIDTH_LIMIT: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundedOutcome {
    /// A structure that models the knowledge base but not the query.
    Refuted(RankedStandpointStructure),
    /// No counterexample among `checked` candidates; `exhausted` when that was every
    /// structure within the budget rather than a seeded sample.
    NoCounterexample { checked: u64, exhausted: bool },
}

impl BoundedOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, BoundedOutcome::NoCounterexample { .. })
    }
}

fn binom_sat(n: u128, k: u32) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k as u128 {
        match r.checked_mul(n - i) {
            Some(v) => r = v / (i + 1),
            None => return u128::MAX,
        }
    }
    r
}

/// Structures up to relabeling of `Π`: a multiset of interpretations for each
/// `|Π| ≤ max_pi`, times a nonempty `σ(s) ⊆ Π` for each named standpoint.
pub fn count_structures(width: usize, standpoints: usize, max_pi: usize) -> u128 {
    let n = closed_form_count(width);
    (1..=max_pi as u32)
        .map(|k| {
            let gammas = binom_sat(n + k as u128 - 1, k);
            let sigmas = ((1u128 << k) - 1).saturating_pow(standpoints as u32);
            gammas.saturating_mul(sigmas)
        })
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// Random ranks per valuation, compacted into a convex interpretation. The
/// share of `∞` valuations is itself random so that sparse models turn up.
pub fn random_interpretation<R: Rng>(rng: &mut R, width: usize) -> RankedInterpretation {
    let n = 1usize << width;
    let p_inf: f64 = rng.gen();
    let ranks = (0..n)
        .map(|_| {
            if rng.gen_bool(p_inf) {
                Rank::Infinite
            } else {
                Rank::Finite(rng.gen_range(0..n as u32))
            }
        })
        .collect();
    RankedInterpretation::compacted(width, ranks)
}

fn structure(
    gamma: Vec<RankedInterpretation>,
    standpoints: &[StandpointId],
    masks: &[u32],
) -> RankedStandpointStructure {
    let pi = (1..=gamma.len()).map(|i| format!("pi_{i}")).collect();
    let sigma: BTreeMap<StandpointId, Vec<usize>> = standpoints
        .iter()
        .zip(masks)
        .map(|(&s, &m)| (s, (0..gamma.len()).filter(|&p| m >> p & 1 == 1).collect()))
        .collect();
    RankedStandpointStructure::new(pi, sigma, gamma).expect("well-formed by construction")
}

struct Checker<'a> {
    kb: &'a KnowledgeBase,
    psi: &'a DrslStatement,
    checked: u64,
}

impl Checker<'_> {
    fn refutes(&mut self, m: &RankedStandpointStructure) -> Result<bool, OracleError> {
        self.checked += 1;
        let err = |e: crate::semantics::SemanticsError| OracleError::Invariant(e.to_string());
        Ok(m.check_model(self.kb).map_err(err)?
            && !m.satisfies(self.psi, &self.kb.vocabulary).map_err(err)?)
    }
}

/// Searches for a structure with `|Π| ≤ max_precisifications` that models `kb`
/// but not `psi`. Every structure counts, including those with an all-`∞`
/// precisification. Small searches are exhaustive; larger ones draw
/// `max_structures` seeded random structures.
pub fn bounded_ranked_entailment(
    kb: &KnowledgeBase,
    psi: &DrslStatement,
    budget: &EnumerationBudget,
) -> Result<BoundedOutcome, OracleError> {
    budget.validate()?;
    let vocab = &kb.vocabulary;
    let width = vocab.atom_count();
    let mut atoms = BTreeSet::new();
    psi.collect_atoms(&mut atoms);
    let mut sps = BTreeSet::new();
    psi.collect_standpoints(&mut sps);
    if atoms.iter().any(|a| a.index() >= width)
        || sps.iter().any(|s| s.index() >= vocab.standpoint_count())
    {
        return Err(OracleError::OutOfVocabulary);
    }
    if width > budget.max_atoms {
        return Err(OracleError::BudgetExceeded(format!(
            "{width} atoms exceeds the enumeration budget of {}",
            budget.max_atoms
        )));
    }
    let standpoints: Vec<StandpointId> =
        vocab.standpoint_ids().filter(|s| !s.is_universal()).collect();
    let total = count_structures(width, standpoints.len(), budget.max_precisifications);
    let mut checker = Checker {
        kb,
        psi,
        checked: 0,
    };

    if width <= EXHAUSTIVE_WIDTH_LIMIT && total <= budget.max_structures as u128 {
        let interps = enumerate_ranked_interpretations(width, budget)?;
        for k in 1..=budget.max_precisifications {
            let mut idx = vec![0usize; k];
            loop {
                let gamma: Vec<RankedInterpretation> =
                    idx.iter().map(|&i| interps[i].clone()).collect();
                let mut masks = vec![1u32; standpoints.len()];
                loop {
                    let m = structure(gamma.clone(), &standpoints, &masks);
                    if checker.refutes(&m)? {
                        return Ok(BoundedOutcome::Refuted(m));
                    }
                    if !next_masks(&mut masks, k) {
                        break;
                    }
                }
                if !next_multiset(&mut idx, interps.len()) {
                    break;
                }
            }
        }
        return Ok(BoundedOutcome::NoCounterexample {
            checked: checker.checked,
            exhausted: true,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.max_structures {
        let k = rng.gen_range(1..=budget.max_precisifications);
        let gamma = (0..k).map(|_| random_interpretation(&mut rng, width)).collect();
        let masks: Vec<u32> = standpoints
            .iter()
            .map(|_| rng.gen_range(1..1u32 << k))
            .collect();
        let m = structure(gamma, &standpoints, &masks);
        if checker.refutes(&m)? {
            return Ok(BoundedOutcome::Refuted(m));
        }
    }
    Ok(BoundedOutcome::NoCounterexample {
        checked: checker.checked,
        exhausted: false,
    })
}

/// Advances a mixed-radix counter over nonempty subsets of `0..k`.
fn next_masks(masks: &mut [u32], k: usize) -> bool {
    for m in masks.iter_mut() {
        if *m + 1 < 1 << k {
            *m += 1;
            return true;
        }
        *m = 1;
    }
    false
}

/// Advances a nondecreasing index vector over `0..n`.
fn next_multiset(idx: &mut [usize], n: usize) -> bool {
    for i in (0..idx.len()).rev() {
        if idx[i] + 1 < n {
            let v = idx[i] + 1;
            for j in idx[i..].iter_mut() {
                *j = v;
            }
            return true;
        }
    }
    false
}
