//! BaseRank, propositional rational closure entailment, and the minimal ranked model.

use crate::classical::{eval, Engine, EnumerationCapExceeded, Valuation, DEFAULT_ENUMERATION_CAP};
use crate::classical::Premises;
use crate::syntax::{BoolFormula, KlmStatement, Vocabulary};

use super::ranked::{Rank, RankedInterpretation};

/// `antecedent ~> consequent`, the only shape BaseRank works on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DefeasibleImplication {
    pub antecedent: BoolFormula,
    pub consequent: BoolFormula,
}

impl DefeasibleImplication {
    pub fn new(antecedent: BoolFormula, consequent: BoolFormula) -> Self {
        DefeasibleImplication {
            antecedent,
            consequent,
        }
    }

    pub fn materialization(&self) -> BoolFormula {
        BoolFormula::implies(self.antecedent.clone(), self.consequent.clone())
    }

    pub fn to_statement(&self) -> KlmStatement {
        KlmStatement::defeasible(self.antecedent.clone(), self.consequent.clone())
    }
}

/// Splits conjunctions and rewrites each Boolean `a` as `!a ~> false`.
/// Duplicates are dropped, keeping the first occurrence.
pub fn to_implications<'a, I: IntoIterator<Item = &'a KlmStatement>>(
    kb: I,
) -> Vec<DefeasibleImplication> {
    let mut out: Vec<DefeasibleImplication> = Vec::new();
    for stmt in kb {
        for c in stmt.conjuncts() {
            let di = match c {
                KlmStatement::Bool(a) => {
                    DefeasibleImplication::new(BoolFormula::not(a.clone()), BoolFormula::Bottom)
                }
                KlmStatement::Defeasible {
                    antecedent,
                    consequent,
                } => DefeasibleImplication::new(antecedent.clone(), consequent.clone()),
                KlmStatement::Conj(..) => unreachable!("conjuncts are flattened"),
            };
            if !out.contains(&di) {
                out.push(di);
            }
        }
    }
    out
}

/// `(R_0, ..., R_{n-1}, R_∞, n)`. When `R_∞` is nonempty the last finite
/// rank `R_{n-1}` is the empty fixpoint step, exactly as the loop produces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseRankResult {
    pub ranks: Vec<Vec<DefeasibleImplication>>,
    pub infinite_rank: Vec<DefeasibleImplication>,
    pub n: usize,
}

impl BaseRankResult {
    /// Finite ranks that hold at least one implication.
    pub fn nonempty_ranks(&self) -> impl Iterator<Item = &Vec<DefeasibleImplication>> {
        self.ranks.iter().filter(|r| !r.is_empty())
    }
}

pub fn base_rank(kb: &[KlmStatement]) -> BaseRankResult {
    base_rank_with(&Engine::default(), kb)
}

pub fn base_rank_with(engine: &Engine, kb: &[KlmStatement]) -> BaseRankResult {
    let mut e: Vec<DefeasibleImplication> = to_implications(kb);
    let mut ranks = Vec::new();
    loop {
        let premises = Premises::new(e.iter().map(|d| d.materialization()).collect::<Vec<_>>().iter());
        let next: Vec<DefeasibleImplication> = e
            .iter()
            .filter(|d| engine.entails(&premises, &BoolFormula::not(d.antecedent.clone())))
            .cloned()
            .collect();
        let rank: Vec<DefeasibleImplication> =
            e.iter().filter(|d| !next.contains(d)).cloned().collect();
        ranks.push(rank);
        let fixpoint = next.len() == e.len();
        e = next;
        if fixpoint {
            break;
        }
    }
    // Here `ranks.len()` is the loop counter i and `e` is E_{i-1}.
    let i = ranks.len();
    let n = if e.is_empty() { i - 1 } else { i };
    ranks.truncate(n);
    BaseRankResult {
        ranks,
        infinite_rank: e,
        n,
    }
}

/// A knowledge base with its ranking computed once, ready for repeated queries.
#[derive(Clone, Debug)]
pub struct RationalClosure {
    base: BaseRankResult,
    // suffix[i] = R_∞ ∪ R_i ∪ ... ∪ R_{n-1}, for i in 0..=n.
    suffix: Vec<Premises>,
    suffix_has_finite: Vec<bool>,
}

impl RationalClosure {
    pub fn new(kb: &[KlmStatement]) -> Self {
        Self::with_engine(&Engine::default(), kb)
    }

    pub fn with_engine(engine: &Engine, kb: &[KlmStatement]) -> Self {
        Self::from_base_rank(base_rank_with(engine, kb))
    }

    pub fn from_base_rank(base: BaseRankResult) -> Self {
        let n = base.n;
        let mut suffix = Vec::with_capacity(n + 1);
        let mut suffix_has_finite = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let formulas: Vec<BoolFormula> = base
                .infinite_rank
                .iter()
                .chain(base.ranks[i..].iter().flatten())
                .map(|d| d.materialization())
                .collect();
            suffix.push(Premises::new(&formulas));
            suffix_has_finite.push(base.ranks[i..].iter().any(|r| !r.is_empty()));
        }
        RationalClosure {
            base,
            suffix,
            suffix_has_finite,
        }
    }

    pub fn base_rank(&self) -> &BaseRankResult {
        &self.base
    }

    /// Rational closure check for one defeasible implication.
    pub fn entails_defeasible(&self, engine: &Engine, alpha: &BoolFormula, beta: &BoolFormula) -> bool {
        let not_alpha = BoolFormula::not(alpha.clone());
        let mut i = 0;
        while self.suffix_has_finite[i] && engine.entails(&self.suffix[i], &not_alpha) {
            i += 1;
        }
        engine.entails(
            &self.suffix[i],
            &BoolFormula::implies(alpha.clone(), beta.clone()),
        )
    }

    /// Splits conjunctive queries; every conjunct must hold.
    pub fn entails(&self, engine: &Engine, query: &KlmStatement) -> bool {
        to_implications([query])
            .iter()
            .all(|d| self.entails_defeasible(engine, &d.antecedent, &d.consequent))
    }

    /// The minimal ranked model over `width` atoms.
    pub fn model(&self, width: usize) -> RankedInterpretation {
        let inf: Vec<BoolFormula> =
            self.base.infinite_rank.iter().map(|d| d.materialization()).collect();
        let levels: Vec<Vec<BoolFormula>> = self
            .base
            .ranks
            .iter()
            .map(|r| r.iter().map(|d| d.materialization()).collect())
            .collect();
        let ranks = Valuation::all(width)
            .map(|u| {
                if !inf.iter().all(|f| eval(&u, f)) {
                    return Rank::Infinite;
                }
                // Least i with u ⊨ R_i ∪ ... ∪ R_{n-1}: one past the highest violated rank.
                let violated = levels
                    .iter()
                    .rposition(|level| level.iter().any(|f| !eval(&u, f)));
                Rank::Finite(violated.map_or(0, |j| j as u32 + 1))
            })
            .collect();
        RankedInterpretation::compacted(width, ranks)
    }
}

/// `K |≈ query` under propositional rational closure.
pub fn rc_prop(kb: &[KlmStatement], query: &KlmStatement) -> bool {
    RationalClosure::new(kb).entails(&Engine::default(), query)
}

/// The minimal ranked model of `kb` over every valuation of `vocab`. An
/// unsatisfiable `kb` yields the all-`∞` interpretation (see
/// [`RankedInterpretation::has_finite`]).
pub fn rc_model(
    kb: &[KlmStatement],
    vocab: &Vocabulary,
) -> Result<RankedInterpretation, EnumerationCapExceeded> {
    let width = vocab.atom_count();
    if width > DEFAULT_ENUMERATION_CAP {
        return Err(EnumerationCapExceeded {
            atoms: width,
            cap: DEFAULT_ENUMERATION_CAP,
        });
    }
    Ok(RationalClosure::new(kb).model(width))
}
