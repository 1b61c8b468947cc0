use crate::classical::{eval, Valuation};
use crate::klm::{Rank, RankedInterpretation};
use crate::syntax::{BoolFormula, KlmStatement, Vocabulary};

use super::enumerate::MASK_WIDTH_LIMIT;
use super::{EnumerationBudget, OracleError};

/// `(A, B)`: the valuations satisfying the antecedent and those satisfying the consequent.
type Masks = (u32, u32);

fn mask_of(f: &BoolFormula, width: usize) -> u32 {
    (0..1u64 << width)
        .filter(|&c| eval(&Valuation::new(width, c), f))
        .fold(0, |m, c| m | 1 << c)
}

fn collect_masks(k: &KlmStatement, width: usize, out: &mut Vec<Masks>) {
    match k {
        KlmStatement::Bool(a) => out.push((!mask_of(a, width) & full(width), 0)),
        KlmStatement::Defeasible {
            antecedent,
            consequent,
        } => out.push((mask_of(antecedent, width), mask_of(consequent, width))),
        KlmStatement::Conj(a, b) => {
            collect_masks(a, width, out);
            collect_masks(b, width, out);
        }
    }
}

fn full(width: usize) -> u32 {
    ((1u64 << (1u64 << width)) - 1) as u32
}

struct Search<'a> {
    dis: &'a [Masks],
    /// Pointwise minimum rank so far; `u32::MAX` stands for `∞`.
    best: Vec<u32>,
    models: u64,
}

impl Search<'_> {
    /// Extends the level list under the constraint that each implication is
    /// decided by the first level meeting its antecedent.
    fn go(&mut self, rest: u32, levels: &mut Vec<u32>, pending: &mut [usize]) {
        if rest == 0 {
            // Any still-pending implication has its antecedent inside the `∞` set.
            self.models += 1;
            for (i, &l) in levels.iter().enumerate() {
                let mut m = l;
                while m != 0 {
                    let c = m.trailing_zeros() as usize;
                    self.best[c] = self.best[c].min(i as u32);
                    m &= m - 1;
                }
            }
            return;
        }
        let mut sub = rest;
        while sub != 0 {
            let mut ok = true;
            let mut keep = Vec::with_capacity(pending.len());
            for &d in pending.iter() {
                let (a, b) = self.dis[d];
                if sub & a != 0 {
                    if sub & a & !b != 0 {
                        ok = false;
                        break;
                    }
                } else {
                    keep.push(d);
                }
            }
            if ok {
                levels.push(sub);
                self.go(rest & !sub, levels, &mut keep);
                levels.pop();
            }
            sub = (sub - 1) & rest;
        }
    }
}

/// The pointwise minimum over every ranked model of `kb` on `vocab`, found by
/// search over `∞` sets and ordered partitions with early pruning. The result is
/// re-checked to be a model itself.
pub fn minimal_model_oracle(
    kb: &[KlmStatement],
    vocab: &Vocabulary,
    budget: &EnumerationBudget,
) -> Result<RankedInterpretation, OracleError> {
    budget.validate()?;
    let width = vocab.atom_count();
    if width > budget.max_atoms || width >= MASK_WIDTH_LIMIT {
        return Err(OracleError::BudgetExceeded(format!(
            "{width} atoms exceeds the enumeration budget of {}",
            budget.max_atoms
        )));
    }
    let mut dis = Vec::new();
    for k in kb {
        collect_masks(k, width, &mut dis);
    }
    let n = 1usize << width;
    let mut search = Search {
        dis: &dis,
        best: vec![u32::MAX; n],
        models: 0,
    };
    let all = full(width);
    for inf in 0..=all {
        let mut pending: Vec<usize> = (0..dis.len()).collect();
        search.go(all & !inf, &mut Vec::new(), &mut pending);
    }
    if search.models == 0 {
        return Err(OracleError::Invariant(
            "no ranked model found, not even the all-infinite one".into(),
        ));
    }
    let ranks = search
        .best
        .iter()
        .map(|&r| if r == u32::MAX { Rank::Infinite } else { Rank::Finite(r) })
        .collect();
    let min = RankedInterpretation::from_ranks(width, ranks)
        .map_err(|e| OracleError::Invariant(format!("the pointwise minimum is not convex: {e}")))?;
    if !kb.iter().all(|k| min.satisfies(k)) {
        return Err(OracleError::Invariant(
            "the pointwise minimum is not a model".into(),
        ));
    }
    Ok(min)
}
