//! Exhaustive enumeration of ranked interpretations: pick the `∞` set, then
//! every ordered partition of the remaining valuations into nonempty levels.

use crate::exec::Execution;
use crate::klm::{Rank, RankedInterpretation};

use super::{EnumerationBudget, OracleError};

/// Valuations are bit positions in a `u32` mask, so the width is at most 5 here;
/// budgets stop far earlier.
pub(crate) const MASK_WIDTH_LIMIT: usize = 5;

/// Calls `f(levels)` for every ordered partition of `rest`; `levels[i]` is the mask of rank `i`.
pub(crate) fn ordered_partitions<F: FnMut(&[u32])>(rest: u32, levels: &mut Vec<u32>, f: &mut F) {
    if rest == 0 {
        f(levels);
        return;
    }
    let mut sub = rest;
    while sub != 0 {
        levels.push(sub);
        ordered_partitions(rest & !sub, levels, f);
        levels.pop();
        sub = (sub - 1) & rest;
    }
}

pub(crate) fn to_interpretation(width: usize, infinite: u32, levels: &[u32]) -> RankedInterpretation {
    let n = 1usize << width;
    let mut ranks = vec![Rank::Infinite; n];
    for (i, l) in levels.iter().enumerate() {
        for (c, r) in ranks.iter_mut().enumerate() {
            if l >> c & 1 == 1 {
                *r = Rank::Finite(i as u32);
            }
        }
    }
    debug_assert!((0..n).all(|c| (infinite >> c & 1 == 1) == (ranks[c] == Rank::Infinite)));
    RankedInterpretation::from_ranks(width, ranks).expect("levels are nonempty")
}

fn check_width(width: usize, budget: &EnumerationBudget) -> Result<(), OracleError> {
    budget.validate()?;
    if width > budget.max_atoms || width >= MASK_WIDTH_LIMIT {
        return Err(OracleError::BudgetExceeded(format!(
            "{width} atoms exceeds the enumeration budget of {}",
            budget.max_atoms
        )));
    }
    Ok(())
}

/// Streams every ranked interpretation over `width` atoms as `(infinite mask, level masks)`.
/// `∞` subsets are distributed over the execution strategy; within one subset the
/// callback sees partitions in a fixed order.
pub fn for_each_ranked_interpretation<F>(
    width: usize,
    budget: &EnumerationBudget,
    exec: Execution,
    f: F,
) -> Result<(), OracleError>
where
    F: Fn(u32, &[u32]) + Sync + Send,
{
    check_width(width, budget)?;
    let all = ((1u64 << (1u64 << width)) - 1) as u32;
    exec.map_range(all as usize + 1, |inf| {
        let inf = inf as u32;
        let mut levels = Vec::new();
        ordered_partitions(all & !inf, &mut levels, &mut |ls| f(inf, ls));
    });
    Ok(())
}

/// All ranked interpretations over `width` atoms, without duplicates.
pub fn enumerate_ranked_interpretations(
    width: usize,
    budget: &EnumerationBudget,
) -> Result<Vec<RankedInterpretation>, OracleError> {
    check_width(width, budget)?;
    let all = ((1u64 << (1u64 << width)) - 1) as u32;
    let mut out = Vec::new();
    for inf in 0..=all {
        let mut levels = Vec::new();
        ordered_partitions(all & !inf, &mut levels, &mut |ls| {
            out.push(to_interpretation(width, inf, ls))
        });
    }
    Ok(out)
}

/// Count by direct enumeration.
pub fn count_ranked_interpretations(
    width: usize,
    budget: &EnumerationBudget,
    exec: Execution,
) -> Result<u64, OracleError> {
    use std::sync::atomic::{AtomicU64, Ordering};
    let count = AtomicU64::new(0);
    for_each_ranked_interpretation(width, budget, exec, |_, _| {
        count.fetch_add(1, Ordering::Relaxed);
    })?;
    Ok(count.into_inner())
}

/// Independent closed form: `Σ_j C(2^w, j) · a(j)`, where `a` counts ordered set
/// partitions via `a(n) = Σ_{k=1..n} C(n, k) · a(n - k)`.
pub fn closed_form_count(width: usize) -> u128 {
    let n = 1usize << width;
    let mut binom = vec![vec![0u128; n + 1]; n + 1];
    for i in 0..=n {
        binom[i][0] = 1;
        for k in 1..=i {
            binom[i][k] = binom[i - 1][k - 1] + if k < i { binom[i - 1][k] } else { 0 };
        }
    }
    let mut fubini = vec![0u128; n + 1];
    fubini[0] = 1;
    for m in 1..=n {
        fubini[m] = (1..=m).map(|k| binom[m][k] * fubini[m - k]).sum();
    }
    (0..=n).map(|j| binom[n][j] * fubini[j]).sum()
}
