//! DPLL with two-watched-literal unit propagation and chronological backtracking.
//!
//! After each propagation fixpoint the solver checks whether every clause is
//! satisfied or still holds an unassigned negative literal; if so, setting all
//! open variables false is a model. Horn inputs therefore never reach a
//! decision.

use super::cnf::{ClauseSet, Lit};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub calls: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
}

impl SolverStats {
    pub fn merge(&mut self, other: &SolverStats) {
        self.calls += other.calls;
        self.decisions += other.decisions;
        self.propagations += other.propagations;
        self.conflicts += other.conflicts;
    }
}

const UNASSIGNED: i8 = 0;

struct Solver<'a> {
    clauses: Vec<&'a [Lit]>,
    // Watched positions within each clause; always the first two slots of `order`.
    order: Vec<Vec<u32>>,
    watches: Vec<Vec<u32>>,
    assign: Vec<i8>,
    trail: Vec<Lit>,
    levels: Vec<(usize, bool)>,
    qhead: usize,
    stats: SolverStats,
}

impl<'a> Solver<'a> {
    fn value(&self, l: Lit) -> i8 {
        let v = self.assign[l.var() as usize];
        if l.is_positive() {
            v
        } else {
            -v
        }
    }

    fn lit_at(&self, ci: usize, slot: usize) -> Lit {
        self.clauses[ci][self.order[ci][slot] as usize]
    }

    fn enqueue(&mut self, l: Lit) -> bool {
        match self.value(l) {
            1 => true,
            -1 => false,
            _ => {
                self.assign[l.var() as usize] = if l.is_positive() { 1 } else { -1 };
                self.trail.push(l);
                true
            }
        }
    }

    fn propagate(&mut self) -> bool {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let falsified = p.negate();
            let ws = std::mem::take(&mut self.watches[falsified.code()]);
            let mut kept = Vec::with_capacity(ws.len());
            let mut conflict = false;
            let mut idx = 0;
            while idx < ws.len() {
                let ci = ws[idx] as usize;
                idx += 1;
                if self.lit_at(ci, 0) == falsified {
                    self.order[ci].swap(0, 1);
                }
                let first = self.lit_at(ci, 0);
                if self.value(first) == 1 {
                    kept.push(ci as u32);
                    continue;
                }
                let len = self.clauses[ci].len();
                let mut moved = false;
                for k in 2..len {
                    let cand = self.lit_at(ci, k);
                    if self.value(cand) != -1 {
                        self.order[ci].swap(1, k);
                        self.watches[cand.code()].push(ci as u32);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                kept.push(ci as u32);
                if self.value(first) == -1 {
                    conflict = true;
                    break;
                }
                self.stats.propagations += 1;
                self.enqueue(first);
            }
            kept.extend_from_slice(&ws[idx..]);
            self.watches[falsified.code()] = kept;
            if conflict {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        for l in self.trail.drain(len..) {
            self.assign[l.var() as usize] = UNASSIGNED;
        }
        self.qhead = len;
    }

    /// Returns a positive literal to branch on, or `None` when the all-false
    /// completion of the current assignment is a model.
    fn pick_branch(&self) -> Option<Lit> {
        for c in &self.clauses {
            let mut satisfied_or_open_negative = false;
            let mut open_positive = None;
            for &l in c.iter() {
                match self.value(l) {
                    1 => {
                        satisfied_or_open_negative = true;
                        break;
                    }
                    0 if !l.is_positive() => {
                        satisfied_or_open_negative = true;
                        break;
                    }
                    0 => {
                        open_positive.get_or_insert(l);
                    }
                    _ => {}
                }
            }
            if !satisfied_or_open_negative {
                return open_positive;
            }
        }
        None
    }
}

/// Decides satisfiability of a clause set.
pub fn solve(cs: &ClauseSet) -> (bool, SolverStats) {
    let mut stats = SolverStats {
        calls: 1,
        ..Default::default()
    };
    if cs.has_empty_clause() {
        return (false, stats);
    }
    let nv = cs.num_vars() as usize;
    let mut solver = Solver {
        clauses: Vec::with_capacity(cs.clauses().len()),
        order: Vec::with_capacity(cs.clauses().len()),
        watches: vec![Vec::new(); 2 * nv],
        assign: vec![UNASSIGNED; nv],
        trail: Vec::with_capacity(nv),
        levels: Vec::new(),
        qhead: 0,
        stats,
    };
    let mut units = Vec::new();
    for c in cs.clauses() {
        if c.len() == 1 {
            units.push(c[0]);
            continue;
        }
        let ci = solver.clauses.len() as u32;
        solver.watches[c[0].code()].push(ci);
        solver.watches[c[1].code()].push(ci);
        solver.order.push((0..c.len() as u32).collect());
        solver.clauses.push(c);
    }
    for u in units {
        if !solver.enqueue(u) {
            stats = solver.stats;
            stats.conflicts += 1;
            return (false, stats);
        }
    }
    loop {
        if !solver.propagate() {
            solver.stats.conflicts += 1;
            loop {
                let Some((start, flipped)) = solver.levels.pop() else {
                    return (false, solver.stats);
                };
                let decided = solver.trail[start];
                solver.undo_to(start);
                if !flipped {
                    solver.levels.push((solver.trail.len(), true));
                    solver.enqueue(decided.negate());
                    break;
                }
            }
            continue;
        }
        match solver.pick_branch() {
            None => return (true, solver.stats),
            Some(l) => {
                solver.stats.decisions += 1;
                solver.levels.push((solver.trail.len(), false));
                solver.enqueue(l);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::valuation::{eval, Valuation};
    use crate::syntax::{parse_bool, BoolFormula, Vocabulary};

    fn sat(texts: &[&str]) -> (bool, SolverStats) {
        let v = Vocabulary::with_symbols(["a", "b", "c", "d", "e"], Vec::<&str>::new());
        let fs: Vec<BoolFormula> = texts.iter().map(|t| parse_bool(t, &v).unwrap()).collect();
        solve(&ClauseSet::from_formulas(&fs))
    }

    #[test]
    fn basic() {
        assert!(sat(&["a", "a -> b"]).0);
        assert!(!sat(&["a", "a -> b", "!b"]).0);
        assert!(sat(&[]).0);
        assert!(!sat(&["false"]).0);
        assert!(!sat(&["a <-> !a"]).0);
    }

    #[test]
    fn needs_search() {
        // Pigeonhole-ish: (a|b) & (a|!b) & (!a|c) & (!a|!c) is unsat.
        let (s, stats) = sat(&["a | b", "a | !b", "!a | c", "!a | !c"]);
        assert!(!s);
        assert!(stats.decisions > 0 || stats.conflicts > 0);
        let (s, _) = sat(&["a | b", "!a | b", "a | !b", "c | d", "!c | !d"]);
        assert!(s);
    }

    #[test]
    fn horn_needs_no_decisions() {
        let (s, stats) = sat(&["a", "a -> b", "b & c -> d", "d -> !e"]);
        assert!(s);
        assert_eq!(stats.decisions, 0);
        let (s, stats) = sat(&["a", "a -> b", "b -> c", "!c"]);
        assert!(!s);
        assert_eq!(stats.decisions, 0);
    }

    #[test]
    fn agrees_with_enumeration_on_random_sets() {
        use rand::{Rng, SeedableRng};
        let v = Vocabulary::with_symbols(["a", "b", "c", "d"], Vec::<&str>::new());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..400 {
            let mut clauses = Vec::new();
            for _ in 0..rng.gen_range(1..8) {
                let len = rng.gen_range(1..4);
                let lits: Vec<String> = (0..len)
                    .map(|_| {
                        let a = ["a", "b", "c", "d"][rng.gen_range(0..4)];
                        if rng.gen_bool(0.5) {
                            format!("!{a}")
                        } else {
                            a.to_string()
                        }
                    })
                    .collect();
                clauses.push(lits.join(" | "));
            }
            let fs: Vec<BoolFormula> = clauses.iter().map(|t| parse_bool(t, &v).unwrap()).collect();
            let brute = Valuation::all(4).any(|u| fs.iter().all(|f| eval(&u, f)));
            let (got, _) = solve(&ClauseSet::from_formulas(&fs));
            assert_eq!(got, brute, "{clauses:?}");
        }
    }
}
