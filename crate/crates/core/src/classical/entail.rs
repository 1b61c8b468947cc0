//! Propositional entailment: `premises ⊨ alpha` iff `premises ∪ {!alpha}` is unsatisfiable.

use std::sync::atomic::{AtomicU64, Ordering};

use super::cnf::ClauseSet;
use super::dpll::{solve, SolverStats};
use super::valuation::{eval, Valuation};
use crate::syntax::{BoolFormula, KlmStatement};

/// Vocabulary width up to which the enumeration backend is honoured.
pub const ENUMERATION_BACKEND_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Backend {
    /// CNF conversion plus DPLL.
    #[default]
    Dpll,
    /// Truth-table enumeration; silently uses DPLL above [`ENUMERATION_BACKEND_LIMIT`] atoms.
    Enumeration,
}

/// An entailment checker with shared, thread-safe solver counters.
#[derive(Debug, Default)]
pub struct Engine {
    backend: Backend,
    calls: AtomicU64,
    decisions: AtomicU64,
    propagations: AtomicU64,
    conflicts: AtomicU64,
}

/// A premise set converted to clauses once and reused across queries.
#[derive(Clone, Debug)]
pub struct Premises {
    formulas: Vec<BoolFormula>,
    clauses: ClauseSet,
    width: usize,
}

impl Premises {
    pub fn new<'a, I: IntoIterator<Item = &'a BoolFormula>>(formulas: I) -> Self {
        let formulas: Vec<BoolFormula> = formulas.into_iter().cloned().collect();
        let clauses = ClauseSet::from_formulas(&formulas);
        let width = formulas.iter().map(|f| f.atom_bound()).max().unwrap_or(0);
        Premises {
            formulas,
            clauses,
            width,
        }
    }

    pub fn formulas(&self) -> &[BoolFormula] {
        &self.formulas
    }

    pub fn is_horn(&self) -> bool {
        self.clauses.is_horn()
    }
}

impl Engine {
    pub fn new(backend: Backend) -> Self {
        Engine {
            backend,
            ..Default::default()
        }
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    /// Counters accumulated over every call made through this engine.
    pub fn stats(&self) -> SolverStats {
        SolverStats {
            calls: self.calls.load(Ordering::Relaxed),
            decisions: self.decisions.load(Ordering::Relaxed),
            propagations: self.propagations.load(Ordering::Relaxed),
            conflicts: self.conflicts.load(Ordering::Relaxed),
        }
    }

    pub fn reset_stats(&self) {
        self.calls.store(0, Ordering::Relaxed);
        self.decisions.store(0, Ordering::Relaxed);
        self.propagations.store(0, Ordering::Relaxed);
        self.conflicts.store(0, Ordering::Relaxed);
    }

    fn record(&self, s: &SolverStats) {
        self.calls.fetch_add(s.calls, Ordering::Relaxed);
        self.decisions.fetch_add(s.decisions, Ordering::Relaxed);
        self.propagations.fetch_add(s.propagations, Ordering::Relaxed);
        self.conflicts.fetch_add(s.conflicts, Ordering::Relaxed);
    }

    fn use_enumeration(&self, width: usize) -> bool {
        self.backend == Backend::Enumeration && width <= ENUMERATION_BACKEND_LIMIT
    }

    /// `premises ⊨ alpha`.
    pub fn entails(&self, premises: &Premises, alpha: &BoolFormula) -> bool {
        let width = premises.width.max(alpha.atom_bound());
        if self.use_enumeration(width) {
            self.calls.fetch_add(1, Ordering::Relaxed);
            return Valuation::all(width)
                .filter(|u| premises.formulas.iter().all(|f| eval(u, f)))
                .all(|u| eval(&u, alpha));
        }
        let mut cs = premises.clauses.clone();
        cs.add_negated_formula(alpha);
        let (sat, stats) = solve(&cs);
        self.record(&stats);
        !sat
    }

    pub fn satisfiable(&self, premises: &Premises) -> bool {
        !self.entails(premises, &BoolFormula::Bottom)
    }
}

/// One-shot entailment check with a throwaway engine.
pub fn entails(premises: &[BoolFormula], alpha: &BoolFormula) -> bool {
    Engine::default().entails(&Premises::new(premises), alpha)
}

pub fn satisfiable(formulas: &[BoolFormula]) -> bool {
    Engine::default().satisfiable(&Premises::new(formulas))
}

/// Replaces `~>` with `->`. A Boolean `a` first becomes `!a ~> false`; conjunctions are unioned.
pub fn materialize(stmt: &KlmStatement) -> Vec<BoolFormula> {
    stmt.conjuncts()
        .into_iter()
        .map(|c| match c {
            KlmStatement::Bool(a) => {
                BoolFormula::implies(BoolFormula::not(a.clone()), BoolFormula::Bottom)
            }
            KlmStatement::Defeasible {
                antecedent,
                consequent,
            } => BoolFormula::implies(antecedent.clone(), consequent.clone()),
            KlmStatement::Conj(..) => unreachable!("conjuncts are flattened"),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_bool, parse_klm, print_bool, Vocabulary};

    fn pbf() -> Vocabulary {
        Vocabulary::with_symbols(["p", "b", "f"], Vec::<&str>::new())
    }

    fn fs(v: &Vocabulary, texts: &[&str]) -> Vec<BoolFormula> {
        texts.iter().map(|t| parse_bool(t, v).unwrap()).collect()
    }

    #[test]
    fn entailment_examples() {
        let v = pbf();
        let not_p = parse_bool("!p", &v).unwrap();
        assert!(entails(&fs(&v, &["p -> b", "b -> f", "p -> !f"]), &not_p));
        assert!(!entails(&fs(&v, &["p -> b", "p -> !f"]), &not_p));
        assert!(entails(&[], &BoolFormula::Top));
        assert!(!satisfiable(&fs(&v, &["p", "!p"])));
    }

    #[test]
    fn backends_agree() {
        let v = pbf();
        let prem = Premises::new(&fs(&v, &["p -> b", "b -> f"]));
        for q in ["p -> f", "f -> p", "!p | f", "b"] {
            let q = parse_bool(q, &v).unwrap();
            let a = Engine::new(Backend::Dpll).entails(&prem, &q);
            let b = Engine::new(Backend::Enumeration).entails(&prem, &q);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn materialization() {
        let v = pbf();
        let show = |k: &str| -> Vec<String> {
            materialize(&parse_klm(k, &v).unwrap())
                .iter()
                .map(|f| print_bool(f, &v))
                .collect()
        };
        assert_eq!(show("b ~> f"), ["b -> f"]);
        assert_eq!(show("p -> b"), ["!(p -> b) -> false"]);
        assert_eq!(show("(p ~> b) & (f ~> p)"), ["p -> b", "f -> p"]);
    }

    #[test]
    fn engine_counts_calls() {
        let v = pbf();
        let e = Engine::default();
        let prem = Premises::new(&fs(&v, &["p", "p -> b"]));
        assert!(e.entails(&prem, &parse_bool("b", &v).unwrap()));
        assert!(prem.is_horn());
        assert_eq!(e.stats().calls, 1);
        assert_eq!(e.stats().decisions, 0);
        e.reset_stats();
        assert_eq!(e.stats(), SolverStats::default());
    }
}
