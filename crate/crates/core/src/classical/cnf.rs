//! Clausal form. Formulas are pushed into negation normal form and distributed
//! into CNF; a formula whose distributed form would exceed [`DISTRIBUTION_LIMIT`]
//! clauses is encoded with polarity-aware Tseitin variables instead.

use crate::syntax::{AtomId, BoolFormula};

/// Clause count above which a single formula falls back to the Tseitin encoding.
pub const DISTRIBUTION_LIMIT: usize = 256;

/// A literal over solver variables: `2 * var + negated`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn positive(var: u32) -> Self {
        Lit(var << 1)
    }

    pub fn negative(var: u32) -> Self {
        Lit((var << 1) | 1)
    }

    pub fn var(self) -> u32 {
        self.0 >> 1
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn negate(self) -> Self {
        Lit(self.0 ^ 1)
    }

    pub fn code(self) -> usize {
        self.0 as usize
    }
}

pub type Clause = Vec<Lit>;

#[derive(Clone, Debug)]
enum Nnf {
    True,
    False,
    Lit(Lit),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
}

fn mk_and(parts: Vec<Nnf>) -> Nnf {
    let mut out = Vec::with_capacity(parts.len());
    for p in parts {
        match p {
            Nnf::True => {}
            Nnf::False => return Nnf::False,
            Nnf::And(inner) => out.extend(inner),
            other => out.push(other),
        }
    }
    match out.len() {
        0 => Nnf::True,
        1 => out.pop().unwrap(),
        _ => Nnf::And(out),
    }
}

fn mk_or(parts: Vec<Nnf>) -> Nnf {
    let mut out = Vec::with_capacity(parts.len());
    for p in parts {
        match p {
            Nnf::False => {}
            Nnf::True => return Nnf::True,
            Nnf::Or(inner) => out.extend(inner),
            other => out.push(other),
        }
    }
    match out.len() {
        0 => Nnf::False,
        1 => out.pop().unwrap(),
        _ => Nnf::Or(out),
    }
}

/// A conjunction of clauses over solver variables. Atoms are mapped to
/// variables on first use; fresh Tseitin variables never collide with atoms.
#[derive(Clone, Debug, Default)]
pub struct ClauseSet {
    clauses: Vec<Clause>,
    atom_vars: Vec<u32>,
    num_vars: u32,
    horn: bool,
    trivially_unsat: bool,
}

const UNMAPPED: u32 = u32::MAX;

fn normalize_clause(mut c: Clause) -> Option<Clause> {
    c.sort_unstable();
    c.dedup();
    if c.windows(2).any(|w| w[0].var() == w[1].var()) {
        return None;
    }
    Some(c)
}

fn clause_is_horn(c: &[Lit]) -> bool {
    c.iter().filter(|l| l.is_positive()).count() <= 1
}

impl ClauseSet {
    pub fn new() -> Self {
        ClauseSet {
            horn: true,
            ..Default::default()
        }
    }

    pub fn from_formulas<'a, I: IntoIterator<Item = &'a BoolFormula>>(formulas: I) -> Self {
        let mut cs = ClauseSet::new();
        for f in formulas {
            cs.add_formula(f);
        }
        cs
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    /// True iff every clause has at most one positive literal.
    pub fn is_horn(&self) -> bool {
        self.horn
    }

    /// True once an empty clause has been added.
    pub fn has_empty_clause(&self) -> bool {
        self.trivially_unsat
    }

    fn var_of(&mut self, atom: AtomId) -> u32 {
        let i = atom.index();
        if i >= self.atom_vars.len() {
            self.atom_vars.resize(i + 1, UNMAPPED);
        }
        if self.atom_vars[i] == UNMAPPED {
            self.atom_vars[i] = self.fresh();
        }
        self.atom_vars[i]
    }

    fn fresh(&mut self) -> u32 {
        let v = self.num_vars;
        self.num_vars += 1;
        v
    }

    pub fn add_clause(&mut self, clause: Clause) {
        let Some(c) = normalize_clause(clause) else {
            return;
        };
        if c.is_empty() {
            self.trivially_unsat = true;
        }
        self.horn &= clause_is_horn(&c);
        self.clauses.push(c);
    }

    fn nnf(&mut self, f: &BoolFormula, positive: bool) -> Nnf {
        match f {
            BoolFormula::Atom(a) => {
                let v = self.var_of(*a);
                Nnf::Lit(if positive { Lit::positive(v) } else { Lit::negative(v) })
            }
            BoolFormula::Top => {
                if positive {
                    Nnf::True
                } else {
                    Nnf::False
                }
            }
            BoolFormula::Bottom => {
                if positive {
                    Nnf::False
                } else {
                    Nnf::True
                }
            }
            BoolFormula::Not(x) => self.nnf(x, !positive),
            BoolFormula::And(a, b) => {
                let parts = vec![self.nnf(a, positive), self.nnf(b, positive)];
                if positive {
                    mk_and(parts)
                } else {
                    mk_or(parts)
                }
            }
            BoolFormula::Or(a, b) => {
                let parts = vec![self.nnf(a, positive), self.nnf(b, positive)];
                if positive {
                    mk_or(parts)
                } else {
                    mk_and(parts)
                }
            }
            BoolFormula::Implies(a, b) => {
                if positive {
                    mk_or(vec![self.nnf(a, false), self.nnf(b, true)])
                } else {
                    mk_and(vec![self.nnf(a, true), self.nnf(b, false)])
                }
            }
            BoolFormula::Iff(a, b) => {
                let (pa, na, pb, nb) = (
                    self.nnf(a, true),
                    self.nnf(a, false),
                    self.nnf(b, true),
                    self.nnf(b, false),
                );
                if positive {
                    mk_and(vec![mk_or(vec![na, pb]), mk_or(vec![pa, nb])])
                } else {
                    mk_or(vec![mk_and(vec![pa, nb]), mk_and(vec![na, pb])])
                }
            }
        }
    }

    /// Conjoins `f` to the clause set.
    pub fn add_formula(&mut self, f: &BoolFormula) {
        let n = self.nnf(f, true);
        self.add_nnf(n);
    }

    /// Conjoins `!f` to the clause set.
    pub fn add_negated_formula(&mut self, f: &BoolFormula) {
        let n = self.nnf(f, false);
        self.add_nnf(n);
    }

    fn add_nnf(&mut self, n: Nnf) {
        match n {
            Nnf::True => {}
            Nnf::And(children) => {
                for c in children {
                    self.add_nnf(c);
                }
            }
            other => match distribute(&other, DISTRIBUTION_LIMIT) {
                Some(clauses) => {
                    for c in clauses {
                        self.add_clause(c);
                    }
                }
                None => {
                    let root = self.tseitin(&other);
                    self.add_clause(vec![root]);
                }
            },
        }
    }

    /// Plaisted-Greenbaum encoding: the returned literal implies the node.
    fn tseitin(&mut self, n: &Nnf) -> Lit {
        match n {
            Nnf::Lit(l) => *l,
            Nnf::True | Nnf::False => {
                let v = self.fresh();
                let x = Lit::positive(v);
                if matches!(n, Nnf::False) {
                    self.add_clause(vec![x.negate()]);
                }
                x
            }
            Nnf::And(children) => {
                let x = Lit::positive(self.fresh());
                for c in children {
                    let l = self.tseitin(c);
                    self.add_clause(vec![x.negate(), l]);
                }
                x
            }
            Nnf::Or(children) => {
                let x = Lit::positive(self.fresh());
                let mut clause = vec![x.negate()];
                for c in children {
                    clause.push(self.tseitin(c));
                }
                self.add_clause(clause);
                x
            }
        }
    }
}

fn distribute(n: &Nnf, limit: usize) -> Option<Vec<Clause>> {
    match n {
        Nnf::True => Some(Vec::new()),
        Nnf::False => Some(vec![Vec::new()]),
        Nnf::Lit(l) => Some(vec![vec![*l]]),
        Nnf::And(children) => {
            let mut out = Vec::new();
            for c in children {
                out.extend(distribute(c, limit)?);
                if out.len() > limit {
                    return None;
                }
            }
            Some(out)
        }
        Nnf::Or(children) => {
            let mut acc: Vec<Clause> = vec![Vec::new()];
            for c in children {
                let part = distribute(c, limit)?;
                let mut next = Vec::with_capacity(acc.len() * part.len());
                for a in &acc {
                    for b in &part {
                        let mut merged = a.clone();
                        merged.extend_from_slice(b);
                        if let Some(m) = normalize_clause(merged) {
                            next.push(m);
                        }
                    }
                }
                if next.len() > limit {
                    return None;
                }
                acc = next;
            }
            Some(acc)
        }
    }
}

/// Syntactic Horn test on the clausal form of each formula.
pub fn is_horn<'a, I: IntoIterator<Item = &'a BoolFormula>>(formulas: I) -> bool {
    ClauseSet::from_formulas(formulas).is_horn()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::valuation::{eval, Valuation};
    use crate::syntax::{parse_bool, Vocabulary};

    fn v() -> Vocabulary {
        Vocabulary::with_symbols(["p", "b", "c", "d"], Vec::<&str>::new())
    }

    #[test]
    fn horn_examples() {
        let v = v();
        let a = parse_bool("p -> b", &v).unwrap();
        let b = parse_bool("b & c -> d", &v).unwrap();
        assert!(is_horn([&a, &b]));
        let c = parse_bool("p -> b | c", &v).unwrap();
        assert!(!is_horn([&c]));
        assert!(is_horn(std::iter::empty::<&BoolFormula>()));
    }

    #[test]
    fn clauses_are_equivalent_without_tseitin() {
        let v = v();
        for text in ["p <-> (b | !c)", "!(p & b) -> (c <-> d)", "p & !p", "true", "false | p"] {
            let f = parse_bool(text, &v).unwrap();
            let cs = ClauseSet::from_formulas([&f]);
            // No fresh variables: the variable map is atom first-use order.
            let mut order = Vec::new();
            for a in f.atoms() {
                order.push(a);
            }
            for u in Valuation::all(4) {
                // Rebuild the solver assignment by mapping atoms to their variables.
                let mut assign = vec![false; cs.num_vars() as usize];
                for a in &order {
                    let var = cs.atom_vars[a.index()];
                    assign[var as usize] = u.get(*a);
                }
                let sat = cs.clauses().iter().all(|c| {
                    c.iter().any(|l| assign[l.var() as usize] == l.is_positive())
                });
                assert_eq!(sat, eval(&u, &f), "{text} at {u:?}");
            }
        }
    }
}
