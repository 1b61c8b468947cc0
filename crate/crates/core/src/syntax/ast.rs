use std::collections::BTreeSet;

use super::vocab::{AtomId, StandpointId, Vocabulary};

/// A classical propositional formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoolFormula {
    Atom(AtomId),
    Top,
    Bottom,
    Not(Box<BoolFormula>),
    And(Box<BoolFormula>, Box<BoolFormula>),
    Or(Box<BoolFormula>, Box<BoolFormula>),
    Implies(Box<BoolFormula>, Box<BoolFormula>),
    Iff(Box<BoolFormula>, Box<BoolFormula>),
}

impl BoolFormula {
    pub fn atom(id: AtomId) -> Self {
        BoolFormula::Atom(id)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: BoolFormula) -> Self {
        BoolFormula::Not(Box::new(f))
    }

    pub fn and(a: BoolFormula, b: BoolFormula) -> Self {
        BoolFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: BoolFormula, b: BoolFormula) -> Self {
        BoolFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: BoolFormula, b: BoolFormula) -> Self {
        BoolFormula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: BoolFormula, b: BoolFormula) -> Self {
        BoolFormula::Iff(Box::new(a), Box::new(b))
    }

    /// Right-leaning conjunction; `Top` for an empty input.
    pub fn conjunction<I: IntoIterator<Item = BoolFormula>>(items: I) -> Self {
        let mut items: Vec<_> = items.into_iter().collect();
        let Some(mut acc) = items.pop() else {
            return BoolFormula::Top;
        };
        while let Some(next) = items.pop() {
            acc = BoolFormula::and(next, acc);
        }
        acc
    }

    pub fn collect_atoms(&self, out: &mut BTreeSet<AtomId>) {
        match self {
            BoolFormula::Atom(a) => {
                out.insert(*a);
            }
            BoolFormula::Top | BoolFormula::Bottom => {}
            BoolFormula::Not(x) => x.collect_atoms(out),
            BoolFormula::And(a, b)
            | BoolFormula::Or(a, b)
            | BoolFormula::Implies(a, b)
            | BoolFormula::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<AtomId> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    /// One past the largest atom index referenced, or 0.
    pub fn atom_bound(&self) -> usize {
        self.atoms().last().map_or(0, |a| a.index() + 1)
    }
}

/// A statement of propositional KLM logic: Boolean, defeasible implication, or a conjunction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KlmStatement {
    Bool(BoolFormula),
    Defeasible {
        antecedent: BoolFormula,
        consequent: BoolFormula,
    },
    Conj(Box<KlmStatement>, Box<KlmStatement>),
}

impl KlmStatement {
    pub fn defeasible(antecedent: BoolFormula, consequent: BoolFormula) -> Self {
        KlmStatement::Defeasible {
            antecedent,
            consequent,
        }
    }

    pub fn conj(a: KlmStatement, b: KlmStatement) -> Self {
        KlmStatement::Conj(Box::new(a), Box::new(b))
    }

    /// Right-leaning conjunction of a nonempty list.
    pub fn conjunction(mut items: Vec<KlmStatement>) -> Option<Self> {
        let mut acc = items.pop()?;
        while let Some(next) = items.pop() {
            acc = KlmStatement::conj(next, acc);
        }
        Some(acc)
    }

    /// Top-level conjuncts, left to right.
    pub fn conjuncts(&self) -> Vec<&KlmStatement> {
        let mut out = Vec::new();
        fn walk<'a>(s: &'a KlmStatement, out: &mut Vec<&'a KlmStatement>) {
            match s {
                KlmStatement::Conj(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }

    pub fn has_defeasible(&self) -> bool {
        match self {
            KlmStatement::Bool(_) => false,
            KlmStatement::Defeasible { .. } => true,
            KlmStatement::Conj(a, b) => a.has_defeasible() || b.has_defeasible(),
        }
    }

    pub fn collect_atoms(&self, out: &mut BTreeSet<AtomId>) {
        match self {
            KlmStatement::Bool(f) => f.collect_atoms(out),
            KlmStatement::Defeasible {
                antecedent,
                consequent,
            } => {
                antecedent.collect_atoms(out);
                consequent.collect_atoms(out);
            }
            KlmStatement::Conj(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Modality {
    Box,
    Diamond,
}

/// A statement of the standpoint language: KLM body, modal statement, conjunction, or sharpening.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DrslStatement {
    Klm(KlmStatement),
    Modal(Modality, StandpointId, Box<DrslStatement>),
    Conj(Box<DrslStatement>, Box<DrslStatement>),
    Sharpening { sub: StandpointId, sup: StandpointId },
}

impl DrslStatement {
    pub fn boxed(s: StandpointId, body: DrslStatement) -> Self {
        DrslStatement::Modal(Modality::Box, s, Box::new(body))
    }

    pub fn diamond(s: StandpointId, body: DrslStatement) -> Self {
        DrslStatement::Modal(Modality::Diamond, s, Box::new(body))
    }

    pub fn conj(a: DrslStatement, b: DrslStatement) -> Self {
        DrslStatement::Conj(Box::new(a), Box::new(b))
    }

    pub fn is_sharpening(&self) -> bool {
        matches!(self, DrslStatement::Sharpening { .. })
    }

    pub fn has_modality(&self) -> bool {
        match self {
            DrslStatement::Klm(_) => false,
            DrslStatement::Modal(..) => true,
            DrslStatement::Conj(a, b) => a.has_modality() || b.has_modality(),
            DrslStatement::Sharpening { .. } => false,
        }
    }

    pub fn collect_atoms(&self, out: &mut BTreeSet<AtomId>) {
        match self {
            DrslStatement::Klm(k) => k.collect_atoms(out),
            DrslStatement::Modal(_, _, body) => body.collect_atoms(out),
            DrslStatement::Conj(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            DrslStatement::Sharpening { .. } => {}
        }
    }

    pub fn collect_standpoints(&self, out: &mut BTreeSet<StandpointId>) {
        match self {
            DrslStatement::Klm(_) => {}
            DrslStatement::Modal(_, s, body) => {
                out.insert(*s);
                body.collect_standpoints(out);
            }
            DrslStatement::Conj(a, b) => {
                a.collect_standpoints(out);
                b.collect_standpoints(out);
            }
            DrslStatement::Sharpening { sub, sup } => {
                out.insert(*sub);
                out.insert(*sup);
            }
        }
    }
}

impl From<KlmStatement> for DrslStatement {
    fn from(k: KlmStatement) -> Self {
        DrslStatement::Klm(k)
    }
}

/// A vocabulary together with an ordered list of statements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnowledgeBase {
    pub vocabulary: Vocabulary,
    pub statements: Vec<DrslStatement>,
}

impl KnowledgeBase {
    pub fn new(vocabulary: Vocabulary) -> Self {
        KnowledgeBase {
            vocabulary,
            statements: Vec::new(),
        }
    }

    /// True when every atom and standpoint used is registered in the vocabulary.
    pub fn is_hygienic(&self) -> bool {
        let mut atoms = BTreeSet::new();
        let mut sps = BTreeSet::new();
        for s in &self.statements {
            s.collect_atoms(&mut atoms);
            s.collect_standpoints(&mut sps);
        }
        atoms.iter().all(|a| a.index() < self.vocabulary.atom_count())
            && sps
                .iter()
                .all(|s| s.index() < self.vocabulary.standpoint_count())
    }
}
