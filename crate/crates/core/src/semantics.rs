//! Ranked standpoint structures `(Π, σ, γ)`, satisfaction, and the representative structure
//! built from the split.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::exec::Execution;
use crate::klm::{InterpretationError, RankedInterpretation, RationalClosure};
use crate::normalize::NormalKB;
use crate::standpoint::{standpoint_split, SplitResult};
use crate::syntax::{DrslStatement, KnowledgeBase, Modality, StandpointId, Vocabulary};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("precisification index {0} is out of range")]
    UnknownPrecisification(usize),
    #[error("standpoint `{0}` has no precisifications assigned in this structure")]
    UnknownStandpoint(String),
    #[error("the statement mentions atoms outside the structure's {0}-atom vocabulary")]
    AtomOutOfRange(usize),
    #[error("the structure has no precisifications; if every statement is `[*]`-bound, use propositional rational closure instead")]
    EmptyPi,
    #[error("malformed structure: {0}")]
    Malformed(String),
    #[error("{0}")]
    Interpretation(#[from] InterpretationError),
    #[error("the vocabulary has {0} atoms, beyond the enumeration cap")]
    TooWide(usize),
}

/// `Π` is `0..pi.len()`, `σ` maps each assigned standpoint to sorted indices, `γ` is indexed like `Π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankedStandpointStructure {
    pub pi: Vec<String>,
    pub sigma: BTreeMap<StandpointId, Vec<usize>>,
    pub gamma: Vec<RankedInterpretation>,
}

impl RankedStandpointStructure {
    /// Checks `Π ≠ ∅`, `σ(s) ≠ ∅`, `σ(s) ⊆ Π`, `σ(*) = Π`, labels unique and widths equal.
    pub fn new(
        pi: Vec<String>,
        mut sigma: BTreeMap<StandpointId, Vec<usize>>,
        gamma: Vec<RankedInterpretation>,
    ) -> Result<Self, SemanticsError> {
        let bad = |m: String| Err(SemanticsError::Malformed(m));
        if pi.is_empty() {
            return Err(SemanticsError::EmptyPi);
        }
        if gamma.len() != pi.len() {
            return bad(format!("{} precisifications but {} interpretations", pi.len(), gamma.len()));
        }
        let mut labels = pi.clone();
        labels.sort();
        labels.dedup();
        if labels.len() != pi.len() {
            return bad("precisification labels must be unique".into());
        }
        if gamma.iter().any(|g| g.width() != gamma[0].width()) {
            return bad("interpretations disagree on the vocabulary width".into());
        }
        let all: Vec<usize> = (0..pi.len()).collect();
        match sigma.get(&StandpointId::UNIVERSAL) {
            Some(s) if *s != all => return bad("sigma(*) must be all of pi".into()),
            Some(_) => {}
            None => {
                sigma.insert(StandpointId::UNIVERSAL, all);
            }
        }
        for (s, ps) in sigma.iter_mut() {
            ps.sort_unstable();
            ps.dedup();
            if ps.is_empty() {
                return bad(format!("sigma of standpoint #{} is empty", s.index()));
            }
            if ps.iter().any(|&p| p >= pi.len()) {
                return bad(format!("sigma of standpoint #{} leaves pi", s.index()));
            }
        }
        Ok(RankedStandpointStructure { pi, sigma, gamma })
    }

    pub fn width(&self) -> usize {
        self.gamma[0].width()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.pi.iter().position(|p| p == label)
    }

    pub fn sigma_of(&self, s: StandpointId, vocab: &Vocabulary) -> Result<&[usize], SemanticsError> {
        self.sigma
            .get(&s)
            .map(|v| v.as_slice())
            .ok_or_else(|| SemanticsError::UnknownStandpoint(name_of(vocab, s)))
    }

    /// Every precisification has some finite-rank valuation.
    pub fn is_valid(&self) -> bool {
        self.gamma.iter().all(|g| g.has_finite())
    }

    /// Labels of precisifications whose interpretation puts every valuation at `∞`.
    pub fn invalid_precisifications(&self) -> Vec<&str> {
        self.pi
            .iter()
            .zip(&self.gamma)
            .filter(|(_, g)| !g.has_finite())
            .map(|(p, _)| p.as_str())
            .collect()
    }

    /// `M, π ⊩ ψ`.
    pub fn satisfies_at(
        &self,
        pi: usize,
        stmt: &DrslStatement,
        vocab: &Vocabulary,
    ) -> Result<bool, SemanticsError> {
        if pi >= self.pi.len() {
            return Err(SemanticsError::UnknownPrecisification(pi));
        }
        check_width(stmt, self.width())?;
        self.sat_at(pi, stmt, vocab)
    }

    fn sat_at(&self, pi: usize, stmt: &DrslStatement, vocab: &Vocabulary) -> Result<bool, SemanticsError> {
        Ok(match stmt {
            DrslStatement::Klm(k) => self.gamma[pi].satisfies(k),
            DrslStatement::Modal(m, s, body) => {
                let ps = self.sigma_of(*s, vocab)?;
                let mut any = false;
                let mut all = true;
                for &p in ps {
                    let r = self.sat_at(p, body, vocab)?;
                    any |= r;
                    all &= r;
                    if (*m == Modality::Box && !all) || (*m == Modality::Diamond && any) {
                        break;
                    }
                }
                match m {
                    Modality::Box => all,
                    Modality::Diamond => any,
                }
            }
            DrslStatement::Conj(a, b) => self.sat_at(pi, a, vocab)? && self.sat_at(pi, b, vocab)?,
            DrslStatement::Sharpening { sub, sup } => {
                let a = self.sigma_of(*sub, vocab)?;
                let b = self.sigma_of(*sup, vocab)?;
                a.iter().all(|p| b.contains(p))
            }
        })
    }

    /// `M ⊩ ψ`: satisfied at every precisification.
    pub fn satisfies(&self, stmt: &DrslStatement, vocab: &Vocabulary) -> Result<bool, SemanticsError> {
        check_width(stmt, self.width())?;
        for pi in 0..self.pi.len() {
            if !self.sat_at(pi, stmt, vocab)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `M ⊩ ψ` for every statement of `kb`.
    pub fn check_model(&self, kb: &KnowledgeBase) -> Result<bool, SemanticsError> {
        for s in &kb.statements {
            if !self.satisfies(s, &kb.vocabulary)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `{"pi": [...], "sigma": {s: [...]}, "gamma": {label: interpretation}}`.
    pub fn to_json(&self, vocab: &Vocabulary) -> Value {
        let mut sigma = Map::new();
        let mut ids: Vec<&StandpointId> = self.sigma.keys().collect();
        ids.sort_by(|a, b| vocab.standpoint_name(**a).cmp(vocab.standpoint_name(**b)));
        for s in ids {
            let labels: Vec<&str> = self.sigma[s].iter().map(|&p| self.pi[p].as_str()).collect();
            sigma.insert(vocab.standpoint_name(*s).to_string(), json!(labels));
        }
        let mut gamma = Map::new();
        for (p, g) in self.pi.iter().zip(&self.gamma) {
            gamma.insert(p.clone(), g.to_json(vocab));
        }
        json!({ "pi": self.pi, "sigma": sigma, "gamma": gamma })
    }

    pub fn from_json(value: &Value, vocab: &Vocabulary) -> Result<Self, SemanticsError> {
        let bad = |m: &str| SemanticsError::Malformed(m.to_string());
        let pi: Vec<String> = value
            .get("pi")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("`pi` must be an array of labels"))?
            .iter()
            .map(|v| v.as_str().map(str::to_string).ok_or_else(|| bad("labels must be strings")))
            .collect::<Result<_, _>>()?;
        let lookup = |label: &str| {
            pi.iter()
                .position(|p| p == label)
                .ok_or_else(|| SemanticsError::Malformed(format!("dangling precisification label `{label}`")))
        };
        let mut sigma = BTreeMap::new();
        let sig = value
            .get("sigma")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("`sigma` must be an object"))?;
        for (name, labels) in sig {
            let s = vocab
                .standpoint(name)
                .ok_or_else(|| SemanticsError::Malformed(format!("unknown standpoint `{name}` in sigma")))?;
            let ps = labels
                .as_array()
                .ok_or_else(|| bad("sigma entries must be arrays"))?
                .iter()
                .map(|l| l.as_str().ok_or_else(|| bad("labels must be strings")).and_then(lookup))
                .collect::<Result<Vec<_>, _>>()?;
            sigma.insert(s, ps);
        }
        let gam = value
            .get("gamma")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("`gamma` must be an object"))?;
        for label in gam.keys() {
            lookup(label)?;
        }
        let gamma = pi
            .iter()
            .map(|p| {
                let g = gam
                    .get(p)
                    .ok_or_else(|| SemanticsError::Malformed(format!("gamma is missing `{p}`")))?;
                Ok(RankedInterpretation::from_json(g, vocab)?)
            })
            .collect::<Result<Vec<_>, SemanticsError>>()?;
        RankedStandpointStructure::new(pi, sigma, gamma)
    }
}

fn name_of(vocab: &Vocabulary, s: StandpointId) -> String {
    if s.index() < vocab.standpoint_count() {
        vocab.standpoint_name(s).to_string()
    } else {
        format!("#{}", s.index())
    }
}

fn check_width(stmt: &DrslStatement, width: usize) -> Result<(), SemanticsError> {
    let mut atoms = std::collections::BTreeSet::new();
    stmt.collect_atoms(&mut atoms);
    if atoms.last().is_some_and(|a| a.index() >= width) {
        return Err(SemanticsError::AtomOutOfRange(width));
    }
    Ok(())
}

/// The representative structure together with the split it was built from.
#[derive(Clone, Debug)]
pub struct RcStructure {
    pub structure: RankedStandpointStructure,
    pub split: SplitResult,
    /// Index into `split.kbs` for each precisification.
    pub parts: Vec<usize>,
    pub diagnostics: Vec<String>,
}

/// Precisification label for a split part label: `K_L^1` becomes `pi_L^1`.
pub fn precisification_label(part_label: &str) -> String {
    format!("pi_{}", part_label.strip_prefix("K_").unwrap_or(part_label))
}

/// One precisification per split part except the base `K_*`; `σ(s)` mirrors `Know_s` and
/// each `γ(π)` is the minimal ranked model of its part.
pub fn build_rc_structure(kb: &NormalKB) -> Result<RcStructure, SemanticsError> {
    build_rc_structure_with(kb, Execution::default())
}

pub fn build_rc_structure_with(kb: &NormalKB, exec: Execution) -> Result<RcStructure, SemanticsError> {
    let width = kb.vocabulary.atom_count();
    if width > crate::classical::DEFAULT_ENUMERATION_CAP {
        return Err(SemanticsError::TooWide(width));
    }
    let split = standpoint_split(kb);
    let parts: Vec<usize> = split
        .kbs
        .iter()
        .enumerate()
        .filter(|(_, k)| !(k.standpoint.is_universal() && k.extension.is_none()))
        .map(|(i, _)| i)
        .collect();
    if parts.is_empty() {
        return Err(SemanticsError::EmptyPi);
    }
    let pi: Vec<String> = parts
        .iter()
        .map(|&i| precisification_label(&split.kbs[i].label))
        .collect();
    let gamma = exec.map(&parts, |&i| RationalClosure::new(&split.kbs[i].statements).model(width));
    let mut sigma = BTreeMap::new();
    for (s, know) in &split.know {
        let ps: Vec<usize> = know
            .iter()
            .map(|k| parts.iter().position(|p| p == k).expect("Know never holds K_*"))
            .collect();
        if !ps.is_empty() {
            sigma.insert(*s, ps);
        }
    }
    // A standpoint can vanish from the normal form, as `A` does in `[A] <B> (φ)`.
    // Its σ never affects satisfaction then, but must still be nonempty.
    let mut diagnostics = Vec::new();
    for s in kb.vocabulary.standpoint_ids() {
        if let std::collections::btree_map::Entry::Vacant(e) = sigma.entry(s) {
            e.insert((0..parts.len()).collect());
            diagnostics.push(format!(
                "standpoint {} does not occur in the normal form; sigma({0}) is set to all of pi",
                kb.vocabulary.standpoint_name(s)
            ));
        }
    }
    let structure = RankedStandpointStructure::new(pi, sigma, gamma)?;
    for p in structure.invalid_precisifications() {
        diagnostics.push(format!("{p} puts every valuation at rank ∞; the structure is not valid"));
    }
    Ok(RcStructure {
        structure,
        split,
        parts,
        diagnostics,
    })
}
