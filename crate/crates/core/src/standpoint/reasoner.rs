use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::classical::{Backend, Engine};
use crate::exec::Execution;
use crate::klm::RationalClosure;
use crate::normalize::{normalize_statement, NormalKB, NormalStatement};
use crate::syntax::{
    parse_statement_extending, DrslStatement, KlmStatement, Modality, ParseError, StandpointId,
    Vocabulary,
};

use super::split::{standpoint_split, SplitResult};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StandpointError {
    #[error(
        "standpoint `{0}` does not occur in the knowledge base; add `{0} <= *` to the knowledge base to reason about it"
    )]
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Standpoint(#[from] StandpointError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnswerMode {
    RcEntailment,
    ClassicalSharpening,
    ModelCheck,
}

/// One propositional rational closure call made while answering a query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    /// Index of the normalized query conjunct being checked.
    pub conjunct: usize,
    pub label: String,
    pub verdict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Answer {
    pub verdict: bool,
    pub mode: AnswerMode,
    pub trace: Vec<TraceEntry>,
    pub diagnostics: Vec<String>,
}

/// A query after normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Sharpening { sub: StandpointId, sup: StandpointId },
    Statements(Vec<NormalStatement>),
}

pub fn normalize_query(stmt: &DrslStatement) -> Query {
    match stmt {
        DrslStatement::Sharpening { sub, sup } => Query::Sharpening {
            sub: *sub,
            sup: *sup,
        },
        other => Query::Statements(normalize_statement(other).expect("not a sharpening")),
    }
}

/// A split knowledge base with lazily computed, cached rational closures per part.
#[derive(Debug)]
pub struct Reasoner {
    kb: NormalKB,
    split: SplitResult,
    closures: Vec<OnceLock<RationalClosure>>,
    engine: Engine,
    exec: Execution,
}

impl Reasoner {
    pub fn new(kb: NormalKB) -> Self {
        Self::with_options(kb, Execution::default(), Backend::default())
    }

    pub fn with_options(kb: NormalKB, exec: Execution, backend: Backend) -> Self {
        let split = standpoint_split(&kb);
        let closures = (0..split.kbs.len()).map(|_| OnceLock::new()).collect();
        Reasoner {
            kb,
            split,
            closures,
            engine: Engine::new(backend),
            exec,
        }
    }

    pub fn kb(&self) -> &NormalKB {
        &self.kb
    }

    pub fn split(&self) -> &SplitResult {
        &self.split
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn execution(&self) -> Execution {
        self.exec
    }

    pub fn closure(&self, part: usize) -> &RationalClosure {
        self.closures[part]
            .get_or_init(|| RationalClosure::with_engine(&self.engine, &self.split.kbs[part].statements))
    }

    /// Computes every part's ranking up front.
    pub fn prepare(&self) {
        self.exec.map_range(self.closures.len(), |i| {
            self.closure(i);
        });
    }

    pub fn rc_prop_at(&self, part: usize, phi: &KlmStatement) -> bool {
        self.closure(part).entails(&self.engine, phi)
    }

    fn check_known(&self, s: StandpointId) -> Result<(), StandpointError> {
        if s.index() < self.kb.vocabulary.standpoint_count() && self.split.knows(s) {
            return Ok(());
        }
        let name = if s.index() < self.kb.vocabulary.standpoint_count() {
            self.kb.vocabulary.standpoint_name(s).to_string()
        } else {
            format!("#{}", s.index())
        };
        Err(StandpointError::Unknown(name))
    }

    /// Parses a query against the knowledge base vocabulary and applies the
    /// closed-world check, so that unseen standpoint names are reported by name.
    pub fn parse_query(&self, text: &str) -> Result<DrslStatement, QueryError> {
        let mut vocab: Vocabulary = self.kb.vocabulary.clone();
        let stmt = parse_statement_extending(text, &mut vocab)?;
        let mut sps = std::collections::BTreeSet::new();
        stmt.collect_standpoints(&mut sps);
        for s in sps {
            if s.index() >= self.kb.vocabulary.standpoint_count() || !self.split.knows(s) {
                return Err(StandpointError::Unknown(vocab.standpoint_name(s).to_string()).into());
            }
        }
        // Atoms unseen in the knowledge base are fine: every part leaves them unconstrained.
        Ok(stmt)
    }

    pub fn ask(&self, stmt: &DrslStatement) -> Result<Answer, StandpointError> {
        match normalize_query(stmt) {
            Query::Sharpening { sub, sup } => {
                self.check_known(sub)?;
                self.check_known(sup)?;
                Ok(Answer {
                    verdict: self.split.closure.leq(sub, sup),
                    mode: AnswerMode::ClassicalSharpening,
                    trace: Vec::new(),
                    diagnostics: vec![
                        "sharpening queries are answered by closure membership, not rational closure"
                            .to_string(),
                    ],
                })
            }
            Query::Statements(q) => self.rc_standpoint(&q),
        }
    }

    /// All conjuncts must hold. `[s] φ` needs every part of `Know_s` to entail
    /// `φ`; `<s> φ` needs one. Parts are visited in sorted order and each
    /// conjunct stops at its first decisive part.
    pub fn rc_standpoint(&self, query: &[NormalStatement]) -> Result<Answer, StandpointError> {
        for q in query {
            self.check_known(q.standpoint)?;
        }
        let mut trace = Vec::new();
        let mut diagnostics = Vec::new();
        let mut verdict = true;
        for (ci, q) in query.iter().enumerate() {
            let know = self.split.know(q.standpoint).expect("checked above");
            let want = q.modality == Modality::Diamond;
            if know.is_empty() {
                diagnostics.push(format!(
                    "Know_{} is empty, so {} holds {}",
                    self.kb.vocabulary.standpoint_name(q.standpoint),
                    if want { "the diamond" } else { "the box" },
                    if want { "for no part (false)" } else { "vacuously (true)" }
                ));
            }
            let verdicts: Vec<bool> = if self.exec.is_parallel() && know.len() > 1 {
                self.exec.map(know, |&i| self.rc_prop_at(i, &q.body))
            } else {
                let mut v = Vec::new();
                for &i in know {
                    let r = self.rc_prop_at(i, &q.body);
                    v.push(r);
                    if r == want {
                        break;
                    }
                }
                v
            };
            let mut decided = !want;
            for (&i, &r) in know.iter().zip(&verdicts) {
                trace.push(TraceEntry {
                    conjunct: ci,
                    label: self.split.kbs[i].label.clone(),
                    verdict: r,
                });
                if r == want {
                    decided = want;
                    break;
                }
            }
            if !decided {
                verdict = false;
                break;
            }
        }
        Ok(Answer {
            verdict,
            mode: AnswerMode::RcEntailment,
            trace,
            diagnostics,
        })
    }
}

/// `K |≈ query` for a normalized, sharpening-free query.
pub fn rc_standpoint(kb: &NormalKB, query: &[NormalStatement]) -> Result<bool, StandpointError> {
    Reasoner::new(kb.clone())
        .rc_standpoint(query)
        .map(|a| a.verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::normalize_kb;
    use crate::syntax::parse_kb;

    fn reasoner(text: &str, exec: Execution) -> Reasoner {
        Reasoner::with_options(normalize_kb(&parse_kb(text).unwrap()), exec, Backend::Dpll)
    }

    fn ask(r: &Reasoner, q: &str) -> bool {
        r.ask(&r.parse_query(q).unwrap()).unwrap().verdict
    }

    const K: &str = "p -> b\nb ~> f\ns <= *\n";

    #[test]
    fn non_monotonic_pair() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let r = reasoner(K, exec);
            assert!(ask(&r, "[s] (p ~> f)"));
            assert!(ask(&r, "p ~> f"));
            let r2 = reasoner(&format!("{K}[s] (p ~> !f)\nt <= *\n"), exec);
            assert!(!ask(&r2, "[s] (p ~> f)"));
            assert!(!ask(&r2, "p ~> f"));
            assert!(ask(&r2, "[t] (p ~> f)"));
            assert!(ask(&r2, "<*> (p ~> f)"));
        }
    }

    #[test]
    fn closed_world() {
        let r = reasoner(K, Execution::Sequential);
        let err = r.parse_query("[X] (p ~> q)").unwrap_err();
        assert!(err.to_string().contains("add `X <= *`"), "{err}");
    }

    #[test]
    fn traces_match_across_strategies() {
        let text = format!("{K}[s] (p ~> !f)\nt <= *\n<t> (p)\n");
        let seq = reasoner(&text, Execution::Sequential);
        let par = reasoner(&text, Execution::Parallel);
        for q in ["p ~> f", "<*> (p ~> !f)", "[t] (b ~> f) & <s> (p ~> !f)", "<t> (p ~> b)"] {
            let a = seq.ask(&seq.parse_query(q).unwrap()).unwrap();
            let b = par.ask(&par.parse_query(q).unwrap()).unwrap();
            assert_eq!(a, b, "{q}");
        }
        let a = seq.ask(&seq.parse_query("p ~> f").unwrap()).unwrap();
        assert_eq!(
            a.trace.iter().map(|t| (t.label.as_str(), t.verdict)).collect::<Vec<_>>(),
            [("K_s", false)]
        );
    }

    #[test]
    fn sharpening_queries_and_vacuity() {
        let r = reasoner("standpoints: a, b\na <= b\n[b] (p)\n", Execution::Sequential);
        let a = r.ask(&r.parse_query("a <= b").unwrap()).unwrap();
        assert!(a.verdict);
        assert_eq!(a.mode, AnswerMode::ClassicalSharpening);
        assert!(!ask(&r, "b <= a"));
        assert!(ask(&r, "[a] (p)"));

        let only_star = reasoner("p ~> q\n", Execution::Sequential);
        let a = only_star.ask(&only_star.parse_query("p ~> !q").unwrap()).unwrap();
        assert!(a.verdict);
        assert_eq!(a.diagnostics.len(), 1);
        assert!(!ask(&only_star, "<*> (p ~> q)"));
    }

    #[test]
    fn tomato_queries() {
        let text = "standpoints: B, C, L\n[B] (tomato -> fruit)\n[B] (fruit -> vegetable)\n\
            [C] (savoury <-> vegetable)\n[C] (sweet <-> fruit)\n[C] (tomato ~> savoury)\n\
            [C] (fruit ~> !vegetable) & [C] (vegetable ~> !fruit)\nL <= C\n[L] (vegetable -> !fruit)\n";
        let r = reasoner(text, Execution::Parallel);
        assert!(ask(&r, "tomato ~> vegetable"));
        assert!(!ask(&r, "[L] (tomato -> !fruit)"));
        assert!(ask(&r, "[B] (tomato -> vegetable)"));
    }
}
