//! Normal form: every statement becomes `[s] φ` or `<s> φ` over a modality-free body.

use thiserror::Error;

use crate::syntax::{
    print_kb, DrslStatement, KlmStatement, KnowledgeBase, Modality, StandpointId, Vocabulary,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalStatement {
    pub modality: Modality,
    pub standpoint: StandpointId,
    pub body: KlmStatement,
}

impl NormalStatement {
    pub fn new(modality: Modality, standpoint: StandpointId, body: KlmStatement) -> Self {
        NormalStatement {
            modality,
            standpoint,
            body,
        }
    }

    pub fn to_drsl(&self) -> DrslStatement {
        DrslStatement::Modal(
            self.modality,
            self.standpoint,
            Box::new(DrslStatement::Klm(self.body.clone())),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalKB {
    pub vocabulary: Vocabulary,
    pub sharpenings: Vec<(StandpointId, StandpointId)>,
    pub statements: Vec<NormalStatement>,
}

impl NormalKB {
    pub fn new(vocabulary: Vocabulary) -> Self {
        NormalKB {
            vocabulary,
            sharpenings: Vec::new(),
            statements: Vec::new(),
        }
    }

    /// Statements first, then sharpenings, as an ordinary knowledge base.
    pub fn to_knowledge_base(&self) -> KnowledgeBase {
        let mut statements: Vec<DrslStatement> =
            self.statements.iter().map(NormalStatement::to_drsl).collect();
        statements.extend(
            self.sharpenings
                .iter()
                .map(|&(sub, sup)| DrslStatement::Sharpening { sub, sup }),
        );
        KnowledgeBase {
            vocabulary: self.vocabulary.clone(),
            statements,
        }
    }

    /// The `.drsl` document for this normal form.
    pub fn to_document(&self) -> String {
        print_kb(&self.to_knowledge_base())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("a sharpening has no normal form as a modal statement")]
pub struct SharpeningNotNormalizable;

/// Drops every modality whose immediate child is again a modality.
pub fn collapse_modalities(stmt: &DrslStatement) -> DrslStatement {
    match stmt {
        DrslStatement::Modal(m, s, body) => match body.as_ref() {
            DrslStatement::Modal(..) => collapse_modalities(body),
            other => DrslStatement::Modal(*m, *s, Box::new(collapse_modalities(other))),
        },
        DrslStatement::Conj(a, b) => {
            DrslStatement::conj(collapse_modalities(a), collapse_modalities(b))
        }
        other => other.clone(),
    }
}

fn drsl_conjuncts<'a>(s: &'a DrslStatement, out: &mut Vec<&'a DrslStatement>) {
    match s {
        DrslStatement::Conj(a, b) => {
            drsl_conjuncts(a, out);
            drsl_conjuncts(b, out);
        }
        other => out.push(other),
    }
}

fn go(stmt: &DrslStatement, out: &mut Vec<NormalStatement>) -> Result<(), SharpeningNotNormalizable> {
    match stmt {
        DrslStatement::Sharpening { .. } => return Err(SharpeningNotNormalizable),
        DrslStatement::Klm(k) => {
            for c in k.conjuncts() {
                out.push(NormalStatement::new(Modality::Box, StandpointId::UNIVERSAL, c.clone()));
            }
        }
        DrslStatement::Conj(a, b) => {
            go(a, out)?;
            go(b, out)?;
        }
        DrslStatement::Modal(_, _, body) if matches!(body.as_ref(), DrslStatement::Modal(..)) => {
            go(body, out)?;
        }
        DrslStatement::Modal(m, s, body) => {
            let mut parts = Vec::new();
            drsl_conjuncts(body, &mut parts);
            let mut klm: Vec<KlmStatement> = Vec::new();
            let mut modal = Vec::new();
            for p in parts {
                match p {
                    DrslStatement::Klm(k) => klm.extend(k.conjuncts().into_iter().cloned()),
                    DrslStatement::Sharpening { .. } => return Err(SharpeningNotNormalizable),
                    other => modal.push(other),
                }
            }
            match m {
                Modality::Box => {
                    for k in klm {
                        out.push(NormalStatement::new(Modality::Box, *s, k));
                    }
                }
                Modality::Diamond => {
                    // Only modal conjuncts may leave a diamond; the KLM residue stays together.
                    if let Some(body) = KlmStatement::conjunction(klm) {
                        out.push(NormalStatement::new(Modality::Diamond, *s, body));
                    }
                }
            }
            for p in modal {
                go(p, out)?;
            }
        }
    }
    Ok(())
}

/// A conjunction-free list of normal statements equivalent to `stmt`.
pub fn normalize_statement(
    stmt: &DrslStatement,
) -> Result<Vec<NormalStatement>, SharpeningNotNormalizable> {
    let mut out = Vec::new();
    go(&collapse_modalities(stmt), &mut out)?;
    Ok(out)
}

pub fn normalize_kb(kb: &KnowledgeBase) -> NormalKB {
    let mut nkb = NormalKB::new(kb.vocabulary.clone());
    for s in &kb.statements {
        match s {
            DrslStatement::Sharpening { sub, sup } => nkb.sharpenings.push((*sub, *sup)),
            other => nkb
                .statements
                .extend(normalize_statement(other).expect("sharpenings are handled above")),
        }
    }
    nkb
}
