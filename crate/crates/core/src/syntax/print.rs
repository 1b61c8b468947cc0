//! Canonical text rendering. Output always reparses to a structurally equal tree.

use std::fmt::Write;

use super::ast::{BoolFormula, DrslStatement, KlmStatement, KnowledgeBase, Modality};
use super::vocab::Vocabulary;

const PREC_IFF: u8 = 1;
const PREC_IMPLIES: u8 = 2;
const PREC_OR: u8 = 3;
const PREC_AND: u8 = 4;
const PREC_UNARY: u8 = 5;

fn prec(f: &BoolFormula) -> u8 {
    match f {
        BoolFormula::Iff(..) => PREC_IFF,
        BoolFormula::Implies(..) => PREC_IMPLIES,
        BoolFormula::Or(..) => PREC_OR,
        BoolFormula::And(..) => PREC_AND,
        _ => PREC_UNARY,
    }
}

fn write_bool_at(out: &mut String, f: &BoolFormula, min_prec: u8, vocab: &Vocabulary) {
    if prec(f) < min_prec {
        out.push('(');
        write_bool_at(out, f, 0, vocab);
        out.push(')');
        return;
    }
    match f {
        BoolFormula::Atom(a) => out.push_str(vocab.atom_name(*a)),
        BoolFormula::Top => out.push_str("true"),
        BoolFormula::Bottom => out.push_str("false"),
        BoolFormula::Not(x) => {
            out.push('!');
            write_bool_at(out, x, PREC_UNARY, vocab);
        }
        BoolFormula::And(a, b) => binary(out, a, b, " & ", PREC_AND, true, vocab),
        BoolFormula::Or(a, b) => binary(out, a, b, " | ", PREC_OR, true, vocab),
        BoolFormula::Implies(a, b) => binary(out, a, b, " -> ", PREC_IMPLIES, false, vocab),
        BoolFormula::Iff(a, b) => binary(out, a, b, " <-> ", PREC_IFF, false, vocab),
    }
}

fn binary(
    out: &mut String,
    a: &BoolFormula,
    b: &BoolFormula,
    op: &str,
    p: u8,
    left_assoc: bool,
    vocab: &Vocabulary,
) {
    let (lp, rp) = if left_assoc { (p, p + 1) } else { (p + 1, p) };
    write_bool_at(out, a, lp, vocab);
    out.push_str(op);
    write_bool_at(out, b, rp, vocab);
}

pub fn print_bool(f: &BoolFormula, vocab: &Vocabulary) -> String {
    let mut out = String::new();
    write_bool_at(&mut out, f, 0, vocab);
    out
}

fn write_klm(out: &mut String, k: &KlmStatement, vocab: &Vocabulary) {
    match k {
        KlmStatement::Bool(f) => write_bool_at(out, f, 0, vocab),
        KlmStatement::Defeasible {
            antecedent,
            consequent,
        } => {
            write_bool_at(out, antecedent, 0, vocab);
            out.push_str(" ~> ");
            write_bool_at(out, consequent, 0, vocab);
        }
        KlmStatement::Conj(a, b) => {
            write_klm_operand(out, a, vocab);
            out.push_str(" & ");
            write_klm_operand(out, b, vocab);
        }
    }
}

fn write_klm_operand(out: &mut String, k: &KlmStatement, vocab: &Vocabulary) {
    match k {
        KlmStatement::Bool(f) if prec(f) >= PREC_UNARY => write_bool_at(out, f, 0, vocab),
        other => {
            out.push('(');
            write_klm(out, other, vocab);
            out.push(')');
        }
    }
}

pub fn print_klm(k: &KlmStatement, vocab: &Vocabulary) -> String {
    let mut out = String::new();
    write_klm(&mut out, k, vocab);
    out
}

fn write_drsl(out: &mut String, s: &DrslStatement, vocab: &Vocabulary) {
    match s {
        DrslStatement::Klm(k) => write_klm(out, k, vocab),
        DrslStatement::Modal(m, sp, body) => {
            let name = vocab.standpoint_name(*sp);
            match m {
                Modality::Box => write!(out, "[{name}] ").unwrap(),
                Modality::Diamond => write!(out, "<{name}> ").unwrap(),
            }
            match body.as_ref() {
                DrslStatement::Modal(..) => write_drsl(out, body, vocab),
                other => {
                    out.push('(');
                    write_drsl(out, other, vocab);
                    out.push(')');
                }
            }
        }
        DrslStatement::Conj(a, b) => {
            write_drsl_operand(out, a, vocab);
            out.push_str(" & ");
            write_drsl_operand(out, b, vocab);
        }
        DrslStatement::Sharpening { sub, sup } => {
            write!(
                out,
                "{} <= {}",
                vocab.standpoint_name(*sub),
                vocab.standpoint_name(*sup)
            )
            .unwrap();
        }
    }
}

fn write_drsl_operand(out: &mut String, s: &DrslStatement, vocab: &Vocabulary) {
    match s {
        DrslStatement::Modal(..) => write_drsl(out, s, vocab),
        DrslStatement::Klm(k) => write_klm_operand(out, k, vocab),
        other => {
            out.push('(');
            write_drsl(out, other, vocab);
            out.push(')');
        }
    }
}

pub fn print_statement(s: &DrslStatement, vocab: &Vocabulary) -> String {
    let mut out = String::new();
    write_drsl(&mut out, s, vocab);
    out
}

/// Renders a full document: a `standpoints:` header listing every non-universal
/// standpoint, then one statement per line.
pub fn print_kb(kb: &KnowledgeBase) -> String {
    let mut out = String::new();
    let names: Vec<&str> = kb
        .vocabulary
        .standpoints()
        .filter(|s| !s.is_universal())
        .map(|s| s.name)
        .collect();
    if !names.is_empty() {
        writeln!(out, "standpoints: {}", names.join(", ")).unwrap();
    }
    for s in &kb.statements {
        out.push_str(&print_statement(s, &kb.vocabulary));
        out.push('\n');
    }
    out
}
