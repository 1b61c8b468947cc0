//! Lexer and recursive-descent parser for the `.drsl` text format.
//!
//! Operator precedence, tightest first: `!` and the modal prefixes `[s]` / `<s>`,
//! then `&`, `|`, `->`, `<->`, `~>`. Implications are right-associative and `~>`
//! is non-associative. Input is first parsed into an untyped tree and then
//! sorted into Boolean, KLM and standpoint layers; the layering step is where
//! the restricted grammar is enforced.

use thiserror::Error;

use super::ast::{BoolFormula, DrslStatement, KlmStatement, KnowledgeBase, Modality};
use super::vocab::{is_identifier, StandpointId, Vocabulary, UNIVERSAL_NAME};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("unknown standpoint `{0}`")]
    UnknownStandpoint(String),
    #[error("modality inside Boolean position")]
    ModalityInBoolean,
    #[error("defeasible implication inside Boolean position")]
    DefeasibleInBoolean,
    #[error("`~>` is non-associative; parenthesize one side")]
    ChainedDefeasible,
    #[error("a sharpening `s <= t` must stand alone on its line")]
    SharpeningNotTopLevel,
    #[error("duplicate standpoint declaration `{0}`")]
    DuplicateStandpoint(String),
    #[error("`{0}` is not a valid standpoint name")]
    BadStandpointName(String),
    #[error("the `standpoints:` header must precede all statements")]
    LateHeader,
    #[error("empty statement")]
    Empty,
}

impl ParseError {
    fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Star,
    True,
    False,
    Bang,
    Amp,
    Pipe,
    Arrow,
    Iff,
    Leads,
    LBrack,
    RBrack,
    LAngle,
    RAngle,
    LParen,
    RParen,
    Leq,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Star => "`*`".into(),
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::Leads => "`~>`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::LAngle => "`<`".into(),
            Tok::RAngle => "`>`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Leq => "`<=`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str, first_line: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = first_line;
    let mut col = 1;
    while i < chars.len() {
        let c = chars[i];
        let start_col = col;
        let peek = chars.get(i + 1).copied();
        let peek2 = chars.get(i + 2).copied();
        let mut push = |tok: Tok, width: usize, i: &mut usize, col: &mut usize| {
            out.push(Token {
                tok,
                line,
                column: start_col,
            });
            *i += width;
            *col += width;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '!' => push(Tok::Bang, 1, &mut i, &mut col),
            '&' => push(Tok::Amp, 1, &mut i, &mut col),
            '|' => push(Tok::Pipe, 1, &mut i, &mut col),
            '[' => push(Tok::LBrack, 1, &mut i, &mut col),
            ']' => push(Tok::RBrack, 1, &mut i, &mut col),
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '>' => push(Tok::RAngle, 1, &mut i, &mut col),
            '*' => push(Tok::Star, 1, &mut i, &mut col),
            '-' if peek == Some('>') => push(Tok::Arrow, 2, &mut i, &mut col),
            '~' if peek == Some('>') => push(Tok::Leads, 2, &mut i, &mut col),
            '<' if peek == Some('-') && peek2 == Some('>') => push(Tok::Iff, 3, &mut i, &mut col),
            '<' if peek == Some('=') => push(Tok::Leq, 2, &mut i, &mut col),
            '<' => push(Tok::LAngle, 1, &mut i, &mut col),
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                let tok = match word.as_str() {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ => Tok::Ident(word),
                };
                let width = j - i;
                push(tok, width, &mut i, &mut col);
            }
            other => return Err(ParseError::new(line, col, ParseErrorKind::UnexpectedChar(other))),
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BinOp {
    And,
    Or,
    Implies,
    Iff,
}

#[derive(Debug)]
enum Raw {
    Atom(String),
    Top,
    Bottom,
    Not(Box<Node>),
    Bin(BinOp, Box<Node>, Box<Node>),
    Leads(Box<Node>, Box<Node>),
    Modal(Modality, String, Box<Node>),
}

#[derive(Debug)]
struct Node {
    raw: Raw,
    line: usize,
    column: usize,
}

impl Node {
    fn has_modal(&self) -> bool {
        match &self.raw {
            Raw::Modal(..) => true,
            Raw::Not(x) => x.has_modal(),
            Raw::Bin(_, a, b) | Raw::Leads(a, b) => a.has_modal() || b.has_modal(),
            _ => false,
        }
    }

    fn has_leads(&self) -> bool {
        match &self.raw {
            Raw::Leads(..) => true,
            Raw::Not(x) | Raw::Modal(_, _, x) => x.has_leads(),
            Raw::Bin(_, a, b) => a.has_leads() || b.has_leads(),
            _ => false,
        }
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let idx = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[idx].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, expected: &str) -> ParseError {
        let t = self.peek();
        let kind = match t.tok {
            Tok::Leq => ParseErrorKind::SharpeningNotTopLevel,
            _ => ParseErrorKind::Unexpected {
                expected: expected.to_string(),
                found: t.tok.describe(),
            },
        };
        ParseError::new(t.line, t.column, kind)
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<Token, ParseError> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.error_here(expected))
        }
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        if self.peek().tok == Tok::Eof {
            Ok(())
        } else {
            Err(self.error_here("end of input"))
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let lhs = self.iff()?;
        if self.peek().tok == Tok::Leads {
            let op = self.bump();
            let rhs = self.iff()?;
            if self.peek().tok == Tok::Leads {
                let t = self.peek();
                return Err(ParseError::new(
                    t.line,
                    t.column,
                    ParseErrorKind::ChainedDefeasible,
                ));
            }
            return Ok(Node {
                raw: Raw::Leads(Box::new(lhs), Box::new(rhs)),
                line: op.line,
                column: op.column,
            });
        }
        Ok(lhs)
    }

    fn right_assoc(
        &mut self,
        tok: Tok,
        op: BinOp,
        next: fn(&mut Self) -> Result<Node, ParseError>,
    ) -> Result<Node, ParseError> {
        let lhs = next(self)?;
        if self.peek().tok == tok {
            let t = self.bump();
            let rhs = self.right_assoc(tok, op, next)?;
            return Ok(Node {
                raw: Raw::Bin(op, Box::new(lhs), Box::new(rhs)),
                line: t.line,
                column: t.column,
            });
        }
        Ok(lhs)
    }

    fn left_assoc(
        &mut self,
        tok: Tok,
        op: BinOp,
        next: fn(&mut Self) -> Result<Node, ParseError>,
    ) -> Result<Node, ParseError> {
        let mut lhs = next(self)?;
        while self.peek().tok == tok {
            let t = self.bump();
            let rhs = next(self)?;
            lhs = Node {
                raw: Raw::Bin(op, Box::new(lhs), Box::new(rhs)),
                line: t.line,
                column: t.column,
            };
        }
        Ok(lhs)
    }

    fn iff(&mut self) -> Result<Node, ParseError> {
        self.right_assoc(Tok::Iff, BinOp::Iff, Self::implies)
    }

    fn implies(&mut self) -> Result<Node, ParseError> {
        self.right_assoc(Tok::Arrow, BinOp::Implies, Self::or)
    }

    fn or(&mut self) -> Result<Node, ParseError> {
        self.left_assoc(Tok::Pipe, BinOp::Or, Self::and)
    }

    fn and(&mut self) -> Result<Node, ParseError> {
        self.left_assoc(Tok::Amp, BinOp::And, Self::unary)
    }

    fn standpoint_name(&mut self) -> Result<String, ParseError> {
        match self.peek().tok.clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(name)
            }
            Tok::Star => {
                self.bump();
                Ok(UNIVERSAL_NAME.to_string())
            }
            _ => Err(self.error_here("a standpoint name")),
        }
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Bang => {
                self.bump();
                let inner = self.unary()?;
                Ok(Node {
                    raw: Raw::Not(Box::new(inner)),
                    line: t.line,
                    column: t.column,
                })
            }
            Tok::LBrack => {
                self.bump();
                let s = self.standpoint_name()?;
                self.expect(Tok::RBrack, "`]`")?;
                let inner = self.unary()?;
                Ok(Node {
                    raw: Raw::Modal(Modality::Box, s, Box::new(inner)),
                    line: t.line,
                    column: t.column,
                })
            }
            Tok::LAngle => {
                self.bump();
                let s = self.standpoint_name()?;
                self.expect(Tok::RAngle, "`>`")?;
                let inner = self.unary()?;
                Ok(Node {
                    raw: Raw::Modal(Modality::Diamond, s, Box::new(inner)),
                    line: t.line,
                    column: t.column,
                })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Node, ParseError> {
        let t = self.peek().clone();
        let raw = match t.tok {
            Tok::Ident(name) => {
                self.bump();
                Raw::Atom(name)
            }
            Tok::True => {
                self.bump();
                Raw::Top
            }
            Tok::False => {
                self.bump();
                Raw::Bottom
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                return Ok(inner);
            }
            Tok::Eof if self.pos == 0 => {
                return Err(ParseError::new(t.line, t.column, ParseErrorKind::Empty))
            }
            _ => return Err(self.error_here("a formula")),
        };
        Ok(Node {
            raw,
            line: t.line,
            column: t.column,
        })
    }
}

/// How unknown symbols are treated while resolving names.
#[derive(Clone, Copy, Debug)]
struct Policy {
    extend_atoms: bool,
    extend_standpoints: bool,
}

struct Resolver<'v> {
    vocab: &'v mut Vocabulary,
    policy: Policy,
}

impl Resolver<'_> {
    fn atom(&mut self, name: &str, n: &Node) -> Result<BoolFormula, ParseError> {
        match self.vocab.atom(name) {
            Some(id) => Ok(BoolFormula::Atom(id)),
            None if self.policy.extend_atoms => Ok(BoolFormula::Atom(self.vocab.intern_atom(name))),
            None => Err(ParseError::new(
                n.line,
                n.column,
                ParseErrorKind::UnknownAtom(name.to_string()),
            )),
        }
    }

    fn standpoint(&mut self, name: &str, line: usize, column: usize) -> Result<StandpointId, ParseError> {
        match self.vocab.standpoint(name) {
            Some(id) => Ok(id),
            None if self.policy.extend_standpoints => Ok(self.vocab.intern_standpoint(name)),
            None => Err(ParseError::new(
                line,
                column,
                ParseErrorKind::UnknownStandpoint(name.to_string()),
            )),
        }
    }

    fn lower_bool(&mut self, n: &Node) -> Result<BoolFormula, ParseError> {
        Ok(match &n.raw {
            Raw::Atom(name) => self.atom(name, n)?,
            Raw::Top => BoolFormula::Top,
            Raw::Bottom => BoolFormula::Bottom,
            Raw::Not(x) => BoolFormula::not(self.lower_bool(x)?),
            Raw::Bin(op, a, b) => {
                let a = self.lower_bool(a)?;
                let b = self.lower_bool(b)?;
                match op {
                    BinOp::And => BoolFormula::and(a, b),
                    BinOp::Or => BoolFormula::or(a, b),
                    BinOp::Implies => BoolFormula::implies(a, b),
                    BinOp::Iff => BoolFormula::iff(a, b),
                }
            }
            Raw::Leads(..) => {
                return Err(ParseError::new(
                    n.line,
                    n.column,
                    ParseErrorKind::DefeasibleInBoolean,
                ))
            }
            Raw::Modal(..) => {
                return Err(ParseError::new(
                    n.line,
                    n.column,
                    ParseErrorKind::ModalityInBoolean,
                ))
            }
        })
    }

    fn lower_klm(&mut self, n: &Node) -> Result<KlmStatement, ParseError> {
        match &n.raw {
            Raw::Bin(BinOp::And, a, b) if n.has_leads() && !n.has_modal() => {
                Ok(KlmStatement::conj(self.lower_klm(a)?, self.lower_klm(b)?))
            }
            Raw::Leads(a, b) => Ok(KlmStatement::defeasible(self.lower_bool(a)?, self.lower_bool(b)?)),
            _ => Ok(KlmStatement::Bool(self.lower_bool(n)?)),
        }
    }

    fn lower_drsl(&mut self, n: &Node) -> Result<DrslStatement, ParseError> {
        match &n.raw {
            Raw::Modal(m, s, body) => {
                let s = self.standpoint(s, n.line, n.column)?;
                Ok(DrslStatement::Modal(*m, s, Box::new(self.lower_drsl(body)?)))
            }
            Raw::Bin(BinOp::And, a, b) if n.has_modal() => {
                Ok(DrslStatement::conj(self.lower_drsl(a)?, self.lower_drsl(b)?))
            }
            _ => Ok(DrslStatement::Klm(self.lower_klm(n)?)),
        }
    }
}

fn parse_tokens(text: &str, first_line: usize) -> Result<Parser, ParseError> {
    Ok(Parser {
        tokens: lex(text, first_line)?,
        pos: 0,
    })
}

fn statement_with(
    text: &str,
    first_line: usize,
    vocab: &mut Vocabulary,
    policy: Policy,
) -> Result<DrslStatement, ParseError> {
    let mut p = parse_tokens(text, first_line)?;
    let is_sp = |t: &Tok| matches!(t, Tok::Ident(_) | Tok::Star);
    if is_sp(p.peek_at(0)) && *p.peek_at(1) == Tok::Leq {
        let first = p.peek().clone();
        let sub = p.standpoint_name()?;
        p.bump();
        let second = p.peek().clone();
        let sup = p.standpoint_name()?;
        if p.peek().tok != Tok::Eof {
            let t = p.peek();
            return Err(ParseError::new(
                t.line,
                t.column,
                ParseErrorKind::SharpeningNotTopLevel,
            ));
        }
        let mut r = Resolver { vocab, policy };
        let sub = r.standpoint(&sub, first.line, first.column)?;
        let sup = r.standpoint(&sup, second.line, second.column)?;
        return Ok(DrslStatement::Sharpening { sub, sup });
    }
    let node = p.expr()?;
    p.expect_eof()?;
    Resolver { vocab, policy }.lower_drsl(&node)
}

/// Parses a Boolean formula; every atom must already be in `vocab`.
pub fn parse_bool(text: &str, vocab: &Vocabulary) -> Result<BoolFormula, ParseError> {
    let mut vocab = vocab.clone();
    let mut p = parse_tokens(text, 1)?;
    let node = p.expr()?;
    p.expect_eof()?;
    Resolver {
        vocab: &mut vocab,
        policy: Policy {
            extend_atoms: false,
            extend_standpoints: false,
        },
    }
    .lower_bool(&node)
}

/// Parses a propositional KLM statement; every atom must already be in `vocab`.
pub fn parse_klm(text: &str, vocab: &Vocabulary) -> Result<KlmStatement, ParseError> {
    let mut vocab = vocab.clone();
    let mut p = parse_tokens(text, 1)?;
    let node = p.expr()?;
    p.expect_eof()?;
    let mut r = Resolver {
        vocab: &mut vocab,
        policy: Policy {
            extend_atoms: false,
            extend_standpoints: false,
        },
    };
    if node.has_modal() {
        return Err(ParseError::new(
            node.line,
            node.column,
            ParseErrorKind::ModalityInBoolean,
        ));
    }
    r.lower_klm(&node)
}

/// Parses one standpoint statement against a fixed vocabulary.
pub fn parse_statement(text: &str, vocab: &Vocabulary) -> Result<DrslStatement, ParseError> {
    let mut vocab = vocab.clone();
    statement_with(
        text,
        1,
        &mut vocab,
        Policy {
            extend_atoms: false,
            extend_standpoints: false,
        },
    )
}

/// Parses one statement, registering any new atoms or standpoints in `vocab`.
pub fn parse_statement_extending(
    text: &str,
    vocab: &mut Vocabulary,
) -> Result<DrslStatement, ParseError> {
    statement_with(
        text,
        1,
        vocab,
        Policy {
            extend_atoms: true,
            extend_standpoints: true,
        },
    )
}

const HEADER: &str = "standpoints:";

/// Parses a knowledge-base document.
///
/// An optional first line `standpoints: a, b, ...` pre-declares standpoint
/// symbols; when present, any other standpoint name is an error. Atoms are
/// always collected from use, in order of first occurrence.
pub fn parse_kb(text: &str) -> Result<KnowledgeBase, ParseError> {
    let mut vocab = Vocabulary::new();
    let mut statements = Vec::new();
    let mut strict_standpoints = false;
    let mut seen_content = false;
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw_line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix(HEADER) {
            if seen_content {
                return Err(ParseError::new(line_no, 1, ParseErrorKind::LateHeader));
            }
            seen_content = true;
            strict_standpoints = true;
            let offset = raw_line.find(HEADER).unwrap_or(0) + HEADER.len();
            let mut column = offset + 1;
            for part in rest.split(',') {
                let name = part.trim();
                let lead = part.len() - part.trim_start().len();
                if name.is_empty() {
                    if rest.trim().is_empty() {
                        break;
                    }
                    return Err(ParseError::new(
                        line_no,
                        column + lead,
                        ParseErrorKind::BadStandpointName(String::new()),
                    ));
                }
                if !is_identifier(name) && name != UNIVERSAL_NAME {
                    return Err(ParseError::new(
                        line_no,
                        column + lead,
                        ParseErrorKind::BadStandpointName(name.to_string()),
                    ));
                }
                if vocab.standpoint(name).is_some() {
                    return Err(ParseError::new(
                        line_no,
                        column + lead,
                        ParseErrorKind::DuplicateStandpoint(name.to_string()),
                    ));
                }
                vocab.intern_standpoint(name);
                column += part.len() + 1;
            }
            continue;
        }
        seen_content = true;
        let policy = Policy {
            extend_atoms: true,
            extend_standpoints: !strict_standpoints,
        };
        statements.push(statement_with(raw_line, line_no, &mut vocab, policy)?);
    }
    Ok(KnowledgeBase {
        vocabulary: vocab,
        statements,
    })
}
