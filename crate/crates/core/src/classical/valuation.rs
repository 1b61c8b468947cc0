use std::fmt;

use thiserror::Error;

use crate::syntax::{AtomId, BoolFormula, Vocabulary};

/// Widest vocabulary a [`Valuation`] can describe.
pub const MAX_VALUATION_WIDTH: usize = 64;

/// Default cap on the atom count for anything that enumerates all valuations.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("enumerating valuations over {atoms} atoms exceeds the cap of {cap}")]
pub struct EnumerationCapExceeded {
    pub atoms: usize,
    pub cap: usize,
}

/// A classical truth assignment, stored as a bitvector indexed by atom ordinal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Valuation {
    bits: u64,
    width: u8,
}

impl Valuation {
    pub fn new(width: usize, bits: u64) -> Self {
        assert!(width <= MAX_VALUATION_WIDTH, "valuation width {width} too large");
        let mask = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
        Valuation {
            bits: bits & mask,
            width: width as u8,
        }
    }

    pub fn from_true_atoms<I: IntoIterator<Item = AtomId>>(width: usize, atoms: I) -> Self {
        let mut bits = 0u64;
        for a in atoms {
            assert!(a.index() < width);
            bits |= 1 << a.index();
        }
        Valuation::new(width, bits)
    }

    pub fn get(&self, atom: AtomId) -> bool {
        atom.index() < self.width as usize && (self.bits >> atom.index()) & 1 == 1
    }

    pub fn with(mut self, atom: AtomId, value: bool) -> Self {
        assert!(atom.index() < self.width as usize);
        if value {
            self.bits |= 1 << atom.index();
        } else {
            self.bits &= !(1 << atom.index());
        }
        self
    }

    /// The bit pattern; also the valuation's position in [`Valuation::all`].
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    /// Every valuation of the given width, in increasing bit order.
    pub fn all(width: usize) -> impl Iterator<Item = Valuation> {
        assert!(width < MAX_VALUATION_WIDTH);
        (0..(1u64 << width)).map(move |b| Valuation::new(width, b))
    }

    /// `p b -f` style rendering, atoms in vocabulary order.
    pub fn render(&self, vocab: &Vocabulary) -> String {
        let order: Vec<AtomId> = vocab.atoms().map(|a| a.index).collect();
        let labels: Vec<&str> = vocab.atoms().map(|a| a.name).collect();
        self.render_with(&order, &labels)
    }

    /// Renders the listed atoms in the given order under the given labels.
    pub fn render_with(&self, order: &[AtomId], labels: &[&str]) -> String {
        let mut out = String::new();
        for (i, (a, label)) in order.iter().zip(labels).enumerate() {
            if i > 0 {
                out.push(' ');
            }
            if !self.get(*a) {
                out.push('-');
            }
            out.push_str(label);
        }
        out
    }

    /// Parses the [`Valuation::render`] form. Every atom must appear exactly once.
    pub fn parse(text: &str, vocab: &Vocabulary) -> Result<Valuation, String> {
        let width = vocab.atom_count();
        let mut seen = vec![false; width];
        let mut bits = 0u64;
        for tok in text.split_whitespace() {
            let (neg, name) = match tok.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, tok),
            };
            let id = vocab
                .atom(name)
                .ok_or_else(|| format!("unknown atom `{name}` in valuation `{text}`"))?;
            if seen[id.index()] {
                return Err(format!("atom `{name}` repeated in valuation `{text}`"));
            }
            seen[id.index()] = true;
            if !neg {
                bits |= 1 << id.index();
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(format!(
                "valuation `{text}` does not mention atom `{}`",
                vocab.atom_name(AtomId(missing as u32))
            ));
        }
        Ok(Valuation::new(width, bits))
    }
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Valuation(")?;
        for i in 0..self.width {
            write!(f, "{}", (self.bits >> i) & 1)?;
        }
        write!(f, ")")
    }
}

/// Classical satisfaction `u ⊩ alpha`.
pub fn eval(u: &Valuation, alpha: &BoolFormula) -> bool {
    match alpha {
        BoolFormula::Atom(a) => u.get(*a),
        BoolFormula::Top => true,
        BoolFormula::Bottom => false,
        BoolFormula::Not(x) => !eval(u, x),
        BoolFormula::And(a, b) => eval(u, a) && eval(u, b),
        BoolFormula::Or(a, b) => eval(u, a) || eval(u, b),
        BoolFormula::Implies(a, b) => !eval(u, a) || eval(u, b),
        BoolFormula::Iff(a, b) => eval(u, a) == eval(u, b),
    }
}

/// The valuations over `vocab` satisfying `alpha`, in increasing bit order.
pub fn models_of(
    alpha: &BoolFormula,
    vocab: &Vocabulary,
) -> Result<Vec<Valuation>, EnumerationCapExceeded> {
    models_of_capped(alpha, vocab, DEFAULT_ENUMERATION_CAP)
}

pub fn models_of_capped(
    alpha: &BoolFormula,
    vocab: &Vocabulary,
    cap: usize,
) -> Result<Vec<Valuation>, EnumerationCapExceeded> {
    let width = vocab.atom_count();
    if width > cap || width >= MAX_VALUATION_WIDTH {
        return Err(EnumerationCapExceeded { atoms: width, cap });
    }
    Ok(Valuation::all(width).filter(|u| eval(u, alpha)).collect())
}

/// Bitset over the `2^width` valuations of a vocabulary.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruthTable {
    width: usize,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn empty(width: usize) -> Self {
        let n = 1usize << width;
        TruthTable {
            width,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn of(alpha: &BoolFormula, width: usize) -> Self {
        let mut t = TruthTable::empty(width);
        for u in Valuation::all(width) {
            if eval(&u, alpha) {
                t.insert(u.bits() as usize);
            }
        }
        t
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        1 << self.width
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn insert(&mut self, code: usize) {
        self.words[code / 64] |= 1 << (code % 64);
    }

    pub fn contains(&self, code: usize) -> bool {
        (self.words[code / 64] >> (code % 64)) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|c| self.contains(*c))
    }
}
