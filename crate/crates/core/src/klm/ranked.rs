//! Ranked interpretations: convex maps from valuations to `ℕ ∪ {∞}`.

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::classical::{eval, Valuation, MAX_VALUATION_WIDTH};
use crate::syntax::{AtomId, BoolFormula, KlmStatement, Vocabulary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rank {
    Finite(u32),
    Infinite,
}

impl Rank {
    pub fn is_finite(self) -> bool {
        matches!(self, Rank::Finite(_))
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(r) => write!(f, "{r}"),
            Rank::Infinite => f.write_str("∞"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InterpretationError {
    #[error("expected {expected} ranks for width {width}, got {got}")]
    WrongLength {
        width: usize,
        expected: usize,
        got: usize,
    },
    #[error("finite rank {0} is empty but a higher rank is occupied")]
    NotConvex(u32),
    #[error("valuation `{0}` is listed more than once")]
    Duplicate(String),
    #[error("valuation `{0}` is missing")]
    Missing(String),
    #[error("level {0} is empty")]
    EmptyLevel(usize),
    #[error("malformed interpretation: {0}")]
    Malformed(String),
}

/// A total, convex rank function over every valuation of a fixed width.
/// Valuations are addressed by their bit pattern.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RankedInterpretation {
    width: usize,
    ranks: Vec<Rank>,
}

impl fmt::Debug for RankedInterpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RankedInterpretation")
            .field("width", &self.width)
            .field("ranks", &self.ranks.iter().map(|r| r.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

impl RankedInterpretation {
    /// Validates length and convexity.
    pub fn from_ranks(width: usize, ranks: Vec<Rank>) -> Result<Self, InterpretationError> {
        assert!(width < MAX_VALUATION_WIDTH);
        let expected = 1usize << width;
        if ranks.len() != expected {
            return Err(InterpretationError::WrongLength {
                width,
                expected,
                got: ranks.len(),
            });
        }
        let max = ranks.iter().filter_map(|r| match r {
            Rank::Finite(k) => Some(*k),
            Rank::Infinite => None,
        });
        if let Some(top) = max.max() {
            let mut seen = vec![false; top as usize + 1];
            for r in &ranks {
                if let Rank::Finite(k) = r {
                    seen[*k as usize] = true;
                }
            }
            if let Some(gap) = seen.iter().position(|s| !s) {
                return Err(InterpretationError::NotConvex(gap as u32));
            }
        }
        Ok(RankedInterpretation { width, ranks })
    }

    /// Renumbers finite ranks densely, preserving their order.
    pub fn compacted(width: usize, ranks: Vec<Rank>) -> Self {
        let mut used: Vec<u32> = ranks
            .iter()
            .filter_map(|r| match r {
                Rank::Finite(k) => Some(*k),
                Rank::Infinite => None,
            })
            .collect();
        used.sort_unstable();
        used.dedup();
        let ranks = ranks
            .into_iter()
            .map(|r| match r {
                Rank::Finite(k) => Rank::Finite(used.binary_search(&k).unwrap() as u32),
                Rank::Infinite => Rank::Infinite,
            })
            .collect();
        RankedInterpretation::from_ranks(width, ranks).expect("compaction restores convexity")
    }

    /// Builds from explicit levels (lowest first) and the infinite set, given as valuation codes.
    pub fn from_levels(
        width: usize,
        levels: &[Vec<u64>],
        infinite: &[u64],
    ) -> Result<Self, InterpretationError> {
        let n = 1usize << width;
        let mut ranks: Vec<Option<Rank>> = vec![None; n];
        let place = |ranks: &mut Vec<Option<Rank>>, code: u64, r: Rank| {
            let c = code as usize;
            if c >= n {
                return Err(InterpretationError::Malformed(format!("code {code} out of range")));
            }
            if ranks[c].is_some() {
                return Err(InterpretationError::Duplicate(format!("{:?}", Valuation::new(width, code))));
            }
            ranks[c] = Some(r);
            Ok(())
        };
        for (i, level) in levels.iter().enumerate() {
            if level.is_empty() {
                return Err(InterpretationError::EmptyLevel(i));
            }
            for &c in level {
                place(&mut ranks, c, Rank::Finite(i as u32))?;
            }
        }
        for &c in infinite {
            place(&mut ranks, c, Rank::Infinite)?;
        }
        let ranks = ranks
            .into_iter()
            .enumerate()
            .map(|(c, r)| {
                r.ok_or_else(|| {
                    InterpretationError::Missing(format!("{:?}", Valuation::new(width, c as u64)))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        RankedInterpretation::from_ranks(width, ranks)
    }

    pub fn all_zero(width: usize) -> Self {
        RankedInterpretation {
            width,
            ranks: vec![Rank::Finite(0); 1 << width],
        }
    }

    pub fn all_infinite(width: usize) -> Self {
        RankedInterpretation {
            width,
            ranks: vec![Rank::Infinite; 1 << width],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn ranks(&self) -> &[Rank] {
        &self.ranks
    }

    pub fn rank(&self, u: &Valuation) -> Rank {
        debug_assert_eq!(u.width(), self.width);
        self.ranks[u.bits() as usize]
    }

    pub fn rank_of_code(&self, code: usize) -> Rank {
        self.ranks[code]
    }

    /// Number of finite levels.
    pub fn level_count(&self) -> usize {
        self.ranks
            .iter()
            .filter_map(|r| match r {
                Rank::Finite(k) => Some(*k as usize + 1),
                Rank::Infinite => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Valuations per finite level, each in increasing bit order.
    pub fn finite_levels(&self) -> Vec<Vec<Valuation>> {
        let mut levels = vec![Vec::new(); self.level_count()];
        for (c, r) in self.ranks.iter().enumerate() {
            if let Rank::Finite(k) = r {
                levels[*k as usize].push(Valuation::new(self.width, c as u64));
            }
        }
        levels
    }

    pub fn infinite_set(&self) -> Vec<Valuation> {
        self.ranks
            .iter()
            .enumerate()
            .filter(|(_, r)| **r == Rank::Infinite)
            .map(|(c, _)| Valuation::new(self.width, c as u64))
            .collect()
    }

    /// True when some valuation has finite rank.
    pub fn has_finite(&self) -> bool {
        self.ranks.iter().any(|r| r.is_finite())
    }

    /// `R ⊩ alpha`: every finite-rank valuation satisfies `alpha`.
    pub fn satisfies_bool(&self, alpha: &BoolFormula) -> bool {
        self.ranks
            .iter()
            .enumerate()
            .all(|(c, r)| !r.is_finite() || eval(&Valuation::new(self.width, c as u64), alpha))
    }

    /// `R ⊩ alpha ~> beta`: the minimal finite `alpha`-valuations all satisfy `beta`.
    pub fn satisfies_defeasible(&self, alpha: &BoolFormula, beta: &BoolFormula) -> bool {
        let mut best = Rank::Infinite;
        let mut ok = true;
        for (c, r) in self.ranks.iter().enumerate() {
            if !r.is_finite() || *r > best {
                continue;
            }
            let u = Valuation::new(self.width, c as u64);
            if !eval(&u, alpha) {
                continue;
            }
            let holds = eval(&u, beta);
            if *r < best {
                best = *r;
                ok = holds;
            } else {
                ok &= holds;
            }
        }
        ok
    }

    pub fn satisfies(&self, stmt: &KlmStatement) -> bool {
        match stmt {
            KlmStatement::Bool(a) => self.satisfies_bool(a),
            KlmStatement::Defeasible {
                antecedent,
                consequent,
            } => self.satisfies_defeasible(antecedent, consequent),
            KlmStatement::Conj(a, b) => self.satisfies(a) && self.satisfies(b),
        }
    }

    /// Pointwise `self(u) ≤ other(u)` with `∞` maximal.
    pub fn leq(&self, other: &RankedInterpretation) -> bool {
        assert_eq!(self.width, other.width);
        self.ranks.iter().zip(&other.ranks).all(|(a, b)| a <= b)
    }

    /// Table form: `∞` row first, then finite ranks descending. Within a row,
    /// valuations are listed in descending binary order reading `order` as most
    /// significant first.
    pub fn render_table(&self, order: &[AtomId], labels: &[&str]) -> String {
        let key = |u: &Valuation| -> u64 {
            order.iter().fold(0u64, |acc, a| (acc << 1) | u.get(*a) as u64)
        };
        let row = |mut vs: Vec<Valuation>| -> String {
            vs.sort_by_key(|u| std::cmp::Reverse(key(u)));
            vs.iter()
                .map(|u| u.render_with(order, labels))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut lines = Vec::new();
        let inf = row(self.infinite_set());
        lines.push(if inf.is_empty() {
            "∞ |".to_string()
        } else {
            format!("∞ | {inf}")
        });
        for (i, level) in self.finite_levels().into_iter().enumerate().rev() {
            lines.push(format!("{i} | {}", row(level)));
        }
        lines.join("\n")
    }

    /// [`render_table`](Self::render_table) with vocabulary order and names.
    pub fn to_table(&self, vocab: &Vocabulary) -> String {
        let order: Vec<AtomId> = vocab.atoms().map(|a| a.index).collect();
        let labels: Vec<&str> = vocab.atoms().map(|a| a.name).collect();
        self.render_table(&order, &labels)
    }

    /// `{"levels": [[...], ...], "infinite": [...]}` with valuations in `p b -f` form.
    pub fn to_json(&self, vocab: &Vocabulary) -> Value {
        let levels: Vec<Vec<String>> = self
            .finite_levels()
            .iter()
            .map(|l| l.iter().map(|u| u.render(vocab)).collect())
            .collect();
        let infinite: Vec<String> = self.infinite_set().iter().map(|u| u.render(vocab)).collect();
        json!({ "levels": levels, "infinite": infinite })
    }

    pub fn from_json(value: &Value, vocab: &Vocabulary) -> Result<Self, InterpretationError> {
        let bad = |m: &str| InterpretationError::Malformed(m.to_string());
        let strings = |v: &Value| -> Result<Vec<u64>, InterpretationError> {
            v.as_array()
                .ok_or_else(|| bad("expected an array of valuations"))?
                .iter()
                .map(|s| {
                    let s = s.as_str().ok_or_else(|| bad("valuations must be strings"))?;
                    Valuation::parse(s, vocab)
                        .map(|u| u.bits())
                        .map_err(InterpretationError::Malformed)
                })
                .collect()
        };
        let levels = value
            .get("levels")
            .ok_or_else(|| bad("missing `levels`"))?
            .as_array()
            .ok_or_else(|| bad("`levels` must be an array"))?
            .iter()
            .map(strings)
            .collect::<Result<Vec<_>, _>>()?;
        let infinite = match value.get("infinite") {
            Some(v) => strings(v)?,
            None => Vec::new(),
        };
        RankedInterpretation::from_levels(vocab.atom_count(), &levels, &infinite)
    }
}
