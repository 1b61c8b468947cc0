use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classical::satisfiable;
use crate::klm::RationalClosure;
use crate::normalize::{normalize_kb, NormalStatement};
use crate::standpoint::standpoint_split;
use crate::syntax::{
    parse_kb, print_kb, AtomId, BoolFormula, DrslStatement, KlmStatement, KnowledgeBase, Modality,
    StandpointId, Vocabulary,
};

use super::EnumerationBudget;

const ATOM_NAMES: [&str; 4] = ["p", "q", "r", "w"];
const STANDPOINT_NAMES: [&str; 3] = ["A", "B", "C"];

/// Shape parameters for random knowledge bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorProfile {
    /// At most 4.
    pub atoms: usize,
    /// Named standpoints besides `*`, at most 3.
    pub standpoints: usize,
    pub max_statements: usize,
    pub max_depth: usize,
    /// Keep knowledge bases where some split part has an unsatisfiable `R_∞`.
    pub allow_inconsistent: bool,
    pub max_attempts: usize,
}

impl Default for GeneratorProfile {
    fn default() -> Self {
        GeneratorProfile {
            atoms: 3,
            standpoints: 2,
            max_statements: 6,
            max_depth: 2,
            allow_inconsistent: false,
            max_attempts: 1000,
        }
    }
}

impl GeneratorProfile {
    pub fn from_budget(budget: &EnumerationBudget) -> Self {
        GeneratorProfile {
            atoms: budget.max_atoms,
            ..Default::default()
        }
    }
}

fn pick_atom<R: Rng>(rng: &mut R, atoms: usize) -> BoolFormula {
    BoolFormula::Atom(AtomId(rng.gen_range(0..atoms) as u32))
}

/// A random formula over the first `atoms` atoms, nested at most `depth` deep.
/// With no atoms only `true` and `false` are drawn.
pub fn random_bool<R: Rng>(rng: &mut R, atoms: usize, depth: usize) -> BoolFormula {
    if atoms == 0 {
        return if rng.gen_bool(0.5) { BoolFormula::Top } else { BoolFormula::Bottom };
    }
    if depth == 0 || rng.gen_bool(0.35) {
        return match rng.gen_range(0..20) {
            0 => BoolFormula::Top,
            1 => BoolFormula::Bottom,
            2..=6 => BoolFormula::not(pick_atom(rng, atoms)),
            _ => pick_atom(rng, atoms),
        };
    }
    let a = random_bool(rng, atoms, depth - 1);
    let b = random_bool(rng, atoms, depth - 1);
    match rng.gen_range(0..6) {
        0 => BoolFormula::not(a),
        1 | 2 => BoolFormula::and(a, b),
        3 => BoolFormula::or(a, b),
        4 => BoolFormula::implies(a, b),
        _ => BoolFormula::iff(a, b),
    }
}

pub fn random_defeasible<R: Rng>(rng: &mut R, atoms: usize, depth: usize) -> KlmStatement {
    KlmStatement::defeasible(random_bool(rng, atoms, depth), random_bool(rng, atoms, depth))
}

/// Up to `max_len` statements, mostly defeasible, some strict.
pub fn random_klm_kb<R: Rng>(rng: &mut R, atoms: usize, max_len: usize, depth: usize) -> Vec<KlmStatement> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            if rng.gen_bool(0.2) {
                KlmStatement::Bool(random_bool(rng, atoms, depth))
            } else {
                random_defeasible(rng, atoms, depth)
            }
        })
        .collect()
}

/// A conjunction of KLM statements always contains a defeasible one, so it
/// cannot be mistaken for a Boolean conjunction when reparsed.
fn random_klm_body<R: Rng>(rng: &mut R, atoms: usize, depth: usize) -> KlmStatement {
    match rng.gen_range(0..20) {
        0..=12 => random_defeasible(rng, atoms, depth),
        13..=16 => KlmStatement::Bool(random_bool(rng, atoms, depth)),
        _ => {
            let d = random_defeasible(rng, atoms, depth);
            let other = if rng.gen_bool(0.5) {
                random_defeasible(rng, atoms, depth)
            } else {
                KlmStatement::Bool(random_bool(rng, atoms, depth))
            };
            if rng.gen_bool(0.5) {
                KlmStatement::conj(d, other)
            } else {
                KlmStatement::conj(other, d)
            }
        }
    }
}

fn random_modality<R: Rng>(rng: &mut R) -> Modality {
    if rng.gen_bool(0.6) {
        Modality::Box
    } else {
        Modality::Diamond
    }
}

fn random_modal<R: Rng>(rng: &mut R, atoms: usize, sps: &[StandpointId], depth: usize) -> DrslStatement {
    let s = *sps.choose(rng).expect("at least `*`");
    DrslStatement::Modal(
        random_modality(rng),
        s,
        Box::new(DrslStatement::Klm(random_klm_body(rng, atoms, depth))),
    )
}

/// One statement in any of the supported shapes. `sps` are the standpoints that
/// may appear under a modality (normally including `*`); a sharpening is only drawn
/// when `sharpenings` is set and some named standpoint exists, and never has `*`
/// on its left.
pub fn random_drsl_statement<R: Rng>(
    rng: &mut R,
    atoms: usize,
    sps: &[StandpointId],
    depth: usize,
    sharpenings: bool,
) -> DrslStatement {
    let named: Vec<StandpointId> = sps.iter().copied().filter(|s| !s.is_universal()).collect();
    let shapes = if sharpenings && !named.is_empty() { 6 } else { 5 };
    match rng.gen_range(0..shapes) {
        0 | 1 => random_modal(rng, atoms, sps, depth),
        2 => DrslStatement::Klm(random_klm_body(rng, atoms, depth)),
        3 => {
            let a = random_modal(rng, atoms, sps, depth);
            let b = if rng.gen_bool(0.5) {
                random_modal(rng, atoms, sps, depth)
            } else {
                DrslStatement::Klm(random_klm_body(rng, atoms, depth))
            };
            if rng.gen_bool(0.5) {
                DrslStatement::conj(a, b)
            } else {
                DrslStatement::conj(b, a)
            }
        }
        4 => {
            let s = *sps.choose(rng).expect("at least `*`");
            let inner = random_modal(rng, atoms, sps, depth);
            let body = if rng.gen_bool(0.5) {
                inner
            } else {
                DrslStatement::conj(DrslStatement::Klm(random_klm_body(rng, atoms, depth)), inner)
            };
            DrslStatement::Modal(random_modality(rng), s, Box::new(body))
        }
        _ => {
            let sub = *named.choose(rng).expect("checked nonempty");
            let sups: Vec<StandpointId> = sps.iter().copied().filter(|&t| t != sub).collect();
            let sup = sups.choose(rng).copied().unwrap_or(StandpointId::UNIVERSAL);
            DrslStatement::Sharpening { sub, sup }
        }
    }
}

/// A normalized query: one or two modal KLM conjuncts over `sps`.
pub fn random_normal_query<R: Rng>(
    rng: &mut R,
    atoms: usize,
    sps: &[StandpointId],
    depth: usize,
) -> Vec<NormalStatement> {
    let n = if rng.gen_bool(0.8) { 1 } else { 2 };
    (0..n)
        .map(|_| {
            let s = *sps.choose(rng).expect("at least `*`");
            let m = random_modality(rng);
            let body = match m {
                Modality::Box => {
                    if rng.gen_bool(0.75) {
                        random_defeasible(rng, atoms, depth)
                    } else {
                        KlmStatement::Bool(random_bool(rng, atoms, depth))
                    }
                }
                Modality::Diamond => random_klm_body(rng, atoms, depth),
            };
            NormalStatement::new(m, s, body)
        })
        .collect()
}

fn acceptable(kb: &KnowledgeBase, profile: &GeneratorProfile) -> bool {
    let normal = normalize_kb(kb);
    let split = standpoint_split(&normal);
    let has_pi = split
        .kbs
        .iter()
        .any(|k| !(k.standpoint.is_universal() && k.extension.is_none()));
    if !has_pi {
        return false;
    }
    profile.allow_inconsistent
        || split.kbs.iter().all(|k| {
            let rc = RationalClosure::new(&k.statements);
            let core: Vec<BoolFormula> = rc
                .base_rank()
                .infinite_rank
                .iter()
                .map(|d| d.materialization())
                .collect();
            satisfiable(&core)
        })
}

/// A knowledge base determined by `seed`. The result is the parse of its own
/// printed form, so printing and reparsing reproduces it exactly. Candidates
/// with no precisification or, unless allowed, an inconsistent strict core in
/// some split part are redrawn; after `max_attempts` the last candidate is kept.
pub fn generate_random_kb(seed: u64, profile: &GeneratorProfile) -> KnowledgeBase {
    let atoms = profile.atoms.clamp(1, ATOM_NAMES.len());
    let named = profile.standpoints.min(STANDPOINT_NAMES.len());
    let vocab = Vocabulary::with_symbols(
        ATOM_NAMES[..atoms].iter().copied(),
        STANDPOINT_NAMES[..named].iter().copied(),
    );
    let mut sps = vec![StandpointId::UNIVERSAL];
    sps.extend(vocab.standpoint_ids().filter(|s| !s.is_universal()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = None;
    for _ in 0..profile.max_attempts.max(1) {
        let len = rng.gen_range(1..=profile.max_statements.max(1));
        let mut kb = KnowledgeBase::new(vocab.clone());
        kb.statements = (0..len)
            .map(|_| random_drsl_statement(&mut rng, atoms, &sps, profile.max_depth, true))
            .collect();
        let kb = parse_kb(&print_kb(&kb)).expect("printed knowledge bases parse");
        if acceptable(&kb, profile) {
            return kb;
        }
        last = Some(kb);
    }
    last.expect("at least one attempt")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_round_trips() {
        let p = GeneratorProfile::default();
        for seed in 0..50 {
            let kb = generate_random_kb(seed, &p);
            assert_eq!(kb, generate_random_kb(seed, &p));
            let text = print_kb(&kb);
            assert_eq!(parse_kb(&text).unwrap(), kb, "{text}");
            assert!(kb.statements.len() <= p.max_statements);
            assert!(kb.vocabulary.atom_count() <= p.atoms);
            assert!(acceptable(&kb, &p), "{text}");
        }
    }

    #[test]
    fn sharpenings_never_start_at_universal() {
        let p = GeneratorProfile::default();
        let mut seen = 0;
        for seed in 0..200 {
            for s in generate_random_kb(seed, &p).statements {
                if let DrslStatement::Sharpening { sub, sup } = s {
                    assert!(!sub.is_universal());
                    assert_ne!(sub, sup);
                    seen += 1;
                }
            }
        }
        assert!(seen > 0);
    }
}
