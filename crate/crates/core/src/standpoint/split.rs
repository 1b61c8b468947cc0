use std::collections::BTreeSet;

use crate::normalize::NormalKB;
use crate::syntax::{KlmStatement, Modality, StandpointId, Vocabulary};

use super::closure::SharpeningClosure;

/// One propositional knowledge base produced by the split: a base `K_s`
/// or a diamond extension `K_s^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitKb {
    pub label: String,
    pub standpoint: StandpointId,
    /// `None` for the base; otherwise the 1-based extension index for this standpoint.
    pub extension: Option<usize>,
    /// The diamond body that created this extension.
    pub diamond_body: Option<KlmStatement>,
    pub statements: Vec<KlmStatement>,
}

#[derive(Clone, Debug)]
pub struct SplitResult {
    /// Standpoints occurring in the knowledge base, sorted by name.
    pub standpoints: Vec<StandpointId>,
    /// Sorted by standpoint name, base before its extensions.
    pub kbs: Vec<SplitKb>,
    /// `Know_s` as indices into `kbs`, for each `s` in `standpoints ∪ {*}`, sorted by name.
    pub know: Vec<(StandpointId, Vec<usize>)>,
    pub closure: SharpeningClosure,
}

pub fn base_label(vocab: &Vocabulary, s: StandpointId) -> String {
    format!("K_{}", vocab.standpoint_name(s))
}

pub fn extension_label(vocab: &Vocabulary, s: StandpointId, i: usize) -> String {
    format!("K_{}^{i}", vocab.standpoint_name(s))
}

impl SplitResult {
    /// `Know_s`, or `None` when `s` is outside `S ∪ {*}`.
    pub fn know(&self, s: StandpointId) -> Option<&[usize]> {
        self.know
            .iter()
            .find(|(t, _)| *t == s)
            .map(|(_, ks)| ks.as_slice())
    }

    pub fn kb(&self, label: &str) -> Option<&SplitKb> {
        self.kbs.iter().find(|k| k.label == label)
    }

    pub fn know_labels(&self, s: StandpointId) -> Option<Vec<&str>> {
        self.know(s)
            .map(|ks| ks.iter().map(|&i| self.kbs[i].label.as_str()).collect())
    }

    pub fn knows(&self, s: StandpointId) -> bool {
        self.know(s).is_some()
    }
}

/// Occurring standpoints, with `*` included only when it occurs.
fn occurring(kb: &NormalKB) -> Vec<StandpointId> {
    let mut set = BTreeSet::new();
    for s in &kb.statements {
        set.insert(s.standpoint);
    }
    for &(a, b) in &kb.sharpenings {
        set.insert(a);
        set.insert(b);
    }
    let mut v: Vec<StandpointId> = set.into_iter().collect();
    v.sort_by(|a, b| kb.vocabulary.standpoint_name(*a).cmp(kb.vocabulary.standpoint_name(*b)));
    v
}

pub fn standpoint_split(kb: &NormalKB) -> SplitResult {
    let vocab = &kb.vocabulary;
    let closure = SharpeningClosure::new(vocab, &kb.sharpenings);
    let standpoints = occurring(kb);
    let mut kbs = Vec::new();
    for &s in &standpoints {
        let mut base: Vec<KlmStatement> = Vec::new();
        for st in &kb.statements {
            if st.modality == Modality::Box && closure.leq(s, st.standpoint) && !base.contains(&st.body) {
                base.push(st.body.clone());
            }
        }
        let mut bodies: Vec<&KlmStatement> = Vec::new();
        for st in &kb.statements {
            if st.modality == Modality::Diamond && st.standpoint == s && !bodies.contains(&&st.body) {
                bodies.push(&st.body);
            }
        }
        for (i, phi) in bodies.iter().enumerate() {
            let mut ext = base.clone();
            if !ext.contains(phi) {
                ext.push((*phi).clone());
            }
            kbs.push(SplitKb {
                label: extension_label(vocab, s, i + 1),
                standpoint: s,
                extension: Some(i + 1),
                diamond_body: Some((*phi).clone()),
                statements: ext,
            });
        }
        let pos = kbs.len() - bodies.len();
        kbs.insert(
            pos,
            SplitKb {
                label: base_label(vocab, s),
                standpoint: s,
                extension: None,
                diamond_body: None,
                statements: base,
            },
        );
    }
    let mut queryable = standpoints.clone();
    if !queryable.contains(&StandpointId::UNIVERSAL) {
        queryable.insert(0, StandpointId::UNIVERSAL);
    }
    let know = queryable
        .iter()
        .map(|&s| {
            let ks = kbs
                .iter()
                .enumerate()
                .filter(|(_, k)| {
                    closure.leq(k.standpoint, s)
                        && !(k.standpoint.is_universal() && k.extension.is_none())
                })
                .map(|(i, _)| i)
                .collect();
            (s, ks)
        })
        .collect();
    SplitResult {
        standpoints,
        kbs,
        know,
        closure,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::normalize_kb;
    use crate::syntax::{parse_kb, print_klm};

    const TOMATO: &str = "standpoints: B, C, L\n[B] (tomato -> fruit)\n[B] (fruit -> vegetable)\n\
        [C] (savoury <-> vegetable)\n[C] (sweet <-> fruit)\n[C] (tomato ~> savoury)\n\
        [C] (fruit ~> !vegetable) & [C] (vegetable ~> !fruit)\nL <= C\n[L] (vegetable -> !fruit)\n";

    fn split_of(text: &str) -> (NormalKB, SplitResult) {
        let n = normalize_kb(&parse_kb(text).unwrap());
        let s = standpoint_split(&n);
        (n, s)
    }

    fn members(n: &NormalKB, s: &SplitResult, label: &str) -> Vec<String> {
        s.kb(label)
            .unwrap()
            .statements
            .iter()
            .map(|k| print_klm(k, &n.vocabulary))
            .collect()
    }

    #[test]
    fn tomato_split() {
        let (n, s) = split_of(TOMATO);
        let id = |x| n.vocabulary.standpoint(x).unwrap();
        assert_eq!(members(&n, &s, "K_B"), ["tomato -> fruit", "fruit -> vegetable"]);
        assert_eq!(
            members(&n, &s, "K_C"),
            [
                "savoury <-> vegetable",
                "sweet <-> fruit",
                "tomato ~> savoury",
                "fruit ~> !vegetable",
                "vegetable ~> !fruit"
            ]
        );
        assert_eq!(
            members(&n, &s, "K_L"),
            [
                "savoury <-> vegetable",
                "sweet <-> fruit",
                "tomato ~> savoury",
                "fruit ~> !vegetable",
                "vegetable ~> !fruit",
                "vegetable -> !fruit"
            ]
        );
        assert_eq!(s.know_labels(id("B")).unwrap(), ["K_B"]);
        assert_eq!(s.know_labels(id("C")).unwrap(), ["K_C", "K_L"]);
        assert_eq!(s.know_labels(id("L")).unwrap(), ["K_L"]);
        assert_eq!(s.know_labels(StandpointId::UNIVERSAL).unwrap(), ["K_B", "K_C", "K_L"]);
    }

    #[test]
    fn diamond_extension() {
        let (n, s) = split_of(&format!("{TOMATO}<L> (sweet & tomato)\n<L> (sweet & tomato)\n"));
        let id = |x| n.vocabulary.standpoint(x).unwrap();
        assert_eq!(s.know_labels(id("C")).unwrap(), ["K_C", "K_L", "K_L^1"]);
        assert_eq!(s.know_labels(id("L")).unwrap(), ["K_L", "K_L^1"]);
        let ext = members(&n, &s, "K_L^1");
        assert_eq!(ext.len(), 7);
        assert_eq!(ext.last().unwrap(), "sweet & tomato");
    }

    #[test]
    fn universal_only() {
        let (_, s) = split_of("p ~> q\n");
        assert_eq!(s.standpoints, vec![StandpointId::UNIVERSAL]);
        assert!(s.know(StandpointId::UNIVERSAL).unwrap().is_empty());
        let (n, s) = split_of("p ~> q\n<*> (true)\n");
        assert_eq!(
            s.know_labels(StandpointId::UNIVERSAL).unwrap(),
            ["K_*^1"]
        );
        assert_eq!(members(&n, &s, "K_*^1"), ["p ~> q", "true"]);
    }

    #[test]
    fn unused_standpoint_is_unknown() {
        let (n, s) = split_of("standpoints: X, Y\n[X] (p)\n");
        assert!(s.knows(n.vocabulary.standpoint("X").unwrap()));
        assert!(!s.knows(n.vocabulary.standpoint("Y").unwrap()));
        assert!(s.knows(StandpointId::UNIVERSAL));
    }
}
