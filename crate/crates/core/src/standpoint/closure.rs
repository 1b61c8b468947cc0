use crate::syntax::{StandpointId, Vocabulary};

/// `s ⪯⁺ t` over every standpoint of a vocabulary: reflexive, transitive, `*` on top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpeningClosure {
    size: usize,
    rel: Vec<bool>,
}

impl SharpeningClosure {
    pub fn new(vocab: &Vocabulary, sharpenings: &[(StandpointId, StandpointId)]) -> Self {
        let size = vocab.standpoint_count();
        let mut rel = vec![false; size * size];
        for s in 0..size {
            rel[s * size + s] = true;
            rel[s * size + StandpointId::UNIVERSAL.index()] = true;
        }
        for &(a, b) in sharpenings {
            rel[a.index() * size + b.index()] = true;
        }
        for k in 0..size {
            for i in 0..size {
                if rel[i * size + k] {
                    for j in 0..size {
                        if rel[k * size + j] {
                            rel[i * size + j] = true;
                        }
                    }
                }
            }
        }
        SharpeningClosure { size, rel }
    }

    pub fn leq(&self, s: StandpointId, t: StandpointId) -> bool {
        self.rel[s.index() * self.size + t.index()]
    }

    /// Every `t` with `t ⪯⁺ s`.
    pub fn below(&self, s: StandpointId) -> impl Iterator<Item = StandpointId> + '_ {
        (0..self.size as u32)
            .map(StandpointId)
            .filter(move |t| self.leq(*t, s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tomato_closure() {
        let v = Vocabulary::with_symbols(Vec::<&str>::new(), ["B", "C", "L"]);
        let (b, c, l) = (v.standpoint("B").unwrap(), v.standpoint("C").unwrap(), v.standpoint("L").unwrap());
        let star = StandpointId::UNIVERSAL;
        let cl = SharpeningClosure::new(&v, &[(l, c)]);
        assert!(cl.leq(l, c) && cl.leq(l, l) && cl.leq(l, star) && cl.leq(c, star) && cl.leq(b, star));
        assert!(!cl.leq(c, l) && !cl.leq(star, b));
        assert_eq!(cl.below(c).collect::<Vec<_>>(), vec![c, l]);
    }

    #[test]
    fn chains_are_transitive() {
        let v = Vocabulary::with_symbols(Vec::<&str>::new(), ["a", "b", "c"]);
        let (a, b, c) = (v.standpoint("a").unwrap(), v.standpoint("b").unwrap(), v.standpoint("c").unwrap());
        let cl = SharpeningClosure::new(&v, &[(a, b), (b, c)]);
        assert!(cl.leq(a, c));
        assert!(!cl.leq(c, a));
        let plain = SharpeningClosure::new(&v, &[]);
        assert!(!plain.leq(a, b) && plain.leq(a, a) && plain.leq(a, StandpointId::UNIVERSAL));
    }
}
