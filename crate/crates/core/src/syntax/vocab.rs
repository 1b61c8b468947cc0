use std::collections::HashMap;
use std::fmt;

/// Index of a propositional atom within its vocabulary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomId(pub u32);

impl AtomId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Index of a standpoint symbol within its vocabulary. Index 0 is always `*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandpointId(pub u32);

impl StandpointId {
    pub const UNIVERSAL: StandpointId = StandpointId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_universal(self) -> bool {
        self == Self::UNIVERSAL
    }
}

/// A named atom together with its ordinal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Atom<'a> {
    pub name: &'a str,
    pub index: AtomId,
}

/// A named standpoint symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StandpointSymbol<'a> {
    pub name: &'a str,
    pub id: StandpointId,
}

impl StandpointSymbol<'_> {
    pub fn is_universal(&self) -> bool {
        self.id.is_universal()
    }
}

pub const UNIVERSAL_NAME: &str = "*";

/// The pair of atom and standpoint lists a knowledge base is written over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vocabulary {
    atoms: Vec<String>,
    atom_index: HashMap<String, AtomId>,
    standpoints: Vec<String>,
    standpoint_index: HashMap<String, StandpointId>,
}

impl Default for Vocabulary {
    fn default() -> Self {
        Self::new()
    }
}

pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Vocabulary {
    /// An empty vocabulary containing only the universal standpoint.
    pub fn new() -> Self {
        let mut standpoint_index = HashMap::new();
        standpoint_index.insert(UNIVERSAL_NAME.to_string(), StandpointId::UNIVERSAL);
        Vocabulary {
            atoms: Vec::new(),
            atom_index: HashMap::new(),
            standpoints: vec![UNIVERSAL_NAME.to_string()],
            standpoint_index,
        }
    }

    /// Builds a vocabulary from atom and standpoint names. Duplicates are merged.
    pub fn with_symbols<A, S>(atoms: A, standpoints: S) -> Self
    where
        A: IntoIterator,
        A::Item: AsRef<str>,
        S: IntoIterator,
        S::Item: AsRef<str>,
    {
        let mut vocab = Vocabulary::new();
        for a in atoms {
            vocab.intern_atom(a.as_ref());
        }
        for s in standpoints {
            vocab.intern_standpoint(s.as_ref());
        }
        vocab
    }

    pub fn intern_atom(&mut self, name: &str) -> AtomId {
        if let Some(&id) = self.atom_index.get(name) {
            return id;
        }
        let id = AtomId(self.atoms.len() as u32);
        self.atoms.push(name.to_string());
        self.atom_index.insert(name.to_string(), id);
        id
    }

    pub fn intern_standpoint(&mut self, name: &str) -> StandpointId {
        if let Some(&id) = self.standpoint_index.get(name) {
            return id;
        }
        let id = StandpointId(self.standpoints.len() as u32);
        self.standpoints.push(name.to_string());
        self.standpoint_index.insert(name.to_string(), id);
        id
    }

    pub fn atom(&self, name: &str) -> Option<AtomId> {
        self.atom_index.get(name).copied()
    }

    pub fn standpoint(&self, name: &str) -> Option<StandpointId> {
        self.standpoint_index.get(name).copied()
    }

    pub fn atom_name(&self, id: AtomId) -> &str {
        &self.atoms[id.index()]
    }

    pub fn standpoint_name(&self, id: StandpointId) -> &str {
        &self.standpoints[id.index()]
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn standpoint_count(&self) -> usize {
        self.standpoints.len()
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom<'_>> + '_ {
        self.atoms.iter().enumerate().map(|(i, name)| Atom {
            name,
            index: AtomId(i as u32),
        })
    }

    pub fn atom_names(&self) -> &[String] {
        &self.atoms
    }

    pub fn standpoints(&self) -> impl Iterator<Item = StandpointSymbol<'_>> + '_ {
        self.standpoints
            .iter()
            .enumerate()
            .map(|(i, name)| StandpointSymbol {
                name,
                id: StandpointId(i as u32),
            })
    }

    pub fn standpoint_ids(&self) -> impl Iterator<Item = StandpointId> {
        (0..self.standpoints.len() as u32).map(StandpointId)
    }

    /// Standpoint ids ordered by name; `*` sorts first.
    pub fn standpoints_sorted(&self) -> Vec<StandpointId> {
        let mut ids: Vec<_> = self.standpoint_ids().collect();
        ids.sort_by(|a, b| self.standpoint_name(*a).cmp(self.standpoint_name(*b)));
        ids
    }
}

impl fmt::Display for StandpointSymbol<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universal_is_always_present() {
        let v = Vocabulary::new();
        assert_eq!(v.standpoint_count(), 1);
        assert_eq!(v.standpoint("*"), Some(StandpointId::UNIVERSAL));
        assert_eq!(v.standpoints().filter(|s| s.is_universal()).count(), 1);
    }

    #[test]
    fn interning_is_a_bijection() {
        let mut v = Vocabulary::new();
        let p = v.intern_atom("p");
        let q = v.intern_atom("q");
        assert_eq!(v.intern_atom("p"), p);
        assert_ne!(p, q);
        assert_eq!(v.atom_name(q), "q");
        assert_eq!(v.atom_count(), 2);
    }

    #[test]
    fn identifiers() {
        assert!(is_identifier("tomato"));
        assert!(is_identifier("_x1"));
        assert!(!is_identifier("1x"));
        assert!(!is_identifier(""));
        assert!(!is_identifier("a-b"));
    }
}
