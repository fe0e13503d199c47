use serde::{Deserialize, Serialize};

use super::alphabet::{Kind, Registry, StructuredAlphabet, SymbolLabel};
use super::dfa::{Dfa, Word};
use super::{LanguageError, Mode};
use crate::sieve::SieveIndex;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub id: String,
    pub symbols: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphabetDoc {
    pub kind: Kind,
    pub components: Vec<ComponentDoc>,
}

impl AlphabetDoc {
    pub fn from_alphabet(alphabet: &StructuredAlphabet) -> Self {
        AlphabetDoc {
            kind: alphabet.kind(),
            components: alphabet
                .components()
                .iter()
                .map(|c| ComponentDoc { id: c.id().to_string(), symbols: c.symbols().to_vec() })
                .collect(),
        }
    }

    /// Resolves against `registry`; every component must match a registered
    /// alphabet exactly, and the result is in canonical order.
    pub fn resolve(&self, registry: &Registry) -> Result<StructuredAlphabet, LanguageError> {
        for c in &self.components {
            let registered = registry.get(&c.id)?;
            if registered.symbols() != c.symbols.as_slice() {
                return Err(LanguageError::AlphabetMismatch {
                    left: format!("{}{:?}", c.id, c.symbols),
                    right: format!("{}{:?}", registered.id(), registered.symbols()),
                });
            }
        }
        let index = SieveIndex::new(self.components.iter().map(|c| c.id.clone()));
        if index.len() != self.components.len() {
            return Err(LanguageError::DuplicateAlphabet(
                self.components.iter().map(|c| c.id.as_str()).collect::<Vec<_>>().join(","),
            ));
        }
        let alphabet = registry.alphabet(self.kind, &index)?;
        if alphabet.component_ids() != self.components.iter().map(|c| c.id.as_str()).collect::<Vec<_>>() {
            return Err(LanguageError::AlphabetMismatch {
                left: self.components.iter().map(|c| c.id.as_str()).collect::<Vec<_>>().join(","),
                right: alphabet.to_string(),
            });
        }
        Ok(alphabet)
    }
}

/// A DFA as written to and read from files. Missing transitions go to an
/// implicit dead state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaDoc {
    pub alphabet: AlphabetDoc,
    pub states: usize,
    pub initial: usize,
    pub accepting: Vec<usize>,
    pub delta: Vec<(usize, SymbolLabel, usize)>,
}

impl DfaDoc {
    pub fn from_dfa(d: &Dfa) -> Self {
        let alphabet = d.alphabet();
        let mut delta = Vec::with_capacity(d.states() * alphabet.len());
        for q in 0..d.states() {
            for s in 0..alphabet.len() {
                delta.push((q, alphabet.label(s), d.next(q, s)));
            }
        }
        DfaDoc {
            alphabet: AlphabetDoc::from_alphabet(alphabet),
            states: d.states(),
            initial: d.initial(),
            accepting: (0..d.states()).filter(|q| d.is_accepting(*q)).collect(),
            delta,
        }
    }

    pub fn into_dfa(self, registry: &Registry) -> Result<Dfa, LanguageError> {
        let alphabet = self.alphabet.resolve(registry)?;
        let transitions = self
            .delta
            .iter()
            .map(|(from, label, to)| Ok((*from, alphabet.parse_label(label)?, *to)))
            .collect::<Result<Vec<_>, LanguageError>>()?;
        Dfa::from_partial(alphabet, self.states, self.initial, &self.accepting, &transitions)
    }
}

/// A finite language given by its words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordsDoc {
    pub alphabet: AlphabetDoc,
    pub words: Vec<Vec<SymbolLabel>>,
}

impl WordsDoc {
    pub fn from_words(alphabet: &StructuredAlphabet, words: &[Word]) -> Self {
        WordsDoc {
            alphabet: AlphabetDoc::from_alphabet(alphabet),
            words: words.iter().map(|w| w.iter().map(|s| alphabet.label(*s)).collect()).collect(),
        }
    }

    pub fn into_dfa(self, registry: &Registry) -> Result<Dfa, LanguageError> {
        let alphabet = self.alphabet.resolve(registry)?;
        let words = self
            .words
            .iter()
            .map(|w| w.iter().map(|l| alphabet.parse_label(l)).collect())
            .collect::<Result<Vec<Word>, LanguageError>>()?;
        Dfa::from_words(alphabet, &words)
    }
}

/// A language document: an automaton or an explicit word list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LanguageDoc {
    Dfa(DfaDoc),
    Words(WordsDoc),
}

impl LanguageDoc {
    pub fn alphabet(&self) -> &AlphabetDoc {
        match self {
            LanguageDoc::Dfa(d) => &d.alphabet,
            LanguageDoc::Words(w) => &w.alphabet,
        }
    }

    pub fn into_dfa(self, registry: &Registry) -> Result<Dfa, LanguageError> {
        match self {
            LanguageDoc::Dfa(d) => d.into_dfa(registry),
            LanguageDoc::Words(w) => w.into_dfa(registry),
        }
    }
}

/// A sieve description: the composition kind and the base alphabets in
/// registration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveDoc {
    pub kind: Kind,
    pub alphabets: Vec<ComponentDoc>,
}

impl SieveDoc {
    pub fn into_registry(self) -> Result<(Registry, Mode), LanguageError> {
        let mut registry = Registry::new();
        for a in self.alphabets {
            registry.register(&a.id, a.symbols)?;
        }
        Ok((registry, Mode::of_kind(self.kind)))
    }
}
