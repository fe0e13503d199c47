use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::LanguageError;
use crate::sieve::SieveIndex;

/// A registered base alphabet. `rank` is its position in the registry and
/// fixes the canonical component order of tuple alphabets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseAlphabet {
    id: String,
    rank: usize,
    symbols: Vec<String>,
}

impl BaseAlphabet {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// Symbols are tuples with one entry per component (synchronous composition).
    Tuple,
    /// Symbols are drawn from any one component (asynchronous composition).
    Union,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Tuple => "tuple",
            Kind::Union => "union",
        })
    }
}

/// A symbol as written in documents: a bare name, or one name per tuple
/// component. Single-component tuples are written bare.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SymbolLabel {
    Plain(String),
    Tuple(Vec<String>),
}

impl fmt::Display for SymbolLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolLabel::Plain(s) => f.write_str(s),
            SymbolLabel::Tuple(parts) => write!(f, "({})", parts.join(",")),
        }
    }
}

/// The symbol set of a language: a full product (tuple kind) or a disjoint
/// union (union kind) of base alphabets.
///
/// Symbols are dense indices. Tuple symbols use mixed radix with the first
/// component most significant; union symbols list the components in order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructuredAlphabet {
    kind: Kind,
    components: Vec<Arc<BaseAlphabet>>,
    size: usize,
}

impl StructuredAlphabet {
    /// Component order is kept as given; use [`Registry::alphabet`] for the
    /// canonical order.
    pub fn new(kind: Kind, components: Vec<Arc<BaseAlphabet>>) -> Result<Self, LanguageError> {
        if components.is_empty() {
            return Err(LanguageError::EmptyAlphabet("<no components>".into()));
        }
        for (i, c) in components.iter().enumerate() {
            if c.is_empty() {
                return Err(LanguageError::EmptyAlphabet(c.id.clone()));
            }
            if components[..i].iter().any(|d| d.id == c.id) {
                return Err(LanguageError::DuplicateAlphabet(c.id.clone()));
            }
        }
        let size = match kind {
            Kind::Tuple => components.iter().map(|c| c.len()).product(),
            Kind::Union => components.iter().map(|c| c.len()).sum(),
        };
        Ok(StructuredAlphabet { kind, components, size })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn components(&self) -> &[Arc<BaseAlphabet>] {
        &self.components
    }

    pub fn component_ids(&self) -> Vec<&str> {
        self.components.iter().map(|c| c.id.as_str()).collect()
    }

    pub fn index(&self) -> SieveIndex {
        SieveIndex::new(self.components.iter().map(|c| c.id.clone()))
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.components.iter().position(|c| c.id == id)
    }

    /// Number of symbols.
    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Whether the components appear in registry order.
    pub fn is_canonical(&self) -> bool {
        self.components.windows(2).all(|w| w[0].rank < w[1].rank)
    }

    /// Per-component symbol indices of a tuple symbol.
    pub fn decode(&self, sym: usize) -> Vec<usize> {
        debug_assert_eq!(self.kind, Kind::Tuple);
        let mut digits = vec![0; self.components.len()];
        let mut rest = sym;
        for (i, c) in self.components.iter().enumerate().rev() {
            digits[i] = rest % c.len();
            rest /= c.len();
        }
        digits
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        debug_assert_eq!(self.kind, Kind::Tuple);
        digits.iter().zip(&self.components).fold(0, |acc, (d, c)| acc * c.len() + d)
    }

    /// Component position and local index of a union symbol.
    pub fn locate(&self, sym: usize) -> (usize, usize) {
        debug_assert_eq!(self.kind, Kind::Union);
        let mut rest = sym;
        for (i, c) in self.components.iter().enumerate() {
            if rest < c.len() {
                return (i, rest);
            }
            rest -= c.len();
        }
        panic!("symbol {sym} out of range for alphabet of {} symbols", self.size);
    }

    /// Union symbol for a local index in the component at `position`.
    pub fn union_symbol(&self, position: usize, local: usize) -> usize {
        debug_assert_eq!(self.kind, Kind::Union);
        self.components[..position].iter().map(|c| c.len()).sum::<usize>() + local
    }

    pub fn label(&self, sym: usize) -> SymbolLabel {
        match self.kind {
            Kind::Tuple => {
                let parts: Vec<String> =
                    self.decode(sym).iter().zip(&self.components).map(|(d, c)| c.symbols[*d].clone()).collect();
                if parts.len() == 1 {
                    SymbolLabel::Plain(parts.into_iter().next().unwrap_or_default())
                } else {
                    SymbolLabel::Tuple(parts)
                }
            }
            Kind::Union => {
                let (c, local) = self.locate(sym);
                SymbolLabel::Plain(self.components[c].symbols[local].clone())
            }
        }
    }

    pub fn parse_label(&self, label: &SymbolLabel) -> Result<usize, LanguageError> {
        let unknown = || LanguageError::UnknownSymbol(label.to_string());
        match (self.kind, label) {
            (Kind::Union, SymbolLabel::Plain(name)) => {
                for (i, c) in self.components.iter().enumerate() {
                    if let Some(local) = c.symbols.iter().position(|s| s == name) {
                        return Ok(self.union_symbol(i, local));
                    }
                }
                Err(unknown())
            }
            (Kind::Tuple, SymbolLabel::Plain(name)) if self.components.len() == 1 => {
                self.components[0].symbols.iter().position(|s| s == name).ok_or_else(unknown)
            }
            (Kind::Tuple, SymbolLabel::Tuple(parts)) if parts.len() == self.components.len() => {
                let digits = parts
                    .iter()
                    .zip(&self.components)
                    .map(|(p, c)| c.symbols.iter().position(|s| s == p).ok_or_else(unknown))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(self.encode(&digits))
            }
            _ => Err(unknown()),
        }
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        match self.kind {
            Kind::Union => word.iter().map(|s| self.label(*s).to_string()).collect::<Vec<_>>().join(""),
            Kind::Tuple => word.iter().map(|s| self.label(*s).to_string()).collect::<Vec<_>>().join(" "),
        }
    }
}

impl fmt::Display for StructuredAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = match self.kind {
            Kind::Tuple => " x ",
            Kind::Union => " + ",
        };
        write!(f, "{}", self.component_ids().join(sep))
    }
}

/// The ordered set of base alphabets a family of languages is built over.
/// Registration order is the canonical component order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Registry {
    alphabets: Vec<Arc<BaseAlphabet>>,
}

impl Registry {
    pub fn new() -> Self {
        Registry::default()
    }

    /// Alphabet ids and symbol names must be unique across the registry.
    pub fn register<I, S>(&mut self, id: &str, symbols: I) -> Result<Arc<BaseAlphabet>, LanguageError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        if self.alphabets.iter().any(|a| a.id == id) {
            return Err(LanguageError::DuplicateAlphabet(id.to_string()));
        }
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(LanguageError::EmptyAlphabet(id.to_string()));
        }
        for (i, s) in symbols.iter().enumerate() {
            let clash = symbols[..i].contains(s) || self.alphabets.iter().any(|a| a.symbols.contains(s));
            if clash {
                return Err(LanguageError::DuplicateSymbol(s.clone()));
            }
        }
        let alphabet = Arc::new(BaseAlphabet { id: id.to_string(), rank: self.alphabets.len(), symbols });
        self.alphabets.push(Arc::clone(&alphabet));
        Ok(alphabet)
    }

    pub fn alphabets(&self) -> &[Arc<BaseAlphabet>] {
        &self.alphabets
    }

    pub fn get(&self, id: &str) -> Result<&Arc<BaseAlphabet>, LanguageError> {
        self.alphabets.iter().find(|a| a.id == id).ok_or_else(|| LanguageError::UnregisteredAlphabet(id.to_string()))
    }

    /// The canonical alphabet of `kind` over the ids of `index`.
    pub fn alphabet(&self, kind: Kind, index: &SieveIndex) -> Result<StructuredAlphabet, LanguageError> {
        let mut comps = index.ids().map(|id| self.get(id).cloned()).collect::<Result<Vec<_>, _>>()?;
        comps.sort_by_key(|c| c.rank);
        StructuredAlphabet::new(kind, comps)
    }

    /// Checks that every component of `alphabet` is the registered alphabet
    /// of the same id, and returns its index.
    pub fn index_of(&self, alphabet: &StructuredAlphabet) -> Result<SieveIndex, LanguageError> {
        for c in alphabet.components() {
            let registered = self.get(&c.id)?;
            if registered != c {
                return Err(LanguageError::UnregisteredAlphabet(c.id.clone()));
            }
        }
        Ok(alphabet.index())
    }

    /// Every nonempty subset of the registered ids.
    pub fn all_indices(&self) -> Vec<SieveIndex> {
        let n = self.alphabets.len();
        (1u64..(1 << n))
            .map(|mask| SieveIndex::new((0..n).filter(|i| mask & (1 << i) != 0).map(|i| self.alphabets[i].id.clone())))
            .collect()
    }
}
