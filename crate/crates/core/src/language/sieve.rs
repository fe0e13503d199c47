use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::alphabet::{Registry, StructuredAlphabet};
use super::dfa::{Dfa, Word};
use super::ops::{expand_to, lift, reorder_canonical};
use super::{LanguageError, Mode};
use crate::heap::HeapError;
use crate::sieve::{Sieve, SieveIndex};

/// How the law checker samples each per-index language heap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleConfig {
    /// Length bound for the random finite languages.
    pub bound: usize,
    /// Number of random finite languages per index; each also contributes
    /// its complement.
    pub random: usize,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { bound: 3, random: 3, seed: 0 }
    }
}

/// The sieve of regular languages over every nonempty subset of a registry.
#[derive(Debug, Clone)]
pub struct LanguageSieve {
    registry: Registry,
    mode: Mode,
    samples: SampleConfig,
}

impl LanguageSieve {
    pub fn new(registry: Registry, mode: Mode) -> Self {
        LanguageSieve { registry, mode, samples: SampleConfig::default() }
    }

    pub fn with_samples(mut self, samples: SampleConfig) -> Self {
        self.samples = samples;
        self
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// The canonical alphabet of an index in this sieve's mode.
    pub fn alphabet(&self, index: &SieveIndex) -> Result<StructuredAlphabet, LanguageError> {
        self.registry.alphabet(self.mode.kind(), index)
    }

    /// The index a language lives at. Its alphabet must be canonical.
    pub fn index_of(&self, d: &Dfa) -> Result<SieveIndex, LanguageError> {
        let found = d.alphabet().kind();
        if found != self.mode.kind() {
            return Err(LanguageError::KindMismatch { expected: self.mode.kind(), found });
        }
        let index = self.registry.index_of(d.alphabet())?;
        if !d.alphabet().is_canonical() {
            return Err(LanguageError::AlphabetMismatch {
                left: d.alphabet().to_string(),
                right: self.alphabet(&index)?.to_string(),
            });
        }
        Ok(index)
    }

    /// `ι : P_x → P_target`.
    pub fn concretize_to(&self, d: &Dfa, target: &SieveIndex) -> Result<Dfa, LanguageError> {
        let from = self.index_of(d)?;
        if !from.is_below(target) {
            return Err(LanguageError::NotBelow { from: from.to_string(), to: target.to_string() });
        }
        let target_alphabet = self.alphabet(target)?;
        if from == *target {
            return Ok(d.clone());
        }
        match self.mode {
            Mode::Sync => {
                let extra =
                    target_alphabet.components().iter().filter(|c| !from.contains(c.id())).cloned().collect::<Vec<_>>();
                reorder_canonical(&lift(d, &extra)?)
            }
            Mode::Async => expand_to(d, &target_alphabet),
        }
    }

    fn meet(&self, a: &Dfa, b: &Dfa) -> Result<(SieveIndex, Dfa, Dfa), LanguageError> {
        let xy = self.index_of(a)?.join(&self.index_of(b)?);
        Ok((xy.clone(), self.concretize_to(a, &xy)?, self.concretize_to(b, &xy)?))
    }

    /// `A • B` (sync) or `A ⋄ B` (async): both operands concretized to the
    /// join of their indices, then intersected.
    pub fn compose(&self, a: &Dfa, b: &Dfa) -> Result<Dfa, LanguageError> {
        let (_, ia, ib) = self.meet(a, b)?;
        ia.intersect(&ib)
    }

    /// The largest `Z` with `compose(A, Z) ⊆ B`: `¬(¬ι(B) ∩ ι(A))`.
    pub fn quotient(&self, a: &Dfa, b: &Dfa) -> Result<Dfa, LanguageError> {
        let (_, ia, ib) = self.meet(a, b)?;
        Ok(ib.complement().intersect(&ia)?.complement())
    }

    /// Target multiplication: union after concretization.
    pub fn merge(&self, a: &Dfa, b: &Dfa) -> Result<Dfa, LanguageError> {
        let (_, ia, ib) = self.meet(a, b)?;
        ia.union(&ib)
    }

    /// `μ(A, γB) = ι(A) ∩ ¬ι(B)`, the smallest `X` with `A ⊆ merge(B, X)`.
    pub fn separation(&self, a: &Dfa, b: &Dfa) -> Result<Dfa, LanguageError> {
        let (_, ia, ib) = self.meet(a, b)?;
        ia.intersect(&ib.complement())
    }

    /// The composite order, decided at the join of the indices.
    pub fn le(&self, a: &Dfa, b: &Dfa) -> Result<bool, LanguageError> {
        let (_, ia, ib) = self.meet(a, b)?;
        ia.is_subset(&ib)
    }

    /// Every word over `alphabet` of length at most `bound`, ordered by
    /// length and then by symbol index.
    pub fn all_words(alphabet: &StructuredAlphabet, bound: usize) -> Vec<Word> {
        Dfa::universal(alphabet.clone()).bounded_words(bound)
    }

    fn random_finite(&self, alphabet: &StructuredAlphabet, rng: &mut ChaCha8Rng) -> Dfa {
        let words: Vec<Word> =
            Self::all_words(alphabet, self.samples.bound).into_iter().filter(|_| rng.gen_bool(0.3)).collect();
        Dfa::from_words(alphabet.clone(), &words).expect("words are drawn from the alphabet")
    }
}

impl Sieve for LanguageSieve {
    type Elem = Dfa;

    fn indices(&self) -> Vec<SieveIndex> {
        self.registry.all_indices()
    }

    fn le_at(&self, _: &SieveIndex, a: &Dfa, b: &Dfa) -> bool {
        a.is_subset(b).expect("operands at one index share its alphabet")
    }

    fn mu_at(&self, _: &SieveIndex, a: &Dfa, b: &Dfa) -> Dfa {
        a.intersect(b).expect("operands at one index share its alphabet")
    }

    fn gamma_at(&self, _: &SieveIndex, a: &Dfa) -> Dfa {
        a.complement()
    }

    fn concretize(&self, from: &SieveIndex, to: &SieveIndex, a: &Dfa) -> Result<Dfa, HeapError> {
        let at = self.index_of(a)?;
        if &at != from {
            return Err(LanguageError::NotBelow { from: at.to_string(), to: from.to_string() }.into());
        }
        Ok(self.concretize_to(a, to)?)
    }

    fn belongs(&self, index: &SieveIndex, a: &Dfa) -> bool {
        self.index_of(a).is_ok_and(|i| &i == index)
    }

    /// `∅`, `Σ*`, `{ε}` and seeded random finite languages with their
    /// complements.
    fn sample_at(&self, index: &SieveIndex) -> Option<Vec<Dfa>> {
        let alphabet = self.alphabet(index).ok()?;
        let mut rng = ChaCha8Rng::seed_from_u64(
            self.samples.seed.wrapping_add(index.ids().map(|id| id.len() as u64 + 1).product::<u64>()),
        );
        let mut out = vec![
            Dfa::empty(alphabet.clone()),
            Dfa::universal(alphabet.clone()),
            Dfa::from_words(alphabet.clone(), &[vec![]]).ok()?,
        ];
        for _ in 0..self.samples.random {
            let d = self.random_finite(&alphabet, &mut rng);
            out.push(d.complement());
            out.push(d);
        }
        Some(out)
    }
}
