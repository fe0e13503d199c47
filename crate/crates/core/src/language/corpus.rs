//! Seeded language fixtures for property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::alphabet::{Registry, StructuredAlphabet};
use super::dfa::Dfa;
use super::sieve::LanguageSieve;
use crate::sieve::SieveIndex;

/// The registry used by the shipped fixtures: two alphabets of two symbols.
pub fn two_alphabets() -> Registry {
    let mut r = Registry::new();
    r.register("S1", ["a", "b"]).expect("fresh registry");
    r.register("S2", ["c", "d"]).expect("fresh registry");
    r
}

/// A random total DFA with at most `max_states` states.
pub fn random_dfa(alphabet: &StructuredAlphabet, max_states: usize, rng: &mut ChaCha8Rng) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    let accepting = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let delta = (0..n * alphabet.len()).map(|_| rng.gen_range(0..n)).collect();
    Dfa::new(alphabet.clone(), 0, accepting, delta).expect("generated table is well formed").minimize()
}

/// A random finite language of words no longer than `bound`.
pub fn random_finite(alphabet: &StructuredAlphabet, bound: usize, rng: &mut ChaCha8Rng) -> Dfa {
    let words: Vec<_> =
        Dfa::universal(alphabet.clone()).bounded_words(bound).into_iter().filter(|_| rng.gen_bool(0.25)).collect();
    Dfa::from_words(alphabet.clone(), &words).expect("words are drawn from the alphabet")
}

/// A random language at `index`: finite or a small automaton, equally often.
pub fn random_language(sieve: &LanguageSieve, index: &SieveIndex, rng: &mut ChaCha8Rng) -> Dfa {
    let alphabet = sieve.alphabet(index).expect("fixture indices are registered");
    if rng.gen_bool(0.5) {
        random_finite(&alphabet, 2, rng)
    } else {
        random_dfa(&alphabet, 3, rng)
    }
}

/// `count` pairs `(A, B)` at seeded random indices of the sieve.
pub fn pairs(sieve: &LanguageSieve, count: usize, seed: u64) -> Vec<(Dfa, Dfa)> {
    let indices = sieve.registry().all_indices();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let x = indices.choose(&mut rng).expect("registry is nonempty").clone();
            let y = indices.choose(&mut rng).expect("registry is nonempty").clone();
            (random_language(sieve, &x, &mut rng), random_language(sieve, &y, &mut rng))
        })
        .collect()
}
