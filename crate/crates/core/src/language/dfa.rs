use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::alphabet::StructuredAlphabet;
use super::LanguageError;

type Pair = (usize, usize);

/// A word as a sequence of symbol indices.
pub type Word = Vec<usize>;

/// A total deterministic automaton. Every state has exactly one successor per
/// symbol, so complement is a flip of the accepting set.
#[derive(Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: StructuredAlphabet,
    initial: usize,
    accepting: Vec<bool>,
    /// `delta[state * |alphabet| + symbol]`
    delta: Vec<usize>,
}

impl Dfa {
    pub fn new(
        alphabet: StructuredAlphabet,
        initial: usize,
        accepting: Vec<bool>,
        delta: Vec<usize>,
    ) -> Result<Self, LanguageError> {
        let n = accepting.len();
        if n == 0 || initial >= n {
            return Err(LanguageError::InvalidDfa(format!("initial state {initial} outside 0..{n}")));
        }
        if delta.len() != n * alphabet.len() {
            return Err(LanguageError::InvalidDfa(format!(
                "transition table has {} entries, expected {} states x {} symbols",
                delta.len(),
                n,
                alphabet.len()
            )));
        }
        if let Some(bad) = delta.iter().find(|t| **t >= n) {
            return Err(LanguageError::InvalidDfa(format!("transition to unknown state {bad}")));
        }
        Ok(Dfa { alphabet, initial, accepting, delta })
    }

    /// Builds from a partial transition list; missing transitions go to a
    /// fresh dead state (added only when needed).
    pub fn from_partial(
        alphabet: StructuredAlphabet,
        states: usize,
        initial: usize,
        accepting: &[usize],
        transitions: &[(usize, usize, usize)],
    ) -> Result<Self, LanguageError> {
        if states == 0 || initial >= states {
            return Err(LanguageError::InvalidDfa(format!("initial state {initial} outside 0..{states}")));
        }
        let k = alphabet.len();
        let mut delta = vec![usize::MAX; states * k];
        for &(from, sym, to) in transitions {
            if from >= states || to >= states || sym >= k {
                return Err(LanguageError::InvalidDfa(format!("transition ({from}, {sym}, {to}) out of range")));
            }
            let slot = &mut delta[from * k + sym];
            if *slot != usize::MAX && *slot != to {
                return Err(LanguageError::InvalidDfa(format!("state {from} has two successors on symbol {sym}")));
            }
            *slot = to;
        }
        let mut accept = vec![false; states];
        for &a in accepting {
            if a >= states {
                return Err(LanguageError::InvalidDfa(format!("accepting state {a} out of range")));
            }
            accept[a] = true;
        }
        if delta.contains(&usize::MAX) {
            let dead = states;
            for t in delta.iter_mut().filter(|t| **t == usize::MAX) {
                *t = dead;
            }
            delta.extend(std::iter::repeat_n(dead, k));
            accept.push(false);
        }
        Dfa::new(alphabet, initial, accept, delta)
    }

    pub fn empty(alphabet: StructuredAlphabet) -> Self {
        let k = alphabet.len();
        Dfa { alphabet, initial: 0, accepting: vec![false], delta: vec![0; k] }
    }

    /// All words over the alphabet.
    pub fn universal(alphabet: StructuredAlphabet) -> Self {
        Dfa::empty(alphabet).complement()
    }

    /// The finite language of the given words.
    pub fn from_words(alphabet: StructuredAlphabet, words: &[Word]) -> Result<Self, LanguageError> {
        let k = alphabet.len();
        let mut trie: Vec<Vec<Option<usize>>> = vec![vec![None; k]];
        let mut accept = vec![false];
        for w in words {
            let mut q = 0;
            for &s in w {
                if s >= k {
                    return Err(LanguageError::InvalidDfa(format!("symbol {s} out of range")));
                }
                q = match trie[q][s] {
                    Some(next) => next,
                    None => {
                        trie.push(vec![None; k]);
                        accept.push(false);
                        let next = trie.len() - 1;
                        trie[q][s] = Some(next);
                        next
                    }
                };
            }
            accept[q] = true;
        }
        let dead = trie.len();
        let mut delta: Vec<usize> = trie.iter().flat_map(|row| row.iter().map(|t| t.unwrap_or(dead))).collect();
        delta.extend(std::iter::repeat_n(dead, k));
        accept.push(false);
        Ok(Dfa::new(alphabet, 0, accept, delta)?.minimize())
    }

    pub fn alphabet(&self) -> &StructuredAlphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn next(&self, state: usize, symbol: usize) -> usize {
        self.delta[state * self.alphabet.len() + symbol]
    }

    pub fn run(&self, word: &[usize]) -> usize {
        word.iter().fold(self.initial, |q, s| self.next(q, *s))
    }

    /// Membership by walking the automaton.
    pub fn contains(&self, word: &[usize]) -> bool {
        self.accepting[self.run(word)]
    }

    pub fn complement(&self) -> Dfa {
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: self.initial,
            accepting: self.accepting.iter().map(|a| !a).collect(),
            delta: self.delta.clone(),
        }
    }

    fn check_alphabet(&self, other: &Dfa) -> Result<(), LanguageError> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(LanguageError::AlphabetMismatch { left: self.alphabet.to_string(), right: other.alphabet.to_string() })
        }
    }

    /// Reachable product automaton with acceptance combined by `accept`.
    fn product(&self, other: &Dfa, accept: impl Fn(bool, bool) -> bool) -> Result<Dfa, LanguageError> {
        self.check_alphabet(other)?;
        let k = self.alphabet.len();
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut order = vec![(self.initial, other.initial)];
        ids.insert((self.initial, other.initial), 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let (p, q) = order[i];
            for s in 0..k {
                let pair = (self.next(p, s), other.next(q, s));
                let id = *ids.entry(pair).or_insert_with(|| {
                    order.push(pair);
                    order.len() - 1
                });
                delta.push(id);
            }
            i += 1;
        }
        let accepting = order.iter().map(|&(p, q)| accept(self.accepting[p], other.accepting[q])).collect();
        Ok(Dfa { alphabet: self.alphabet.clone(), initial: 0, accepting, delta }.minimize())
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa, LanguageError> {
        self.product(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa, LanguageError> {
        self.product(other, |a, b| a || b)
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa, LanguageError> {
        self.product(other, |a, b| a && !b)
    }

    /// A shortest word of `self` not in `other`, if any.
    pub fn inclusion_witness(&self, other: &Dfa) -> Result<Option<Word>, LanguageError> {
        self.check_alphabet(other)?;
        let k = self.alphabet.len();
        let start = (self.initial, other.initial);
        // product state -> (predecessor, symbol)
        let mut parent: HashMap<Pair, Option<(Pair, usize)>> = HashMap::new();
        parent.insert(start, None);
        let mut queue = VecDeque::from([start]);
        while let Some(pair @ (p, q)) = queue.pop_front() {
            if self.accepting[p] && !other.accepting[q] {
                let mut word = Vec::new();
                let mut cur = pair;
                while let Some(Some((prev, s))) = parent.get(&cur) {
                    word.push(*s);
                    cur = *prev;
                }
                word.reverse();
                return Ok(Some(word));
            }
            for s in 0..k {
                let next = (self.next(p, s), other.next(q, s));
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                    e.insert(Some((pair, s)));
                    queue.push_back(next);
                }
            }
        }
        Ok(None)
    }

    /// `L(self) ⊆ L(other)`, decided on the product.
    pub fn is_subset(&self, other: &Dfa) -> Result<bool, LanguageError> {
        Ok(self.inclusion_witness(other)?.is_none())
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool, LanguageError> {
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    pub fn is_empty(&self) -> bool {
        let live = self.reachable();
        !live.iter().enumerate().any(|(q, r)| *r && self.accepting[q])
    }

    fn reachable(&self) -> Vec<bool> {
        let k = self.alphabet.len();
        let mut seen = vec![false; self.states()];
        seen[self.initial] = true;
        let mut stack = vec![self.initial];
        while let Some(q) = stack.pop() {
            for s in 0..k {
                let t = self.next(q, s);
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// States from which some accepting state is reachable.
    fn coreachable(&self) -> Vec<bool> {
        let k = self.alphabet.len();
        let n = self.states();
        let mut live = self.accepting.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for q in 0..n {
                if !live[q] && (0..k).any(|s| live[self.next(q, s)]) {
                    live[q] = true;
                    changed = true;
                }
            }
        }
        live
    }

    /// Every accepted word of length at most `bound`, ordered by length and
    /// then lexicographically by symbol index.
    pub fn bounded_words(&self, bound: usize) -> Vec<Word> {
        let k = self.alphabet.len();
        let live = self.coreachable();
        let mut out = Vec::new();
        let mut frontier: Vec<(Word, usize)> = Vec::new();
        if live[self.initial] {
            frontier.push((Vec::new(), self.initial));
        }
        for len in 0..=bound {
            for (w, q) in &frontier {
                if self.accepting[*q] {
                    out.push(w.clone());
                }
            }
            if len == bound {
                break;
            }
            let mut next = Vec::new();
            for (w, q) in &frontier {
                for s in 0..k {
                    let t = self.next(*q, s);
                    if live[t] {
                        let mut w2 = w.clone();
                        w2.push(s);
                        next.push((w2, t));
                    }
                }
            }
            frontier = next;
        }
        out
    }

    /// Minimal equivalent automaton, states numbered in breadth-first order
    /// from the initial state. Equal languages give equal automata.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        let reach = self.reachable();
        let states: Vec<usize> = (0..self.states()).filter(|q| reach[*q]).collect();
        let mut class: Vec<usize> = vec![0; self.states()];
        for &q in &states {
            class[q] = usize::from(self.accepting[q]);
        }
        let mut count = {
            let mut c: Vec<usize> = states.iter().map(|q| class[*q]).collect();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        loop {
            let mut sigs: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next_class = class.clone();
            for &q in &states {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[q]);
                sig.extend((0..k).map(|s| class[self.next(q, s)]));
                let fresh = sigs.len();
                next_class[q] = *sigs.entry(sig).or_insert(fresh);
            }
            let new_count = sigs.len();
            class = next_class;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // renumber classes breadth-first
        let mut number: HashMap<usize, usize> = HashMap::new();
        let mut reps: Vec<usize> = Vec::new();
        number.insert(class[self.initial], 0);
        reps.push(self.initial);
        let mut i = 0;
        while i < reps.len() {
            let q = reps[i];
            for s in 0..k {
                let t = self.next(q, s);
                if let Entry::Vacant(e) = number.entry(class[t]) {
                    e.insert(reps.len());
                    reps.push(t);
                }
            }
            i += 1;
        }
        let delta = reps
            .iter()
            .flat_map(|&q| (0..k).map(move |s| (q, s)))
            .map(|(q, s)| number[&class[self.next(q, s)]])
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: 0,
            accepting: reps.iter().map(|q| self.accepting[*q]).collect(),
            delta,
        }
    }

    pub(crate) fn accepting(&self) -> &[bool] {
        &self.accepting
    }

    pub fn format_words(&self, bound: usize) -> Vec<String> {
        self.bounded_words(bound).iter().map(|w| self.alphabet.format_word(w)).collect()
    }
}

impl fmt::Debug for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dfa[{}; {} states; {:?}..]", self.alphabet, self.states(), self.format_words(2))
    }
}
