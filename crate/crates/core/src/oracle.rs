//! Brute-force ground truth for the closed-form solvers.
//!
//! The enumerating oracles only use `le` and `mu`; they never touch `gamma`
//! or the closed forms they are checking.

use serde::Serialize;

use crate::heap::{quotient_left, quotient_right, HeapError, PreorderHeap};
use crate::language::{Dfa, Kind, LanguageError, LanguageSieve, StructuredAlphabet, Word};

/// Which side the unknown sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// `μ(a, x) ≤ b`
    Right,
    /// `μ(x, a) ≤ b`
    Left,
}

/// All solutions of one inequality and their greatest elements.
#[derive(Debug, Clone)]
pub struct SolutionSet<E> {
    pub a: E,
    pub b: E,
    pub side: Side,
    pub solutions: Vec<E>,
    /// Solutions that dominate every solution. Several when `≤` is not
    /// antisymmetric, none when there is no greatest solution.
    pub maxima: Vec<E>,
}

fn solves<H: PreorderHeap + ?Sized>(h: &H, a: &H::Elem, b: &H::Elem, x: &H::Elem, side: Side) -> bool {
    let product = match side {
        Side::Right => h.mu(a, x),
        Side::Left => h.mu(x, a),
    };
    product.map(|p| h.le(&p, b)).unwrap_or(false)
}

pub fn enumerate_solutions<H: PreorderHeap + ?Sized>(
    h: &H,
    a: &H::Elem,
    b: &H::Elem,
    side: Side,
) -> Result<SolutionSet<H::Elem>, HeapError> {
    let carrier = h.elements().ok_or(HeapError::MissingEnumeration)?;
    let solutions: Vec<H::Elem> = carrier.into_iter().filter(|x| solves(h, a, b, x, side)).collect();
    let maxima = solutions.iter().filter(|m| solutions.iter().all(|x| h.le(x, m))).cloned().collect();
    Ok(SolutionSet { a: a.clone(), b: b.clone(), side, solutions, maxima })
}

/// True iff the closed-form quotient is a solution, is `≃` to a maximum of
/// the enumerated solutions and dominates every solution.
pub fn verify_quotient<H: PreorderHeap + ?Sized>(
    h: &H,
    a: &H::Elem,
    b: &H::Elem,
    side: Side,
) -> Result<bool, HeapError> {
    let set = enumerate_solutions(h, a, b, side)?;
    let q = match side {
        Side::Right => quotient_right(h, a, b)?,
        Side::Left => quotient_left(h, a, b)?,
    };
    Ok(solves(h, a, b, &q, side)
        && set.solutions.iter().all(|x| h.le(x, &q))
        && set.maxima.iter().any(|m| h.le(m, &q) && h.le(&q, m)))
}

/// Outcome of the bounded add-one-word check for a language quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalityReport {
    pub bound: usize,
    pub words_checked: usize,
    /// A word of `Z` whose presence breaks `compose(A, Z) ⊆ B`.
    pub solution_counterexample: Option<String>,
    /// A word outside `Z` that could be added without breaking it.
    pub maximality_counterexample: Option<String>,
}

impl MaximalityReport {
    pub fn is_solution(&self) -> bool {
        self.solution_counterexample.is_none()
    }

    pub fn is_maximal(&self) -> bool {
        self.maximality_counterexample.is_none()
    }

    pub fn holds(&self) -> bool {
        self.is_solution() && self.is_maximal()
    }
}

/// The image of `word` (over `from`) in the alphabet `onto`, whose
/// components are a subset of those of `from`. Tuple symbols are projected
/// componentwise; union symbols of foreign components are erased.
fn project(word: &[usize], from: &StructuredAlphabet, onto: &StructuredAlphabet) -> Word {
    match from.kind() {
        Kind::Tuple => {
            let positions: Vec<usize> = onto
                .component_ids()
                .iter()
                .map(|id| from.position(id).expect("components of onto occur in from"))
                .collect();
            word.iter()
                .map(|&s| {
                    let digits = from.decode(s);
                    onto.encode(&positions.iter().map(|&p| digits[p]).collect::<Vec<_>>())
                })
                .collect()
        }
        Kind::Union => word
            .iter()
            .filter_map(|&s| {
                let (pos, local) = from.locate(s);
                onto.position(from.components()[pos].id()).map(|p| onto.union_symbol(p, local))
            })
            .collect(),
    }
}

fn show(alphabet: &StructuredAlphabet, w: &[usize]) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        alphabet.format_word(w)
    }
}

/// Checks that `Z` solves `compose(A, Z) ⊆ B` on every word of length at most
/// `bound`, and that no such word outside `Z` could be added to it.
///
/// Membership in the concretized `A` and `B` is decided by projecting (or
/// erasing) symbols and walking the original automata, independently of the
/// lifting and expansion constructions.
pub fn pointwise_maximality(
    sieve: &LanguageSieve,
    a: &Dfa,
    b: &Dfa,
    z: &Dfa,
    bound: usize,
) -> Result<MaximalityReport, LanguageError> {
    let xy = sieve.index_of(a)?.join(&sieve.index_of(b)?);
    let alphabet = sieve.alphabet(&xy)?;
    if z.alphabet() != &alphabet {
        return Err(LanguageError::AlphabetMismatch { left: z.alphabet().to_string(), right: alphabet.to_string() });
    }
    let mut report =
        MaximalityReport { bound, words_checked: 0, solution_counterexample: None, maximality_counterexample: None };
    for w in LanguageSieve::all_words(&alphabet, bound) {
        report.words_checked += 1;
        let in_a = a.contains(&project(&w, &alphabet, a.alphabet()));
        let in_b = b.contains(&project(&w, &alphabet, b.alphabet()));
        let breaks = in_a && !in_b;
        if z.contains(&w) {
            if breaks && report.solution_counterexample.is_none() {
                report.solution_counterexample = Some(show(&alphabet, &w));
            }
        } else if !breaks && report.maximality_counterexample.is_none() {
            report.maximality_counterexample = Some(show(&alphabet, &w));
        }
    }
    Ok(report)
}
