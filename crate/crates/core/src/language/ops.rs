use std::sync::Arc;

use super::alphabet::{BaseAlphabet, Kind, StructuredAlphabet};
use super::dfa::Dfa;
use super::LanguageError;

fn expect_kind(d: &Dfa, kind: Kind) -> Result<(), LanguageError> {
    let found = d.alphabet().kind();
    if found == kind {
        Ok(())
    } else {
        Err(LanguageError::KindMismatch { expected: kind, found })
    }
}

/// Lifting `L↑V`: the tuple alphabet gains the components of `extra`
/// (appended in the given order) and every symbol `x` becomes every
/// `(x, v)`.
pub fn lift(d: &Dfa, extra: &[Arc<BaseAlphabet>]) -> Result<Dfa, LanguageError> {
    expect_kind(d, Kind::Tuple)?;
    if extra.is_empty() {
        return Err(LanguageError::EmptyLifting);
    }
    let source = d.alphabet();
    if let Some(c) = extra.iter().find(|c| source.position(c.id()).is_some()) {
        return Err(LanguageError::OverlappingLift(c.id().to_string()));
    }
    let mut components = source.components().to_vec();
    components.extend(extra.iter().cloned());
    let target = StructuredAlphabet::new(Kind::Tuple, components)?;

    let k = source.len();
    let v: usize = extra.iter().map(|c| c.len()).product();
    let mut delta = Vec::with_capacity(d.states() * k * v);
    for q in 0..d.states() {
        for s in 0..k {
            let t = d.next(q, s);
            delta.extend(std::iter::repeat_n(t, v));
        }
    }
    Dfa::new(target, d.initial(), d.accepting().to_vec(), delta)
}

/// Permutes tuple components: component `i` of the result is component
/// `perm[i]` of the input.
pub fn reorder(d: &Dfa, perm: &[usize]) -> Result<Dfa, LanguageError> {
    expect_kind(d, Kind::Tuple)?;
    let source = d.alphabet();
    let n = source.components().len();
    let mut seen = vec![false; n];
    let valid = perm.len() == n && perm.iter().all(|&p| p < n && !std::mem::replace(&mut seen[p], true));
    if !valid {
        return Err(LanguageError::InvalidPermutation(perm.to_vec()));
    }
    let components = perm.iter().map(|&p| Arc::clone(&source.components()[p])).collect();
    let target = StructuredAlphabet::new(Kind::Tuple, components)?;

    let k = target.len();
    let mut old_digits = vec![0; n];
    let old_of: Vec<usize> = (0..k)
        .map(|t| {
            for (i, digit) in target.decode(t).into_iter().enumerate() {
                old_digits[perm[i]] = digit;
            }
            source.encode(&old_digits)
        })
        .collect();
    let delta = (0..d.states()).flat_map(|q| old_of.iter().map(move |&s| (q, s))).map(|(q, s)| d.next(q, s)).collect();
    Dfa::new(target, d.initial(), d.accepting().to_vec(), delta)
}

/// Reorders tuple components into registry order.
pub fn reorder_canonical(d: &Dfa) -> Result<Dfa, LanguageError> {
    let mut perm: Vec<usize> = (0..d.alphabet().components().len()).collect();
    perm.sort_by_key(|&i| d.alphabet().components()[i].rank());
    if perm.iter().enumerate().all(|(i, p)| i == *p) {
        return Ok(d.clone());
    }
    reorder(d, &perm)
}

/// Expansion `L⇑V` into the given union alphabet, which must contain every
/// component of the input. Symbols of the other components loop in place.
pub fn expand_to(d: &Dfa, target: &StructuredAlphabet) -> Result<Dfa, LanguageError> {
    expect_kind(d, Kind::Union)?;
    if target.kind() != Kind::Union {
        return Err(LanguageError::KindMismatch { expected: Kind::Union, found: target.kind() });
    }
    let source = d.alphabet();
    let mut embed: Vec<Option<usize>> = Vec::with_capacity(target.len());
    for t in 0..target.len() {
        let (pos, local) = target.locate(t);
        let comp = &target.components()[pos];
        embed.push(match source.position(comp.id()) {
            Some(p) if source.components()[p] == *comp => Some(source.union_symbol(p, local)),
            Some(_) => {
                return Err(LanguageError::AlphabetMismatch { left: source.to_string(), right: target.to_string() })
            }
            None => None,
        });
    }
    for c in source.components() {
        if target.position(c.id()).is_none() {
            return Err(LanguageError::AlphabetMismatch { left: source.to_string(), right: target.to_string() });
        }
    }
    let delta = (0..d.states()).flat_map(|q| embed.iter().map(move |e| e.map_or(q, |s| d.next(q, s)))).collect();
    Dfa::new(target.clone(), d.initial(), d.accepting().to_vec(), delta)
}

/// Expansion by the components of `extra`; components already present are
/// ignored and the result lists components in registry order.
pub fn expand(d: &Dfa, extra: &[Arc<BaseAlphabet>]) -> Result<Dfa, LanguageError> {
    expect_kind(d, Kind::Union)?;
    let mut components = d.alphabet().components().to_vec();
    for c in extra {
        if !components.iter().any(|e| e.id() == c.id()) {
            components.push(Arc::clone(c));
        }
    }
    components.sort_by_key(|c| c.rank());
    let target = StructuredAlphabet::new(Kind::Union, components)?;
    expand_to(d, &target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::alphabet::{Registry, SymbolLabel};
    use crate::sieve::SieveIndex;

    fn registry() -> Registry {
        let mut r = Registry::new();
        r.register("S1", ["a", "b"]).unwrap();
        r.register("S2", ["c", "d"]).unwrap();
        r
    }

    fn labels(d: &Dfa, k: usize) -> Vec<Vec<SymbolLabel>> {
        d.bounded_words(k).iter().map(|w| w.iter().map(|s| d.alphabet().label(*s)).collect()).collect()
    }

    fn pair(x: &str, y: &str) -> SymbolLabel {
        SymbolLabel::Tuple(vec![x.into(), y.into()])
    }

    #[test]
    fn lifting_pairs_each_symbol_with_every_extra_symbol() {
        let r = registry();
        let x = r.alphabet(Kind::Tuple, &SieveIndex::new(["S1"])).unwrap();
        let l = Dfa::from_words(x, &[vec![0]]).unwrap();
        let lifted = lift(&l, &[r.get("S2").unwrap().clone()]).unwrap();
        assert_eq!(labels(&lifted, 3), vec![vec![pair("a", "c")], vec![pair("a", "d")]]);
        let empty = Dfa::empty(l.alphabet().clone());
        assert!(lift(&empty, &[r.get("S2").unwrap().clone()]).unwrap().is_empty());
        assert_eq!(lift(&l, &[]).unwrap_err(), LanguageError::EmptyLifting);
        assert!(matches!(lift(&l, &[r.get("S1").unwrap().clone()]), Err(LanguageError::OverlappingLift(_))));
    }

    #[test]
    fn reorder_swaps_components() {
        let r = registry();
        let xy = r.alphabet(Kind::Tuple, &SieveIndex::new(["S1", "S2"])).unwrap();
        let ac = xy.parse_label(&pair("a", "c")).unwrap();
        let l = Dfa::from_words(xy, &[vec![ac]]).unwrap();
        let swapped = reorder(&l, &[1, 0]).unwrap();
        assert_eq!(swapped.alphabet().component_ids(), vec!["S2", "S1"]);
        assert_eq!(labels(&swapped, 3), vec![vec![pair("c", "a")]]);
        assert_eq!(reorder(&l, &[0, 1]).unwrap(), l);
        assert_eq!(reorder_canonical(&swapped).unwrap().bounded_words(3), l.bounded_words(3));
        assert!(reorder(&l, &[0, 0]).is_err());
        assert!(reorder(&l, &[0]).is_err());
    }

    #[test]
    fn expanding_epsilon_gives_all_foreign_words() {
        let r = registry();
        let x = r.alphabet(Kind::Union, &SieveIndex::new(["S1"])).unwrap();
        let eps = Dfa::from_words(x, &[vec![]]).unwrap();
        let e = expand(&eps, &[r.get("S2").unwrap().clone()]).unwrap();
        assert_eq!(e.alphabet().component_ids(), vec!["S1", "S2"]);
        assert_eq!(e.format_words(2), vec!["", "c", "d", "cc", "cd", "dc", "dd"]);
    }

    #[test]
    fn expanding_by_present_components_changes_nothing() {
        let r = registry();
        let x = r.alphabet(Kind::Union, &SieveIndex::new(["S1"])).unwrap();
        let l = Dfa::from_words(x, &[vec![0], vec![1, 0]]).unwrap();
        assert_eq!(expand(&l, &[r.get("S1").unwrap().clone()]).unwrap(), l);
    }

    #[test]
    fn kinds_are_checked() {
        let r = registry();
        let u = r.alphabet(Kind::Union, &SieveIndex::new(["S1"])).unwrap();
        let t = r.alphabet(Kind::Tuple, &SieveIndex::new(["S1"])).unwrap();
        let s2 = r.get("S2").unwrap().clone();
        assert!(matches!(lift(&Dfa::empty(u), std::slice::from_ref(&s2)), Err(LanguageError::KindMismatch { .. })));
        assert!(matches!(expand(&Dfa::empty(t), &[s2]), Err(LanguageError::KindMismatch { .. })));
    }
}
