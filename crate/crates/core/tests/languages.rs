use std::collections::BTreeSet;

use preheap::heap::{quotient_right, CheckOptions, Law, PreorderHeap};
use preheap::language::{
    corpus, lift, Dfa, Kind, LanguageSieve, Mode, Registry, StructuredAlphabet, SymbolLabel, Word,
};
use preheap::oracle::pointwise_maximality;
use preheap::sieve::{check_sieve, Sieve, SieveIndex, SievedHeap};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn idx(ids: &[&str]) -> SieveIndex {
    SieveIndex::new(ids.iter().copied())
}

fn finite(s: &LanguageSieve, ids: &[&str], words: &[&[&str]]) -> Dfa {
    let alphabet = s.alphabet(&idx(ids)).unwrap();
    let words: Vec<Word> = words
        .iter()
        .map(|w| w.iter().map(|x| alphabet.parse_label(&SymbolLabel::Plain(x.to_string())).unwrap()).collect())
        .collect();
    Dfa::from_words(alphabet, &words).unwrap()
}

/// Membership of `w` (over `big`) in the concretization of `d`, decided from
/// the definitions of lifting and expansion.
fn in_concretization(d: &Dfa, big: &StructuredAlphabet, w: &[usize]) -> bool {
    let small = d.alphabet();
    let image: Word = match big.kind() {
        Kind::Tuple => w
            .iter()
            .map(|&s| {
                let digits = big.decode(s);
                let own: Vec<usize> =
                    small.component_ids().iter().map(|id| digits[big.position(id).unwrap()]).collect();
                small.encode(&own)
            })
            .collect(),
        Kind::Union => w
            .iter()
            .filter_map(|&s| {
                let (pos, local) = big.locate(s);
                small.position(big.components()[pos].id()).map(|p| small.union_symbol(p, local))
            })
            .collect(),
    };
    d.contains(&image)
}

fn words(d: &Dfa, k: usize) -> BTreeSet<Word> {
    d.bounded_words(k).into_iter().collect()
}

#[test]
fn worked_example_is_reproduced() {
    let sync = LanguageSieve::new(corpus::two_alphabets(), Mode::Sync);
    let l1 = finite(&sync, &["S1"], &[&["a"], &["a", "a"]]);
    let l2 = finite(&sync, &["S2"], &[&["c"]]);
    assert_eq!(sync.compose(&l1, &l2).unwrap().format_words(6), vec!["(a,c)"]);

    let asy = LanguageSieve::new(corpus::two_alphabets(), Mode::Async);
    let l1 = finite(&asy, &["S1"], &[&["a"], &["a", "a"]]);
    let l2 = finite(&asy, &["S2"], &[&["c"]]);
    let got: BTreeSet<String> = asy.compose(&l1, &l2).unwrap().format_words(6).into_iter().collect();
    let want: BTreeSet<String> = ["ac", "ca", "caa", "aca", "aac"].iter().map(|s| s.to_string()).collect();
    assert_eq!(got, want);
}

#[test]
fn composing_with_the_full_language_concretizes() {
    let s = LanguageSieve::new(corpus::two_alphabets(), Mode::Sync);
    let l1 = finite(&s, &["S1"], &[&["a"], &["a", "a"]]);
    let full = Dfa::universal(s.alphabet(&idx(&["S2"])).unwrap());
    let lifted = lift(&l1, &[s.registry().get("S2").unwrap().clone()]).unwrap();
    assert!(s.compose(&l1, &full).unwrap().equivalent(&lifted).unwrap());
}

#[test]
fn async_composition_with_epsilon_keeps_only_words_without_foreign_symbols() {
    let s = LanguageSieve::new(corpus::two_alphabets(), Mode::Async);
    let l1 = finite(&s, &["S1"], &[&["a"], &["a", "b"]]);
    let eps = finite(&s, &["S2"], &[&[]]);
    let c = s.compose(&l1, &eps).unwrap();
    assert_eq!(c.format_words(3), vec!["a", "ab"]);
    let empty = Dfa::empty(s.alphabet(&idx(&["S1"])).unwrap());
    assert!(s.compose(&empty, &eps).unwrap().is_empty());
}

#[test]
fn three_alphabet_composition_is_associative() {
    let mut r: Registry = corpus::two_alphabets();
    r.register("S3", ["e", "f"]).unwrap();
    for mode in [Mode::Sync, Mode::Async] {
        let s = LanguageSieve::new(r.clone(), mode);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let a = corpus::random_language(&s, &idx(&["S1"]), &mut rng);
            let b = corpus::random_language(&s, &idx(&["S2", "S3"]), &mut rng);
            let c = corpus::random_language(&s, &idx(&["S3"]), &mut rng);
            let left = s.compose(&s.compose(&a, &b).unwrap(), &c).unwrap();
            let right = s.compose(&a, &s.compose(&b, &c).unwrap()).unwrap();
            assert_eq!(words(&left, 3), words(&right, 3));
            assert!(left.equivalent(&right).unwrap());
        }
    }
}

#[test]
fn concretization_is_structure_preserving() {
    for mode in [Mode::Sync, Mode::Async] {
        let s = LanguageSieve::new(corpus::two_alphabets(), mode);
        let xy = idx(&["S1", "S2"]);
        let big = s.alphabet(&xy).unwrap();
        let all: Vec<Word> = LanguageSieve::all_words(&big, 4);
        for (l1, l2) in corpus::pairs(&s, 40, 11) {
            for (a, b) in
                [(l1.clone(), l1.intersect(&l1).unwrap()), (l1.intersect(&l2).unwrap_or(l1.clone()), l1.clone())]
            {
                if s.index_of(&a).unwrap() != s.index_of(&b).unwrap() {
                    continue;
                }
                let ia = s.concretize_to(&a, &xy).unwrap();
                let ib = s.concretize_to(&b, &xy).unwrap();
                for w in &all {
                    assert_eq!(ia.contains(w), in_concretization(&a, &big, w));
                }
                if a.is_subset(&b).unwrap() {
                    assert!(words(&ia, 4).is_subset(&words(&ib, 4)));
                }
                let meet = s.concretize_to(&a.intersect(&b).unwrap(), &xy).unwrap();
                let inter: BTreeSet<Word> = words(&ia, 4).intersection(&words(&ib, 4)).cloned().collect();
                assert_eq!(words(&meet, 4), inter);
                let neg = s.concretize_to(&a.complement(), &xy).unwrap();
                let co: BTreeSet<Word> = all.iter().filter(|w| !ia.contains(w)).cloned().collect();
                assert_eq!(words(&neg, 4), co);
            }
        }
    }
}

#[test]
fn closed_form_quotients_are_pointwise_maximal() {
    for mode in [Mode::Sync, Mode::Async] {
        let s = LanguageSieve::new(corpus::two_alphabets(), mode);
        let heap = SievedHeap::new(s.clone()).unwrap();
        for (a, b) in corpus::pairs(&s, 12, 5) {
            let z = s.quotient(&a, &b).unwrap();
            let report = pointwise_maximality(&s, &a, &b, &z, 4).unwrap();
            assert!(report.holds(), "{mode:?} {a:?} {b:?}: {report:?}");
            let la = heap.locate(s.index_of(&a).unwrap(), a.clone()).unwrap();
            let lb = heap.locate(s.index_of(&b).unwrap(), b.clone()).unwrap();
            let q = quotient_right(&heap, &la, &lb).unwrap();
            assert!(q.value().equivalent(&z).unwrap());
        }
    }
}

#[test]
fn every_component_of_the_composition_is_below_the_quotient() {
    for mode in [Mode::Sync, Mode::Async] {
        let s = LanguageSieve::new(corpus::two_alphabets(), mode);
        for (a, c) in corpus::pairs(&s, 12, 9) {
            let b = s.compose(&a, &c).unwrap();
            let z = s.quotient(&a, &b).unwrap();
            assert!(s.le(&c, &z).unwrap());
        }
    }
}

#[test]
fn empty_a_gives_the_full_quotient() {
    for mode in [Mode::Sync, Mode::Async] {
        let s = LanguageSieve::new(corpus::two_alphabets(), mode);
        let a = Dfa::empty(s.alphabet(&idx(&["S1"])).unwrap());
        let b = finite(&s, &["S2"], &[&["c"]]);
        let z = s.quotient(&a, &b).unwrap();
        assert!(Dfa::universal(z.alphabet().clone()).is_subset(&z).unwrap());
    }
}

#[test]
fn merge_and_separation_are_adjoint() {
    for mode in [Mode::Sync, Mode::Async] {
        let s = LanguageSieve::new(corpus::two_alphabets(), mode);
        let pairs = corpus::pairs(&s, 12, 21);
        for (a, b) in &pairs {
            let sep = s.separation(a, b).unwrap();
            assert!(s.le(a, &s.merge(b, &sep).unwrap()).unwrap());
            for (x, _) in &pairs {
                assert_eq!(s.le(a, &s.merge(b, x).unwrap()).unwrap(), s.le(&sep, x).unwrap(),);
            }
        }
    }
}

#[test]
fn sieve_laws_hold_on_two_alphabets() {
    for mode in [Mode::Sync, Mode::Async] {
        let heap = SievedHeap::new(LanguageSieve::new(corpus::two_alphabets(), mode)).unwrap();
        let report = check_sieve(&heap, CheckOptions::default()).unwrap();
        assert!(report.is_empty(), "{report}");
        assert_eq!(report.carrier_size, 27);
    }
}

/// Lifting that pairs each symbol only with the first symbol of each new
/// component.
struct OnlyFirstLift(LanguageSieve);

impl Sieve for OnlyFirstLift {
    type Elem = Dfa;

    fn indices(&self) -> Vec<SieveIndex> {
        self.0.indices()
    }
    fn le_at(&self, x: &SieveIndex, a: &Dfa, b: &Dfa) -> bool {
        self.0.le_at(x, a, b)
    }
    fn mu_at(&self, x: &SieveIndex, a: &Dfa, b: &Dfa) -> Dfa {
        self.0.mu_at(x, a, b)
    }
    fn gamma_at(&self, x: &SieveIndex, a: &Dfa) -> Dfa {
        self.0.gamma_at(x, a)
    }
    fn belongs(&self, x: &SieveIndex, a: &Dfa) -> bool {
        self.0.belongs(x, a)
    }
    fn sample_at(&self, x: &SieveIndex) -> Option<Vec<Dfa>> {
        self.0.sample_at(x)
    }
    fn concretize(&self, from: &SieveIndex, to: &SieveIndex, a: &Dfa) -> Result<Dfa, preheap::HeapError> {
        let lifted = self.0.concretize(from, to, a)?;
        let alphabet = lifted.alphabet().clone();
        let first: Vec<(usize, usize, usize)> = (0..alphabet.len())
            .filter(|&sym| {
                let digits = alphabet.decode(sym);
                alphabet.components().iter().zip(digits).all(|(c, d)| from.contains(c.id()) || d == 0)
            })
            .map(|sym| (0, sym, 0))
            .collect();
        let mask = Dfa::from_partial(alphabet, 1, 0, &[0], &first).unwrap();
        Ok(lifted.intersect(&mask).unwrap())
    }
}

#[test]
fn a_broken_lifting_is_caught() {
    let broken = OnlyFirstLift(LanguageSieve::new(corpus::two_alphabets(), Mode::Sync));
    let heap = SievedHeap::new(broken).unwrap();
    let report = check_sieve(&heap, CheckOptions::default()).unwrap();
    assert!(report.violated(Law::HomomorphismGamma), "{report}");
    let witness = report.violations.iter().find(|v| v.law == Law::HomomorphismGamma).unwrap();
    assert!(!witness.witnesses.is_empty());
}

#[test]
fn sieved_order_decides_across_indices() {
    let s = LanguageSieve::new(corpus::two_alphabets(), Mode::Sync);
    let heap = SievedHeap::new(s.clone()).unwrap();
    let a = finite(&s, &["S1"], &[&["a"]]);
    let big = s.concretize_to(&a, &idx(&["S1", "S2"])).unwrap();
    let bigger = big.union(&Dfa::from_words(big.alphabet().clone(), &[vec![]]).unwrap()).unwrap();
    let la = heap.locate(idx(&["S1"]), a).unwrap();
    let lb = heap.locate(idx(&["S1", "S2"]), bigger).unwrap();
    assert!(heap.le(&la, &lb));
    assert!(!heap.le(&lb, &la));
}
