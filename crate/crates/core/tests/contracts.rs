use preheap::contract::{Contract, ContractDoc, ContractHeap};
use preheap::lattice::Universe;
use preheap::oracle::{enumerate_solutions, verify_quotient, Side};
use preheap::{check_axioms, identity_probe, quotient_right, CheckOptions, PreorderHeap};

fn heap(n: usize) -> ContractHeap {
    ContractHeap::new(Universe::numbered(n).unwrap())
}

/// Masks `(A, G)` of a contract.
fn masks(c: &Contract) -> (u64, u64) {
    (c.assumptions().mask(), c.guarantees().mask())
}

/// Refinement and composition written out on raw masks.
fn le((a, g): (u64, u64), (a2, g2): (u64, u64)) -> bool {
    g & !g2 == 0 && a2 & !a == 0
}

fn compose((a, g): (u64, u64), (a2, g2): (u64, u64), full: u64) -> (u64, u64) {
    let g3 = g & g2;
    (((a & a2) | !g3) & full, g3)
}

#[test]
fn carrier_has_three_to_the_n_contracts() {
    for n in 1..=4 {
        assert_eq!(heap(n).elements().unwrap().len(), 3usize.pow(n as u32));
    }
}

#[test]
fn axioms_hold_exhaustively_over_three_behaviors() {
    for n in 1..=3 {
        let report = check_axioms(&heap(n), CheckOptions::default()).unwrap();
        assert!(report.is_empty(), "{n}: {report}");
    }
}

#[test]
fn quotients_match_raw_brute_force_maxima() {
    let h = heap(3);
    let full = 0b111;
    let all = h.elements().unwrap();
    let raw: Vec<(u64, u64)> = all.iter().map(masks).collect();
    let mut pairs = 0;
    for a in &all {
        for b in &all {
            let q = a.quotient(b).unwrap();
            assert_eq!(q, quotient_right(&h, b, a).unwrap());
            let sols: Vec<(u64, u64)> =
                raw.iter().copied().filter(|&x| le(compose(masks(b), x, full), masks(a))).collect();
            let maxima: Vec<(u64, u64)> = sols.iter().copied().filter(|&m| sols.iter().all(|&x| le(x, m))).collect();
            assert_eq!(maxima, vec![masks(&q)], "{a:?} / {b:?}");
            assert!(verify_quotient(&h, b, a, Side::Right).unwrap());
            assert_eq!(enumerate_solutions(&h, b, a, Side::Right).unwrap().maxima, vec![q]);
            pairs += 1;
        }
    }
    assert_eq!(pairs, 729);
}

#[test]
fn merge_and_separation_are_adjoint() {
    let h = heap(3);
    let all = h.elements().unwrap();
    for p in &all {
        for q in &all {
            let s = p.separation(q).unwrap();
            for x in &all {
                assert_eq!(p.refines(&q.merge(x).unwrap()).unwrap(), s.refines(x).unwrap(), "{p:?} {q:?} {x:?}");
            }
        }
    }
}

#[test]
fn identity_corollary() {
    for n in 1..=3 {
        let h = heap(n);
        let top = Contract::full(h.universe());
        let probe = identity_probe(&h, CheckOptions::default()).unwrap().expect("(B,B) is an identity");
        assert_eq!(probe.identity, top);
        assert_eq!(probe.tau_identity, top.reciprocal());
        assert!(probe.report.is_empty());
    }
}

#[test]
fn documents_validate_coverage() {
    let ok: ContractDoc =
        serde_json::from_str(r#"{"universe":["x","y"],"assumptions":["x"],"guarantees":["y"]}"#).unwrap();
    let c = ok.into_contract().unwrap();
    assert_eq!(c.to_doc().into_contract().unwrap(), c);
    let bad: ContractDoc =
        serde_json::from_str(r#"{"universe":["x","y"],"assumptions":["x"],"guarantees":[]}"#).unwrap();
    assert!(bad.into_contract().is_err());
}
