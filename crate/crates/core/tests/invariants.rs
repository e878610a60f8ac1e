//! Exhaustive checks at small sizes, with brute-force oracles.

use ordalg::algebra::OrderedAlgebra;
use ordalg::colimit::{coinserter_pos, verify_coinserter_universal};
use ordalg::instances::posets_up_to;
use ordalg::poset::{enumerate_monotone_maps, preorder_closure, FinitePoset};
use ordalg::relation::{tabulate, RelationPair};

fn is_transitive(n: usize, m: &[bool]) -> bool {
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(m[a * n + b] && m[b * n + c]) || m[a * n + c])))
}

#[test]
fn closure_is_least() {
    for n in 0..=4usize {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let off: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| a != b).collect();
        for mask in 0u32..(1 << off.len()) {
            let gens: Vec<(String, String)> = off
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask & (1 << i) != 0)
                .map(|(_, &(a, b))| (a.to_string(), b.to_string()))
                .collect();
            let c = preorder_closure(&labels, &[], &gens).unwrap();
            let m: Vec<bool> = (0..n * n).map(|i| c.leq(i / n, i % n)).collect();
            assert!(is_transitive(n, &m));
            for i in 0..n * n {
                let (a, b) = (i / n, i % n);
                let forced = a == b || gens.iter().any(|(x, y)| *x == a.to_string() && *y == b.to_string());
                if !m[i] || forced {
                    continue;
                }
                let mut less = m.clone();
                less[i] = false;
                assert!(!is_transitive(n, &less), "pair ({a},{b}) removable from closure of {gens:?}");
            }
        }
    }
}

#[test]
fn coinserters_are_universal_against_four_element_targets() {
    let targets: Vec<OrderedAlgebra> = posets_up_to(4).into_iter().map(OrderedAlgebra::from_poset).collect();
    let small = posets_up_to(3);
    let mut pairs = 0;
    for x in &small {
        for y in &small {
            let maps = enumerate_monotone_maps(x, y);
            for f0 in &maps {
                for f1 in &maps {
                    let c = coinserter_pos(f0, f1).unwrap();
                    let r = verify_coinserter_universal(&c, &f0.into(), &f1.into(), &targets).unwrap();
                    assert!(r.holds, "{:?} {:?}: {:?}", f0.table(), f1.table(), r.failure);
                    pairs += 1;
                }
            }
        }
    }
    assert!(pairs > 1000);
}

/// Pairs `s0, s1: S → A` landing in `T` factor through the tabulation in
/// exactly one monotone way.
#[test]
fn tabulations_factor_pairs_uniquely() {
    let tests = posets_up_to(3);
    for a in posets_up_to(2) {
        let n = a.len();
        for mask in 0u32..(1 << (n * n)) {
            let pairs: Vec<(usize, usize)> = (0..n * n).filter(|&i| mask & (1 << i) != 0).map(|i| (i / n, i % n)).collect();
            let r = RelationPair::from_pairs(OrderedAlgebra::from_poset(a.clone()), &pairs).unwrap();
            let t = tabulate(&r).unwrap();
            let tp: FinitePoset = t.as_poset();
            for s in &tests {
                let maps = enumerate_monotone_maps(s, &a);
                let into_t = enumerate_monotone_maps(s, &tp);
                for s0 in &maps {
                    for s1 in &maps {
                        let inside = (0..s.len()).all(|x| t.contains(s0.apply(x), s1.apply(x)));
                        let factorings = into_t
                            .iter()
                            .filter(|u| (0..s.len()).all(|x| t.pairs()[u.apply(x)] == (s0.apply(x), s1.apply(x))))
                            .count();
                        assert_eq!(factorings, usize::from(inside), "mask {mask} S={:?}", s.labels());
                    }
                }
            }
        }
    }
}
