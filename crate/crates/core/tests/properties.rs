use std::sync::Arc;

use proptest::prelude::*;

use ordalg::algebra::{closed_subsets, image_factorization, product_algebra, subalgebra, validate_algebra, Homomorphism, OrderedAlgebra, Signature};
use ordalg::classical::{regular_factorization_set, FiniteMap};
use ordalg::colimit::{coinserter_alg, coinserter_pos, pullback, quotient_algebra, subkernel_pair, subregular_factorization};
use ordalg::generator::{is_subregular_projective_instance, tensor_pos};
use ordalg::instances::{random_algebra, random_monotone_map, random_poset, rng};
use ordalg::poset::{is_embedding, is_isomorphic, is_surjective, posetal_reflection, preorder_closure, product, FinitePoset, FinitePreorder};
use ordalg::relation::{classify, tabulate, RelationPair};
use ordalg::term::{evaluate, free_terms, Term, Valuation};

fn poset(n: usize, seed: u64) -> FinitePoset {
    random_poset(n, 0.45, &mut rng(seed))
}

fn binary() -> Arc<Signature> {
    Arc::new(Signature::from_pairs(&[("m", 2)]).unwrap())
}

fn unary_binary() -> Arc<Signature> {
    Arc::new(Signature::from_pairs(&[("u", 1), ("m", 2)]).unwrap())
}

fn algebra(sig: &Arc<Signature>, n: usize, seed: u64) -> OrderedAlgebra {
    let mut r = rng(seed);
    let p = random_poset(n, 0.45, &mut r);
    random_algebra(sig, &p, &mut r).expect("nonempty signature without constants")
}

/// Warshall closure of reflexive generators, by hand.
fn warshall(n: usize, gens: &[(usize, usize)]) -> Vec<bool> {
    let mut m = vec![false; n * n];
    for i in 0..n {
        m[i * n + i] = true;
    }
    for &(a, b) in gens {
        m[a * n + b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if m[i * n + k] && m[k * n + j] {
                    m[i * n + j] = true;
                }
            }
        }
    }
    m
}

fn random_hom(a: &OrderedAlgebra, b: &OrderedAlgebra, pick: usize) -> Option<Homomorphism> {
    let homs = ordalg::algebra::enumerate_homomorphisms(a, b).unwrap();
    (!homs.is_empty()).then(|| homs[pick % homs.len()].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn reflecting_a_poset_changes_nothing(n in 0usize..=5, seed: u64) {
        let p = poset(n, seed);
        let r = posetal_reflection(&p.as_preorder());
        prop_assert_eq!(r.quotient.len(), n);
        prop_assert!(is_isomorphic(&r.quotient, &p));
    }

    #[test]
    fn reflection_is_idempotent(n in 0usize..=6, bits in proptest::collection::vec(any::<bool>(), 36)) {
        let rel: Vec<bool> = (0..n * n).map(|i| bits[i]).collect();
        let labels = (0..n).map(|i| i.to_string()).collect();
        let pre = FinitePreorder::from_relation(labels, rel).unwrap();
        let once = posetal_reflection(&pre).quotient;
        let twice = posetal_reflection(&once.as_preorder()).quotient;
        prop_assert_eq!(once.len(), twice.len());
        prop_assert!(is_isomorphic(&once, &twice));
        prop_assert!(posetal_reflection(&pre).proj.is_surjective());
    }

    #[test]
    fn closure_matches_warshall(n in 1usize..=5, gens in proptest::collection::vec((0usize..5, 0usize..5), 0..8)) {
        let gens: Vec<(usize, usize)> = gens.into_iter().filter(|&(a, b)| a < n && b < n).collect();
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let named: Vec<(String, String)> = gens.iter().map(|&(a, b)| (a.to_string(), b.to_string())).collect();
        let c = preorder_closure(&labels, &[], &named).unwrap();
        let want = warshall(n, &gens);
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(c.leq(a, b), want[a * n + b]);
            }
        }
    }

    #[test]
    fn coinserter_alg_agrees_with_pos(nx in 0usize..=3, ny in 1usize..=4, seed: u64) {
        let mut r = rng(seed);
        let x = random_poset(nx, 0.4, &mut r);
        let y = random_poset(ny, 0.4, &mut r);
        let f0 = random_monotone_map(&x, &y, &mut r).unwrap();
        let f1 = random_monotone_map(&x, &y, &mut r).unwrap();
        let a = coinserter_pos(&f0, &f1).unwrap();
        let b = coinserter_alg(&(&f0).into(), &(&f1).into()).unwrap();
        prop_assert_eq!(a.object, b.object);
        prop_assert_eq!(a.arrow.table(), b.arrow.table());
    }

    #[test]
    fn subkernel_pairs_are_subcongruences(n in 0usize..=4, m in 1usize..=4, seed: u64) {
        let mut r = rng(seed);
        let (p, q) = (random_poset(n, 0.4, &mut r), random_poset(m, 0.4, &mut r));
        let f = random_monotone_map(&p, &q, &mut r).unwrap();
        let c = classify(&subkernel_pair(&f));
        prop_assert!(c.is_subcongruence);
        prop_assert!(!c.is_order_reflexive || c.is_reflexive);
    }

    #[test]
    fn subkernel_pairs_of_homs_are_subcongruences(n in 1usize..=3, m in 1usize..=3, seed: u64, pick: usize) {
        let sig = unary_binary();
        let (a, b) = (algebra(&sig, n, seed), algebra(&sig, m, seed ^ 0x5555));
        if let Some(h) = random_hom(&a, &b, pick) {
            prop_assert!(classify(&subkernel_pair(&h)).is_subcongruence);
        }
    }

    #[test]
    fn quotients_are_effective(n in 1usize..=3, m in 1usize..=3, seed: u64, pick: usize) {
        let sig = binary();
        let (a, b) = (algebra(&sig, n, seed), algebra(&sig, m, seed.wrapping_add(1)));
        if let Some(h) = random_hom(&a, &b, pick) {
            let r = subkernel_pair(&h);
            let q = quotient_algebra(&r).unwrap();
            prop_assert!(q.arrow.is_surjective());
            prop_assert_eq!(tabulate(&subkernel_pair(&q.arrow)).unwrap(), tabulate(&r).unwrap());
        }
    }

    #[test]
    fn classify_is_stable_under_tabulation(n in 1usize..=4, seed: u64, bits in proptest::collection::vec(any::<bool>(), 16)) {
        let p = poset(n, seed);
        let pairs: Vec<(usize, usize)> = (0..n * n).filter(|&i| bits[i]).map(|i| (i / n, i % n)).collect();
        let r = RelationPair::from_pairs(OrderedAlgebra::from_poset(p), &pairs).unwrap();
        let t = tabulate(&r).unwrap();
        let (a, b) = (classify(&r), classify(&t.as_relation()));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn factorization_recomposes(n in 0usize..=5, m in 1usize..=5, seed: u64) {
        let mut r = rng(seed);
        let (p, q) = (random_poset(n, 0.4, &mut r), random_poset(m, 0.4, &mut r));
        let f = random_monotone_map(&p, &q, &mut r).unwrap();
        let fac = subregular_factorization(&f).unwrap();
        let whole = fac.mono.compose(&fac.epi).unwrap();
        prop_assert_eq!(whole.table(), f.table());
        prop_assert!(is_surjective(&fac.epi.map()));
        prop_assert!(is_embedding(&fac.mono.map()));
    }

    #[test]
    fn pullback_of_surjection_is_surjective(na in 1usize..=3, nb in 0usize..=3, nq in 1usize..=3, seed: u64) {
        let mut r = rng(seed);
        let (a, b, q) = (random_poset(na.max(nq), 0.4, &mut r), random_poset(nb, 0.4, &mut r), random_poset(nq, 0.4, &mut r));
        let e = random_monotone_map(&a, &q, &mut r).unwrap();
        let f = random_monotone_map(&b, &q, &mut r).unwrap();
        let p = pullback(&f, &e).unwrap();
        if e.is_surjective() {
            prop_assert!(p.to_b.is_surjective());
        }
        for i in 0..p.object.len() {
            prop_assert_eq!(e.apply(p.to_a.apply(i)), f.apply(p.to_b.apply(i)));
        }
    }

    #[test]
    fn evaluation_extends_operations(n in 1usize..=3, seed: u64, vals in proptest::collection::vec(0usize..3, 2)) {
        let sig = binary();
        let a = algebra(&sig, n, seed);
        let vars = vec!["x".to_string(), "y".to_string()];
        let val: Valuation = [("x".to_string(), vals[0] % n), ("y".to_string(), vals[1] % n)].into();
        let terms = free_terms(&sig, &vars, 1);
        for s in &terms {
            for t in &terms {
                let whole = Term::app("m", vec![s.clone(), t.clone()]);
                let (vs, vt) = (evaluate(s, &a, &val).unwrap(), evaluate(t, &a, &val).unwrap());
                prop_assert_eq!(evaluate(&whole, &a, &val).unwrap(), a.apply(0, &[vs, vt]));
            }
        }
    }

    #[test]
    fn constructions_validate(n in 1usize..=3, m in 1usize..=3, seed: u64, pick: usize) {
        let sig = unary_binary();
        let (a, b) = (algebra(&sig, n, seed), algebra(&sig, m, seed ^ 0xABCD));
        let p = product_algebra(&a, &b).unwrap().object;
        prop_assert!(validate_algebra(p.carrier(), p.signature(), p.tables()).valid);
        for s in closed_subsets(&a).unwrap() {
            let sub = subalgebra(&a, &s).unwrap().algebra;
            prop_assert!(validate_algebra(sub.carrier(), sub.signature(), sub.tables()).valid);
        }
        if let Some(h) = random_hom(&a, &b, pick) {
            let img = image_factorization(&h).image;
            prop_assert!(validate_algebra(img.carrier(), img.signature(), img.tables()).valid);
        }
    }

    #[test]
    fn set_factorization_laws(n in 0usize..=5, m in 1usize..=5, table in proptest::collection::vec(0usize..5, 5)) {
        let f = FiniteMap::on_sizes(n, m, table[..n].iter().map(|&x| x % m).collect()).unwrap();
        let s = regular_factorization_set(&f).unwrap();
        prop_assert!(s.surjection.is_surjective());
        prop_assert!(s.injection.is_injective());
        let whole = s.injection.compose(&s.surjection).unwrap();
        prop_assert_eq!(whole.table(), f.table());
    }

    #[test]
    fn tensor_is_product(np in 0usize..=3, ng in 0usize..=3, seed: u64) {
        let mut r = rng(seed);
        let (p, g) = (random_poset(np, 0.5, &mut r), random_poset(ng, 0.5, &mut r));
        let t = tensor_pos(&p, &g).unwrap();
        prop_assert!(is_isomorphic(&t.object, &product(&p, &g).object));
    }

    #[test]
    fn points_lift_along_surjections(n in 1usize..=4, m in 1usize..=3, seed: u64) {
        let mut r = rng(seed);
        let (a, b) = (random_poset(n.max(m), 0.4, &mut r), random_poset(m, 0.4, &mut r));
        let e = random_monotone_map(&a, &b, &mut r).unwrap();
        if e.is_surjective() {
            let one = OrderedAlgebra::from_poset(FinitePoset::chain(1));
            prop_assert!(is_subregular_projective_instance(&one, &e).unwrap().holds);
        }
    }
}
