//! Coinserters, subkernel pairs, quotients by subcongruences,
//! (subregular epi, embedding) factorizations and pullbacks, in `Pos` and in
//! ordered algebras. Posets enter as algebras over the empty signature.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{
    for_each_hom_table, for_each_tuple, hom_tables, table_len, tuple_index, tuple_label,
    Homomorphism, OrderedAlgebra,
};
use crate::error::{Error, Result, Witness};
use crate::poset::{close_relation, reflection_classes, FinitePoset, MonotoneMap};
use crate::relation::{classify, RelationPair};

/// A coinserter `c: Y → C` of a parallel pair `f0, f1: X → Y`.
#[derive(Clone, Debug)]
pub struct CoinserterResult {
    pub object: OrderedAlgebra,
    pub arrow: Homomorphism,
    /// `(c f0 x, c f1 x)` for each `x`, each checked `≤` in `C`.
    pub comparability: Vec<(usize, usize)>,
}

impl CoinserterResult {
    pub fn poset(&self) -> &FinitePoset {
        self.object.carrier()
    }

    pub fn arrow_map(&self) -> MonotoneMap {
        self.arrow.map()
    }
}

/// Posetal reflection of `(A, ⊑)` with operations induced on classes.
/// `leq` must be a closed preorder on `A` containing `≤_A`.
fn quotient_by_preorder(a: &OrderedAlgebra, leq: &[bool]) -> Result<(OrderedAlgebra, Homomorphism)> {
    let n = a.len();
    debug_assert!((0..n).all(|x| (0..n).all(|y| !a.carrier().le(x, y) || leq[x * n + y])));
    let class_of = reflection_classes(n, |x, y| leq[x * n + y]);
    let k = class_of.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut reps = vec![usize::MAX; k];
    for (x, &c) in class_of.iter().enumerate() {
        if reps[c] == usize::MAX {
            reps[c] = x;
        }
    }
    let mut rel = vec![false; k * k];
    for c in 0..k {
        for d in 0..k {
            rel[c * k + d] = leq[reps[c] * n + reps[d]];
        }
    }
    let labels = reps.iter().map(|&r| format!("[{}]", a.carrier().label(r))).collect();
    let carrier = FinitePoset::from_closed(labels, rel);

    let mut tables = Vec::with_capacity(a.signature().len());
    for (o, op) in a.signature().ops().iter().enumerate() {
        let len = table_len(k, op.arity).ok_or_else(|| Error::Resource("quotient table too large".into()))?;
        let mut table = vec![usize::MAX; len];
        let mut classes = vec![0usize; op.arity];
        let mut clash = None;
        for_each_tuple(n, op.arity, |args| {
            if clash.is_some() {
                return;
            }
            for (slot, &x) in classes.iter_mut().zip(args) {
                *slot = class_of[x];
            }
            let q = tuple_index(&classes, k);
            let v = class_of[a.apply(o, args)];
            if table[q] == usize::MAX {
                table[q] = v;
            } else if table[q] != v {
                clash = Some(args.to_vec());
            }
        });
        if let Some(args) = clash {
            return Err(Error::precondition(
                format!("operation {} is not well defined on the quotient", op.name),
                Some(Witness::operation(&op.name, [tuple_label(a.carrier(), &args)])),
            ));
        }
        tables.push(table);
    }
    let object = OrderedAlgebra::new(carrier, a.signature().clone(), tables)?;
    let arrow = Homomorphism::new(a.clone(), object.clone(), class_of)?;
    Ok((object, arrow))
}

fn check_parallel(f0: &Homomorphism, f1: &Homomorphism) -> Result<()> {
    if f0.dom() != f1.dom() || f0.cod() != f1.cod() {
        return Err(Error::input("maps are not parallel"));
    }
    Ok(())
}

fn comparability(arrow: &Homomorphism, f0: &Homomorphism, f1: &Homomorphism) -> Vec<(usize, usize)> {
    let c = arrow.cod().carrier();
    let pairs: Vec<(usize, usize)> = (0..f0.dom().len())
        .map(|x| (arrow.apply(f0.apply(x)), arrow.apply(f1.apply(x))))
        .collect();
    assert!(pairs.iter().all(|&(p, q)| c.le(p, q)), "coinserter arrow fails c·f0 ≤ c·f1");
    pairs
}

/// Coinserter in `Pos`: posetal reflection of the least preorder containing
/// `≤_Y` and every `f0(x) ⊑ f1(x)`.
pub fn coinserter_pos(f0: &MonotoneMap, f1: &MonotoneMap) -> Result<CoinserterResult> {
    if f0.dom() != f1.dom() || f0.cod() != f1.cod() {
        return Err(Error::input("maps are not parallel"));
    }
    let y = f0.cod();
    let n = y.len();
    let mut rel = y.matrix().to_vec();
    for x in 0..f0.dom().len() {
        rel[f0.apply(x) * n + f1.apply(x)] = true;
    }
    close_relation(n, &mut rel);
    let (object, arrow) = quotient_by_preorder(&OrderedAlgebra::from_poset(y.clone()), &rel)?;
    let comparability = comparability(&arrow, &f0.into(), &f1.into());
    Ok(CoinserterResult {
        object,
        arrow,
        comparability,
    })
}

/// Coinserter of parallel homomorphisms: the least preorder on `Y`
/// containing `≤_Y`, the generating pairs, and closed under applying each
/// operation componentwise; then posetal reflection with induced operations.
pub fn coinserter_alg(f0: &Homomorphism, f1: &Homomorphism) -> Result<CoinserterResult> {
    check_parallel(f0, f1)?;
    let y = f0.cod();
    let n = y.len();
    let mut rel = y.carrier().matrix().to_vec();
    for x in 0..f0.dom().len() {
        rel[f0.apply(x) * n + f1.apply(x)] = true;
    }
    loop {
        close_relation(n, &mut rel);
        let pairs: Vec<(usize, usize)> = (0..n * n).filter(|&i| rel[i]).map(|i| (i / n, i % n)).collect();
        let mut changed = false;
        for (o, op) in y.signature().ops().iter().enumerate() {
            let mut left = vec![0usize; op.arity];
            let mut right = vec![0usize; op.arity];
            for_each_tuple(pairs.len(), op.arity, |idx| {
                for (k, &i) in idx.iter().enumerate() {
                    left[k] = pairs[i].0;
                    right[k] = pairs[i].1;
                }
                let cell = y.apply(o, &left) * n + y.apply(o, &right);
                if !rel[cell] {
                    rel[cell] = true;
                    changed = true;
                }
            });
        }
        if !changed {
            break;
        }
    }
    let (object, arrow) = quotient_by_preorder(y, &rel)?;
    let comparability = comparability(&arrow, f0, f1);
    Ok(CoinserterResult {
        object,
        arrow,
        comparability,
    })
}

/// Subkernel pair of `h: A → B`: the pairs `(a, a')` with `h a ≤ h a'`,
/// tabulated in `A × A`.
pub fn subkernel_pair(h: impl Into<Homomorphism>) -> RelationPair {
    let h = h.into();
    let a = h.dom();
    let b = h.cod().carrier();
    let n = a.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| b.le(h.apply(x), h.apply(y)))
        .collect();
    RelationPair::from_pairs(a.clone(), &pairs).expect("pairs are in range")
}

fn require_subcongruence(r: &RelationPair) -> Result<()> {
    let cls = classify(r);
    if let Some((flag, w)) = cls.subcongruence_failure() {
        return Err(Error::precondition(
            format!("relation is not a subcongruence ({flag} is false)"),
            w.cloned(),
        ));
    }
    Ok(())
}

/// Coinserter of a subcongruence on a poset: `⊑` is the tabulation itself,
/// already a preorder containing `≤`. Operations on the target are ignored.
pub fn coinserter_subcongruence_pos(r: &RelationPair) -> Result<CoinserterResult> {
    let r = r.forget_operations();
    require_subcongruence(&r)?;
    let t = crate::relation::tabulate(&r)?;
    let (object, arrow) = quotient_by_preorder(r.target(), t.matrix())?;
    let comparability = leg_comparability(&arrow, &r);
    Ok(CoinserterResult {
        object,
        arrow,
        comparability,
    })
}

/// Quotient of an ordered algebra by an operation-closed subcongruence;
/// the arrow is the coinserter of the legs in ordered algebras.
pub fn quotient_algebra(r: &RelationPair) -> Result<CoinserterResult> {
    require_subcongruence(r)?;
    let t = crate::relation::tabulate(r)?;
    let (object, arrow) = quotient_by_preorder(r.target(), t.matrix())?;
    let comparability = leg_comparability(&arrow, r);
    Ok(CoinserterResult {
        object,
        arrow,
        comparability,
    })
}

fn leg_comparability(arrow: &Homomorphism, r: &RelationPair) -> Vec<(usize, usize)> {
    let c = arrow.cod().carrier();
    let pairs: Vec<(usize, usize)> = r
        .leg0()
        .iter()
        .zip(r.leg1())
        .map(|(&a, &b)| (arrow.apply(a), arrow.apply(b)))
        .collect();
    assert!(pairs.iter().all(|&(p, q)| c.le(p, q)), "quotient arrow fails c·r0 ≤ c·r1");
    pairs
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniversalityFailure {
    /// Index into the target family.
    pub target: usize,
    pub reason: String,
    /// The offending map(s) as label tables.
    pub maps: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniversalityReport {
    pub holds: bool,
    pub targets_checked: usize,
    pub cocones_checked: usize,
    pub failure: Option<UniversalityFailure>,
}

fn labels_of(cod: &FinitePoset, table: &[usize]) -> Vec<String> {
    table.iter().map(|&v| cod.label(v).to_owned()).collect()
}

/// Brute-force check of the coinserter universal property against every
/// target in `targets`:
/// every `c'` with `c'·f0 ≤ c'·f1` factors through the candidate arrow in
/// exactly one way (counted, not inferred from surjectivity), and
/// `u0·c ≤ u1·c` implies `u0 ≤ u1`. The reported failure is the first in
/// (target index, lexicographic map) order.
pub fn verify_coinserter_universal(
    candidate: &CoinserterResult,
    f0: &Homomorphism,
    f1: &Homomorphism,
    targets: &[OrderedAlgebra],
) -> Result<UniversalityReport> {
    check_parallel(f0, f1)?;
    let c = &candidate.arrow;
    if c.dom() != f0.cod() || c.cod() != &candidate.object {
        return Err(Error::input("candidate arrow does not start at the pair's codomain"));
    }
    let y = f0.cod();
    let cobj = candidate.object.carrier();
    let mut report = UniversalityReport {
        holds: true,
        targets_checked: 0,
        cocones_checked: 0,
        failure: None,
    };
    let bad = (0..f0.dom().len()).find(|&x| !cobj.le(c.apply(f0.apply(x)), c.apply(f1.apply(x))));
    if let Some(x) = bad {
        report.holds = false;
        report.failure = Some(UniversalityFailure {
            target: usize::MAX,
            reason: format!("arrow violates c·f0 ≤ c·f1 at {}", f0.dom().carrier().label(x)),
            maps: vec![labels_of(cobj, c.table())],
        });
        return Ok(report);
    }

    for (ti, z) in targets.iter().enumerate() {
        if !z.same_signature(y) {
            return Err(Error::input(format!("target {ti} has a different signature")));
        }
        report.targets_checked += 1;
        let zc = z.carrier();
        let from_c = hom_tables(&candidate.object, z)?;
        let mut factor_count: HashMap<Vec<usize>, usize> = HashMap::new();
        let composites: Vec<Vec<usize>> = from_c
            .iter()
            .map(|u| c.table().iter().map(|&v| u[v]).collect())
            .collect();
        for comp in &composites {
            *factor_count.entry(comp.clone()).or_default() += 1;
        }

        let mut failure = None;
        for_each_hom_table(y, z, |cp| {
            let cocone = (0..f0.dom().len()).all(|x| zc.le(cp[f0.apply(x)], cp[f1.apply(x)]));
            if !cocone {
                return true;
            }
            report.cocones_checked += 1;
            let count = factor_count.get(cp).copied().unwrap_or(0);
            if count != 1 {
                failure = Some(UniversalityFailure {
                    target: ti,
                    reason: format!("cocone factors through the candidate {count} times"),
                    maps: vec![labels_of(zc, cp)],
                });
                return false;
            }
            true
        });
        if failure.is_none() {
            'epi: for (i, u0) in from_c.iter().enumerate() {
                for (j, u1) in from_c.iter().enumerate() {
                    let below = composites[i].iter().zip(&composites[j]).all(|(&p, &q)| zc.le(p, q));
                    let pointwise = u0.iter().zip(u1).all(|(&p, &q)| zc.le(p, q));
                    if below && !pointwise {
                        failure = Some(UniversalityFailure {
                            target: ti,
                            reason: "u0·c ≤ u1·c but u0 ≰ u1".into(),
                            maps: vec![labels_of(zc, u0), labels_of(zc, u1)],
                        });
                        break 'epi;
                    }
                }
            }
        }
        if let Some(f) = failure {
            report.holds = false;
            report.failure = Some(f);
            return Ok(report);
        }
    }
    Ok(report)
}

/// `f = mono ∘ epi` with `epi` a subregular epimorphism (surjective) and
/// `mono` an embedding.
#[derive(Clone, Debug)]
pub struct FactorizationResult {
    pub mid: OrderedAlgebra,
    pub epi: Homomorphism,
    pub mono: Homomorphism,
}

/// Factor through the coinserter of the subkernel pair.
pub fn subregular_factorization(f: impl Into<Homomorphism>) -> Result<FactorizationResult> {
    let f = f.into();
    let r = subkernel_pair(&f);
    let q = quotient_algebra(&r)?;
    let k = q.object.len();
    let mut table = vec![usize::MAX; k];
    for (a, &cls) in q.arrow.table().iter().enumerate() {
        let v = f.apply(a);
        assert!(table[cls] == usize::MAX || table[cls] == v, "f is not constant on classes");
        table[cls] = v;
    }
    let mono = Homomorphism::new(q.object.clone(), f.cod().clone(), table)?;
    assert_eq!(mono.compose(&q.arrow)?.table(), f.table(), "mono ∘ epi ≠ f");
    assert!(q.arrow.is_surjective(), "epi not surjective");
    assert!(mono.is_embedding(), "mono not an embedding");
    Ok(FactorizationResult {
        mid: q.object,
        epi: q.arrow,
        mono,
    })
}

/// Pullback of `f: B → Q` and `e: A → Q`: pairs `(a, b)` with `e a = f b`,
/// componentwise order and operations. `to_a` is the pullback of `f` along
/// `e`; `to_b` the pullback of `e` along `f`.
#[derive(Clone, Debug)]
pub struct PullbackResult {
    pub object: OrderedAlgebra,
    pub to_a: Homomorphism,
    pub to_b: Homomorphism,
}

pub fn pullback(f: impl Into<Homomorphism>, e: impl Into<Homomorphism>) -> Result<PullbackResult> {
    let (f, e) = (f.into(), e.into());
    if f.cod() != e.cod() {
        return Err(Error::input("pullback: maps have different codomains"));
    }
    let (a, b) = (e.dom(), f.dom());
    let nb = b.len();
    let elems: Vec<(usize, usize)> = (0..a.len())
        .flat_map(|x| (0..nb).map(move |y| (x, y)))
        .filter(|&(x, y)| e.apply(x) == f.apply(y))
        .collect();
    let k = elems.len();
    let mut index = vec![usize::MAX; a.len() * nb];
    for (i, &(x, y)) in elems.iter().enumerate() {
        index[x * nb + y] = i;
    }
    let (ca, cb) = (a.carrier(), b.carrier());
    let mut rel = vec![false; k * k];
    for (i, &(x, y)) in elems.iter().enumerate() {
        for (j, &(x2, y2)) in elems.iter().enumerate() {
            rel[i * k + j] = ca.le(x, x2) && cb.le(y, y2);
        }
    }
    let labels = elems.iter().map(|&(x, y)| format!("({},{})", ca.label(x), cb.label(y))).collect();
    let carrier = FinitePoset::from_closed(labels, rel);
    let mut tables = Vec::with_capacity(a.signature().len());
    for (o, op) in a.signature().ops().iter().enumerate() {
        let mut table = Vec::with_capacity(table_len(k, op.arity).unwrap_or(0));
        let (mut xs, mut ys) = (vec![0usize; op.arity], vec![0usize; op.arity]);
        for_each_tuple(k, op.arity, |args| {
            for (slot, &i) in args.iter().enumerate() {
                (xs[slot], ys[slot]) = elems[i];
            }
            // Both legs are homomorphisms, so the pair stays in the pullback.
            table.push(index[a.apply(o, &xs) * nb + b.apply(o, &ys)]);
        });
        debug_assert!(table.iter().all(|&v| v != usize::MAX));
        tables.push(table);
    }
    let object = OrderedAlgebra::new_unchecked(carrier, a.signature().clone(), tables);
    let to_a = Homomorphism::new_unchecked(object.clone(), a.clone(), elems.iter().map(|p| p.0).collect());
    let to_b = Homomorphism::new_unchecked(object.clone(), b.clone(), elems.iter().map(|p| p.1).collect());
    Ok(PullbackResult { object, to_a, to_b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Signature;
    use crate::poset::{enumerate_monotone_maps, is_isomorphic};
    use crate::relation::tabulate;
    use std::sync::Arc;

    fn small_posets() -> Vec<FinitePoset> {
        vec![
            FinitePoset::empty(),
            FinitePoset::chain(1),
            FinitePoset::chain(2),
            FinitePoset::antichain(2),
            FinitePoset::chain(3),
            FinitePoset::antichain(3),
            FinitePoset::on_indices(3, &[(0, 1)]).unwrap(),
            FinitePoset::on_indices(3, &[(0, 1), (0, 2)]).unwrap(),
            FinitePoset::on_indices(3, &[(0, 2), (1, 2)]).unwrap(),
        ]
    }

    fn targets() -> Vec<OrderedAlgebra> {
        small_posets().into_iter().map(OrderedAlgebra::from_poset).collect()
    }

    #[test]
    fn coinserter_of_equal_pair_is_iso() {
        let y = FinitePoset::on_indices(3, &[(0, 1)]).unwrap();
        let f = MonotoneMap::new(FinitePoset::chain(1), y.clone(), vec![2]).unwrap();
        let c = coinserter_pos(&f, &f).unwrap();
        assert!(c.arrow.is_isomorphism());
    }

    #[test]
    fn coinserter_adds_one_pair() {
        let x = FinitePoset::chain(1);
        let y = FinitePoset::discrete(["x", "y"]).unwrap();
        let f0 = MonotoneMap::new(x.clone(), y.clone(), vec![0]).unwrap();
        let f1 = MonotoneMap::new(x, y, vec![1]).unwrap();
        let c = coinserter_pos(&f0, &f1).unwrap();
        assert_eq!(c.poset().len(), 2);
        assert!(c.poset().le(c.arrow.apply(0), c.arrow.apply(1)));
        assert!(is_isomorphic(c.poset(), &FinitePoset::chain(2)));
    }

    #[test]
    fn coinserter_collapses_reversed_pair() {
        let x = FinitePoset::chain(1);
        let y = FinitePoset::chain(2);
        let f0 = MonotoneMap::new(x.clone(), y.clone(), vec![1]).unwrap();
        let f1 = MonotoneMap::new(x, y, vec![0]).unwrap();
        let c = coinserter_pos(&f0, &f1).unwrap();
        assert_eq!(c.poset().len(), 1);
    }

    #[test]
    fn coinserter_rejects_non_parallel() {
        let f0 = MonotoneMap::identity(&FinitePoset::chain(1));
        let f1 = MonotoneMap::identity(&FinitePoset::chain(2));
        assert!(matches!(coinserter_pos(&f0, &f1), Err(Error::Input(_))));
    }

    #[test]
    fn subkernel_examples() {
        let a = FinitePoset::on_indices(3, &[(0, 1)]).unwrap();
        let t = tabulate(&subkernel_pair(MonotoneMap::identity(&a))).unwrap();
        let le: Vec<(usize, usize)> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).filter(|&(x, y)| a.le(x, y)).collect();
        assert_eq!(t.pairs(), le.as_slice());

        let k = MonotoneMap::constant(&a, &FinitePoset::chain(1), 0).unwrap();
        assert_eq!(tabulate(&subkernel_pair(&k)).unwrap().len(), 9);

        let h = MonotoneMap::new(FinitePoset::discrete(["x", "y"]).unwrap(), FinitePoset::chain(2), vec![0, 1]).unwrap();
        let t = tabulate(&subkernel_pair(&h)).unwrap();
        assert_eq!(t.pairs(), &[(0, 0), (0, 1), (1, 1)]);
    }

    #[test]
    fn subcongruence_coinserter_examples() {
        let a = FinitePoset::on_indices(3, &[(0, 1)]).unwrap();
        let le = subkernel_pair(MonotoneMap::identity(&a));
        let c = coinserter_subcongruence_pos(&le).unwrap();
        assert!(is_isomorphic(c.poset(), &a));

        let all: Vec<(usize, usize)> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
        let full = RelationPair::from_pairs(OrderedAlgebra::from_poset(a.clone()), &all).unwrap();
        assert_eq!(coinserter_subcongruence_pos(&full).unwrap().poset().len(), 1);

        // Oracle: generic coinserter of the legs.
        let d = FinitePoset::antichain(2);
        let r = RelationPair::from_pairs(OrderedAlgebra::from_poset(d.clone()), &[(0, 0), (0, 1), (1, 1)]).unwrap();
        let via_sub = coinserter_subcongruence_pos(&r).unwrap();
        let l0 = MonotoneMap::new(r.source().clone(), d.clone(), r.leg0().to_vec()).unwrap();
        let l1 = MonotoneMap::new(r.source().clone(), d, r.leg1().to_vec()).unwrap();
        let via_pair = coinserter_pos(&l0, &l1).unwrap();
        assert_eq!(via_sub.object, via_pair.object);
        assert_eq!(via_sub.arrow.table(), via_pair.arrow.table());
        assert!(is_isomorphic(via_sub.poset(), &FinitePoset::chain(2)));
    }

    #[test]
    fn subcongruence_precondition_names_flag() {
        let c2 = FinitePoset::chain(2);
        let diag = RelationPair::from_pairs(OrderedAlgebra::from_poset(c2), &[(0, 0), (1, 1)]).unwrap();
        let err = coinserter_subcongruence_pos(&diag).unwrap_err();
        assert!(err.to_string().contains("is_order_reflexive"), "{err}");
    }

    #[test]
    fn quotient_algebra_examples() {
        let sig = Arc::new(Signature::from_pairs(&[("u", 1)]).unwrap());
        let a = OrderedAlgebra::new(FinitePoset::antichain(2), sig.clone(), vec![vec![0, 1]]).unwrap();
        let diag = RelationPair::from_pairs(a.clone(), &[(0, 0), (1, 1)]).unwrap();
        assert!(quotient_algebra(&diag).unwrap().arrow.is_isomorphism());

        let r = RelationPair::from_pairs(a.clone(), &[(0, 0), (0, 1), (1, 1)]).unwrap();
        let q = quotient_algebra(&r).unwrap();
        assert!(is_isomorphic(q.poset(), &FinitePoset::chain(2)));
        assert_eq!(q.object.tables()[0], vec![0, 1]);

        let full = RelationPair::from_pairs(a, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let q = quotient_algebra(&full).unwrap();
        assert_eq!(q.object.len(), 1);
        assert_eq!(q.object.tables()[0], vec![0]);
    }

    #[test]
    fn quotient_algebra_rejects_non_closed() {
        let sig = Arc::new(Signature::from_pairs(&[("u", 1)]).unwrap());
        let a = OrderedAlgebra::new(FinitePoset::antichain(2), sig, vec![vec![1, 0]]).unwrap();
        let r = RelationPair::from_pairs(a, &[(0, 0), (0, 1), (1, 1)]).unwrap();
        let err = quotient_algebra(&r).unwrap_err();
        assert_eq!(err.witness().unwrap(), &Witness::operation("u", ["(0,1)"]));
    }

    #[test]
    fn coinserter_alg_empty_signature_matches_pos() {
        let y = FinitePoset::on_indices(3, &[(0, 1)]).unwrap();
        let x = FinitePoset::antichain(2);
        for f0 in enumerate_monotone_maps(&x, &y) {
            for f1 in enumerate_monotone_maps(&x, &y) {
                let p = coinserter_pos(&f0, &f1).unwrap();
                let a = coinserter_alg(&(&f0).into(), &(&f1).into()).unwrap();
                assert_eq!(p.object, a.object);
                assert_eq!(p.arrow, a.arrow);
            }
        }
    }

    #[test]
    fn verify_accepts_genuine_and_rejects_spoilers() {
        let x = FinitePoset::chain(1);
        let y = FinitePoset::antichain(2);
        let f0 = MonotoneMap::new(x.clone(), y.clone(), vec![0]).unwrap();
        let f1 = MonotoneMap::new(x, y.clone(), vec![1]).unwrap();
        let (h0, h1): (Homomorphism, Homomorphism) = ((&f0).into(), (&f1).into());
        let genuine = coinserter_pos(&f0, &f1).unwrap();
        assert!(verify_coinserter_universal(&genuine, &h0, &h1, &targets()).unwrap().holds);

        // Extra disconnected point in the candidate object.
        let bigger = FinitePoset::on_indices(3, &[(0, 1)]).unwrap();
        let obj = OrderedAlgebra::from_poset(bigger);
        let arrow = Homomorphism::new(OrderedAlgebra::from_poset(y.clone()), obj.clone(), vec![0, 1]).unwrap();
        let spoiler = CoinserterResult {
            object: obj,
            arrow,
            comparability: vec![(0, 1)],
        };
        let rep = verify_coinserter_universal(&spoiler, &h0, &h1, &targets()).unwrap();
        assert!(!rep.holds);

        // Identity arrow when the pair forces a collapse.
        let c2 = FinitePoset::chain(2);
        let g0 = MonotoneMap::new(FinitePoset::chain(1), c2.clone(), vec![1]).unwrap();
        let g1 = MonotoneMap::new(FinitePoset::chain(1), c2.clone(), vec![0]).unwrap();
        let id = OrderedAlgebra::from_poset(c2.clone());
        let spoiler = CoinserterResult {
            object: id.clone(),
            arrow: Homomorphism::identity(&id),
            comparability: vec![],
        };
        let rep = verify_coinserter_universal(&spoiler, &(&g0).into(), &(&g1).into(), &targets()).unwrap();
        assert!(!rep.holds);
    }

    #[test]
    fn coinserter_alg_binary_operation() {
        // Y = 2-antichain with binary first projection; pair picks 0 and 1.
        let sig = Arc::new(Signature::from_pairs(&[("m", 2)]).unwrap());
        let y = OrderedAlgebra::new(FinitePoset::antichain(2), sig.clone(), vec![vec![0, 0, 1, 1]]).unwrap();
        let one = OrderedAlgebra::new(FinitePoset::chain(1), sig.clone(), vec![vec![0]]).unwrap();
        // Homs from the 1-element algebra pick idempotents; both points are.
        let f0 = Homomorphism::new(one.clone(), y.clone(), vec![0]).unwrap();
        let f1 = Homomorphism::new(one, y.clone(), vec![1]).unwrap();
        let c = coinserter_alg(&f0, &f1).unwrap();
        assert_eq!(c.object.len(), 2);
        let fam = crate::instances::algebras_up_to(&sig, 2).unwrap();
        assert!(verify_coinserter_universal(&c, &f0, &f1, &fam).unwrap().holds);
    }

    #[test]
    fn factorization_examples() {
        let c2 = FinitePoset::chain(2);
        let emb = MonotoneMap::new(FinitePoset::chain(1), c2.clone(), vec![1]).unwrap();
        let f = subregular_factorization(&emb).unwrap();
        assert!(f.epi.is_isomorphism());

        let d = FinitePoset::discrete(["x", "y"]).unwrap();
        let bij = MonotoneMap::new(d, c2.clone(), vec![0, 1]).unwrap();
        let f = subregular_factorization(&bij).unwrap();
        assert!(f.mono.is_isomorphism());
        assert!(is_isomorphic(f.mid.carrier(), &c2));

        let k = MonotoneMap::constant(&c2, &c2, 0).unwrap();
        assert_eq!(subregular_factorization(&k).unwrap().mid.len(), 1);
    }

    #[test]
    fn pullback_is_universal() {
        // Oracle: every commuting square from a test object Z factors
        // uniquely through the pullback, over small algebras and test objects.
        let sig = Arc::new(Signature::from_pairs(&[("m", 2)]).unwrap());
        let fam = crate::instances::algebras_up_to(&sig, 2).unwrap();
        for q in fam.iter().filter(|q| q.len() <= 2) {
            for a in &fam {
                for b in &fam {
                    for e in enumerate_homomorphisms_checked(a, q) {
                        for f in enumerate_homomorphisms_checked(b, q) {
                            let p = pullback(&f, &e).unwrap();
                            assert!(crate::algebra::validate_algebra(p.object.carrier(), p.object.signature(), p.object.tables()).valid);
                            Homomorphism::new(p.object.clone(), a.clone(), p.to_a.table().to_vec()).unwrap();
                            Homomorphism::new(p.object.clone(), b.clone(), p.to_b.table().to_vec()).unwrap();
                            for z in fam.iter().filter(|z| z.len() <= 2) {
                                let into_p = hom_tables(z, &p.object).unwrap();
                                for u in hom_tables(z, a).unwrap() {
                                    for v in hom_tables(z, b).unwrap() {
                                        if (0..z.len()).any(|w| e.apply(u[w]) != f.apply(v[w])) {
                                            continue;
                                        }
                                        let n = into_p
                                            .iter()
                                            .filter(|s| {
                                                (0..z.len()).all(|w| p.to_a.apply(s[w]) == u[w] && p.to_b.apply(s[w]) == v[w])
                                            })
                                            .count();
                                        assert_eq!(n, 1);
                                    }
                                }
                                // The legs are jointly order-reflecting.
                                let k = p.object.len();
                                for s in 0..k {
                                    for t in 0..k {
                                        let below = a.carrier().le(p.to_a.apply(s), p.to_a.apply(t))
                                            && b.carrier().le(p.to_b.apply(s), p.to_b.apply(t));
                                        assert_eq!(below, p.object.carrier().le(s, t));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    fn enumerate_homomorphisms_checked(a: &OrderedAlgebra, b: &OrderedAlgebra) -> Vec<Homomorphism> {
        crate::algebra::enumerate_homomorphisms(a, b).unwrap()
    }

    #[test]
    fn pullback_examples() {
        let q = FinitePoset::chain(2);
        let b = FinitePoset::antichain(3);
        let f = MonotoneMap::new(b.clone(), q.clone(), vec![0, 1, 1]).unwrap();
        let p = pullback(&f, MonotoneMap::identity(&q)).unwrap();
        assert_eq!(p.object.len(), 3);
        assert!(p.to_b.is_isomorphism());

        let a = FinitePoset::chain(2);
        let k1 = MonotoneMap::constant(&b, &q, 1).unwrap();
        let k2 = MonotoneMap::constant(&a, &q, 1).unwrap();
        let p = pullback(&k1, &k2).unwrap();
        assert_eq!(p.object.len(), 6);
        for x in 0..6 {
            assert_eq!(k2.apply(p.to_a.apply(x)), k1.apply(p.to_b.apply(x)));
        }
    }
}
