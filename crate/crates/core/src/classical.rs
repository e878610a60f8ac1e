//! Finite sets as discrete posets: kernel pairs, coequalizers, regular
//! factorization, effectivity of equivalences, and pullback stability.

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::algebra::OrderedAlgebra;
use crate::colimit::{pullback, PullbackResult};
use crate::error::{Error, Result, Witness};
use crate::poset::{for_each_monotone_table, numeric_labels, FinitePoset, MonotoneMap};
use crate::relation::{classify, tabulate, RelationPair, Tabulation};

/// A total map between finite sets (discrete posets).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMap(MonotoneMap);

fn require_discrete(p: &FinitePoset, what: &str) -> Result<()> {
    if p.is_discrete() {
        Ok(())
    } else {
        Err(Error::input(format!("{what} is not a set (its order is not discrete)")))
    }
}

impl FiniteMap {
    pub fn new(dom: FinitePoset, cod: FinitePoset, table: Vec<usize>) -> Result<Self> {
        require_discrete(&dom, "domain")?;
        require_discrete(&cod, "codomain")?;
        MonotoneMap::new(dom, cod, table).map(FiniteMap)
    }

    /// Map `{0..n} → {0..m}`.
    pub fn on_sizes(n: usize, m: usize, table: Vec<usize>) -> Result<Self> {
        Self::new(FinitePoset::antichain(n), FinitePoset::antichain(m), table)
    }

    pub fn from_map(f: MonotoneMap) -> Result<Self> {
        require_discrete(f.dom(), "domain")?;
        require_discrete(f.cod(), "codomain")?;
        Ok(FiniteMap(f))
    }

    pub fn map(&self) -> &MonotoneMap {
        &self.0
    }

    pub fn dom(&self) -> &FinitePoset {
        self.0.dom()
    }

    pub fn cod(&self) -> &FinitePoset {
        self.0.cod()
    }

    pub fn table(&self) -> &[usize] {
        self.0.table()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0.apply(x)
    }

    pub fn is_injective(&self) -> bool {
        self.0.is_injective()
    }

    pub fn is_surjective(&self) -> bool {
        self.0.is_surjective()
    }

    pub fn is_bijective(&self) -> bool {
        self.0.is_isomorphism()
    }

    pub fn compose(&self, inner: &FiniteMap) -> Result<FiniteMap> {
        self.0.compose(&inner.0).map(FiniteMap)
    }
}

impl From<FiniteMap> for MonotoneMap {
    fn from(f: FiniteMap) -> Self {
        f.0
    }
}

/// A relation pair on a set whose tabulation is an equivalence.
#[derive(Clone, Debug)]
pub struct EquivalencePair(RelationPair);

impl EquivalencePair {
    pub fn new(r: RelationPair) -> Result<Self> {
        require_discrete(r.target().carrier(), "relation target")?;
        if !r.target().signature().is_empty() {
            return Err(Error::input("relation target carries operations"));
        }
        if let Some((flag, w)) = classify(&r).congruence_failure() {
            return Err(Error::precondition(format!("relation is not an equivalence ({flag} is false)"), w.cloned()));
        }
        Ok(EquivalencePair(r))
    }

    /// The equivalence on `0..n` whose classes are given by `class_of`.
    pub fn from_classes(n: usize, class_of: &[usize]) -> Result<Self> {
        if class_of.len() != n {
            return Err(Error::input("class assignment has the wrong length"));
        }
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| class_of[a] == class_of[b])
            .collect();
        let target = OrderedAlgebra::from_poset(FinitePoset::antichain(n));
        Self::new(RelationPair::from_pairs(target, &pairs)?)
    }

    pub fn relation(&self) -> &RelationPair {
        &self.0
    }

    pub fn carrier(&self) -> &FinitePoset {
        self.0.target().carrier()
    }

    pub fn tabulation(&self) -> Tabulation {
        tabulate(&self.0).expect("equivalences are relations")
    }
}

/// Restricted growth strings of length `n`: one per partition of `0..n`.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn go(n: usize, cur: &mut Vec<usize>, blocks: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=blocks {
            cur.push(b);
            go(n, cur, blocks.max(b + 1), out);
            cur.pop();
        }
    }
    go(n, &mut cur, 0, &mut out);
    out
}

/// `{(a, a') : f a = f a'}`.
pub fn kernel_pair_set(f: &FiniteMap) -> EquivalencePair {
    let n = f.dom().len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| f.apply(a) == f.apply(b))
        .collect();
    let target = OrderedAlgebra::from_poset(f.dom().clone());
    EquivalencePair::new(RelationPair::from_pairs(target, &pairs).expect("pairs in range")).expect("kernels are equivalences")
}

#[derive(Clone, Debug)]
pub struct SetQuotient {
    pub quotient: FinitePoset,
    pub projection: FiniteMap,
}

/// Quotient of `Y` by the equivalence generated by `r0 x ~ r1 x`; classes
/// numbered by least element and labelled `[rep]`.
pub fn coequalizer_set(r0: &FiniteMap, r1: &FiniteMap) -> Result<SetQuotient> {
    if r0.dom() != r1.dom() || r0.cod() != r1.cod() {
        return Err(Error::input("maps are not parallel"));
    }
    let y = r0.cod();
    let n = y.len();
    let mut uf = UnionFind::<usize>::new(n);
    for x in 0..r0.dom().len() {
        uf.union(r0.apply(x), r1.apply(x));
    }
    let mut class_of_root = vec![usize::MAX; n];
    let mut table = Vec::with_capacity(n);
    let mut labels = Vec::new();
    for v in 0..n {
        let root = uf.find(v);
        if class_of_root[root] == usize::MAX {
            class_of_root[root] = labels.len();
            labels.push(format!("[{}]", y.label(v)));
        }
        table.push(class_of_root[root]);
    }
    let quotient = FinitePoset::discrete(labels)?;
    let projection = FiniteMap(MonotoneMap::new(y.clone(), quotient.clone(), table)?);
    Ok(SetQuotient { quotient, projection })
}

fn legs(e: &EquivalencePair) -> (FiniteMap, FiniteMap) {
    let r = e.relation();
    let src = r.source().clone();
    let tgt = r.target().carrier().clone();
    (
        FiniteMap(MonotoneMap::new(src.clone(), tgt.clone(), r.leg0().to_vec()).expect("legs are maps")),
        FiniteMap(MonotoneMap::new(src, tgt, r.leg1().to_vec()).expect("legs are maps")),
    )
}

#[derive(Clone, Debug)]
pub struct SetFactorization {
    pub surjection: FiniteMap,
    pub injection: FiniteMap,
}

/// `f = m ∘ c` with `c` the coequalizer of the kernel pair of `f`.
pub fn regular_factorization_set(f: &FiniteMap) -> Result<SetFactorization> {
    let (k0, k1) = legs(&kernel_pair_set(f));
    let q = coequalizer_set(&k0, &k1)?;
    let mut table = vec![usize::MAX; q.quotient.len()];
    for (a, &c) in q.projection.table().iter().enumerate() {
        table[c] = f.apply(a);
    }
    let m = FiniteMap(MonotoneMap::new(q.quotient.clone(), f.cod().clone(), table)?);
    assert_eq!(m.compose(&q.projection)?.table(), f.table(), "m ∘ c ≠ f");
    assert!(m.is_injective() && q.projection.is_surjective());
    Ok(SetFactorization {
        surjection: q.projection,
        injection: m,
    })
}

/// Whether the kernel pair of the coequalizer of `e` tabulates back to `e`.
pub fn effectivity_roundtrip_set(e: &RelationPair) -> Result<bool> {
    let e = EquivalencePair::new(e.clone())?;
    let (r0, r1) = legs(&e);
    let q = coequalizer_set(&r0, &r1)?;
    Ok(kernel_pair_set(&q.projection).tabulation().pairs() == e.tabulation().pairs())
}

/// With `G = 1`, a pair `R ⇉ A` is a congruence with respect to `G` when
/// `hom(1, R) → hom(1, A)²` is an order embedding whose image is an
/// equivalence on `hom(1, A)`.
pub fn congruence_wrt_point(r: &RelationPair) -> Result<bool> {
    require_discrete(r.target().carrier(), "relation target")?;
    if !r.target().signature().is_empty() {
        return Err(Error::input("relation target carries operations"));
    }
    let one = FinitePoset::chain(1);
    let n = r.target().len();
    let mut points: Vec<(usize, usize)> = Vec::new();
    let mut elems = Vec::new();
    for_each_monotone_table(&one, r.source(), |z| {
        elems.push(z[0]);
        points.push((r.leg0()[z[0]], r.leg1()[z[0]]));
    });
    let src = r.source();
    for (i, &zi) in elems.iter().enumerate() {
        for (j, &zj) in elems.iter().enumerate() {
            // The target is discrete, so the product order is equality.
            if src.le(zi, zj) != (points[i] == points[j]) {
                return Ok(false);
            }
        }
    }
    let mut rel = vec![false; n * n];
    for &(a, b) in &points {
        rel[a * n + b] = true;
    }
    let reflexive = (0..n).all(|a| rel[a * n + a]);
    let symmetric = (0..n * n).all(|i| !rel[i] || rel[(i % n) * n + i / n]);
    let transitive = (0..n).all(|a| (0..n).all(|b| !rel[a * n + b] || (0..n).all(|c| !rel[b * n + c] || rel[a * n + c])));
    Ok(reflexive && symmetric && transitive)
}

pub fn pullback_set(f: &FiniteMap, e: &FiniteMap) -> Result<PullbackResult> {
    pullback(f.map(), e.map())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityResult {
    /// `e` is surjective, so the statement applies.
    pub applicable: bool,
    /// The pullback of `e` along `f` is surjective.
    pub leg_surjective: bool,
    pub holds: bool,
    /// Least element of `B` missed by the leg, if any.
    pub witness: Option<Witness>,
}

/// Pullback of `f: B → Q` and `e: A → Q`; checks the leg to `B` is onto
/// whenever `e` is.
pub fn surjection_stability_set(f: &FiniteMap, e: &FiniteMap) -> Result<StabilityResult> {
    let p = pullback_set(f, e)?;
    let leg = &p.to_b;
    let missed = (0..f.dom().len()).find(|b| !leg.table().contains(b));
    let applicable = e.is_surjective();
    let leg_surjective = missed.is_none();
    Ok(StabilityResult {
        applicable,
        leg_surjective,
        holds: !applicable || leg_surjective,
        witness: missed.map(|b| Witness::elements([f.dom().label(b)])),
    })
}

/// Every map `{0..n} → {0..m}`.
pub fn all_finite_maps(n: usize, m: usize) -> Vec<FiniteMap> {
    let (d, c) = (FinitePoset::antichain(n), FinitePoset::antichain(m));
    let mut out = Vec::new();
    for_each_monotone_table(&d, &c, |t| out.push(FiniteMap(MonotoneMap::new_unchecked(d.clone(), c.clone(), t.to_vec()))));
    out
}

/// Labels `0..n` as a set.
pub fn finite_set(n: usize) -> FinitePoset {
    FinitePoset::discrete(numeric_labels(n)).expect("distinct labels")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_pair_examples() {
        let inj = FiniteMap::on_sizes(3, 4, vec![2, 0, 3]).unwrap();
        assert_eq!(kernel_pair_set(&inj).tabulation().pairs(), &[(0, 0), (1, 1), (2, 2)]);
        let k = FiniteMap::on_sizes(3, 1, vec![0, 0, 0]).unwrap();
        assert_eq!(kernel_pair_set(&k).tabulation().len(), 9);
        let f = FiniteMap::on_sizes(3, 2, vec![0, 0, 1]).unwrap();
        assert_eq!(kernel_pair_set(&f).tabulation().len(), 5);
    }

    #[test]
    fn rejects_ordered_sets() {
        assert!(FiniteMap::new(FinitePoset::chain(2), finite_set(2), vec![0, 1]).is_err());
    }

    #[test]
    fn coequalizer_examples() {
        let id = FiniteMap::on_sizes(3, 3, vec![0, 1, 2]).unwrap();
        assert!(coequalizer_set(&id, &id).unwrap().projection.is_bijective());

        let r0 = FiniteMap::on_sizes(2, 3, vec![0, 1]).unwrap();
        let r1 = FiniteMap::on_sizes(2, 3, vec![1, 2]).unwrap();
        let q = coequalizer_set(&r0, &r1).unwrap();
        assert_eq!(q.quotient.len(), 1);
        assert_eq!(q.quotient.labels(), ["[0]"]);

        let e0 = FiniteMap::on_sizes(0, 3, vec![]).unwrap();
        assert!(coequalizer_set(&e0, &e0).unwrap().projection.is_bijective());
    }

    #[test]
    fn coequalizer_is_universal() {
        // Oracle: every map out of Y equalizing the pair factors uniquely.
        let r0 = FiniteMap::on_sizes(2, 4, vec![0, 2]).unwrap();
        let r1 = FiniteMap::on_sizes(2, 4, vec![1, 2]).unwrap();
        let q = coequalizer_set(&r0, &r1).unwrap();
        for z in 1..=5 {
            let zs = finite_set(z);
            let outs: Vec<FiniteMap> = crate::poset::enumerate_monotone_maps(&q.quotient, &zs)
                .into_iter()
                .map(|u| FiniteMap::from_map(u).unwrap())
                .collect();
            for h in crate::poset::enumerate_monotone_maps(q.projection.dom(), &zs) {
                let eq = (0..2).all(|x| h.apply(r0.apply(x)) == h.apply(r1.apply(x)));
                let n = outs.iter().filter(|u| u.compose(&q.projection).unwrap().table() == h.table()).count();
                assert_eq!(n, usize::from(eq));
            }
        }
    }

    #[test]
    fn regular_factorization_examples() {
        let inj = FiniteMap::on_sizes(2, 3, vec![2, 0]).unwrap();
        assert!(regular_factorization_set(&inj).unwrap().surjection.is_bijective());
        let sur = FiniteMap::on_sizes(3, 2, vec![1, 0, 1]).unwrap();
        assert!(regular_factorization_set(&sur).unwrap().injection.is_bijective());
        for n in 0..=4 {
            for m in 0..=3 {
                for f in all_finite_maps(n, m) {
                    let fac = regular_factorization_set(&f).unwrap();
                    let image: std::collections::BTreeSet<_> = f.table().iter().collect();
                    assert_eq!(fac.surjection.cod().len(), image.len());
                }
            }
        }
    }

    #[test]
    fn bell_numbers_and_effectivity() {
        let bell: Vec<usize> = (0..=5).map(|n| set_partitions(n).len()).collect();
        assert_eq!(bell, [1, 1, 2, 5, 15, 52]);
        for p in set_partitions(5) {
            let e = EquivalencePair::from_classes(5, &p).unwrap();
            assert!(effectivity_roundtrip_set(e.relation()).unwrap());
        }
    }

    #[test]
    fn effectivity_rejects_non_equivalence() {
        let t = OrderedAlgebra::from_poset(finite_set(2));
        let r = RelationPair::from_pairs(t, &[(0, 0), (1, 1), (0, 1)]).unwrap();
        assert!(matches!(effectivity_roundtrip_set(&r), Err(Error::Precondition { .. })));
    }

    #[test]
    fn congruence_wrt_point_examples() {
        let t = OrderedAlgebra::from_poset(finite_set(2));
        let diag = RelationPair::from_pairs(t.clone(), &[(0, 0), (1, 1)]).unwrap();
        assert!(congruence_wrt_point(&diag).unwrap());
        let r = RelationPair::from_pairs(t.clone(), &[(0, 0), (0, 1), (1, 1)]).unwrap();
        assert!(!congruence_wrt_point(&r).unwrap());
        // Legs not jointly injective: not a relation.
        let dup = RelationPair::new(finite_set(3), t, vec![0, 0, 1], vec![0, 0, 1]).unwrap();
        assert!(!congruence_wrt_point(&dup).unwrap());
        assert!(!classify(&dup).is_congruence);
    }

    #[test]
    fn stability_examples() {
        let f = FiniteMap::on_sizes(3, 2, vec![0, 1, 1]).unwrap();
        let id = FiniteMap::on_sizes(2, 2, vec![0, 1]).unwrap();
        let r = surjection_stability_set(&f, &id).unwrap();
        assert!(r.applicable && r.leg_surjective && r.holds);

        let e = FiniteMap::on_sizes(2, 2, vec![0, 0]).unwrap();
        let r = surjection_stability_set(&f, &e).unwrap();
        assert!(!r.applicable && !r.leg_surjective && r.holds);
        assert_eq!(r.witness.unwrap(), Witness::elements(["1"]));
    }
}
