//! Relations as parallel pairs, their tabulations inside `A × A`, and the
//! predicates that define congruences and subcongruences.
//!
//! Every check works on the tabulation `T = {(r0 z, r1 z)}`. Joint order
//! reflection makes `R ≅ T` with the componentwise order, so factorization
//! conditions over arbitrary test objects reduce to element-level set
//! conditions on `T`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{for_each_tuple, product_algebra, subalgebra, Homomorphism, OrderedAlgebra};
use crate::error::{Error, Result, Witness};
use crate::poset::{monotonicity_violation, FinitePoset, MonotoneMap};

/// A parallel pair `r0, r1: R → A`. The target may carry operations; the
/// source is kept as a poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationPair {
    source: FinitePoset,
    target: OrderedAlgebra,
    leg0: Vec<usize>,
    leg1: Vec<usize>,
}

impl RelationPair {
    pub fn new(source: FinitePoset, target: OrderedAlgebra, leg0: Vec<usize>, leg1: Vec<usize>) -> Result<Self> {
        for leg in [&leg0, &leg1] {
            if leg.len() != source.len() || leg.iter().any(|&v| v >= target.len()) {
                return Err(Error::input("relation leg does not map the source into the target"));
            }
            if let Some((x, y)) = monotonicity_violation(&source, target.carrier(), leg) {
                return Err(Error::precondition(
                    "relation leg is not monotone",
                    Some(Witness::elements([source.label(x), source.label(y)])),
                ));
            }
        }
        Ok(RelationPair {
            source,
            target,
            leg0,
            leg1,
        })
    }

    pub fn from_maps(r0: &MonotoneMap, r1: &MonotoneMap) -> Result<Self> {
        if r0.dom() != r1.dom() || r0.cod() != r1.cod() {
            return Err(Error::input("relation legs are not parallel"));
        }
        Self::new(
            r0.dom().clone(),
            OrderedAlgebra::from_poset(r0.cod().clone()),
            r0.table().to_vec(),
            r1.table().to_vec(),
        )
    }

    pub fn from_homs(r0: &Homomorphism, r1: &Homomorphism) -> Result<Self> {
        if r0.dom() != r1.dom() || r0.cod() != r1.cod() {
            return Err(Error::input("relation legs are not parallel"));
        }
        Self::new(
            r0.dom().carrier().clone(),
            r0.cod().clone(),
            r0.table().to_vec(),
            r1.table().to_vec(),
        )
    }

    /// The tabulated form: source is the set of pairs ordered componentwise,
    /// legs are the projections. Pairs are sorted and deduplicated.
    pub fn from_pairs(target: OrderedAlgebra, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = target.len();
        if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(Error::input(format!("pair ({a},{b}) out of range")));
        }
        let mut pairs = pairs.to_vec();
        pairs.sort_unstable();
        pairs.dedup();
        let source = pair_poset(target.carrier(), &pairs);
        let leg0 = pairs.iter().map(|p| p.0).collect();
        let leg1 = pairs.iter().map(|p| p.1).collect();
        Ok(RelationPair {
            source,
            target,
            leg0,
            leg1,
        })
    }

    pub fn from_labelled_pairs<S: AsRef<str>>(target: OrderedAlgebra, pairs: &[(S, S)]) -> Result<Self> {
        let idx = pairs
            .iter()
            .map(|(a, b)| Ok((target.carrier().resolve(a.as_ref())?, target.carrier().resolve(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(target, &idx)
    }

    pub fn source(&self) -> &FinitePoset {
        &self.source
    }

    pub fn target(&self) -> &OrderedAlgebra {
        &self.target
    }

    pub fn leg0(&self) -> &[usize] {
        &self.leg0
    }

    pub fn leg1(&self) -> &[usize] {
        &self.leg1
    }

    /// The same pair with the target's operations forgotten.
    pub fn forget_operations(&self) -> RelationPair {
        RelationPair {
            target: self.target.underlying(),
            ..self.clone()
        }
    }

    /// Sorted, deduplicated image pairs.
    pub fn image_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self.leg0.iter().copied().zip(self.leg1.iter().copied()).collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }

    /// Least `(z, z')` with `r0 z ≤ r0 z'`, `r1 z ≤ r1 z'` but `z ≰ z'`.
    pub fn joint_reflection_violation(&self) -> Option<(usize, usize)> {
        let a = self.target.carrier();
        let n = self.source.len();
        (0..n)
            .flat_map(|z| (0..n).map(move |w| (z, w)))
            .find(|&(z, w)| a.le(self.leg0[z], self.leg0[w]) && a.le(self.leg1[z], self.leg1[w]) && !self.source.le(z, w))
    }
}

/// Pairs ordered componentwise, labelled `(a,b)`.
fn pair_poset(a: &FinitePoset, pairs: &[(usize, usize)]) -> FinitePoset {
    let k = pairs.len();
    let mut rel = vec![false; k * k];
    for (i, &(x0, x1)) in pairs.iter().enumerate() {
        for (j, &(y0, y1)) in pairs.iter().enumerate() {
            rel[i * k + j] = a.le(x0, y0) && a.le(x1, y1);
        }
    }
    let labels = pairs
        .iter()
        .map(|&(x, y)| format!("({},{})", a.label(x), a.label(y)))
        .collect();
    FinitePoset::from_closed(labels, rel)
}

/// A relation in canonical form: a set of pairs in `A × A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tabulation {
    target: OrderedAlgebra,
    pairs: Vec<(usize, usize)>,
    member: Vec<bool>,
}

impl Tabulation {
    pub(crate) fn from_sorted(target: OrderedAlgebra, pairs: Vec<(usize, usize)>) -> Self {
        let n = target.len();
        let mut member = vec![false; n * n];
        for &(a, b) in &pairs {
            member[a * n + b] = true;
        }
        Tabulation { target, pairs, member }
    }

    pub fn target(&self) -> &OrderedAlgebra {
        &self.target
    }

    /// Sorted pairs.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.member[a * self.target.len() + b]
    }

    /// Membership matrix, row-major over `A × A`.
    pub fn matrix(&self) -> &[bool] {
        &self.member
    }

    /// The pairs as a subposet of `A × A`.
    pub fn as_poset(&self) -> FinitePoset {
        pair_poset(self.target.carrier(), &self.pairs)
    }

    /// The projections out of [`Self::as_poset`].
    pub fn as_relation(&self) -> RelationPair {
        RelationPair::from_pairs(self.target.clone(), &self.pairs).expect("pairs in range")
    }

    /// The pairs as a subalgebra of `A × A`; fails if not operation-closed.
    pub fn as_algebra(&self) -> Result<OrderedAlgebra> {
        let prod = product_algebra(&self.target, &self.target)?;
        let n = self.target.len();
        let idx: Vec<usize> = self.pairs.iter().map(|&(a, b)| a * n + b).collect();
        Ok(subalgebra(&prod.object, &idx)?.algebra)
    }

    pub fn labelled_pairs(&self) -> Vec<(String, String)> {
        let c = self.target.carrier();
        self.pairs
            .iter()
            .map(|&(a, b)| (c.label(a).to_owned(), c.label(b).to_owned()))
            .collect()
    }
}

/// Canonical form of a jointly order-reflecting pair.
pub fn tabulate(r: &RelationPair) -> Result<Tabulation> {
    if let Some((z, w)) = r.joint_reflection_violation() {
        return Err(Error::precondition(
            "legs are not jointly order-reflecting",
            Some(Witness::elements([r.source.label(z), r.source.label(w)])),
        ));
    }
    Ok(Tabulation::from_sorted(r.target.clone(), r.image_pairs()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationClassification {
    pub is_relation: bool,
    pub is_reflexive: bool,
    pub is_symmetric: bool,
    pub is_transitive: bool,
    pub is_order_reflexive: bool,
    pub is_congruence: bool,
    pub is_subcongruence: bool,
    /// Least counterexample per false flag, keyed by flag name.
    pub witnesses: BTreeMap<String, Witness>,
}

impl RelationClassification {
    /// First failing constituent of the subcongruence predicate.
    pub fn subcongruence_failure(&self) -> Option<(&'static str, Option<&Witness>)> {
        [
            ("is_relation", self.is_relation),
            ("is_order_reflexive", self.is_order_reflexive),
            ("is_transitive", self.is_transitive),
        ]
        .into_iter()
        .find(|&(_, ok)| !ok)
        .map(|(name, _)| (name, self.witnesses.get(name)))
    }

    pub fn congruence_failure(&self) -> Option<(&'static str, Option<&Witness>)> {
        [
            ("is_relation", self.is_relation),
            ("is_reflexive", self.is_reflexive),
            ("is_symmetric", self.is_symmetric),
            ("is_transitive", self.is_transitive),
        ]
        .into_iter()
        .find(|&(_, ok)| !ok)
        .map(|(name, _)| (name, self.witnesses.get(name)))
    }
}

fn label_pair(c: &FinitePoset, a: usize, b: usize) -> String {
    format!("({},{})", c.label(a), c.label(b))
}

/// Least tuple of pairs in `t` whose componentwise image under some
/// operation leaves `t`.
pub(crate) fn operation_closure_violation(t: &Tabulation) -> Option<Witness> {
    let a = &t.target;
    let c = a.carrier();
    for (o, op) in a.signature().ops().iter().enumerate() {
        let mut bad = None;
        let mut left = vec![0usize; op.arity];
        let mut right = vec![0usize; op.arity];
        for_each_tuple(t.pairs.len(), op.arity, |idx| {
            if bad.is_some() {
                return;
            }
            for (k, &i) in idx.iter().enumerate() {
                left[k] = t.pairs[i].0;
                right[k] = t.pairs[i].1;
            }
            if !t.contains(a.apply(o, &left), a.apply(o, &right)) {
                bad = Some(idx.iter().map(|&i| label_pair(c, t.pairs[i].0, t.pairs[i].1)).collect::<Vec<_>>());
            }
        });
        if let Some(elements) = bad {
            return Some(Witness::operation(&op.name, elements));
        }
    }
    None
}

/// Element-level classification of `r` through its tabulation.
pub fn classify(r: &RelationPair) -> RelationClassification {
    let t = Tabulation::from_sorted(r.target.clone(), r.image_pairs());
    let c = r.target.carrier();
    let n = c.len();
    let mut witnesses = BTreeMap::new();

    let mut relation_witness = r
        .joint_reflection_violation()
        .map(|(z, w)| Witness::elements([r.source.label(z), r.source.label(w)]));
    if relation_witness.is_none() {
        relation_witness = operation_closure_violation(&t);
    }

    let reflexive = (0..n).find(|&a| !t.contains(a, a)).map(|a| Witness::elements([c.label(a)]));
    let symmetric = t
        .pairs
        .iter()
        .find(|&&(a, b)| !t.contains(b, a))
        .map(|&(a, b)| Witness::elements([c.label(a), c.label(b)]));
    let mut transitive = None;
    'outer: for a in 0..n {
        for b in 0..n {
            if !t.contains(a, b) {
                continue;
            }
            for d in 0..n {
                if t.contains(b, d) && !t.contains(a, d) {
                    transitive = Some(Witness::elements([c.label(a), c.label(b), c.label(d)]));
                    break 'outer;
                }
            }
        }
    }
    let order_reflexive = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| c.le(a, b) && !t.contains(a, b))
        .map(|(a, b)| Witness::elements([c.label(a), c.label(b)]));

    let is_relation = relation_witness.is_none();
    let is_reflexive = reflexive.is_none();
    let is_symmetric = symmetric.is_none();
    let is_transitive = transitive.is_none();
    let is_order_reflexive = order_reflexive.is_none();
    let is_congruence = is_relation && is_reflexive && is_symmetric && is_transitive;
    let is_subcongruence = is_relation && is_order_reflexive && is_transitive;

    for (name, w) in [
        ("is_relation", &relation_witness),
        ("is_reflexive", &reflexive),
        ("is_symmetric", &symmetric),
        ("is_transitive", &transitive),
        ("is_order_reflexive", &order_reflexive),
    ] {
        if let Some(w) = w {
            witnesses.insert(name.to_owned(), w.clone());
        }
    }
    let first = |order: &[(&str, &Option<Witness>)]| order.iter().find_map(|(_, w)| (*w).clone());
    if !is_congruence {
        if let Some(w) = first(&[
            ("r", &relation_witness),
            ("f", &reflexive),
            ("s", &symmetric),
            ("t", &transitive),
        ]) {
            witnesses.insert("is_congruence".to_owned(), w);
        }
    }
    if !is_subcongruence {
        if let Some(w) = first(&[("r", &relation_witness), ("o", &order_reflexive), ("t", &transitive)]) {
            witnesses.insert("is_subcongruence".to_owned(), w);
        }
    }

    RelationClassification {
        is_relation,
        is_reflexive,
        is_symmetric,
        is_transitive,
        is_order_reflexive,
        is_congruence,
        is_subcongruence,
        witnesses,
    }
}

/// Every subcongruence on `a` (operation-closed when `a` has operations),
/// as tabulations, in order of the bitmask over non-forced pairs.
pub fn enumerate_subcongruences(a: &OrderedAlgebra) -> Result<Vec<Tabulation>> {
    let c = a.carrier();
    let n = c.len();
    let forced: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| c.le(x, y))
        .collect();
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| !c.le(x, y))
        .collect();
    if free.len() > 20 {
        return Err(Error::Resource(format!("{} optional pairs", free.len())));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << free.len()) {
        let mut pairs = forced.clone();
        pairs.extend(free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p));
        pairs.sort_unstable();
        let t = Tabulation::from_sorted(a.clone(), pairs);
        let transitive = t
            .pairs
            .iter()
            .all(|&(x, y)| (0..n).all(|z| !t.contains(y, z) || t.contains(x, z)));
        if transitive && operation_closure_violation(&t).is_none() {
            out.push(t);
        }
    }
    Ok(out)
}
