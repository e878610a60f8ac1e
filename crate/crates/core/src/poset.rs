//! Finite posets, preorders and monotone maps.
//!
//! Elements are addressed by index `0..len()`; labels exist for I/O and
//! diagnostics. Order relations are stored as dense boolean matrices that are
//! always reflexively and transitively closed.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result, Witness};

/// Reflexive-transitive closure in place (Warshall).
pub(crate) fn close_relation(n: usize, rel: &mut [bool]) {
    for i in 0..n {
        rel[i * n + i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if !rel[i * n + k] {
                continue;
            }
            for j in 0..n {
                if rel[k * n + j] {
                    rel[i * n + j] = true;
                }
            }
        }
    }
}

fn check_distinct(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::input(format!("duplicate element label {l:?}")));
        }
    }
    Ok(())
}

fn lookup(labels: &[String], label: &str) -> Result<usize> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::input(format!("unknown element label {label:?}")))
}

fn resolve_pairs<P, S>(labels: &[String], pairs: P) -> Result<Vec<(usize, usize)>>
where
    P: IntoIterator<Item = (S, S)>,
    S: AsRef<str>,
{
    pairs
        .into_iter()
        .map(|(a, b)| Ok((lookup(labels, a.as_ref())?, lookup(labels, b.as_ref())?)))
        .collect()
}

pub(crate) fn numeric_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// A finite partially ordered set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    labels: Arc<[String]>,
    le: Arc<[bool]>,
}

impl FinitePoset {
    /// Builds a poset from labels and a generating set of order pairs. The
    /// generating pairs are closed reflexively and transitively; the result
    /// must be antisymmetric.
    pub fn new<L, P, S>(labels: L, pairs: P) -> Result<Self>
    where
        L: IntoIterator,
        L::Item: Into<String>,
        P: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        check_distinct(&labels)?;
        let pairs = resolve_pairs(&labels, pairs)?;
        Self::from_index_pairs(labels, &pairs)
    }

    pub fn from_index_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut rel = vec![false; n * n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::input(format!("order pair ({a},{b}) out of range")));
            }
            rel[a * n + b] = true;
        }
        Self::from_relation(labels, rel)
    }

    /// Closes `rel` (row-major `n x n`) and validates antisymmetry.
    pub fn from_relation(labels: Vec<String>, mut rel: Vec<bool>) -> Result<Self> {
        let n = labels.len();
        if rel.len() != n * n {
            return Err(Error::input("order matrix has wrong size"));
        }
        check_distinct(&labels)?;
        close_relation(n, &mut rel);
        for i in 0..n {
            for j in i + 1..n {
                if rel[i * n + j] && rel[j * n + i] {
                    return Err(Error::precondition(
                        "order is not antisymmetric",
                        Some(Witness::elements([labels[i].clone(), labels[j].clone()])),
                    ));
                }
            }
        }
        Ok(Self::from_closed(labels, rel))
    }

    /// `rel` must already be a closed partial order and labels distinct.
    pub(crate) fn from_closed(labels: Vec<String>, rel: Vec<bool>) -> Self {
        debug_assert_eq!(rel.len(), labels.len() * labels.len());
        FinitePoset {
            labels: labels.into(),
            le: rel.into(),
        }
    }

    /// Poset on `0..n` with numeric labels.
    pub fn on_indices(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::from_index_pairs(numeric_labels(n), pairs)
    }

    pub fn empty() -> Self {
        Self::from_closed(Vec::new(), Vec::new())
    }

    /// Discretely ordered set with the given labels.
    pub fn discrete<L>(labels: L) -> Result<Self>
    where
        L: IntoIterator,
        L::Item: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        check_distinct(&labels)?;
        let n = labels.len();
        let mut rel = vec![false; n * n];
        for i in 0..n {
            rel[i * n + i] = true;
        }
        Ok(Self::from_closed(labels, rel))
    }

    /// `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let mut rel = vec![false; n * n];
        for i in 0..n {
            for j in i..n {
                rel[i * n + j] = true;
            }
        }
        Self::from_closed(numeric_labels(n), rel)
    }

    pub fn antichain(n: usize) -> Self {
        Self::discrete(numeric_labels(n)).expect("numeric labels are distinct")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.labels.len() + b]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Index of a label, or an input error naming it.
    pub fn resolve(&self, label: &str) -> Result<usize> {
        lookup(&self.labels, label)
    }

    /// The closed order as a row-major matrix.
    pub fn matrix(&self) -> &[bool] {
        &self.le
    }

    /// All pairs `a < b` in index-lexicographic order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.le(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_discrete(&self) -> bool {
        self.strict_pairs().is_empty()
    }

    pub fn as_preorder(&self) -> FinitePreorder {
        FinitePreorder {
            labels: self.labels.clone(),
            leq: self.le.clone(),
        }
    }

    /// Same carrier, discrete order.
    pub fn underlying_set(&self) -> FinitePoset {
        Self::discrete(self.labels.iter().cloned()).expect("labels already distinct")
    }

    /// The induced subposet on `subset` (indices, in the given order).
    pub fn induced(&self, subset: &[usize]) -> FinitePoset {
        let k = subset.len();
        let mut rel = vec![false; k * k];
        for (i, &a) in subset.iter().enumerate() {
            for (j, &b) in subset.iter().enumerate() {
                rel[i * k + j] = self.le(a, b);
            }
        }
        let labels = subset.iter().map(|&a| self.labels[a].clone()).collect();
        Self::from_closed(labels, rel)
    }

    /// Same order, new labels.
    pub fn relabel(&self, labels: Vec<String>) -> Result<FinitePoset> {
        if labels.len() != self.len() {
            return Err(Error::input("relabel: wrong number of labels"));
        }
        check_distinct(&labels)?;
        Ok(FinitePoset {
            labels: labels.into(),
            le: self.le.clone(),
        })
    }
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .strict_pairs()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        write!(f, "Poset{{{:?}; {}}}", self.labels, pairs.join(" "))
    }
}

/// A finite preordered set: reflexive and transitive, not necessarily antisymmetric.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinitePreorder {
    labels: Arc<[String]>,
    leq: Arc<[bool]>,
}

impl FinitePreorder {
    pub fn new<L, P, S>(labels: L, pairs: P) -> Result<Self>
    where
        L: IntoIterator,
        L::Item: Into<String>,
        P: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        check_distinct(&labels)?;
        let pairs = resolve_pairs(&labels, pairs)?;
        Self::from_index_pairs(labels, &pairs)
    }

    pub fn from_index_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut rel = vec![false; n * n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::input(format!("order pair ({a},{b}) out of range")));
            }
            rel[a * n + b] = true;
        }
        Self::from_relation(labels, rel)
    }

    /// Closes `rel` reflexively and transitively.
    pub fn from_relation(labels: Vec<String>, mut rel: Vec<bool>) -> Result<Self> {
        let n = labels.len();
        if rel.len() != n * n {
            return Err(Error::input("order matrix has wrong size"));
        }
        check_distinct(&labels)?;
        close_relation(n, &mut rel);
        Ok(FinitePreorder {
            labels: labels.into(),
            leq: rel.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.labels.len() + b]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &[bool] {
        &self.leq
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (i + 1..n).all(|j| !(self.leq(i, j) && self.leq(j, i))))
    }

    /// Pairs `a ⊑ b` with `a != b`, index-lexicographic.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

impl fmt::Debug for FinitePreorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .strict_pairs()
            .into_iter()
            .map(|(a, b)| format!("{}⊑{}", self.labels[a], self.labels[b]))
            .collect();
        write!(f, "Preorder{{{:?}; {}}}", self.labels, pairs.join(" "))
    }
}

/// Least preorder on `elements` containing `base` and `generators`.
pub fn preorder_closure<S: AsRef<str>>(
    elements: &[S],
    base: &[(S, S)],
    generators: &[(S, S)],
) -> Result<FinitePreorder> {
    let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_owned()).collect();
    check_distinct(&labels)?;
    let mut pairs = resolve_pairs(&labels, base.iter().map(|(a, b)| (a.as_ref(), b.as_ref())))?;
    pairs.extend(resolve_pairs(
        &labels,
        generators.iter().map(|(a, b)| (a.as_ref(), b.as_ref())),
    )?);
    FinitePreorder::from_index_pairs(labels, &pairs)
}

/// Quotient of a preorder by `x ~ y iff x ⊑ y ⊑ x`.
#[derive(Clone, Debug)]
pub struct PosetalReflection {
    pub quotient: FinitePoset,
    /// From the preorder's carrier with the discrete order.
    pub proj: MonotoneMap,
    /// Classes in quotient order; each sorted ascending.
    pub classes: Vec<Vec<usize>>,
}

/// Class index per element; classes are numbered by their least element.
pub(crate) fn reflection_classes(n: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let mut class_of = vec![usize::MAX; n];
    let mut next = 0;
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        class_of[i] = next;
        for (j, c) in class_of.iter_mut().enumerate().skip(i + 1) {
            if *c == usize::MAX && leq(i, j) && leq(j, i) {
                *c = next;
            }
        }
        next += 1;
    }
    class_of
}

pub fn posetal_reflection(p: &FinitePreorder) -> PosetalReflection {
    let n = p.len();
    let class_of = reflection_classes(n, |a, b| p.leq(a, b));
    let k = class_of.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut classes = vec![Vec::new(); k];
    for (x, &c) in class_of.iter().enumerate() {
        classes[c].push(x);
    }
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let mut rel = vec![false; k * k];
    for c in 0..k {
        for d in 0..k {
            rel[c * k + d] = p.leq(reps[c], reps[d]);
        }
    }
    let labels = reps.iter().map(|&r| format!("[{}]", p.labels()[r])).collect();
    let quotient = FinitePoset::from_closed(labels, rel);
    let carrier = FinitePoset::discrete(p.labels().iter().cloned()).expect("distinct labels");
    let proj = MonotoneMap::new_unchecked(carrier, quotient.clone(), class_of);
    PosetalReflection {
        quotient,
        proj,
        classes,
    }
}

/// A monotone map between finite posets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    dom: FinitePoset,
    cod: FinitePoset,
    table: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(dom: FinitePoset, cod: FinitePoset, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.len() {
            return Err(Error::input(format!(
                "map table has {} entries for a domain of {} elements",
                table.len(),
                dom.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= cod.len()) {
            return Err(Error::input(format!("map value {bad} out of codomain range")));
        }
        if let Some((x, y)) = monotonicity_violation(&dom, &cod, &table) {
            return Err(Error::precondition(
                "map is not monotone",
                Some(Witness::elements([dom.label(x), dom.label(y)])),
            ));
        }
        Ok(MonotoneMap { dom, cod, table })
    }

    pub(crate) fn new_unchecked(dom: FinitePoset, cod: FinitePoset, table: Vec<usize>) -> Self {
        debug_assert!(table.len() == dom.len());
        debug_assert!(monotonicity_violation(&dom, &cod, &table).is_none());
        MonotoneMap { dom, cod, table }
    }

    /// Build from `(dom label, cod label)` pairs covering the whole domain.
    pub fn from_labels<P, S>(dom: FinitePoset, cod: FinitePoset, assignment: P) -> Result<Self>
    where
        P: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut table = vec![usize::MAX; dom.len()];
        for (a, b) in assignment {
            let i = dom.resolve(a.as_ref())?;
            if table[i] != usize::MAX {
                return Err(Error::input(format!("element {:?} assigned twice", a.as_ref())));
            }
            table[i] = cod.resolve(b.as_ref())?;
        }
        if let Some(i) = table.iter().position(|&v| v == usize::MAX) {
            return Err(Error::input(format!("no image given for {:?}", dom.label(i))));
        }
        Self::new(dom, cod, table)
    }

    pub fn identity(p: &FinitePoset) -> Self {
        MonotoneMap {
            dom: p.clone(),
            cod: p.clone(),
            table: (0..p.len()).collect(),
        }
    }

    pub fn constant(dom: &FinitePoset, cod: &FinitePoset, value: usize) -> Result<Self> {
        Self::new(dom.clone(), cod.clone(), vec![value; dom.len()])
    }

    pub fn dom(&self) -> &FinitePoset {
        &self.dom
    }

    pub fn cod(&self) -> &FinitePoset {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &MonotoneMap) -> Result<MonotoneMap> {
        if inner.cod != self.dom {
            return Err(Error::input("compose: codomain/domain mismatch"));
        }
        let table = inner.table.iter().map(|&x| self.table[x]).collect();
        Ok(MonotoneMap::new_unchecked(inner.dom.clone(), self.cod.clone(), table))
    }

    /// `f(x) <= f(y)` implies `x <= y`.
    pub fn is_embedding(&self) -> bool {
        embedding_violation(&self.dom, &self.cod, &self.table).is_none()
    }

    pub fn is_surjective(&self) -> bool {
        is_surjective_table(&self.table, self.cod.len())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        self.table.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    /// Bijective and order-reflecting, hence an order isomorphism.
    pub fn is_isomorphism(&self) -> bool {
        self.dom.len() == self.cod.len() && self.is_surjective() && self.is_embedding()
    }

    /// Pointwise order of parallel maps.
    pub fn le_pointwise(&self, other: &MonotoneMap) -> bool {
        self.table
            .iter()
            .zip(&other.table)
            .all(|(&a, &b)| self.cod.le(a, b))
    }

    /// Sorted, deduplicated image.
    pub fn image(&self) -> Vec<usize> {
        let mut im = self.table.clone();
        im.sort_unstable();
        im.dedup();
        im
    }
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .table
            .iter()
            .enumerate()
            .map(|(x, &y)| format!("{}↦{}", self.dom.label(x), self.cod.label(y)))
            .collect();
        write!(f, "Map{{{}}}", entries.join(", "))
    }
}

pub(crate) fn monotonicity_violation(
    dom: &FinitePoset,
    cod: &FinitePoset,
    table: &[usize],
) -> Option<(usize, usize)> {
    let n = dom.len();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| dom.le(x, y) && !cod.le(table[x], table[y]))
}

pub(crate) fn embedding_violation(
    dom: &FinitePoset,
    cod: &FinitePoset,
    table: &[usize],
) -> Option<(usize, usize)> {
    let n = dom.len();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| cod.le(table[x], table[y]) && !dom.le(x, y))
}

pub(crate) fn is_surjective_table(table: &[usize], cod_len: usize) -> bool {
    let mut hit = vec![false; cod_len];
    for &v in table {
        hit[v] = true;
    }
    hit.into_iter().all(|h| h)
}

/// Binary product with its projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub object: FinitePoset,
    pub proj0: MonotoneMap,
    pub proj1: MonotoneMap,
}

impl Product {
    /// `⟨f, g⟩: X → P × Q`.
    pub fn pair(&self, f: &MonotoneMap, g: &MonotoneMap) -> Result<MonotoneMap> {
        if f.dom != g.dom || f.cod != *self.proj0.cod() || g.cod != *self.proj1.cod() {
            return Err(Error::input("pair: maps do not form a cone over the product"));
        }
        let q = g.cod.len();
        let table = (0..f.dom.len()).map(|x| f.apply(x) * q + g.apply(x)).collect();
        Ok(MonotoneMap::new_unchecked(f.dom.clone(), self.object.clone(), table))
    }
}

/// `P × Q` with componentwise order; element `(p, q)` has index `p * |Q| + q`.
pub fn product(p: &FinitePoset, q: &FinitePoset) -> Product {
    let (m, n) = (p.len(), q.len());
    let size = m * n;
    let mut rel = vec![false; size * size];
    let mut labels = Vec::with_capacity(size);
    for a in 0..m {
        for b in 0..n {
            labels.push(format!("({},{})", p.label(a), q.label(b)));
            for c in 0..m {
                for d in 0..n {
                    rel[(a * n + b) * size + c * n + d] = p.le(a, c) && q.le(b, d);
                }
            }
        }
    }
    let object = FinitePoset::from_closed(labels, rel);
    let proj0 = MonotoneMap::new_unchecked(object.clone(), p.clone(), (0..size).map(|i| i / n).collect());
    let proj1 = MonotoneMap::new_unchecked(object.clone(), q.clone(), (0..size).map(|i| i % n).collect());
    Product {
        object,
        proj0,
        proj1,
    }
}

/// Disjoint union with its injections; summand `i` occupies indices
/// `offsets[i]..offsets[i] + len_i`.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub object: FinitePoset,
    pub injections: Vec<MonotoneMap>,
    pub offsets: Vec<usize>,
}

impl Coproduct {
    /// Summand index and local index of an element of the coproduct.
    pub fn locate(&self, x: usize) -> (usize, usize) {
        let i = self.offsets.partition_point(|&o| o <= x) - 1;
        // Empty summands share an offset with their successor; skip to the last.
        (i, x - self.offsets[i])
    }

    pub fn summand_count(&self) -> usize {
        self.injections.len()
    }

    pub fn summand(&self, i: usize) -> &FinitePoset {
        self.injections[i].dom()
    }

    /// `[f_0, ..., f_{n-1}]: ⊔ P_i → X`.
    pub fn cotuple(&self, maps: &[MonotoneMap]) -> Result<MonotoneMap> {
        if maps.len() != self.injections.len() {
            return Err(Error::input("cotuple: wrong number of components"));
        }
        let cod = match maps.first() {
            Some(f) => f.cod.clone(),
            None => return Err(Error::input("cotuple of an empty family needs a codomain")),
        };
        self.cotuple_into(&cod, maps)
    }

    pub fn cotuple_into(&self, cod: &FinitePoset, maps: &[MonotoneMap]) -> Result<MonotoneMap> {
        if maps.len() != self.injections.len() {
            return Err(Error::input("cotuple: wrong number of components"));
        }
        let mut table = Vec::with_capacity(self.object.len());
        for (f, inj) in maps.iter().zip(&self.injections) {
            if f.dom != *inj.dom() || f.cod != *cod {
                return Err(Error::input("cotuple: component does not match its summand"));
            }
            table.extend_from_slice(&f.table);
        }
        Ok(MonotoneMap::new_unchecked(self.object.clone(), cod.clone(), table))
    }
}

/// Disjoint union; element `x` of summand `i` is labelled `"i:x"`.
pub fn coproduct(parts: &[FinitePoset]) -> Coproduct {
    let size: usize = parts.iter().map(FinitePoset::len).sum();
    let mut rel = vec![false; size * size];
    let mut labels = Vec::with_capacity(size);
    let mut offsets = Vec::with_capacity(parts.len());
    let mut off = 0;
    for (i, p) in parts.iter().enumerate() {
        offsets.push(off);
        for a in 0..p.len() {
            labels.push(format!("{i}:{}", p.label(a)));
            for b in 0..p.len() {
                rel[(off + a) * size + off + b] = p.le(a, b);
            }
        }
        off += p.len();
    }
    let object = FinitePoset::from_closed(labels, rel);
    let injections = parts
        .iter()
        .zip(&offsets)
        .map(|(p, &o)| MonotoneMap::new_unchecked(p.clone(), object.clone(), (o..o + p.len()).collect()))
        .collect();
    Coproduct {
        object,
        injections,
        offsets,
    }
}

/// Connected components of the comparability graph, each sorted, ordered by
/// least element.
pub fn connected_components(p: &FinitePoset) -> Vec<Vec<usize>> {
    let n = p.len();
    let mut uf = UnionFind::<usize>::new(n);
    for (a, b) in p.strict_pairs() {
        uf.union(a, b);
    }
    let mut root_slot: Vec<Option<usize>> = vec![None; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        let r = uf.find(x);
        match root_slot[r] {
            Some(c) => comps[c].push(x),
            None => {
                root_slot[r] = Some(comps.len());
                comps.push(vec![x]);
            }
        }
    }
    comps
}

/// Depth-first search over tables `0..n → 0..m` in lexicographic order.
/// `accept(i, prefix)` is called after `prefix[i]` is placed and decides
/// whether to descend; `visit` returns `false` to stop the search.
pub(crate) fn backtrack(
    n: usize,
    m: usize,
    mut accept: impl FnMut(usize, &[usize]) -> bool,
    mut visit: impl FnMut(&[usize]) -> bool,
) {
    if n == 0 {
        visit(&[]);
        return;
    }
    if m == 0 {
        return;
    }
    let mut table = vec![0usize; n];
    let mut next = vec![0usize; n];
    let mut i = 0usize;
    loop {
        let mut placed = false;
        while next[i] < m {
            table[i] = next[i];
            next[i] += 1;
            if accept(i, &table[..=i]) {
                placed = true;
                break;
            }
        }
        if placed {
            if i + 1 == n {
                if !visit(&table) {
                    return;
                }
            } else {
                i += 1;
                next[i] = 0;
            }
        } else if i == 0 {
            return;
        } else {
            i -= 1;
        }
    }
}

/// Order constraints on element `i` from earlier elements: `(below, above)`.
pub(crate) fn earlier_neighbours(p: &FinitePoset) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let n = p.len();
    let below = (0..n).map(|i| (0..i).filter(|&j| p.le(j, i)).collect()).collect();
    let above = (0..n).map(|i| (0..i).filter(|&j| p.le(i, j)).collect()).collect();
    (below, above)
}

/// Calls `visit` on every monotone table `P → Q`, in lexicographic order
/// (element-by-element in carrier order, images in codomain order).
pub fn for_each_monotone_table(p: &FinitePoset, q: &FinitePoset, mut visit: impl FnMut(&[usize])) {
    let (below, above) = earlier_neighbours(p);
    backtrack(
        p.len(),
        q.len(),
        |i, t| {
            let v = t[i];
            below[i].iter().all(|&j| q.le(t[j], v)) && above[i].iter().all(|&j| q.le(v, t[j]))
        },
        |t| {
            visit(t);
            true
        },
    );
}

pub fn monotone_tables(p: &FinitePoset, q: &FinitePoset) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_monotone_table(p, q, |t| out.push(t.to_vec()));
    out
}

/// All monotone maps `P → Q` in lexicographic table order.
pub fn enumerate_monotone_maps(p: &FinitePoset, q: &FinitePoset) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    for_each_monotone_table(p, q, |t| {
        out.push(MonotoneMap::new_unchecked(p.clone(), q.clone(), t.to_vec()))
    });
    out
}

pub fn is_embedding(f: &MonotoneMap) -> bool {
    f.is_embedding()
}

pub fn is_surjective(f: &MonotoneMap) -> bool {
    f.is_surjective()
}

/// An order isomorphism `P → Q` as a table, if one exists.
pub fn find_isomorphism(p: &FinitePoset, q: &FinitePoset) -> Option<Vec<usize>> {
    let n = p.len();
    if n != q.len() {
        return None;
    }
    let mut table = vec![0usize; n];
    let mut used = vec![false; n];
    fn go(
        i: usize,
        p: &FinitePoset,
        q: &FinitePoset,
        table: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = p.len();
        if i == n {
            return true;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            let ok = (0..i).all(|j| p.le(j, i) == q.le(table[j], v) && p.le(i, j) == q.le(v, table[j]));
            if ok {
                table[i] = v;
                used[v] = true;
                if go(i + 1, p, q, table, used) {
                    return true;
                }
                used[v] = false;
            }
        }
        false
    }
    go(0, p, q, &mut table, &mut used).then_some(table)
}

pub fn is_isomorphic(p: &FinitePoset, q: &FinitePoset) -> bool {
    find_isomorphism(p, q).is_some()
}
