//! Signatures, finite ordered algebras with monotone operations, and their
//! homomorphisms.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Witness};
use crate::poset::{self, FinitePoset, MonotoneMap};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OperationSymbol {
    pub name: String,
    pub arity: usize,
}

/// A finite list of named operation symbols with arities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Signature {
    ops: Vec<OperationSymbol>,
}

impl Signature {
    pub fn new(ops: Vec<OperationSymbol>) -> Result<Self> {
        let mut seen = HashSet::new();
        for op in &ops {
            if op.name.is_empty() {
                return Err(Error::input("operation names must be nonempty"));
            }
            if !seen.insert(op.name.as_str()) {
                return Err(Error::input(format!("duplicate operation name {:?}", op.name)));
            }
        }
        Ok(Signature { ops })
    }

    /// Shorthand: `Signature::from_pairs(&[("m", 2), ("u", 1)])`.
    pub fn from_pairs(ops: &[(&str, usize)]) -> Result<Self> {
        Self::new(
            ops.iter()
                .map(|&(name, arity)| OperationSymbol {
                    name: name.to_owned(),
                    arity,
                })
                .collect(),
        )
    }

    pub fn empty() -> Self {
        Signature::default()
    }

    pub fn ops(&self) -> &[OperationSymbol] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }

    pub fn has_constants(&self) -> bool {
        self.ops.iter().any(|o| o.arity == 0)
    }
}

/// Row-major index of an argument tuple over a carrier of size `n`.
#[inline]
pub(crate) fn tuple_index(args: &[usize], n: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

/// Visits every tuple in `0..n` of the given arity in lexicographic order.
pub(crate) fn for_each_tuple(n: usize, arity: usize, mut visit: impl FnMut(&[usize])) {
    if arity == 0 {
        visit(&[]);
        return;
    }
    if n == 0 {
        return;
    }
    let mut t = vec![0usize; arity];
    loop {
        visit(&t);
        let mut k = arity;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            t[k] += 1;
            if t[k] < n {
                break;
            }
            t[k] = 0;
        }
    }
}

pub(crate) fn table_len(n: usize, arity: usize) -> Option<usize> {
    n.checked_pow(arity as u32)
}

pub(crate) fn tuple_label(carrier: &FinitePoset, args: &[usize]) -> String {
    if args.len() == 1 {
        carrier.label(args[0]).to_owned()
    } else {
        let parts: Vec<&str> = args.iter().map(|&a| carrier.label(a)).collect();
        format!("({})", parts.join(","))
    }
}

/// Outcome of [`validate_algebra`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub valid: bool,
    pub witness: Option<Witness>,
}

/// Checks that every table is total and monotone. The witness for a
/// monotonicity failure is the least pair of argument tuples `a <= b` with
/// `σ(a) ≰ σ(b)`.
pub fn validate_algebra(carrier: &FinitePoset, signature: &Signature, tables: &[Vec<usize>]) -> Validation {
    let fail = |w: Witness| Validation {
        valid: false,
        witness: Some(w),
    };
    if tables.len() != signature.len() {
        return fail(Witness::elements([format!(
            "{} tables for {} operations",
            tables.len(),
            signature.len()
        )]));
    }
    let n = carrier.len();
    for (op, table) in signature.ops().iter().zip(tables) {
        let expected = match table_len(n, op.arity) {
            Some(len) => len,
            None => return fail(Witness::operation(&op.name, ["table too large"])),
        };
        if table.len() != expected {
            return fail(Witness::operation(
                &op.name,
                [format!("{} entries, expected {expected}", table.len())],
            ));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= n) {
            return fail(Witness::operation(&op.name, [format!("value {bad} out of range")]));
        }
        if let Some((a, b)) = operation_monotonicity_violation(carrier, op.arity, table) {
            return fail(Witness::operation(
                &op.name,
                [tuple_label(carrier, &a), tuple_label(carrier, &b)],
            ));
        }
    }
    Validation {
        valid: true,
        witness: None,
    }
}

fn operation_monotonicity_violation(
    carrier: &FinitePoset,
    arity: usize,
    table: &[usize],
) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = carrier.len();
    let mut found = None;
    for_each_tuple(n, arity, |a| {
        if found.is_some() {
            return;
        }
        let va = table[tuple_index(a, n)];
        for_each_tuple(n, arity, |b| {
            if found.is_some() {
                return;
            }
            if a.iter().zip(b).all(|(&x, &y)| carrier.le(x, y)) && !carrier.le(va, table[tuple_index(b, n)]) {
                found = Some((a.to_vec(), b.to_vec()));
            }
        });
    });
    found
}

/// A finite poset with monotone operations over a signature. Operation
/// tables are row-major over argument tuples.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrderedAlgebra {
    carrier: FinitePoset,
    signature: Arc<Signature>,
    tables: Arc<[Vec<usize>]>,
}

impl OrderedAlgebra {
    pub fn new(carrier: FinitePoset, signature: Arc<Signature>, tables: Vec<Vec<usize>>) -> Result<Self> {
        let v = validate_algebra(&carrier, &signature, &tables);
        if !v.valid {
            return Err(Error::precondition("operation tables are not total and monotone", v.witness));
        }
        Ok(OrderedAlgebra {
            carrier,
            signature,
            tables: tables.into(),
        })
    }

    pub(crate) fn new_unchecked(carrier: FinitePoset, signature: Arc<Signature>, tables: Vec<Vec<usize>>) -> Self {
        debug_assert!(validate_algebra(&carrier, &signature, &tables).valid);
        OrderedAlgebra {
            carrier,
            signature,
            tables: tables.into(),
        }
    }

    /// A poset viewed as an algebra over the empty signature.
    pub fn from_poset(carrier: FinitePoset) -> Self {
        OrderedAlgebra {
            carrier,
            signature: Arc::new(Signature::empty()),
            tables: Vec::new().into(),
        }
    }

    pub fn carrier(&self) -> &FinitePoset {
        &self.carrier
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    #[inline]
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        self.tables[op][tuple_index(args, self.carrier.len())]
    }

    /// The same carrier with the operations forgotten.
    pub fn underlying(&self) -> OrderedAlgebra {
        OrderedAlgebra::from_poset(self.carrier.clone())
    }

    pub fn same_signature(&self, other: &OrderedAlgebra) -> bool {
        Arc::ptr_eq(&self.signature, &other.signature) || self.signature == other.signature
    }

    /// Same algebra on a relabelled carrier.
    pub fn relabel(&self, labels: Vec<String>) -> Result<OrderedAlgebra> {
        Ok(OrderedAlgebra {
            carrier: self.carrier.relabel(labels)?,
            signature: self.signature.clone(),
            tables: self.tables.clone(),
        })
    }
}

impl fmt::Debug for OrderedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra{{{:?}", self.carrier)?;
        for (op, t) in self.signature.ops().iter().zip(self.tables.iter()) {
            write!(f, "; {}={:?}", op.name, t)?;
        }
        write!(f, "}}")
    }
}

fn homomorphism_violation(dom: &OrderedAlgebra, cod: &OrderedAlgebra, table: &[usize]) -> Option<Witness> {
    let n = dom.len();
    for (k, op) in dom.signature.ops().iter().enumerate() {
        let mut bad: Option<Vec<usize>> = None;
        let mut image = vec![0usize; op.arity];
        for_each_tuple(n, op.arity, |args| {
            if bad.is_some() {
                return;
            }
            for (slot, &a) in image.iter_mut().zip(args) {
                *slot = table[a];
            }
            if table[dom.apply(k, args)] != cod.apply(k, &image) {
                bad = Some(args.to_vec());
            }
        });
        if let Some(args) = bad {
            return Some(Witness::operation(&op.name, [tuple_label(dom.carrier(), &args)]));
        }
    }
    None
}

/// A monotone map commuting with every operation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    dom: OrderedAlgebra,
    cod: OrderedAlgebra,
    table: Vec<usize>,
}

impl Homomorphism {
    pub fn new(dom: OrderedAlgebra, cod: OrderedAlgebra, table: Vec<usize>) -> Result<Self> {
        if !dom.same_signature(&cod) {
            return Err(Error::input("homomorphism between algebras of different signatures"));
        }
        let map = MonotoneMap::new(dom.carrier.clone(), cod.carrier.clone(), table)?;
        let table = map.table().to_vec();
        if let Some(w) = homomorphism_violation(&dom, &cod, &table) {
            return Err(Error::precondition("map does not preserve the operations", Some(w)));
        }
        Ok(Homomorphism { dom, cod, table })
    }

    pub(crate) fn new_unchecked(dom: OrderedAlgebra, cod: OrderedAlgebra, table: Vec<usize>) -> Self {
        debug_assert!(poset::monotonicity_violation(dom.carrier(), cod.carrier(), &table).is_none());
        debug_assert!(homomorphism_violation(&dom, &cod, &table).is_none());
        Homomorphism { dom, cod, table }
    }

    pub fn identity(a: &OrderedAlgebra) -> Self {
        Homomorphism {
            dom: a.clone(),
            cod: a.clone(),
            table: (0..a.len()).collect(),
        }
    }

    pub fn dom(&self) -> &OrderedAlgebra {
        &self.dom
    }

    pub fn cod(&self) -> &OrderedAlgebra {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// The underlying monotone map.
    pub fn map(&self) -> MonotoneMap {
        MonotoneMap::new_unchecked(self.dom.carrier.clone(), self.cod.carrier.clone(), self.table.clone())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Homomorphism) -> Result<Homomorphism> {
        if inner.cod != self.dom {
            return Err(Error::input("compose: codomain/domain mismatch"));
        }
        let table = inner.table.iter().map(|&x| self.table[x]).collect();
        Ok(Homomorphism::new_unchecked(inner.dom.clone(), self.cod.clone(), table))
    }

    pub fn is_surjective(&self) -> bool {
        poset::is_surjective_table(&self.table, self.cod.len())
    }

    pub fn is_embedding(&self) -> bool {
        poset::embedding_violation(self.dom.carrier(), self.cod.carrier(), &self.table).is_none()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.dom.len() == self.cod.len() && self.is_surjective() && self.is_embedding()
    }

    pub fn le_pointwise(&self, other: &Homomorphism) -> bool {
        self.table
            .iter()
            .zip(&other.table)
            .all(|(&a, &b)| self.cod.carrier.le(a, b))
    }
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hom{:?}", self.map())
    }
}

impl From<MonotoneMap> for Homomorphism {
    fn from(m: MonotoneMap) -> Self {
        Homomorphism {
            dom: OrderedAlgebra::from_poset(m.dom().clone()),
            cod: OrderedAlgebra::from_poset(m.cod().clone()),
            table: m.table().to_vec(),
        }
    }
}

impl From<&MonotoneMap> for Homomorphism {
    fn from(m: &MonotoneMap) -> Self {
        m.clone().into()
    }
}

impl From<&Homomorphism> for Homomorphism {
    fn from(h: &Homomorphism) -> Self {
        h.clone()
    }
}

/// Product algebra with projections; `(a, b)` has index `a * |B| + b`.
#[derive(Clone, Debug)]
pub struct AlgebraProduct {
    pub object: OrderedAlgebra,
    pub proj0: Homomorphism,
    pub proj1: Homomorphism,
}

pub fn product_algebra(a: &OrderedAlgebra, b: &OrderedAlgebra) -> Result<AlgebraProduct> {
    if !a.same_signature(b) {
        return Err(Error::input("product of algebras with different signatures"));
    }
    let prod = poset::product(a.carrier(), b.carrier());
    let (m, n) = (a.len(), b.len());
    let size = m * n;
    let mut tables = Vec::with_capacity(a.signature.len());
    for (k, op) in a.signature.ops().iter().enumerate() {
        let len = table_len(size, op.arity).ok_or_else(|| Error::Resource("product table too large".into()))?;
        let mut table = Vec::with_capacity(len);
        let mut left = vec![0usize; op.arity];
        let mut right = vec![0usize; op.arity];
        for_each_tuple(size, op.arity, |args| {
            for (i, &x) in args.iter().enumerate() {
                left[i] = x / n;
                right[i] = x % n;
            }
            table.push(a.apply(k, &left) * n + b.apply(k, &right));
        });
        tables.push(table);
    }
    let object = OrderedAlgebra::new_unchecked(prod.object, a.signature.clone(), tables);
    let proj0 = Homomorphism::new_unchecked(object.clone(), a.clone(), prod.proj0.table().to_vec());
    let proj1 = Homomorphism::new_unchecked(object.clone(), b.clone(), prod.proj1.table().to_vec());
    Ok(AlgebraProduct { object, proj0, proj1 })
}

/// A subalgebra together with its inclusion.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    pub algebra: OrderedAlgebra,
    pub inclusion: Homomorphism,
}

/// First operation application leaving `subset` (membership mask), if any.
pub(crate) fn closure_violation(a: &OrderedAlgebra, subset: &[usize], member: &[bool]) -> Option<Witness> {
    let k = subset.len();
    for (o, op) in a.signature.ops().iter().enumerate() {
        let mut bad = None;
        let mut args = vec![0usize; op.arity];
        for_each_tuple(k, op.arity, |local| {
            if bad.is_some() {
                return;
            }
            for (slot, &i) in args.iter_mut().zip(local) {
                *slot = subset[i];
            }
            if !member[a.apply(o, &args)] {
                bad = Some(args.clone());
            }
        });
        if let Some(args) = bad {
            return Some(Witness::operation(&op.name, [tuple_label(a.carrier(), &args)]));
        }
    }
    None
}

/// The induced-order subalgebra on `subset`, which must be closed under all
/// operations. Elements keep their labels and ascending index order.
pub fn subalgebra(a: &OrderedAlgebra, subset: &[usize]) -> Result<Subalgebra> {
    let n = a.len();
    let mut member = vec![false; n];
    for &x in subset {
        if x >= n {
            return Err(Error::input(format!("subset element {x} out of range")));
        }
        member[x] = true;
    }
    let elems: Vec<usize> = (0..n).filter(|&x| member[x]).collect();
    if let Some(w) = closure_violation(a, &elems, &member) {
        return Err(Error::precondition("subset is not closed under the operations", Some(w)));
    }
    let mut local = vec![usize::MAX; n];
    for (i, &x) in elems.iter().enumerate() {
        local[x] = i;
    }
    let k = elems.len();
    let carrier = a.carrier().induced(&elems);
    let mut tables = Vec::with_capacity(a.signature.len());
    let mut args = Vec::new();
    for (o, op) in a.signature.ops().iter().enumerate() {
        let mut table = Vec::with_capacity(table_len(k, op.arity).unwrap_or(0));
        for_each_tuple(k, op.arity, |l| {
            args.clear();
            args.extend(l.iter().map(|&i| elems[i]));
            table.push(local[a.apply(o, &args)]);
        });
        tables.push(table);
    }
    let algebra = OrderedAlgebra::new_unchecked(carrier, a.signature.clone(), tables);
    let inclusion = Homomorphism::new_unchecked(algebra.clone(), a.clone(), elems);
    Ok(Subalgebra { algebra, inclusion })
}

/// Every operation-closed subset, as ascending index lists, in bitmask order.
pub fn closed_subsets(a: &OrderedAlgebra) -> Result<Vec<Vec<usize>>> {
    let n = a.len();
    if n > 20 {
        return Err(Error::Resource(format!("subset enumeration over {n} elements")));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let member: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        let elems: Vec<usize> = (0..n).filter(|&i| member[i]).collect();
        if closure_violation(a, &elems, &member).is_none() {
            out.push(elems);
        }
    }
    Ok(out)
}

/// `h = mono ∘ epi` with `epi` onto the image subalgebra and `mono` its inclusion.
#[derive(Clone, Debug)]
pub struct ImageFactorization {
    pub image: OrderedAlgebra,
    pub epi: Homomorphism,
    pub mono: Homomorphism,
}

pub fn image_factorization(h: &Homomorphism) -> ImageFactorization {
    let im = h.map().image();
    let sub = subalgebra(h.cod(), &im).expect("image of a homomorphism is a subalgebra");
    let mut local = vec![usize::MAX; h.cod().len()];
    for (i, &x) in im.iter().enumerate() {
        local[x] = i;
    }
    let epi_table = h.table().iter().map(|&y| local[y]).collect();
    let epi = Homomorphism::new_unchecked(h.dom().clone(), sub.algebra.clone(), epi_table);
    ImageFactorization {
        image: sub.algebra,
        epi,
        mono: sub.inclusion,
    }
}

/// Visits every homomorphism table `A → B` in lexicographic order.
pub fn for_each_hom_table(a: &OrderedAlgebra, b: &OrderedAlgebra, mut visit: impl FnMut(&[usize]) -> bool) {
    let n = a.len();
    let (below, above) = poset::earlier_neighbours(a.carrier());
    // Equations bucketed by the largest element they mention, so each is
    // checked as soon as all of its elements are assigned.
    let mut buckets: Vec<Vec<(usize, Vec<usize>, usize)>> = vec![Vec::new(); n];
    for (o, op) in a.signature.ops().iter().enumerate() {
        for_each_tuple(n, op.arity, |args| {
            let r = a.apply(o, args);
            let top = args.iter().copied().fold(r, usize::max);
            buckets[top].push((o, args.to_vec(), r));
        });
    }
    let bcar = b.carrier();
    let mut image = Vec::new();
    poset::backtrack(
        n,
        b.len(),
        |i, t| {
            let v = t[i];
            if !(below[i].iter().all(|&j| bcar.le(t[j], v)) && above[i].iter().all(|&j| bcar.le(v, t[j]))) {
                return false;
            }
            buckets[i].iter().all(|(o, args, r)| {
                image.clear();
                image.extend(args.iter().map(|&x| t[x]));
                t[*r] == b.apply(*o, &image)
            })
        },
        &mut visit,
    );
}

pub fn hom_tables(a: &OrderedAlgebra, b: &OrderedAlgebra) -> Result<Vec<Vec<usize>>> {
    if !a.same_signature(b) {
        return Err(Error::input("homomorphisms between algebras of different signatures"));
    }
    let mut out = Vec::new();
    for_each_hom_table(a, b, |t| {
        out.push(t.to_vec());
        true
    });
    Ok(out)
}

/// All homomorphisms `A → B` in lexicographic table order.
pub fn enumerate_homomorphisms(a: &OrderedAlgebra, b: &OrderedAlgebra) -> Result<Vec<Homomorphism>> {
    Ok(hom_tables(a, b)?
        .into_iter()
        .map(|t| Homomorphism::new_unchecked(a.clone(), b.clone(), t))
        .collect())
}

/// An algebra isomorphism `A → B` as a table, if one exists.
pub fn find_algebra_isomorphism(a: &OrderedAlgebra, b: &OrderedAlgebra) -> Option<Vec<usize>> {
    if a.len() != b.len() || !a.same_signature(b) {
        return None;
    }
    let mut found = None;
    for_each_hom_table(a, b, |t| {
        let h = Homomorphism::new_unchecked(a.clone(), b.clone(), t.to_vec());
        if h.is_isomorphism() {
            found = Some(t.to_vec());
            false
        } else {
            true
        }
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn chain_with_min() -> OrderedAlgebra {
        let sig = Arc::new(Signature::from_pairs(&[("m", 2)]).unwrap());
        OrderedAlgebra::new(FinitePoset::chain(2), sig, vec![vec![0, 0, 0, 1]]).unwrap()
    }

    #[test]
    fn tuple_order_is_lexicographic() {
        let mut seen = Vec::new();
        for_each_tuple(2, 2, |t| seen.push(t.to_vec()));
        assert_eq!(seen, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let mut count = 0;
        for_each_tuple(0, 0, |_| count += 1);
        assert_eq!(count, 1);
        for_each_tuple(0, 2, |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn validate_examples() {
        let sig = Arc::new(Signature::from_pairs(&[("u", 1), ("m", 2)]).unwrap());
        let disc = FinitePoset::antichain(2);
        assert!(validate_algebra(&disc, &sig, &[vec![1, 0], vec![1, 0, 0, 1]]).valid);

        let min = chain_with_min();
        assert!(validate_algebra(min.carrier(), min.signature(), min.tables()).valid);

        let neg_sig = Signature::from_pairs(&[("u", 1)]).unwrap();
        let v = validate_algebra(&FinitePoset::chain(2), &neg_sig, &[vec![1, 0]]);
        assert!(!v.valid);
        assert_eq!(v.witness.unwrap(), Witness::operation("u", ["0", "1"]));

        let short = validate_algebra(&disc, &neg_sig, &[vec![0]]);
        assert!(!short.valid);
    }

    #[test]
    fn homomorphisms_of_chain_with_min() {
        let a = chain_with_min();
        let homs = hom_tables(&a, &a).unwrap();
        // Monotone maps are 00, 01, 11; all preserve min.
        assert_eq!(homs, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn hom_enumeration_matches_filter() {
        let sig = Arc::new(Signature::from_pairs(&[("u", 1), ("m", 2)]).unwrap());
        let carriers = [FinitePoset::chain(3), FinitePoset::antichain(2), FinitePoset::on_indices(3, &[(0, 1), (0, 2)]).unwrap()];
        let mut algebras = Vec::new();
        for c in &carriers {
            let n = c.len();
            // u = constant top-ish, m = first projection; both monotone.
            let u = vec![n - 1; n];
            let mut m = Vec::new();
            for_each_tuple(n, 2, |t| m.push(t[0]));
            algebras.push(OrderedAlgebra::new(c.clone(), sig.clone(), vec![u, m]).unwrap());
            let id: Vec<usize> = (0..n).collect();
            let mut m2 = Vec::new();
            for_each_tuple(n, 2, |t| m2.push(t[1]));
            algebras.push(OrderedAlgebra::new(c.clone(), sig.clone(), vec![id, m2]).unwrap());
        }
        for a in &algebras {
            for b in &algebras {
                let expected: Vec<Vec<usize>> = poset::monotone_tables(a.carrier(), b.carrier())
                    .into_iter()
                    .filter(|t| homomorphism_violation(a, b, t).is_none())
                    .collect();
                assert_eq!(hom_tables(a, b).unwrap(), expected);
            }
        }
    }

    #[test]
    fn constants_are_preserved() {
        let sig = Arc::new(Signature::from_pairs(&[("c", 0)]).unwrap());
        let a = OrderedAlgebra::new(FinitePoset::chain(2), sig.clone(), vec![vec![1]]).unwrap();
        let b = OrderedAlgebra::new(FinitePoset::antichain(3), sig, vec![vec![2]]).unwrap();
        for h in enumerate_homomorphisms(&a, &b).unwrap() {
            assert_eq!(h.apply(1), 2);
        }
    }

    #[test]
    fn product_subalgebra_image() {
        let a = chain_with_min();
        let one = OrderedAlgebra::new(FinitePoset::chain(1), a.signature().clone(), vec![vec![0]]).unwrap();
        let p = product_algebra(&a, &one).unwrap();
        assert!(find_algebra_isomorphism(&p.object, &a).is_some());
        assert!(validate_algebra(p.object.carrier(), p.object.signature(), p.object.tables()).valid);

        let sub = subalgebra(&a, &[1]).unwrap();
        assert_eq!(sub.algebra.len(), 1);

        let sig = Arc::new(Signature::from_pairs(&[("u", 1)]).unwrap());
        let swap = OrderedAlgebra::new(FinitePoset::antichain(2), sig, vec![vec![1, 0]]).unwrap();
        let err = subalgebra(&swap, &[0]).unwrap_err();
        assert_eq!(err.witness().unwrap(), &Witness::operation("u", ["0"]));
    }

    #[test]
    fn image_of_bijection_onto_chain() {
        let sig = Arc::new(Signature::from_pairs(&[("u", 1)]).unwrap());
        let a = OrderedAlgebra::new(FinitePoset::antichain(2), sig.clone(), vec![vec![0, 1]]).unwrap();
        let b = OrderedAlgebra::new(FinitePoset::chain(2), sig, vec![vec![0, 1]]).unwrap();
        let h = Homomorphism::new(a, b.clone(), vec![0, 1]).unwrap();
        let f = image_factorization(&h);
        assert_eq!(f.image.len(), 2);
        assert!(f.mono.is_isomorphism());
        assert!(!f.epi.is_embedding());
        assert_eq!(f.mono.compose(&f.epi).unwrap(), h);
    }

    #[test]
    fn image_of_injective_hom_is_iso() {
        let a = chain_with_min();
        let h = Homomorphism::identity(&a);
        let f = image_factorization(&h);
        assert!(f.epi.is_isomorphism());
    }
}
