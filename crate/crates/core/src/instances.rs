//! Finite instance generators for oracles and family-level checks.
//! Exhaustive at small sizes, seeded sampling above.

use std::collections::HashSet;
use std::sync::Arc;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{for_each_tuple, OrderedAlgebra, Signature};
use crate::error::{Error, Result};
use crate::poset::{close_relation, earlier_neighbours, monotone_tables, numeric_labels, product, FinitePoset, FinitePreorder, MonotoneMap};

/// Default seed for sampled algebra families.
pub const DEFAULT_SAMPLE_SEED: u64 = 0xB14B_40FF;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pairs_of(n: usize) -> Vec<(usize, usize)> {
    (0..n).tuple_combinations().collect()
}

/// Every poset on `0..n` (labelled, not reduced by isomorphism).
pub fn all_posets(n: usize) -> Vec<FinitePoset> {
    let pairs = pairs_of(n);
    let mut out = Vec::new();
    // Each unordered pair is incomparable, below, or above.
    for code in 0..3usize.pow(pairs.len() as u32) {
        let mut rel = vec![false; n * n];
        for i in 0..n {
            rel[i * n + i] = true;
        }
        let mut c = code;
        for &(i, j) in &pairs {
            match c % 3 {
                1 => rel[i * n + j] = true,
                2 => rel[j * n + i] = true,
                _ => {}
            }
            c /= 3;
        }
        let mut closed = rel.clone();
        close_relation(n, &mut closed);
        if closed == rel && (0..n).all(|i| (0..n).all(|j| i == j || !(rel[i * n + j] && rel[j * n + i]))) {
            out.push(FinitePoset::from_closed(numeric_labels(n), rel));
        }
    }
    out
}

fn canonical_key(p: &FinitePoset) -> Vec<bool> {
    let n = p.len();
    (0..n)
        .permutations(n)
        .map(|perm| {
            let mut key = vec![false; n * n];
            for i in 0..n {
                for j in 0..n {
                    key[perm[i] * n + perm[j]] = p.le(i, j);
                }
            }
            key
        })
        .min()
        .unwrap_or_default()
}

/// One representative per isomorphism class of posets on `n` elements.
pub fn posets_of_size(n: usize) -> Vec<FinitePoset> {
    let mut seen = HashSet::new();
    all_posets(n).into_iter().filter(|p| seen.insert(canonical_key(p))).collect()
}

/// Representatives of all posets with at most `max` elements, the empty
/// poset first, then by size.
pub fn posets_up_to(max: usize) -> Vec<FinitePoset> {
    (0..=max).flat_map(posets_of_size).collect()
}

/// Every preorder on `0..n`.
pub fn all_preorders(n: usize) -> Vec<FinitePreorder> {
    let off: Vec<usize> = (0..n * n).filter(|&i| i / n != i % n).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << off.len()) {
        let mut rel = vec![false; n * n];
        for i in 0..n {
            rel[i * n + i] = true;
        }
        for (b, &cell) in off.iter().enumerate() {
            rel[cell] = mask >> b & 1 == 1;
        }
        let mut closed = rel.clone();
        close_relation(n, &mut closed);
        if closed == rel {
            out.push(FinitePreorder::from_relation(numeric_labels(n), rel).expect("valid size"));
        }
    }
    out
}

/// Random preorder: each off-diagonal pair with probability `density`,
/// then closed.
pub fn random_preorder(n: usize, density: f64, rng: &mut impl Rng) -> FinitePreorder {
    let mut rel = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            rel[i * n + j] = i == j || rng.random_bool(density);
        }
    }
    FinitePreorder::from_relation(numeric_labels(n), rel).expect("valid size")
}

/// Random poset: a random DAG along a shuffled linear order, closed.
pub fn random_poset(n: usize, density: f64, rng: &mut impl Rng) -> FinitePoset {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut rel = vec![false; n * n];
    for i in 0..n {
        rel[i * n + i] = true;
    }
    for (a, b) in pairs_of(n) {
        if rng.random_bool(density) {
            rel[order[a] * n + order[b]] = true;
        }
    }
    close_relation(n, &mut rel);
    FinitePoset::from_closed(numeric_labels(n), rel)
}

/// Uniform choice among consistent values at each step, with backtracking
/// when a partial map cannot be extended.
pub fn random_monotone_table(p: &FinitePoset, q: &FinitePoset, rng: &mut impl Rng) -> Option<Vec<usize>> {
    let (below, above) = earlier_neighbours(p);
    let mut table = Vec::with_capacity(p.len());
    fn go(
        i: usize,
        p: &FinitePoset,
        q: &FinitePoset,
        below: &[Vec<usize>],
        above: &[Vec<usize>],
        table: &mut Vec<usize>,
        rng: &mut dyn rand::RngCore,
    ) -> bool {
        if i == p.len() {
            return true;
        }
        let mut cands: Vec<usize> = (0..q.len())
            .filter(|&v| below[i].iter().all(|&b| q.le(table[b], v)) && above[i].iter().all(|&c| q.le(v, table[c])))
            .collect();
        cands.shuffle(rng);
        for v in cands {
            table.push(v);
            if go(i + 1, p, q, below, above, table, rng) {
                return true;
            }
            table.pop();
        }
        false
    }
    go(0, p, q, &below, &above, &mut table, rng).then_some(table)
}

pub fn random_monotone_map(p: &FinitePoset, q: &FinitePoset, rng: &mut impl Rng) -> Option<MonotoneMap> {
    random_monotone_table(p, q, rng).map(|t| MonotoneMap::new_unchecked(p.clone(), q.clone(), t))
}

/// `carrier^arity` with the componentwise order, indexed like operation
/// tables.
pub fn power(carrier: &FinitePoset, arity: usize) -> FinitePoset {
    (0..arity).fold(FinitePoset::chain(1), |acc, _| product(&acc, carrier).object)
}

/// All monotone tables for one operation of the given arity.
pub fn operation_tables(carrier: &FinitePoset, arity: usize) -> Vec<Vec<usize>> {
    monotone_tables(&power(carrier, arity), carrier)
}

/// Every algebra structure on `carrier`, tables in lexicographic order per
/// operation (first operation slowest).
pub fn enumerate_algebras(sig: &Arc<Signature>, carrier: &FinitePoset) -> Vec<OrderedAlgebra> {
    if carrier.is_empty() && sig.has_constants() {
        return Vec::new();
    }
    let per_op: Vec<Vec<Vec<usize>>> = sig.ops().iter().map(|op| operation_tables(carrier, op.arity)).collect();
    if per_op.is_empty() {
        return vec![OrderedAlgebra::from_poset(carrier.clone())];
    }
    per_op
        .iter()
        .map(|ts| ts.iter())
        .multi_cartesian_product()
        .map(|tables| OrderedAlgebra::new_unchecked(carrier.clone(), sig.clone(), tables.into_iter().cloned().collect()))
        .collect()
}

/// All algebras whose carrier is one of `posets_up_to(max)`. Carriers are
/// taken up to isomorphism; the tables on each carrier are not.
pub fn algebras_up_to(sig: &Arc<Signature>, max: usize) -> Result<Vec<OrderedAlgebra>> {
    if max > 4 {
        return Err(Error::Resource(format!("exhaustive algebra generation is capped at 4 elements, got {max}")));
    }
    Ok(posets_up_to(max).iter().flat_map(|p| enumerate_algebras(sig, p)).collect())
}

fn algebra_key(a: &OrderedAlgebra) -> Vec<usize> {
    let n = a.len();
    let sig = a.signature();
    (0..n)
        .permutations(n)
        .map(|perm| {
            let mut inv = vec![0usize; n];
            for (i, &x) in perm.iter().enumerate() {
                inv[x] = i;
            }
            let mut key: Vec<usize> = (0..n * n).map(|c| usize::from(a.carrier().le(inv[c / n], inv[c % n]))).collect();
            let mut pre = Vec::new();
            for (o, op) in sig.ops().iter().enumerate() {
                for_each_tuple(n, op.arity, |args| {
                    pre.clear();
                    pre.extend(args.iter().map(|&x| inv[x]));
                    key.push(perm[a.apply(o, &pre)]);
                });
            }
            key
        })
        .min()
        .unwrap_or_default()
}

/// One algebra per isomorphism class with at most `max` elements.
pub fn algebras_up_to_iso(sig: &Arc<Signature>, max: usize) -> Result<Vec<OrderedAlgebra>> {
    let mut seen = HashSet::new();
    Ok(algebras_up_to(sig, max)?
        .into_iter()
        .filter(|a| seen.insert((a.len(), algebra_key(a))))
        .collect())
}

pub fn random_algebra(sig: &Arc<Signature>, carrier: &FinitePoset, rng: &mut impl Rng) -> Option<OrderedAlgebra> {
    if carrier.is_empty() && sig.has_constants() {
        return None;
    }
    let mut tables = Vec::with_capacity(sig.len());
    for op in sig.ops() {
        tables.push(random_monotone_table(&power(carrier, op.arity), carrier, rng)?);
    }
    Some(OrderedAlgebra::new_unchecked(carrier.clone(), sig.clone(), tables))
}

/// `count` seeded samples with nonempty carriers drawn uniformly from the
/// poset representatives of size `1..=max`.
pub fn sample_algebras(sig: &Arc<Signature>, max: usize, count: usize, seed: u64) -> Vec<OrderedAlgebra> {
    let carriers: Vec<FinitePoset> = (1..=max).flat_map(posets_of_size).collect();
    if carriers.is_empty() {
        return Vec::new();
    }
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let c = &carriers[rng.random_range(0..carriers.len())];
        if let Some(a) = random_algebra(sig, c, &mut rng) {
            out.push(a);
        }
    }
    out
}
