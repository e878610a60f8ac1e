//! Named property suites over exhaustive and seeded instance families.
//!
//! Each suite counts checked instances and keeps the first few failure
//! witnesses in enumeration order, so reports are deterministic.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::Serialize;

use crate::algebra::{for_each_hom_table, hom_tables, Homomorphism, OrderedAlgebra, Signature};
use crate::classical::{
    all_finite_maps, coequalizer_set, congruence_wrt_point, effectivity_roundtrip_set, finite_set, kernel_pair_set,
    set_partitions, surjection_stability_set, EquivalencePair, FiniteMap,
};
use crate::colimit::{
    coinserter_pos, pullback, quotient_algebra, subkernel_pair, subregular_factorization, verify_coinserter_universal,
};
use crate::error::{Error, Result};
use crate::generator::{copower, hom_algebra, post_composition, support_analysis, tensor_pos, verify_tensor_adjunction};
use crate::instances::{
    algebras_up_to, algebras_up_to_iso, all_preorders, posets_up_to, random_monotone_map, random_poset, random_preorder,
    rng, sample_algebras,
};
use crate::poset::{
    backtrack, enumerate_monotone_maps, for_each_monotone_table, is_isomorphic, monotone_tables, posetal_reflection,
    product, FinitePoset, FinitePreorder, MonotoneMap,
};
use crate::relation::{classify, enumerate_subcongruences, tabulate, RelationPair};
use crate::term::{Inequation, VarietyPresentation};
use crate::variety::birkhoff_closure_check;

pub const SUITES: &[&str] = &[
    "posetal-reflection",
    "coinserter-universal",
    "subkernel",
    "effectivity",
    "subregular",
    "factorization",
    "pullback",
    "tensor",
    "support",
    "hom-algebra",
    "classical",
    "birkhoff",
];

/// Size parameters; their meaning per suite is given by [`describe`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub size: usize,
    pub oracle_size: usize,
    pub samples: usize,
    pub seed: u64,
    pub arity_bound: usize,
}

/// Parameter meanings, for help text.
pub fn describe(name: &str) -> Option<&'static str> {
    Some(match name {
        "posetal-reflection" => "preorders on <= size elements, samples random preorders on 5-7, targets <= oracle-size",
        "coinserter-universal" => "pairs X => Y with |Y| <= size, |X| <= size-1, targets <= oracle-size",
        "subkernel" => "maps between posets <= size; homs within samples algebras (unary+binary) <= oracle-size",
        "effectivity" => "subcongruences on posets <= size and on samples algebras <= size",
        "subregular" => "surjections within posets <= size and samples algebras <= size",
        "factorization" => "samples random maps (posets <= size) and homs (algebras <= 3)",
        "pullback" => "Pos, Set and binary-op algebras, all <= size",
        "tensor" => "P, G <= size, targets X <= oracle-size",
        "support" => "G <= size, copowers with M <= oracle-size summands",
        "hom-algebra" => "K <= size with G = 1 and arity-bound; naturality for G <= 2, K, L <= 3",
        "classical" => "partitions of size, relations and surjections on sets <= size-1",
        "birkhoff" => "binary-op algebras <= size",
        _ => return None,
    })
}

/// Defaults match the acceptance sizes.
pub fn default_config(name: &str) -> Result<SuiteConfig> {
    let (size, oracle_size, samples) = match name {
        "posetal-reflection" => (4, 3, 1000),
        "coinserter-universal" => (3, 3, 0),
        "subkernel" => (4, 3, 500),
        "effectivity" => (3, 0, 500),
        "subregular" => (3, 0, 500),
        "factorization" => (4, 0, 1000),
        "pullback" => (3, 0, 0),
        "tensor" => (3, 3, 0),
        "support" => (4, 5, 0),
        "hom-algebra" => (4, 0, 200),
        "classical" => (5, 0, 0),
        "birkhoff" => (2, 0, 0),
        _ => return Err(Error::input(format!("unknown suite {name}; known: {}", SUITES.join(", ")))),
    };
    Ok(SuiteConfig {
        size,
        oracle_size,
        samples,
        seed: 0,
        arity_bound: 2,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: SuiteConfig,
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    /// First failures in enumeration order.
    pub witnesses: Vec<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }
}

const MAX_WITNESSES: usize = 5;

#[derive(Default)]
struct Tally {
    checked: usize,
    failed: usize,
    witnesses: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    fn error(&mut self, context: impl FnOnce() -> String, e: &Error) {
        self.check(false, || format!("{}: {e}", context()));
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut t = Tally::default();
    match name {
        "posetal-reflection" => posetal_reflection_suite(cfg, &mut t),
        "coinserter-universal" => coinserter_suite(cfg, &mut t)?,
        "subkernel" => subkernel_suite(cfg, &mut t)?,
        "effectivity" => effectivity_suite(cfg, &mut t)?,
        "subregular" => subregular_suite(cfg, &mut t)?,
        "factorization" => factorization_suite(cfg, &mut t)?,
        "pullback" => pullback_suite(cfg, &mut t)?,
        "tensor" => tensor_suite(cfg, &mut t)?,
        "support" => support_suite(cfg, &mut t)?,
        "hom-algebra" => hom_algebra_suite(cfg, &mut t)?,
        "classical" => classical_suite(cfg, &mut t)?,
        "birkhoff" => birkhoff_suite(cfg, &mut t)?,
        _ => return Err(Error::input(format!("unknown suite {name}; known: {}", SUITES.join(", ")))),
    }
    Ok(SuiteReport {
        suite: name.to_owned(),
        config: cfg.clone(),
        checked: t.checked,
        passed: t.checked - t.failed,
        failed: t.failed,
        witnesses: t.witnesses,
    })
}

fn show(p: &FinitePoset) -> String {
    let le: Vec<String> = p.strict_pairs().iter().map(|&(a, b)| format!("{}<{}", p.label(a), p.label(b))).collect();
    format!("{{{}}}[{}]", p.labels().join(","), le.join(","))
}

fn show_preorder(p: &FinitePreorder) -> String {
    let le: Vec<String> = p
        .strict_pairs()
        .iter()
        .map(|&(a, b)| format!("{}<={}", p.labels()[a], p.labels()[b]))
        .collect();
    format!("{{{}}}[{}]", p.labels().join(","), le.join(","))
}

/// Every map `|P| → Z` respecting the preorder.
fn for_each_preorder_map(p: &FinitePreorder, z: &FinitePoset, mut visit: impl FnMut(&[usize])) {
    backtrack(
        p.len(),
        z.len(),
        |i, t| (0..i).all(|j| (!p.leq(j, i) || z.le(t[j], t[i])) && (!p.leq(i, j) || z.le(t[i], t[j]))),
        |t| {
            visit(t);
            true
        },
    );
}

fn reflection_case(p: &FinitePreorder, targets: &[FinitePoset], t: &mut Tally) {
    let r = posetal_reflection(p);
    let q = &r.quotient;
    let proj = r.proj.table();
    let n = p.len();
    let antisym = (0..q.len()).all(|a| (0..q.len()).all(|b| a == b || !(q.le(a, b) && q.le(b, a))));
    t.check(antisym, || format!("quotient of {} not antisymmetric", show_preorder(p)));
    let surj = (0..q.len()).all(|c| proj.contains(&c));
    t.check(surj, || format!("projection of {} not surjective", show_preorder(p)));
    let respects = (0..n).all(|x| (0..n).all(|y| p.leq(x, y) == q.le(proj[x], proj[y])));
    t.check(respects, || format!("projection of {} does not respect and reflect the preorder", show_preorder(p)));
    for z in targets {
        let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
        for_each_monotone_table(q, z, |u| {
            *counts.entry(proj.iter().map(|&c| u[c]).collect()).or_default() += 1;
        });
        let mut bad = None;
        for_each_preorder_map(p, z, |g| {
            if bad.is_none() && counts.get(g).copied() != Some(1) {
                bad = Some(g.to_vec());
            }
        });
        t.check(bad.is_none(), || {
            format!("{} into {}: map {:?} does not factor uniquely", show_preorder(p), show(z), bad.clone().unwrap_or_default())
        });
    }
}

fn posetal_reflection_suite(cfg: &SuiteConfig, t: &mut Tally) {
    let targets = posets_up_to(cfg.oracle_size);
    for n in 0..=cfg.size {
        for p in all_preorders(n) {
            reflection_case(&p, &targets, t);
        }
    }
    let mut r = rng(cfg.seed);
    for _ in 0..cfg.samples {
        let n = r.random_range(5..=7);
        let density = r.random_range(0.05..0.5);
        let p = random_preorder(n, density, &mut r);
        reflection_case(&p, &targets, t);
    }
}

fn coinserter_suite(cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    let targets: Vec<OrderedAlgebra> = posets_up_to(cfg.oracle_size).into_iter().map(OrderedAlgebra::from_poset).collect();
    for x in posets_up_to(cfg.size.saturating_sub(1)) {
        for y in posets_up_to(cfg.size) {
            let maps = enumerate_monotone_maps(&x, &y);
            for f0 in &maps {
                for f1 in &maps {
                    let c = coinserter_pos(f0, f1)?;
                    let (h0, h1): (Homomorphism, Homomorphism) = (f0.into(), f1.into());
                    t.check(c.arrow.is_surjective(), || format!("coinserter arrow not surjective for {:?}, {:?}", f0.table(), f1.table()));
                    let rep = verify_coinserter_universal(&c, &h0, &h1, &targets)?;
                    t.check(rep.holds, || {
                        format!("{} => {}: {:?}, {:?}: {:?}", show(&x), show(&y), f0.table(), f1.table(), rep.failure)
                    });
                }
            }
        }
    }
    Ok(())
}

/// The algebra family of the subkernel, effectivity and subregular suites.
pub fn unary_binary() -> Arc<Signature> {
    Arc::new(Signature::from_pairs(&[("u", 1), ("m", 2)]).expect("valid signature"))
}

fn for_each_hom_in_family(family: &[OrderedAlgebra], mut visit: impl FnMut(usize, usize, Homomorphism)) -> Result<()> {
    for (i, a) in family.iter().enumerate() {
        for (j, b) in family.iter().enumerate() {
            for tab in hom_tables(a, b)? {
                visit(i, j, Homomorphism::new(a.clone(), b.clone(), tab)?);
            }
        }
    }
    Ok(())
}

fn subkernel_suite(cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    let posets = posets_up_to(cfg.size);
    for a in &posets {
        for b in &posets {
            for f in enumerate_monotone_maps(a, b) {
                let c = classify(&subkernel_pair(&f));
                t.check(c.is_subcongruence, || format!("subkernel of {:?}: {} to {}: {:?}", f.table(), show(a), show(b), c.subcongruence_failure()));
            }
        }
    }
    let family = sample_algebras(&unary_binary(), cfg.oracle_size, cfg.samples, cfg.seed);
    for_each_hom_in_family(&family, |i, j, h| {
        let c = classify(&subkernel_pair(&h));
        t.check(c.is_subcongruence, || format!("subkernel of hom {:?} between samples {i} and {j}", h.table()));
    })
}

fn effectivity_case(a: &OrderedAlgebra, what: &str, t: &mut Tally) -> Result<()> {
    for sub in enumerate_subcongruences(a)? {
        let r = sub.as_relation();
        match quotient_algebra(&r) {
            Ok(q) => {
                t.check(q.arrow.is_surjective(), || format!("{what}: quotient arrow not surjective"));
                let back = tabulate(&subkernel_pair(&q.arrow))?;
                t.check(back.pairs() == sub.pairs(), || format!("{what}: roundtrip changed {:?}", sub.labelled_pairs()));
            }
            Err(e) => t.error(|| format!("{what}: {:?}", sub.labelled_pairs()), &e),
        }
    }
    Ok(())
}

fn effectivity_suite(cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    for p in posets_up_to(cfg.size) {
        effectivity_case(&OrderedAlgebra::from_poset(p.clone()), &show(&p), t)?;
    }
    for (i, a) in sample_algebras(&unary_binary(), cfg.size, cfg.samples, cfg.seed).iter().enumerate() {
        effectivity_case(a, &format!("sample {i}"), t)?;
    }
    Ok(())
}

/// `e` is, up to a unique isomorphism, the coinserter of its subkernel pair.
fn surjection_recovered(e: &Homomorphism) -> Result<bool> {
    let q = quotient_algebra(&subkernel_pair(e))?;
    let mut through = Vec::new();
    for_each_hom_table(&q.object, e.cod(), |u| {
        if q.arrow.table().iter().map(|&c| u[c]).eq(e.table().iter().copied()) {
            through.push(u.to_vec());
        }
        true
    });
    Ok(through.len() == 1 && Homomorphism::new(q.object.clone(), e.cod().clone(), through.remove(0))?.is_isomorphism())
}

fn subregular_suite(cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    let posets: Vec<OrderedAlgebra> = posets_up_to(cfg.size).into_iter().map(OrderedAlgebra::from_poset).collect();
    let family = sample_algebras(&unary_binary(), cfg.size, cfg.samples, cfg.seed);
    for fam in [&posets, &family] {
        let mut err = None;
        for_each_hom_in_family(fam, |i, j, h| {
            if !h.is_surjective() || err.is_some() {
                return;
            }
            match surjection_recovered(&h) {
                Ok(ok) => t.check(ok, || format!("surjection {:?} ({i} to {j}) not recovered from its subkernel pair", h.table())),
                Err(e) => err = Some(e),
            }
        })?;
        if let Some(e) = err {
            return Err(e);
        }
    }
    // Coinserter arrows of parallel pairs are onto.
    for x in posets_up_to(2) {
        for y in posets_up_to(cfg.size) {
            let maps = enumerate_monotone_maps(&x, &y);
            for f0 in &maps {
                for f1 in &maps {
                    let c = coinserter_pos(f0, f1)?;
                    t.check(c.arrow.is_surjective(), || format!("coinserter of {:?}, {:?} not onto", f0.table(), f1.table()));
                }
            }
        }
    }
    Ok(())
}

fn factorization_check(f: &Homomorphism, t: &mut Tally) {
    match subregular_factorization(f) {
        Ok(fac) => {
            let recomposed = fac.mono.compose(&fac.epi).map(|c| c.table() == f.table()).unwrap_or(false);
            let ok = recomposed && fac.epi.is_surjective() && fac.mono.is_embedding();
            t.check(ok, || format!("factorization of {:?} fails", f.table()));
        }
        Err(e) => t.error(|| format!("factorization of {:?}", f.table()), &e),
    }
}

fn factorization_suite(cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    let mut r = rng(cfg.seed);
    let family = sample_algebras(&unary_binary(), 3, 200, cfg.seed);
    let mut done = 0;
    while done < cfg.samples {
        if done % 2 == 0 {
            let p = random_poset(r.random_range(0..=cfg.size), 0.4, &mut r);
            let q = random_poset(r.random_range(1..=cfg.size.max(1)), 0.4, &mut r);
            let Some(f) = random_monotone_map(&p, &q, &mut r) else { continue };
            factorization_check(&(&f).into(), t);
        } else {
            let a = family.choose(&mut r).expect("nonempty family");
            let b = family.choose(&mut r).expect("nonempty family");
            let homs = hom_tables(a, b)?;
            let Some(tab) = homs.choose(&mut r) else { continue };
            factorization_check(&Homomorphism::new(a.clone(), b.clone(), tab.clone())?, t);
        }
        done += 1;
    }
    Ok(())
}

/// Pullback of `e` along every `f` into each `Q`, for every surjective `e`.
fn pullback_family(family: &[OrderedAlgebra], what: &str, t: &mut Tally) -> Result<()> {
    for q in family {
        let mut into: Vec<Homomorphism> = Vec::new();
        for a in family {
            for tab in hom_tables(a, q)? {
                into.push(Homomorphism::new_unchecked(a.clone(), q.clone(), tab));
            }
        }
        for e in into.iter().filter(|e| e.is_surjective()) {
            for f in &into {
                let p = pullback(f, e)?;
                t.check(p.to_b.is_surjective(), || {
                    format!("{what}: pullback of {:?} along {:?} not onto", e.table(), f.table())
                });
            }
        }
    }
    Ok(())
}

fn pullback_suite(cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    let posets: Vec<OrderedAlgebra> = posets_up_to(cfg.size).into_iter().map(OrderedAlgebra::from_poset).collect();
    pullback_family(&posets, "Pos", t)?;
    for nq in 0..=cfg.size {
        for na in 0..=cfg.size {
            for nb in 0..=cfg.size {
                for e in all_finite_maps(na, nq).iter().filter(|e| e.is_surjective()) {
                    for f in all_finite_maps(nb, nq) {
                        let s = surjection_stability_set(&f, e)?;
                        t.check(s.holds && s.leg_surjective, || format!("Set: {:?} along {:?}", e.table(), f.table()));
                    }
                }
            }
        }
    }
    let sig = Arc::new(Signature::from_pairs(&[("m", 2)])?);
    pullback_family(&algebras_up_to_iso(&sig, cfg.size)?, "binary algebras", t)
}

fn tensor_suite(cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    let targets = posets_up_to(cfg.oracle_size);
    let small = posets_up_to(cfg.size);
    for p in &small {
        for g in &small {
            let ten = tensor_pos(p, g)?;
            let rep = verify_tensor_adjunction(&ten, g, &targets)?;
            t.check(rep.holds, || format!("P={} G={}: {:?}", show(p), show(g), rep.failure));
            t.check(is_isomorphic(&ten.object, &product(p, g).object), || format!("P={} G={}: tensor not the product", show(p), show(g)));
            let monotone_unit = (0..p.len()).all(|x| (0..p.len()).all(|y| !p.le(x, y) || ten.components[x].le_pointwise(&ten.components[y])));
            t.check(monotone_unit, || format!("P={} G={}: components not monotone in x", show(p), show(g)));
        }
    }
    Ok(())
}

fn support_suite(cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    for g in posets_up_to(cfg.size) {
        for m in 0..=cfg.oracle_size {
            let cop = copower(&g, m);
            let mut err = None;
            for_each_monotone_table(&g, &cop.object, |tab| {
                if err.is_some() {
                    return;
                }
                let f = MonotoneMap::new(g.clone(), cop.object.clone(), tab.to_vec()).expect("enumerated maps are monotone");
                match support_analysis(&f, &cop) {
                    Ok(s) => t.check(s.holds, || format!("G={} M={m}: {:?} has support {:?}", show(&g), tab, s.support)),
                    Err(e) => err = Some(e),
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
    }
    Ok(())
}

fn hom_algebra_suite(cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    let one = FinitePoset::chain(1);
    let ks = posets_up_to(cfg.size);
    let mut built = Vec::with_capacity(ks.len());
    for k in &ks {
        let e = hom_algebra(k, &one, cfg.arity_bound, crate::generator::DEFAULT_SIZE_CAP)?;
        t.check(is_isomorphic(e.algebra.carrier(), k), || format!("K={}: carrier not iso to K", show(k)));
        let m = e.algebra.len();
        for (o, op) in e.algebra.signature().ops().iter().enumerate() {
            let pick = e.sigma[o][0];
            let mut ok = true;
            crate::algebra::for_each_tuple(m, op.arity, |args| ok &= e.algebra.apply(o, args) == args[pick]);
            t.check(ok, || format!("K={}: {} is not selection of argument {pick}", show(k), op.name));
        }
        built.push(e);
    }
    for (ek, k) in built.iter().zip(&ks) {
        for (el, l) in built.iter().zip(&ks) {
            for h in enumerate_monotone_maps(k, l) {
                let r = post_composition(&h, ek, el);
                t.check(r.is_ok(), || format!("h={:?} from {} to {}: {:?}", h.table(), show(k), show(l), r.err()));
            }
        }
    }
    // Naturality with nontrivial generators.
    let mut r = rng(cfg.seed);
    let mid = posets_up_to(3);
    for g in posets_up_to(2) {
        let es: Vec<_> = mid
            .iter()
            .map(|k| hom_algebra(k, &g, cfg.arity_bound, crate::generator::DEFAULT_SIZE_CAP))
            .collect::<Result<_>>()?;
        for (i, k) in mid.iter().enumerate() {
            let id = post_composition(&MonotoneMap::identity(k), &es[i], &es[i])?;
            t.check(id.table().iter().enumerate().all(|(x, &y)| x == y), || format!("G={} K={}: E(id) is not id", show(&g), show(k)));
        }
        for _ in 0..cfg.samples / 3 {
            let (i, j, l) = (r.random_range(0..mid.len()), r.random_range(0..mid.len()), r.random_range(0..mid.len()));
            let (Some(h1), Some(h2)) = (
                random_monotone_map(&mid[i], &mid[j], &mut r),
                random_monotone_map(&mid[j], &mid[l], &mut r),
            ) else {
                continue;
            };
            let lhs = post_composition(&h2.compose(&h1)?, &es[i], &es[l])?;
            let rhs = post_composition(&h2, &es[j], &es[l])?.compose(&post_composition(&h1, &es[i], &es[j])?)?;
            t.check(lhs.table() == rhs.table(), || format!("G={}: E(h2 h1) != E(h2) E(h1)", show(&g)));
        }
    }
    Ok(())
}

/// Every relation pair on a set of size `n`: all tabulated subsets, plus
/// all leg pairs from sources of size up to `max_source`.
fn relation_pairs_on(n: usize, max_source: usize) -> Result<Vec<RelationPair>> {
    let target = OrderedAlgebra::from_poset(finite_set(n));
    let cells = n * n;
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << cells) {
        let pairs: Vec<(usize, usize)> = (0..cells).filter(|&c| mask >> c & 1 == 1).map(|c| (c / n, c % n)).collect();
        out.push(RelationPair::from_pairs(target.clone(), &pairs)?);
    }
    for k in 0..=max_source {
        let legs = monotone_tables(&finite_set(k), &finite_set(n));
        for l0 in &legs {
            for l1 in &legs {
                out.push(RelationPair::new(finite_set(k), target.clone(), l0.clone(), l1.clone())?);
            }
        }
    }
    Ok(out)
}

fn classical_suite(cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    let parts = set_partitions(cfg.size);
    for p in &parts {
        let e = EquivalencePair::from_classes(cfg.size, p)?;
        t.check(effectivity_roundtrip_set(e.relation())?, || format!("partition {p:?} not effective"));
    }
    let small = cfg.size.saturating_sub(1);
    for n in 0..=small {
        let max_source = if n <= 3 { 3 } else { 2 };
        for r in relation_pairs_on(n, max_source)? {
            let point = congruence_wrt_point(&r)?;
            let c = classify(&r).is_congruence;
            t.check(point == c, || format!("n={n} legs {:?} {:?}: point {point}, classify {c}", r.leg0(), r.leg1()));
        }
    }
    for n in 0..=small {
        for m in 0..=small {
            for f in all_finite_maps(n, m).iter().filter(|f| f.is_surjective()) {
                t.check(recovers(f)?, || format!("surjection {:?} not recovered", f.table()));
            }
        }
    }
    Ok(())
}

/// Exactly one map `u` out of the coequalizer of the kernel pair with
/// `u ∘ q = f`, and it is a bijection.
fn recovers(f: &FiniteMap) -> Result<bool> {
    let k = kernel_pair_set(f);
    let r = k.relation();
    let l0 = FiniteMap::new(r.source().clone(), r.target().carrier().clone(), r.leg0().to_vec())?;
    let l1 = FiniteMap::new(r.source().clone(), r.target().carrier().clone(), r.leg1().to_vec())?;
    let q = coequalizer_set(&l0, &l1)?;
    let through: Vec<MonotoneMap> = enumerate_monotone_maps(&q.quotient, f.cod())
        .into_iter()
        .filter(|u| q.projection.table().iter().map(|&c| u.apply(c)).eq(f.table().iter().copied()))
        .collect();
    Ok(through.len() == 1 && through[0].is_isomorphism())
}

fn birkhoff_suite(cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    let sig = Arc::new(Signature::from_pairs(&[("m", 2)])?);
    let v = VarietyPresentation::new(
        sig.clone(),
        vec![
            Inequation::parse(&["x", "y"], "m(x,y)", "x", &sig)?,
            Inequation::parse(&["x", "y"], "m(x,y)", "y", &sig)?,
        ],
    )?;
    let family = algebras_up_to(&sig, cfg.size)?;
    let rep = birkhoff_closure_check(&v, &family)?;
    let total = rep.products_checked + rep.subalgebras_checked + rep.images_checked;
    t.checked += total.saturating_sub(rep.violations.len());
    for w in &rep.violations {
        t.check(false, || format!("{} {:?}: {}", w.kind, w.instances, w.detail));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(name: &str) -> SuiteConfig {
        let mut c = default_config(name).unwrap();
        c.size = c.size.min(2);
        c.oracle_size = c.oracle_size.min(2);
        c.samples = c.samples.min(20);
        c
    }

    #[test]
    fn every_suite_runs_small() {
        for name in SUITES {
            let r = run_suite(name, &small(name)).unwrap();
            assert!(r.ok(), "{name}: {:?}", r.witnesses);
            assert!(describe(name).is_some());
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(default_config("nope"), Err(Error::Input(_))));
        assert!(run_suite("nope", &small("subkernel")).is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let c = small("factorization");
        assert_eq!(run_suite("factorization", &c).unwrap(), run_suite("factorization", &c).unwrap());
    }
}
