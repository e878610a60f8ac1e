//! Command-line front end: verbs over JSON files, JSON on stdout.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ordalg::algebra::{enumerate_homomorphisms, image_factorization, product_algebra, subalgebra, validate_algebra, Homomorphism, OrderedAlgebra};
use ordalg::classical::{
    coequalizer_set, congruence_wrt_point, effectivity_roundtrip_set, kernel_pair_set, pullback_set, regular_factorization_set,
    set_partitions, surjection_stability_set, EquivalencePair, FiniteMap,
};
use ordalg::colimit::{
    coinserter_alg, coinserter_pos, coinserter_subcongruence_pos, pullback, quotient_algebra, subkernel_pair, subregular_factorization,
    verify_coinserter_universal, CoinserterResult,
};
use ordalg::generator::{
    canonical_cover_check, copower, hom_algebra, hom_poset, hom_poset_alg, is_subregular_projective_instance, post_composition,
    reflects_iso_instance, support_analysis, tensor_pos, verify_tensor_adjunction, DEFAULT_SIZE_CAP,
};
use ordalg::instances::{algebras_up_to, posets_up_to};
use ordalg::io::{algebra_json, arrow_json, coinserter_json, hom_json, map_json, poset_json, tabulation_json, Loader};
use ordalg::poset::{connected_components, coproduct, enumerate_monotone_maps, for_each_monotone_table, is_embedding, is_surjective,
    posetal_reflection, preorder_closure, product, FinitePoset, MonotoneMap};
use ordalg::relation::{classify, tabulate, RelationPair};
use ordalg::suites::{default_config, describe, run_suite, SUITES};
use ordalg::term::{evaluate, free_terms, satisfies, Term, Valuation};
use ordalg::variety::birkhoff_closure_check;
use ordalg::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "ordalg", version, about = "Finite posets, ordered algebras and their colimits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

/// Flags shared by the verbs that use them.
#[derive(Args, Debug, Clone, Default)]
pub struct Options {
    /// Seed for randomized sampling; echoed in the output.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub size: Option<usize>,
    /// Size bound of the families used by brute-force oracles.
    #[arg(long, global = true)]
    pub oracle_size: Option<usize>,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true)]
    pub arity_bound: Option<usize>,
    #[arg(long, global = true)]
    pub size_cap: Option<usize>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Posetal reflection of a preorder file.
    Posref { preorder: PathBuf },
    /// Coinserter of two parallel maps or homomorphisms; with --oracle-size, also checks universality.
    Coinserter { f0: PathBuf, f1: PathBuf },
    /// Subkernel pair of a map, as a tabulated relation.
    Subkernel { map: PathBuf },
    /// Classification flags of a relation, with least counterexamples.
    Classify { relation: PathBuf },
    /// Canonical tabulation of a relation.
    Tabulate { relation: PathBuf },
    /// Quotient by a subcongruence.
    Quotient { relation: PathBuf },
    /// (surjection, embedding) factorization of a map.
    Factorize { map: PathBuf },
    /// Pullback of `e: A → Q` along `f: B → Q`.
    Pullback { f: PathBuf, e: PathBuf },
    /// Whether an algebra satisfies every inequation of a presentation.
    Satisfies { algebra: PathBuf, presentation: PathBuf },
    /// Value of a term under a valuation such as `x=a,y=b`.
    Evaluate {
        algebra: PathBuf,
        #[arg(long)]
        term: String,
        #[arg(long, default_value = "")]
        at: String,
    },
    /// All terms over a signature file up to a depth.
    FreeTerms {
        signature: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "x")]
        vars: Vec<String>,
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// Checks operation tables for totality and monotonicity.
    Validate { algebra: PathBuf },
    /// Closure of a presentation's models within all algebras of size <= --size (default 2).
    Birkhoff { presentation: PathBuf },
    /// Whether the morphisms `G → X` are jointly surjective.
    Cover { generator: PathBuf, target: PathBuf },
    /// Support of maps into a copower of G: a given map, or all of them.
    Support {
        generator: PathBuf,
        map: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        copies: usize,
    },
    /// Tensor P ⊗ G; with --oracle-size, also checks the adjunction.
    Tensor { p: PathBuf, g: PathBuf },
    /// The poset of morphisms `G → X`.
    HomPoset { generator: PathBuf, target: PathBuf },
    /// The hom-algebra EK for generator G.
    HomAlgebra { k: PathBuf, generator: PathBuf },
    /// Post-composition `EK → EL` by a monotone `h: K → L`.
    PostCompose { map: PathBuf, generator: PathBuf },
    /// Whether every `G → B` lifts along a surjection `e: A → B`.
    Projective { generator: PathBuf, e: PathBuf },
    /// Whether `hom(G, h)` being an isomorphism forces `h` to be one.
    ReflectsIso { generator: PathBuf, map: PathBuf },
    /// Binary product of posets or algebras.
    Product { a: PathBuf, b: PathBuf },
    /// Coproduct of posets.
    Coproduct { parts: Vec<PathBuf> },
    /// Connected components of a poset.
    Components { poset: PathBuf },
    /// All monotone maps or homomorphisms between two objects.
    Homs { a: PathBuf, b: PathBuf },
    /// Surjectivity, injectivity and order-embedding of a map.
    MapInfo { map: PathBuf },
    /// Subalgebra on a closed subset of labels.
    Subalgebra {
        algebra: PathBuf,
        #[arg(long, value_delimiter = ',')]
        subset: Vec<String>,
    },
    /// Image factorization of a homomorphism.
    Image { map: PathBuf },
    /// Kernel pair of a function between sets.
    ClassicalKernel { map: PathBuf },
    /// Coequalizer of two parallel functions.
    ClassicalCoequalizer { r0: PathBuf, r1: PathBuf },
    /// (surjection, injection) factorization of a function.
    ClassicalFactorize { map: PathBuf },
    /// Whether an equivalence is the kernel pair of its quotient map.
    ClassicalEffectivity { relation: PathBuf },
    /// Relation seen through points; agrees with the congruence flag.
    ClassicalCongruence { relation: PathBuf },
    /// Pullback of functions and stability of surjections.
    ClassicalPullback { f: PathBuf, e: PathBuf },
    /// Partitions of an n-element set (n = --size, default 4), each checked for effectivity.
    ClassicalPartitions,
    /// Runs a named property suite; `list` prints the suites.
    Verify { suite: String },
}

/// The JSON result and whether the checked property holds.
#[derive(Debug)]
pub struct Outcome {
    pub holds: bool,
    pub json: Value,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Outcome { holds: true, json }
    }

    fn check(holds: bool, json: Value) -> Self {
        Outcome { holds, json }
    }

    pub fn exit_code(&self) -> i32 {
        if self.holds { 0 } else { 1 }
    }
}

/// Library operations and the verbs reaching them.
pub const OPERATIONS: &[(&str, &[&str])] = &[
    ("preorder_closure", &["posref"]),
    ("posetal_reflection", &["posref"]),
    ("product", &["product"]),
    ("coproduct", &["coproduct", "support"]),
    ("connected_components", &["components", "support"]),
    ("enumerate_monotone_maps", &["homs"]),
    ("is_embedding", &["map-info", "factorize"]),
    ("is_surjective", &["map-info", "factorize", "pullback"]),
    ("tabulate", &["tabulate", "subkernel"]),
    ("classify", &["classify"]),
    ("coinserter_pos", &["coinserter"]),
    ("subkernel_pair", &["subkernel"]),
    ("coinserter_subcongruence_pos", &["quotient"]),
    ("quotient_algebra", &["quotient"]),
    ("coinserter_alg", &["coinserter"]),
    ("verify_coinserter_universal", &["coinserter"]),
    ("subregular_factorization", &["factorize"]),
    ("pullback", &["pullback"]),
    ("validate_algebra", &["validate"]),
    ("free_terms", &["free-terms"]),
    ("evaluate", &["evaluate"]),
    ("satisfies", &["satisfies"]),
    ("product_algebra", &["product"]),
    ("subalgebra", &["subalgebra"]),
    ("image_factorization", &["image"]),
    ("enumerate_homomorphisms", &["homs"]),
    ("birkhoff_closure_check", &["birkhoff"]),
    ("hom_poset", &["hom-poset"]),
    ("support_analysis", &["support"]),
    ("canonical_cover_check", &["cover"]),
    ("is_subregular_projective_instance", &["projective"]),
    ("reflects_iso_instance", &["reflects-iso"]),
    ("tensor_pos", &["tensor"]),
    ("hom_algebra", &["hom-algebra", "post-compose"]),
    ("post_composition", &["post-compose"]),
    ("kernel_pair_set", &["classical-kernel"]),
    ("coequalizer_set", &["classical-coequalizer"]),
    ("regular_factorization_set", &["classical-factorize"]),
    ("effectivity_roundtrip_set", &["classical-effectivity", "classical-partitions"]),
    ("congruence_wrt_point", &["classical-congruence"]),
    ("pullback_set", &["classical-pullback"]),
    ("surjection_stability_set", &["classical-pullback"]),
    ("run_suite", &["verify"]),
];

fn read<T>(path: &Path, f: impl FnOnce(&Loader, &Value) -> Result<T>) -> Result<T> {
    let (v, here) = Loader::default().read(path)?;
    f(&here, &v)
}

fn algebra(path: &Path) -> Result<OrderedAlgebra> {
    read(path, Loader::algebra)
}

fn poset(path: &Path) -> Result<FinitePoset> {
    read(path, Loader::poset)
}

fn hom(path: &Path) -> Result<Homomorphism> {
    read(path, Loader::hom)
}

fn monotone(path: &Path) -> Result<MonotoneMap> {
    read(path, Loader::map)
}

fn relation(path: &Path) -> Result<RelationPair> {
    read(path, Loader::relation)
}

fn finite_map(path: &Path) -> Result<FiniteMap> {
    FiniteMap::from_map(monotone(path)?)
}

fn labels(p: &FinitePoset, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| p.label(x).to_owned()).collect()
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data")
}

fn coinserter(f0: &Homomorphism, f1: &Homomorphism, opts: &Options) -> Result<Outcome> {
    let c: CoinserterResult = if f0.cod().signature().is_empty() {
        coinserter_pos(&f0.map(), &f1.map())?
    } else {
        coinserter_alg(f0, f1)?
    };
    let mut out = coinserter_json(&c);
    let mut holds = true;
    if let Some(k) = opts.oracle_size {
        let sig = f0.cod().signature();
        let targets: Vec<OrderedAlgebra> = if sig.is_empty() {
            posets_up_to(k).into_iter().map(OrderedAlgebra::from_poset).collect()
        } else {
            algebras_up_to(sig, k)?
        };
        let report = verify_coinserter_universal(&c, f0, f1, &targets)?;
        holds = report.holds;
        out["witnesses"]["universality"] = to_json(&report);
    }
    Ok(Outcome::check(holds, out))
}

fn parse_valuation(a: &OrderedAlgebra, at: &str) -> Result<(Vec<String>, Valuation)> {
    let mut vars = Vec::new();
    let mut val = Valuation::new();
    for item in at.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (x, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("valuation entry {item:?} is not var=label")))?;
        vars.push(x.trim().to_owned());
        val.insert(x.trim().to_owned(), a.carrier().resolve(v.trim())?);
    }
    Ok((vars, val))
}

fn support(g: &FinitePoset, map: Option<&Path>, copies: usize) -> Result<Outcome> {
    if let Some(path) = map {
        let f = monotone(path)?;
        if g.is_empty() || f.cod().len() % g.len() != 0 {
            return Err(Error::Input("support: codomain is not a copower of the generator".into()));
        }
        let cop = copower(g, f.cod().len() / g.len());
        let f = MonotoneMap::new(f.dom().clone(), cop.object.clone(), f.table().to_vec())?;
        let s = support_analysis(&f, &cop)?;
        return Ok(Outcome::check(s.holds, to_json(&s)));
    }
    let cop = copower(g, copies);
    let mut checked = 0usize;
    let mut largest = 0usize;
    let mut witness: Option<Value> = None;
    let mut err = None;
    for_each_monotone_table(g, &cop.object, |t| {
        if err.is_some() {
            return;
        }
        let f = MonotoneMap::new(g.clone(), cop.object.clone(), t.to_vec()).expect("enumerated maps are monotone");
        match support_analysis(&f, &cop) {
            Ok(s) => {
                checked += 1;
                largest = largest.max(s.support.len());
                if !s.holds && witness.is_none() {
                    witness = Some(json!({"table": labels(&cop.object, t), "support": s.support}));
                }
            }
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let bound = connected_components(g).len();
    Ok(Outcome::check(
        witness.is_none(),
        json!({"copies": copies, "maps_checked": checked, "largest_support": largest, "component_bound": bound, "witness": witness}),
    ))
}

fn verify(suite: &str, opts: &Options) -> Result<Outcome> {
    if suite == "list" {
        let list: Vec<Value> = SUITES.iter().map(|s| json!({"suite": s, "checks": describe(s)})).collect();
        return Ok(Outcome::ok(Value::Array(list)));
    }
    let mut cfg = default_config(suite)?;
    cfg.seed = opts.seed;
    if let Some(s) = opts.size {
        cfg.size = s;
    }
    if let Some(k) = opts.oracle_size {
        cfg.oracle_size = k;
    }
    if let Some(n) = opts.samples {
        cfg.samples = n;
    }
    if let Some(a) = opts.arity_bound {
        cfg.arity_bound = a;
    }
    let report = run_suite(suite, &cfg)?;
    eprintln!("{}: {} checked, {} passed, {} failed (seed {})", suite, report.checked, report.passed, report.failed, cfg.seed);
    Ok(Outcome::check(report.ok(), to_json(&report)))
}

/// Runs one command. Errors are input, validation or precondition failures.
pub fn execute(cmd: &Command, opts: &Options) -> Result<Outcome> {
    match cmd {
        Command::Posref { preorder } => {
            let (v, _) = Loader::default().read(preorder)?;
            let elements: Vec<String> = serde_json::from_value(v.get("elements").cloned().unwrap_or_default())
                .map_err(|e| Error::Input(format!("preorder: {e}")))?;
            let le: Vec<(String, String)> = serde_json::from_value(v.get("le").cloned().unwrap_or(json!([])))
                .map_err(|e| Error::Input(format!("preorder: {e}")))?;
            let p = preorder_closure(&elements, &[], &le)?;
            let r = posetal_reflection(&p);
            let classes: Vec<Vec<String>> = r.classes.iter().map(|c| c.iter().map(|&x| p.labels()[x].clone()).collect()).collect();
            Ok(Outcome::ok(json!({
                "object": poset_json(&r.quotient),
                "arrow": arrow_json(&Homomorphism::from(&r.proj)),
                "classes": classes,
            })))
        }
        Command::Coinserter { f0, f1 } => coinserter(&hom(f0)?, &hom(f1)?, opts),
        Command::Subkernel { map } => {
            let r = subkernel_pair(hom(map)?);
            Ok(Outcome::ok(tabulation_json(&tabulate(&r)?)))
        }
        Command::Classify { relation: r } => Ok(Outcome::ok(to_json(&classify(&relation(r)?)))),
        Command::Tabulate { relation: r } => Ok(Outcome::ok(tabulation_json(&tabulate(&relation(r)?)?))),
        Command::Quotient { relation: r } => {
            let r = relation(r)?;
            let c = if r.target().signature().is_empty() { coinserter_subcongruence_pos(&r)? } else { quotient_algebra(&r)? };
            Ok(Outcome::ok(coinserter_json(&c)))
        }
        Command::Factorize { map } => {
            let f = hom(map)?;
            let fac = subregular_factorization(&f)?;
            let (epi, mono) = (fac.epi.map(), fac.mono.map());
            Ok(Outcome::ok(json!({
                "object": algebra_json(&fac.mid),
                "epi": arrow_json(&fac.epi),
                "mono": arrow_json(&fac.mono),
                "witnesses": {"epi_surjective": is_surjective(&epi), "mono_embedding": is_embedding(&mono)},
            })))
        }
        Command::Pullback { f, e } => {
            let (f, e) = (hom(f)?, hom(e)?);
            let p = pullback(&f, &e)?;
            let (e_onto, leg_onto) = (is_surjective(&e.map()), is_surjective(&p.to_b.map()));
            Ok(Outcome::check(
                !e_onto || leg_onto,
                json!({
                    "object": algebra_json(&p.object),
                    "to_a": arrow_json(&p.to_a),
                    "to_b": arrow_json(&p.to_b),
                    "witnesses": {"e_surjective": e_onto, "to_b_surjective": leg_onto},
                }),
            ))
        }
        Command::Satisfies { algebra: a, presentation } => {
            let a = algebra(a)?;
            let v = read(presentation, Loader::presentation)?;
            let mut results = Vec::new();
            let mut holds = true;
            for ineq in &v.inequations {
                let s = satisfies(&a, ineq)?;
                holds &= s.holds;
                results.push(json!({"inequation": ineq.to_string(), "holds": s.holds, "witness": s.witness}));
            }
            Ok(Outcome::check(holds, json!({"holds": holds, "inequations": results})))
        }
        Command::Evaluate { algebra: a, term, at } => {
            let a = algebra(a)?;
            let (vars, val) = parse_valuation(&a, at)?;
            let t = Term::parse(term, a.signature(), &vars)?;
            let v = evaluate(&t, &a, &val)?;
            Ok(Outcome::ok(json!({"term": t.to_string(), "value": a.carrier().label(v)})))
        }
        Command::FreeTerms { signature, vars, depth } => {
            let sig = read(signature, Loader::signature)?;
            let terms: Vec<String> = free_terms(&sig, vars, *depth).iter().map(ToString::to_string).collect();
            Ok(Outcome::ok(json!({"count": terms.len(), "terms": terms})))
        }
        Command::Validate { algebra: a } => {
            let (carrier, sig, tables) = read(a, Loader::algebra_parts)?;
            let v = validate_algebra(&carrier, &sig, &tables);
            Ok(Outcome::check(v.valid, to_json(&v)))
        }
        Command::Birkhoff { presentation } => {
            let v = read(presentation, Loader::presentation)?;
            let family = algebras_up_to(&v.signature, opts.size.unwrap_or(2))?;
            let r = birkhoff_closure_check(&v, &family)?;
            Ok(Outcome::check(r.closed, to_json(&r)))
        }
        Command::Cover { generator, target } => {
            let r = canonical_cover_check(&algebra(generator)?, &algebra(target)?)?;
            Ok(Outcome::check(r.holds, to_json(&r)))
        }
        Command::Support { generator, map, copies } => support(&poset(generator)?, map.as_deref(), *copies),
        Command::Tensor { p, g } => {
            let (p, g) = (poset(p)?, poset(g)?);
            let t = tensor_pos(&p, &g)?;
            let components: Vec<Value> = t.components.iter().map(|c| arrow_json(&c.into())).collect();
            let mut out = json!({
                "object": poset_json(&t.object),
                "arrow": arrow_json(&(&t.arrow).into()),
                "witnesses": {"components": components},
            });
            let mut holds = true;
            if let Some(k) = opts.oracle_size {
                let r = verify_tensor_adjunction(&t, &g, &posets_up_to(k))?;
                holds = r.holds;
                out["witnesses"]["adjunction"] = to_json(&r);
            }
            Ok(Outcome::check(holds, out))
        }
        Command::HomPoset { generator, target } => {
            let (g, x) = (algebra(generator)?, algebra(target)?);
            let h = if g.signature().is_empty() && x.signature().is_empty() {
                hom_poset(g.carrier(), x.carrier())
            } else {
                hom_poset_alg(&g, &x)?
            };
            Ok(Outcome::ok(poset_json(&h.poset)))
        }
        Command::HomAlgebra { k, generator } => {
            let h = hom_algebra(
                &poset(k)?,
                &poset(generator)?,
                opts.arity_bound.unwrap_or(2),
                opts.size_cap.unwrap_or(DEFAULT_SIZE_CAP),
            )?;
            Ok(Outcome::ok(json!({"object": algebra_json(&h.algebra), "arity_bound": h.arity_bound})))
        }
        Command::PostCompose { map, generator } => {
            let h = monotone(map)?;
            let g = poset(generator)?;
            let (bound, cap) = (opts.arity_bound.unwrap_or(2), opts.size_cap.unwrap_or(DEFAULT_SIZE_CAP));
            let ek = hom_algebra(h.dom(), &g, bound, cap)?;
            let el = hom_algebra(h.cod(), &g, bound, cap)?;
            let p = post_composition(&h, &ek, &el)?;
            Ok(Outcome::ok(hom_json(&p)))
        }
        Command::Projective { generator, e } => {
            let r = is_subregular_projective_instance(&algebra(generator)?, hom(e)?)?;
            Ok(Outcome::check(r.holds, to_json(&r)))
        }
        Command::ReflectsIso { generator, map } => {
            let r = reflects_iso_instance(&algebra(generator)?, hom(map)?)?;
            Ok(Outcome::check(r.holds, to_json(&r)))
        }
        Command::Product { a, b } => {
            let (a, b) = (algebra(a)?, algebra(b)?);
            if a.signature().is_empty() && b.signature().is_empty() {
                let p = product(a.carrier(), b.carrier());
                return Ok(Outcome::ok(json!({
                    "object": poset_json(&p.object),
                    "proj0": arrow_json(&(&p.proj0).into()),
                    "proj1": arrow_json(&(&p.proj1).into()),
                })));
            }
            let p = product_algebra(&a, &b)?;
            Ok(Outcome::ok(json!({
                "object": algebra_json(&p.object),
                "proj0": arrow_json(&p.proj0),
                "proj1": arrow_json(&p.proj1),
            })))
        }
        Command::Coproduct { parts } => {
            let ps = parts.iter().map(|p| poset(p)).collect::<Result<Vec<_>>>()?;
            let c = coproduct(&ps);
            let inj: Vec<Value> = c.injections.iter().map(|i| arrow_json(&i.into())).collect();
            Ok(Outcome::ok(json!({"object": poset_json(&c.object), "injections": inj})))
        }
        Command::Components { poset: p } => {
            let p = poset(p)?;
            let cs: Vec<Vec<String>> = connected_components(&p).iter().map(|c| labels(&p, c)).collect();
            Ok(Outcome::ok(json!({"count": cs.len(), "components": cs})))
        }
        Command::Homs { a, b } => {
            let (a, b) = (algebra(a)?, algebra(b)?);
            let tables: Vec<Value> = if a.signature().is_empty() && b.signature().is_empty() {
                enumerate_monotone_maps(a.carrier(), b.carrier()).iter().map(|f| arrow_json(&f.into())).collect()
            } else {
                enumerate_homomorphisms(&a, &b)?.iter().map(arrow_json).collect()
            };
            Ok(Outcome::ok(json!({"count": tables.len(), "maps": tables})))
        }
        Command::MapInfo { map } => {
            let h = hom(map)?;
            let f = h.map();
            Ok(Outcome::ok(json!({
                "surjective": is_surjective(&f),
                "injective": f.is_injective(),
                "embedding": is_embedding(&f),
            })))
        }
        Command::Subalgebra { algebra: a, subset } => {
            let a = algebra(a)?;
            let idx = subset.iter().map(|l| a.carrier().resolve(l)).collect::<Result<Vec<_>>>()?;
            let s = subalgebra(&a, &idx)?;
            Ok(Outcome::ok(json!({"object": algebra_json(&s.algebra), "inclusion": arrow_json(&s.inclusion)})))
        }
        Command::Image { map } => {
            let i = image_factorization(&hom(map)?);
            Ok(Outcome::ok(json!({"object": algebra_json(&i.image), "epi": arrow_json(&i.epi), "mono": arrow_json(&i.mono)})))
        }
        Command::ClassicalKernel { map } => Ok(Outcome::ok(tabulation_json(&kernel_pair_set(&finite_map(map)?).tabulation()))),
        Command::ClassicalCoequalizer { r0, r1 } => {
            let q = coequalizer_set(&finite_map(r0)?, &finite_map(r1)?)?;
            Ok(Outcome::ok(json!({"object": poset_json(&q.quotient), "arrow": arrow_json(&q.projection.map().into())})))
        }
        Command::ClassicalFactorize { map } => {
            let f = regular_factorization_set(&finite_map(map)?)?;
            Ok(Outcome::ok(json!({"surjection": map_json(f.surjection.map()), "injection": map_json(f.injection.map())})))
        }
        Command::ClassicalEffectivity { relation: r } => {
            let r = relation(r)?;
            let holds = effectivity_roundtrip_set(&r)?;
            Ok(Outcome::check(holds, json!({"effective": holds})))
        }
        Command::ClassicalCongruence { relation: r } => {
            let r = relation(r)?;
            let via_points = congruence_wrt_point(&r)?;
            let cls = classify(&r);
            Ok(Outcome::check(
                via_points == cls.is_congruence,
                json!({"congruence_wrt_point": via_points, "is_congruence": cls.is_congruence}),
            ))
        }
        Command::ClassicalPullback { f, e } => {
            let (f, e) = (finite_map(f)?, finite_map(e)?);
            let p = pullback_set(&f, &e)?;
            let s = surjection_stability_set(&f, &e)?;
            Ok(Outcome::check(
                s.holds,
                json!({
                    "object": poset_json(p.object.carrier()),
                    "to_a": arrow_json(&p.to_a),
                    "to_b": arrow_json(&p.to_b),
                    "witnesses": {"stability": s},
                }),
            ))
        }
        Command::ClassicalPartitions => {
            let n = opts.size.unwrap_or(4);
            let parts = set_partitions(n);
            let mut failures = Vec::new();
            for p in &parts {
                let e = EquivalencePair::from_classes(n, p)?;
                if !effectivity_roundtrip_set(e.relation())? {
                    failures.push(p.clone());
                }
            }
            Ok(Outcome::check(
                failures.is_empty(),
                json!({"size": n, "count": parts.len(), "partitions": parts, "not_effective": failures}),
            ))
        }
        Command::Verify { suite } => verify(suite, opts),
    }
}
