//! JSON reading and writing.
//!
//! Wherever a poset or algebra is expected, a string is a path to a file
//! holding it, resolved against the directory of the referring file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::algebra::{for_each_tuple, tuple_index, Homomorphism, OperationSymbol, OrderedAlgebra, Signature};
use crate::colimit::CoinserterResult;
use crate::error::{Error, Result};
use crate::poset::{FinitePoset, FinitePreorder, MonotoneMap};
use crate::relation::{RelationPair, Tabulation};
use crate::term::{Inequation, Term, VarietyPresentation};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetDoc {
    elements: Vec<String>,
    #[serde(default)]
    le: Vec<(String, String)>,
}

#[derive(Deserialize)]
struct IneqDoc {
    vars: Vec<String>,
    le: (String, String),
}

#[derive(Clone, Debug)]
pub struct Loader {
    base: PathBuf,
}

impl Default for Loader {
    fn default() -> Self {
        Loader { base: PathBuf::from(".") }
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::input(format!("missing field \"{key}\"")))
}

impl Loader {
    pub fn new(base: impl Into<PathBuf>) -> Self {
        Loader { base: base.into() }
    }

    /// Reads a file; returns the document and a loader rooted at its directory.
    pub fn read(&self, path: impl AsRef<Path>) -> Result<(Value, Loader)> {
        let full = self.base.join(path.as_ref());
        let text = std::fs::read_to_string(&full)
            .map_err(|e| Error::input(format!("cannot read {}: {e}", full.display())))?;
        let v: Value = serde_json::from_str(&text)
            .map_err(|e| Error::input(format!("{}: invalid JSON: {e}", full.display())))?;
        let base = full.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((v, Loader { base }))
    }

    fn deref(&self, v: &Value) -> Result<(Value, Loader)> {
        match v {
            Value::String(p) => self.read(p),
            other => Ok((other.clone(), self.clone())),
        }
    }

    pub fn poset(&self, v: &Value) -> Result<FinitePoset> {
        let (v, _) = self.deref(v)?;
        let doc: PosetDoc = serde_json::from_value(v).map_err(|e| Error::input(format!("poset: {e}")))?;
        FinitePoset::new(doc.elements, doc.le)
    }

    pub fn preorder(&self, v: &Value) -> Result<FinitePreorder> {
        let (v, _) = self.deref(v)?;
        let doc: PosetDoc = serde_json::from_value(v).map_err(|e| Error::input(format!("preorder: {e}")))?;
        FinitePreorder::new(doc.elements, doc.le)
    }

    pub fn signature(&self, v: &Value) -> Result<Signature> {
        let (v, _) = self.deref(v)?;
        let ops: Vec<OperationSymbol> = serde_json::from_value(v).map_err(|e| Error::input(format!("signature: {e}")))?;
        Signature::new(ops)
    }

    /// An algebra document, or a bare poset (empty signature).
    pub fn algebra(&self, v: &Value) -> Result<OrderedAlgebra> {
        let (carrier, sig, tables) = self.algebra_parts(v)?;
        OrderedAlgebra::new(carrier, Arc::new(sig), tables)
    }

    /// Carrier, signature and total operation tables, with monotonicity
    /// left unchecked.
    pub fn algebra_parts(&self, v: &Value) -> Result<(FinitePoset, Signature, Vec<Vec<usize>>)> {
        let (v, here) = self.deref(v)?;
        if v.get("signature").is_none() {
            return Ok((here.poset(&v)?, Signature::empty(), Vec::new()));
        }
        let sig = here.signature(field(&v, "signature")?)?;
        let carrier = here.poset(field(&v, "poset")?)?;
        let empty = Map::new();
        let ops = match v.get("ops") {
            Some(o) => o.as_object().ok_or_else(|| Error::input("\"ops\" must be an object"))?,
            None => &empty,
        };
        if let Some(name) = ops.keys().find(|k| sig.index_of(k).is_none()) {
            return Err(Error::input(format!("ops lists unknown operation {name}")));
        }
        let n = carrier.len();
        let mut tables = Vec::with_capacity(sig.len());
        for op in sig.ops() {
            let entries = ops
                .get(&op.name)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::input(format!("operation {} has no table", op.name)))?;
            let len = crate::algebra::table_len(n, op.arity).ok_or_else(|| Error::Resource("table too large".into()))?;
            let mut table = vec![usize::MAX; len];
            for e in entries {
                let (args, res): (Vec<String>, String) = serde_json::from_value(e.clone())
                    .map_err(|_| Error::input(format!("operation {}: entries are [[args...], result]", op.name)))?;
                if args.len() != op.arity {
                    return Err(Error::input(format!("operation {} has arity {}", op.name, op.arity)));
                }
                let idx: Vec<usize> = args.iter().map(|a| carrier.resolve(a)).collect::<Result<_>>()?;
                let r = carrier.resolve(&res)?;
                let slot = &mut table[tuple_index(&idx, n)];
                if *slot != usize::MAX && *slot != r {
                    return Err(Error::input(format!("operation {} has conflicting entries for {args:?}", op.name)));
                }
                *slot = r;
            }
            if let Some(miss) = table.iter().position(|&x| x == usize::MAX) {
                let mut args = Vec::new();
                let mut k = 0;
                for_each_tuple(n, op.arity, |t| {
                    if k == miss {
                        args = t.iter().map(|&x| carrier.label(x).to_owned()).collect();
                    }
                    k += 1;
                });
                return Err(Error::input(format!("operation {} has no entry for {args:?}", op.name)));
            }
            tables.push(table);
        }
        Ok((carrier, sig, tables))
    }

    fn table(&self, v: &Value, dom: &FinitePoset, cod: &FinitePoset) -> Result<Vec<usize>> {
        let t: BTreeMap<String, String> =
            serde_json::from_value(field(v, "table")?.clone()).map_err(|e| Error::input(format!("table: {e}")))?;
        if let Some(k) = t.keys().find(|k| dom.index_of(k).is_none()) {
            return Err(Error::input(format!("table mentions unknown element {k}")));
        }
        (0..dom.len())
            .map(|x| {
                let y = t
                    .get(dom.label(x))
                    .ok_or_else(|| Error::input(format!("table has no entry for {}", dom.label(x))))?;
                cod.resolve(y)
            })
            .collect()
    }

    pub fn map(&self, v: &Value) -> Result<MonotoneMap> {
        let (v, here) = self.deref(v)?;
        let dom = here.poset(field(&v, "dom")?)?;
        let cod = here.poset(field(&v, "cod")?)?;
        let table = here.table(&v, &dom, &cod)?;
        MonotoneMap::new(dom, cod, table)
    }

    /// A map whose ends may be algebras.
    pub fn hom(&self, v: &Value) -> Result<Homomorphism> {
        let (v, here) = self.deref(v)?;
        let dom = here.algebra(field(&v, "dom")?)?;
        let cod = here.algebra(field(&v, "cod")?)?;
        let table = here.table(&v, dom.carrier(), cod.carrier())?;
        Homomorphism::new(dom, cod, table)
    }

    pub fn relation(&self, v: &Value) -> Result<RelationPair> {
        let (v, here) = self.deref(v)?;
        let target = here.algebra(field(&v, "target")?)?;
        let pairs: Vec<(String, String)> =
            serde_json::from_value(field(&v, "pairs")?.clone()).map_err(|e| Error::input(format!("pairs: {e}")))?;
        RelationPair::from_labelled_pairs(target, &pairs)
    }

    pub fn presentation(&self, v: &Value) -> Result<VarietyPresentation> {
        let (v, here) = self.deref(v)?;
        let sig = here.signature(field(&v, "signature")?)?;
        let docs: Vec<IneqDoc> = serde_json::from_value(v.get("inequations").cloned().unwrap_or(json!([])))
            .map_err(|e| Error::input(format!("inequations: {e}")))?;
        let ineqs = docs
            .into_iter()
            .map(|d| {
                let lhs = Term::parse(&d.le.0, &sig, &d.vars)?;
                let rhs = Term::parse(&d.le.1, &sig, &d.vars)?;
                Inequation::new(d.vars, lhs, rhs)
            })
            .collect::<Result<Vec<_>>>()?;
        VarietyPresentation::new(Arc::new(sig), ineqs)
    }

    pub fn poset_file(&self, path: impl AsRef<Path>) -> Result<FinitePoset> {
        self.poset(&Value::String(path.as_ref().to_string_lossy().into_owned()))
    }

    pub fn algebra_file(&self, path: impl AsRef<Path>) -> Result<OrderedAlgebra> {
        self.algebra(&Value::String(path.as_ref().to_string_lossy().into_owned()))
    }
}

fn label_pairs(labels: &[String], pairs: &[(usize, usize)]) -> Value {
    Value::Array(pairs.iter().map(|&(a, b)| json!([labels[a], labels[b]])).collect())
}

/// `{"elements", "le"}` with `le` the strict pairs.
pub fn poset_json(p: &FinitePoset) -> Value {
    json!({"elements": p.labels(), "le": label_pairs(p.labels(), &p.strict_pairs())})
}

pub fn preorder_json(p: &FinitePreorder) -> Value {
    json!({"elements": p.labels(), "le": label_pairs(p.labels(), &p.strict_pairs())})
}

pub fn signature_json(s: &Signature) -> Value {
    serde_json::to_value(s.ops()).expect("plain data")
}

/// A bare poset when the signature is empty.
pub fn algebra_json(a: &OrderedAlgebra) -> Value {
    if a.signature().is_empty() {
        return poset_json(a.carrier());
    }
    let c = a.carrier();
    let mut ops = Map::new();
    for (o, op) in a.signature().ops().iter().enumerate() {
        let mut entries = Vec::new();
        for_each_tuple(a.len(), op.arity, |args| {
            let ls: Vec<&str> = args.iter().map(|&x| c.label(x)).collect();
            entries.push(json!([ls, c.label(a.apply(o, args))]));
        });
        ops.insert(op.name.clone(), Value::Array(entries));
    }
    json!({"signature": signature_json(a.signature()), "poset": poset_json(c), "ops": ops})
}

fn table_json(dom: &FinitePoset, cod: &FinitePoset, table: &[usize]) -> Value {
    let m: Map<String, Value> = table
        .iter()
        .enumerate()
        .map(|(x, &y)| (dom.label(x).to_owned(), Value::String(cod.label(y).to_owned())))
        .collect();
    Value::Object(m)
}

pub fn map_json(f: &MonotoneMap) -> Value {
    json!({"dom": poset_json(f.dom()), "cod": poset_json(f.cod()), "table": table_json(f.dom(), f.cod(), f.table())})
}

pub fn hom_json(h: &Homomorphism) -> Value {
    json!({
        "dom": algebra_json(h.dom()),
        "cod": algebra_json(h.cod()),
        "table": table_json(h.dom().carrier(), h.cod().carrier(), h.table()),
    })
}

/// Just the element assignment of a map.
pub fn arrow_json(h: &Homomorphism) -> Value {
    table_json(h.dom().carrier(), h.cod().carrier(), h.table())
}

pub fn tabulation_json(t: &Tabulation) -> Value {
    json!({"target": algebra_json(t.target()), "pairs": t.labelled_pairs()})
}

pub fn coinserter_json(c: &CoinserterResult) -> Value {
    let labels = c.poset().labels();
    json!({
        "object": algebra_json(&c.object),
        "arrow": arrow_json(&c.arrow),
        "witnesses": {"comparability": label_pairs(labels, &c.comparability)},
    })
}
