//! Terms over a signature, their evaluation in ordered algebras, and
//! inequations `t ≤ s`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{OrderedAlgebra, Signature};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn app(op: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(op.into(), args)
    }

    /// Application depth: variables 0, `σ(t..)` one more than its deepest
    /// argument (so constants have depth 1).
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Term::Var(v) => out.push(v),
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Checks arity discipline against `sig` and that variables come from `vars`.
    pub fn check(&self, sig: &Signature, vars: &[String]) -> Result<()> {
        match self {
            Term::Var(v) => {
                if vars.iter().any(|x| x == v) {
                    Ok(())
                } else {
                    Err(Error::input(format!("undeclared variable {v:?}")))
                }
            }
            Term::App(op, args) => {
                let k = sig
                    .index_of(op)
                    .ok_or_else(|| Error::input(format!("unknown operation {op:?}")))?;
                let arity = sig.ops()[k].arity;
                if arity != args.len() {
                    return Err(Error::input(format!(
                        "operation {op:?} has arity {arity}, applied to {} arguments",
                        args.len()
                    )));
                }
                args.iter().try_for_each(|a| a.check(sig, vars))
            }
        }
    }

    /// Parses prefix notation such as `m(x,u(y))`. A bare identifier is a
    /// variable if declared in `vars`, otherwise a constant symbol.
    pub fn parse(input: &str, sig: &Signature, vars: &[String]) -> Result<Term> {
        let mut p = Parser {
            src: input.as_bytes(),
            pos: 0,
            sig,
            vars,
        };
        let t = p.term()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(t)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(op, args) if args.is_empty() => write!(f, "{op}"),
            Term::App(op, args) => {
                write!(f, "{op}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    sig: &'a Signature,
    vars: &'a [String],
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::input(format!(
            "term parse error at offset {}: {msg} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(self.error("expected identifier"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn term(&mut self) -> Result<Term> {
        let name = self.ident()?;
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let mut args = Vec::new();
            if self.peek() == Some(b')') {
                self.pos += 1;
            } else {
                loop {
                    args.push(self.term()?);
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.error("expected ',' or ')'")),
                    }
                }
            }
            let t = Term::App(name, args);
            t.check(self.sig, self.vars)?;
            return Ok(t);
        }
        if self.vars.contains(&name) {
            return Ok(Term::Var(name));
        }
        match self.sig.index_of(&name) {
            Some(k) if self.sig.ops()[k].arity == 0 => Ok(Term::App(name, Vec::new())),
            Some(_) => Err(self.error(&format!("operation {name:?} used without arguments"))),
            None => Err(self.error(&format!("{name:?} is neither a declared variable nor a constant"))),
        }
    }
}

/// All terms of depth ≤ `depth` over `vars`, ordered by depth, then by
/// operation, then lexicographically by argument positions in this list.
/// This is a plain list, not an algebra.
pub fn free_terms(sig: &Signature, vars: &[String], depth: usize) -> Vec<Term> {
    let mut all: Vec<Term> = vars.iter().map(|v| Term::Var(v.clone())).collect();
    let mut depths: Vec<usize> = vec![0; all.len()];
    for d in 1..=depth {
        let prev = all.len();
        let mut fresh = Vec::new();
        for op in sig.ops() {
            if op.arity == 0 {
                if d == 1 {
                    fresh.push(Term::App(op.name.clone(), Vec::new()));
                }
                continue;
            }
            crate::algebra::for_each_tuple(prev, op.arity, |idx| {
                if idx.iter().any(|&i| depths[i] == d - 1) {
                    fresh.push(Term::App(op.name.clone(), idx.iter().map(|&i| all[i].clone()).collect()));
                }
            });
        }
        depths.extend(std::iter::repeat_n(d, fresh.len()));
        all.extend(fresh);
    }
    all
}

pub type Valuation = BTreeMap<String, usize>;

/// Evaluates `t` in `a` under `valuation` (variable name → element index).
pub fn evaluate(t: &Term, a: &OrderedAlgebra, valuation: &Valuation) -> Result<usize> {
    match t {
        Term::Var(v) => {
            let x = *valuation
                .get(v)
                .ok_or_else(|| Error::input(format!("variable {v:?} has no value")))?;
            if x >= a.len() {
                return Err(Error::input(format!("value of {v:?} out of range")));
            }
            Ok(x)
        }
        Term::App(op, args) => {
            let k = a
                .signature()
                .index_of(op)
                .ok_or_else(|| Error::input(format!("unknown operation {op:?}")))?;
            let arity = a.signature().ops()[k].arity;
            if arity != args.len() {
                return Err(Error::input(format!("arity mismatch for {op:?}")));
            }
            let vals = args
                .iter()
                .map(|s| evaluate(s, a, valuation))
                .collect::<Result<Vec<_>>>()?;
            Ok(a.apply(k, &vals))
        }
    }
}

/// Term compiled against a fixed signature and variable list.
enum Compiled {
    Var(usize),
    App(usize, Vec<Compiled>),
}

impl Compiled {
    fn new(t: &Term, sig: &Signature, vars: &[String]) -> Result<Compiled> {
        t.check(sig, vars)?;
        Ok(Self::build(t, sig, vars))
    }

    fn build(t: &Term, sig: &Signature, vars: &[String]) -> Compiled {
        match t {
            Term::Var(v) => Compiled::Var(vars.iter().position(|x| x == v).expect("checked")),
            Term::App(op, args) => Compiled::App(
                sig.index_of(op).expect("checked"),
                args.iter().map(|s| Self::build(s, sig, vars)).collect(),
            ),
        }
    }

    fn eval(&self, a: &OrderedAlgebra, values: &[usize]) -> usize {
        match self {
            Compiled::Var(i) => values[*i],
            Compiled::App(k, args) => {
                let vals: Vec<usize> = args.iter().map(|s| s.eval(a, values)).collect();
                a.apply(*k, &vals)
            }
        }
    }
}

/// `lhs ≤ rhs` with an explicit variable context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequation {
    vars: Vec<String>,
    lhs: Term,
    rhs: Term,
}

impl Inequation {
    pub fn new(vars: Vec<String>, lhs: Term, rhs: Term) -> Result<Self> {
        for v in lhs.variables().into_iter().chain(rhs.variables()) {
            if !vars.iter().any(|x| x == v) {
                return Err(Error::input(format!("variable {v:?} not declared")));
            }
        }
        Ok(Inequation { vars, lhs, rhs })
    }

    pub fn parse(vars: &[&str], lhs: &str, rhs: &str, sig: &Signature) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|v| (*v).to_owned()).collect();
        let l = Term::parse(lhs, sig, &vars)?;
        let r = Term::parse(rhs, sig, &vars)?;
        Self::new(vars, l, r)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }
}

impl fmt::Display for Inequation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <= {}", self.lhs, self.rhs)
    }
}

/// A signature with a finite set of inequations.
#[derive(Clone, Debug)]
pub struct VarietyPresentation {
    pub signature: Arc<Signature>,
    pub inequations: Vec<Inequation>,
}

impl VarietyPresentation {
    pub fn new(signature: Arc<Signature>, inequations: Vec<Inequation>) -> Result<Self> {
        for q in &inequations {
            q.lhs.check(&signature, &q.vars)?;
            q.rhs.check(&signature, &q.vars)?;
        }
        Ok(VarietyPresentation {
            signature,
            inequations,
        })
    }

    /// Satisfies every inequation; returns the index and witness of the first failure.
    pub fn check(&self, a: &OrderedAlgebra) -> Result<Option<(usize, Satisfaction)>> {
        for (i, q) in self.inequations.iter().enumerate() {
            let s = satisfies(a, q)?;
            if !s.holds {
                return Ok(Some((i, s)));
            }
        }
        Ok(None)
    }

    pub fn holds_in(&self, a: &OrderedAlgebra) -> Result<bool> {
        Ok(self.check(a)?.is_none())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Satisfaction {
    pub holds: bool,
    /// Least failing valuation, variables in declaration order, values as labels.
    pub witness: Option<Vec<(String, String)>>,
}

/// Whether `lhs ≤ rhs` under every valuation; valuations are scanned in
/// lexicographic order so the witness is the least failing one.
pub fn satisfies(a: &OrderedAlgebra, ineq: &Inequation) -> Result<Satisfaction> {
    let sig = a.signature();
    let lhs = Compiled::new(&ineq.lhs, sig, &ineq.vars)?;
    let rhs = Compiled::new(&ineq.rhs, sig, &ineq.vars)?;
    let mut witness = None;
    crate::algebra::for_each_tuple(a.len(), ineq.vars.len(), |vals| {
        if witness.is_some() {
            return;
        }
        if !a.carrier().le(lhs.eval(a, vals), rhs.eval(a, vals)) {
            witness = Some(
                ineq.vars
                    .iter()
                    .zip(vals)
                    .map(|(v, &x)| (v.clone(), a.carrier().label(x).to_owned()))
                    .collect(),
            );
        }
    });
    Ok(Satisfaction {
        holds: witness.is_none(),
        witness,
    })
}
