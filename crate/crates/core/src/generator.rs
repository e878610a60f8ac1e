//! Hom-posets, copower supports, covers and projectivity at instance level,
//! tensors `P ⊗ G` in `Pos`, and the hom-algebra `EK` on `Pos(G, K)`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{for_each_hom_table, for_each_tuple, Homomorphism, OperationSymbol, OrderedAlgebra, Signature};
use crate::colimit::coinserter_pos;
use crate::error::{Error, Result, Witness};
use crate::poset::{
    backtrack, connected_components, coproduct, earlier_neighbours, for_each_monotone_table, Coproduct, FinitePoset,
    MonotoneMap,
};

/// `hom(G, X)` ordered pointwise; `tables[i]` is the map at element `i`,
/// labelled `<x0,x1,...>` by its values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPoset {
    pub poset: FinitePoset,
    pub tables: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl HomPoset {
    fn build(cod: &FinitePoset, tables: Vec<Vec<usize>>) -> Self {
        let k = tables.len();
        let mut rel = vec![false; k * k];
        for i in 0..k {
            for j in 0..k {
                rel[i * k + j] = tables[i].iter().zip(&tables[j]).all(|(&a, &b)| cod.le(a, b));
            }
        }
        let labels = tables
            .iter()
            .map(|t| format!("<{}>", t.iter().map(|&v| cod.label(v)).collect::<Vec<_>>().join(",")))
            .collect();
        let index = tables.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        HomPoset {
            poset: FinitePoset::from_closed(labels, rel),
            tables,
            index,
        }
    }

    pub fn index_of(&self, table: &[usize]) -> Option<usize> {
        self.index.get(table).copied()
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }
}

pub fn hom_poset(g: &FinitePoset, x: &FinitePoset) -> HomPoset {
    let mut tables = Vec::new();
    for_each_monotone_table(g, x, |t| tables.push(t.to_vec()));
    HomPoset::build(x, tables)
}

/// Homomorphisms `G → X` ordered pointwise.
pub fn hom_poset_alg(g: &OrderedAlgebra, x: &OrderedAlgebra) -> Result<HomPoset> {
    if !g.same_signature(x) {
        return Err(Error::input("hom-poset between algebras of different signatures"));
    }
    let mut tables = Vec::new();
    for_each_hom_table(g, x, |t| {
        tables.push(t.to_vec());
        true
    });
    Ok(HomPoset::build(x.carrier(), tables))
}

/// `M · G`: the coproduct of `m` copies of `G`.
pub fn copower(g: &FinitePoset, m: usize) -> Coproduct {
    coproduct(&vec![g.clone(); m])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportResult {
    /// Summand indices meeting the image.
    pub support: Vec<usize>,
    /// Number of connected components of `G`.
    pub component_bound: usize,
    pub holds: bool,
}

/// Which summands of the copower `cop` the map `f: G → M·G` touches.
pub fn support_analysis(f: &MonotoneMap, cop: &Coproduct) -> Result<SupportResult> {
    if f.cod() != &cop.object {
        return Err(Error::input("support: map codomain is not the given copower"));
    }
    if (0..cop.summand_count()).any(|i| cop.summand(i) != f.dom()) {
        return Err(Error::input("support: codomain is not a copower of the map's domain"));
    }
    let support: BTreeSet<usize> = f.table().iter().map(|&y| cop.locate(y).0).collect();
    let component_bound = connected_components(f.dom()).len();
    Ok(SupportResult {
        holds: support.len() <= component_bound,
        support: support.into_iter().collect(),
        component_bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverResult {
    pub holds: bool,
    /// Least element of `X` outside every image.
    pub witness: Option<String>,
}

/// Whether the morphisms `G → X` are jointly surjective.
pub fn canonical_cover_check(g: &OrderedAlgebra, x: &OrderedAlgebra) -> Result<CoverResult> {
    if !g.same_signature(x) {
        return Err(Error::input("cover: algebras of different signatures"));
    }
    let mut hit = vec![false; x.len()];
    for_each_hom_table(g, x, |t| {
        for &v in t {
            hit[v] = true;
        }
        true
    });
    let missing = hit.iter().position(|&h| !h);
    Ok(CoverResult {
        holds: missing.is_none(),
        witness: missing.map(|m| x.carrier().label(m).to_owned()),
    })
}

pub fn canonical_cover_check_pos(g: &FinitePoset, x: &FinitePoset) -> CoverResult {
    canonical_cover_check(&OrderedAlgebra::from_poset(g.clone()), &OrderedAlgebra::from_poset(x.clone()))
        .expect("posets share the empty signature")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectivityResult {
    pub holds: bool,
    /// Least morphism `G → B` (as labels) with no lift along `e`.
    pub witness: Option<Vec<String>>,
}

/// Whether every morphism `G → B` lifts along the surjection `e: A → B`.
pub fn is_subregular_projective_instance(g: &OrderedAlgebra, e: impl Into<Homomorphism>) -> Result<ProjectivityResult> {
    let e = e.into();
    if !g.same_signature(e.dom()) {
        return Err(Error::input("projectivity: generator and map have different signatures"));
    }
    if !e.is_surjective() {
        let miss = (0..e.cod().len()).find(|y| !e.table().contains(y)).expect("not surjective");
        return Err(Error::precondition(
            "map is not surjective",
            Some(Witness::elements([e.cod().carrier().label(miss)])),
        ));
    }
    let mut lifted: HashSet<Vec<usize>> = HashSet::new();
    for_each_hom_table(g, e.dom(), |l| {
        lifted.insert(l.iter().map(|&a| e.apply(a)).collect());
        true
    });
    let mut witness = None;
    for_each_hom_table(g, e.cod(), |t| {
        if lifted.contains(t) {
            return true;
        }
        witness = Some(t.iter().map(|&v| e.cod().carrier().label(v).to_owned()).collect());
        false
    });
    Ok(ProjectivityResult {
        holds: witness.is_none(),
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReflectsIsoResult {
    /// `hom(G, h)` is an order isomorphism.
    pub antecedent: bool,
    /// `h` is an isomorphism.
    pub consequent: bool,
    pub holds: bool,
}

pub fn reflects_iso_instance(g: &OrderedAlgebra, h: impl Into<Homomorphism>) -> Result<ReflectsIsoResult> {
    let h = h.into();
    let from = hom_poset_alg(g, h.dom())?;
    let to = hom_poset_alg(g, h.cod())?;
    let table: Vec<usize> = from
        .tables
        .iter()
        .map(|t| {
            let c: Vec<usize> = t.iter().map(|&a| h.apply(a)).collect();
            to.index_of(&c).expect("composite of homomorphisms")
        })
        .collect();
    let post = MonotoneMap::new(from.poset.clone(), to.poset.clone(), table)?;
    let antecedent = post.is_isomorphism();
    let consequent = h.is_isomorphism();
    Ok(ReflectsIsoResult {
        antecedent,
        consequent,
        holds: !antecedent || consequent,
    })
}

/// `P ⊗ G` as the coinserter of `R·G ⇉ |P|·G` over the order pairs `R` of
/// `P`, with components `c_x = c ∘ inj_x`.
#[derive(Clone, Debug)]
pub struct TensorResult {
    pub object: FinitePoset,
    /// The coinserter arrow `|P|·G → C`.
    pub arrow: MonotoneMap,
    pub components: Vec<MonotoneMap>,
    /// `x ↦ c_x` into `hom(G, C)`.
    pub unit_witness: MonotoneMap,
    pub hom: HomPoset,
}

pub fn tensor_pos(p: &FinitePoset, g: &FinitePoset) -> Result<TensorResult> {
    let r: Vec<(usize, usize)> = (0..p.len())
        .flat_map(|x| (0..p.len()).map(move |y| (x, y)))
        .filter(|&(x, y)| p.le(x, y))
        .collect();
    let rg = copower(g, r.len());
    let pg = copower(g, p.len());
    let ng = g.len();
    let leg = |pick: fn(&(usize, usize)) -> usize| -> Vec<usize> {
        r.iter().flat_map(|pair| (0..ng).map(move |a| pick(pair) * ng + a)).collect()
    };
    let f0 = MonotoneMap::new(rg.object.clone(), pg.object.clone(), leg(|e| e.0))?;
    let f1 = MonotoneMap::new(rg.object.clone(), pg.object.clone(), leg(|e| e.1))?;
    let c = coinserter_pos(&f0, &f1)?;
    let arrow = c.arrow_map();
    let object = c.poset().clone();
    let components: Vec<MonotoneMap> = pg.injections.iter().map(|inj| arrow.compose(inj)).collect::<Result<_>>()?;
    let hom = hom_poset(g, &object);
    let unit = components
        .iter()
        .map(|cx| hom.index_of(cx.table()).expect("component is monotone"))
        .collect();
    let unit_witness = MonotoneMap::new(p.clone(), hom.poset.clone(), unit)?;
    Ok(TensorResult {
        object,
        arrow,
        components,
        unit_witness,
        hom,
    })
}

/// `u: C → X` to `x ↦ u ∘ c_x`, a monotone map `P → hom(G, X)`.
pub fn transpose(t: &TensorResult, hx: &HomPoset, u: &MonotoneMap) -> Result<MonotoneMap> {
    if u.dom() != &t.object {
        return Err(Error::input("transpose: map does not start at the tensor"));
    }
    let p = t.unit_witness.dom();
    let table = t
        .components
        .iter()
        .map(|cx| {
            let comp: Vec<usize> = cx.table().iter().map(|&z| u.apply(z)).collect();
            hx.index_of(&comp)
                .ok_or_else(|| Error::input("transpose: hom-poset does not match the map's codomain"))
        })
        .collect::<Result<Vec<_>>>()?;
    MonotoneMap::new(p.clone(), hx.poset.clone(), table)
}

/// Inverse of [`transpose`]: `v: P → hom(G, X)` to the map `C → X` with
/// `c(x, a) ↦ v(x)(a)`; errors if that is not well defined or not monotone.
pub fn untranspose(t: &TensorResult, hx: &HomPoset, x: &FinitePoset, v: &MonotoneMap) -> Result<MonotoneMap> {
    if v.cod() != &hx.poset || v.dom() != t.unit_witness.dom() {
        return Err(Error::input("untranspose: map does not go P → hom(G, X)"));
    }
    let ng = t.components.first().map_or(0, |c| c.dom().len());
    let mut table = vec![usize::MAX; t.object.len()];
    for (i, &z) in t.arrow.table().iter().enumerate() {
        let (px, a) = (i / ng, i % ng);
        let val = hx.tables[v.apply(px)][a];
        if table[z] != usize::MAX && table[z] != val {
            return Err(Error::precondition(
                "untranspose: not constant on a coinserter class",
                Some(Witness::elements([t.object.label(z)])),
            ));
        }
        table[z] = val;
    }
    MonotoneMap::new(t.object.clone(), x.clone(), table)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub holds: bool,
    pub targets_checked: usize,
    pub failure: Option<String>,
}

/// Checks `hom(P ⊗ G, X) ≅ Pos(P, hom(G, X))` for each `X`: both directions
/// monotone, mutually inverse, and order-reflecting.
pub fn verify_tensor_adjunction(t: &TensorResult, g: &FinitePoset, targets: &[FinitePoset]) -> Result<AdjunctionReport> {
    let p = t.unit_witness.dom();
    let fail = |i: usize, why: &str| AdjunctionReport {
        holds: false,
        targets_checked: i + 1,
        failure: Some(format!("target {i}: {why}")),
    };
    for (i, x) in targets.iter().enumerate() {
        let hx = hom_poset(g, x);
        let left = crate::poset::enumerate_monotone_maps(&t.object, x);
        let right = crate::poset::enumerate_monotone_maps(p, &hx.poset);
        if left.len() != right.len() {
            return Ok(fail(i, "hom-sets have different sizes"));
        }
        let mut images = Vec::with_capacity(left.len());
        for u in &left {
            let tu = transpose(t, &hx, u)?;
            if &untranspose(t, &hx, x, &tu)? != u {
                return Ok(fail(i, "untranspose ∘ transpose is not the identity"));
            }
            images.push(tu);
        }
        for v in &right {
            let Ok(uv) = untranspose(t, &hx, x, v) else {
                return Ok(fail(i, "a map P → hom(G, X) has no transpose"));
            };
            if &transpose(t, &hx, &uv)? != v {
                return Ok(fail(i, "transpose ∘ untranspose is not the identity"));
            }
        }
        for (a, u) in left.iter().enumerate() {
            for (b, w) in left.iter().enumerate() {
                if u.le_pointwise(w) != images[a].le_pointwise(&images[b]) {
                    return Ok(fail(i, "the bijection is not an order isomorphism"));
                }
            }
        }
    }
    Ok(AdjunctionReport {
        holds: true,
        targets_checked: targets.len(),
        failure: None,
    })
}

/// Default cap on `|hom(G, n·G)|` per arity.
pub const DEFAULT_SIZE_CAP: usize = 5000;

/// `EK`: carrier `hom(G, K)`; an `n`-ary operation for each `σ: G → n·G`,
/// named `s{n}_{k}` for the `k`-th such map, acting by
/// `σ(f_1..f_n) = [f_1..f_n] ∘ σ`.
#[derive(Clone, Debug)]
pub struct HomAlgebra {
    pub base: FinitePoset,
    pub generator: FinitePoset,
    pub arity_bound: usize,
    pub algebra: OrderedAlgebra,
    pub hom: HomPoset,
    /// Per operation, its `σ` as a table into `n·G`.
    pub sigma: Vec<Vec<usize>>,
}

/// The operation symbols of `EK` for a given `G`, with their `σ` tables.
pub fn hom_algebra_signature(g: &FinitePoset, arity_bound: usize, size_cap: usize) -> Result<(Signature, Vec<Vec<usize>>)> {
    let mut ops = Vec::new();
    let mut sigma = Vec::new();
    let (below, above) = earlier_neighbours(g);
    for n in 0..=arity_bound {
        let cop = copower(g, n);
        let q = &cop.object;
        let mut maps: Vec<Vec<usize>> = Vec::new();
        let mut over = false;
        backtrack(
            g.len(),
            q.len(),
            |i, t| {
                let v = t[i];
                below[i].iter().all(|&j| q.le(t[j], v)) && above[i].iter().all(|&j| q.le(v, t[j]))
            },
            |t| {
                if maps.len() == size_cap {
                    over = true;
                    return false;
                }
                maps.push(t.to_vec());
                true
            },
        );
        if over {
            return Err(Error::Resource(format!(
                "hom(G, {n}·G) exceeds the size cap {size_cap} at arity {n}"
            )));
        }
        for (k, t) in maps.into_iter().enumerate() {
            ops.push(OperationSymbol {
                name: format!("s{n}_{k}"),
                arity: n,
            });
            sigma.push(t);
        }
    }
    Ok((Signature::new(ops)?, sigma))
}

pub fn hom_algebra(k: &FinitePoset, g: &FinitePoset, arity_bound: usize, size_cap: usize) -> Result<HomAlgebra> {
    let (sig, sigma) = hom_algebra_signature(g, arity_bound, size_cap)?;
    let hom = hom_poset(g, k);
    let m = hom.len();
    let ng = g.len();
    let mut tables = Vec::with_capacity(sig.len());
    for (op, s) in sig.ops().iter().zip(&sigma) {
        let cells = crate::algebra::table_len(m, op.arity)
            .ok_or_else(|| Error::Resource(format!("operation {} table too large", op.name)))?;
        if cells > 1 << 24 {
            return Err(Error::Resource(format!("operation {} needs {cells} table cells", op.name)));
        }
        let mut table = Vec::with_capacity(cells);
        let mut composite = vec![0usize; ng];
        for_each_tuple(m, op.arity, |fs| {
            for (a, slot) in composite.iter_mut().enumerate() {
                let y = s[a];
                let (i, local) = (y / ng, y % ng);
                *slot = hom.tables[fs[i]][local];
            }
            table.push(hom.index_of(&composite).expect("cotuple of monotone maps is monotone"));
        });
        tables.push(table);
    }
    let algebra = OrderedAlgebra::new(hom.poset.clone(), Arc::new(sig), tables)?;
    Ok(HomAlgebra {
        base: k.clone(),
        generator: g.clone(),
        arity_bound,
        algebra,
        hom,
        sigma,
    })
}

/// `Eh = h ∘ (−): EK → EL`, checked to be a homomorphism.
pub fn post_composition(h: &MonotoneMap, ek: &HomAlgebra, el: &HomAlgebra) -> Result<Homomorphism> {
    if h.dom() != &ek.base || h.cod() != &el.base || ek.generator != el.generator || ek.arity_bound != el.arity_bound {
        return Err(Error::input("post-composition: map does not connect the two hom-algebras"));
    }
    let table = ek
        .hom
        .tables
        .iter()
        .map(|f| {
            let c: Vec<usize> = f.iter().map(|&v| h.apply(v)).collect();
            el.hom.index_of(&c).expect("composite is monotone")
        })
        .collect();
    Homomorphism::new(ek.algebra.clone(), el.algebra.clone(), table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{enumerate_monotone_maps, is_isomorphic, product};

    #[test]
    fn hom_poset_examples() {
        let x = FinitePoset::on_indices(3, &[(0, 1)]).unwrap();
        assert!(is_isomorphic(&hom_poset(&FinitePoset::chain(1), &x).poset, &x));
        let h = hom_poset(&FinitePoset::chain(2), &FinitePoset::chain(2));
        assert!(is_isomorphic(&h.poset, &FinitePoset::chain(3)));
        assert_eq!(hom_poset(&x, &FinitePoset::chain(1)).len(), 1);
        assert_eq!(h.poset.labels(), ["<0,0>", "<0,1>", "<1,1>"]);
    }

    #[test]
    fn support_examples() {
        let g = FinitePoset::antichain(2);
        let cop = copower(&g, 3);
        let maps = enumerate_monotone_maps(&g, &cop.object);
        assert_eq!(maps.len(), 36);
        assert!(maps.iter().all(|f| {
            let s = support_analysis(f, &cop).unwrap();
            s.holds && s.support.len() <= 2
        }));

        let c = FinitePoset::chain(2);
        let cop = copower(&c, 3);
        for f in enumerate_monotone_maps(&c, &cop.object) {
            assert_eq!(support_analysis(&f, &cop).unwrap().support.len(), 1);
        }
        let s = support_analysis(&cop.injections[2], &cop).unwrap();
        assert_eq!(s.support, vec![2]);

        let other = copower(&FinitePoset::chain(1), 2);
        let f = MonotoneMap::constant(&FinitePoset::chain(1), &other.object, 0).unwrap();
        assert!(support_analysis(&f, &cop).is_err());
    }

    #[test]
    fn cover_examples() {
        let x = FinitePoset::on_indices(3, &[(0, 1)]).unwrap();
        assert!(canonical_cover_check_pos(&FinitePoset::chain(1), &x).holds);
        assert!(canonical_cover_check_pos(&FinitePoset::chain(2), &FinitePoset::antichain(2)).holds);

        // With a constant c, homs from the 1-element algebra hit only c's value.
        let sig = Arc::new(Signature::from_pairs(&[("c", 0)]).unwrap());
        let g = OrderedAlgebra::new(FinitePoset::chain(1), sig.clone(), vec![vec![0]]).unwrap();
        let x = OrderedAlgebra::new(FinitePoset::antichain(2), sig, vec![vec![0]]).unwrap();
        let r = canonical_cover_check(&g, &x).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness.as_deref(), Some("1"));
    }

    #[test]
    fn projectivity_examples() {
        let c2 = FinitePoset::chain(2);
        let d = FinitePoset::discrete(["a", "b"]).unwrap();
        let e = MonotoneMap::new(d, c2.clone(), vec![0, 1]).unwrap();
        let one = OrderedAlgebra::from_poset(FinitePoset::chain(1));
        assert!(is_subregular_projective_instance(&one, &e).unwrap().holds);
        let g = OrderedAlgebra::from_poset(c2.clone());
        let r = is_subregular_projective_instance(&g, &e).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap(), ["0", "1"]);
        assert!(is_subregular_projective_instance(&g, MonotoneMap::identity(&c2)).unwrap().holds);

        let k = MonotoneMap::constant(&c2, &c2, 0).unwrap();
        assert!(matches!(is_subregular_projective_instance(&g, &k), Err(Error::Precondition { .. })));
    }

    #[test]
    fn reflects_iso_examples() {
        let c2 = FinitePoset::chain(2);
        let one = OrderedAlgebra::from_poset(FinitePoset::chain(1));
        assert!(reflects_iso_instance(&one, MonotoneMap::identity(&c2)).unwrap().holds);
        let k = MonotoneMap::constant(&c2, &c2, 1).unwrap();
        let r = reflects_iso_instance(&one, &k).unwrap();
        assert!(!r.antecedent && r.holds);
        let empty = OrderedAlgebra::from_poset(FinitePoset::empty());
        let r = reflects_iso_instance(&empty, &k).unwrap();
        assert!(r.antecedent && !r.consequent && !r.holds);
    }

    #[test]
    fn tensor_examples() {
        let c2 = FinitePoset::chain(2);
        let v = FinitePoset::on_indices(3, &[(0, 1), (0, 2)]).unwrap();
        let t = tensor_pos(&FinitePoset::chain(1), &v).unwrap();
        assert!(is_isomorphic(&t.object, &v));
        let t = tensor_pos(&c2, &c2).unwrap();
        assert!(is_isomorphic(&t.object, &product(&c2, &c2).object));
        assert!(t.components[0].le_pointwise(&t.components[1]));
        assert!(!t.components[1].le_pointwise(&t.components[0]));
        let t = tensor_pos(&FinitePoset::antichain(2), &c2).unwrap();
        assert!(is_isomorphic(&t.object, &copower(&c2, 2).object));
    }

    #[test]
    fn tensor_adjunction_small() {
        let targets: Vec<FinitePoset> = crate::instances::posets_up_to(2);
        for p in crate::instances::posets_up_to(2) {
            for g in crate::instances::posets_up_to(2) {
                let t = tensor_pos(&p, &g).unwrap();
                let r = verify_tensor_adjunction(&t, &g, &targets).unwrap();
                assert!(r.holds, "{:?}", r.failure);
            }
        }
    }

    #[test]
    fn hom_algebra_point_generator() {
        let k = FinitePoset::on_indices(3, &[(0, 1)]).unwrap();
        let e = hom_algebra(&k, &FinitePoset::chain(1), 2, DEFAULT_SIZE_CAP).unwrap();
        assert!(is_isomorphic(e.algebra.carrier(), &k));
        let names: Vec<&str> = e.algebra.signature().ops().iter().map(|o| o.name.as_str()).collect();
        assert_eq!(names, ["s1_0", "s2_0", "s2_1"]);
        // s2_1 picks the second argument.
        assert_eq!(e.algebra.apply(2, &[0, 2]), 2);
        assert_eq!(e.algebra.apply(1, &[0, 2]), 0);

        let one = hom_algebra(&FinitePoset::chain(1), &FinitePoset::chain(2), 2, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(one.algebra.len(), 1);
    }

    #[test]
    fn hom_algebra_size_cap() {
        let g = FinitePoset::antichain(3);
        let err = hom_algebra(&FinitePoset::chain(1), &g, 3, 100).unwrap_err();
        assert!(matches!(err, Error::Resource(_)), "{err}");
    }

    #[test]
    fn post_composition_is_hom() {
        let g = FinitePoset::chain(2);
        let k = FinitePoset::chain(2);
        let l = FinitePoset::antichain(2);
        let ek = hom_algebra(&k, &g, 2, DEFAULT_SIZE_CAP).unwrap();
        let el = hom_algebra(&l, &g, 2, DEFAULT_SIZE_CAP).unwrap();
        let ekk = hom_algebra(&k, &g, 2, DEFAULT_SIZE_CAP).unwrap();
        for h in enumerate_monotone_maps(&k, &l) {
            post_composition(&h, &ek, &el).unwrap();
        }
        let id = post_composition(&MonotoneMap::identity(&k), &ek, &ekk).unwrap();
        assert!(id.table().iter().enumerate().all(|(i, &v)| i == v));
    }
}
