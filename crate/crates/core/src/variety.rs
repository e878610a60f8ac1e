//! Closure of the models of a presentation under products, subalgebras and
//! homomorphic images, checked over a finite family.

use serde::Serialize;

use crate::algebra::{closed_subsets, for_each_hom_table, image_factorization, product_algebra, subalgebra, Homomorphism, OrderedAlgebra};
use crate::error::{Error, Result};
use crate::term::VarietyPresentation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BirkhoffViolation {
    /// `product`, `subalgebra`, `surjective-image` or `image`.
    pub kind: String,
    /// Family indices involved.
    pub instances: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BirkhoffReport {
    pub family_size: usize,
    /// Family indices of the models.
    pub satisfying: Vec<usize>,
    pub products_checked: usize,
    pub subalgebras_checked: usize,
    pub images_checked: usize,
    pub violations: Vec<BirkhoffViolation>,
    pub closed: bool,
}

fn failure(v: &VarietyPresentation, a: &OrderedAlgebra) -> Result<Option<String>> {
    Ok(v.check(a)?.map(|(i, s)| {
        let val = s
            .witness
            .unwrap_or_default()
            .into_iter()
            .map(|(x, e)| format!("{x}={e}"))
            .collect::<Vec<_>>()
            .join(",");
        format!("{} fails at {val}", v.inequations[i])
    }))
}

/// Products of model pairs, all subalgebras of models, codomains of
/// surjective homomorphisms from models into the family, and images of all
/// homomorphisms from models into the family must be models.
pub fn birkhoff_closure_check(v: &VarietyPresentation, family: &[OrderedAlgebra]) -> Result<BirkhoffReport> {
    if let Some(i) = family.iter().position(|a| **a.signature() != *v.signature) {
        return Err(Error::input(format!("family member {i} has a different signature")));
    }
    let mut report = BirkhoffReport {
        family_size: family.len(),
        ..Default::default()
    };
    for (i, a) in family.iter().enumerate() {
        if v.holds_in(a)? {
            report.satisfying.push(i);
        }
    }
    let sat = report.satisfying.clone();

    for &i in &sat {
        for &j in &sat {
            let p = product_algebra(&family[i], &family[j])?;
            report.products_checked += 1;
            if let Some(d) = failure(v, &p.object)? {
                report.violations.push(BirkhoffViolation {
                    kind: "product".into(),
                    instances: vec![i, j],
                    detail: d,
                });
            }
        }
    }

    for &i in &sat {
        for s in closed_subsets(&family[i])? {
            let sub = subalgebra(&family[i], &s)?;
            report.subalgebras_checked += 1;
            if let Some(d) = failure(v, &sub.algebra)? {
                report.violations.push(BirkhoffViolation {
                    kind: "subalgebra".into(),
                    instances: vec![i],
                    detail: format!("subset {s:?}: {d}"),
                });
            }
        }
    }

    for &i in &sat {
        for (j, b) in family.iter().enumerate() {
            let b_holds = sat.binary_search(&j).is_ok();
            let mut tables = Vec::new();
            for_each_hom_table(&family[i], b, |t| {
                tables.push(t.to_vec());
                true
            });
            for t in tables {
                let h = Homomorphism::new_unchecked(family[i].clone(), b.clone(), t);
                report.images_checked += 1;
                if h.is_surjective() && !b_holds {
                    report.violations.push(BirkhoffViolation {
                        kind: "surjective-image".into(),
                        instances: vec![i, j],
                        detail: format!("hom {:?}", h.table()),
                    });
                }
                let img = image_factorization(&h);
                if let Some(d) = failure(v, &img.image)? {
                    report.violations.push(BirkhoffViolation {
                        kind: "image".into(),
                        instances: vec![i, j],
                        detail: format!("hom {:?}: {d}", h.table()),
                    });
                }
            }
        }
    }
    report.closed = report.violations.is_empty();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Signature;
    use crate::instances::algebras_up_to;
    use crate::term::Inequation;
    use std::sync::Arc;

    fn binary() -> Arc<Signature> {
        Arc::new(Signature::from_pairs(&[("m", 2)]).unwrap())
    }

    #[test]
    fn trivial_and_empty_presentations() {
        let sig = binary();
        let fam = algebras_up_to(&sig, 2).unwrap();
        let refl = VarietyPresentation::new(sig.clone(), vec![Inequation::parse(&["x"], "x", "x", &sig).unwrap()]).unwrap();
        let r = birkhoff_closure_check(&refl, &fam).unwrap();
        assert!(r.closed);
        assert_eq!(r.satisfying.len(), fam.len());
        let none = VarietyPresentation::new(sig.clone(), vec![]).unwrap();
        assert!(birkhoff_closure_check(&none, &fam).unwrap().closed);
    }

    #[test]
    fn lower_bound_presentation_is_closed() {
        let sig = binary();
        let v = VarietyPresentation::new(
            sig.clone(),
            vec![
                Inequation::parse(&["x", "y"], "m(x,y)", "x", &sig).unwrap(),
                Inequation::parse(&["x", "y"], "m(x,y)", "y", &sig).unwrap(),
            ],
        )
        .unwrap();
        let fam = algebras_up_to(&sig, 2).unwrap();
        let r = birkhoff_closure_check(&v, &fam).unwrap();
        assert!(r.closed, "{:?}", r.violations);
        assert!(r.satisfying.len() > 1);
        assert!(r.products_checked > 0 && r.images_checked > 0);
    }

    #[test]
    fn rejects_mixed_signatures() {
        let sig = binary();
        let v = VarietyPresentation::new(sig, vec![]).unwrap();
        let other = OrderedAlgebra::from_poset(crate::poset::FinitePoset::chain(1));
        assert!(birkhoff_closure_check(&v, &[other]).is_err());
    }
}
