//! Exact density computations on finite Galois-image models.
//!
//! Modeling axiom: for a finite image, the Dirichlet density of the set of
//! unramified places whose Frobenius class satisfies a condition equals the
//! proportion of group elements satisfying it (the lower, upper, and natural
//! densities coincide, so every report is exact). All densities here are
//! rationals obtained by class counting; no primes are involved.

use crate::error::{Error, Result};
use crate::exactnum::{CycNum, Rat};
use crate::charfn::ClassFunction;
use crate::group::FiniteGroup;

/// An exact density statement, with the classes that contribute to it.
#[derive(Clone, Debug)]
pub struct DensityReport {
    pub density: Rat,
    pub total_order: usize,
    /// (class index, class size, values of the inputs on that class).
    pub contributing: Vec<(usize, usize, Vec<CycNum>)>,
    pub complement_density: Rat,
}

impl DensityReport {
    fn from_classes(
        group: &FiniteGroup,
        contributing: Vec<(usize, usize, Vec<CycNum>)>,
    ) -> DensityReport {
        let total_order = group.order();
        let hit: usize = contributing.iter().map(|&(_, size, _)| size).sum();
        let density = Rat::new(hit as i64, total_order as i64);
        DensityReport {
            density,
            total_order,
            contributing,
            complement_density: Rat::from_integer(1) - density,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "density": [*self.density.numer(), *self.density.denom()],
            "total_order": self.total_order,
            "classes": self.contributing.iter().map(|(idx, size, vals)| {
                serde_json::json!({
                    "class": idx,
                    "size": size,
                    "values": vals.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
                })
            }).collect::<Vec<_>>(),
        })
    }
}

/// Density of {g : χ1(g) = χ2(g)}, weighted by class sizes.
pub fn agreement_density(chi1: &ClassFunction, chi2: &ClassFunction) -> Result<DensityReport> {
    if !FiniteGroup::same(chi1.group(), chi2.group()) {
        return Err(Error::GroupMismatch);
    }
    let g = chi1.group();
    let mut contributing = Vec::new();
    for (c, class) in g.classes().iter().enumerate() {
        if chi1.value(c) == chi2.value(c) {
            contributing.push((
                c,
                class.len(),
                vec![chi1.value(c).clone(), chi2.value(c).clone()],
            ));
        }
    }
    Ok(DensityReport::from_classes(g, contributing))
}

/// Exact joint distribution of the value tuples of several class functions,
/// as (tuple of values, density) with deterministic ordering.
pub fn value_distribution(chis: &[ClassFunction]) -> Result<Vec<(Vec<CycNum>, Rat)>> {
    let first = chis
        .first()
        .ok_or_else(|| Error::InvalidArgument("at least one class function required".into()))?;
    let g = first.group();
    for chi in chis {
        if !FiniteGroup::same(chi.group(), g) {
            return Err(Error::GroupMismatch);
        }
    }
    let mut acc: Vec<(Vec<CycNum>, usize)> = Vec::new();
    for (c, class) in g.classes().iter().enumerate() {
        let tuple: Vec<CycNum> = chis.iter().map(|chi| chi.value(c).clone()).collect();
        match acc.iter_mut().find(|(t, _)| t == &tuple) {
            Some((_, n)) => *n += class.len(),
            None => acc.push((tuple, class.len())),
        }
    }
    acc.sort_by_key(|(t, _)| t.iter().map(|v| v.key()).collect::<Vec<_>>());
    let order = g.order() as i64;
    Ok(acc
        .into_iter()
        .map(|(t, n)| (t, Rat::new(n as i64, order)))
        .collect())
}

/// Density of {g : χ(g) = 0}.
pub fn zero_trace_density(chi: &ClassFunction) -> Rat {
    let g = chi.group();
    let hit: usize = g
        .classes()
        .iter()
        .enumerate()
        .filter(|(c, _)| chi.value(*c).is_zero())
        .map(|(_, class)| class.len())
        .sum();
    Rat::new(hit as i64, g.order() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charfn::{galois_twist_char, pullback, tensor, ClassFunction};
    use crate::exactnum::rat;
    use crate::group::{builtin, fibered_product, Builtin};
    use std::sync::Arc;

    fn defining_char(which: Builtin) -> ClassFunction {
        let b = builtin(which).unwrap();
        ClassFunction::from_traces(Arc::clone(&b.group), b.traces.as_ref().unwrap()).unwrap()
    }

    #[test]
    fn octahedral_agreement() {
        let eta = defining_char(Builtin::BO);
        let etap = galois_twist_char(&eta, 3).unwrap();
        let rep = agreement_density(&eta, &etap).unwrap();
        assert_eq!(rep.density, rat(3, 4));
        assert_eq!(rep.density + rep.complement_density, Rat::from_integer(1));
        // Self-agreement is 1.
        assert_eq!(agreement_density(&eta, &eta).unwrap().density, Rat::from_integer(1));
    }

    #[test]
    fn icosahedral_agreement_and_zero_density() {
        let eta = defining_char(Builtin::BI);
        let etap = galois_twist_char(&eta, 2).unwrap();
        assert_eq!(agreement_density(&eta, &etap).unwrap().density, rat(3, 5));
        assert_eq!(zero_trace_density(&eta), rat(1, 4));
    }

    #[test]
    fn bt_zero_density() {
        let rho = defining_char(Builtin::BT);
        assert_eq!(zero_trace_density(&rho), rat(1, 4));
        let triv = ClassFunction::trivial(Arc::clone(rho.group()));
        assert_eq!(zero_trace_density(&triv), Rat::from_integer(0));
    }

    fn s3_pair() -> (ClassFunction, ClassFunction) {
        let s3 = builtin(Builtin::S3).unwrap();
        let q = &s3.quotients[0].1;
        let (_, p1, p2) = fibered_product(q, q).unwrap();
        let traces: Vec<CycNum> = (0..6)
            .map(|g| match s3.group.element_order(g) {
                1 => CycNum::from_int(2),
                2 => CycNum::zero(),
                _ => CycNum::from_int(-1),
            })
            .collect();
        let std2 = ClassFunction::from_traces(Arc::clone(&s3.group), &traces).unwrap();
        (pullback(&std2, &p1).unwrap(), pullback(&std2, &p2).unwrap())
    }

    #[test]
    fn s3_pair_agreement_and_distribution() {
        let (chi1, chi2) = s3_pair();
        let rep = agreement_density(&chi1, &chi2).unwrap();
        assert_eq!(rep.density, rat(7, 9));
        let dist = value_distribution(&[chi1.clone(), chi2.clone()]).unwrap();
        let lookup = |a: i64, b: i64| -> Rat {
            dist.iter()
                .find(|(t, _)| t[0] == CycNum::from_int(a) && t[1] == CycNum::from_int(b))
                .map(|(_, d)| *d)
                .unwrap()
        };
        assert_eq!(lookup(2, 2), rat(1, 18));
        assert_eq!(lookup(2, -1), rat(2, 18));
        assert_eq!(lookup(-1, 2), rat(2, 18));
        assert_eq!(lookup(-1, -1), rat(4, 18));
        assert_eq!(lookup(0, 0), rat(9, 18));
        assert_eq!(dist.len(), 5);
        // Distribution sums to 1 and matches the agreement density on the
        // diagonal entries.
        let total: Rat = dist.iter().map(|(_, d)| *d).sum();
        assert_eq!(total, Rat::from_integer(1));
        let diag: Rat = dist
            .iter()
            .filter(|(t, _)| t[0] == t[1])
            .map(|(_, d)| *d)
            .sum();
        assert_eq!(diag, rep.density);
    }

    #[test]
    fn single_trivial_distribution() {
        let g = builtin(Builtin::Q8).unwrap().group;
        let dist = value_distribution(&[ClassFunction::trivial(g)]).unwrap();
        assert_eq!(dist.len(), 1);
        assert_eq!(dist[0].1, Rat::from_integer(1));
    }

    #[test]
    fn densities_invariant_under_simultaneous_galois_twist() {
        let eta = defining_char(Builtin::BI);
        let etap = galois_twist_char(&eta, 2).unwrap();
        let d = agreement_density(&eta, &etap).unwrap().density;
        let d_tw = agreement_density(
            &galois_twist_char(&eta, 2).unwrap(),
            &galois_twist_char(&etap, 2).unwrap(),
        )
        .unwrap()
        .density;
        assert_eq!(d, d_tw);
    }

    #[test]
    fn quadratic_twist_agreement_decomposition() {
        // agreement(χ, χ·λ) = density(λ=1) + density(χ=0 and λ=-1).
        for which in [Builtin::BT, Builtin::BI] {
            let b = builtin(which).unwrap();
            let c2 = builtin(Builtin::C(2)).unwrap().group;
            let (p, p1, p2) = crate::group::direct_product(&b.group, &c2).unwrap();
            let chi = pullback(
                &ClassFunction::from_traces(Arc::clone(&b.group), b.traces.as_ref().unwrap())
                    .unwrap(),
                &p1,
            )
            .unwrap();
            let sgn_vals: Vec<CycNum> = (0..p.order())
                .map(|g| {
                    if p2.apply(g) == c2.identity() {
                        CycNum::one()
                    } else {
                        CycNum::from_int(-1)
                    }
                })
                .collect();
            let lam = ClassFunction::from_traces(Arc::clone(&p), &sgn_vals).unwrap();
            let lhs = agreement_density(&chi, &tensor(&chi, &lam).unwrap())
                .unwrap()
                .density;
            let lam_one = agreement_density(&lam, &ClassFunction::trivial(Arc::clone(&p)))
                .unwrap()
                .density;
            let mixed: usize = p
                .classes()
                .iter()
                .enumerate()
                .filter(|(c, _)| {
                    chi.value(*c).is_zero() && lam.value(*c) == &CycNum::from_int(-1)
                })
                .map(|(_, cl)| cl.len())
                .sum();
            let rhs = lam_one + Rat::new(mixed as i64, p.order() as i64);
            assert_eq!(lhs, rhs);
            assert_eq!(lhs, rat(5, 8));
        }
    }
}
