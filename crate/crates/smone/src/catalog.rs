//! Named constructions of the example pairs: for each, the finite group
//! model, the two degree-2 characters, the expected exact agreement density,
//! and the twist-equivalence status. `verify_all` recomputes everything from
//! scratch and reports per-entry pass/fail.

use std::sync::Arc;

use crate::charfn::{
    galois_twist_char, pullback, tensor, twist_equivalent, ClassFunction, TwistReport,
};
use crate::chebotarev::agreement_density;
use crate::error::{Error, Result};
use crate::exactnum::{rat, CycNum, Rat};
use crate::group::{builtin, direct_product, fibered_product, Builtin, FiniteGroup, GroupHom};
use crate::lpole::Theorem;

/// Twist-equivalence status claimed for a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistClaim {
    /// χ2 = χ1·λ for some finite-order linear λ.
    TwistEquivalent,
    /// No linear twist works, and an absolute-value witness class rules out
    /// any unitary twist.
    NotTwistEquivalent,
    /// No twist claim is made (dihedral pair, or no finite model).
    NotApplicable,
}

impl TwistClaim {
    pub fn as_str(self) -> &'static str {
        match self {
            TwistClaim::TwistEquivalent => "twist_equivalent",
            TwistClaim::NotTwistEquivalent => "not_twist_equivalent",
            TwistClaim::NotApplicable => "not_applicable",
        }
    }
}

/// A concrete finite model of a pair of degree-2 characters.
#[derive(Clone, Debug)]
pub struct PairModel {
    pub group: Arc<FiniteGroup>,
    pub chi1: ClassFunction,
    pub chi2: ClassFunction,
}

/// A catalog entry. `model` is `None` for the analytic-only entry.
#[derive(Clone, Debug)]
pub struct ExamplePair {
    pub name: &'static str,
    pub model: Option<PairModel>,
    pub expected_agreement: Rat,
    pub twist_claim: TwistClaim,
    pub note: &'static str,
}

pub const NAMES: [&str; 8] = [
    "serre-q8",
    "s3-pair",
    "octahedral",
    "tetrahedral-twist",
    "tetrahedral-pair",
    "icosahedral",
    "icosahedral-twist",
    "nonpolyhedral-note",
];

fn defining_char(b: &crate::group::BuiltGroup) -> Result<ClassFunction> {
    let traces = b
        .traces
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("group has no matrix model".into()))?;
    ClassFunction::from_traces(Arc::clone(&b.group), traces)
}

/// The order-2 linear character of G×C2 that is the sign of the second
/// coordinate.
fn second_factor_sign(p: &Arc<FiniteGroup>, p2: &GroupHom) -> Result<ClassFunction> {
    let c2_id = p2.target.identity();
    let vals: Vec<CycNum> = (0..p.order())
        .map(|g| {
            if p2.apply(g) == c2_id {
                CycNum::one()
            } else {
                CycNum::from_int(-1)
            }
        })
        .collect();
    ClassFunction::from_traces(Arc::clone(p), &vals)
}

/// The irreducible degree-2 character of S3 (standard representation).
fn s3_standard(s3: &Arc<FiniteGroup>) -> Result<ClassFunction> {
    let vals: Vec<CycNum> = (0..s3.order())
        .map(|g| match s3.element_order(g) {
            1 => CycNum::from_int(2),
            2 => CycNum::zero(),
            _ => CycNum::from_int(-1),
        })
        .collect();
    ClassFunction::from_traces(Arc::clone(s3), &vals)
}

fn twisted_pair(which: Builtin, agreement: Rat, note: &'static str) -> Result<ExamplePair> {
    let b = builtin(which)?;
    let c2 = builtin(Builtin::C(2))?.group;
    let (p, p1, p2) = direct_product(&b.group, &c2)?;
    let chi = pullback(&defining_char(&b)?, &p1)?;
    let sgn = second_factor_sign(&p, &p2)?;
    let chi2 = tensor(&chi, &sgn)?;
    Ok(ExamplePair {
        name: match which {
            Builtin::BT => "tetrahedral-twist",
            Builtin::BI => "icosahedral-twist",
            _ => unreachable!("only BT and BI quadratic-twist entries exist"),
        },
        model: Some(PairModel { group: p, chi1: chi, chi2 }),
        expected_agreement: agreement,
        twist_claim: TwistClaim::TwistEquivalent,
        note,
    })
}

/// Construct a catalog entry by name.
pub fn example(name: &str) -> Result<ExamplePair> {
    match name {
        "serre-q8" => {
            // Dihedral pair differing by a quadratic character: the defining
            // character of Q8 and its sign twist on Q8×C2, disagreeing only
            // on the two classes {(±1, -1)}.
            let q8 = builtin(Builtin::Q8)?;
            let c2 = builtin(Builtin::C(2))?.group;
            let (p, p1, p2) = direct_product(&q8.group, &c2)?;
            let chi1 = pullback(&defining_char(&q8)?, &p1)?;
            let sgn = second_factor_sign(&p, &p2)?;
            let chi2 = tensor(&chi1, &sgn)?;
            Ok(ExamplePair {
                name: "serre-q8",
                model: Some(PairModel { group: p, chi1, chi2 }),
                expected_agreement: rat(7, 8),
                twist_claim: TwistClaim::NotApplicable,
                note: "Quaternion-model dihedral pair; disagreement set has \
                       density 1/8. No twist claim is made for dihedral pairs.",
            })
        }
        "s3-pair" => {
            let s3 = builtin(Builtin::S3)?;
            let q = &s3.quotients[0].1;
            let (fp, p1, p2) = fibered_product(q, q)?;
            let std2 = s3_standard(&s3.group)?;
            let chi1 = pullback(&std2, &p1)?;
            let chi2 = pullback(&std2, &p2)?;
            Ok(ExamplePair {
                name: "s3-pair",
                model: Some(PairModel { group: fp, chi1, chi2 }),
                expected_agreement: rat(7, 9),
                twist_claim: TwistClaim::NotTwistEquivalent,
                note: "Two S3 extensions sharing a quadratic subextension; a \
                       witness class carries traces (2, -1), which no unitary \
                       twist can reconcile.",
            })
        }
        "octahedral" => {
            let bo = builtin(Builtin::BO)?;
            let chi1 = defining_char(&bo)?;
            let chi2 = galois_twist_char(&chi1, 3)?;
            Ok(ExamplePair {
                name: "octahedral",
                model: Some(PairModel { group: Arc::clone(&bo.group), chi1, chi2 }),
                expected_agreement: rat(3, 4),
                twist_claim: TwistClaim::TwistEquivalent,
                note: "The two degree-2 characters of the binary octahedral \
                       group exchanged by the conjugation sending sqrt(2) to \
                       -sqrt(2); they differ by the sign character.",
            })
        }
        "tetrahedral-twist" => twisted_pair(
            Builtin::BT,
            rat(5, 8),
            "A tetrahedral character and its quadratic twist agree exactly \
             where the twist is trivial or the trace vanishes.",
        ),
        "tetrahedral-pair" => {
            let bt = builtin(Builtin::BT)?;
            let q = &bt.quotients[0].1;
            let (fp, p1, p2) = fibered_product(q, q)?;
            let rho = defining_char(&bt)?;
            let chi1 = pullback(&rho, &p1)?;
            let chi2 = pullback(&rho, &p2)?;
            Ok(ExamplePair {
                name: "tetrahedral-pair",
                model: Some(PairModel { group: fp, chi1, chi2 }),
                expected_agreement: rat(17, 32),
                twist_claim: TwistClaim::NotTwistEquivalent,
                note: "Two binary tetrahedral extensions sharing the cubic \
                       subextension; the fibered product has order 192 and \
                       102 trace-agreeing elements. A witness class carries \
                       traces (2, 0).",
            })
        }
        "icosahedral" => {
            let bi = builtin(Builtin::BI)?;
            let chi1 = defining_char(&bi)?;
            let chi2 = galois_twist_char(&chi1, 2)?;
            Ok(ExamplePair {
                name: "icosahedral",
                model: Some(PairModel { group: Arc::clone(&bi.group), chi1, chi2 }),
                expected_agreement: rat(3, 5),
                twist_claim: TwistClaim::NotTwistEquivalent,
                note: "The two degree-2 characters of the binary icosahedral \
                       group exchanged by sqrt(5) to -sqrt(5); the golden-ratio \
                       trace classes witness non-twist-equivalence.",
            })
        }
        "icosahedral-twist" => twisted_pair(
            Builtin::BI,
            rat(5, 8),
            "An icosahedral character and its quadratic twist agree exactly \
             where the twist is trivial or the trace vanishes.",
        ),
        "nonpolyhedral-note" => Ok(ExamplePair {
            name: "nonpolyhedral-note",
            model: None,
            expected_agreement: rat(1, 2),
            twist_claim: TwistClaim::NotApplicable,
            note: "A holomorphic-newform pair with agreement density exactly \
                   1/2 exists, but its image is infinite, so no finite model \
                   can realize it; recorded for completeness of the example \
                   list, out of scope for exact computation.",
        }),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

/// One row of a `verify_all` run.
#[derive(Clone, Debug)]
pub struct VerifyEntry {
    pub name: &'static str,
    pub computed_agreement: Option<Rat>,
    pub expected_agreement: Rat,
    pub density_ok: bool,
    pub twist_claim: TwistClaim,
    pub twist_ok: bool,
    pub pass: bool,
}

impl VerifyEntry {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "computed": self.computed_agreement.map(|r| vec![*r.numer(), *r.denom()]),
            "expected": vec![*self.expected_agreement.numer(), *self.expected_agreement.denom()],
            "density_ok": self.density_ok,
            "twist_claim": self.twist_claim.as_str(),
            "twist_ok": self.twist_ok,
            "pass": self.pass,
        })
    }
}

fn check_twist_claim(claim: TwistClaim, report: &TwistReport) -> bool {
    match claim {
        TwistClaim::TwistEquivalent => report.twist.is_some(),
        TwistClaim::NotTwistEquivalent => {
            report.twist.is_none() && report.witness_class.is_some()
        }
        TwistClaim::NotApplicable => true,
    }
}

/// Recompute every catalog entry from scratch. Failures are reported in the
/// entries, not thrown.
pub fn verify_all() -> Result<Vec<VerifyEntry>> {
    let mut out = Vec::with_capacity(NAMES.len());
    for name in NAMES {
        let pair = example(name)?;
        let entry = match &pair.model {
            Some(m) => {
                let computed = agreement_density(&m.chi1, &m.chi2)?.density;
                let density_ok = computed == pair.expected_agreement;
                let report = twist_equivalent(&m.chi1, &m.chi2)?;
                let twist_ok = check_twist_claim(pair.twist_claim, &report);
                VerifyEntry {
                    name: pair.name,
                    computed_agreement: Some(computed),
                    expected_agreement: pair.expected_agreement,
                    density_ok,
                    twist_claim: pair.twist_claim,
                    twist_ok,
                    pass: density_ok && twist_ok,
                }
            }
            None => VerifyEntry {
                name: pair.name,
                computed_agreement: None,
                expected_agreement: pair.expected_agreement,
                density_ok: true,
                twist_claim: pair.twist_claim,
                twist_ok: true,
                pass: true,
            },
        };
        out.push(entry);
    }
    Ok(out)
}

/// Sharpness cross-checks: the exact disagreement density of these entries
/// equals the corresponding worst-case bound.
pub fn sharpness_checks() -> Result<Vec<(&'static str, Rat, Rat, bool)>> {
    let cases = [
        ("octahedral", Theorem::One),
        ("s3-pair", Theorem::Two),
        ("icosahedral", Theorem::ThreeII { c: 1 }),
    ];
    let mut out = Vec::new();
    for (name, theorem) in cases {
        let pair = example(name)?;
        let m = pair.model.as_ref().expect("sharpness entries have models");
        let disagreement = agreement_density(&m.chi1, &m.chi2)?.complement_density;
        let bound = theorem.bound();
        out.push((name, disagreement, bound, disagreement == bound));
    }
    Ok(out)
}
