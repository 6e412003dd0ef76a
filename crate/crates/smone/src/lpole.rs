//! Pole-order ledger at s = 1 for Rankin-Selberg-type products in the
//! finite-image model, k-table computation, the four Clebsch-Gordan trace
//! identities, and the Cauchy-Schwarz density bound calculators.
//!
//! Modeling axiom: minus the order at s = 1 of the L-function attached to a
//! product of two finite-image representations equals the inner product of
//! their characters. Everything here is exact integer or rational arithmetic.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::charfn::{
    adjoint, alt2_det, conj_char, inner_product, is_dihedral_char, linear_characters, sym3,
    tensor, ClassFunction,
};
use crate::error::{Error, Result};
use crate::exactnum::{CycNum, Rat};
use crate::group::FiniteGroup;

/// Where a k-table's entries came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KTableSource {
    /// Computed exactly from a character pair.
    Computed,
    /// A theorem's worst-case table of bounds.
    Assumed,
}

/// The multiplicities k(i,j,k,l) = ⟨χ1^i·χ̄1^j·χ2^k·χ̄2^l, 1⟩ for all tuples
/// with i+j+k+l ≤ 4.
#[derive(Clone, Debug)]
pub struct KTable {
    pub entries: BTreeMap<(u8, u8, u8, u8), u64>,
    pub source: KTableSource,
}

impl KTable {
    pub fn get(&self, t: (u8, u8, u8, u8)) -> u64 {
        *self.entries.get(&t).expect("tuple within total degree 4")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .entries
            .iter()
            .map(|(&(i, j, k, l), &v)| (format!("({i},{j},{k},{l})"), v.into()))
            .collect();
        serde_json::json!({
            "source": match self.source {
                KTableSource::Computed => "computed",
                KTableSource::Assumed => "assumed",
            },
            "entries": map,
        })
    }
}

/// All exponent tuples with total degree ≤ 4.
pub fn k_tuples() -> Vec<(u8, u8, u8, u8)> {
    let mut out = Vec::new();
    for i in 0..=4u8 {
        for j in 0..=4u8 {
            for k in 0..=4u8 {
                for l in 0..=4u8 {
                    if i + j + k + l <= 4 {
                        out.push((i, j, k, l));
                    }
                }
            }
        }
    }
    out
}

fn nonneg_integer(r: Rat, what: &str) -> Result<u64> {
    if !r.is_integer() || r < Rat::zero() {
        return Err(Error::NotACharacter(format!(
            "{what} is not a nonnegative integer: {r}"
        )));
    }
    Ok(r.to_integer() as u64)
}

/// Minus the order at s = 1 of L(s, ρ1 × ρ̄2): the inner product ⟨χ1, χ2⟩,
/// asserted to be a nonnegative integer.
pub fn pole_order(a: &ClassFunction, b: &ClassFunction) -> Result<u64> {
    nonneg_integer(inner_product(a, b)?, "pole order")
}

/// Compute the full k-table of a pair of degree-2 characters.
pub fn k_table(chi1: &ClassFunction, chi2: &ClassFunction) -> Result<KTable> {
    if !chi1.is_degree(2) || !chi2.is_degree(2) {
        return Err(Error::InvalidArgument("k-table requires degree-2 characters".into()));
    }
    if !FiniteGroup::same(chi1.group(), chi2.group()) {
        return Err(Error::GroupMismatch);
    }
    let g = chi1.group();
    let nclasses = g.num_classes();
    // Per-class powers 0..4 of a, ā, b, b̄.
    let mut pows: Vec<[Vec<CycNum>; 4]> = Vec::with_capacity(nclasses);
    for c in 0..nclasses {
        let base = [
            chi1.value(c).clone(),
            chi1.value(c).conj(),
            chi2.value(c).clone(),
            chi2.value(c).conj(),
        ];
        let mut entry: [Vec<CycNum>; 4] = Default::default();
        for (slot, b) in base.iter().enumerate() {
            let mut v = vec![CycNum::one()];
            for e in 1..=4 {
                v.push(v[e - 1].mul(b));
            }
            entry[slot] = v;
        }
        pows.push(entry);
    }
    let order = Rat::from_integer(g.order() as i64);
    let mut entries = BTreeMap::new();
    for (i, j, k, l) in k_tuples() {
        let mut acc = CycNum::zero();
        for (c, class) in g.classes().iter().enumerate() {
            let p = &pows[c];
            let term = p[0][i as usize]
                .mul(&p[1][j as usize])
                .mul(&p[2][k as usize])
                .mul(&p[3][l as usize]);
            acc = acc.add(&term.scale(Rat::from_integer(class.len() as i64)));
        }
        let r = acc
            .as_rat()
            .ok_or_else(|| Error::NotACharacter("k-table entry is not rational".into()))?
            / order;
        entries.insert((i, j, k, l), nonneg_integer(r, "k-table entry")?);
    }
    Ok(KTable { entries, source: KTableSource::Computed })
}

/// Inputs to the Cauchy-Schwarz density bound. The five `plus_upper` entries
/// are upper bounds for k(2,2,0,0), k(0,0,2,2), k(2,0,0,2), k(0,2,2,0),
/// k(1,1,1,1); the four `minus_lower` entries are lower bounds for
/// k(2,1,0,1), k(0,1,2,1), k(1,2,1,0), k(1,0,1,2) and default to 0 (dropping
/// the negative terms only weakens the bound).
#[derive(Clone, Copy, Debug)]
pub struct BoundInput {
    pub plus_upper: [u64; 5],
    pub minus_lower: [u64; 4],
    pub numerator_order: u64,
}

impl BoundInput {
    pub fn new(plus_upper: [u64; 5]) -> BoundInput {
        BoundInput { plus_upper, minus_lower: [0; 4], numerator_order: 2 }
    }

    pub fn with_minus(mut self, minus_lower: [u64; 4]) -> BoundInput {
        self.minus_lower = minus_lower;
        self
    }

    pub fn from_k_table(kt: &KTable) -> BoundInput {
        BoundInput {
            plus_upper: [
                kt.get((2, 2, 0, 0)),
                kt.get((0, 0, 2, 2)),
                kt.get((2, 0, 0, 2)),
                kt.get((0, 2, 2, 0)),
                kt.get((1, 1, 1, 1)),
            ],
            minus_lower: [
                kt.get((2, 1, 0, 1)),
                kt.get((0, 1, 2, 1)),
                kt.get((1, 2, 1, 0)),
                kt.get((1, 0, 1, 2)),
            ],
            numerator_order: 2,
        }
    }

    fn denominator(&self) -> i64 {
        let p = &self.plus_upper;
        let plus = p[0] + p[1] + p[2] + p[3] + 4 * p[4];
        let minus: u64 = self.minus_lower.iter().sum();
        plus as i64 - 2 * minus as i64
    }
}

/// Lower bound for the density of the disagreement set:
/// numerator_order² / (k(2,2,0,0)+k(0,0,2,2)+k(2,0,0,2)+k(0,2,2,0)
///                     +4·k(1,1,1,1) − 2·Σ minus).
pub fn cauchy_schwarz_bound(inp: &BoundInput) -> Result<Rat> {
    let d = inp.denominator();
    if d <= 0 {
        return Err(Error::DegenerateBound(d));
    }
    Ok(Rat::new((inp.numerator_order * inp.numerator_order) as i64, d))
}

/// The worst-case bound tables of the main theorems.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    /// General non-twist-equivalent pair.
    One,
    /// One dihedral, one non-dihedral.
    Two,
    /// Both dihedral, not twist-equivalent.
    ThreeI,
    /// Non-dihedral pair with cross-multiplicity c.
    ThreeII { c: u64 },
    /// Tetrahedral pair related by a cubic self-twist of the symmetric
    /// square: cross terms contribute 1 each.
    TetrahedralSubcase,
}

impl Theorem {
    pub fn bound_input(self) -> BoundInput {
        match self {
            Theorem::One => BoundInput::new([2, 2, 2, 2, 2]),
            Theorem::Two => BoundInput::new([3, 3, 2, 2, 2]),
            Theorem::ThreeI => BoundInput::new([2, 4, 2, 2, 1]),
            Theorem::ThreeII { c } => BoundInput::new([2, 2, c, c, 1]),
            Theorem::TetrahedralSubcase => {
                BoundInput::new([2, 2, 2, 2, 2]).with_minus([1, 1, 1, 1])
            }
        }
    }

    pub fn bound(self) -> Rat {
        cauchy_schwarz_bound(&self.bound_input()).expect("preset denominators are positive")
    }

    pub fn parse(s: &str) -> Result<Theorem> {
        match s {
            "1" => Ok(Theorem::One),
            "2" => Ok(Theorem::Two),
            "3i" => Ok(Theorem::ThreeI),
            "3ii" => Ok(Theorem::ThreeII { c: 1 }),
            "tetrahedral" => Ok(Theorem::TetrahedralSubcase),
            _ => Err(Error::InvalidArgument(format!(
                "unknown theorem `{s}` (expected 1, 2, 3i, 3ii, tetrahedral)"
            ))),
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Theorem::One => {
                "Worst case for a non-twist-equivalent pair: the four degree-4 \
                 self terms are at most 2 each and the mixed term k(1,1,1,1) at \
                 most 2, giving denominator 16 and lower bound 1/4."
            }
            Theorem::Two => {
                "One character dihedral (self terms up to 3), the other not \
                 (self terms 2): denominator 18 and lower bound 2/9."
            }
            Theorem::ThreeI => {
                "Both characters dihedral and not twist-equivalent: table \
                 (2,4,2,2) with mixed term 1, denominator 14, lower bound 2/7."
            }
            Theorem::ThreeII { .. } => {
                "Neither character dihedral, cross-multiplicity c between the \
                 adjoint-type pieces: denominator 8+2c, lower bound 2/(4+c)."
            }
            Theorem::TetrahedralSubcase => {
                "Tetrahedral pair related by a cubic twist of the symmetric \
                 square: the four negative cross terms contribute 1 each, \
                 denominator 8, lower bound 1/2."
            }
        }
    }
}

/// Results of checking the four Clebsch-Gordan trace identities for a pair
/// of degree-2 characters.
#[derive(Clone, Copy, Debug)]
pub struct ClebschReport {
    /// |χ|⁴ = Ad·Ad + 2·Ad + 1.
    pub quartic_self: bool,
    /// χ²·χ̄·χ̄′ = (Sym³χ·det(χ)⁻¹)·χ̄′ + 2·χ·χ̄′.
    pub cubic_cross: bool,
    /// χ²·χ̄′² = det(χ)·det(χ′)⁻¹·(Ad·Ad′ + Ad + Ad′ + 1).
    pub square_square: bool,
    /// |χ|²·|χ′|² = Ad·Ad′ + Ad + Ad′ + 1.
    pub abs_square_pair: bool,
}

impl ClebschReport {
    pub fn all(&self) -> bool {
        self.quartic_self && self.cubic_cross && self.square_square && self.abs_square_pair
    }
}

/// Verify the four Clebsch-Gordan identities exactly as class functions.
pub fn verify_clebsch_identities(
    chi: &ClassFunction,
    chip: &ClassFunction,
) -> Result<ClebschReport> {
    if !chi.is_degree(2) || !chip.is_degree(2) {
        return Err(Error::InvalidArgument(
            "Clebsch identities require degree-2 characters".into(),
        ));
    }
    if !FiniteGroup::same(chi.group(), chip.group()) {
        return Err(Error::GroupMismatch);
    }
    let g = chi.group().clone();
    let one = ClassFunction::trivial(g);
    let ad = adjoint(chi)?;
    let adp = adjoint(chip)?;
    let cbar = conj_char(chi);
    let cpbar = conj_char(chip);
    let det = alt2_det(chi);
    let detp = alt2_det(chip);

    // (1) |χ|⁴ = Ad·Ad + 2Ad + 1.
    let abs2 = tensor(chi, &cbar)?;
    let lhs1 = tensor(&abs2, &abs2)?;
    let rhs1 = tensor(&ad, &ad)?
        .add(&ad.scale(Rat::from_integer(2)))?
        .add(&one)?;
    let quartic_self = lhs1.equals(&rhs1);

    // (2) χ²χ̄·χ̄′ = (Sym³χ·det(χ)⁻¹)·χ̄′ + 2χχ̄′.
    let lhs2 = tensor(&tensor(&tensor(chi, chi)?, &cbar)?, &cpbar)?;
    let sym3_twist = tensor(&sym3(chi), &conj_char(&det))?;
    let rhs2 = tensor(&sym3_twist, &cpbar)?
        .add(&tensor(chi, &cpbar)?.scale(Rat::from_integer(2)))?;
    let cubic_cross = lhs2.equals(&rhs2);

    // (3) χ²χ̄′² = detχ·det(χ′)⁻¹·(Ad·Ad′ + Ad + Ad′ + 1).
    let lhs3 = tensor(&tensor(chi, chi)?, &tensor(&cpbar, &cpbar)?)?;
    let ad_sum = tensor(&ad, &adp)?.add(&ad)?.add(&adp)?.add(&one)?;
    let rhs3 = tensor(&tensor(&det, &conj_char(&detp))?, &ad_sum)?;
    let square_square = lhs3.equals(&rhs3);

    // (4) |χ|²|χ′|² = Ad·Ad′ + Ad + Ad′ + 1.
    let lhs4 = tensor(&abs2, &tensor(chip, &cpbar)?)?;
    let abs_square_pair = lhs4.equals(&ad_sum);

    Ok(ClebschReport { quartic_self, cubic_cross, square_square, abs_square_pair })
}

/// Lower bound (⟨Ad1,Ad1⟩ + ⟨Ad2,Ad2⟩ − 2⟨Ad1,Ad2⟩)/16 for the density of
/// the adjoint-disagreement set, after checking the sup bound
/// |Ad1(g) − Ad2(g)|² ≤ 16 that justifies the constant.
pub fn adjoint_bound(chi1: &ClassFunction, chi2: &ClassFunction) -> Result<Rat> {
    let ad1 = adjoint(chi1)?;
    let ad2 = adjoint(chi2)?;
    if !FiniteGroup::same(chi1.group(), chi2.group()) {
        return Err(Error::GroupMismatch);
    }
    for c in 0..chi1.group().num_classes() {
        let diff = ad1.value(c).sub(ad2.value(c));
        let (re, im) = diff.norm_sq().approx();
        debug_assert!(im.abs() < 1e-9);
        if re > 16.0 + 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "adjoint difference exceeds the sup bound on class {c}"
            )));
        }
    }
    let n11 = inner_product(&ad1, &ad1)?;
    let n22 = inner_product(&ad2, &ad2)?;
    let n12 = inner_product(&ad1, &ad2)?;
    Ok((n11 + n22 - n12 - n12) / Rat::from_integer(16))
}

/// Decomposition Sym³χ·det(χ)⁻¹ = χ·ν + χ·ν² for a tetrahedral χ, with the
/// cubic character ν exhibited.
#[derive(Clone, Debug)]
pub struct SymCubeSplit {
    pub nu: ClassFunction,
    pub verified: bool,
}

/// Find a cubic self-twist of Sym²χ and verify the symmetric-cube splitting.
/// Errors when χ is dihedral or admits no cubic twist (not tetrahedral type).
pub fn tetrahedral_symcube_split(chi: &ClassFunction) -> Result<SymCubeSplit> {
    if !chi.is_degree(2) {
        return Err(Error::InvalidArgument("expected a degree-2 character".into()));
    }
    if is_dihedral_char(chi)?.is_some() {
        return Err(Error::NotTetrahedral("character is dihedral".into()));
    }
    let s2 = crate::charfn::sym2(chi);
    let triv = ClassFunction::trivial(chi.group().clone());
    let nu = linear_characters(chi.group())?
        .into_iter()
        .find(|lam| {
            !lam.equals(&triv)
                && tensor(lam, &tensor(lam, lam).unwrap()).unwrap().equals(&triv)
                && tensor(&s2, lam).unwrap().equals(&s2)
        })
        .ok_or_else(|| {
            Error::NotTetrahedral("symmetric square admits no cubic self-twist".into())
        })?;
    let det = alt2_det(chi);
    let lhs = tensor(&sym3(chi), &conj_char(&det))?;
    let nu2 = tensor(&nu, &nu)?;
    let rhs = tensor(chi, &nu)?.add(&tensor(chi, &nu2)?)?;
    let verified = lhs.equals(&rhs);
    if !verified {
        return Err(Error::NotTetrahedral("symmetric-cube splitting failed".into()));
    }
    Ok(SymCubeSplit { nu, verified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charfn::galois_twist_char;
    use crate::exactnum::rat;
    use crate::group::{builtin, Builtin};
    use std::sync::Arc;

    fn defining_char(which: Builtin) -> ClassFunction {
        let b = builtin(which).unwrap();
        ClassFunction::from_traces(Arc::clone(&b.group), b.traces.as_ref().unwrap()).unwrap()
    }

    #[test]
    fn pole_orders_on_bo() {
        let eta = defining_char(Builtin::BO);
        let etap = galois_twist_char(&eta, 3).unwrap();
        assert_eq!(pole_order(&eta, &eta).unwrap(), 1);
        assert_eq!(pole_order(&eta, &etap).unwrap(), 0);
        let g = eta.group().clone();
        let triv = ClassFunction::trivial(g);
        assert_eq!(pole_order(&triv, &triv).unwrap(), 1);
    }

    #[test]
    fn theorem_bounds() {
        assert_eq!(Theorem::One.bound(), rat(1, 4));
        assert_eq!(Theorem::Two.bound(), rat(2, 9));
        assert_eq!(Theorem::ThreeI.bound(), rat(2, 7));
        assert_eq!(Theorem::ThreeII { c: 1 }.bound(), rat(2, 5));
        assert_eq!(Theorem::ThreeII { c: 0 }.bound(), rat(1, 2));
        assert_eq!(Theorem::TetrahedralSubcase.bound(), rat(1, 2));
    }

    #[test]
    fn degenerate_bound_rejected() {
        let inp = BoundInput::new([0, 0, 0, 0, 0]);
        assert!(matches!(cauchy_schwarz_bound(&inp), Err(Error::DegenerateBound(0))));
        let inp = BoundInput::new([1, 1, 0, 0, 0]).with_minus([2, 2, 0, 0]);
        assert!(matches!(cauchy_schwarz_bound(&inp), Err(Error::DegenerateBound(-6))));
    }

    #[test]
    fn bo_k_table() {
        let eta = defining_char(Builtin::BO);
        let etap = galois_twist_char(&eta, 3).unwrap();
        let kt = k_table(&eta, &etap).unwrap();
        assert_eq!(kt.get((0, 0, 0, 0)), 1);
        assert_eq!(kt.get((1, 1, 0, 0)), 1);
        assert_eq!(kt.get((0, 0, 1, 1)), 1);
        assert_eq!(kt.get((1, 0, 0, 1)), 0);
        // Equal adjoints force the mixed term to its maximum.
        assert_eq!(kt.get((1, 1, 1, 1)), 2);
        // The quadratic twist keeps Sym³η irreducible, so the degree-3
        // cross terms vanish (they are 1 only for cubic-twist pairs).
        assert_eq!(kt.get((2, 1, 0, 1)), 0);
        assert_eq!(kt.get((0, 1, 2, 1)), 0);
        assert_eq!(kt.get((1, 2, 1, 0)), 0);
        assert_eq!(kt.get((1, 0, 1, 2)), 0);
    }

    #[test]
    fn cubic_twist_pair_has_unit_cross_terms() {
        // For χ′ = χ⊗ν with ν cubic (tetrahedral type), Sym³χ·det⁻¹ contains
        // χν and χν², so each degree-3 cross term equals 1.
        let rho = defining_char(Builtin::BT);
        let split = tetrahedral_symcube_split(&rho).unwrap();
        let rhop = tensor(&rho, &split.nu).unwrap();
        let kt = k_table(&rho, &rhop).unwrap();
        assert_eq!(kt.get((2, 1, 0, 1)), 1);
        assert_eq!(kt.get((0, 1, 2, 1)), 1);
        assert_eq!(kt.get((1, 2, 1, 0)), 1);
        assert_eq!(kt.get((1, 0, 1, 2)), 1);
        assert_eq!(kt.get((1, 1, 1, 1)), 2);
    }

    #[test]
    fn constant_k_table_on_trivial_group() {
        let g = builtin(Builtin::C(1)).unwrap().group;
        let two = ClassFunction::new(Arc::clone(&g), vec![CycNum::from_int(2)]).unwrap();
        let kt = k_table(&two, &two).unwrap();
        for (i, j, k, l) in k_tuples() {
            let total = (i + j + k + l) as u32;
            assert_eq!(kt.get((i, j, k, l)), 2u64.pow(total));
        }
    }

    #[test]
    fn clebsch_identities_hold() {
        let eta = defining_char(Builtin::BO);
        let etap = galois_twist_char(&eta, 3).unwrap();
        assert!(verify_clebsch_identities(&eta, &etap).unwrap().all());
        let tau = defining_char(Builtin::Q8);
        assert!(verify_clebsch_identities(&tau, &tau).unwrap().all());
        // Degree-3 input is rejected.
        let ad = adjoint(&eta).unwrap();
        assert!(verify_clebsch_identities(&ad, &eta).is_err());
    }

    #[test]
    fn adjoint_bound_cases() {
        let eta = defining_char(Builtin::BO);
        let etap = galois_twist_char(&eta, 3).unwrap();
        // Equal adjoints give a zero bound.
        assert_eq!(adjoint_bound(&eta, &eta).unwrap(), Rat::from_integer(0));
        assert_eq!(adjoint_bound(&eta, &etap).unwrap(), Rat::from_integer(0));
    }

    #[test]
    fn symcube_split_cases() {
        let rho = defining_char(Builtin::BT);
        let split = tetrahedral_symcube_split(&rho).unwrap();
        assert!(split.verified);
        // ν is a nontrivial cubic character.
        let triv = ClassFunction::trivial(rho.group().clone());
        assert!(!split.nu.equals(&triv));
        let eta = defining_char(Builtin::BO);
        assert!(matches!(
            tetrahedral_symcube_split(&eta),
            Err(Error::NotTetrahedral(_))
        ));
        let tau = defining_char(Builtin::Q8);
        assert!(matches!(
            tetrahedral_symcube_split(&tau),
            Err(Error::NotTetrahedral(_))
        ));
    }

    #[test]
    fn computed_table_bound_is_consistent() {
        let eta = defining_char(Builtin::BO);
        let etap = galois_twist_char(&eta, 3).unwrap();
        let kt = k_table(&eta, &etap).unwrap();
        let bound = cauchy_schwarz_bound(&BoundInput::from_k_table(&kt)).unwrap();
        // The bound never exceeds the exact disagreement density.
        let agree = crate::chebotarev::agreement_density(&eta, &etap).unwrap();
        assert!(bound <= agree.complement_density);
    }
}
