//! Class functions with cyclotomic values and the character calculus used by
//! the density computations: inner products, tensor and Clebsch-Gordan
//! operations, symmetric powers, adjoint, determinant, induction from
//! index-two subgroups, Galois twists, and pullback along homomorphisms.

use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactnum::{rat, CycNum, Rat};
use crate::group::{FiniteGroup, GroupHom, IndexTwoData};

/// A class function on a finite group: one cyclotomic value per conjugacy
/// class.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<CycNum>,
}

impl ClassFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<CycNum>) -> Result<ClassFunction> {
        if values.len() != group.num_classes() {
            return Err(Error::InvalidArgument(format!(
                "expected {} class values, got {}",
                group.num_classes(),
                values.len()
            )));
        }
        Ok(ClassFunction { group, values })
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> ClassFunction {
        let values = vec![CycNum::one(); group.num_classes()];
        ClassFunction { group, values }
    }

    /// Build from one value per group element; the values must be constant on
    /// conjugacy classes.
    pub fn from_traces(group: Arc<FiniteGroup>, traces: &[CycNum]) -> Result<ClassFunction> {
        if traces.len() != group.order() {
            return Err(Error::InvalidArgument("one trace per element required".into()));
        }
        let mut values = Vec::with_capacity(group.num_classes());
        for class in group.classes() {
            let v = &traces[class[0]];
            for &g in class {
                if &traces[g] != v {
                    return Err(Error::InvalidArgument(
                        "trace vector is not constant on conjugacy classes".into(),
                    ));
                }
            }
            values.push(v.clone());
        }
        Ok(ClassFunction { group, values })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[CycNum] {
        &self.values
    }

    /// Value on conjugacy class `c`.
    pub fn value(&self, c: usize) -> &CycNum {
        &self.values[c]
    }

    /// Value at a group element.
    pub fn at(&self, g: usize) -> &CycNum {
        &self.values[self.group.class_of(g)]
    }

    /// Value at the identity, as an exact rational when it is one.
    pub fn degree(&self) -> Option<Rat> {
        self.values[self.group.class_of(self.group.identity())].as_rat()
    }

    pub fn is_degree(&self, d: i64) -> bool {
        self.degree() == Some(Rat::from_integer(d))
    }

    /// Structural equality of values on the same group.
    pub fn equals(&self, other: &ClassFunction) -> bool {
        FiniteGroup::same(&self.group, &other.group) && self.values == other.values
    }

    fn check_same_group(&self, other: &ClassFunction) -> Result<()> {
        if !FiniteGroup::same(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_same_group(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(ClassFunction { group: Arc::clone(&self.group), values })
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_same_group(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(ClassFunction { group: Arc::clone(&self.group), values })
    }

    pub fn scale(&self, r: Rat) -> ClassFunction {
        let values = self.values.iter().map(|v| v.scale(r)).collect();
        ClassFunction { group: Arc::clone(&self.group), values }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.group.name(),
            "values": self.values.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// (1/|G|) Σ_g a(g)·conj(b(g)). For genuine characters this is a nonnegative
/// integer; for arbitrary class functions it is still rational whenever the
/// Galois-stable sum collapses, which we require.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<Rat> {
    a.check_same_group(b)?;
    let g = a.group();
    let mut acc = CycNum::zero();
    for (c, class) in g.classes().iter().enumerate() {
        let term = a.value(c).mul(&b.value(c).conj());
        acc = acc.add(&term.scale(Rat::from_integer(class.len() as i64)));
    }
    let total = acc.scale(rat(1, g.order() as i64));
    total
        .as_rat()
        .ok_or_else(|| Error::NotACharacter(format!("inner product is not rational: {total}")))
}

/// Pointwise product.
pub fn tensor(a: &ClassFunction, b: &ClassFunction) -> Result<ClassFunction> {
    a.check_same_group(b)?;
    let values = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| x.mul(y))
        .collect();
    Ok(ClassFunction { group: Arc::clone(&a.group), values })
}

/// Pointwise complex conjugate.
pub fn conj_char(a: &ClassFunction) -> ClassFunction {
    let values = a.values.iter().map(|v| v.conj()).collect();
    ClassFunction { group: Arc::clone(&a.group), values }
}

/// Composition with a homomorphism: a class function on the target becomes
/// one on the source.
pub fn pullback(a: &ClassFunction, f: &GroupHom) -> Result<ClassFunction> {
    if !FiniteGroup::same(a.group(), &f.target) {
        return Err(Error::GroupMismatch);
    }
    let src = &f.source;
    let values = (0..src.num_classes())
        .map(|c| a.at(f.apply(src.class_rep(c))).clone())
        .collect();
    Ok(ClassFunction { group: Arc::clone(src), values })
}

/// Symmetric square via the power-sum formula sym2(g) = (χ(g)² + χ(g²))/2.
pub fn sym2(chi: &ClassFunction) -> ClassFunction {
    let g = chi.group();
    let values = (0..g.num_classes())
        .map(|c| {
            let v = chi.value(c);
            let v2 = chi.value(g.power_class(c, 2));
            v.mul(v).add(v2).scale(rat(1, 2))
        })
        .collect();
    ClassFunction { group: Arc::clone(g), values }
}

/// Alternating square alt2(g) = (χ(g)² − χ(g²))/2. For a degree-2 character
/// this is its determinant, a linear character.
pub fn alt2_det(chi: &ClassFunction) -> ClassFunction {
    let g = chi.group();
    let values = (0..g.num_classes())
        .map(|c| {
            let v = chi.value(c);
            let v2 = chi.value(g.power_class(c, 2));
            v.mul(v).sub(v2).scale(rat(1, 2))
        })
        .collect();
    ClassFunction { group: Arc::clone(g), values }
}

/// Symmetric cube sym3(g) = (χ(g)³ + 3χ(g)χ(g²) + 2χ(g³))/6.
pub fn sym3(chi: &ClassFunction) -> ClassFunction {
    let g = chi.group();
    let values = (0..g.num_classes())
        .map(|c| {
            let v = chi.value(c);
            let v2 = chi.value(g.power_class(c, 2));
            let v3 = chi.value(g.power_class(c, 3));
            let cube = v.mul(v).mul(v);
            cube.add(&v.mul(v2).scale(Rat::from_integer(3)))
                .add(&v3.scale(Rat::from_integer(2)))
                .scale(rat(1, 6))
        })
        .collect();
    ClassFunction { group: Arc::clone(g), values }
}

/// Adjoint of a degree-2 character: χ·χ̄ − 1, of degree 3.
pub fn adjoint(chi: &ClassFunction) -> Result<ClassFunction> {
    if !chi.is_degree(2) {
        return Err(Error::InvalidArgument(
            "adjoint is defined for degree-2 characters only".into(),
        ));
    }
    let prod = tensor(chi, &conj_char(chi))?;
    prod.sub(&ClassFunction::trivial(Arc::clone(chi.group())))
}

/// Apply the Galois automorphism ζ ↦ ζ^k to every value.
pub fn galois_twist_char(chi: &ClassFunction, k: u32) -> Result<ClassFunction> {
    let values = chi
        .values
        .iter()
        .map(|v| v.galois(i64::from(k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassFunction { group: Arc::clone(chi.group()), values })
}

/// All degree-1 characters of G: characters of the abelianization G/[G,G],
/// pulled back. Built by extending characters one cyclic step at a time.
pub fn linear_characters(g: &Arc<FiniteGroup>) -> Result<Vec<ClassFunction>> {
    let derived = g.derived_subgroup();
    let (ab, proj) = crate::group::quotient(g, &derived)?;
    let n = ab.order();
    let e_exp = ab.exponent() as u32;
    // Characters of the abelian group `ab` as exponent vectors: value at x is
    // ζ_E^{exps[x]}.
    let mut members = vec![ab.identity()];
    let mut in_sub = vec![false; n];
    in_sub[ab.identity()] = true;
    let mut chars: Vec<Vec<u32>> = vec![vec![0; n]];
    while members.len() < n {
        let gen = (0..n).find(|&x| !in_sub[x]).unwrap();
        // d = minimal positive power landing in the current subgroup.
        let mut d: u32 = 1;
        let mut p = gen;
        while !in_sub[p] {
            p = ab.mul(p, gen);
            d += 1;
        }
        let mut new_chars = Vec::with_capacity(chars.len() * d as usize);
        for phi in &chars {
            let t = phi[p];
            debug_assert_eq!(t % d, 0, "extension exponent must be divisible by the step");
            let base = t / d;
            for j in 0..d {
                let s = (base + (e_exp / d) * j) % e_exp;
                let mut ext = phi.clone();
                let mut gp = ab.identity();
                for i in 0..d {
                    for &h in &members {
                        ext[ab.mul(h, gp)] = (phi[h] + i * s) % e_exp;
                    }
                    gp = ab.mul(gp, gen);
                }
                new_chars.push(ext);
            }
        }
        chars = new_chars;
        let mut new_members = Vec::with_capacity(members.len() * d as usize);
        let mut gp = ab.identity();
        for _ in 0..d {
            for &h in &members {
                let x = ab.mul(h, gp);
                if !in_sub[x] {
                    in_sub[x] = true;
                }
                new_members.push(x);
            }
            gp = ab.mul(gp, gen);
        }
        members = new_members;
    }
    let mut out = Vec::with_capacity(chars.len());
    for exps in chars {
        let vals: Vec<CycNum> = (0..n)
            .map(|x| CycNum::root_of_unity(e_exp.max(1), i64::from(exps[x])).unwrap())
            .collect();
        let on_ab = ClassFunction::from_traces(Arc::clone(&ab), &vals)?;
        out.push(pullback(&on_ab, &proj)?);
    }
    // Deterministic order: trivial character first.
    out.sort_by_key(|c| {
        c.values
            .iter()
            .map(|v| v.key())
            .collect::<Vec<_>>()
    });
    out.reverse();
    let triv = ClassFunction::trivial(Arc::clone(g));
    if let Some(pos) = out.iter().position(|c| c.equals(&triv)) {
        out.swap(0, pos);
    }
    Ok(out)
}

/// A degree-1 character ν of the index-two subgroup H, stored per H element.
#[derive(Clone, Debug)]
pub struct SubgroupCharacter {
    pub data: IndexTwoData,
    /// values[i] = ν(subgroup[i]).
    pub values: Vec<CycNum>,
}

impl SubgroupCharacter {
    pub fn new(data: IndexTwoData, values: Vec<CycNum>) -> Result<SubgroupCharacter> {
        let m = data.sub.order();
        if values.len() != m {
            return Err(Error::InvalidArgument("one value per subgroup element required".into()));
        }
        for a in 0..m {
            for b in 0..m {
                let lhs = &values[data.sub.mul(a, b)];
                let rhs = values[a].mul(&values[b]);
                if lhs != &rhs {
                    return Err(Error::NotACharacter(format!(
                        "not multiplicative at ({a},{b})"
                    )));
                }
            }
        }
        Ok(SubgroupCharacter { data, values })
    }

    /// From a degree-1 class function on the materialized subgroup.
    pub fn from_linear(data: IndexTwoData, chi: &ClassFunction) -> Result<SubgroupCharacter> {
        if !FiniteGroup::same(chi.group(), &data.sub) {
            return Err(Error::GroupMismatch);
        }
        if !chi.is_degree(1) {
            return Err(Error::NotACharacter("expected a degree-1 character".into()));
        }
        let values = (0..data.sub.order()).map(|i| chi.at(i).clone()).collect();
        SubgroupCharacter::new(data, values)
    }

    pub fn trivial(data: IndexTwoData) -> SubgroupCharacter {
        let values = vec![CycNum::one(); data.sub.order()];
        SubgroupCharacter { data, values }
    }

    /// Pointwise product ν·μ (both on the same index-two data).
    pub fn mul(&self, other: &SubgroupCharacter) -> Result<SubgroupCharacter> {
        if !FiniteGroup::same(&self.data.sub, &other.data.sub) {
            return Err(Error::GroupMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.mul(b))
            .collect();
        Ok(SubgroupCharacter { data: self.data.clone(), values })
    }

    /// ν̄ = ν⁻¹ (values are roots of unity).
    pub fn conj(&self) -> SubgroupCharacter {
        let values = self.values.iter().map(|v| v.conj()).collect();
        SubgroupCharacter { data: self.data.clone(), values }
    }

    pub fn equals(&self, other: &SubgroupCharacter) -> bool {
        self.values == other.values
    }

    /// Order of ν as a character: smallest k ≥ 1 with ν^k trivial.
    pub fn char_order(&self) -> u32 {
        let mut acc = self.clone();
        let mut k = 1;
        while !acc.is_trivial() {
            acc = acc.mul(self).unwrap();
            k += 1;
        }
        k
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v == &CycNum::one())
    }
}

/// ν^τ: precomposition with conjugation by the nontrivial coset.
pub fn tau_twist(nu: &SubgroupCharacter) -> SubgroupCharacter {
    let values = (0..nu.data.sub.order())
        .map(|i| nu.values[nu.data.tau_conj(i)].clone())
        .collect();
    SubgroupCharacter { data: nu.data.clone(), values }
}

/// Ind_H^G ν via the standard formula
/// Ind ν(g) = (1/|H|) Σ_{x ∈ G : x⁻¹gx ∈ H} ν(x⁻¹gx); degree 2, zero off H.
pub fn induce(nu: &SubgroupCharacter) -> ClassFunction {
    let g = &nu.data.group;
    let h_order = nu.data.sub.order() as i64;
    let values = (0..g.num_classes())
        .map(|c| {
            let rep = g.class_rep(c);
            let mut acc = CycNum::zero();
            for x in 0..g.order() {
                let y = g.mul(g.mul(g.inv(x), rep), x);
                if let Some(i) = nu.data.h_index(y) {
                    acc = acc.add(&nu.values[i]);
                }
            }
            acc.scale(rat(1, h_order))
        })
        .collect();
    ClassFunction { group: Arc::clone(g), values }
}

/// Whether ν/ν^τ is τ-invariant, equivalently (ν/ν^τ)² = 1. Requires the
/// induced character to be irreducible.
pub fn property_p(nu: &SubgroupCharacter) -> Result<bool> {
    let ind = induce(nu);
    let norm = inner_product(&ind, &ind)?;
    if !norm.is_one() {
        return Err(Error::NotCuspidal);
    }
    let ratio = nu.mul(&tau_twist(nu).conj())?;
    let square = ratio.mul(&ratio)?;
    Ok(square.is_trivial())
}

/// Result of a finite-order twist search between two degree-2 characters.
#[derive(Clone, Debug)]
pub struct TwistReport {
    /// Linear λ with χ2 = χ1·λ, if one exists.
    pub twist: Option<ClassFunction>,
    /// Class where norm_sq(χ1) ≠ norm_sq(χ2): rules out twisting by any
    /// unitary character, finite order or not.
    pub witness_class: Option<usize>,
}

impl TwistReport {
    pub fn twist_equivalent(&self) -> bool {
        self.twist.is_some()
    }
}

fn require_degree2(chi: &ClassFunction) -> Result<()> {
    if !chi.is_degree(2) {
        return Err(Error::InvalidArgument("expected a degree-2 character".into()));
    }
    Ok(())
}

/// Does χ admit a nontrivial linear self-twist χ·λ = χ?
pub fn is_dihedral_char(chi: &ClassFunction) -> Result<Option<ClassFunction>> {
    require_degree2(chi)?;
    let triv = ClassFunction::trivial(Arc::clone(chi.group()));
    for lam in linear_characters(chi.group())? {
        if lam.equals(&triv) {
            continue;
        }
        if tensor(chi, &lam)?.equals(chi) {
            return Ok(Some(lam));
        }
    }
    Ok(None)
}

/// Search for a linear λ with χ2 = χ1·λ, and for an absolute-value witness
/// class certifying non-equivalence under any unitary twist.
pub fn twist_equivalent(chi1: &ClassFunction, chi2: &ClassFunction) -> Result<TwistReport> {
    require_degree2(chi1)?;
    require_degree2(chi2)?;
    chi1.check_same_group(chi2)?;
    let mut twist = None;
    for lam in linear_characters(chi1.group())? {
        if tensor(chi1, &lam)?.equals(chi2) {
            twist = Some(lam);
            break;
        }
    }
    let witness_class = (0..chi1.group().num_classes())
        .find(|&c| chi1.value(c).norm_sq() != chi2.value(c).norm_sq());
    Ok(TwistReport { twist, witness_class })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin, direct_product, fibered_product, Builtin};

    fn defining_char(which: Builtin) -> ClassFunction {
        let b = builtin(which).unwrap();
        ClassFunction::from_traces(Arc::clone(&b.group), b.traces.as_ref().unwrap()).unwrap()
    }

    #[test]
    fn bo_defining_char_is_irreducible() {
        let eta = defining_char(Builtin::BO);
        assert!(eta.is_degree(2));
        assert_eq!(inner_product(&eta, &eta).unwrap(), Rat::from_integer(1));
        // All values real.
        assert!(conj_char(&eta).equals(&eta));
        // Galois conjugate √2 ↦ −√2 gives the companion character.
        let etap = galois_twist_char(&eta, 3).unwrap();
        assert!(!etap.equals(&eta));
        assert_eq!(inner_product(&eta, &etap).unwrap(), Rat::from_integer(0));
        assert_eq!(inner_product(&etap, &etap).unwrap(), Rat::from_integer(1));
    }

    #[test]
    fn bi_defining_char_and_galois_companion() {
        let eta = defining_char(Builtin::BI);
        assert_eq!(inner_product(&eta, &eta).unwrap(), Rat::from_integer(1));
        let etap = galois_twist_char(&eta, 2).unwrap();
        assert!(!etap.equals(&eta));
        assert_eq!(inner_product(&eta, &etap).unwrap(), Rat::from_integer(0));
        // √5 ↦ −√5 swaps the golden ratio values.
        let c = CycNum::golden();
        let cp = CycNum::golden_conj();
        let at_c = (0..eta.group().num_classes()).find(|&i| eta.value(i) == &c).unwrap();
        assert_eq!(etap.value(at_c), &cp);
    }

    #[test]
    fn q8_char_is_dihedral_bo_char_is_not() {
        let tau = defining_char(Builtin::Q8);
        assert!(is_dihedral_char(&tau).unwrap().is_some());
        let eta = defining_char(Builtin::BO);
        assert!(is_dihedral_char(&eta).unwrap().is_none());
        // Sym² of a dihedral character splits into three linear pieces.
        let s = sym2(&tau);
        assert_eq!(inner_product(&s, &s).unwrap(), Rat::from_integer(3));
    }

    #[test]
    fn linear_character_counts() {
        assert_eq!(linear_characters(&builtin(Builtin::Q8).unwrap().group).unwrap().len(), 4);
        assert_eq!(linear_characters(&builtin(Builtin::S3).unwrap().group).unwrap().len(), 2);
        assert_eq!(linear_characters(&builtin(Builtin::BT).unwrap().group).unwrap().len(), 3);
        assert_eq!(linear_characters(&builtin(Builtin::BO).unwrap().group).unwrap().len(), 2);
        assert_eq!(linear_characters(&builtin(Builtin::BI).unwrap().group).unwrap().len(), 1);
        assert_eq!(linear_characters(&builtin(Builtin::C(6)).unwrap().group).unwrap().len(), 6);
        assert_eq!(linear_characters(&builtin(Builtin::D(4)).unwrap().group).unwrap().len(), 4);
        assert_eq!(linear_characters(&builtin(Builtin::D(5)).unwrap().group).unwrap().len(), 2);
    }

    #[test]
    fn linear_characters_are_orthonormal_characters() {
        let g = builtin(Builtin::C(8)).unwrap().group;
        let chars = linear_characters(&g).unwrap();
        assert!(chars[0].equals(&ClassFunction::trivial(Arc::clone(&g))));
        for (i, a) in chars.iter().enumerate() {
            assert!(a.is_degree(1));
            for (j, b) in chars.iter().enumerate() {
                let ip = inner_product(a, b).unwrap();
                assert_eq!(ip, Rat::from_integer((i == j) as i64));
            }
        }
    }

    #[test]
    fn adjoint_identities() {
        for which in [Builtin::Q8, Builtin::BT, Builtin::BO, Builtin::BI] {
            let chi = defining_char(which);
            let ad = adjoint(&chi).unwrap();
            assert!(ad.is_degree(3));
            // χ·χ̄ = 1 + Ad.
            let lhs = tensor(&chi, &conj_char(&chi)).unwrap();
            let rhs = ClassFunction::trivial(Arc::clone(chi.group())).add(&ad).unwrap();
            assert!(lhs.equals(&rhs));
            // χ² = sym2 + alt2.
            let sq = tensor(&chi, &chi).unwrap();
            let split = sym2(&chi).add(&alt2_det(&chi)).unwrap();
            assert!(sq.equals(&split));
            // Twisting by a linear character fixes the adjoint.
            for lam in linear_characters(chi.group()).unwrap() {
                let twisted = tensor(&chi, &lam).unwrap();
                assert!(adjoint(&twisted).unwrap().equals(&ad));
            }
        }
    }

    #[test]
    fn det_of_su2_model_is_trivial() {
        let eta = defining_char(Builtin::BO);
        let det = alt2_det(&eta);
        assert!(det.equals(&ClassFunction::trivial(Arc::clone(eta.group()))));
    }

    fn dihedral_data(n: u32) -> IndexTwoData {
        let d = builtin(Builtin::D(n)).unwrap();
        IndexTwoData::from_sign_hom(&d.quotients[0].1).unwrap()
    }

    fn faithful_rotation_char(data: &IndexTwoData, n: u32) -> SubgroupCharacter {
        // Rotation subgroup is cyclic of order n, generated by subgroup[1].
        let chars = linear_characters(&data.sub).unwrap();
        let nu = chars
            .iter()
            .find(|c| {
                let sc = SubgroupCharacter::from_linear(data.clone(), c).unwrap();
                sc.char_order() == n
            })
            .unwrap();
        SubgroupCharacter::from_linear(data.clone(), nu).unwrap()
    }

    #[test]
    fn induction_basics() {
        let data = dihedral_data(4);
        let nu = faithful_rotation_char(&data, 4);
        let ind = induce(&nu);
        assert!(ind.is_degree(2));
        assert_eq!(inner_product(&ind, &ind).unwrap(), Rat::from_integer(1));
        // Induced character vanishes off H.
        for g in 0..data.group.order() {
            if data.h_index(g).is_none() {
                assert!(ind.at(g).is_zero());
            }
        }
        // Trivial ν induces 1 + sign-of-H.
        let ind1 = induce(&SubgroupCharacter::trivial(data.clone()));
        assert_eq!(inner_product(&ind1, &ind1).unwrap(), Rat::from_integer(2));
        let triv = ClassFunction::trivial(Arc::clone(&data.group));
        assert_eq!(inner_product(&ind1, &triv).unwrap(), Rat::from_integer(1));
        // τ-invariant ν (the order-2 character) induces reducibly.
        let nu2 = nu.mul(&nu).unwrap();
        assert!(tau_twist(&nu2).equals(&nu2));
        let ind2 = induce(&nu2);
        assert_eq!(inner_product(&ind2, &ind2).unwrap(), Rat::from_integer(2));
    }

    #[test]
    fn tau_twist_properties() {
        for n in [3u32, 4, 5, 6, 7] {
            let data = dihedral_data(n);
            for c in linear_characters(&data.sub).unwrap() {
                let nu = SubgroupCharacter::from_linear(data.clone(), &c).unwrap();
                // τ inverts rotations, so ν^τ = ν̄; applying τ twice returns ν.
                assert!(tau_twist(&nu).equals(&nu.conj()));
                assert!(tau_twist(&tau_twist(&nu)).equals(&nu));
            }
        }
    }

    #[test]
    fn property_p_on_dihedral_models() {
        let nu4 = faithful_rotation_char(&dihedral_data(4), 4);
        assert!(property_p(&nu4).unwrap());
        let nu5 = faithful_rotation_char(&dihedral_data(5), 5);
        assert!(!property_p(&nu5).unwrap());
        let nu8 = faithful_rotation_char(&dihedral_data(8), 8);
        assert!(!property_p(&nu8).unwrap());
        // Reducible induction is rejected.
        let data = dihedral_data(4);
        let err = property_p(&SubgroupCharacter::trivial(data));
        assert!(matches!(err, Err(Error::NotCuspidal)));
    }

    #[test]
    fn induction_product_identity() {
        // Ind(ν)·Ind(μ) = Ind(νμ) + Ind(νμ^τ) for all pairs on C5 ⊂ D5.
        let data = dihedral_data(5);
        let chars: Vec<SubgroupCharacter> = linear_characters(&data.sub)
            .unwrap()
            .iter()
            .map(|c| SubgroupCharacter::from_linear(data.clone(), c).unwrap())
            .collect();
        for nu in &chars {
            for mu in &chars {
                let lhs = tensor(&induce(nu), &induce(mu)).unwrap();
                let rhs = induce(&nu.mul(mu).unwrap())
                    .add(&induce(&nu.mul(&tau_twist(mu)).unwrap()))
                    .unwrap();
                assert!(lhs.equals(&rhs));
            }
        }
    }

    #[test]
    fn twist_search_on_products() {
        // ρ⊗1 and ρ⊗sgn on BT×C2 are twists of one another by the sign.
        let bt = builtin(Builtin::BT).unwrap();
        let c2 = builtin(Builtin::C(2)).unwrap().group;
        let (p, p1, _) = direct_product(&bt.group, &c2).unwrap();
        let rho = ClassFunction::from_traces(Arc::clone(&bt.group), bt.traces.as_ref().unwrap())
            .unwrap();
        let chi1 = pullback(&rho, &p1).unwrap();
        let sgn = linear_characters(&p)
            .unwrap()
            .into_iter()
            .find(|l| {
                !l.equals(&ClassFunction::trivial(Arc::clone(&p)))
                    && (0..p.order()).all(|g| {
                        let on_second = p1.apply(g) == bt.group.identity();
                        !on_second || !l.at(g).is_zero()
                    })
            })
            .unwrap();
        let chi2 = tensor(&chi1, &sgn).unwrap();
        let report = twist_equivalent(&chi1, &chi2).unwrap();
        assert!(report.twist_equivalent());
        // Same absolute values everywhere.
        assert!(report.witness_class.is_none());
    }

    #[test]
    fn s3_pair_not_twist_equivalent() {
        let s3 = builtin(Builtin::S3).unwrap();
        let q = &s3.quotients[0].1;
        let (_fp, p1, p2) = fibered_product(q, q).unwrap();
        // Degree-2 character of S3 from the permutation action minus trivial.
        let perm: Vec<CycNum> = (0..6)
            .map(|g| {
                // count fixed points of the permutation minus 1
                let ord = s3.group.element_order(g);
                match ord {
                    1 => CycNum::from_int(2),
                    2 => CycNum::zero(),
                    _ => CycNum::from_int(-1),
                }
            })
            .collect();
        let std2 = ClassFunction::from_traces(Arc::clone(&s3.group), &perm).unwrap();
        assert_eq!(inner_product(&std2, &std2).unwrap(), Rat::from_integer(1));
        let chi1 = pullback(&std2, &p1).unwrap();
        let chi2 = pullback(&std2, &p2).unwrap();
        let report = twist_equivalent(&chi1, &chi2).unwrap();
        assert!(!report.twist_equivalent());
        let w = report.witness_class.unwrap();
        let a = chi1.value(w).as_rat().unwrap();
        let b = chi2.value(w).as_rat().unwrap();
        let pair = (a.min(b), a.max(b));
        assert_eq!(pair, (Rat::from_integer(-1), Rat::from_integer(2)));
    }

    #[test]
    fn pullback_constant_on_second_factor() {
        let bt = builtin(Builtin::BT).unwrap();
        let c2 = builtin(Builtin::C(2)).unwrap().group;
        let (_, p1, p2) = direct_product(&bt.group, &c2).unwrap();
        let rho = ClassFunction::from_traces(Arc::clone(&bt.group), bt.traces.as_ref().unwrap())
            .unwrap();
        let lifted = pullback(&rho, &p1).unwrap();
        // Value 2 wherever the first coordinate is the identity.
        for g in 0..lifted.group().order() {
            if p1.apply(g) == bt.group.identity() {
                assert_eq!(lifted.at(g), &CycNum::from_int(2));
            }
        }
        let _ = p2;
    }
}
