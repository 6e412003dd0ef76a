//! Finite groups as explicit multiplication tables, with the constructions
//! needed to model the Galois groups of the examples: binary polyhedral
//! matrix groups, cyclic and dihedral families, direct and fibered products,
//! quotients, and index-two subgroup data.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactnum::CycNum;

/// Default cap on the order of a generated group.
pub const DEFAULT_GROUP_CAP: usize = 1024;

/// The cap actually applied by the built-in constructors: the
/// `SMONE_GROUP_CAP` environment variable when set, else the default.
pub fn effective_group_cap() -> usize {
    std::env::var("SMONE_GROUP_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_GROUP_CAP)
}

/// A finite group materialized as a full multiplication table.
#[derive(Debug)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        mul: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Arc<FiniteGroup>> {
        if order == 0 || mul.len() != order * order {
            return Err(Error::InvalidArgument(
                "multiplication table has the wrong shape".into(),
            ));
        }
        if mul.iter().any(|&x| x >= order) {
            return Err(Error::InvalidArgument(
                "multiplication table entry out of range".into(),
            ));
        }
        let at = |a: usize, b: usize| mul[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or_else(|| Error::InvalidArgument("no identity element".into()))?;
        let mut inv = vec![usize::MAX; order];
        for g in 0..order {
            inv[g] = (0..order)
                .find(|&h| at(g, h) == identity && at(h, g) == identity)
                .ok_or_else(|| Error::InvalidArgument(format!("element {g} has no inverse")))?;
        }
        let (classes, class_of) = conjugacy_classes(order, &mul, &inv);
        Ok(Arc::new(FiniteGroup {
            name: name.into(),
            order,
            mul,
            inv,
            identity,
            classes,
            class_of,
            labels,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => format!("g{g}"),
        }
    }

    pub fn pow(&self, g: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv[g] } else { g };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut acc = g;
        let mut n = 1;
        while acc != self.identity {
            acc = self.mul(acc, g);
            n += 1;
        }
        n
    }

    /// lcm of all element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1usize, |e, g| num_integer::lcm(e, self.element_order(g)))
    }

    /// A representative of conjugacy class `c`.
    pub fn class_rep(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    /// Class of g^k, where g is the representative of class `c`.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        self.class_of[self.pow(self.class_rep(c), k)]
    }

    /// Exhaustive check of associativity, identity, inverses, and the class
    /// partition. Quadratic/cubic in the order; meant for tests.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidArgument(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        for g in 0..n {
            if self.mul(g, self.inv[g]) != self.identity {
                return Err(Error::InvalidArgument(format!("bad inverse for {g}")));
            }
        }
        let mut seen = vec![false; n];
        for (ci, class) in self.classes.iter().enumerate() {
            if self.order % class.len() != 0 {
                return Err(Error::InvalidArgument(format!(
                    "class {ci} size {} does not divide the order",
                    class.len()
                )));
            }
            for &g in class {
                if seen[g] || self.class_of[g] != ci {
                    return Err(Error::InvalidArgument("broken class partition".into()));
                }
                seen[g] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidArgument("classes do not cover the group".into()));
        }
        Ok(())
    }

    /// Smallest subgroup containing `gens`, as sorted element indices.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut in_sub = vec![false; self.order];
        in_sub[self.identity] = true;
        let mut stack: Vec<usize> = vec![self.identity];
        for &g in gens {
            if !in_sub[g] {
                in_sub[g] = true;
                stack.push(g);
            }
        }
        let mut members = stack.clone();
        while let Some(g) = stack.pop() {
            for &h in &members.clone() {
                for x in [self.mul(g, h), self.mul(h, g)] {
                    if !in_sub[x] {
                        in_sub[x] = true;
                        stack.push(x);
                        members.push(x);
                    }
                }
            }
        }
        let mut out: Vec<usize> = (0..self.order).filter(|&g| in_sub[g]).collect();
        out.sort_unstable();
        out
    }

    /// The commutator subgroup [G, G].
    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        for a in 0..self.order {
            for b in 0..self.order {
                let c = self.mul(self.mul(a, b), self.mul(self.inv[a], self.inv[b]));
                gens.push(c);
            }
        }
        gens.sort_unstable();
        gens.dedup();
        self.subgroup_closure(&gens)
    }

    /// Structural identity check used to validate that two class functions or
    /// homomorphisms refer to the same group.
    pub fn same(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
        Arc::ptr_eq(a, b) || (a.order == b.order && a.mul == b.mul)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "order": self.order,
            "classes": self.classes,
            "labels": (0..self.order).map(|g| self.label(g)).collect::<Vec<_>>(),
        })
    }
}

fn conjugacy_classes(
    order: usize,
    mul: &[usize],
    inv: &[usize],
) -> (Vec<Vec<usize>>, Vec<usize>) {
    let at = |a: usize, b: usize| mul[a * order + b];
    let mut class_of = vec![usize::MAX; order];
    let mut classes = Vec::new();
    for g in 0..order {
        if class_of[g] != usize::MAX {
            continue;
        }
        let ci = classes.len();
        let mut orbit = Vec::new();
        for x in 0..order {
            let y = at(at(x, g), inv[x]);
            if class_of[y] == usize::MAX {
                class_of[y] = ci;
                orbit.push(y);
            }
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }
    (classes, class_of)
}

/// A homomorphism between two multiplication-table groups.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub source: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    pub map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self> {
        let h = GroupHom { source, target, map };
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<()> {
        if self.map.len() != self.source.order() {
            return Err(Error::InvalidArgument("hom map has wrong length".into()));
        }
        if self.map[self.source.identity()] != self.target.identity() {
            return Err(Error::InvalidArgument("hom does not fix the identity".into()));
        }
        for a in 0..self.source.order() {
            for b in 0..self.source.order() {
                if self.map[self.source.mul(a, b)] != self.target.mul(self.map[a], self.map[b]) {
                    return Err(Error::InvalidArgument(format!(
                        "hom is not multiplicative at ({a},{b})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    pub fn image_size(&self) -> usize {
        let mut seen: Vec<usize> = self.map.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.source.order())
            .filter(|&g| self.map[g] == self.target.identity())
            .collect()
    }
}

/// Quotient of `g` by the normal subgroup `normal`, with the projection map.
pub fn quotient(g: &Arc<FiniteGroup>, normal: &[usize]) -> Result<(Arc<FiniteGroup>, GroupHom)> {
    let n = g.order();
    let mut in_n = vec![false; n];
    for &x in normal {
        in_n[x] = true;
    }
    // Normality check.
    for &x in normal {
        for y in 0..n {
            if !in_n[g.mul(g.mul(y, x), g.inv(y))] {
                return Err(Error::InvalidArgument("subgroup is not normal".into()));
            }
        }
    }
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        for &h in normal {
            coset_of[g.mul(x, h)] = c;
        }
        reps.push(x);
    }
    let m = reps.len();
    let mut mul = vec![0usize; m * m];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            mul[i * m + j] = coset_of[g.mul(a, b)];
        }
    }
    let q = FiniteGroup::from_table(format!("{}/N", g.name()), m, mul, None)?;
    let hom = GroupHom::new(Arc::clone(g), Arc::clone(&q), coset_of)?;
    Ok((q, hom))
}

/// Direct product G × H with its two projections.
pub fn direct_product(
    g: &Arc<FiniteGroup>,
    h: &Arc<FiniteGroup>,
) -> Result<(Arc<FiniteGroup>, GroupHom, GroupHom)> {
    let n = g.order() * h.order();
    let hn = h.order();
    let mut mul = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            let (g1, h1) = (a / hn, a % hn);
            let (g2, h2) = (b / hn, b % hn);
            mul[a * n + b] = g.mul(g1, g2) * hn + h.mul(h1, h2);
        }
    }
    let labels = (0..n)
        .map(|a| format!("({},{})", g.label(a / hn), h.label(a % hn)))
        .collect();
    let p = FiniteGroup::from_table(
        format!("{}x{}", g.name(), h.name()),
        n,
        mul,
        Some(labels),
    )?;
    let p1 = GroupHom::new(Arc::clone(&p), Arc::clone(g), (0..n).map(|a| a / hn).collect())?;
    let p2 = GroupHom::new(Arc::clone(&p), Arc::clone(h), (0..n).map(|a| a % hn).collect())?;
    Ok((p, p1, p2))
}

/// Fibered product of two quotient maps with a common target: the subgroup of
/// the direct product on which the two maps agree, with its projections.
pub fn fibered_product(
    q1: &GroupHom,
    q2: &GroupHom,
) -> Result<(Arc<FiniteGroup>, GroupHom, GroupHom)> {
    if !FiniteGroup::same(&q1.target, &q2.target) {
        return Err(Error::InvalidArgument(
            "fibered product requires a common quotient target".into(),
        ));
    }
    let g = &q1.source;
    let h = &q2.source;
    let mut pairs = Vec::new();
    let mut index = HashMap::new();
    for a in 0..g.order() {
        for b in 0..h.order() {
            if q1.apply(a) == q2.apply(b) {
                index.insert((a, b), pairs.len());
                pairs.push((a, b));
            }
        }
    }
    let n = pairs.len();
    let mut mul = vec![0usize; n * n];
    for (i, &(a1, b1)) in pairs.iter().enumerate() {
        for (j, &(a2, b2)) in pairs.iter().enumerate() {
            mul[i * n + j] = index[&(g.mul(a1, a2), h.mul(b1, b2))];
        }
    }
    let labels = pairs
        .iter()
        .map(|&(a, b)| format!("({},{})", g.label(a), h.label(b)))
        .collect();
    let p = FiniteGroup::from_table(
        format!("{}x_Q{}", g.name(), h.name()),
        n,
        mul,
        Some(labels),
    )?;
    let m1: Vec<usize> = pairs.iter().map(|&(a, _)| a).collect();
    let m2: Vec<usize> = pairs.iter().map(|&(_, b)| b).collect();
    let p1 = GroupHom::new(Arc::clone(&p), Arc::clone(g), m1)?;
    let p2 = GroupHom::new(Arc::clone(&p), Arc::clone(h), m2)?;
    Ok((p, p1, p2))
}

/// A 2×2 matrix with cyclotomic entries, row major.
#[derive(Clone, Debug)]
pub struct Mat2(pub [CycNum; 4]);

impl Mat2 {
    pub fn identity() -> Mat2 {
        Mat2([CycNum::one(), CycNum::zero(), CycNum::zero(), CycNum::one()])
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &other.0;
        Mat2([
            a[0].mul(&b[0]).add(&a[1].mul(&b[2])),
            a[0].mul(&b[1]).add(&a[1].mul(&b[3])),
            a[2].mul(&b[0]).add(&a[3].mul(&b[2])),
            a[2].mul(&b[1]).add(&a[3].mul(&b[3])),
        ])
    }

    pub fn det(&self) -> CycNum {
        self.0[0].mul(&self.0[3]).sub(&self.0[1].mul(&self.0[2]))
    }

    pub fn trace(&self) -> CycNum {
        self.0[0].add(&self.0[3])
    }

    /// Dedup key at a fixed ambient conductor.
    fn key(&self, conductor: u32) -> Result<Vec<(i64, i64)>> {
        let mut out = Vec::new();
        for e in &self.0 {
            let p = e.promote(conductor)?;
            let (_, mut k) = p.key();
            out.append(&mut k);
        }
        Ok(out)
    }
}

/// A matrix-generated group together with the traces of its defining
/// 2-dimensional representation, one per element.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    pub group: Arc<FiniteGroup>,
    pub traces: Vec<CycNum>,
}

/// Close a list of invertible 2×2 cyclotomic matrices under multiplication
/// and materialize the resulting finite group.
pub fn group_from_matrix_generators(
    name: impl Into<String>,
    conductor: u32,
    gens: &[Mat2],
    gen_names: Option<&[&str]>,
    cap: usize,
) -> Result<MatrixGroup> {
    if conductor == 0 {
        return Err(Error::InvalidArgument("conductor must be positive".into()));
    }
    for (i, g) in gens.iter().enumerate() {
        if g.det().is_zero() {
            return Err(Error::InvalidArgument(format!("generator {i} is singular")));
        }
    }
    let mut elems: Vec<Mat2> = vec![Mat2::identity()];
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut index: HashMap<Vec<(i64, i64)>, usize> = HashMap::new();
    index.insert(Mat2::identity().key(conductor)?, 0);
    // rmul[k][i] = index of elems[i] · gens[k]
    let mut rmul: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
    let mut frontier = 0usize;
    while frontier < elems.len() {
        let i = frontier;
        frontier += 1;
        for (k, gen) in gens.iter().enumerate() {
            let m = elems[i].mul(gen);
            let key = m.key(conductor)?;
            let j = match index.get(&key) {
                Some(&j) => j,
                None => {
                    let j = elems.len();
                    if j >= cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    index.insert(key, j);
                    elems.push(m);
                    let mut w = words[i].clone();
                    w.push(k);
                    words.push(w);
                    j
                }
            };
            if rmul[k].len() <= i {
                rmul[k].resize(i + 1, usize::MAX);
            }
            rmul[k][i] = j;
        }
    }
    let order = elems.len();
    for r in rmul.iter_mut() {
        r.resize(order, usize::MAX);
    }
    // Build the full table by applying generator words as permutations.
    let mut mul = vec![0usize; order * order];
    for j in 0..order {
        for i in 0..order {
            let mut x = i;
            for &k in &words[j] {
                x = rmul[k][x];
            }
            mul[i * order + j] = x;
        }
    }
    let labels: Vec<String> = words
        .iter()
        .map(|w| {
            if w.is_empty() {
                "1".to_string()
            } else {
                w.iter()
                    .map(|&k| match gen_names {
                        Some(names) => names[k].to_string(),
                        None => format!("g{k}"),
                    })
                    .collect::<Vec<_>>()
                    .join("")
            }
        })
        .collect();
    let group = FiniteGroup::from_table(name, order, mul, Some(labels))?;
    let traces = elems.iter().map(|m| m.trace()).collect();
    Ok(MatrixGroup { group, traces })
}

/// The built-in groups of the examples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Q8,
    S3,
    A4,
    /// Binary tetrahedral group, order 24.
    BT,
    /// Binary octahedral group, order 48.
    BO,
    /// Binary icosahedral group, order 120.
    BI,
    /// Cyclic group of order n.
    C(u32),
    /// Dihedral group of order 2n.
    D(u32),
}

impl std::str::FromStr for Builtin {
    type Err = Error;
    fn from_str(s: &str) -> Result<Builtin> {
        let up = s.to_ascii_uppercase();
        match up.as_str() {
            "Q8" => Ok(Builtin::Q8),
            "S3" => Ok(Builtin::S3),
            "A4" => Ok(Builtin::A4),
            "BT" | "2T" => Ok(Builtin::BT),
            "BO" | "2O" => Ok(Builtin::BO),
            "BI" | "2I" => Ok(Builtin::BI),
            _ => {
                if let Some(n) = up.strip_prefix('C').and_then(|t| t.parse::<u32>().ok()) {
                    if n >= 1 {
                        return Ok(Builtin::C(n));
                    }
                }
                if let Some(n) = up.strip_prefix('D').and_then(|t| t.parse::<u32>().ok()) {
                    if n >= 1 {
                        return Ok(Builtin::D(n));
                    }
                }
                Err(Error::InvalidArgument(format!("unknown group `{s}`")))
            }
        }
    }
}

/// A built-in group with its defining 2-dimensional traces (for the matrix
/// models) and canonical quotient maps.
pub struct BuiltGroup {
    pub group: Arc<FiniteGroup>,
    pub traces: Option<Vec<CycNum>>,
    pub quotients: Vec<(String, GroupHom)>,
}

fn quaternion_matrix(a: CycNum, b: CycNum, c: CycNum, d: CycNum) -> Mat2 {
    // a + bi + cj + dk as an SU(2) matrix.
    let i = CycNum::root_of_unity(4, 1).unwrap();
    Mat2([
        a.add(&b.mul(&i)),
        c.add(&d.mul(&i)),
        c.neg().add(&d.mul(&i)),
        a.sub(&b.mul(&i)),
    ])
}

fn half(k: i64) -> CycNum {
    CycNum::from_rat(crate::exactnum::rat(k, 2))
}

fn quat_i() -> Mat2 {
    quaternion_matrix(CycNum::zero(), CycNum::one(), CycNum::zero(), CycNum::zero())
}

fn quat_j() -> Mat2 {
    quaternion_matrix(CycNum::zero(), CycNum::zero(), CycNum::one(), CycNum::zero())
}

/// ω = -(1 + i + j + k)/2, of order 3.
fn quat_omega() -> Mat2 {
    quaternion_matrix(half(-1), half(-1), half(-1), half(-1))
}

fn dihedral_table(n: usize) -> (usize, Vec<usize>, Vec<String>) {
    // Element s^e r^i at index e*n + i; r s = s r^{-1}.
    let order = 2 * n;
    let idx = |e: usize, i: usize| e * n + i;
    let mut mul = vec![0usize; order * order];
    for e1 in 0..2 {
        for i1 in 0..n {
            for e2 in 0..2 {
                for i2 in 0..n {
                    // (s^e1 r^i1)(s^e2 r^i2) = s^{e1+e2} r^{i1*(-1)^{e2} + i2}
                    let e = (e1 + e2) % 2;
                    let i = if e2 == 1 {
                        (n - i1 + i2) % n
                    } else {
                        (i1 + i2) % n
                    };
                    mul[idx(e1, i1) * order + idx(e2, i2)] = idx(e, i);
                }
            }
        }
    }
    let labels = (0..order)
        .map(|x| {
            let (e, i) = (x / n, x % n);
            match (e, i) {
                (0, 0) => "1".into(),
                (0, i) => format!("r{i}"),
                (_, 0) => "s".into(),
                (_, i) => format!("sr{i}"),
            }
        })
        .collect();
    (order, mul, labels)
}

fn perm_group(
    name: &str,
    degree: usize,
    gens: &[Vec<usize>],
) -> Result<Arc<FiniteGroup>> {
    let compose = |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> {
        (0..degree).map(|x| a[b[x]]).collect()
    };
    let id: Vec<usize> = (0..degree).collect();
    let mut elems = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut frontier = 0;
    while frontier < elems.len() {
        let cur = elems[frontier].clone();
        frontier += 1;
        for g in gens {
            let next = compose(&cur, g);
            if !index.contains_key(&next) {
                index.insert(next.clone(), elems.len());
                elems.push(next);
            }
        }
    }
    let order = elems.len();
    let mut mul = vec![0usize; order * order];
    for i in 0..order {
        for j in 0..order {
            mul[i * order + j] = index[&compose(&elems[i], &elems[j])];
        }
    }
    let labels = elems.iter().map(cycle_notation).collect();
    FiniteGroup::from_table(name, order, mul, Some(labels))
}

fn cycle_notation(p: &Vec<usize>) -> String {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || p[start] == start {
            seen[start] = true;
            continue;
        }
        out.push('(');
        let mut x = start;
        loop {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = p[x];
            if x == start {
                break;
            }
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("(1)");
    }
    out
}

/// Construct a built-in group with its canonical quotient maps.
pub fn builtin(which: Builtin) -> Result<BuiltGroup> {
    match which {
        Builtin::Q8 => {
            let mg = group_from_matrix_generators(
                "Q8",
                4,
                &[quat_i(), quat_j()],
                Some(&["i", "j"]),
                effective_group_cap(),
            )?;
            Ok(BuiltGroup {
                group: mg.group,
                traces: Some(mg.traces),
                quotients: vec![],
            })
        }
        Builtin::BT => {
            let mg = group_from_matrix_generators(
                "2T",
                4,
                &[quat_i(), quat_j(), quat_omega()],
                Some(&["i", "j", "w"]),
                effective_group_cap(),
            )?;
            let derived = mg.group.derived_subgroup();
            let (q, hom) = quotient(&mg.group, &derived)?;
            Ok(BuiltGroup {
                group: mg.group,
                traces: Some(mg.traces),
                quotients: vec![(format!("mod-{}", derived.len()), hom_renamed(q, hom, "C3")?)],
            })
        }
        Builtin::BO => {
            let z8 = CycNum::root_of_unity(8, 1).unwrap();
            let a = Mat2([
                z8.clone(),
                CycNum::zero(),
                CycNum::zero(),
                z8.galois(7).unwrap(),
            ]);
            let mg = group_from_matrix_generators(
                "2O",
                8,
                &[quat_i(), quat_j(), quat_omega(), a],
                Some(&["i", "j", "w", "a"]),
                effective_group_cap(),
            )?;
            Ok(BuiltGroup {
                group: mg.group,
                traces: Some(mg.traces),
                quotients: vec![],
            })
        }
        Builtin::BI => {
            // Icosian generators: ω and (φ⁻¹ + φ·i + j)/2, with φ the golden ratio.
            let phi20 = CycNum::golden();
            let phinv = phi20.sub(&CycNum::one()); // φ⁻¹ = φ - 1
            let s = quaternion_matrix(
                phinv.scale(crate::exactnum::rat(1, 2)),
                phi20.scale(crate::exactnum::rat(1, 2)),
                half(1),
                CycNum::zero(),
            );
            let mg = group_from_matrix_generators(
                "2I",
                20,
                &[quat_omega(), s],
                Some(&["w", "s"]),
                effective_group_cap(),
            )?;
            Ok(BuiltGroup {
                group: mg.group,
                traces: Some(mg.traces),
                quotients: vec![],
            })
        }
        Builtin::S3 => {
            let g = perm_group("S3", 3, &[vec![1, 2, 0], vec![1, 0, 2]])?;
            let derived = g.derived_subgroup();
            let (q, hom) = quotient(&g, &derived)?;
            Ok(BuiltGroup {
                group: g,
                traces: None,
                quotients: vec![("sign".into(), hom_renamed(q, hom, "C2")?)],
            })
        }
        Builtin::A4 => {
            let g = perm_group("A4", 4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])?;
            Ok(BuiltGroup {
                group: g,
                traces: None,
                quotients: vec![],
            })
        }
        Builtin::C(n) => {
            let n = n as usize;
            let mut mul = vec![0usize; n * n];
            for i in 0..n {
                for j in 0..n {
                    mul[i * n + j] = (i + j) % n;
                }
            }
            let labels = (0..n)
                .map(|i| if i == 0 { "1".into() } else { format!("g{i}") })
                .collect();
            let g = FiniteGroup::from_table(format!("C{n}"), n, mul, Some(labels))?;
            Ok(BuiltGroup {
                group: g,
                traces: None,
                quotients: vec![],
            })
        }
        Builtin::D(n) => {
            let (order, mul, labels) = dihedral_table(n as usize);
            let g = FiniteGroup::from_table(format!("D{n}"), order, mul, Some(labels))?;
            // Reflection-or-not quotient to C2.
            let c2 = builtin(Builtin::C(2))?.group;
            let map = (0..order).map(|x| x / n as usize).collect();
            let sign = GroupHom::new(Arc::clone(&g), c2, map)?;
            Ok(BuiltGroup {
                group: g,
                traces: None,
                quotients: vec![("sign".into(), sign)],
            })
        }
    }
}

fn hom_renamed(q: Arc<FiniteGroup>, hom: GroupHom, _name: &str) -> Result<GroupHom> {
    // The quotient group keeps its generated name; callers only use the map.
    let _ = q;
    Ok(hom)
}

/// An index-two subgroup H of G with a chosen coset representative, the data
/// of a quadratic extension K/F with Gal(K/F) = {1, τ}.
#[derive(Clone, Debug)]
pub struct IndexTwoData {
    pub group: Arc<FiniteGroup>,
    pub subgroup: Vec<usize>,
    pub coset_rep: usize,
    /// H materialized as a group in its own right; element i is `subgroup[i]`.
    pub sub: Arc<FiniteGroup>,
    h_index: Vec<Option<usize>>,
}

impl IndexTwoData {
    pub fn new(group: Arc<FiniteGroup>, mut subgroup: Vec<usize>) -> Result<IndexTwoData> {
        subgroup.sort_unstable();
        subgroup.dedup();
        let n = group.order();
        if subgroup.len() * 2 != n {
            return Err(Error::InvalidArgument(format!(
                "subgroup of order {} does not have index 2 in a group of order {n}",
                subgroup.len()
            )));
        }
        let mut h_index = vec![None; n];
        for (i, &g) in subgroup.iter().enumerate() {
            h_index[g] = Some(i);
        }
        for &a in &subgroup {
            if h_index[group.inv(a)].is_none() {
                return Err(Error::InvalidArgument("subgroup not closed under inverse".into()));
            }
            for &b in &subgroup {
                if h_index[group.mul(a, b)].is_none() {
                    return Err(Error::InvalidArgument("subgroup not closed under product".into()));
                }
            }
        }
        let coset_rep = (0..n)
            .find(|&g| h_index[g].is_none())
            .expect("index-2 subgroup has a complement element");
        let m = subgroup.len();
        let mut mul = vec![0usize; m * m];
        for i in 0..m {
            for j in 0..m {
                mul[i * m + j] = h_index[group.mul(subgroup[i], subgroup[j])].unwrap();
            }
        }
        let labels = subgroup.iter().map(|&g| group.label(g)).collect();
        let sub = FiniteGroup::from_table(
            format!("{}-index2-sub", group.name()),
            m,
            mul,
            Some(labels),
        )?;
        Ok(IndexTwoData {
            group,
            subgroup,
            coset_rep,
            sub,
            h_index,
        })
    }

    /// Kernel of a surjection onto a group of order 2.
    pub fn from_sign_hom(hom: &GroupHom) -> Result<IndexTwoData> {
        if hom.target.order() != 2 || hom.image_size() != 2 {
            return Err(Error::InvalidArgument(
                "expected a surjective map onto a group of order 2".into(),
            ));
        }
        IndexTwoData::new(Arc::clone(&hom.source), hom.kernel())
    }

    /// Position of a parent element inside H, if it lies in H.
    pub fn h_index(&self, g: usize) -> Option<usize> {
        self.h_index[g]
    }

    /// τ-conjugate inside H: t h t⁻¹ as an H index.
    pub fn tau_conj(&self, h_idx: usize) -> usize {
        let g = self.subgroup[h_idx];
        let t = self.coset_rep;
        let conj = self.group.mul(self.group.mul(t, g), self.group.inv(t));
        self.h_index[conj].expect("H is normal (index 2)")
    }
}
