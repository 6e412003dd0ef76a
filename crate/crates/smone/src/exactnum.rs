//! Exact arithmetic over the rationals and over cyclotomic fields Q(ζ_n).
//!
//! Elements are stored in the power basis 1, ζ_n, ..., ζ_n^{φ(n)-1} reduced
//! modulo the n-th cyclotomic polynomial, and are kept at the minimal
//! conductor that contains them, so structural equality at a common
//! conductor coincides with field equality. Mixed-conductor operations
//! promote both operands to the lcm of their conductors.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;
use std::sync::OnceLock;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always stored in lowest terms.
pub type Rat = Rational64;

/// Shorthand constructor for a rational n/d.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

/// Euler totient.
pub fn phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

fn divisors(n: u32) -> Vec<u32> {
    let mut d: Vec<u32> = (1..=n).filter(|k| n % k == 0).collect();
    d.sort_unstable();
    d
}

/// Coefficients (ascending) of the n-th cyclotomic polynomial Φ_n.
///
/// Computed by exact division of x^n - 1 by the Φ_d for proper divisors d.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in divisors(n) {
        if d < n {
            let q = cyclotomic_poly(d);
            poly = poly_div_exact(&poly, &q);
        }
    }
    cache.lock().unwrap().insert(n, poly.clone());
    poly
}

/// Exact division of integer polynomials; panics if the division is inexact.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(dn >= dd && den[dd] == 1);
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &dc) in den.iter().enumerate() {
                rem[k + i] -= c * dc;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
    quot
}

/// Reduce a dense polynomial in ζ_n (ascending coefficients, any length)
/// modulo Φ_n, returning exactly φ(n) coordinates.
fn reduce_mod_phi(n: u32, mut coeffs: Vec<Rat>) -> Vec<Rat> {
    let deg = phi(n);
    let modulus = cyclotomic_poly(n);
    while coeffs.len() > deg {
        let top = coeffs.len() - 1;
        let lead = coeffs[top];
        if !lead.is_zero() {
            let shift = top - deg;
            for (i, &mc) in modulus.iter().enumerate() {
                if mc != 0 {
                    coeffs[shift + i] -= lead * Rat::from_integer(mc);
                }
            }
        }
        debug_assert!(coeffs[top].is_zero());
        coeffs.pop();
    }
    coeffs.resize(deg, Rat::zero());
    coeffs
}

/// An exact element of the cyclotomic field Q(ζ_n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycNum {
    conductor: u32,
    coeffs: Vec<Rat>,
}

impl CycNum {
    /// Build an element of Q(ζ_n) from power-basis coordinates.
    /// Longer vectors are reduced modulo Φ_n.
    pub fn new(conductor: u32, coeffs: Vec<Rat>) -> Result<CycNum> {
        if conductor == 0 {
            return Err(Error::InvalidArgument("conductor must be positive".into()));
        }
        Ok(CycNum {
            conductor,
            coeffs: reduce_mod_phi(conductor, coeffs),
        }
        .canonical())
    }

    pub fn zero() -> CycNum {
        CycNum::from_rat(Rat::zero())
    }

    pub fn one() -> CycNum {
        CycNum::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> CycNum {
        CycNum {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(k: i64) -> CycNum {
        CycNum::from_rat(Rat::from_integer(k))
    }

    /// The root of unity ζ_n^k.
    pub fn root_of_unity(n: u32, k: i64) -> Result<CycNum> {
        if n == 0 {
            return Err(Error::InvalidArgument("conductor must be positive".into()));
        }
        let e = k.rem_euclid(n as i64) as usize;
        let mut dense = vec![Rat::zero(); e + 1];
        dense[e] = Rat::one();
        CycNum::new(n, dense)
    }

    /// √2 = ζ_8 - ζ_8^3.
    pub fn sqrt2() -> CycNum {
        let z = CycNum::root_of_unity(8, 1).unwrap();
        let z3 = CycNum::root_of_unity(8, 3).unwrap();
        z.sub(&z3)
    }

    /// √5 = ζ_5 - ζ_5^2 - ζ_5^3 + ζ_5^4 (the positive square root).
    pub fn sqrt5() -> CycNum {
        let z = |k| CycNum::root_of_unity(5, k).unwrap();
        z(1).sub(&z(2)).sub(&z(3)).add(&z(4))
    }

    /// The golden-ratio constant (1 + √5)/2.
    pub fn golden() -> CycNum {
        CycNum::one().add(&CycNum::sqrt5()).scale(rat(1, 2))
    }

    /// (1 - √5)/2, the Galois conjugate of `golden`.
    pub fn golden_conj() -> CycNum {
        CycNum::one().sub(&CycNum::sqrt5()).scale(rat(1, 2))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Rewrite at the minimal conductor dividing the current one.
    fn canonical(self) -> CycNum {
        if self.conductor == 1 {
            return self;
        }
        for d in divisors(self.conductor) {
            if d == self.conductor {
                break;
            }
            if let Some(coeffs) = self.demote_coeffs(d) {
                return CycNum {
                    conductor: d,
                    coeffs,
                };
            }
        }
        self
    }

    /// Try to express this element in the power basis at conductor m | n.
    fn demote_coeffs(&self, m: u32) -> Option<Vec<Rat>> {
        let n = self.conductor;
        debug_assert!(n % m == 0);
        let dim = phi(n);
        let sub = phi(m);
        // Columns: the conductor-m basis vectors written at conductor n.
        let mut cols = Vec::with_capacity(sub);
        for j in 0..sub {
            let e = (j as u32 * (n / m)) as usize;
            let mut dense = vec![Rat::zero(); e + 1];
            dense[e] = Rat::one();
            cols.push(reduce_mod_phi(n, dense));
        }
        solve_exact(dim, &cols, &self.coeffs)
    }

    /// Image under the standard embedding Q(ζ_m) -> Q(ζ_n), ζ_m -> ζ_n^{n/m}.
    pub fn promote(&self, n: u32) -> Result<CycNum> {
        if n == 0 || n % self.conductor != 0 {
            return Err(Error::InvalidArgument(format!(
                "conductor {} does not divide {}",
                self.conductor, n
            )));
        }
        Ok(self.promote_raw(n))
    }

    fn promote_raw(&self, n: u32) -> CycNum {
        if n == self.conductor {
            return self.clone();
        }
        let step = (n / self.conductor) as usize;
        let mut dense = vec![Rat::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            dense[i * step] = c;
        }
        CycNum {
            conductor: n,
            coeffs: reduce_mod_phi(n, dense),
        }
    }

    /// Try to rewrite at conductor m; errors if the element does not lie in Q(ζ_m).
    pub fn demote(&self, m: u32) -> Result<CycNum> {
        if m == 0 || self.conductor % m != 0 {
            return Err(Error::InvalidArgument(format!(
                "conductor {} does not divide {}",
                m, self.conductor
            )));
        }
        if m == self.conductor {
            return Ok(self.clone());
        }
        match self.demote_coeffs(m) {
            Some(coeffs) => Ok(CycNum {
                conductor: m,
                coeffs,
            }
            .canonical()),
            None => Err(Error::InvalidArgument(format!(
                "element does not lie in Q(ζ_{m})"
            ))),
        }
    }

    fn common(&self, other: &CycNum) -> (CycNum, CycNum) {
        if self.conductor == other.conductor {
            (self.clone(), other.clone())
        } else {
            let l = num_integer::lcm(self.conductor, other.conductor);
            (self.promote_raw(l), other.promote_raw(l))
        }
    }

    pub fn add(&self, other: &CycNum) -> CycNum {
        let (a, b) = self.common(other);
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| x + y)
            .collect();
        CycNum {
            conductor: a.conductor,
            coeffs,
        }
        .canonical()
    }

    pub fn sub(&self, other: &CycNum) -> CycNum {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &CycNum) -> CycNum {
        let (a, b) = self.common(other);
        let mut dense = vec![Rat::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                dense[i + j] += x * y;
            }
        }
        CycNum {
            conductor: a.conductor,
            coeffs: reduce_mod_phi(a.conductor, dense),
        }
        .canonical()
    }

    pub fn scale(&self, r: Rat) -> CycNum {
        CycNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
        .canonical()
    }

    pub fn pow(&self, k: u32) -> CycNum {
        let mut acc = CycNum::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Image under the Galois automorphism ζ_n -> ζ_n^k, gcd(k, n) = 1.
    pub fn galois(&self, k: i64) -> Result<CycNum> {
        let n = self.conductor as i64;
        if n == 1 {
            return Ok(self.clone());
        }
        let e = k.rem_euclid(n);
        if num_integer::gcd(e, n) != 1 {
            return Err(Error::InvalidArgument(format!(
                "exponent {k} is not coprime to the conductor {n}"
            )));
        }
        let mut dense = vec![Rat::zero(); self.conductor as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            dense[(i as i64 * e % n) as usize] += c;
        }
        Ok(CycNum {
            conductor: self.conductor,
            coeffs: reduce_mod_phi(self.conductor, dense),
        }
        .canonical())
    }

    /// Complex conjugation, the automorphism ζ_n -> ζ_n^{-1}.
    pub fn conj(&self) -> CycNum {
        if self.conductor == 1 {
            return self.clone();
        }
        self.galois(self.conductor as i64 - 1).unwrap()
    }

    /// x · conj(x), a totally real element.
    pub fn norm_sq(&self) -> CycNum {
        self.mul(&self.conj())
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    /// Rational value, if the element lies in Q.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.conductor == 1 {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    /// Lossy numerical evaluation at ζ_n = e^{2πi/n}; debugging/export only.
    pub fn approx(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let x = *c.numer() as f64 / *c.denom() as f64;
            let theta = 2.0 * std::f64::consts::PI * i as f64 / n;
            re += x * theta.cos();
            im += x * theta.sin();
        }
        (re, im)
    }

    /// Canonical sort/hash key: (conductor, reduced coordinates).
    pub fn key(&self) -> (u32, Vec<(i64, i64)>) {
        (
            self.conductor,
            self.coeffs.iter().map(|c| (*c.numer(), *c.denom())).collect(),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.conductor,
            "c": self.coeffs.iter().map(|c| vec![*c.numer(), *c.denom()]).collect::<Vec<_>>(),
        })
    }
}

/// Solve sum_j a_j cols[j] = target exactly, if a solution exists.
fn solve_exact(dim: usize, cols: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let ncols = cols.len();
    // Augmented row-major matrix [cols | target].
    let mut m = vec![vec![Rat::zero(); ncols + 1]; dim];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..dim {
            m[i][j] = col[i];
        }
    }
    for i in 0..dim {
        m[i][ncols] = target[i];
    }
    let mut pivot_rows = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..dim).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for c in col..=ncols {
            m[row][c] *= inv;
        }
        for r in 0..dim {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in col..=ncols {
                    let sub = f * m[row][c];
                    m[r][c] -= sub;
                }
            }
        }
        pivot_rows.push((row, col));
        row += 1;
        if row == dim {
            break;
        }
    }
    // Consistency: rows without pivots must have zero augment.
    for r in row..dim {
        if !m[r][ncols].is_zero() {
            return None;
        }
    }
    let mut solution = vec![Rat::zero(); ncols];
    for (r, c) in pivot_rows {
        solution[c] = m[r][ncols];
    }
    Some(solution)
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            if i == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write!(f, "z{}", self.conductor)?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx_eq(x: &CycNum, re: f64, im: f64) {
        let (r, i) = x.approx();
        assert!((r - re).abs() < 1e-9 && (i - im).abs() < 1e-9, "{x} !~ {re}+{im}i");
    }

    #[test]
    fn rationals_embed_at_conductor_one() {
        let five = CycNum::new(1, vec![rat(5, 1)]).unwrap();
        assert_eq!(five, CycNum::from_int(5));
        assert_eq!(five.as_rat(), Some(rat(5, 1)));
    }

    #[test]
    fn sqrt2_squares_to_two() {
        // Oracle: numerical evaluation at e^{2πi/8}.
        let s = CycNum::sqrt2();
        approx_eq(&s, std::f64::consts::SQRT_2, 0.0);
        assert_eq!(s.mul(&s), CycNum::from_int(2));
    }

    #[test]
    fn conj_of_i_is_minus_i() {
        let i = CycNum::root_of_unity(4, 1).unwrap();
        assert_eq!(i.conj(), i.neg());
        assert_eq!(i.conj().conj(), i);
    }

    #[test]
    fn golden_ratio_product() {
        // (1+√5)(1-√5)/4 = -1.
        let c = CycNum::golden();
        let cp = CycNum::golden_conj();
        assert_eq!(c.mul(&cp), CycNum::from_int(-1));
        approx_eq(&c, (1.0 + 5f64.sqrt()) / 2.0, 0.0);
    }

    #[test]
    fn additive_inverse_cancels() {
        let x = CycNum::root_of_unity(12, 5).unwrap();
        assert!(x.add(&x.neg()).is_zero());
    }

    #[test]
    fn promotion_preserves_value() {
        // promote keeps the requested conductor; values agree semantically.
        let one = CycNum::one().promote(8).unwrap();
        assert_eq!(one.conductor(), 8);
        assert!(one.sub(&CycNum::one()).is_zero());
        let z3 = CycNum::root_of_unity(3, 1).unwrap();
        let z12 = CycNum::root_of_unity(12, 4).unwrap();
        assert!(z3.promote(12).unwrap().sub(&z12).is_zero());
        let s = CycNum::sqrt2().promote(40).unwrap();
        assert_eq!(s.mul(&s), CycNum::from_int(2));
    }

    #[test]
    fn promote_rejects_non_multiple() {
        assert!(CycNum::sqrt2().promote(12).is_err());
    }

    #[test]
    fn demotion_round_trip() {
        let x = CycNum::golden();
        let up = x.promote(20).unwrap();
        assert_eq!(up.demote(5).unwrap(), x);
        assert!(up.demote(4).is_err());
    }

    #[test]
    fn galois_flips_sqrt5() {
        let s = CycNum::sqrt5();
        // ζ5 -> ζ5^2 maps √5 to -√5; oracle is the exponent expansion.
        assert_eq!(s.galois(2).unwrap(), s.neg());
        assert_eq!(s.galois(1).unwrap(), s);
        assert_eq!(CycNum::golden().galois(2).unwrap(), CycNum::golden_conj());
    }

    #[test]
    fn galois_rejects_common_factor() {
        assert!(CycNum::sqrt5().galois(5).is_err());
    }

    #[test]
    fn canonical_conductor_is_minimal() {
        // ζ6 lives in Q(ζ3): ζ6 = 1 + ζ3.
        let z6 = CycNum::root_of_unity(6, 1).unwrap();
        assert_eq!(z6.conductor(), 3);
        let two = CycNum::new(8, vec![rat(2, 1)]).unwrap();
        assert_eq!(two.conductor(), 1);
    }

    #[test]
    fn norm_sq_zero_iff_zero() {
        let x = CycNum::sqrt2().add(&CycNum::root_of_unity(4, 1).unwrap());
        assert!(!x.norm_sq().is_zero());
        assert!(CycNum::zero().norm_sq().is_zero());
    }

    #[test]
    fn zero_conductor_rejected() {
        assert!(CycNum::new(0, vec![]).is_err());
    }

    #[test]
    fn field_axioms_on_samples() {
        let samples = [
            CycNum::from_int(3),
            CycNum::sqrt2(),
            CycNum::golden(),
            CycNum::root_of_unity(12, 7).unwrap(),
            CycNum::root_of_unity(4, 1).unwrap().add(&CycNum::one()),
        ];
        for x in &samples {
            for y in &samples {
                assert_eq!(x.mul(y), y.mul(x));
                assert_eq!(x.mul(y).conj(), x.conj().mul(&y.conj()));
                for z in &samples {
                    assert_eq!(x.add(y).add(z), x.add(&y.add(z)));
                    assert_eq!(x.mul(&y.add(z)), x.mul(y).add(&x.mul(z)));
                }
            }
        }
    }
}
