use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{checked_exp, LaurentError, LaurentS, LaurentV};

/// Sparse integer Laurent polynomial in `v` and `z`.
///
/// Keys are `(a, b)` for the monomial `v^a z^b`. Zero coefficients are never
/// stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentVZ {
    terms: BTreeMap<(i32, i32), BigInt>,
}

impl LaurentVZ {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn v() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn z() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// The value of a split unknotted circle, `(v^-1 - v) z^-1`.
    pub fn delta() -> Self {
        Self::from_terms([((-1, -1), 1), ((1, -1), -1)])
    }

    pub fn monomial(c: impl Into<BigInt>, a: i32, b: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, c.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((i32, i32), C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for ((a, b), c) in terms {
            p.add_term(a, b, c.into());
        }
        p
    }

    pub fn add_term(&mut self, a: i32, b: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: i32, b: i32) -> BigInt {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), &BigInt)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Multiplies by `v^dv z^dz`.
    pub fn shift(&self, dv: i32, dz: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((checked_exp(*a, dv), checked_exp(*b, dz)), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn min_z_degree(&self) -> Option<i32> {
        self.terms.keys().map(|(_, b)| *b).min()
    }

    pub fn max_z_degree(&self) -> Option<i32> {
        self.terms.keys().map(|(_, b)| *b).max()
    }

    /// True when no negative power of `z` occurs.
    pub fn is_z_polynomial(&self) -> bool {
        self.min_z_degree().is_none_or(|b| b >= 0)
    }

    /// Swaps `v` for `v^-1`, which is the value of the mirror image for
    /// knots (whose polynomials are even in `z`).
    pub fn invert_v(&self) -> Self {
        Self { terms: self.terms.iter().map(|((a, b), c)| ((-*a, *b), c.clone())).collect() }
    }

    /// `Σ_a c_{a,b} v^a` for a fixed power `b` of `z`.
    pub fn z_coefficient(&self, b: i32) -> LaurentV {
        LaurentV::from_terms(self.terms.iter().filter(|((_, bb), _)| *bb == b).map(|((a, _), c)| (*a, c.clone())))
    }

    /// The z-constant term `P_0(v)`.
    pub fn p0(&self) -> LaurentV {
        self.z_coefficient(0)
    }

    /// Substitutes `v = s^k`, `z = s - s^-1`.
    ///
    /// Negative powers of `z` are cleared by exact division by `(s - s^-1)`;
    /// this fails only when the result is not a Laurent polynomial in `s`.
    pub fn substitute_v_power(&self, k: i32) -> Result<LaurentS, LaurentError> {
        let clear = (-self.min_z_degree().unwrap_or(0)).max(0);
        let zs = LaurentS::from_terms([(1, 1), (-1, -1)]);
        let mut by_b: BTreeMap<i32, LaurentS> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            by_b.entry(b + clear).or_default().add_term(checked_mul(*a, k), c.clone());
        }
        let mut out = LaurentS::zero();
        let mut zpow = LaurentS::one();
        let mut cur = 0;
        for (b, poly) in by_b {
            while cur < b {
                zpow = &zpow * &zs;
                cur += 1;
            }
            out += &(&poly * &zpow);
        }
        if clear == 0 {
            return Ok(out);
        }
        out.div_exact(&zs.pow(clear as u32)).ok_or(LaurentError::NotLaurentInS)
    }

    pub fn eval_z_v(&self, v: &BigInt, z: &BigInt) -> Option<num_rational::BigRational> {
        use num_rational::BigRational;
        let mut acc = BigRational::zero();
        for ((a, b), c) in &self.terms {
            let pv = rational_pow(v, *a)?;
            let pz = rational_pow(z, *b)?;
            acc += BigRational::from_integer(c.clone()) * pv * pz;
        }
        Some(acc)
    }
}

fn rational_pow(x: &BigInt, e: i32) -> Option<num_rational::BigRational> {
    use num_rational::BigRational;
    if e >= 0 {
        Some(BigRational::from_integer(num_traits::pow(x.clone(), e as usize)))
    } else if x.is_zero() {
        None
    } else {
        Some(BigRational::new(BigInt::one(), num_traits::pow(x.clone(), (-e) as usize)))
    }
}

fn checked_mul(a: i32, k: i32) -> i32 {
    a.checked_mul(k).unwrap_or_else(|| panic!("exponent overflow: {a} * {k} exceeds 32-bit range"))
}

impl fmt::Display for LaurentVZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b), c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mut mono = String::new();
            for (var, e) in [('v', *a), ('z', *b)] {
                match e {
                    0 => {}
                    1 => mono.push(var),
                    e => mono.push_str(&format!("{var}^{e}")),
                }
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentVZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl AddAssign<&LaurentVZ> for LaurentVZ {
    fn add_assign(&mut self, rhs: &LaurentVZ) {
        for ((a, b), c) in &rhs.terms {
            self.add_term(*a, *b, c.clone());
        }
    }
}

impl SubAssign<&LaurentVZ> for LaurentVZ {
    fn sub_assign(&mut self, rhs: &LaurentVZ) {
        for ((a, b), c) in &rhs.terms {
            self.add_term(*a, *b, -c);
        }
    }
}

impl Add<&LaurentVZ> for &LaurentVZ {
    type Output = LaurentVZ;
    fn add(self, rhs: &LaurentVZ) -> LaurentVZ {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentVZ {
    type Output = LaurentVZ;
    fn add(mut self, rhs: LaurentVZ) -> LaurentVZ {
        self += &rhs;
        self
    }
}

impl Sub<&LaurentVZ> for &LaurentVZ {
    type Output = LaurentVZ;
    fn sub(self, rhs: &LaurentVZ) -> LaurentVZ {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentVZ {
    type Output = LaurentVZ;
    fn sub(mut self, rhs: LaurentVZ) -> LaurentVZ {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentVZ {
    type Output = LaurentVZ;
    fn neg(self) -> LaurentVZ {
        LaurentVZ { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Neg for LaurentVZ {
    type Output = LaurentVZ;
    fn neg(self) -> LaurentVZ {
        -&self
    }
}

impl Mul<&LaurentVZ> for &LaurentVZ {
    type Output = LaurentVZ;
    fn mul(self, rhs: &LaurentVZ) -> LaurentVZ {
        let mut out = LaurentVZ::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                out.add_term(checked_exp(*a1, *a2), checked_exp(*b1, *b2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentVZ {
    type Output = LaurentVZ;
    fn mul(self, rhs: LaurentVZ) -> LaurentVZ {
        &self * &rhs
    }
}

impl Serialize for LaurentVZ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<(i32, i32, String)> = self.terms.iter().map(|((a, b), c)| (*a, *b, c.to_string())).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentVZ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<(i32, i32, String)> = Vec::deserialize(d)?;
        let mut p = Self::zero();
        for (a, b, c) in rows {
            let c: BigInt = c.parse().map_err(serde::de::Error::custom)?;
            if c.is_zero() {
                return Err(serde::de::Error::custom("zero coefficient in serialized polynomial"));
            }
            if p.terms.contains_key(&(a, b)) {
                return Err(serde::de::Error::custom(format!("duplicate exponent ({a}, {b})")));
            }
            p.add_term(a, b, c);
        }
        Ok(p)
    }
}
