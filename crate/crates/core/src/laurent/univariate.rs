use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::checked_exp;

/// Sparse Laurent polynomial in one variable with integer coefficients.
///
/// The variable is only a display label: `Laurent<'s'>` and `Laurent<'v'>`
/// share all arithmetic.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent<const X: char> {
    terms: BTreeMap<i32, BigInt>,
}

pub type LaurentS = Laurent<'s'>;
pub type LaurentV = Laurent<'v'>;
pub type LaurentA = Laurent<'A'>;

impl<const X: char> Laurent<X> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, e: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (checked_exp(*e, k), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at `X = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Evaluates at an integer point, which must be a unit (±1) when negative
    /// exponents are present.
    pub fn eval_int(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            if *e >= 0 {
                acc += c * num_traits::pow(x.clone(), *e as usize);
            } else {
                assert!(x.abs().is_one(), "negative exponent evaluated at non-unit");
                acc += c * num_traits::pow(x.clone(), (-*e) as usize);
            }
        }
        acc
    }

    /// Exact division by another polynomial, `None` if it does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dmin, dmax) = (d.min_degree()?, d.max_degree()?);
        let lead = d.coeff(dmax);
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let (Some(rmin), Some(rmax)) = (rem.min_degree(), rem.max_degree()) {
            if rmax - rmin < dmax - dmin {
                return None;
            }
            let (qc, r) = num_integer::Integer::div_rem(&rem.coeff(rmax), &lead);
            if !r.is_zero() {
                return None;
            }
            let t = Self::monomial(qc, rmax - dmax);
            rem -= &(&t * d);
            q += &t;
        }
        Some(q)
    }
}

impl<const X: char> fmt::Display for Laurent<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
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
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "{X}")?,
                (1, false) => write!(f, "{mag}{X}")?,
                (e, true) => write!(f, "{X}^{e}")?,
                (e, false) => write!(f, "{mag}{X}^{e}")?,
            }
        }
        Ok(())
    }
}

impl<const X: char> fmt::Debug for Laurent<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<const X: char> Add<&Laurent<X>> for &Laurent<X> {
    type Output = Laurent<X>;
    fn add(self, rhs: &Laurent<X>) -> Laurent<X> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<const X: char> Add for Laurent<X> {
    type Output = Laurent<X>;
    fn add(mut self, rhs: Laurent<X>) -> Laurent<X> {
        self += &rhs;
        self
    }
}

impl<const X: char> AddAssign<&Laurent<X>> for Laurent<X> {
    fn add_assign(&mut self, rhs: &Laurent<X>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<const X: char> SubAssign<&Laurent<X>> for Laurent<X> {
    fn sub_assign(&mut self, rhs: &Laurent<X>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl<const X: char> Sub<&Laurent<X>> for &Laurent<X> {
    type Output = Laurent<X>;
    fn sub(self, rhs: &Laurent<X>) -> Laurent<X> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<const X: char> Sub for Laurent<X> {
    type Output = Laurent<X>;
    fn sub(mut self, rhs: Laurent<X>) -> Laurent<X> {
        self -= &rhs;
        self
    }
}

impl<const X: char> Neg for &Laurent<X> {
    type Output = Laurent<X>;
    fn neg(self) -> Laurent<X> {
        Laurent { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl<const X: char> Neg for Laurent<X> {
    type Output = Laurent<X>;
    fn neg(self) -> Laurent<X> {
        -&self
    }
}

impl<const X: char> Mul<&Laurent<X>> for &Laurent<X> {
    type Output = Laurent<X>;
    fn mul(self, rhs: &Laurent<X>) -> Laurent<X> {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(checked_exp(*e1, *e2), c1 * c2);
            }
        }
        out
    }
}

impl<const X: char> Mul for Laurent<X> {
    type Output = Laurent<X>;
    fn mul(self, rhs: Laurent<X>) -> Laurent<X> {
        &self * &rhs
    }
}

impl<const X: char> Serialize for Laurent<X> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<(i32, String)> = self.terms.iter().map(|(e, c)| (*e, c.to_string())).collect();
        rows.serialize(s)
    }
}

impl<'de, const X: char> Deserialize<'de> for Laurent<X> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<(i32, String)> = Vec::deserialize(d)?;
        let mut p = Self::zero();
        for (e, c) in rows {
            let c: BigInt = c.parse().map_err(serde::de::Error::custom)?;
            if c.is_zero() {
                return Err(serde::de::Error::custom("zero coefficient in serialized polynomial"));
            }
            if p.terms.contains_key(&e) {
                return Err(serde::de::Error::custom(format!("duplicate exponent {e}")));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn additive_inverse_is_empty() {
        let p = LaurentS::monomial(3, -2) + LaurentS::monomial(1, 4);
        assert!((&p - &p).is_zero());
        assert_eq!((&p - &p).len(), 0);
    }

    #[test]
    fn display() {
        let p = LaurentS::from_terms([(-1, -1), (0, 2), (3, 1)]);
        assert_eq!(p.to_string(), "-s^-1 + 2 + s^3");
        assert_eq!(LaurentS::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let a = LaurentS::from_terms([(1, 1), (0, -1)]); // s - 1
        let b = LaurentS::from_terms([(1, 1), (0, 1)]); // s + 1
        let prod = (&a * &b).shift(-5);
        assert_eq!(prod.div_exact(&a), Some(b.shift(-5)));
        let c = LaurentS::from_terms([(2, 1), (0, 1)]);
        assert_eq!(prod.div_exact(&c), None);
    }

    #[test]
    fn json_round_trip() {
        let p = LaurentS::from_terms([(-28, 7), (0, -1), (11, 123456789012345678901234567890_i128)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[[-28,"7"],[0,"-1"],[11,"123456789012345678901234567890"]]"#);
        let q: LaurentS = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
