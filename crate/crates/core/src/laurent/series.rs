//! Power series in `h` with coefficients in `Q[N]`, used to read off
//! Vassiliev invariants from `s = e^{h/2}`, `v = s^N`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LaurentError, LaurentVZ};

/// Polynomial in `N` with rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NPoly {
    coeffs: Vec<BigRational>,
}

impl NPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    /// The variable `N`.
    pub fn n() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// `c · Π (N - r)` over the given roots.
    pub fn from_roots(c: i64, roots: &[i64]) -> Self {
        let mut p = Self::from_int(c);
        for r in roots {
            p = &p * &Self::from_coeffs(vec![BigRational::from_integer((-r).into()), BigRational::one()]);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, n: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * n + c)
    }
}

impl Add<&NPoly> for &NPoly {
    type Output = NPoly;
    fn add(self, rhs: &NPoly) -> NPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        NPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&NPoly> for &NPoly {
    type Output = NPoly;
    fn sub(self, rhs: &NPoly) -> NPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        NPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &NPoly {
    type Output = NPoly;
    fn neg(self) -> NPoly {
        NPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul<&NPoly> for &NPoly {
    type Output = NPoly;
    fn mul(self, rhs: &NPoly) -> NPoly {
        if self.is_zero() || rhs.is_zero() {
            return NPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        NPoly::from_coeffs(out)
    }
}

impl fmt::Display for NPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
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
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "N")?,
                1 => write!(f, "{mag}N")?,
                _ if unit => write!(f, "N^{k}")?,
                _ => write!(f, "{mag}N^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for NPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for NPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(|c| c.parse::<BigRational>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.last().is_some_and(|c| c.is_zero()) {
            return Err(serde::de::Error::custom("trailing zero coefficient"));
        }
        Ok(NPoly { coeffs })
    }
}

/// Series `Σ_{d=0}^{D} c_d(N) h^d`, truncated at order `D`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NSeries {
    order: usize,
    coefficients: Vec<NPoly>,
}

/// Lowest nonvanishing term of a series.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum LowestTerm {
    Term { degree: usize, coeff: NPoly },
    ZeroSeries,
}

impl NSeries {
    pub fn zero(order: usize) -> Self {
        Self { order, coefficients: vec![NPoly::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coefficients[0] = NPoly::from_int(1);
        s
    }

    pub fn from_coeffs(order: usize, mut coefficients: Vec<NPoly>) -> Self {
        coefficients.resize(order + 1, NPoly::zero());
        coefficients.truncate(order + 1);
        Self { order, coefficients }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, d: usize) -> &NPoly {
        &self.coefficients[d]
    }

    pub fn coefficients(&self) -> &[NPoly] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(NPoly::is_zero)
    }

    pub fn lowest_term(&self) -> LowestTerm {
        match self.coefficients.iter().position(|c| !c.is_zero()) {
            Some(degree) => LowestTerm::Term { degree, coeff: self.coefficients[degree].clone() },
            None => LowestTerm::ZeroSeries,
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(order, self.coefficients.iter().take(order + 1).cloned().collect())
    }

    /// Substitutes a value for `N` in every coefficient.
    pub fn at_n(&self, n: &BigRational) -> Vec<BigRational> {
        self.coefficients.iter().map(|c| c.eval(n)).collect()
    }

    fn binary(&self, rhs: &NSeries, f: impl Fn(&NPoly, &NPoly) -> NPoly) -> NSeries {
        let order = self.order.min(rhs.order);
        NSeries::from_coeffs(order, (0..=order).map(|d| f(&self.coefficients[d], &rhs.coefficients[d])).collect())
    }

    pub fn scale(&self, c: &NPoly) -> NSeries {
        NSeries::from_coeffs(self.order, self.coefficients.iter().map(|x| x * c).collect())
    }
}

impl Add<&NSeries> for &NSeries {
    type Output = NSeries;
    fn add(self, rhs: &NSeries) -> NSeries {
        self.binary(rhs, |a, b| a + b)
    }
}

impl Sub<&NSeries> for &NSeries {
    type Output = NSeries;
    fn sub(self, rhs: &NSeries) -> NSeries {
        self.binary(rhs, |a, b| a - b)
    }
}

impl Neg for &NSeries {
    type Output = NSeries;
    fn neg(self) -> NSeries {
        NSeries::from_coeffs(self.order, self.coefficients.iter().map(|c| -c).collect())
    }
}

impl Mul<&NSeries> for &NSeries {
    type Output = NSeries;
    fn mul(self, rhs: &NSeries) -> NSeries {
        let order = self.order.min(rhs.order);
        let mut out = vec![NPoly::zero(); order + 1];
        for i in 0..=order {
            if self.coefficients[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if rhs.coefficients[j].is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(&self.coefficients[i] * &rhs.coefficients[j]);
            }
        }
        NSeries::from_coeffs(order, out)
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Series of `z^b = (e^{h/2} - e^{-h/2})^b` for `b ≥ 0`, as constants in `N`.
fn z_power_series(b: usize, order: usize) -> Vec<BigRational> {
    // z = Σ_{k odd} 2 (1/2)^k h^k / k!
    let mut z = vec![BigRational::zero(); order + 1];
    for k in (1..=order).step_by(2) {
        z[k] = BigRational::new(BigInt::from(2), BigInt::from(2).pow(k as u32) * factorial(k));
    }
    let mut acc = vec![BigRational::zero(); order + 1];
    acc[0] = BigRational::one();
    for _ in 0..b {
        let mut next = vec![BigRational::zero(); order + 1];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, c) in z.iter().enumerate().take(order + 1 - i) {
                if !c.is_zero() {
                    next[i + j] += a * c;
                }
            }
        }
        acc = next;
    }
    acc
}

/// Expands `p(v = e^{Nh/2}, z = e^{h/2} - e^{-h/2})` through `h^order`.
///
/// Negative powers of `z` are accepted when the expansion still has no
/// negative powers of `h`; otherwise an error is returned.
pub fn h_expansion(p: &LaurentVZ, order: usize) -> Result<NSeries, LaurentError> {
    let clear = (-p.min_z_degree().unwrap_or(0)).max(0) as usize;
    let work = order + clear;
    let mut out = vec![NPoly::zero(); work + 1];
    let mut bs: Vec<i32> = p.terms().map(|((_, b), _)| b).collect();
    bs.sort_unstable();
    bs.dedup();
    for b in bs {
        let shifted = (b + clear as i32) as usize;
        if shifted > work {
            continue;
        }
        // v-part: Σ_a c_a e^{aNh/2} = Σ_k h^k N^k / (2^k k!) Σ_a c_a a^k
        let terms: Vec<(i32, &BigInt)> = p.terms().filter(|((_, bb), _)| *bb == b).map(|((a, _), c)| (a, c)).collect();
        let mut vpart = vec![NPoly::zero(); work + 1];
        for (k, slot) in vpart.iter_mut().enumerate().take(work - shifted + 1) {
            let moment: BigInt = terms.iter().map(|(a, c)| *c * num_traits::pow(BigInt::from(*a), k)).sum();
            if moment.is_zero() {
                continue;
            }
            let scalar = BigRational::new(moment, BigInt::from(2).pow(k as u32) * factorial(k));
            let mut coeffs = vec![BigRational::zero(); k + 1];
            coeffs[k] = scalar;
            *slot = NPoly::from_coeffs(coeffs);
        }
        let zs = z_power_series(shifted, work);
        for (i, vp) in vpart.iter().enumerate() {
            if vp.is_zero() {
                continue;
            }
            for (j, zc) in zs.iter().enumerate().take(work + 1 - i) {
                if !zc.is_zero() {
                    out[i + j] = &out[i + j] + &vp.scale(zc);
                }
            }
        }
    }
    if clear == 0 {
        return Ok(NSeries::from_coeffs(order, out));
    }
    // divide by z^clear = h^clear u(h) with u(0) = 1
    if out[..clear].iter().any(|c| !c.is_zero()) {
        return Err(LaurentError::NegativeHPower);
    }
    let shifted: Vec<NPoly> = out[clear..].to_vec();
    let zc = z_power_series(clear, order + clear);
    let unit: Vec<BigRational> = zc[clear..].to_vec();
    let inv = invert_series(&unit, order);
    let mut res = vec![NPoly::zero(); order + 1];
    for (i, a) in shifted.iter().enumerate().take(order + 1) {
        if a.is_zero() {
            continue;
        }
        for (j, c) in inv.iter().enumerate().take(order + 1 - i) {
            if !c.is_zero() {
                res[i + j] = &res[i + j] + &a.scale(c);
            }
        }
    }
    Ok(NSeries::from_coeffs(order, res))
}

fn invert_series(u: &[BigRational], order: usize) -> Vec<BigRational> {
    let mut inv = vec![BigRational::zero(); order + 1];
    inv[0] = BigRational::one() / &u[0];
    for k in 1..=order {
        let mut acc = BigRational::zero();
        for j in 1..=k.min(u.len() - 1) {
            acc += &u[j] * &inv[k - j];
        }
        inv[k] = -acc / &u[0];
    }
    inv
}
