//! Comparisons between knot polynomials: P₀, Jones and sl(3)
//! specializations, the lowest differing Vassiliev degree, and l/m tables.

mod report;

pub use report::{ComparisonReport, Field, InvariantReport, KauffmanVerdict};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::engine::{ambient_homfly, Budget, EngineError, EngineKind, MemoCache, Source};
use crate::laurent::{h_expansion, LaurentError, LaurentS, LaurentV, LaurentVZ, LowestTerm, NPoly, DEFAULT_TRUNCATION};

/// The z-constant term of a Homfly value.
pub fn p0(p: &LaurentVZ) -> LaurentV {
    p.p0()
}

/// One-sided Kauffman test: different `P₀` certifies different Kauffman
/// polynomials, equal `P₀` decides nothing.
pub fn kauffman_distinct(p: &LaurentVZ, q: &LaurentVZ) -> KauffmanVerdict {
    if p.p0() != q.p0() {
        KauffmanVerdict::Distinct
    } else {
        KauffmanVerdict::Inconclusive
    }
}

/// Lowest h-degree where two values differ, with its coefficient in `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VassilievGap {
    Degree { degree: usize, coeff: NPoly },
    NoneUpTo(usize),
}

pub fn vassiliev_gap(p: &LaurentVZ, q: &LaurentVZ, order: usize) -> Result<VassilievGap, LaurentError> {
    let d = p - q;
    Ok(match h_expansion(&d, order)?.lowest_term() {
        LowestTerm::Term { degree, coeff } => VassilievGap::Degree { degree, coeff },
        LowestTerm::ZeroSeries => VassilievGap::NoneUpTo(order),
    })
}

/// Jones specialization `v = s²`.
pub fn jones(p: &LaurentVZ) -> Result<LaurentS, LaurentError> {
    p.substitute_v_power(2)
}

/// sl(3) specialization `v = s³`.
pub fn sl3(p: &LaurentVZ) -> Result<LaurentS, LaurentError> {
    p.substitute_v_power(3)
}

pub fn sl3_difference(p: &LaurentVZ, q: &LaurentVZ) -> Result<LaurentS, LaurentError> {
    Ok(&sl3(p)? - &sl3(q)?)
}

/// `1 + s + ⋯ + s⁶`.
pub fn seventh_cyclotomic() -> LaurentS {
    LaurentS::from_terms((0..7).map(|e| (e, 1)))
}

/// Whether a nonzero difference is divisible by `1 + s + ⋯ + s⁶`; `None`
/// for zero. Reported as an observation only.
pub fn has_seventh_cyclotomic_factor(d: &LaurentS) -> Option<bool> {
    if d.is_zero() {
        return None;
    }
    Some(d.div_exact(&seventh_cyclotomic()).is_some())
}

/// Engine selection, budgets and truncation for a comparison.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompareOptions {
    pub engine: EngineKind,
    pub budget: Budget,
    pub truncation: usize,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self { engine: EngineKind::Auto, budget: Budget::default(), truncation: DEFAULT_TRUNCATION }
    }
}

/// Computes both knots, concurrently, and compares them. Engine failures
/// leave the affected fields as not computed.
pub fn compare(a: (&str, Source), b: (&str, Source), opts: &CompareOptions, cache: &MemoCache) -> ComparisonReport {
    let run = |s: Source| ambient_homfly(s, opts.engine, cache, opts.budget);
    let (pa, pb) = rayon::join(|| run(a.1), || run(b.1));
    compare_values((a.0, pa), (b.0, pb), opts.truncation)
}

/// Builds a report from already computed ambient Homfly values.
pub fn compare_values(
    a: (&str, Result<LaurentVZ, EngineError>),
    b: (&str, Result<LaurentVZ, EngineError>),
    truncation: usize,
) -> ComparisonReport {
    let mut r = ComparisonReport::empty(a.0, b.0, truncation);
    let first = InvariantReport::from_result(a.0, a.1);
    let second = InvariantReport::from_result(b.0, b.1);
    for k in [&first, &second] {
        if let Some(e) = &k.error {
            r.errors.push(format!("{}: {e}", k.name));
        }
    }
    if let (Field::Computed(p), Field::Computed(q)) = (&first.homfly, &second.homfly) {
        r.homfly_equal = Field::Computed(p == q);
        r.p0_equal = Field::Computed(p.p0() == q.p0());
        r.kauffman = kauffman_distinct(p, q);
        if let (Field::Computed(x), Field::Computed(y)) = (&first.jones, &second.jones) {
            r.jones_equal = Field::Computed(x == y);
        }
        if let (Field::Computed(x), Field::Computed(y)) = (&first.sl3, &second.sl3) {
            let d = x - y;
            r.sl3_equal = Field::Computed(d.is_zero());
            r.sl3_cyclotomic_factor = Field::Computed(has_seventh_cyclotomic_factor(&d));
            r.sl3_difference = Field::Computed(d);
        }
        match vassiliev_gap(p, q, truncation) {
            Ok(g) => r.vassiliev_gap = Field::Computed(g),
            Err(e) => r.errors.push(format!("vassiliev gap: {e}")),
        }
    }
    r.first = first;
    r.second = second;
    r
}

/// `Σ_a c_a a^k` over the `v`-exponents of a one-variable polynomial.
pub fn moment(p: &LaurentV, k: u32) -> BigInt {
    p.terms().map(|(a, c)| c * BigInt::from(a).pow(k)).sum()
}
