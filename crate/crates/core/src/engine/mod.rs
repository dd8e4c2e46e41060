//! Framed Homfly engines and the Kauffman bracket.
//!
//! Conventions: `X₊ − X₋ = z X₀`, a positive curl contributes `v⁻¹`, a split
//! circle contributes `δ = (v⁻¹ − v) z⁻¹`, and the unknot with no crossings
//! has value 1. The ambient invariant is `v^writhe` times the framed one.

mod bracket;
mod brute;
mod cache;
mod dense;
mod hecke;
mod memo;
mod perm;

pub use bracket::{jones_via_bracket, kauffman_bracket};
pub use brute::{homfly_brute, homfly_brute_with_limit, DEFAULT_BRUTE_LIMIT};
pub use cache::{CacheStats, MemoCache, CACHE_FORMAT_VERSION};
pub use dense::{trace_closure_dense, trace_closure_dense_truncated, trace_closure_dense_with_budget, trace_closures_shared};
pub use hecke::{braid_to_hecke, trace_closure, HeckeElement};
pub use memo::{homfly_memo, homfly_memo_with_budget, Budget};
pub use perm::Perm;

use crate::diagram::{BraidWord, Diagram};
use crate::laurent::LaurentVZ;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("diagram has {found} crossings, above the limit of {limit}")]
    CrossingLimit { found: usize, limit: usize },
    #[error("budget exceeded after {nodes} resolved nodes ({reason})")]
    BudgetExceeded { nodes: u64, reason: String },
    #[error("knot value has negative powers of z: {0}")]
    NotZPolynomial(String),
    #[error("the hecke engine needs a closed braid")]
    NeedsBraid,
}

/// Multiplies a framed value by `v^writhe`.
pub fn ambient(framed: &LaurentVZ, writhe: i64) -> LaurentVZ {
    framed.shift(i32::try_from(writhe).expect("writhe fits in 32 bits"), 0)
}

/// Framed Homfly of a braid closure through the dense Hecke engine.
pub fn homfly_braid(b: &BraidWord) -> LaurentVZ {
    trace_closure_dense(b)
}

/// Which engine computes a value. `Auto` picks `Hecke` for closed braids
/// and `Memo` for other diagrams.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineKind {
    #[default]
    Auto,
    Brute,
    Memo,
    Hecke,
}

impl std::str::FromStr for EngineKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Self::Auto),
            "brute" => Ok(Self::Brute),
            "memo" => Ok(Self::Memo),
            "hecke" => Ok(Self::Hecke),
            _ => Err(format!("unknown engine {s:?} (expected auto, brute, memo or hecke)")),
        }
    }
}

/// A knot given either as a closed braid or as a diagram.
#[derive(Clone, Copy, Debug)]
pub enum Source<'a> {
    Braid(&'a BraidWord),
    Diagram(&'a Diagram),
}

impl Source<'_> {
    pub fn writhe(&self) -> i64 {
        match self {
            Source::Braid(b) => b.exponent_sum(),
            Source::Diagram(d) => d.writhe(),
        }
    }

    pub fn diagram(&self) -> Diagram {
        match self {
            Source::Braid(b) => b.closure(),
            Source::Diagram(d) => (*d).clone(),
        }
    }
}

/// Framed Homfly with the chosen engine. The budget applies to the memo and
/// Hecke engines; the brute engine has its own crossing limit.
pub fn homfly(src: Source, kind: EngineKind, cache: &MemoCache, budget: Budget) -> Result<LaurentVZ, EngineError> {
    match (kind, src) {
        (EngineKind::Brute, s) => homfly_brute(&s.diagram()),
        (EngineKind::Hecke | EngineKind::Auto, Source::Braid(b)) => trace_closure_dense_with_budget(b, budget),
        (EngineKind::Hecke, Source::Diagram(_)) => Err(EngineError::NeedsBraid),
        (EngineKind::Memo | EngineKind::Auto, s) => homfly_memo_with_budget(&s.diagram(), cache, budget),
    }
}

/// `v^writhe` times [`homfly`]: the invariant of the unframed knot.
pub fn ambient_homfly(src: Source, kind: EngineKind, cache: &MemoCache, budget: Budget) -> Result<LaurentVZ, EngineError> {
    Ok(ambient(&homfly(src, kind, cache, budget)?, src.writhe()))
}

/// Rejects knot values that still carry negative powers of `z`.
pub fn check_knot_value(p: &LaurentVZ) -> Result<(), EngineError> {
    if p.is_z_polynomial() {
        Ok(())
    } else {
        Err(EngineError::NotZPolynomial(p.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn engines_agree_through_dispatch() {
        let b = BraidWord::new(3, vec![1, -2, 1, -2]).unwrap();
        let d = b.closure();
        let cache = MemoCache::in_memory();
        let want = ambient_homfly(Source::Braid(&b), EngineKind::Auto, &cache, Budget::default()).unwrap();
        for kind in [EngineKind::Brute, EngineKind::Memo, EngineKind::Auto] {
            assert_eq!(ambient_homfly(Source::Diagram(&d), kind, &cache, Budget::default()).unwrap(), want);
        }
        assert_eq!(homfly(Source::Diagram(&d), EngineKind::Hecke, &cache, Budget::default()), Err(EngineError::NeedsBraid));
        assert_eq!("memo".parse::<EngineKind>(), Ok(EngineKind::Memo));
    }

    #[test]
    fn dense_budget() {
        let b = BraidWord::new(9, vec![1, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        let tight = Budget { seconds: None, mem_mb: Some(1) };
        assert!(matches!(trace_closure_dense_with_budget(&b, tight), Err(EngineError::BudgetExceeded { .. })));
        let b = BraidWord::new(3, vec![1, 2]).unwrap();
        assert_eq!(trace_closure_dense_with_budget(&b, tight).unwrap(), trace_closure_dense(&b));
    }
}
