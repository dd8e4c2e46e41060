use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{jones, sl3, VassilievGap};
use crate::engine::EngineError;
use crate::laurent::{LMTable, LaurentError, LaurentS, LaurentV, LaurentVZ};

/// A value that may be missing because an engine gave up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Field<T> {
    Computed(T),
    NotComputed,
}

impl<T> Field<T> {
    pub fn computed(&self) -> Option<&T> {
        match self {
            Field::Computed(t) => Some(t),
            Field::NotComputed => None,
        }
    }
}

impl<T: std::fmt::Display> Field<T> {
    fn show(&self) -> String {
        match self {
            Field::Computed(t) => t.to_string(),
            Field::NotComputed => "not computed".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KauffmanVerdict {
    Distinct,
    Inconclusive,
    NotComputed,
}

/// Invariants of one knot, all read off its ambient Homfly value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub name: String,
    pub homfly: Field<LaurentVZ>,
    pub p0: Field<LaurentV>,
    pub jones: Field<LaurentS>,
    pub sl3: Field<LaurentS>,
    pub lm_table: Field<LMTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl InvariantReport {
    pub fn from_homfly(name: &str, p: LaurentVZ) -> Self {
        fn keep<T>(r: Result<T, LaurentError>, error: &mut Option<String>) -> Field<T> {
            match r {
                Ok(x) => Field::Computed(x),
                Err(e) => {
                    error.get_or_insert_with(|| e.to_string());
                    Field::NotComputed
                }
            }
        }
        let mut error = None;
        let jones = keep(jones(&p), &mut error);
        let sl3 = keep(sl3(&p), &mut error);
        let lm_table = keep(LMTable::from_laurent(&p), &mut error);
        Self { name: name.into(), p0: Field::Computed(p.p0()), homfly: Field::Computed(p), jones, sl3, lm_table, error }
    }

    pub fn from_result(name: &str, r: Result<LaurentVZ, EngineError>) -> Self {
        match r {
            Ok(p) => Self::from_homfly(name, p),
            Err(e) => Self {
                name: name.into(),
                homfly: Field::NotComputed,
                p0: Field::NotComputed,
                jones: Field::NotComputed,
                sl3: Field::NotComputed,
                lm_table: Field::NotComputed,
                error: Some(e.to_string()),
            },
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "knot: {}", self.name);
        let _ = writeln!(out, "homfly: {}", self.homfly.show());
        let _ = writeln!(out, "P0: {}", self.p0.show());
        let _ = writeln!(out, "jones (v = s^2): {}", self.jones.show());
        let _ = writeln!(out, "sl3 (v = s^3): {}", self.sl3.show());
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error: {e}");
        }
        if let Field::Computed(t) = &self.lm_table {
            out.push_str(&t.render(&self.name));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub first: InvariantReport,
    pub second: InvariantReport,
    pub truncation: usize,
    pub homfly_equal: Field<bool>,
    pub p0_equal: Field<bool>,
    pub jones_equal: Field<bool>,
    pub sl3_equal: Field<bool>,
    /// First minus second after `v = s³`.
    pub sl3_difference: Field<LaurentS>,
    /// Whether the sl(3) difference is divisible by `1 + s + ⋯ + s⁶`;
    /// `None` inside when the difference is zero.
    pub sl3_cyclotomic_factor: Field<Option<bool>>,
    pub vassiliev_gap: Field<VassilievGap>,
    pub kauffman: KauffmanVerdict,
    pub errors: Vec<String>,
}

impl ComparisonReport {
    pub(super) fn empty(a: &str, b: &str, truncation: usize) -> Self {
        let blank = |n: &str| InvariantReport::from_result(n, Err(EngineError::BudgetExceeded { nodes: 0, reason: String::new() }));
        Self {
            first: blank(a),
            second: blank(b),
            truncation,
            homfly_equal: Field::NotComputed,
            p0_equal: Field::NotComputed,
            jones_equal: Field::NotComputed,
            sl3_equal: Field::NotComputed,
            sl3_difference: Field::NotComputed,
            sl3_cyclotomic_factor: Field::NotComputed,
            vassiliev_gap: Field::NotComputed,
            kauffman: KauffmanVerdict::NotComputed,
            errors: Vec::new(),
        }
    }

    /// Broken implications between the fields; empty for a sound report.
    pub fn consistency_violations(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        let is = |f: &Field<bool>, want: bool| f.computed() == Some(&want);
        if is(&self.homfly_equal, true) && !is(&self.jones_equal, true) {
            v.push("homfly equal but jones differs");
        }
        if is(&self.homfly_equal, true) && !is(&self.sl3_equal, true) {
            v.push("homfly equal but sl3 differs");
        }
        if self.kauffman == KauffmanVerdict::Distinct && !is(&self.homfly_equal, false) {
            v.push("kauffman distinct but homfly not known to differ");
        }
        if is(&self.p0_equal, false) != (self.kauffman == KauffmanVerdict::Distinct) {
            v.push("kauffman verdict disagrees with P0");
        }
        if let Field::Computed(VassilievGap::Degree { .. }) = self.vassiliev_gap {
            if is(&self.homfly_equal, true) {
                v.push("vassiliev gap found for equal values");
            }
        }
        v
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "compare {} / {}", self.first.name, self.second.name);
        let _ = writeln!(out, "homfly equal: {}", self.homfly_equal.show());
        let _ = writeln!(out, "P0 equal: {}", self.p0_equal.show());
        let _ = writeln!(out, "jones equal: {}", self.jones_equal.show());
        let _ = writeln!(out, "sl3 equal: {}", self.sl3_equal.show());
        if let Field::Computed(d) = &self.sl3_difference {
            if !d.is_zero() {
                let _ = writeln!(out, "sl3 difference: {d}");
            }
        }
        if let Field::Computed(Some(f)) = &self.sl3_cyclotomic_factor {
            let _ = writeln!(out, "sl3 difference divisible by 1 + s + ... + s^6: {f}");
        }
        let gap = match &self.vassiliev_gap {
            Field::Computed(VassilievGap::Degree { degree, coeff }) => format!("degree {degree}, coefficient {coeff}"),
            Field::Computed(VassilievGap::NoneUpTo(d)) => format!("none up to degree {d}"),
            Field::NotComputed => "not computed".into(),
        };
        let _ = writeln!(out, "vassiliev gap: {gap}");
        let kauffman = match self.kauffman {
            KauffmanVerdict::Distinct => "distinct",
            KauffmanVerdict::Inconclusive => "inconclusive",
            KauffmanVerdict::NotComputed => "not computed",
        };
        let _ = writeln!(out, "kauffman: {kauffman}");
        for e in &self.errors {
            let _ = writeln!(out, "error: {e}");
        }
        for k in [&self.first, &self.second] {
            out.push('\n');
            out.push_str(&k.render());
        }
        out
    }
}
