//! Named tangles, braids, schemes and knots shipped as JSON, each with the
//! checks that certify it.

mod verify;

pub use verify::{degree_seven_shape, Verifier};

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::diagram::{BraidWord, Diagram, Tangle};
use crate::engine::Source;
use crate::laurent::LMTable;
use crate::mutation::{BraidScheme, MutationScheme, TangleKind};

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("no catalog entry named {0:?}")]
    Unknown(String),
    #[error("entry {name}: {msg}")]
    Parse { name: String, msg: String },
    #[error("duplicate catalog entry {0:?}")]
    Duplicate(String),
    #[error("entry {0:?} is not available: {1}")]
    Unavailable(String, String),
    #[error("entry {0:?} is not a knot")]
    NotAKnot(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CatalogObject {
    Braid {
        braid: BraidWord,
    },
    /// A tangle, optionally with the 3-braid whose last `closed` strands
    /// were closed to make it.
    Tangle {
        tangle: Tangle,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        braid_form: Option<PartialClosure>,
    },
    Knot {
        diagram: Diagram,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        braid: Option<BraidWord>,
    },
    Scheme {
        scheme: MutationScheme,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        braid_form: Option<BraidScheme>,
    },
    /// Known only from a drawing that could not be transcribed; reference
    /// values, when there are any, are kept for comparison.
    Unavailable {
        reason: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        reference_lm_table: Option<LMTable>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialClosure {
    pub braid: BraidWord,
    pub closed: usize,
}

/// A check that certifies an entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Obligation {
    Crossings(usize),
    SingleComponent,
    PositivePermutationBraid,
    Kind(TangleKind),
    /// The stored diagram or tangle is the one built from the stored braid.
    MatchesBraidForm,
    /// The scheme assembles to the two named knot entries.
    AssemblesTo { knot: String, mutant: String },
    /// The knot is one of the Conway mutant family of the two tangles.
    InConwayFamily { f: String, g: String },
    /// The diagrams still differ after simplification.
    DistinctDiagram { other: String },
    ConwayPolynomialOne,
    NontrivialHomfly,
    SameHomfly { other: String },
    JonesEqual { other: String },
    /// Homfly differs from `other` with the listed properties; the gap
    /// coefficient is `± multiple · N(N²−1)(N²−4)(N²−9)` when given.
    DiffersFrom {
        other: String,
        p0_differs: bool,
        sl3_equal: bool,
        gap_degree: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gap_multiple: Option<i64>,
    },
}

impl Obligation {
    /// Whether checking needs Homfly values rather than diagram work.
    pub fn needs_homfly(&self) -> bool {
        matches!(
            self,
            Obligation::ConwayPolynomialOne
                | Obligation::NontrivialHomfly
                | Obligation::SameHomfly { .. }
                | Obligation::JonesEqual { .. }
                | Obligation::DiffersFrom { .. }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub object: CatalogObject,
    #[serde(default)]
    pub obligations: Vec<Obligation>,
}

impl CatalogEntry {
    pub fn is_available(&self) -> bool {
        !matches!(self.object, CatalogObject::Unavailable { .. })
    }

    /// How to feed the entry to an engine, if it is a knot.
    pub fn source(&self) -> Option<Source<'_>> {
        match &self.object {
            CatalogObject::Knot { braid: Some(b), .. } => Some(Source::Braid(b)),
            CatalogObject::Knot { diagram, .. } => Some(Source::Diagram(diagram)),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.object {
            CatalogObject::Braid { .. } => "braid",
            CatalogObject::Tangle { .. } => "tangle",
            CatalogObject::Knot { .. } => "knot",
            CatalogObject::Scheme { .. } => "scheme",
            CatalogObject::Unavailable { .. } => "unavailable",
        }
    }
}

const BUILTIN: &[(&str, &str)] = &[
    ("braid_56", include_str!("../../data/catalog/braid_56.json")),
    ("braid_B", include_str!("../../data/catalog/braid_B.json")),
    ("conway_knot", include_str!("../../data/catalog/conway_knot.json")),
    ("conway_satellite_scheme", include_str!("../../data/catalog/conway_satellite_scheme.json")),
    ("conway_tangle_F", include_str!("../../data/catalog/conway_tangle_F.json")),
    ("conway_tangle_G", include_str!("../../data/catalog/conway_tangle_G.json")),
    ("DG", include_str!("../../data/catalog/DG.json")),
    ("kt_knot", include_str!("../../data/catalog/kt_knot.json")),
    ("knot_56", include_str!("../../data/catalog/knot_56.json")),
    ("knot_56_mutant", include_str!("../../data/catalog/knot_56_mutant.json")),
    ("knot_72", include_str!("../../data/catalog/knot_72.json")),
    ("knot_72_mutant", include_str!("../../data/catalog/knot_72_mutant.json")),
    ("scheme_56", include_str!("../../data/catalog/scheme_56.json")),
    ("scheme_72", include_str!("../../data/catalog/scheme_72.json")),
    ("AB", include_str!("../../data/catalog/AB.json")),
    ("curve_P_55", include_str!("../../data/catalog/curve_P_55.json")),
    ("khovanov_P", include_str!("../../data/catalog/khovanov_P.json")),
    ("khovanov_T", include_str!("../../data/catalog/khovanov_T.json")),
    ("S55", include_str!("../../data/catalog/S55.json")),
    ("S55_prime", include_str!("../../data/catalog/S55_prime.json")),
    ("scheme_55", include_str!("../../data/catalog/scheme_55.json")),
    ("tangle_T_55", include_str!("../../data/catalog/tangle_T_55.json")),
];

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: BTreeMap<String, CatalogEntry>,
}

impl Catalog {
    /// The entries compiled into the library.
    pub fn builtin() -> Self {
        let mut c = Catalog::default();
        for (name, text) in BUILTIN {
            c.add_json(name, text).unwrap_or_else(|e| panic!("built-in catalog is broken: {e}"));
        }
        c
    }

    /// Every `*.json` file in a directory, one entry per file.
    pub fn load_dir(dir: &Path) -> Result<Self, CatalogError> {
        let mut c = Catalog::default();
        let mut paths: Vec<_> = std::fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        for p in paths {
            let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
            c.add_json(&stem, &std::fs::read_to_string(&p)?)?;
        }
        Ok(c)
    }

    fn add_json(&mut self, file_name: &str, text: &str) -> Result<(), CatalogError> {
        let parse = |msg: String| CatalogError::Parse { name: file_name.to_string(), msg };
        let e: CatalogEntry = serde_json::from_str(text).map_err(|e| parse(e.to_string()))?;
        if e.name != file_name {
            return Err(parse(format!("file holds entry {:?}", e.name)));
        }
        if self.entries.contains_key(&e.name) {
            return Err(CatalogError::Duplicate(e.name));
        }
        self.entries.insert(e.name.clone(), e);
        Ok(())
    }

    pub fn list(&self) -> Vec<&str> {
        self.entries.keys().map(String::as_str).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.values()
    }

    pub fn lookup(&self, name: &str) -> Result<&CatalogEntry, CatalogError> {
        self.entries.get(name).ok_or_else(|| CatalogError::Unknown(name.to_string()))
    }

    /// The engine input of a knot entry.
    pub fn knot(&self, name: &str) -> Result<Source<'_>, CatalogError> {
        let e = self.lookup(name)?;
        if let CatalogObject::Unavailable { reason, .. } = &e.object {
            return Err(CatalogError::Unavailable(name.to_string(), reason.clone()));
        }
        e.source().ok_or_else(|| CatalogError::NotAKnot(name.to_string()))
    }

    pub fn tangle(&self, name: &str) -> Result<&Tangle, CatalogError> {
        match &self.lookup(name)?.object {
            CatalogObject::Tangle { tangle, .. } => Ok(tangle),
            CatalogObject::Unavailable { reason, .. } => Err(CatalogError::Unavailable(name.to_string(), reason.clone())),
            _ => Err(CatalogError::Parse { name: name.to_string(), msg: "not a tangle".into() }),
        }
    }

    pub fn scheme(&self, name: &str) -> Result<&MutationScheme, CatalogError> {
        match &self.lookup(name)?.object {
            CatalogObject::Scheme { scheme, .. } => Ok(scheme),
            CatalogObject::Unavailable { reason, .. } => Err(CatalogError::Unavailable(name.to_string(), reason.clone())),
            _ => Err(CatalogError::Parse { name: name.to_string(), msg: "not a scheme".into() }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::MemoCache;

    #[test]
    fn builtin_matches_data_directory() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/catalog");
        let from_dir = Catalog::load_dir(&dir).unwrap();
        let builtin = Catalog::builtin();
        assert_eq!(from_dir.list(), builtin.list());
        for e in builtin.entries() {
            assert_eq!(from_dir.lookup(&e.name).unwrap(), e);
        }
    }

    #[test]
    fn lookup_and_errors() {
        let c = Catalog::builtin();
        assert!(c.list().contains(&"conway_knot"));
        assert!(matches!(c.lookup("nope"), Err(CatalogError::Unknown(_))));
        assert!(matches!(c.knot("S55"), Err(CatalogError::Unavailable(..))));
        assert!(matches!(c.knot("braid_B"), Err(CatalogError::NotAKnot(_))));
        let CatalogObject::Braid { braid } = &c.lookup("braid_B").unwrap().object else { panic!("braid_B is not a braid") };
        assert_eq!(braid.strands, 6);
        assert_eq!(braid.word, [1, 2, 1, 3, 2, 4, 3, 5, 4]);
    }

    #[test]
    fn structural_obligations_hold() {
        let c = Catalog::builtin();
        let cache = MemoCache::in_memory();
        let v = Verifier::new(&c, &cache);
        for e in c.entries().filter(|e| e.is_available()) {
            assert!(!e.obligations.is_empty(), "{} has no obligations", e.name);
            for (o, r) in v.check_entry(e, false) {
                assert!(r.is_ok(), "{}: {o:?}: {r:?}", e.name);
            }
        }
    }

    #[test]
    fn conway_pair_homfly_obligations() {
        let c = Catalog::builtin();
        let cache = MemoCache::in_memory();
        let v = Verifier::new(&c, &cache);
        for name in ["conway_knot", "kt_knot"] {
            for (o, r) in v.check_entry(c.lookup(name).unwrap(), true) {
                assert!(r.is_ok(), "{name}: {o:?}: {r:?}");
            }
        }
    }

    #[test]
    fn bad_files_rejected() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("x.json"), r#"{"name":"y","description":"","object":{"type":"braid","braid":{"strands":2,"word":[1]}}}"#).unwrap();
        assert!(matches!(Catalog::load_dir(dir.path()), Err(CatalogError::Parse { .. })));
        std::fs::write(dir.path().join("x.json"), r#"{"name":"x","description":"","object":{"type":"braid","braid":{"strands":2,"word":[1]}}}"#).unwrap();
        assert_eq!(Catalog::load_dir(dir.path()).unwrap().list(), ["x"]);
    }
}
