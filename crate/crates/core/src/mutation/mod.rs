//! Genus-2 mutant pairs built by following a 2-tangle, Conway mutant
//! families, and satellites.
//!
//! Layout: the knot is the trace closure of `T` stacked below the cable
//! `F^(m2,m1)`. The ribbon through bottom endpoint 0 of `F` carries `m1`
//! strands. For a pure `F` both boundary edges of `T` read `[m1 | m2]` from
//! the left; for a transposing `F` the bottom edge of `T` reads `[m2 | m1]`.

mod braid_form;
mod satellite;

pub use braid_form::BraidScheme;
pub use satellite::{satellite, scheme_satellite_commutes, SatellitePattern};

use serde::{Deserialize, Serialize};

use crate::diagram::{cable_tangle, Axis, Diagram, DiagramError, End, FramedKnot, Tangle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TangleKind {
    Pure,
    Transposing,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MutationError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("tangle F is {found:?} but the scheme says {declared:?}")]
    KindMismatch { declared: TangleKind, found: Option<TangleKind> },
    #[error("F must be a 2-tangle without closed components")]
    NotTwoTangle,
    #[error("the assembled diagram has {0} components, not 1")]
    NotAKnot(usize),
    #[error("{0}")]
    Invalid(String),
}

/// Connectivity class of a 2-tangle, `None` when its bottom endpoints are
/// joined to each other or it has closed components.
pub fn tangle_kind(f: &Tangle) -> Option<TangleKind> {
    if f.bottom().len() != 2 || f.top().len() != 2 || !f.free_loops().is_empty() {
        return None;
    }
    let strands = f.strands();
    if strands.len() != 2 {
        return None;
    }
    let with = |a: u32| strands.iter().position(|s| s.contains(&a));
    let (b0, b1, t0, t1) = (with(f.bottom()[0].arc), with(f.bottom()[1].arc), with(f.top()[0].arc), with(f.top()[1].arc));
    if b0 == t0 && b1 == t1 && b0 != b1 {
        Some(TangleKind::Pure)
    } else if b0 == t1 && b1 == t0 && b0 != b1 {
        Some(TangleKind::Transposing)
    } else {
        None
    }
}

/// A 2-tangle `F`, an inner tangle `T`, and the multiplicities and copy
/// orientations of the two ribbons.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationScheme {
    #[serde(rename = "F")]
    pub f: Tangle,
    pub kind: TangleKind,
    #[serde(rename = "T")]
    pub t: Tangle,
    pub m1: usize,
    pub m2: usize,
    pub orient1: Vec<i8>,
    pub orient2: Vec<i8>,
}

impl MutationScheme {
    pub fn new(
        f: Tangle,
        kind: TangleKind,
        t: Tangle,
        orient1: Vec<i8>,
        orient2: Vec<i8>,
    ) -> Result<Self, MutationError> {
        let s = Self { f, kind, t, m1: orient1.len(), m2: orient2.len(), orient1, orient2 };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), MutationError> {
        self.f.validate()?;
        self.t.validate()?;
        let found = tangle_kind(&self.f);
        if found.is_none() && (self.f.bottom().len() != 2 || self.f.top().len() != 2) {
            return Err(MutationError::NotTwoTangle);
        }
        if found != Some(self.kind) {
            return Err(MutationError::KindMismatch { declared: self.kind, found });
        }
        if self.m1 == 0 || self.m2 == 0 || self.orient1.len() != self.m1 || self.orient2.len() != self.m2 {
            return Err(MutationError::Invalid(format!(
                "multiplicities ({}, {}) need orientation lists of the same lengths",
                self.m1, self.m2
            )));
        }
        let cable = self.cable()?;
        check_edge(self.t.top(), cable.bottom(), "top of T")?;
        check_edge(self.t.bottom(), cable.top(), "bottom of T")?;
        Ok(())
    }

    /// The cable `F^(m2,m1)`.
    pub fn cable(&self) -> Result<Tangle, MutationError> {
        Ok(cable_tangle(&self.f, self.m2, self.m1, &self.orient1, &self.orient2)?)
    }

    /// The knot with `T` in the square and the cable alongside.
    pub fn assemble(&self) -> Result<FramedKnot, MutationError> {
        assemble_with(&self.t, &self.cable()?)
    }

    /// The inner tangle of the mutant: `τ₁(T)` for pure `F`, `τ₂(T)` for
    /// transposing `F`, with every string reversed so the cable keeps its
    /// orientations.
    pub fn mutant_tangle(&self) -> Tangle {
        let axis = match self.kind {
            TangleKind::Pure => Axis::Tau1,
            TangleKind::Transposing => Axis::Tau2,
        };
        self.t.rotate(axis, true)
    }

    /// The same scheme with the mutant inner tangle.
    pub fn mutant(&self) -> Self {
        Self { t: self.mutant_tangle(), ..self.clone() }
    }

    pub fn mutant_pair(&self) -> Result<(FramedKnot, FramedKnot), MutationError> {
        let cable = self.cable()?;
        Ok((assemble_with(&self.t, &cable)?, assemble_with(&self.mutant_tangle(), &cable)?))
    }
}

fn check_edge(t_side: &[End], cable_side: &[End], what: &str) -> Result<(), MutationError> {
    if t_side.len() != cable_side.len() {
        return Err(MutationError::Invalid(format!(
            "{what} has {} endpoints but the cable needs {}",
            t_side.len(),
            cable_side.len()
        )));
    }
    for (i, (a, b)) in t_side.iter().zip(cable_side).enumerate() {
        if a.up != b.up {
            return Err(MutationError::Invalid(format!("{what}: endpoint {i} points the wrong way")));
        }
    }
    Ok(())
}

/// Trace closure of `t` below `cable`, arcs relabeled so arc 0 runs through
/// the bottom endpoint 0 of `t`.
fn assemble_with(t: &Tangle, cable: &Tangle) -> Result<FramedKnot, MutationError> {
    let d = t.stack(cable)?.trace_close()?;
    let n = d.component_count();
    if n != 1 {
        return Err(MutationError::NotAKnot(n));
    }
    Ok(FramedKnot::new(d)?)
}

/// The knot made of `g` and `f` side by side in the usual two-box picture:
/// `g` below `f`, closed around the right.
pub fn join(f: &Tangle, g: &Tangle) -> Result<Diagram, MutationError> {
    Ok(g.stack(f)?.trace_close()?)
}

/// `(K, K_F, K_G, K_FG)` for a pure `F` and a transposing `G`.
///
/// `K_F` follows `F` with `τ₁(G)` inside, `K_G` follows `G` with `τ₂(F)`
/// inside, and `K_FG` carries both rotations.
pub fn conway_mutant_family(
    f: &Tangle,
    g: &Tangle,
) -> Result<(FramedKnot, FramedKnot, FramedKnot, FramedKnot), MutationError> {
    let one = || vec![1i8];
    let follow_f = MutationScheme::new(f.clone(), TangleKind::Pure, g.clone(), one(), one())?;
    let follow_g = MutationScheme::new(g.clone(), TangleKind::Transposing, f.clone(), one(), one())?;
    let (k, k_f) = follow_f.mutant_pair()?;
    let (_, k_g) = follow_g.mutant_pair()?;
    let g1 = follow_f.mutant_tangle();
    let follow_g1 = MutationScheme::new(g1, TangleKind::Transposing, f.clone(), one(), one())?;
    let (_, k_fg) = follow_g1.mutant_pair()?;
    Ok((k, k_f, k_g, k_fg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{canonical_code, simplify, BraidWord};

    fn kink_tangle() -> Tangle {
        // positive curl on the right strand
        BraidWord::new(3, vec![2]).unwrap().partial_closure(1).unwrap()
    }

    #[test]
    fn kinds() {
        let id = Tangle::identity(&[true, true]);
        assert_eq!(tangle_kind(&id), Some(TangleKind::Pure));
        let x = BraidWord::new(2, vec![1]).unwrap().to_tangle();
        assert_eq!(tangle_kind(&x), Some(TangleKind::Transposing));
        assert_eq!(tangle_kind(&kink_tangle()), Some(TangleKind::Pure));
        let cap = BraidWord::new(3, vec![1, 2]).unwrap().partial_closure(1).unwrap();
        assert_eq!(tangle_kind(&cap), Some(TangleKind::Transposing));
    }

    #[test]
    fn degenerate_scheme_gives_kinked_unknot() {
        let id = Tangle::identity(&[true, true]);
        let t = BraidWord::new(2, vec![1]).unwrap().to_tangle();
        let s = MutationScheme::new(id.clone(), TangleKind::Pure, t, vec![1], vec![1]).unwrap();
        let k = s.assemble().unwrap();
        assert_eq!((k.crossing_count(), k.writhe()), (1, 1));
        let (u, curl) = simplify(&k);
        assert_eq!((u.crossing_count(), curl), (0, 1));
        let s = MutationScheme::new(id.clone(), TangleKind::Pure, kink_tangle(), vec![1], vec![1]).unwrap();
        assert!(matches!(s.assemble(), Err(MutationError::NotAKnot(2))));
    }

    #[test]
    fn kind_mismatch_rejected() {
        let id = Tangle::identity(&[true, true]);
        let r = MutationScheme::new(id.clone(), TangleKind::Transposing, id, vec![1], vec![1]);
        assert!(matches!(r, Err(MutationError::KindMismatch { .. })));
    }

    #[test]
    fn symmetric_inner_tangle_gives_same_diagram() {
        let f = BraidWord::new(3, vec![2, 1, 2, 2]).unwrap().partial_closure(1).unwrap();
        assert_eq!(tangle_kind(&f), Some(TangleKind::Transposing));
        // σ1σ5 is unchanged by the half turn
        let t = BraidWord::new(6, vec![1, 5]).unwrap().to_tangle();
        let s = MutationScheme::new(f, TangleKind::Transposing, t, vec![1; 3], vec![1; 3]).unwrap();
        let (a, b) = s.mutant_pair().unwrap();
        assert_eq!(canonical_code(&simplify(&a).0), canonical_code(&simplify(&b).0));
    }

    #[test]
    fn json_round_trip() {
        let f = BraidWord::new(3, vec![1, 2, -1, 2, 1]).unwrap().partial_closure(1).unwrap();
        let t = BraidWord::new(2, vec![1, 1]).unwrap().to_tangle();
        let s = MutationScheme::new(f, TangleKind::Pure, t, vec![1], vec![1]).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert!(j.contains("\"kind\":\"pure\""));
        let back: MutationScheme = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }
}
