use serde::{Deserialize, Serialize};

use crate::diagram::{cable_general, Axis, BraidWord, CableSpec, Diagram, End, FramedKnot, Tangle};

use super::{MutationError, MutationScheme};

/// A pattern in the solid torus, given as an `m`-tangle whose top and
/// bottom are identified around the annulus. All strands point up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatellitePattern {
    pub q: Tangle,
}

impl SatellitePattern {
    pub fn new(q: Tangle) -> Result<Self, MutationError> {
        q.validate()?;
        let m = q.bottom().len();
        if m == 0 || q.top().len() != m || !q.bottom().iter().chain(q.top()).all(|e| e.up) {
            return Err(MutationError::Invalid("a pattern needs m ≥ 1 upward strands on each edge".into()));
        }
        Ok(Self { q })
    }

    /// The core of the solid torus.
    pub fn core() -> Self {
        Self { q: Tangle::identity(&[true]) }
    }

    pub fn from_braid(b: &BraidWord) -> Self {
        Self { q: b.to_tangle() }
    }

    pub fn winding(&self) -> usize {
        self.q.bottom().len()
    }

    pub fn is_trivial(&self) -> bool {
        self.winding() == 1 && self.q.crossing_count() == 0 && self.q.free_loops().is_empty()
    }
}

/// Cuts arc 0 of a knot diagram, giving a 1-tangle running upward from the
/// cut back to it.
pub fn long_knot(k: &Diagram) -> Tangle {
    let cs = k.crossings();
    if cs.is_empty() {
        return Tangle::identity(&[true]);
    }
    let fresh = cs.iter().flat_map(|c| c.slots()).max().expect("crossings") + 1;
    let mut crossings = cs.to_vec();
    let mut cut = false;
    for c in &mut crossings {
        if c.over_in == 0 && !cut {
            c.over_in = fresh;
            cut = true;
        } else if c.under_in == 0 && !cut {
            c.under_in = fresh;
            cut = true;
        }
    }
    Tangle::new(crossings, vec![End::new(fresh, true)], vec![End::new(0, true)], Vec::new()).expect("cut knot is a valid tangle")
}

/// Satellite of `k` with pattern `q`: the blackboard `m`-parallel of `k`
/// with `q` inserted where arc 0 was cut.
pub fn satellite(k: &FramedKnot, q: &SatellitePattern) -> Result<FramedKnot, MutationError> {
    let m = q.winding();
    let long = long_knot(k);
    let cable = cable_general(&long, &CableSpec::uniform(1, m))?;
    let d = q.q.stack(&cable)?.trace_close()?;
    let n = d.component_count();
    if n != 1 {
        return Err(MutationError::NotAKnot(n));
    }
    Ok(FramedKnot::new(d)?)
}

/// The scheme whose assembly is the satellite of the assembled knot: every
/// ribbon multiplicity scaled by `m`, `T` cabled, and the pattern placed at
/// bottom endpoint 0 of `T`.
pub fn scheme_satellite_commutes(s: &MutationScheme, q: &SatellitePattern) -> Result<MutationScheme, MutationError> {
    if q.is_trivial() {
        return Ok(s.clone());
    }
    let m = q.winding();
    let strands = s.t.strands().len();
    let cabled = cable_general(&s.t, &CableSpec::uniform(strands, m))?;
    let pattern = if s.t.bottom()[0].up { q.q.clone() } else { q.q.rotate(Axis::Tau2, false) };
    let rest: Vec<bool> = cabled.bottom()[m..].iter().map(|e| e.up).collect();
    let below = pattern.side_by_side(&Tangle::identity(&rest));
    let t = below.stack(&cabled)?;
    let repeat = |o: &[i8]| -> Vec<i8> { o.iter().flat_map(|e| std::iter::repeat_n(*e, m)).collect() };
    MutationScheme::new(s.f.clone(), s.kind, t, repeat(&s.orient1), repeat(&s.orient2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{canonical_code, simplify};
    use crate::mutation::TangleKind;

    fn trefoil() -> FramedKnot {
        FramedKnot::new(BraidWord::new(2, vec![1, 1, 1]).unwrap().closure()).unwrap()
    }

    #[test]
    fn trivial_pattern() {
        let k = trefoil();
        let s = satellite(&k, &SatellitePattern::core()).unwrap();
        assert_eq!(canonical_code(&s), canonical_code(&k));
    }

    #[test]
    fn crossing_count_of_satellite() {
        let k = trefoil();
        for (m, word) in [(2, vec![1]), (3, vec![1, 2]), (3, vec![-2, 1, 2, 2])] {
            let q = SatellitePattern::from_braid(&BraidWord::new(m, word.clone()).unwrap());
            let s = satellite(&k, &q).unwrap();
            assert_eq!(s.crossing_count(), 3 * m * m + word.len());
        }
    }

    #[test]
    fn link_pattern_rejected() {
        let q = SatellitePattern::from_braid(&BraidWord::new(2, vec![]).unwrap());
        assert!(matches!(satellite(&trefoil(), &q), Err(MutationError::NotAKnot(2))));
    }

    #[test]
    fn commutes_with_assembly() {
        let f = BraidWord::new(3, vec![1, 2, -1, 2, 1]).unwrap().partial_closure(1).unwrap();
        let t = BraidWord::new(2, vec![1, 1, 1]).unwrap().to_tangle();
        let s = MutationScheme::new(f, TangleKind::Pure, t, vec![1], vec![1]).unwrap();
        let q = SatellitePattern::from_braid(&BraidWord::new(2, vec![1]).unwrap());
        let s2 = scheme_satellite_commutes(&s, &q).unwrap();
        assert_eq!((s2.m1, s2.m2), (2, 2));
        let a = satellite(&s.assemble().unwrap(), &q).unwrap();
        let b = s2.assemble().unwrap();
        assert_eq!(canonical_code(&simplify(&a).0), canonical_code(&simplify(&b).0));
        let trivial = scheme_satellite_commutes(&s, &SatellitePattern::core()).unwrap();
        assert_eq!(trivial, s);
    }
}
