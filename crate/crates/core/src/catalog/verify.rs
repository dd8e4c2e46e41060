use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Catalog, CatalogEntry, CatalogObject, Obligation};
use crate::analysis::{jones, sl3_difference, vassiliev_gap, VassilievGap};
use crate::diagram::{canonical_code, simplify, tangle_code, Diagram};
use crate::engine::{ambient_homfly, Budget, EngineKind, MemoCache};
use crate::laurent::{LaurentVZ, NPoly};
use crate::mutation::{conway_mutant_family, tangle_kind};

/// Checks obligations against a catalog, remembering Homfly values.
pub struct Verifier<'a> {
    catalog: &'a Catalog,
    cache: &'a MemoCache,
    pub engine: EngineKind,
    pub budget: Budget,
    values: Mutex<HashMap<String, LaurentVZ>>,
}

/// `N(N²−1)(N²−4)(N²−9)`.
pub fn degree_seven_shape() -> NPoly {
    NPoly::from_roots(1, &[0, 1, -1, 2, -2, 3, -3])
}

impl<'a> Verifier<'a> {
    pub fn new(catalog: &'a Catalog, cache: &'a MemoCache) -> Self {
        Self { catalog, cache, engine: EngineKind::Auto, budget: Budget::default(), values: Mutex::default() }
    }

    /// Ambient Homfly of a knot entry.
    pub fn homfly(&self, name: &str) -> Result<LaurentVZ, String> {
        if let Some(p) = self.values.lock().expect("values").get(name) {
            return Ok(p.clone());
        }
        let src = self.catalog.knot(name).map_err(|e| e.to_string())?;
        let p = ambient_homfly(src, self.engine, self.cache, self.budget).map_err(|e| e.to_string())?;
        self.values.lock().expect("values").insert(name.to_string(), p.clone());
        Ok(p)
    }

    fn diagram(&self, name: &str) -> Result<Diagram, String> {
        match &self.catalog.lookup(name).map_err(|e| e.to_string())?.object {
            CatalogObject::Knot { diagram, .. } => Ok(diagram.clone()),
            _ => Err(format!("{name} is not a knot entry")),
        }
    }

    /// Runs every obligation of an entry, skipping the Homfly ones unless
    /// `with_homfly` is set.
    pub fn check_entry(&self, e: &CatalogEntry, with_homfly: bool) -> Vec<(Obligation, Result<(), String>)> {
        e.obligations
            .iter()
            .filter(|o| with_homfly || !o.needs_homfly())
            .map(|o| (o.clone(), self.check(e, o)))
            .collect()
    }

    pub fn check(&self, e: &CatalogEntry, o: &Obligation) -> Result<(), String> {
        let expect = |ok: bool, msg: String| if ok { Ok(()) } else { Err(msg) };
        match (o, &e.object) {
            (_, CatalogObject::Unavailable { reason, .. }) => Err(format!("unavailable: {reason}")),
            (Obligation::Crossings(n), obj) => {
                let found = match obj {
                    CatalogObject::Braid { braid } => braid.len(),
                    CatalogObject::Tangle { tangle, .. } => tangle.crossing_count(),
                    CatalogObject::Knot { diagram, .. } => diagram.crossing_count(),
                    CatalogObject::Scheme { scheme, .. } => scheme.assemble().map_err(|e| e.to_string())?.crossing_count(),
                    CatalogObject::Unavailable { .. } => unreachable!(),
                };
                expect(found == *n, format!("{found} crossings, expected {n}"))
            }
            (Obligation::SingleComponent, obj) => {
                let n = match obj {
                    CatalogObject::Braid { braid } => braid.cycle_count(),
                    CatalogObject::Knot { diagram, .. } => diagram.component_count(),
                    CatalogObject::Scheme { scheme, .. } => {
                        scheme.assemble().map_err(|e| e.to_string())?;
                        1
                    }
                    _ => return Err("not a closed object".into()),
                };
                expect(n == 1, format!("{n} components"))
            }
            (Obligation::PositivePermutationBraid, CatalogObject::Braid { braid }) => {
                expect(braid.is_positive_permutation_braid(), "not a positive permutation braid".into())
            }
            (Obligation::Kind(k), CatalogObject::Tangle { tangle, .. }) => {
                let found = tangle_kind(tangle);
                expect(found == Some(*k), format!("tangle kind is {found:?}"))
            }
            (Obligation::Kind(k), CatalogObject::Scheme { scheme, braid_form }) => {
                let mut ok = scheme.kind == *k && tangle_kind(&scheme.f) == Some(*k);
                if let Some(b) = braid_form {
                    ok &= b.kind().ok() == Some(*k);
                }
                expect(ok, format!("scheme kind is not {k:?}"))
            }
            (Obligation::MatchesBraidForm, obj) => match obj {
                CatalogObject::Tangle { tangle, braid_form: Some(b) } => {
                    let built = b.braid.partial_closure(b.closed).map_err(|e| e.to_string())?;
                    expect(tangle_code(&built) == tangle_code(tangle), "tangle differs from its braid form".into())
                }
                CatalogObject::Knot { diagram, braid: Some(b) } => {
                    expect(canonical_code(&b.closure()) == canonical_code(diagram), "diagram differs from the braid closure".into())
                }
                CatalogObject::Scheme { scheme, braid_form: Some(b) } => {
                    let from_braid = b.to_scheme().map_err(|e| e.to_string())?;
                    let (k1, k2) = b.braid_pair();
                    let (a1, a2) = scheme.mutant_pair().map_err(|e| e.to_string())?;
                    let same = tangle_code(&from_braid.f) == tangle_code(&scheme.f)
                        && tangle_code(&from_braid.t) == tangle_code(&scheme.t)
                        && canonical_code(&k1.closure()) == canonical_code(&a1)
                        && canonical_code(&k2.closure()) == canonical_code(&a2);
                    expect(same, "scheme differs from its braid form".into())
                }
                _ => Err("no braid form stored".into()),
            },
            (Obligation::AssemblesTo { knot, mutant }, CatalogObject::Scheme { scheme, .. }) => {
                let (a, b) = scheme.mutant_pair().map_err(|e| e.to_string())?;
                expect(canonical_code(&a) == canonical_code(&self.diagram(knot)?), format!("assembled knot is not {knot}"))?;
                expect(canonical_code(&b) == canonical_code(&self.diagram(mutant)?), format!("assembled mutant is not {mutant}"))
            }
            (Obligation::InConwayFamily { f, g }, CatalogObject::Knot { diagram, .. }) => {
                let (f, g) = (self.catalog.tangle(f).map_err(|e| e.to_string())?, self.catalog.tangle(g).map_err(|e| e.to_string())?);
                let (k, kf, kg, kfg) = conway_mutant_family(f, g).map_err(|e| e.to_string())?;
                let code = canonical_code(diagram);
                expect([k, kf, kg, kfg].iter().any(|x| canonical_code(x) == code), "not in the mutant family".into())
            }
            (Obligation::DistinctDiagram { other }, CatalogObject::Knot { diagram, .. }) => {
                let a = canonical_code(&simplify(diagram).0);
                let b = canonical_code(&simplify(&self.diagram(other)?).0);
                expect(a != b, format!("same simplified diagram as {other}"))
            }
            (Obligation::ConwayPolynomialOne, _) => {
                let p = self.homfly(&e.name)?;
                let mut by_z: HashMap<i32, BigInt> = HashMap::new();
                for ((_, b), c) in p.terms() {
                    *by_z.entry(b).or_insert_with(BigInt::zero) += c;
                }
                by_z.retain(|_, c| !c.is_zero());
                let one = by_z.len() == 1 && by_z.get(&0).is_some_and(|c| c.is_one());
                expect(one, "Conway polynomial is not 1".into())
            }
            (Obligation::NontrivialHomfly, _) => expect(self.homfly(&e.name)? != LaurentVZ::one(), "Homfly is 1".into()),
            (Obligation::SameHomfly { other }, _) => {
                expect(self.homfly(&e.name)? == self.homfly(other)?, format!("Homfly differs from {other}"))
            }
            (Obligation::JonesEqual { other }, _) => {
                let (p, q) = (self.homfly(&e.name)?, self.homfly(other)?);
                expect(jones(&p).ok() == jones(&q).ok(), format!("Jones differs from {other}"))
            }
            (Obligation::DiffersFrom { other, p0_differs, sl3_equal, gap_degree, gap_multiple }, _) => {
                let (p, q) = (self.homfly(&e.name)?, self.homfly(other)?);
                expect(p != q, format!("Homfly equals that of {other}"))?;
                expect((p.p0() != q.p0()) == *p0_differs, format!("P0 difference is not {p0_differs}"))?;
                let d = sl3_difference(&p, &q).map_err(|e| e.to_string())?;
                expect(d.is_zero() == *sl3_equal, format!("v = s^3 equality is not {sl3_equal}"))?;
                match vassiliev_gap(&p, &q, gap_degree + 1).map_err(|e| e.to_string())? {
                    VassilievGap::Degree { degree, coeff } => {
                        expect(degree == *gap_degree, format!("gap degree {degree}, expected {gap_degree}"))?;
                        if let Some(c) = gap_multiple {
                            let want = degree_seven_shape().scale(&num_rational::BigRational::from_integer((*c).into()));
                            expect(coeff == want || coeff == -&want, format!("gap coefficient {coeff}"))?;
                        }
                        Ok(())
                    }
                    VassilievGap::NoneUpTo(d) => Err(format!("no gap up to degree {d}")),
                }
            }
            (o, _) => Err(format!("{o:?} does not apply to a {}", e.kind_name())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_polynomial() {
        // N(N²−1)(N²−4)(N²−9) = N⁷ − 14N⁵ + 49N³ − 36N
        let p = degree_seven_shape();
        let c: Vec<String> = p.coeffs().iter().map(|x| x.to_string()).collect();
        assert_eq!(c, ["0", "-36", "0", "49", "0", "-14", "0", "1"]);
    }
}
