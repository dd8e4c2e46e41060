use std::collections::HashMap;

use crate::diagram::BraidWord;
use crate::laurent::LaurentVZ;

use super::perm::Perm;

/// Element of the Hecke algebra `H_n` with `σ² = zσ + 1`, as a sparse map
/// from permutations to coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    n: usize,
    terms: HashMap<Perm, LaurentVZ>,
}

impl HeckeElement {
    pub fn one(n: usize) -> Self {
        let mut terms = HashMap::new();
        terms.insert(Perm::identity(n), LaurentVZ::one());
        Self { n, terms }
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &HashMap<Perm, LaurentVZ> {
        &self.terms
    }

    pub fn coeff(&self, w: &Perm) -> LaurentVZ {
        self.terms.get(w).cloned().unwrap_or_else(LaurentVZ::zero)
    }

    fn add(&mut self, w: Perm, c: LaurentVZ) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(LaurentVZ::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    /// Right multiplication by `σ_i` (0-based generator index, `inverse` for `σ_i⁻¹`).
    pub fn times_generator(&self, i: usize, inverse: bool) -> Self {
        let mut out = Self { n: self.n, terms: HashMap::new() };
        let z = LaurentVZ::z();
        for (w, c) in &self.terms {
            let (ws, up) = w.times_generator(i);
            match (up, inverse) {
                // T_w T_s = T_ws
                (true, false) => out.add(ws, c.clone()),
                // T_w T_s = T_ws + z T_w
                (false, false) => {
                    out.add(ws, c.clone());
                    out.add(w.clone(), c * &z);
                }
                // T_s⁻¹ = T_s − z
                (true, true) => {
                    out.add(ws, c.clone());
                    out.add(w.clone(), -(c * &z));
                }
                (false, true) => out.add(ws, c.clone()),
            }
        }
        out
    }
}

/// Image of a braid word in `H_n`.
pub fn braid_to_hecke(b: &BraidWord) -> HeckeElement {
    let mut e = HeckeElement::one(b.strands);
    for &l in &b.word {
        e = e.times_generator(l.unsigned_abs() as usize - 1, l < 0);
    }
    e
}

/// Framed Homfly of the closure: the Ocneanu trace normalised so the unknot is 1.
///
/// A basis element whose last value sits at the end restricts to `H_{n-1}`
/// with a factor `δ`. Otherwise it factors as `T_u σ_{n-1} σ_{n-2}⋯σ_k` and the
/// last strand closes through `σ_{n-1}` with a factor `v⁻¹`.
pub fn trace_closure(e: &HeckeElement) -> LaurentVZ {
    let mut cur = e.clone();
    let delta = LaurentVZ::delta();
    let vinv = LaurentVZ::monomial(1, -1, 0);
    while cur.n > 1 {
        let n = cur.n;
        let mut groups: Vec<HeckeElement> = (0..n).map(|_| HeckeElement { n: n - 1, terms: HashMap::new() }).collect();
        for (w, c) in &cur.terms {
            let p = w.0.iter().position(|&x| x as usize == n - 1).expect("permutation");
            let mut u = w.0.clone();
            u.remove(p);
            groups[p].add(Perm(u), c.clone());
        }
        let mut next = HeckeElement { n: n - 1, terms: HashMap::new() };
        for (p, mut g) in groups.into_iter().enumerate() {
            let factor = if p == n - 1 {
                &delta
            } else {
                for i in (p..n.saturating_sub(2)).rev() {
                    g = g.times_generator(i, false);
                }
                &vinv
            };
            for (w, c) in g.terms {
                next.add(w, &c * factor);
            }
        }
        cur = next;
    }
    if cur.n == 0 {
        return LaurentVZ::one();
    }
    cur.coeff(&Perm::identity(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::homfly_brute;

    #[test]
    fn quadratic_relation() {
        let e = braid_to_hecke(&BraidWord::new(2, vec![1, 1]).unwrap());
        let s = Perm(vec![1, 0]);
        assert_eq!(e.coeff(&s), LaurentVZ::z());
        assert_eq!(e.coeff(&Perm::identity(2)), LaurentVZ::one());
        let e = braid_to_hecke(&BraidWord::new(2, vec![1, -1]).unwrap());
        assert_eq!(e, HeckeElement::one(2));
    }

    #[test]
    fn braid_relation() {
        let a = braid_to_hecke(&BraidWord::new(3, vec![1, 2, 1]).unwrap());
        let b = braid_to_hecke(&BraidWord::new(3, vec![2, 1, 2]).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn trace_matches_skein_tree() {
        let words: &[(usize, &[i32])] = &[
            (1, &[]),
            (2, &[]),
            (2, &[1, 1, 1]),
            (3, &[1, -2, 1, -2]),
            (3, &[1, 1, 2, -1, 2, 2]),
            (4, &[1, 2, 3, -1, 2, -3, -2]),
            (4, &[1, -2, 3, 1, 1, -2, 3, 3, 2]),
            (5, &[4, 3, 2, 1, -4, 2, -3, 1]),
        ];
        for (n, w) in words {
            let b = BraidWord::new(*n, w.to_vec()).unwrap();
            let want = homfly_brute(&b.closure()).unwrap();
            assert_eq!(trace_closure(&braid_to_hecke(&b)), want, "{w:?}");
        }
    }
}
