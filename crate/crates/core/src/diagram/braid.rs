use serde::{Deserialize, Serialize};

use super::{Arc, Crossing, Diagram, DiagramError, End, Tangle};

/// Braid word on `strands` strands; letter `i` is σᵢ and `-i` is σᵢ⁻¹.
///
/// In σᵢ the strand at position `i` passes over the strand at `i + 1` as
/// both move upward, which makes the crossing positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    pub word: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, word: Vec<i32>) -> Result<Self, DiagramError> {
        let b = Self { strands, word };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        if self.strands == 0 {
            return Err(DiagramError::Arity("a braid needs at least one strand".into()));
        }
        for &l in &self.word {
            if l == 0 || l.unsigned_abs() as usize >= self.strands {
                return Err(DiagramError::BraidIndex { letter: l, strands: self.strands });
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Algebraic letter sum.
    pub fn exponent_sum(&self) -> i64 {
        self.word.iter().map(|l| l.signum() as i64).sum()
    }

    /// `perm[i]` is the top position reached by the strand starting at bottom
    /// position `i` (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect(); // at[pos] = starting strand
        for &l in &self.word {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, s) in at.iter().enumerate() {
            perm[*s] = pos;
        }
        perm
    }

    pub fn cycle_count(&self) -> usize {
        let p = self.permutation();
        let mut seen = vec![false; p.len()];
        let mut n = 0;
        for i in 0..p.len() {
            if !seen[i] {
                n += 1;
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    j = p[j];
                }
            }
        }
        n
    }

    /// True when no two strands cross twice and every letter is positive.
    pub fn is_positive_permutation_braid(&self) -> bool {
        if self.word.iter().any(|l| *l < 0) {
            return false;
        }
        let mut at: Vec<usize> = (0..self.strands).collect();
        let mut crossed = std::collections::HashSet::new();
        for &l in &self.word {
            let i = l as usize - 1;
            let pair = (at[i].min(at[i + 1]), at[i].max(at[i + 1]));
            if !crossed.insert(pair) {
                return false;
            }
            at.swap(i, i + 1);
        }
        true
    }

    /// The word read backwards; for braid tangles this is the tangle turned
    /// upside down about a horizontal axis with strings reversed.
    pub fn reversed(&self) -> Self {
        Self { strands: self.strands, word: self.word.iter().rev().copied().collect() }
    }

    /// σᵢ ↦ σ_{n-i}. Combined with [`reversed`](Self::reversed) this is the
    /// braid turned by π in the plane, strings reversed.
    pub fn flipped_indices(&self) -> Self {
        let n = self.strands as i32;
        Self { strands: self.strands, word: self.word.iter().map(|l| l.signum() * (n - l.abs())).collect() }
    }

    /// Braid as a tangle with all strands pointing up.
    pub fn to_tangle(&self) -> Tangle {
        let n = self.strands;
        let mut cur: Vec<Arc> = (0..n as Arc).collect();
        let bottom: Vec<End> = cur.iter().map(|a| End::new(*a, true)).collect();
        let mut next = n as Arc;
        let mut crossings = Vec::with_capacity(self.word.len());
        for &l in &self.word {
            let i = l.unsigned_abs() as usize - 1;
            let (left, right) = (cur[i], cur[i + 1]);
            let (new_left, new_right) = (next, next + 1);
            next += 2;
            if l > 0 {
                crossings.push(Crossing::new(left, new_right, right, new_left, 1));
            } else {
                crossings.push(Crossing::new(right, new_left, left, new_right, -1));
            }
            cur[i] = new_left;
            cur[i + 1] = new_right;
        }
        let top = cur.iter().map(|a| End::new(*a, true)).collect();
        Tangle::from_parts(crossings, bottom, top, Vec::new())
    }

    /// Standard closure, strands returning on the right.
    pub fn closure(&self) -> Diagram {
        self.to_tangle().trace_close().expect("braid tangles close")
    }

    /// Tangle obtained by closing the last `k` strands on the right.
    pub fn partial_closure(&self, k: usize) -> Result<Tangle, DiagramError> {
        self.to_tangle().partial_trace_close(k)
    }

    /// Tensor with `k` straight strands on the right.
    pub fn with_extra_strands(&self, k: usize) -> Self {
        Self { strands: self.strands + k, word: self.word.clone() }
    }

    /// Concatenation, `self` first (below).
    pub fn then(&self, other: &BraidWord) -> Self {
        assert_eq!(self.strands, other.strands, "strand counts differ");
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Self { strands: self.strands, word }
    }

    /// Parallel cable with strand `i` replaced by `widths[i]` copies, all
    /// oriented along the original.
    pub fn cable(&self, widths: &[usize]) -> Self {
        assert_eq!(widths.len(), self.strands);
        let mut order: Vec<usize> = (0..self.strands).collect(); // strand at each position
        let mut word = Vec::new();
        for &l in &self.word {
            let i = l.unsigned_abs() as usize - 1;
            let offset: usize = order[..i].iter().map(|s| widths[*s]).sum();
            let (p, q) = (widths[order[i]], widths[order[i + 1]]);
            // the left group of p copies moves past the right group of q copies
            for a in 0..p {
                for b in 0..q {
                    let pos = offset + p - 1 - a + b + 1;
                    word.push(l.signum() * pos as i32);
                }
            }
            order.swap(i, i + 1);
        }
        Self { strands: widths.iter().sum(), word }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closures() {
        let u = BraidWord::new(1, vec![]).unwrap().closure();
        assert_eq!(u.crossing_count(), 0);
        assert_eq!(u.component_count(), 1);
        let t = BraidWord::new(2, vec![1, 1, 1]).unwrap().closure();
        assert_eq!(t.writhe(), 3);
        assert_eq!(t.component_count(), 1);
        let z = BraidWord::new(2, vec![1, -1]).unwrap().closure();
        assert_eq!(z.writhe(), 0);
        assert_eq!(z.component_count(), 2);
    }

    #[test]
    fn braid_b() {
        let b = BraidWord::new(6, vec![1, 2, 1, 3, 2, 4, 3, 5, 4]).unwrap();
        assert!(b.is_positive_permutation_braid());
        // tracked letter by letter: strand 0 ends at 5, 1 at 4, 2 at 0, ...
        assert_eq!(b.permutation(), vec![5, 4, 0, 1, 2, 3]);
        let d = b.closure();
        assert_eq!(d.crossing_count(), 9);
        assert_eq!(d.writhe(), 9);
        assert_eq!(d.component_count(), b.cycle_count());
        assert_eq!(b.cycle_count(), 1);
        assert!(!BraidWord::new(2, vec![1, 1]).unwrap().is_positive_permutation_braid());
    }

    #[test]
    fn bad_index() {
        assert!(BraidWord::new(3, vec![3]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
    }

    #[test]
    fn cabling_counts() {
        let b = BraidWord::new(3, vec![1, -2, 1]).unwrap();
        let c = b.cable(&[3, 2, 3]);
        assert_eq!(c.strands, 8);
        assert!(c.validate().is_ok());
        // blocks of 3·2, 3·3 and 2·3 as the widths follow the strands
        assert_eq!(c.len(), 6 + 9 + 6);
        assert_eq!(c.exponent_sum(), 6 - 9 + 6);
        let id = b.cable(&[1, 1, 1]);
        assert_eq!(id, b);
    }
}
