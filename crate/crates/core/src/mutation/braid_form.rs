use serde::{Deserialize, Serialize};

use crate::diagram::{BraidWord, Tangle};

use super::{tangle_kind, MutationError, MutationScheme, TangleKind};

/// A scheme whose knots are closed braids: `F` is a 3-braid with its last
/// strand closed on the right, `T` is a braid on `m1 + m2` strands, and
/// every ribbon copy points up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidScheme {
    pub f: BraidWord,
    pub t: BraidWord,
    pub m1: usize,
    pub m2: usize,
}

impl BraidScheme {
    pub fn new(f: BraidWord, t: BraidWord, m1: usize, m2: usize) -> Result<Self, MutationError> {
        let s = Self { f, t, m1, m2 };
        s.kind()?;
        if s.t.strands != m1 + m2 {
            return Err(MutationError::Invalid(format!("T has {} strands, expected {}", s.t.strands, m1 + m2)));
        }
        Ok(s)
    }

    pub fn kind(&self) -> Result<TangleKind, MutationError> {
        if self.f.strands != 3 {
            return Err(MutationError::Invalid("F must be a 3-braid".into()));
        }
        let tangle = self.f.partial_closure(1)?;
        tangle_kind(&tangle).ok_or(MutationError::NotTwoTangle)
    }

    /// Copies carried by each strand of `F`, indexed by starting position.
    fn widths(&self) -> [usize; 3] {
        let p = self.f.permutation();
        // the strand ending at the closed position continues from bottom 2
        let into_loop = (0..3).find(|&i| p[i] == 2).expect("permutation");
        let w = [self.m1, self.m2];
        [w[0], w[1], w[into_loop]]
    }

    /// The closed braid of `T ⊗ id` followed by the cabled `F`.
    pub fn closed_braid(&self, t: &BraidWord) -> BraidWord {
        let widths = self.widths();
        let cable = self.f.cable(&widths);
        t.with_extra_strands(widths[2]).then(&cable)
    }

    /// The mutant inner braid: the reversed word for pure `F`, the reversed
    /// word with indices flipped for transposing `F`.
    pub fn mutant_braid(&self) -> BraidWord {
        match self.kind().expect("validated") {
            TangleKind::Pure => self.t.reversed(),
            TangleKind::Transposing => self.t.reversed().flipped_indices(),
        }
    }

    pub fn braid_pair(&self) -> (BraidWord, BraidWord) {
        (self.closed_braid(&self.t), self.closed_braid(&self.mutant_braid()))
    }

    pub fn to_scheme(&self) -> Result<MutationScheme, MutationError> {
        let f: Tangle = self.f.partial_closure(1)?;
        MutationScheme::new(f, self.kind()?, self.t.to_tangle(), vec![1; self.m1], vec![1; self.m2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::canonical_code;

    #[test]
    fn braid_form_matches_assembly() {
        let cases = [
            (vec![1, 2, -1, 2, 1], vec![2, 1, 3], 2, 2),
            (vec![1, 1, 2, -1, 2], vec![1, 2], 2, 1),
            (vec![1, 2, 2, -1, 2], vec![1, 3, 2], 2, 2),
            (vec![2, -1, 2, 2, 1, 1], vec![2, 3], 3, 3),
            (vec![2, 1, 2, 2], vec![1, 5], 3, 3),
            (vec![1, 2, -1, 2, 1], vec![1, -2, 3, 2], 2, 2),
        ];
        let mut knots = 0;
        for (f, t, m1, m2) in cases {
            let s = BraidScheme::new(BraidWord::new(3, f).unwrap(), BraidWord::new(m1 + m2, t).unwrap(), m1, m2).unwrap();
            let scheme = s.to_scheme().unwrap();
            let (a, b) = s.braid_pair();
            match scheme.mutant_pair() {
                Ok((ka, kb)) => {
                    knots += 1;
                    assert_eq!(canonical_code(&a.closure()), canonical_code(&ka), "{s:?}");
                    assert_eq!(canonical_code(&b.closure()), canonical_code(&kb), "{s:?}");
                }
                Err(MutationError::NotAKnot(n)) => assert_eq!(a.cycle_count(), n, "{s:?}"),
                Err(e) => panic!("{e}"),
            }
        }
        assert_eq!(knots, 5);
    }
}
