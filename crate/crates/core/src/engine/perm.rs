use serde::{Deserialize, Serialize};

/// Permutation in one-line notation: `p[i]` is the image of position `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(pub Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Self((0..n as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Right multiplication by the adjacent transposition `s_i`, swapping
    /// positions `i` and `i + 1`. The flag says whether the length grew.
    pub fn times_generator(&self, i: usize) -> (Self, bool) {
        let mut p = self.0.clone();
        let up = p[i] < p[i + 1];
        p.swap(i, i + 1);
        (Self(p), up)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let p = &self.0;
        (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum()
    }

    /// Lexicographic rank among all permutations of the same size.
    pub fn rank(&self) -> usize {
        let n = self.0.len();
        let mut r = 0;
        for i in 0..n {
            let smaller = (i + 1..n).filter(|&j| self.0[j] < self.0[i]).count();
            r = r * (n - i) + smaller;
        }
        r
    }

    pub fn unrank(n: usize, mut r: usize) -> Self {
        let mut digits = vec![0; n];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = r % base;
            r /= base;
        }
        let mut pool: Vec<u8> = (0..n as u8).collect();
        Self(digits.into_iter().map(|d| pool.remove(d)).collect())
    }
}

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}
