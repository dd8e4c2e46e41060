use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LaurentError, LaurentVZ};

/// Coefficients in the Lickorish-Millett variables `l = iv`, `m = iz`.
///
/// Keyed by `(power of m, power of l)`. The entry for `v^a z^b` is
/// `(-1)^((a+b)/2) c_{a,b}`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LMTable {
    cells: BTreeMap<(i32, i32), BigInt>,
}

impl LMTable {
    pub fn from_laurent(p: &LaurentVZ) -> Result<Self, LaurentError> {
        let mut cells = BTreeMap::new();
        for ((a, b), c) in p.terms() {
            if (a + b).rem_euclid(2) != 0 {
                return Err(LaurentError::OddDegree { a, b });
            }
            let sign = if ((a + b) / 2).rem_euclid(2) == 0 { c.clone() } else { -c };
            cells.insert((b, a), sign);
        }
        Ok(Self { cells })
    }

    pub fn to_laurent(&self) -> LaurentVZ {
        let mut p = LaurentVZ::zero();
        for ((m, l), e) in &self.cells {
            let c = if ((m + l) / 2).rem_euclid(2) == 0 { e.clone() } else { -e };
            p.add_term(*l, *m, c);
        }
        p
    }

    /// Builds a table from rows `(power of m, [(power of l, entry)])`.
    pub fn from_rows<I, R, C>(rows: I) -> Self
    where
        I: IntoIterator<Item = (i32, R)>,
        R: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut cells = BTreeMap::new();
        for (m, row) in rows {
            for (l, c) in row {
                let c: BigInt = c.into();
                if !c.is_zero() {
                    cells.insert((m, l), c);
                }
            }
        }
        Self { cells }
    }

    pub fn get(&self, m: i32, l: i32) -> BigInt {
        self.cells.get(&(m, l)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> impl Iterator<Item = ((i32, i32), &BigInt)> + '_ {
        self.cells.iter().map(|(k, c)| (*k, c))
    }

    /// Cells where two tables differ, as `((m, l), self, other)`.
    pub fn diff(&self, other: &LMTable) -> Vec<((i32, i32), BigInt, BigInt)> {
        let mut keys: Vec<_> = self.cells.keys().chain(other.cells.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .filter_map(|(m, l)| {
                let (x, y) = (self.get(m, l), other.get(m, l));
                (x != y).then_some(((m, l), x, y))
            })
            .collect()
    }

    /// Grid rendering with a header row of l powers and one row per m power.
    pub fn render(&self, title: &str) -> String {
        if self.cells.is_empty() {
            return format!("{title}: 0\n");
        }
        let ls: Vec<i32> = {
            let lo = self.cells.keys().map(|k| k.1).min().unwrap();
            let hi = self.cells.keys().map(|k| k.1).max().unwrap();
            (lo..=hi).step_by(2).collect()
        };
        let ms: Vec<i32> = {
            let lo = self.cells.keys().map(|k| k.0).min().unwrap();
            let hi = self.cells.keys().map(|k| k.0).max().unwrap();
            (lo..=hi).step_by(2).collect()
        };
        let label = |var: &str, e: i32| match e {
            0 => "1".to_string(),
            1 => var.to_string(),
            e => format!("{var}^{e}"),
        };
        let mut rows: Vec<Vec<String>> = Vec::new();
        let mut header = vec![title.to_string()];
        header.extend(ls.iter().map(|l| label("l", *l)));
        rows.push(header);
        for m in &ms {
            let mut row = vec![label("m", *m)];
            for l in &ls {
                let c = self.get(*m, *l);
                row.push(if c.is_zero() { String::new() } else { c.to_string() });
            }
            rows.push(row);
        }
        let widths: Vec<usize> =
            (0..rows[0].len()).map(|j| rows.iter().map(|r| r[j].len()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for row in rows {
            let mut line = String::new();
            for (j, cell) in row.iter().enumerate() {
                if j == 0 {
                    let _ = write!(line, "{cell:<w$} |", w = widths[0]);
                } else {
                    let _ = write!(line, " {cell:>w$}", w = widths[j]);
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

impl Serialize for LMTable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<(i32, i32, String)> = self.cells.iter().map(|((m, l), c)| (*m, *l, c.to_string())).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LMTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<(i32, i32, String)> = Vec::deserialize(d)?;
        let mut cells = BTreeMap::new();
        for (m, l, c) in rows {
            let c: BigInt = c.parse().map_err(serde::de::Error::custom)?;
            if c.is_zero() {
                return Err(serde::de::Error::custom("zero entry in serialized table"));
            }
            if (m + l).rem_euclid(2) != 0 {
                return Err(serde::de::Error::custom(format!("cell (m^{m}, l^{l}) has odd total degree")));
            }
            if cells.insert((m, l), c).is_some() {
                return Err(serde::de::Error::custom(format!("duplicate cell (m^{m}, l^{l})")));
            }
        }
        Ok(Self { cells })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_terms() {
        let t = LMTable::from_laurent(&LaurentVZ::monomial(1, -4, 0)).unwrap();
        assert_eq!(t.get(0, -4), BigInt::from(1));
        // (12 + 2)/2 = 7 is odd, so the sign flips
        let t = LMTable::from_laurent(&LaurentVZ::monomial(3, 12, 2)).unwrap();
        assert_eq!(t.get(2, 12), BigInt::from(-3));
        assert!(LMTable::from_laurent(&LaurentVZ::zero()).unwrap().is_empty());
    }

    #[test]
    fn odd_terms_rejected() {
        let err = LMTable::from_laurent(&LaurentVZ::monomial(1, 1, 0)).unwrap_err();
        assert_eq!(err, LaurentError::OddDegree { a: 1, b: 0 });
    }

    #[test]
    fn trefoil_round_trip_and_render() {
        let p = LaurentVZ::from_terms([((2, 0), 2), ((4, 0), -1), ((2, 2), 1)]);
        let t = LMTable::from_laurent(&p).unwrap();
        // l^2 = -v^2, m^2 = -z^2: 2v^2 - v^4 + v^2 z^2 = -2l^2 - l^4 + l^2 m^2
        assert_eq!(t.get(0, 2), BigInt::from(-2));
        assert_eq!(t.get(0, 4), BigInt::from(-1));
        assert_eq!(t.get(2, 2), BigInt::from(1));
        assert_eq!(t.to_laurent(), p);
        assert_eq!(t.render("K"), "K   | l^2 l^4\n1   |  -2  -1\nm^2 |   1\n");
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<LMTable>(&json).unwrap(), t);
    }
}
