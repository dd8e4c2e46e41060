use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Arc, Crossing, Diagram, End, Tangle};

fn rows(cs: &[Crossing]) -> Vec<[i64; 5]> {
    cs.iter()
        .map(|c| [c.over_in as i64, c.over_out as i64, c.under_in as i64, c.under_out as i64, c.sign as i64])
        .collect()
}

fn crossings<E: serde::de::Error>(rows: &[[i64; 5]]) -> Result<Vec<Crossing>, E> {
    rows.iter()
        .map(|r| {
            let arc = |x: i64| Arc::try_from(x).map_err(|_| E::custom(format!("arc label {x} out of range")));
            let sign = match r[4] {
                1 => 1,
                -1 => -1,
                s => return Err(E::custom(format!("crossing sign must be ±1, found {s}"))),
            };
            Ok(Crossing::new(arc(r[0])?, arc(r[1])?, arc(r[2])?, arc(r[3])?, sign))
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    crossings: Vec<[i64; 5]>,
    components: Vec<Vec<Arc>>,
}

impl Serialize for Diagram {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DiagramJson { crossings: rows(self.crossings()), components: self.components() }.serialize(s)
    }
}

fn rotate_to_min(c: &[Arc]) -> Vec<Arc> {
    let k = (0..c.len()).min_by_key(|i| c[*i]).unwrap_or(0);
    c[k..].iter().chain(&c[..k]).copied().collect()
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = DiagramJson::deserialize(d)?;
        let cs = crossings::<D::Error>(&raw.crossings)?;
        let used: std::collections::HashSet<Arc> = cs.iter().flat_map(|c| c.slots()).collect();
        let loops: Vec<Arc> = raw.components.iter().filter(|c| c.len() == 1 && !used.contains(&c[0])).map(|c| c[0]).collect();
        let diagram = Diagram::new(cs, loops).map_err(D::Error::custom)?;
        let mut given: Vec<Vec<Arc>> = raw.components.iter().map(|c| rotate_to_min(c)).collect();
        given.sort();
        let mut derived = diagram.components();
        derived.sort();
        if given != derived {
            return Err(D::Error::custom("component list does not match crossing data"));
        }
        Ok(diagram)
    }
}

#[derive(Serialize, Deserialize)]
struct TangleJson {
    crossings: Vec<[i64; 5]>,
    bottom: Vec<(Arc, i8)>,
    top: Vec<(Arc, i8)>,
    #[serde(default)]
    loops: Vec<Arc>,
}

fn ends(v: &[End]) -> Vec<(Arc, i8)> {
    v.iter().map(|e| (e.arc, if e.up { 1 } else { -1 })).collect()
}

fn parse_ends<E: serde::de::Error>(v: &[(Arc, i8)]) -> Result<Vec<End>, E> {
    v.iter()
        .map(|(a, d)| match d {
            1 => Ok(End::new(*a, true)),
            -1 => Ok(End::new(*a, false)),
            x => Err(E::custom(format!("endpoint direction must be ±1, found {x}"))),
        })
        .collect()
}

impl Serialize for Tangle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TangleJson {
            crossings: rows(self.crossings()),
            bottom: ends(self.bottom()),
            top: ends(self.top()),
            loops: self.free_loops().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tangle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = TangleJson::deserialize(d)?;
        Tangle::new(
            crossings::<D::Error>(&raw.crossings)?,
            parse_ends::<D::Error>(&raw.bottom)?,
            parse_ends::<D::Error>(&raw.top)?,
            raw.loops,
        )
        .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::super::BraidWord;
    use super::*;

    #[test]
    fn diagram_round_trip() {
        let d = BraidWord::new(3, vec![1, -2, 1, -2]).unwrap().closure();
        let s = serde_json::to_string(&d).unwrap();
        let back: Diagram = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
        let u: Diagram = serde_json::from_str(r#"{"crossings":[],"components":[[5]]}"#).unwrap();
        assert_eq!(u.component_count(), 1);
    }

    #[test]
    fn rejects_bad_components() {
        let d = BraidWord::new(2, vec![1, 1, 1]).unwrap().closure();
        let mut v = serde_json::to_value(&d).unwrap();
        v["components"][0].as_array_mut().unwrap().pop();
        assert!(serde_json::from_value::<Diagram>(v).is_err());
    }

    #[test]
    fn tangle_and_braid_round_trip() {
        let t = BraidWord::new(3, vec![2, -1]).unwrap().partial_closure(1).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        let back: Tangle = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        let b: BraidWord = serde_json::from_str(r#"{"strands":2,"word":[1,1,1]}"#).unwrap();
        assert_eq!(serde_json::to_string(&b).unwrap(), r#"{"strands":2,"word":[1,1,1]}"#);
    }
}
