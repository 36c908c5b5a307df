//! Labelled arrays: a value at every element of `P`, plus values at `0̂` and `1̂`.

use serde::{Deserialize, Serialize};

use crate::algebra::{Birational, ToggleAlgebra, Tropical};
use crate::error::{Error, Result};
use crate::poset::{Element, Neighbor, Poset};
use crate::rational::{self, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledArray {
    pub values: Vec<Q>,
    pub bottom: Q,
    pub top: Q,
}

/// Boundary conventions for arrays.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Profile {
    /// Tropical, `0̂ -> 0`, `1̂ -> 1`.
    UnitInterval,
    /// Tropical, `0̂ -> 0`, `1̂ -> 0`.
    HomogeneousPl,
    /// Birational, `0̂ -> 1`, `1̂ -> 1`.
    HomogeneousBirational,
}

impl Profile {
    pub fn boundary(self) -> (Q, Q) {
        match self {
            Profile::UnitInterval => (rational::zero(), rational::one()),
            Profile::HomogeneousPl => (rational::zero(), rational::zero()),
            Profile::HomogeneousBirational => (rational::one(), rational::one()),
        }
    }

    /// Checks values against the carrier this profile lives in.
    pub fn validate(self, values: &[Q]) -> Result<()> {
        match self {
            Profile::HomogeneousBirational => check_all(Birational, values),
            _ => check_all(Tropical, values),
        }
    }
}

fn check_all<A: ToggleAlgebra>(alg: A, values: &[Q]) -> Result<()> {
    match values.iter().find(|v| !alg.is_valid(v)) {
        Some(v) => Err(Error::InvalidValue {
            algebra: A::NAME,
            value: rational::format(v),
        }),
        None => Ok(()),
    }
}

impl LabeledArray {
    /// Builds an array whose values and boundary all satisfy `alg`'s carrier predicate.
    pub fn new<A: ToggleAlgebra>(alg: A, p: &Poset, values: Vec<Q>, bottom: Q, top: Q) -> Result<Self> {
        if values.len() != p.size() {
            return Err(Error::Length {
                expected: p.size(),
                got: values.len(),
            });
        }
        check_all(alg, &values)?;
        check_all(alg, [&bottom, &top].map(Clone::clone).as_slice())?;
        Ok(LabeledArray { values, bottom, top })
    }

    /// Builds an array in one of the named boundary profiles.
    pub fn with_profile(p: &Poset, profile: Profile, values: Vec<Q>) -> Result<Self> {
        let (bottom, top) = profile.boundary();
        match profile {
            Profile::HomogeneousBirational => Self::new(Birational, p, values, bottom, top),
            _ => Self::new(Tropical, p, values, bottom, top),
        }
    }

    /// Skips the carrier predicate; useful for points outside the positive orthant.
    pub fn from_values_unchecked(values: Vec<Q>, bottom: Q, top: Q) -> Self {
        LabeledArray { values, bottom, top }
    }

    pub fn get(&self, x: Element) -> &Q {
        &self.values[x.0]
    }

    pub fn set(&mut self, x: Element, v: Q) {
        self.values[x.0] = v;
    }

    /// Value at a `P̂` neighbour.
    pub fn at(&self, n: Neighbor) -> &Q {
        match n {
            Neighbor::Bottom => &self.bottom,
            Neighbor::Top => &self.top,
            Neighbor::Elem(x) => &self.values[x.0],
        }
    }

    pub fn to_json(&self, p: &Poset) -> ArrayJson {
        ArrayJson {
            bottom: self.bottom.clone(),
            top: self.top.clone(),
            values: p
                .elements()
                .map(|x| {
                    let key = match p.cell(x) {
                        Some(c) => format!("{},{}", c.i, c.j),
                        None => x.0.to_string(),
                    };
                    (key, rational::format(self.get(x)))
                })
                .collect(),
        }
    }

    pub fn from_json(p: &Poset, json: &ArrayJson) -> Result<Self> {
        if json.values.len() != p.size() {
            return Err(Error::Length {
                expected: p.size(),
                got: json.values.len(),
            });
        }
        let mut values = vec![None; p.size()];
        for (key, v) in &json.values {
            let x = parse_key(p, key)?;
            values[x.0] = Some(rational::parse(v)?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(k, v)| v.ok_or_else(|| Error::UnknownElement(format!("missing value for {}", p.label(Element(k))))))
            .collect::<Result<Vec<_>>>()?;
        Ok(LabeledArray {
            values,
            bottom: json.bottom.clone(),
            top: json.top.clone(),
        })
    }

    /// Values as `p/q` strings in canonical element order.
    pub fn formatted(&self) -> Vec<String> {
        self.values.iter().map(rational::format).collect()
    }
}

fn parse_key(p: &Poset, key: &str) -> Result<Element> {
    let bad = || Error::UnknownElement(key.to_string());
    match key.split_once(',') {
        Some((i, j)) => {
            let i = i.trim().parse().map_err(|_| bad())?;
            let j = j.trim().parse().map_err(|_| bad())?;
            p.element_at(i, j)
        }
        None => {
            let k: usize = key.trim().parse().map_err(|_| bad())?;
            p.check(Element(k))?;
            Ok(Element(k))
        }
    }
}

/// Wire form: `{"bottom":"p/q","top":"p/q","values":[["i,j","p/q"],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrayJson {
    #[serde(with = "rational")]
    pub bottom: Q,
    #[serde(with = "rational")]
    pub top: Q,
    pub values: Vec<(String, String)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn json_format_is_bit_exact() {
        let p = Poset::rect(2, 2).unwrap();
        let f = LabeledArray::with_profile(
            &p,
            Profile::UnitInterval,
            vec![frac(1, 10), frac(2, 10), frac(3, 10), frac(4, 10)],
        )
        .unwrap();
        let s = serde_json::to_string(&f.to_json(&p)).unwrap();
        assert_eq!(
            s,
            r#"{"bottom":"0","top":"1","values":[["1,1","1/10"],["2,1","1/5"],["1,2","3/10"],["2,2","2/5"]]}"#
        );
        let back: ArrayJson = serde_json::from_str(&s).unwrap();
        assert_eq!(LabeledArray::from_json(&p, &back).unwrap(), f);
    }

    #[test]
    fn validation() {
        let p = Poset::rect(1, 2).unwrap();
        assert!(LabeledArray::with_profile(&p, Profile::HomogeneousBirational, vec![int(1), int(0)]).is_err());
        assert!(LabeledArray::with_profile(&p, Profile::HomogeneousBirational, vec![int(1)]).is_err());
        assert!(LabeledArray::with_profile(&p, Profile::HomogeneousPl, vec![int(-1), int(0)]).is_ok());
    }

    #[test]
    fn json_rejects_bad_keys() {
        let p = Poset::rect(1, 2).unwrap();
        let j = ArrayJson {
            bottom: int(0),
            top: int(0),
            values: vec![("1,1".into(), "1".into()), ("1,1".into(), "2".into())],
        };
        assert!(LabeledArray::from_json(&p, &j).is_err());
        let j = ArrayJson {
            bottom: int(0),
            top: int(0),
            values: vec![("1,1".into(), "1".into()), ("3,1".into(), "2".into())],
        };
        assert!(LabeledArray::from_json(&p, &j).is_err());
    }
}
