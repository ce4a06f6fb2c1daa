//! JSON form of an algebra: nonzero structure constants with 1-based indices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{AdAlgebra, Algebra, AssocAlgebra, ProductTensor};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub products: BTreeMap<String, Vec<EntryJson>>,
}

fn entries(t: &ProductTensor) -> Vec<EntryJson> {
    t.nonzero_entries()
        .map(|(i, j, k, c)| EntryJson {
            i: i + 1,
            j: j + 1,
            k: k + 1,
            c: c.clone(),
        })
        .collect()
}

fn tensor(dim: usize, entries: &[EntryJson]) -> Result<ProductTensor> {
    let mut t = ProductTensor::zeros(dim)?;
    for e in entries {
        for x in [e.i, e.j, e.k] {
            if x == 0 || x > dim {
                return Err(Error::parse(x.to_string(), format!("index outside 1..={dim}")));
            }
        }
        t.set(e.i - 1, e.j - 1, e.k - 1, e.c.clone());
    }
    Ok(t)
}

impl From<&Algebra> for AlgebraJson {
    fn from(a: &Algebra) -> Self {
        let mut products = BTreeMap::new();
        match a {
            Algebra::Assoc(a) => {
                products.insert("mul".to_string(), entries(&a.mul));
            }
            Algebra::Ad(d) => {
                products.insert("rprod".to_string(), entries(&d.rprod));
                products.insert("lprod".to_string(), entries(&d.lprod));
            }
        }
        AlgebraJson {
            dim: a.dim(),
            products,
        }
    }
}

impl TryFrom<&AlgebraJson> for Algebra {
    type Error = Error;

    fn try_from(j: &AlgebraJson) -> Result<Self> {
        let get = |name: &str| tensor(j.dim, j.products.get(name).map_or(&[][..], Vec::as_slice));
        if let Some(bad) = j.products.keys().find(|k| !["mul", "rprod", "lprod"].contains(&k.as_str())) {
            return Err(Error::parse(bad.clone(), "unknown product name"));
        }
        if j.products.contains_key("mul") {
            if j.products.len() > 1 {
                return Err(Error::parse("mul", "cannot be combined with rprod/lprod"));
            }
            Ok(Algebra::Assoc(AssocAlgebra::new(get("mul")?)))
        } else {
            Ok(Algebra::Ad(AdAlgebra::new(get("rprod")?, get("lprod")?)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_ad() {
        let mut r = ProductTensor::zeros(3).unwrap();
        r.set(0, 1, 2, Scalar::ratio(1, 2));
        let mut l = ProductTensor::zeros(3).unwrap();
        l.set(1, 0, 2, Scalar::i());
        let a = Algebra::Ad(AdAlgebra::new(r, l).unwrap());
        let j = AlgebraJson::from(&a);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains(r#"{"i":1,"j":2,"k":3,"c":["1","2","0","1"]}"#));
        let back: AlgebraJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Algebra::try_from(&back).unwrap(), a);
    }

    #[test]
    fn rejects_bad_index() {
        let j: AlgebraJson = serde_json::from_str(
            r#"{"dim":2,"products":{"mul":[{"i":3,"j":1,"k":1,"c":["1","1","0","1"]}]}}"#,
        )
        .unwrap();
        assert!(Algebra::try_from(&j).is_err());
    }
}
