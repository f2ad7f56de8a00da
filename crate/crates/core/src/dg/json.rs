use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{AlgebraDescriptor, DgModule};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, PrimeField, DEFAULT_PRIME};

/// Wire form of a [`DgModule`]. Omitted maps are zero; entries are integers
/// reduced modulo `prime`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DgModuleJson {
    pub w: i64,
    #[serde(default = "default_prime")]
    pub prime: u64,
    #[serde(default)]
    pub components: Vec<ComponentJson>,
    #[serde(default)]
    pub diff: Vec<MapJson>,
    #[serde(default)]
    pub tmul: Vec<MapJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub degree: i64,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub from_degree: i64,
    pub entries: Vec<Vec<i64>>,
}

fn default_prime() -> u64 {
    DEFAULT_PRIME
}

impl DgModuleJson {
    pub fn into_module(self) -> Result<DgModule> {
        let field = PrimeField::new(self.prime)?;
        let algebra = AlgebraDescriptor::new(self.w, field);
        let mut dims = BTreeMap::new();
        for c in &self.components {
            if dims.insert(c.degree, c.dim).is_some() {
                return Err(Error::Parse(format!("degree {} listed twice", c.degree)));
            }
        }
        let dim = |n: i64| dims.get(&n).copied().unwrap_or(0);
        let read = |maps: &[MapJson], step: i64| -> Result<BTreeMap<i64, Matrix>> {
            let mut out = BTreeMap::new();
            for m in maps {
                let n = m.from_degree;
                if m.entries.len() != dim(n + step) {
                    return Err(Error::ShapeMismatch(format!(
                        "map from degree {n} has {} rows, expected {}",
                        m.entries.len(),
                        dim(n + step)
                    )));
                }
                let mat = Matrix::from_rows(field, &m.entries, dim(n))?;
                if out.insert(n, mat).is_some() {
                    return Err(Error::Parse(format!("two maps from degree {n}")));
                }
            }
            Ok(out)
        };
        let diff = read(&self.diff, -1)?;
        let tmul = read(&self.tmul, algebra.d())?;
        DgModule::new(algebra, dims, diff, tmul)
    }
}

impl From<&DgModule> for DgModuleJson {
    fn from(m: &DgModule) -> Self {
        let write = |maps: &BTreeMap<i64, Matrix>| -> Vec<MapJson> {
            maps.iter()
                .map(|(&n, mat)| MapJson {
                    from_degree: n,
                    entries: mat.signed_rows(),
                })
                .collect()
        };
        DgModuleJson {
            w: m.algebra().w(),
            prime: m.field().modulus(),
            components: m
                .dims()
                .iter()
                .map(|(&degree, &dim)| ComponentJson { degree, dim })
                .collect(),
            diff: write(m.diff_map()),
            tmul: write(m.tmul_map()),
        }
    }
}

impl DgModule {
    pub fn from_json_str(s: &str) -> Result<DgModule> {
        let raw: DgModuleJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        raw.into_module()
    }

    pub fn to_json(&self) -> DgModuleJson {
        DgModuleJson::from(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg::{assemble, make_algebra};
    use crate::label::Indec;

    #[test]
    fn parses_documented_schema() {
        let src = r#"{
            "w": 2, "prime": 32003,
            "components": [{"degree": 0, "dim": 1}, {"degree": 1, "dim": 1}],
            "tmul": [{"from_degree": 0, "entries": [[1]]}]
        }"#;
        let m = DgModule::from_json_str(src).unwrap();
        let a = make_algebra(2, 32003).unwrap();
        assert_eq!(m, DgModule::indecomposable(a, Indec::new(0, 1)));
    }

    #[test]
    fn rejects_bad_shapes_and_primes() {
        let src = r#"{"w": 2, "prime": 32003,
            "components": [{"degree": 0, "dim": 2}],
            "diff": [{"from_degree": 0, "entries": [[1, 0]]}]}"#;
        assert!(matches!(
            DgModule::from_json_str(src),
            Err(Error::ShapeMismatch(_))
        ));
        let src = r#"{"w": 2, "prime": 15, "components": []}"#;
        assert_eq!(DgModule::from_json_str(src), Err(Error::NotPrime(15)));
        assert!(matches!(DgModule::from_json_str("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn negative_entries_reduce() {
        let src = r#"{"w": 1, "prime": 7,
            "components": [{"degree": 0, "dim": 1}],
            "tmul": [{"from_degree": 0, "entries": [[-1]]}]}"#;
        let m = DgModule::from_json_str(src).unwrap();
        assert_eq!(m.tmul_at(0).get(0, 0), 6);
        assert_eq!(m.to_json().tmul[0].entries, vec![vec![-1]]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn json_round_trip(
                w in -3i64..=3,
                labels in prop::collection::vec((-4i64..=4, 0usize..4), 0..5),
                k in -2i64..=2,
            ) {
                let a = make_algebra(w, 101).unwrap();
                let labels: Vec<Indec> = labels.into_iter().map(|(i, r)| Indec::new(i, r)).collect();
                let m = assemble(a, &labels).suspend(k);
                let text = serde_json::to_string(&m.to_json()).unwrap();
                prop_assert_eq!(DgModule::from_json_str(&text).unwrap(), m);
            }
        }
    }
}
