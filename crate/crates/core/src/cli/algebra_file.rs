//! The JSON algebra file: field block, names, sparse brackets and, for
//! restricted algebras, the power map on the basis.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactla::Vector;
use crate::resla::{LieAlgebra, RestrictedLieAlgebra};
use crate::scalar::{Field, Scalar};

pub const FORMAT_VERSION: u32 = 1;

/// Nonzero coordinates, keyed by basis index.
pub type CoordinateMap = BTreeMap<usize, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub value: CoordinateMap,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    version: u32,
    field: Field,
    restricted: bool,
    dim: usize,
    names: Vec<String>,
    #[serde(default)]
    brackets: Vec<BracketEntry>,
    pmap: Option<Vec<CoordinateMap>>,
}

/// A parsed but not yet axiom-checked algebra file. Fields are validated
/// during deserialization, so errors carry the JSON position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraFile {
    pub version: u32,
    pub field: Field,
    pub restricted: bool,
    pub dim: usize,
    pub names: Vec<String>,
    pub brackets: Vec<BracketEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pmap: Option<Vec<CoordinateMap>>,
}

struct FileVisitor;

impl<'de> serde::de::Visitor<'de> for FileVisitor {
    type Value = AlgebraFile;

    fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        f.write_str("an algebra file object")
    }

    // errors raised here, inside the map, get the JSON position attached
    fn visit_map<A: serde::de::MapAccess<'de>>(self, map: A) -> Result<AlgebraFile, A::Error> {
        let raw = RawFile::deserialize(serde::de::value::MapAccessDeserializer::new(map))?;
        AlgebraFile::try_from(raw).map_err(serde::de::Error::custom)
    }
}

impl<'de> Deserialize<'de> for AlgebraFile {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_map(FileVisitor)
    }
}

impl TryFrom<RawFile> for AlgebraFile {
    type Error = String;

    fn try_from(raw: RawFile) -> Result<Self, String> {
        if raw.version != FORMAT_VERSION {
            return Err(format!("unsupported version {}, expected {FORMAT_VERSION}", raw.version));
        }
        if raw.names.len() != raw.dim {
            return Err(format!("{} names for dim {}", raw.names.len(), raw.dim));
        }
        let check_map = |m: &CoordinateMap, what: &str| -> Result<(), String> {
            for (k, s) in m {
                if *k >= raw.dim {
                    return Err(format!("index {k} out of range in {what} (dim {})", raw.dim));
                }
                raw.field.parse(s).map_err(|e| format!("{what}: {e}"))?;
            }
            Ok(())
        };
        for b in &raw.brackets {
            if b.i >= raw.dim || b.j >= raw.dim {
                return Err(format!("bracket index ({}, {}) out of range (dim {})", b.i, b.j, raw.dim));
            }
            check_map(&b.value, &format!("bracket ({}, {})", b.i, b.j))?;
        }
        match (&raw.pmap, raw.restricted) {
            (None, true) => return Err("restricted algebra requires a pmap block".into()),
            (Some(_), false) => return Err("pmap block given for an ordinary algebra".into()),
            (Some(p), true) => {
                if p.len() != raw.dim {
                    return Err(format!("pmap has {} entries for dim {}", p.len(), raw.dim));
                }
                for (i, m) in p.iter().enumerate() {
                    check_map(m, &format!("pmap[{i}]"))?;
                }
            }
            (None, false) => {}
        }
        Ok(AlgebraFile {
            version: raw.version,
            field: raw.field,
            restricted: raw.restricted,
            dim: raw.dim,
            names: raw.names,
            brackets: raw.brackets,
            pmap: raw.pmap,
        })
    }
}

/// Either kind of algebra a file can describe.
#[derive(Clone, Debug)]
pub enum ParsedAlgebra {
    Restricted(RestrictedLieAlgebra),
    Ordinary(LieAlgebra),
}

impl ParsedAlgebra {
    pub fn lie(&self) -> &LieAlgebra {
        match self {
            ParsedAlgebra::Restricted(a) => a.lie(),
            ParsedAlgebra::Ordinary(l) => l,
        }
    }
}

fn to_map(field: &Field, v: &[Scalar]) -> CoordinateMap {
    v.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(i, s)| (i, field.format(s))).collect()
}

fn from_map(field: &Field, n: usize, m: &CoordinateMap) -> Vector {
    let mut v = vec![field.zero(); n];
    for (&k, s) in m {
        v[k] = field.parse(s).expect("validated on parse");
    }
    v
}

impl AlgebraFile {
    pub fn from_lie(lie: &LieAlgebra) -> Self {
        let field = lie.field();
        let n = lie.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = lie.bracket_basis(i, j);
                if v.iter().any(|s| !s.is_zero()) {
                    brackets.push(BracketEntry { i, j, value: to_map(field, v) });
                }
            }
        }
        AlgebraFile {
            version: FORMAT_VERSION,
            field: field.clone(),
            restricted: false,
            dim: n,
            names: lie.names().to_vec(),
            brackets,
            pmap: None,
        }
    }

    pub fn from_restricted(alg: &RestrictedLieAlgebra) -> Self {
        let mut f = AlgebraFile::from_lie(alg.lie());
        f.restricted = true;
        f.pmap = Some(alg.pmap_table().iter().map(|v| to_map(alg.field(), v)).collect());
        f
    }

    pub fn from_parsed(a: &ParsedAlgebra) -> Self {
        match a {
            ParsedAlgebra::Restricted(r) => AlgebraFile::from_restricted(r),
            ParsedAlgebra::Ordinary(l) => AlgebraFile::from_lie(l),
        }
    }

    /// Build the algebra without checking any axioms.
    pub fn build(&self) -> Result<ParsedAlgebra, crate::resla::ResError> {
        let n = self.dim;
        let brackets: Vec<(usize, usize, Vector)> =
            self.brackets.iter().map(|b| (b.i, b.j, from_map(&self.field, n, &b.value))).collect();
        let lie = LieAlgebra::from_brackets(&self.field, self.names.clone(), &brackets)?;
        Ok(match &self.pmap {
            Some(p) => {
                let pmap = p.iter().map(|m| from_map(&self.field, n, m)).collect();
                ParsedAlgebra::Restricted(RestrictedLieAlgebra::new(lie, pmap)?)
            }
            None => ParsedAlgebra::Ordinary(lie),
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_round_trips_bit_exactly() {
        let h3 = crate::families::heisenberg(&Field::gf4()).unwrap();
        let text = AlgebraFile::from_restricted(&h3).to_json();
        let parsed: AlgebraFile = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.to_json(), text);
        let ParsedAlgebra::Restricted(back) = parsed.build().unwrap() else { panic!("restricted") };
        assert_eq!(back, h3);
    }

    #[test]
    fn restricted_without_pmap_is_rejected_with_position() {
        let text = r#"{"version":1,"field":{"kind":"gf2k","k":1,"modulus":[1,1]},"restricted":true,"dim":1,"names":["x"]}"#;
        let err = serde_json::from_str::<AlgebraFile>(text).unwrap_err();
        assert!(err.to_string().contains("requires a pmap"));
        assert_eq!(err.line(), 1);
    }
}
