//! The shipped code registry: one entry per row of the published code table,
//! with generator polynomials in the `C^E` grammar.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the generator polynomials turn into a stabilizer code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    /// One GF(4) cyclic code containing its Hermitian dual.
    Hermitian,
    /// Two binary cyclic codes C1, C2 with C2^⊥ ⊆ C1.
    Css,
}

impl Construction {
    pub fn as_str(self) -> &'static str {
        match self {
            Construction::Hermitian => "hermitian",
            Construction::Css => "css",
        }
    }
}

impl std::str::FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hermitian" => Ok(Construction::Hermitian),
            "css" => Ok(Construction::Css),
            other => Err(Error::Parse(format!("unknown construction `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistryEntry {
    pub id: String,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub qrb: usize,
    pub degenerate: bool,
    pub construction: Construction,
    pub genpolys: Vec<String>,
}

pub const TABLE1_JSON: &str = include_str!("../assets/table1.json");

pub fn parse_registry(text: &str) -> Result<Vec<RegistryEntry>> {
    serde_json::from_str(text).map_err(|e| Error::Registry(e.to_string()))
}

/// The embedded table.
pub fn table1() -> Vec<RegistryEntry> {
    parse_registry(TABLE1_JSON).expect("embedded registry is valid")
}

pub fn lookup<'a>(entries: &'a [RegistryEntry], id: &str) -> Option<&'a RegistryEntry> {
    entries.iter().find(|e| e.id == id)
}
