//! JSON homology reports shared by all complexes.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    pub n: usize,
    pub w: usize,
    pub d: usize,
    pub part: String,
    pub dim: usize,
    /// Multiplicity of each irreducible, keyed by its partition `"3,1,1"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isotypic: Option<std::collections::BTreeMap<String, usize>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub untrusted: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operad: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wheeling: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(default, rename = "dimV", skip_serializing_if = "Option::is_none")]
    pub dim_v: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    pub blocks: Vec<BlockReport>,
}
