//! JSON datum specifications.
//!
//! ```json
//! {"cartan_type": "A2", "isogeny": "sc"}
//! {"cartan_type": "GL3"}
//! {"custom": {"roots": [[2]], "coroots": [[1]], "simple": [0]}}
//! ```

use serde::{Deserialize, Serialize};

use super::{CartanType, Isogeny, RootDatum};
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DatumSpec {
    Custom { custom: CustomSpec },
    Named(NamedSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedSpec {
    pub cartan_type: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isogeny: Option<Isogeny>,
}

/// Explicit roots, coroots and simple-root indices. Field order is
/// alphabetical so serialized specs have sorted keys.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomSpec {
    pub coroots: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    pub roots: Vec<Vec<i64>>,
    pub simple: Vec<usize>,
}

impl DatumSpec {
    /// Parses the short form used on the command line: `A2-sc`, `B3-ad`,
    /// `GL4`.
    pub fn from_type_str(s: &str) -> Result<Self> {
        if let Some(n) = s.strip_prefix("GL") {
            n.parse::<usize>().map_err(|_| Error::InvalidSpec(format!("bad GL rank in {s:?}")))?;
            return Ok(DatumSpec::Named(NamedSpec { cartan_type: s.to_string(), isogeny: None }));
        }
        let (t, iso) = s
            .split_once('-')
            .ok_or_else(|| Error::InvalidSpec(format!("type {s:?} needs an isogeny suffix, e.g. A2-sc or A2-ad")))?;
        t.parse::<CartanType>()?;
        Ok(DatumSpec::Named(NamedSpec { cartan_type: t.to_string(), isogeny: Some(iso.parse()?) }))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    pub fn build(&self) -> Result<RootDatum> {
        match self {
            DatumSpec::Custom { custom } => custom.build(),
            DatumSpec::Named(NamedSpec { cartan_type, isogeny }) => {
                if let Some(n) = cartan_type.strip_prefix("GL") {
                    if isogeny.is_some() {
                        return Err(Error::InvalidSpec("GL_n takes no isogeny".into()));
                    }
                    let n = n.parse().map_err(|_| Error::InvalidSpec(format!("bad GL rank {cartan_type:?}")))?;
                    return RootDatum::general_linear(n);
                }
                let t: CartanType = cartan_type.parse()?;
                let iso =
                    isogeny.ok_or_else(|| Error::InvalidSpec(format!("{cartan_type} needs an isogeny (sc or ad)")))?;
                Ok(RootDatum::from_cartan_type(t, iso))
            }
        }
    }

    /// Whether coweights for this datum are written in the
    /// fundamental-coweight basis (named semisimple types) rather than the
    /// stored basis.
    pub fn uses_fundamental_coweights(&self) -> bool {
        matches!(self, DatumSpec::Named(NamedSpec { isogeny: Some(_), .. }))
    }
}

impl CustomSpec {
    pub fn build(&self) -> Result<RootDatum> {
        let rank = match (self.rank, self.roots.first()) {
            (Some(r), _) => r,
            (None, Some(v)) => v.len(),
            (None, None) => return Err(Error::InvalidSpec("an empty root system needs an explicit rank".into())),
        };
        let to_vecs = |vs: &[Vec<i64>]| vs.iter().cloned().map(LatticeVector::new).collect();
        RootDatum::from_parts(rank, to_vecs(&self.roots), to_vecs(&self.coroots), self.simple.clone())
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(DatumSpec::Custom { custom: self.clone() }).expect("serializable");
        serde_json::to_string_pretty(&v).expect("serializable")
    }
}
