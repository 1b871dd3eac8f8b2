//! JSON form of an ordered generating system.
//!
//! Level segments use 0-based, half-open item indices (`from..to`); points
//! are 1-based as everywhere else.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Item, Level, OgsError, OrderedGeneratingSystem, Side, Verification};
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItemSpec {
    pub perm: String,
    pub bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSpec {
    pub from: usize,
    pub to: usize,
    pub base_point: Option<usize>,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OgsFile {
    pub group: GroupSpec,
    pub items: Vec<ItemSpec>,
    pub levels: Option<Vec<LevelSpec>>,
    pub provenance: String,
    pub verified: Verification,
}

impl OgsFile {
    pub fn from_json(text: &str) -> Result<Self, OgsError> {
        serde_json::from_str(text).map_err(|e| OgsError::File(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

impl OrderedGeneratingSystem {
    pub fn to_file(&self) -> OgsFile {
        OgsFile {
            group: GroupSpec {
                name: self.group_name.clone(),
                degree: self.degree(),
                generators: self
                    .group
                    .generators()
                    .iter()
                    .map(|g| g.to_cycles())
                    .collect(),
            },
            items: self
                .items
                .iter()
                .map(|i| ItemSpec {
                    perm: i.perm.to_cycles(),
                    bound: i.bound,
                })
                .collect(),
            levels: self.levels.as_ref().map(|ls| {
                ls.iter()
                    .map(|l| LevelSpec {
                        from: l.from,
                        to: l.to,
                        base_point: l.base_point,
                        side: l.side,
                    })
                    .collect()
            }),
            provenance: self.provenance.clone(),
            verified: self.verified,
        }
    }

    pub fn to_json(&self) -> String {
        self.to_file().to_json()
    }

    /// Rebuilds the system from its file form. The `verified` field is a
    /// claim only: the result starts unverified.
    pub fn from_file(file: &OgsFile) -> Result<Self, OgsError> {
        let degree = file.group.degree;
        let group = Arc::new(PermGroup::from_cycle_strings(
            degree,
            &file.group.generators,
        )?);
        let items = file
            .items
            .iter()
            .map(|i| {
                Ok(Item::new(
                    Permutation::parse(&i.perm, Some(degree))?,
                    i.bound,
                ))
            })
            .collect::<Result<Vec<_>, OgsError>>()?;
        let levels = file.levels.as_ref().map(|ls| {
            ls.iter()
                .map(|l| Level {
                    from: l.from,
                    to: l.to,
                    base_point: l.base_point,
                    side: l.side,
                })
                .collect()
        });
        OrderedGeneratingSystem::new(
            group,
            file.group.name.clone(),
            items,
            levels,
            file.provenance.clone(),
        )
    }

    pub fn from_json(text: &str) -> Result<Self, OgsError> {
        Self::from_file(&OgsFile::from_json(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::s3_ogs;
    use super::*;

    #[test]
    fn json_shape() {
        let json = s3_ogs().to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["group"]["name"], "S3");
        assert_eq!(v["group"]["degree"], 3);
        assert_eq!(v["items"][0]["perm"], "(1,2)");
        assert_eq!(v["items"][1]["bound"], 3);
        assert_eq!(v["levels"], serde_json::Value::Null);
        assert_eq!(v["verified"], "none");
        let back = OrderedGeneratingSystem::from_json(&json).unwrap();
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(
            OrderedGeneratingSystem::from_json("{"),
            Err(OgsError::File(_))
        ));
        let mut f = s3_ogs().to_file();
        f.items[0].perm = "(1,2".into();
        assert!(matches!(
            OrderedGeneratingSystem::from_file(&f),
            Err(OgsError::Perm(_))
        ));
    }
}
