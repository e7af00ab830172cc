//! JSON group descriptors: `{"family": string, "params": [ints]}`.
//!
//! Direct products carry their factors in an extra `"factors"` array.

use serde::{Deserialize, Serialize};
use std::sync::Arc;

use crate::finite_group::{FiniteFamily, FiniteGroup};
use crate::group_algebra::DiscreteGroup;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub family: String,
    #[serde(default)]
    pub params: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<GroupDescriptor>,
}

fn normalize(family: &str) -> String {
    family.trim().to_ascii_lowercase().replace('-', "_")
}

fn param(params: &[i64], i: usize, family: &str) -> Result<usize> {
    let v = *params
        .get(i)
        .ok_or_else(|| Error::InvalidParams(format!("{family} needs {} parameter(s)", i + 1)))?;
    usize::try_from(v).map_err(|_| Error::InvalidParams(format!("{family}: parameter {v} must be non-negative")))
}

impl GroupDescriptor {
    pub fn new(family: &str, params: &[i64]) -> Self {
        GroupDescriptor { family: family.to_string(), params: params.to_vec(), factors: Vec::new() }
    }

    pub fn direct_product(factors: Vec<GroupDescriptor>) -> Self {
        GroupDescriptor { family: "direct_product".into(), params: Vec::new(), factors }
    }

    pub fn finite_family(&self) -> Result<FiniteFamily> {
        let fam = normalize(&self.family);
        let p = &self.params;
        Ok(match fam.as_str() {
            "cyclic" => FiniteFamily::Cyclic(param(p, 0, &fam)?),
            "elementary_abelian_2" => FiniteFamily::ElementaryAbelian2(param(p, 0, &fam)?),
            "dihedral" => FiniteFamily::Dihedral(param(p, 0, &fam)?),
            "symmetric" => FiniteFamily::Symmetric(param(p, 0, &fam)?),
            "heisenberg_mod" => FiniteFamily::HeisenbergMod(param(p, 0, &fam)?),
            "direct_product" => FiniteFamily::DirectProduct(
                self.factors.iter().map(|f| f.finite_family()).collect::<Result<_>>()?,
            ),
            _ => return Err(Error::UnsupportedFamily(self.family.clone())),
        })
    }

    /// Resolves the descriptor to a discrete group, building finite groups
    /// under `order_cap`.
    pub fn to_group(&self, order_cap: usize) -> Result<DiscreteGroup> {
        match normalize(&self.family).as_str() {
            "z" | "integers" | "lattice" => {
                let d = if self.params.is_empty() { 1 } else { param(&self.params, 0, "Z")? };
                if d == 0 {
                    return Err(Error::InvalidParams("Z^d needs d >= 1".into()));
                }
                Ok(DiscreteGroup::Lattice(d))
            }
            "heisenberg" => Ok(DiscreteGroup::Heisenberg),
            "free2" | "f2" | "free" => Ok(DiscreteGroup::Free2),
            _ => {
                let fam = self.finite_family()?;
                Ok(DiscreteGroup::Finite(Arc::new(FiniteGroup::build_with_cap(&fam, order_cap)?)))
            }
        }
    }
}

impl From<&FiniteFamily> for GroupDescriptor {
    fn from(f: &FiniteFamily) -> Self {
        match f {
            FiniteFamily::Cyclic(n) => GroupDescriptor::new("cyclic", &[*n as i64]),
            FiniteFamily::ElementaryAbelian2(k) => GroupDescriptor::new("elementary_abelian_2", &[*k as i64]),
            FiniteFamily::Dihedral(n) => GroupDescriptor::new("dihedral", &[*n as i64]),
            FiniteFamily::Symmetric(n) => GroupDescriptor::new("symmetric", &[*n as i64]),
            FiniteFamily::HeisenbergMod(n) => GroupDescriptor::new("heisenberg_mod", &[*n as i64]),
            FiniteFamily::DirectProduct(fs) => GroupDescriptor::direct_product(fs.iter().map(Into::into).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_hyphenated_family() {
        let d: GroupDescriptor = serde_json::from_str(r#"{"family":"heisenberg-mod","params":[3]}"#).unwrap();
        assert_eq!(d.finite_family().unwrap(), FiniteFamily::HeisenbergMod(3));
    }

    #[test]
    fn product_descriptor_roundtrip() {
        let d = GroupDescriptor::direct_product(vec![
            GroupDescriptor::new("cyclic", &[2]),
            GroupDescriptor::new("symmetric", &[3]),
        ]);
        let s = serde_json::to_string(&d).unwrap();
        let back: GroupDescriptor = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_group(5000).unwrap().finite().unwrap().order(), 12);
    }

    #[test]
    fn unknown_family_rejected() {
        let d = GroupDescriptor::new("monster", &[]);
        assert!(matches!(d.to_group(5000), Err(Error::UnsupportedFamily(_))));
    }
}
