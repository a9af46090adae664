//! Named (group, cocycle) pairs used by the test suite and the CLI, plus
//! parsing of the descriptor strings that name them.

use crate::cochain::{standard_cocycle_cyclic, verify_and_flag, Cochain3, CochainError};
use crate::cyclotomic::Cyc;
use crate::group::{cyclic, make_group, FiniteGroup, GroupError, GroupSpec};

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("group error: {0}")]
    Group(#[from] GroupError),
    #[error("cochain error: {0}")]
    Cochain(#[from] CochainError),
    #[error("cannot read cocycle file: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed cocycle file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad descriptor `{0}`: {1}")]
    BadDescriptor(String, String),
    #[error("cocycle fails verification at clause `{0}`")]
    NotACocycle(String),
}

/// One catalog row: descriptors for provenance plus the built structures.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub label: String,
    pub group_desc: String,
    pub cocycle_desc: String,
    pub group: FiniteGroup,
    pub cocycle: Cochain3,
}

/// Parses a group descriptor (`zn:4`, `s:3`, `d:4`, `prod(zn:2,zn:2)`).
pub fn parse_group(desc: &str) -> Result<FiniteGroup, CatalogError> {
    Ok(make_group(&GroupSpec::parse(desc)?)?)
}

/// Parses a cocycle descriptor against a group:
/// `trivial`, `std:zn:<n>:p=<k>`, or a path to a JSON file holding
/// `{"values": [[[...]]]}` over the same group. The result is always
/// verified.
pub fn parse_cocycle(group: &FiniteGroup, desc: &str) -> Result<Cochain3, CatalogError> {
    if desc == "trivial" {
        return Ok(Cochain3::trivial(group));
    }
    if let Some(rest) = desc.strip_prefix("std:zn:") {
        let (n_str, p_str) = rest.split_once(":p=").ok_or_else(|| {
            CatalogError::BadDescriptor(desc.to_string(), "expected std:zn:<n>:p=<k>".to_string())
        })?;
        let n: usize = n_str.parse().map_err(|_| {
            CatalogError::BadDescriptor(desc.to_string(), "n must be an integer".to_string())
        })?;
        let p: i64 = p_str.parse().map_err(|_| {
            CatalogError::BadDescriptor(desc.to_string(), "p must be an integer".to_string())
        })?;
        let reference = cyclic(n)?;
        if group.size != n || group.mul != reference.mul {
            return Err(CatalogError::BadDescriptor(
                desc.to_string(),
                format!("standard cocycle lives on zn:{n}, not on `{}`", group.label),
            ));
        }
        return Ok(standard_cocycle_cyclic(n, p)?);
    }
    if desc.ends_with(".json") {
        let text = std::fs::read_to_string(desc)?;
        let value: serde_json::Value = serde_json::from_str(&text)?;
        let values: Vec<Vec<Vec<Cyc>>> = serde_json::from_value(value["values"].clone())?;
        let mut phi = Cochain3::new(group, values)?;
        let report = verify_and_flag(&mut phi);
        if let Some(clause) = report.failed_clauses().next() {
            return Err(CatalogError::NotACocycle(clause.name.clone()));
        }
        return Ok(phi);
    }
    Err(CatalogError::BadDescriptor(
        desc.to_string(),
        "expected `trivial`, `std:zn:<n>:p=<k>`, or a .json path".to_string(),
    ))
}

/// Builds one entry from its descriptors.
pub fn make_entry(group_desc: &str, cocycle_desc: &str) -> Result<CatalogEntry, CatalogError> {
    let group = parse_group(group_desc)?;
    let cocycle = parse_cocycle(&group, cocycle_desc)?;
    Ok(CatalogEntry {
        label: format!("{group_desc}/{cocycle_desc}"),
        group_desc: group_desc.to_string(),
        cocycle_desc: cocycle_desc.to_string(),
        group,
        cocycle,
    })
}

/// The default verification matrix. Nontrivial cocycles on nonabelian
/// groups enter only through user-supplied JSON files.
pub fn default_catalog() -> Result<Vec<CatalogEntry>, CatalogError> {
    [
        ("zn:2", "trivial"),
        ("zn:2", "std:zn:2:p=1"),
        ("zn:3", "std:zn:3:p=1"),
        ("zn:4", "std:zn:4:p=1"),
        ("zn:4", "std:zn:4:p=2"),
        ("prod(zn:2,zn:2)", "trivial"),
        ("s:3", "trivial"),
        ("d:4", "trivial"),
    ]
    .into_iter()
    .map(|(g, c)| make_entry(g, c))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_catalog_builds() {
        let entries = default_catalog().unwrap();
        assert_eq!(entries.len(), 8);
        for e in &entries {
            assert!(e.cocycle.verified, "{}", e.label);
            assert_eq!(e.cocycle.group.size, e.group.size, "{}", e.label);
        }
    }

    #[test]
    fn std_descriptor_rejects_wrong_group() {
        let g = parse_group("s:3").unwrap();
        assert!(matches!(
            parse_cocycle(&g, "std:zn:3:p=1"),
            Err(CatalogError::BadDescriptor(_, _))
        ));
    }

    #[test]
    fn bad_descriptors_rejected() {
        let g = parse_group("zn:2").unwrap();
        assert!(parse_cocycle(&g, "std:zn:2").is_err());
        assert!(parse_cocycle(&g, "nonsense").is_err());
        assert!(parse_group("zn:0").is_err());
    }

    #[test]
    fn json_cocycle_roundtrip() {
        let g = parse_group("zn:2").unwrap();
        let phi = standard_cocycle_cyclic(2, 1).unwrap();
        let dir = std::env::temp_dir().join("qdouble-catalog-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("phi.json");
        std::fs::write(
            &path,
            serde_json::to_string(&serde_json::json!({"values": phi.values})).unwrap(),
        )
        .unwrap();
        let loaded = parse_cocycle(&g, path.to_str().unwrap()).unwrap();
        assert!(loaded.verified);
        assert_eq!(loaded.values, phi.values);
    }
}
