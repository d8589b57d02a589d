use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

static BUILTIN: &str = include_str!("../../data/catalog.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CatalogEntry {
    pub name: String,
    pub asset_type: String,
    #[serde(default)]
    pub tags: Vec<String>,
    /// Radius of the asset at unit size, relative to half its largest extent.
    pub unit_radius: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("catalog is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("catalog i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("catalog entry `{0}` is invalid: {1}")]
    Entry(String, &'static str),
}

/// Named built-in assets, in file order.
#[derive(Debug, Clone, PartialEq)]
pub struct AssetCatalog {
    entries: Vec<CatalogEntry>,
}

impl AssetCatalog {
    /// The catalog shipped with the crate.
    pub fn builtin() -> Self {
        Self::from_json(BUILTIN).expect("shipped catalog is valid")
    }

    pub fn from_json(text: &str) -> Result<Self, CatalogError> {
        Self::new(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, CatalogError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Names must be lowercase, trimmed and unique.
    pub fn new(entries: Vec<CatalogEntry>) -> Result<Self, CatalogError> {
        let mut seen = std::collections::HashSet::new();
        for e in &entries {
            if e.name.is_empty() || e.name != e.name.trim().to_lowercase() {
                return Err(CatalogError::Entry(e.name.clone(), "name must be lowercase and trimmed"));
            }
            if !seen.insert(e.name.as_str()) {
                return Err(CatalogError::Entry(e.name.clone(), "duplicate name"));
            }
            if !(e.unit_radius.is_finite() && e.unit_radius > 0.0) {
                return Err(CatalogError::Entry(e.name.clone(), "unitRadius must be > 0"));
            }
        }
        Ok(AssetCatalog { entries })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Unit radius per asset type, for the runtime's collision spheres.
    pub fn unit_radii(&self) -> BTreeMap<String, f64> {
        self.entries.iter().map(|e| (e.asset_type.clone(), e.unit_radius)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_catalog_has_required_names() {
        let c = AssetCatalog::builtin();
        for n in ["cube", "sphere", "capsule", "cherry", "watermelon", "apple", "coin", "tree", "rocket", "turret", "button", "spaceship"] {
            assert!(c.get(n).is_some(), "{n}");
        }
    }

    #[test]
    fn rejects_bad_entries() {
        let dup = r#"[{"name":"a","assetType":"a","unitRadius":1},{"name":"a","assetType":"b","unitRadius":1}]"#;
        assert!(AssetCatalog::from_json(dup).is_err());
        let upper = r#"[{"name":"Apple","assetType":"a","unitRadius":1}]"#;
        assert!(AssetCatalog::from_json(upper).is_err());
    }
}
