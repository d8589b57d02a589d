use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::catalog::AssetCatalog;
use super::embedding::{normalize_name, EmbeddingProvider};
use crate::scene::AssetSource;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CosineError {
    #[error("vectors differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("zero-norm vector")]
    ZeroNorm,
}

/// `dot(a,b) / (|a||b|)`, clamped to [-1, 1].
pub fn cosine(a: &[f64], b: &[f64]) -> Result<f64, CosineError> {
    if a.len() != b.len() {
        return Err(CosineError::LengthMismatch(a.len(), b.len()));
    }
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return Err(CosineError::ZeroNorm);
    }
    Ok((dot / (na * nb)).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MatcherConfig {
    /// Minimum cosine similarity for a built-in match.
    pub threshold: f64,
    pub external_enabled: bool,
}

impl Default for MatcherConfig {
    fn default() -> Self {
        MatcherConfig { threshold: 0.75, external_enabled: false }
    }
}

impl MatcherConfig {
    pub fn check(&self) -> Result<(), String> {
        if self.threshold > 0.0 && self.threshold <= 1.0 {
            Ok(())
        } else {
            Err(format!("threshold must be in (0, 1], got {}", self.threshold))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExternalAsset {
    pub asset_type: String,
    pub mesh_ref: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExternalError {
    #[error("external catalog unavailable: {0}")]
    Unavailable(String),
    #[error("no external asset matches `{0}`")]
    NotFound(String),
}

/// Search endpoint of an online model database: free text in, one asset out.
pub trait ExternalCatalog: Send + Sync {
    fn search(&self, query: &str) -> Result<ExternalAsset, ExternalError>;
}

/// Records every query. Answers with an asset type built from the query's
/// words, or fails every call when constructed with [`Self::unavailable`].
#[derive(Debug, Default)]
pub struct MockExternalCatalog {
    queries: Mutex<Vec<String>>,
    down: bool,
}

impl MockExternalCatalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unavailable() -> Self {
        MockExternalCatalog { queries: Mutex::default(), down: true }
    }

    pub fn queries(&self) -> Vec<String> {
        self.queries.lock().expect("mock lock poisoned").clone()
    }
}

impl ExternalCatalog for MockExternalCatalog {
    fn search(&self, query: &str) -> Result<ExternalAsset, ExternalError> {
        self.queries.lock().expect("mock lock poisoned").push(query.to_string());
        if self.down {
            return Err(ExternalError::Unavailable("mock is offline".into()));
        }
        let slug = normalize_name(query).join("_");
        if slug.is_empty() {
            return Err(ExternalError::NotFound(query.to_string()));
        }
        Ok(ExternalAsset { mesh_ref: format!("mock://{slug}"), asset_type: slug })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Resolution {
    pub asset_type: String,
    pub source: AssetSource,
    /// Similarity of the best built-in candidate.
    pub similarity: f64,
    /// Name of the best built-in candidate.
    pub nearest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mesh_ref: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

/// Picks the built-in asset for a requested name.
///
/// A name equal to a catalog entry (after normalization) matches it with
/// similarity 1. Otherwise the entry with the highest cosine similarity wins
/// (first in catalog order on ties) if it reaches the threshold; below that,
/// the external catalog is asked when enabled, and the nearest built-in is
/// used when it is not, or when the external search fails.
///
/// Returns `None` only for names with no words or an empty catalog.
pub fn resolve_asset(
    requested: &str,
    catalog: &AssetCatalog,
    provider: &dyn EmbeddingProvider,
    config: &MatcherConfig,
    external: Option<&dyn ExternalCatalog>,
) -> Option<Resolution> {
    let words = normalize_name(requested);
    if words.is_empty() {
        return None;
    }
    let normalized = words.join(" ");
    let (entry, similarity) = match catalog.get(&normalized) {
        Some(e) => (e, 1.0),
        None => {
            let query = provider.embed(&normalized);
            let mut best: Option<(&super::CatalogEntry, f64)> = None;
            for e in catalog.entries() {
                let s = cosine(&query, &provider.embed(&e.name)).unwrap_or(-1.0);
                if best.is_none_or(|(_, b)| s > b) {
                    best = Some((e, s));
                }
            }
            best?
        }
    };
    let builtin = |diagnostic: Option<String>| Resolution {
        asset_type: entry.asset_type.clone(),
        source: AssetSource::Builtin,
        similarity,
        nearest: entry.name.clone(),
        mesh_ref: None,
        diagnostic,
    };
    if similarity >= config.threshold {
        return Some(builtin(None));
    }
    let below = format!(
        "`{normalized}` is not in the catalog; nearest is `{}` at similarity {similarity:.3} (threshold {})",
        entry.name, config.threshold
    );
    match external.filter(|_| config.external_enabled) {
        None => Some(builtin(Some(format!("{below}; using `{}`", entry.name)))),
        Some(client) => match client.search(requested.trim()) {
            Ok(asset) => Some(Resolution {
                asset_type: asset.asset_type,
                source: AssetSource::External,
                similarity,
                nearest: entry.name.clone(),
                mesh_ref: Some(asset.mesh_ref),
                diagnostic: None,
            }),
            Err(e) => Some(builtin(Some(format!("{below}; {e}; using `{}`", entry.name)))),
        },
    }
}
