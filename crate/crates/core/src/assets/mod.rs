//! Asset catalog and embedding-based name resolution.

mod catalog;
mod embedding;
mod matcher;

pub use catalog::{AssetCatalog, CatalogEntry, CatalogError};
pub use embedding::{normalize_name, EmbeddingProvider, TrigramEmbedding, EMBEDDING_DIM};
pub use matcher::{
    cosine, resolve_asset, CosineError, ExternalAsset, ExternalCatalog, ExternalError, MatcherConfig, MockExternalCatalog,
    Resolution,
};
