//! The full pipeline for one user turn.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::completion::parse_completion_in_scope;
use super::fallback::{CreateRequest, Fallback};
use super::lexicon::Lexicon;
use super::prompt::PromptBundle;
use super::provider::ModelProvider;
use super::references::{ReferenceResolver, Resolved};
use crate::assets::{resolve_asset, AssetCatalog, EmbeddingProvider, ExternalCatalog, MatcherConfig, Resolution, TrigramEmbedding};
use crate::runtime::BuiltinRegistry;
use crate::scene::{AssetSource, AtomCommand, SceneSpec, PLAYER_ID};
use crate::syntax::{assigned_names, parse, validate_in_scope, Diagnostic, Span};

pub mod codes {
    pub const UNKNOWN_GAZE_TARGET: &str = "unknown-gaze-target";
    pub const ASSET_APPROXIMATION: &str = "asset-approximation";
    pub const PROVIDER_FAILED: &str = "provider-failed";
    pub const UNTRANSLATABLE: &str = "untranslatable";
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct IntentRequest {
    pub utterance: String,
    #[serde(default)]
    pub gaze_targets: Vec<String>,
    #[serde(default)]
    pub session_id: String,
}

impl IntentRequest {
    pub fn new(utterance: impl Into<String>) -> Self {
        IntentRequest { utterance: utterance.into(), ..Default::default() }
    }

    pub fn with_gaze<S: Into<String>>(mut self, ids: impl IntoIterator<Item = S>) -> Self {
        self.gaze_targets = ids.into_iter().map(Into::into).collect();
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Provenance {
    Model,
    Fallback,
    /// Create-object request resolved by the asset matcher without a model call.
    AssetMatcher,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TranslationResult {
    pub command: AtomCommand,
    pub provenance: Provenance,
    /// Reference, matcher, provider and validator findings, in pipeline order.
    pub diagnostics: Vec<Diagnostic>,
    /// The utterance after gaze references were substituted.
    pub resolved_text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<Resolution>,
}

#[derive(Debug, Clone, PartialEq, Serialize, thiserror::Error)]
#[serde(rename_all = "camelCase")]
#[error("could not translate `{text}`")]
pub struct Untranslatable {
    pub text: String,
    pub diagnostics: Vec<Diagnostic>,
}

/// Names assigned by any script of the scene.
pub fn scene_globals(spec: &SceneSpec) -> BTreeSet<String> {
    spec.scripts.iter().flat_map(|s| assigned_names(&s.ast)).collect()
}

/// Stateless per turn; shareable across sessions behind an `Arc`.
pub struct Translator {
    provider: Arc<dyn ModelProvider>,
    bundle: PromptBundle,
    references: ReferenceResolver,
    fallback: Fallback,
    catalog: AssetCatalog,
    embedding: Arc<dyn EmbeddingProvider>,
    matcher: MatcherConfig,
    external: Option<Arc<dyn ExternalCatalog>>,
    registry: BuiltinRegistry,
}

impl std::fmt::Debug for Translator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Translator").field("provider", &self.provider.name()).field("matcher", &self.matcher).finish()
    }
}

impl Translator {
    /// Built-in lexicon, prompt bundle, catalog and trigram embedding.
    pub fn new(provider: Arc<dyn ModelProvider>) -> Self {
        Self::with_parts(provider, Lexicon::builtin(), PromptBundle::builtin(), AssetCatalog::builtin())
    }

    pub fn with_parts(provider: Arc<dyn ModelProvider>, lexicon: Lexicon, bundle: PromptBundle, catalog: AssetCatalog) -> Self {
        Translator {
            provider,
            bundle,
            references: ReferenceResolver::new(&lexicon, &catalog),
            fallback: Fallback::new(lexicon, &catalog),
            catalog,
            embedding: Arc::new(TrigramEmbedding),
            matcher: MatcherConfig::default(),
            external: None,
            registry: BuiltinRegistry::standard(),
        }
    }

    pub fn with_matcher(mut self, config: MatcherConfig, external: Option<Arc<dyn ExternalCatalog>>) -> Self {
        self.matcher = config;
        self.external = external;
        self
    }

    pub fn with_embedding(mut self, embedding: Arc<dyn EmbeddingProvider>) -> Self {
        self.embedding = embedding;
        self
    }

    pub fn provider_name(&self) -> &str {
        self.provider.name()
    }

    pub fn catalog(&self) -> &AssetCatalog {
        &self.catalog
    }

    pub fn bundle(&self) -> &PromptBundle {
        &self.bundle
    }

    pub fn references(&self) -> &ReferenceResolver {
        &self.references
    }

    /// The prompt sent to the provider for an already-resolved utterance.
    pub fn prompt_for(&self, resolved_text: &str) -> String {
        self.bundle.render(resolved_text)
    }

    /// Drops gaze targets missing from `spec`, then substitutes references.
    /// The returned text is what the provider prompt is built from.
    pub fn resolve_request(&self, request: &IntentRequest, spec: &SceneSpec) -> Resolved {
        let mut diagnostics = Vec::new();
        let gaze: Vec<String> = request
            .gaze_targets
            .iter()
            .filter(|g| {
                let known = g.as_str() == PLAYER_ID || spec.object(g).is_some();
                if !known {
                    diagnostics.push(Diagnostic::warning(
                        codes::UNKNOWN_GAZE_TARGET,
                        format!("gaze target `{g}` is not in the scene"),
                        Span::default(),
                    ));
                }
                known
            })
            .cloned()
            .collect();
        let mut resolved = self.references.resolve(&request.utterance, &gaze);
        diagnostics.append(&mut resolved.diagnostics);
        resolved.diagnostics = diagnostics;
        resolved
    }

    /// Resolves references, then routes create-object requests to the asset
    /// matcher and everything else to the provider, falling back to the
    /// rule-based translator when the provider fails or its output is
    /// rejected.
    pub fn translate(&self, request: &IntentRequest, spec: &SceneSpec) -> Result<TranslationResult, Untranslatable> {
        let Resolved { text, mut diagnostics } = self.resolve_request(request, spec);
        let result = |command, provenance, diagnostics, resolution| TranslationResult {
            command,
            provenance,
            diagnostics,
            resolved_text: text.clone(),
            resolution,
        };

        if let Some(req) = self.fallback.parse_create(&text) {
            if let Some((command, resolution)) = self.create(&req) {
                if let Some(d) = &resolution.diagnostic {
                    diagnostics.push(Diagnostic::warning(codes::ASSET_APPROXIMATION, d.clone(), Span::default()));
                }
                return Ok(result(command, Provenance::AssetMatcher, diagnostics, Some(resolution)));
            }
        }

        let globals = scene_globals(spec);
        match self.provider.complete(&self.prompt_for(&text)) {
            Ok(completion) => match parse_completion_in_scope(&completion, &self.registry, &globals) {
                Ok(c) => {
                    diagnostics.extend(c.diagnostics);
                    return Ok(result(c.command, Provenance::Model, diagnostics, None));
                }
                Err(e) => {
                    let detail: Vec<String> = e.diagnostics().iter().skip(1).map(|d| d.message.clone()).collect();
                    let message = if detail.is_empty() { e.to_string() } else { format!("{e}: {}", detail.join("; ")) };
                    diagnostics.push(Diagnostic::warning(e.code(), message, Span::default()));
                }
            },
            Err(e) => diagnostics.push(Diagnostic::warning(codes::PROVIDER_FAILED, e.to_string(), Span::default())),
        }

        if let Some(command) = self.fallback.translate(&text, spec) {
            if let AtomCommand::CreateCommand { new_command } = &command {
                let program = parse(new_command).expect("fallback emits parseable scripts");
                diagnostics.extend(validate_in_scope(&program, &self.registry, &globals));
            }
            debug_assert!(command.check().is_ok());
            return Ok(result(command, Provenance::Fallback, diagnostics, None));
        }
        diagnostics.push(Diagnostic::error(
            codes::UNTRANSLATABLE,
            format!("no translation for `{text}`"),
            Span::default(),
        ));
        Err(Untranslatable { text, diagnostics })
    }

    fn create(&self, req: &CreateRequest) -> Option<(AtomCommand, Resolution)> {
        let external = self.external.as_deref();
        let res = resolve_asset(&req.phrase, &self.catalog, self.embedding.as_ref(), &self.matcher, external)?;
        let mut cmd = AtomCommand::create(res.asset_type.clone());
        if let Some(s) = req.size {
            cmd = cmd.with_size([s; 3]);
        }
        if let Some(c) = req.color {
            cmd = cmd.with_color(c);
        }
        if let Some(p) = req.position {
            cmd = cmd.with_position(p);
        }
        if res.source == AssetSource::External {
            if let AtomCommand::CreateObject { source, .. } = &mut cmd {
                *source = Some(AssetSource::External);
            }
        }
        Some((cmd, res))
    }
}
