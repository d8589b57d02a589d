//! Natural-language turns to AtomCommands: gaze reference resolution, few-shot
//! prompting against a pluggable model, completion parsing and a rule-based
//! fallback.

mod completion;
mod corpus;
mod fallback;
mod lexicon;
mod prompt;
mod provider;
mod references;
mod translate;

pub use completion::{codes as completion_codes, parse_completion, parse_completion_in_scope, Completion, CompletionError};
pub use corpus::{CorpusEntry, IntentCorpus};
pub use fallback::{fallback_translate, CreateRequest, Fallback, SPIN_STEP};
pub use lexicon::Lexicon;
pub use prompt::{PromptBundle, PromptExample};
#[cfg(feature = "live")]
pub use provider::LiveProvider;
pub use provider::{fixture_key, provider_from_arg, EchoProvider, FixtureProvider, ModelProvider, OfflineProvider, ProviderError};
pub use references::{codes as reference_codes, ReferenceResolver, Resolved};
pub use translate::{codes, scene_globals, IntentRequest, Provenance, TranslationResult, Translator, Untranslatable};
