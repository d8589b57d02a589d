//! Language-model providers: one text-in, text-out call.

use std::collections::BTreeMap;
use std::path::Path;

use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProviderError {
    #[error("no recorded completion for prompt {0}")]
    NoFixture(String),
    #[error("provider unavailable: {0}")]
    Unavailable(String),
    #[error("provider request failed: {0}")]
    Request(String),
}

/// Implementations must be callable from many sessions at once.
pub trait ModelProvider: Send + Sync {
    fn name(&self) -> &str;
    fn complete(&self, prompt: &str) -> Result<String, ProviderError>;
}

/// Lowercase hex SHA-256 of the prompt bytes; the key of a fixture file.
pub fn fixture_key(prompt: &str) -> String {
    hex::encode(Sha256::digest(prompt.as_bytes()))
}

/// Replays recorded completions keyed by [`fixture_key`]. Thread-safe: the
/// map is read-only after construction.
#[derive(Debug, Clone, Default)]
pub struct FixtureProvider {
    completions: BTreeMap<String, String>,
}

impl FixtureProvider {
    pub fn new(completions: BTreeMap<String, String>) -> Self {
        FixtureProvider { completions }
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let completions: BTreeMap<String, String> = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if let Some(k) = completions.keys().find(|k| k.len() != 64 || !k.bytes().all(|b| b.is_ascii_hexdigit())) {
            return Err(format!("`{k}` is not a SHA-256 hex key"));
        }
        Ok(FixtureProvider { completions })
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn len(&self) -> usize {
        self.completions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.completions.is_empty()
    }
}

impl ModelProvider for FixtureProvider {
    fn name(&self) -> &str {
        "fixtures"
    }

    fn complete(&self, prompt: &str) -> Result<String, ProviderError> {
        let key = fixture_key(prompt);
        self.completions.get(&key).cloned().ok_or(ProviderError::NoFixture(key))
    }
}

/// Answers with the text of the prompt's final `SPEECH:` line.
#[derive(Debug, Clone, Copy, Default)]
pub struct EchoProvider;

impl ModelProvider for EchoProvider {
    fn name(&self) -> &str {
        "echo"
    }

    fn complete(&self, prompt: &str) -> Result<String, ProviderError> {
        let speech = prompt.lines().rev().find_map(|l| l.strip_prefix("SPEECH:")).unwrap_or("");
        Ok(speech.to_string())
    }
}

/// Always unavailable, so every non-create turn goes to the fallback.
#[derive(Debug, Clone, Copy, Default)]
pub struct OfflineProvider;

impl ModelProvider for OfflineProvider {
    fn name(&self) -> &str {
        "offline"
    }

    fn complete(&self, _prompt: &str) -> Result<String, ProviderError> {
        Err(ProviderError::Unavailable("no language model configured".into()))
    }
}

/// Builds a provider from a command-line selector: `offline`, `echo`,
/// `fixtures:<path>` or `live` (credentials from the environment).
pub fn provider_from_arg(arg: &str) -> Result<std::sync::Arc<dyn ModelProvider>, String> {
    match arg {
        "offline" => Ok(std::sync::Arc::new(OfflineProvider)),
        "echo" => Ok(std::sync::Arc::new(EchoProvider)),
        #[cfg(feature = "live")]
        "live" => Ok(std::sync::Arc::new(LiveProvider::from_env().map_err(|e| e.to_string())?)),
        #[cfg(not(feature = "live"))]
        "live" => Err("this build has no live provider; rebuild with the `live` feature".into()),
        _ => match arg.strip_prefix("fixtures:") {
            Some(path) if !path.is_empty() => Ok(std::sync::Arc::new(FixtureProvider::load(Path::new(path))?)),
            _ => Err(format!("unknown provider `{arg}`; expected offline, echo, fixtures:<path> or live")),
        },
    }
}

#[cfg(feature = "live")]
pub use live::LiveProvider;

#[cfg(feature = "live")]
mod live {
    use std::time::Duration;

    use super::{ModelProvider, ProviderError};

    /// OpenAI-compatible `/completions` endpoint. The blocking client is
    /// shared and thread-safe.
    #[derive(Debug)]
    pub struct LiveProvider {
        client: reqwest::blocking::Client,
        url: String,
        key: String,
        model: String,
    }

    impl LiveProvider {
        pub fn new(url: &str, key: &str, model: &str, timeout: Duration) -> Result<Self, ProviderError> {
            let client = reqwest::blocking::Client::builder()
                .timeout(timeout)
                .build()
                .map_err(|e| ProviderError::Unavailable(e.to_string()))?;
            Ok(LiveProvider { client, url: url.into(), key: key.into(), model: model.into() })
        }

        /// Reads `ATOMXR_API_URL`, `ATOMXR_API_KEY` and `ATOMXR_MODEL`.
        pub fn from_env() -> Result<Self, ProviderError> {
            let var = |k: &str| std::env::var(k).map_err(|_| ProviderError::Unavailable(format!("{k} is not set")));
            Self::new(&var("ATOMXR_API_URL")?, &var("ATOMXR_API_KEY")?, &var("ATOMXR_MODEL")?, Duration::from_secs(30))
        }
    }

    impl ModelProvider for LiveProvider {
        fn name(&self) -> &str {
            "live"
        }

        fn complete(&self, prompt: &str) -> Result<String, ProviderError> {
            let body = serde_json::json!({
                "model": self.model,
                "prompt": prompt,
                "max_tokens": 256,
                "temperature": 0,
                "stop": ["###"],
            });
            let resp = self
                .client
                .post(&self.url)
                .bearer_auth(&self.key)
                .json(&body)
                .send()
                .and_then(|r| r.error_for_status())
                .map_err(|e| ProviderError::Request(e.to_string()))?;
            let v: serde_json::Value = resp.json().map_err(|e| ProviderError::Request(e.to_string()))?;
            v["choices"][0]["text"]
                .as_str()
                .map(str::to_string)
                .ok_or_else(|| ProviderError::Request("response has no choices[0].text".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_is_sha256_hex() {
        assert_eq!(fixture_key(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
        assert_eq!(fixture_key("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn fixture_lookup() {
        let p = FixtureProvider::new(BTreeMap::from([(fixture_key("p"), "c".to_string())]));
        assert_eq!(p.complete("p").unwrap(), "c");
        assert_eq!(p.complete("q"), Err(ProviderError::NoFixture(fixture_key("q"))));
        assert!(FixtureProvider::from_json(r#"{"abc":"x"}"#).is_err());
    }

    #[test]
    fn echo_returns_last_speech() {
        assert_eq!(EchoProvider.complete("SPEECH:a\nATOMCOMMAND:{}\n###\nSPEECH:asdf\nATOMCOMMAND:").unwrap(), "asdf");
        assert!(OfflineProvider.complete("x").is_err());
    }

    #[test]
    fn selector() {
        assert_eq!(provider_from_arg("offline").unwrap().name(), "offline");
        assert_eq!(provider_from_arg("echo").unwrap().name(), "echo");
        assert!(provider_from_arg("fixtures:").is_err());
        assert!(provider_from_arg("fixtures:/no/such/file.json").is_err());
        assert!(provider_from_arg("gpt").err().unwrap().contains("unknown provider"));
    }
}
