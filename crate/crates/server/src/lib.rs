//! HTTP and WebSocket front end over [`atomxr_core::session::Session`].
//!
//! Each session sits behind its own async mutex, so one session's requests
//! run one at a time in arrival order while different sessions proceed in
//! parallel.

mod error;
mod play;
mod routes;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use atomxr_core::intent::Translator;
use atomxr_core::runtime::RuntimeConfig;
use atomxr_core::scene::FileStore;
use atomxr_core::session::Session;

pub use error::ApiError;
pub use play::PlayMode;
pub use routes::router;

pub type SharedSession = Arc<tokio::sync::Mutex<Session>>;

/// Process-wide state shared by every handler.
pub struct AppState {
    translator: Arc<Translator>,
    config: RuntimeConfig,
    store: FileStore,
    sessions: Mutex<HashMap<String, SharedSession>>,
}

impl AppState {
    pub fn new(translator: Arc<Translator>, config: RuntimeConfig, store: FileStore) -> Arc<Self> {
        Arc::new(AppState { translator, config, store, sessions: Mutex::default() })
    }

    fn session(&self, id: &str) -> Result<SharedSession, ApiError> {
        self.sessions
            .lock()
            .expect("session table poisoned")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::unknown_session(id))
    }

    fn insert(&self, session: Session) -> String {
        let id = uuid::Uuid::new_v4().simple().to_string();
        let shared = Arc::new(tokio::sync::Mutex::new(session));
        self.sessions.lock().expect("session table poisoned").insert(id.clone(), shared);
        id
    }

    pub fn session_count(&self) -> usize {
        self.sessions.lock().expect("session table poisoned").len()
    }
}
