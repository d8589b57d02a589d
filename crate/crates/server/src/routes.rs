use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{delete, get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;

use atomxr_core::intent::TranslationResult;
use atomxr_core::runtime::RuntimeConfig;
use atomxr_core::scene::SceneSpec;
use atomxr_core::session::{Mode, Session};
use atomxr_core::syntax::Diagnostic;

use crate::play::play;
use crate::{ApiError, AppState, SharedSession};

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}/spec", get(get_spec))
        .route("/sessions/{id}/command", post(command))
        .route("/sessions/{id}/mode", post(set_mode))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/redo", post(redo))
        .route("/sessions/{id}/reset", post(reset))
        .route("/sessions/{id}/save", post(save))
        .route("/sessions/{id}/scripts/{block_id}", delete(delete_script))
        .route("/sessions/{id}/play", get(play))
        .with_state(state)
}

/// Parses a JSON body; an empty body reads as `T::default()` when allowed.
fn body<T: DeserializeOwned>(bytes: &Bytes, empty: Option<T>) -> Result<T, ApiError> {
    if bytes.iter().all(u8::is_ascii_whitespace) {
        if let Some(v) = empty {
            return Ok(v);
        }
    }
    serde_json::from_slice(bytes).map_err(|e| ApiError::bad_request(format!("invalid request body: {e}")))
}

/// Runs `f` on the session off the async executor, holding its lock for the
/// whole call so requests to one session never interleave.
async fn with_session<T: Send + 'static>(
    session: SharedSession,
    f: impl FnOnce(&mut Session) -> Result<T, ApiError> + Send + 'static,
) -> Result<T, ApiError> {
    let mut guard = session.lock_owned().await;
    tokio::task::spawn_blocking(move || f(&mut guard))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))?
}

fn spec_response(spec: &SceneSpec) -> Response {
    ([(header::CONTENT_TYPE, "application/json")], spec.to_canonical_json()).into_response()
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct CreateSession {
    spec: Option<SceneSpec>,
    config: Option<RuntimeConfig>,
}

async fn create_session(State(state): State<Arc<AppState>>, bytes: Bytes) -> Result<Response, ApiError> {
    let req: CreateSession = body(&bytes, Some(CreateSession::default()))?;
    let config = req.config.unwrap_or_else(|| state.config.clone());
    config.check().map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid-config", e))?;
    if let Some(spec) = &req.spec {
        spec.check().map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, e.code(), e.to_string()))?;
    }
    let mut session = Session::new(Arc::clone(&state.translator), config);
    if let Some(spec) = req.spec {
        session = session.with_spec(spec);
    }
    let id = state.insert(session);
    tracing::info!(session = %id, "session created");
    Ok((StatusCode::CREATED, Json(json!({ "sessionId": id }))).into_response())
}

async fn get_spec(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let session = state.session(&id)?;
    let guard = session.lock().await;
    Ok(spec_response(guard.spec()))
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct CommandRequest {
    utterance: String,
    #[serde(default)]
    gaze_targets: Vec<String>,
}

#[derive(Serialize)]
struct CommandResponse {
    result: TranslationResult,
    spec: SceneSpec,
    debug: Vec<Diagnostic>,
}

async fn command(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    bytes: Bytes,
) -> Result<Json<CommandResponse>, ApiError> {
    let req: CommandRequest = body(&bytes, None)?;
    let session = state.session(&id)?;
    with_session(session, move |s| {
        let out = s.submit(&req.utterance, &req.gaze_targets)?;
        let mut debug = out.translation.diagnostics.clone();
        debug.extend(out.references);
        Ok(Json(CommandResponse { result: out.translation, spec: s.spec().clone(), debug }))
    })
    .await
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModeRequest {
    mode: Mode,
}

async fn set_mode(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    bytes: Bytes,
) -> Result<Json<serde_json::Value>, ApiError> {
    let req: ModeRequest = body(&bytes, None)?;
    let session = state.session(&id)?;
    with_session(session, move |s| {
        s.set_mode(req.mode)?;
        Ok(Json(json!({ "mode": s.mode() })))
    })
    .await
}

async fn history(state: &AppState, id: &str, redo: bool) -> Result<Json<serde_json::Value>, ApiError> {
    let session = state.session(id)?;
    with_session(session, move |s| {
        let changed = if redo { s.redo()? } else { s.undo()? };
        Ok(Json(json!({ "noop": !changed, "spec": s.spec() })))
    })
    .await
}

async fn undo(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<serde_json::Value>, ApiError> {
    history(&state, &id, false).await
}

async fn redo(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<serde_json::Value>, ApiError> {
    history(&state, &id, true).await
}

async fn reset(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<serde_json::Value>, ApiError> {
    let session = state.session(&id)?;
    with_session(session, |s| {
        s.reset()?;
        Ok(Json(json!({ "spec": s.spec() })))
    })
    .await
}

async fn save(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<serde_json::Value>, ApiError> {
    let session = state.session(&id)?;
    let shared = Arc::clone(&state);
    with_session(session, move |s| {
        let saved = s.save(&shared.store)?;
        let path = shared.store.path_of(&saved);
        Ok(Json(json!({ "savedId": saved.0, "path": path })))
    })
    .await
}

async fn delete_script(
    State(state): State<Arc<AppState>>,
    Path((id, block_id)): Path<(String, String)>,
) -> Result<Json<serde_json::Value>, ApiError> {
    let session = state.session(&id)?;
    with_session(session, move |s| {
        let applied = s.delete_script(&block_id)?;
        Ok(Json(json!({ "applied": applied, "spec": s.spec() })))
    })
    .await
}
