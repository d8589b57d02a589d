use std::sync::Arc;
use std::time::Duration;

use axum::extract::ws::{Message, WebSocket, WebSocketUpgrade};
use axum::extract::{Path, Query, State};
use axum::response::Response;
use serde::Deserialize;
use serde_json::json;

use atomxr_core::runtime::PlayerInput;
use atomxr_core::session::{Frame, Mode, SessionError};

use crate::{ApiError, AppState, SharedSession};

/// How the play stream advances the runtime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlayMode {
    /// One tick per wall-clock `dt`; inputs accumulate between ticks.
    #[default]
    Realtime,
    /// Exactly one tick and one frame per input message.
    Lockstep,
}

#[derive(Debug, Default, Deserialize)]
pub struct PlayQuery {
    #[serde(default)]
    mode: PlayMode,
}

pub async fn play(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    Query(query): Query<PlayQuery>,
    ws: WebSocketUpgrade,
) -> Result<Response, ApiError> {
    let session = state.session(&id)?;
    let dt = {
        let s = session.lock().await;
        if s.mode() != Mode::Play {
            return Err(SessionError::WrongMode { expected: Mode::Play, actual: s.mode() }.into());
        }
        s.config().dt
    };
    Ok(ws.on_upgrade(move |socket| async move {
        let result = match query.mode {
            PlayMode::Lockstep => lockstep(socket, session).await,
            PlayMode::Realtime => realtime(socket, session, Duration::from_secs_f64(dt)).await,
        };
        if let Err(e) = result {
            tracing::debug!(session = %id, "play stream ended: {e}");
        }
    }))
}

fn error_frame(code: &str, message: impl std::fmt::Display) -> Message {
    Message::Text(json!({ "error": { "code": code, "message": message.to_string() } }).to_string().into())
}

fn frame_message(frame: &Frame) -> Message {
    Message::Text(serde_json::to_string(frame).expect("frames serialize").into())
}

/// What one client message asked for, if it was an input at all.
enum Incoming {
    Input(PlayerInput),
    Malformed(String),
    Ignore,
    Closed,
}

fn classify(msg: Option<Result<Message, axum::Error>>) -> Incoming {
    match msg {
        None | Some(Err(_)) | Some(Ok(Message::Close(_))) => Incoming::Closed,
        Some(Ok(Message::Text(text))) => match serde_json::from_str::<PlayerInput>(&text) {
            Ok(input) => match input.check() {
                Ok(()) => Incoming::Input(input),
                Err(e) => Incoming::Malformed(e),
            },
            Err(e) => Incoming::Malformed(e.to_string()),
        },
        Some(Ok(Message::Binary(_))) => Incoming::Malformed("binary messages are not supported".into()),
        Some(Ok(_)) => Incoming::Ignore,
    }
}

/// Sends the step's outcome. `false` once the session has left play mode.
async fn deliver(socket: &mut WebSocket, step: Result<Frame, SessionError>) -> Result<bool, axum::Error> {
    match step {
        Ok(frame) => socket.send(frame_message(&frame)).await.map(|_| true),
        Err(e @ SessionError::WrongMode { .. }) => {
            socket.send(error_frame(e.code(), &e)).await?;
            socket.send(Message::Close(None)).await?;
            Ok(false)
        }
        Err(e) => socket.send(error_frame(e.code(), &e)).await.map(|_| true),
    }
}

async fn lockstep(mut socket: WebSocket, session: SharedSession) -> Result<(), axum::Error> {
    loop {
        match classify(socket.recv().await) {
            Incoming::Closed => return Ok(()),
            Incoming::Ignore => {}
            Incoming::Malformed(e) => socket.send(error_frame("malformed-input", e)).await?,
            Incoming::Input(input) => {
                let step = session.lock().await.step(&input);
                if !deliver(&mut socket, step).await? {
                    return Ok(());
                }
            }
        }
    }
}

async fn realtime(mut socket: WebSocket, session: SharedSession, dt: Duration) -> Result<(), axum::Error> {
    let mut clock = tokio::time::interval(dt);
    clock.set_missed_tick_behavior(tokio::time::MissedTickBehavior::Delay);
    let mut pending = PlayerInput::default();
    loop {
        tokio::select! {
            msg = socket.recv() => match classify(msg) {
                Incoming::Closed => return Ok(()),
                Incoming::Ignore => {}
                Incoming::Malformed(e) => socket.send(error_frame("malformed-input", e)).await?,
                Incoming::Input(input) => {
                    pending.dx += input.dx;
                    pending.dy += input.dy;
                    pending.dz += input.dz;
                    if let Some(id) = input.press {
                        let queued = session.lock().await.press(&id);
                        if let Err(e) = queued {
                            if !deliver(&mut socket, Err(e)).await? {
                                return Ok(());
                            }
                        }
                    }
                }
            },
            _ = clock.tick() => {
                let input = std::mem::take(&mut pending);
                let step = session.lock().await.step(&input);
                if !deliver(&mut socket, step).await? {
                    return Ok(());
                }
            }
        }
    }
}
