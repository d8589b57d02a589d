#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use futures_util::{SinkExt, StreamExt};
use serde_json::{json, Value};
use tokio_tungstenite::tungstenite::Message;

use atomxr_core::intent::{OfflineProvider, Translator};
use atomxr_core::runtime::RuntimeConfig;
use atomxr_core::scene::FileStore;
use atomxr_server::{router, AppState};

pub type Ws = tokio_tungstenite::WebSocketStream<tokio_tungstenite::MaybeTlsStream<tokio::net::TcpStream>>;

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

pub fn read(rel: &str) -> String {
    std::fs::read_to_string(fixture(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

/// A server on an ephemeral port backed by the offline translator.
pub struct TestServer {
    pub base: String,
    pub ws_base: String,
    pub state: Arc<AppState>,
    pub http: reqwest::Client,
    pub save_dir: tempfile::TempDir,
}

impl TestServer {
    pub async fn start() -> Self {
        let save_dir = tempfile::tempdir().unwrap();
        let state = AppState::new(
            Arc::new(Translator::new(Arc::new(OfflineProvider))),
            RuntimeConfig::default(),
            FileStore::new(save_dir.path()),
        );
        let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
        let addr = listener.local_addr().unwrap();
        let app = router(Arc::clone(&state));
        tokio::spawn(async move { axum::serve(listener, app).await.unwrap() });
        TestServer {
            base: format!("http://{addr}"),
            ws_base: format!("ws://{addr}"),
            state,
            http: reqwest::Client::new(),
            save_dir,
        }
    }

    /// POSTs `body` (or nothing) and returns status and parsed JSON.
    pub async fn post(&self, path: &str, body: Option<Value>) -> (u16, Value) {
        let mut req = self.http.post(format!("{}{path}", self.base));
        if let Some(b) = body {
            req = req.json(&b);
        }
        let resp = req.send().await.unwrap();
        let status = resp.status().as_u16();
        (status, resp.json().await.unwrap_or(Value::Null))
    }

    pub async fn get_text(&self, path: &str) -> (u16, String) {
        let resp = self.http.get(format!("{}{path}", self.base)).send().await.unwrap();
        (resp.status().as_u16(), resp.text().await.unwrap())
    }

    pub async fn delete(&self, path: &str) -> (u16, Value) {
        let resp = self.http.delete(format!("{}{path}", self.base)).send().await.unwrap();
        let status = resp.status().as_u16();
        (status, resp.json().await.unwrap_or(Value::Null))
    }

    pub async fn new_session(&self, body: Option<Value>) -> String {
        let (status, v) = self.post("/sessions", body).await;
        assert_eq!(status, 201, "{v}");
        v["sessionId"].as_str().unwrap().to_string()
    }

    pub async fn say(&self, id: &str, utterance: &str, gaze: &[&str]) -> (u16, Value) {
        self.post(&format!("/sessions/{id}/command"), Some(json!({ "utterance": utterance, "gazeTargets": gaze })))
            .await
    }

    pub async fn mode(&self, id: &str, mode: &str) -> (u16, Value) {
        self.post(&format!("/sessions/{id}/mode"), Some(json!({ "mode": mode }))).await
    }

    pub async fn play(&self, id: &str, mode: &str) -> Ws {
        let (ws, _) = tokio_tungstenite::connect_async(format!("{}/sessions/{id}/play?mode={mode}", self.ws_base))
            .await
            .unwrap();
        ws
    }
}

pub async fn send(ws: &mut Ws, v: &Value) {
    ws.send(Message::Text(v.to_string().into())).await.unwrap();
}

/// Next text message as JSON, skipping control frames.
pub async fn recv(ws: &mut Ws) -> Value {
    loop {
        let msg = tokio::time::timeout(std::time::Duration::from_secs(10), ws.next())
            .await
            .expect("timed out waiting for a frame")
            .expect("stream ended")
            .unwrap();
        match msg {
            Message::Text(t) => return serde_json::from_str(&t).unwrap(),
            Message::Close(_) => panic!("server closed the stream"),
            _ => {}
        }
    }
}

/// Sends one input and returns the frame it produced.
pub async fn step(ws: &mut Ws, input: Value) -> Value {
    send(ws, &input).await;
    recv(ws).await
}

pub fn spec_at(v: &Value) -> &Value {
    &v["spec"]
}
