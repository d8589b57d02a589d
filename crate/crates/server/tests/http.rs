mod common;

use common::TestServer;
use serde_json::{json, Value};

#[tokio::test]
async fn new_sessions_are_distinct_and_empty() {
    let srv = TestServer::start().await;
    let a = srv.new_session(None).await;
    let b = srv.new_session(None).await;
    assert_ne!(a, b);
    assert_eq!(srv.state.session_count(), 2);
    let (status, text) = srv.get_text(&format!("/sessions/{a}/spec")).await;
    assert_eq!(status, 200);
    assert_eq!(text.trim(), common::read("golden/empty_spec.json").trim());
}

#[tokio::test]
async fn create_then_recolor_through_gaze() {
    let srv = TestServer::start().await;
    let id = srv.new_session(None).await;
    let (status, v) = srv.say(&id, "Create a cherry.", &[]).await;
    assert_eq!(status, 200, "{v}");
    assert_eq!(v["result"]["command"]["createObject"]["assetType"], "cherry");
    assert_eq!(v["spec"]["objects"][0]["id"], "cherry1");

    let (status, v) = srv.say(&id, "Make this orange", &["cherry1"]).await;
    assert_eq!(status, 200, "{v}");
    assert_eq!(v["result"]["resolvedText"], "Make cherry1 orange");
    assert_eq!(v["spec"]["objects"][0]["color"], json!([1.0, 0.5, 0.0]));
}

#[tokio::test]
async fn unknown_gaze_target_is_reported_in_debug() {
    let srv = TestServer::start().await;
    let id = srv.new_session(None).await;
    srv.say(&id, "Create a cherry.", &[]).await;
    let (status, v) = srv.say(&id, "Make this orange", &["ghost9", "cherry1"]).await;
    assert_eq!(status, 200, "{v}");
    let codes: Vec<&str> = v["debug"].as_array().unwrap().iter().filter_map(|d| d["code"].as_str()).collect();
    assert!(codes.contains(&"unknown-gaze-target"), "{codes:?}");
    assert_eq!(v["spec"]["objects"][0]["color"], json!([1.0, 0.5, 0.0]));
}

#[tokio::test]
async fn untranslatable_utterance_is_unprocessable() {
    let srv = TestServer::start().await;
    let id = srv.new_session(None).await;
    let (status, v) = srv.say(&id, "zxqv blorp", &[]).await;
    assert_eq!(status, 422, "{v}");
    assert_eq!(v["error"]["code"], "untranslatable");
    let (_, spec) = srv.get_text(&format!("/sessions/{id}/spec")).await;
    assert_eq!(spec.trim(), common::read("golden/empty_spec.json").trim());
}

#[tokio::test]
async fn edits_are_rejected_in_play_mode() {
    let srv = TestServer::start().await;
    let id = srv.new_session(None).await;
    srv.say(&id, "Create a cherry.", &[]).await;
    assert_eq!(srv.mode(&id, "play").await, (200, json!({ "mode": "play" })));
    let before = srv.get_text(&format!("/sessions/{id}/spec")).await.1;

    let (status, v) = srv.say(&id, "Create a watermelon.", &[]).await;
    assert_eq!(status, 409);
    assert_eq!(v["error"]["code"], "wrong-mode");
    for path in ["undo", "redo", "reset"] {
        assert_eq!(srv.post(&format!("/sessions/{id}/{path}"), None).await.0, 409, "{path}");
    }
    assert_eq!(srv.get_text(&format!("/sessions/{id}/spec")).await.1, before);

    assert_eq!(srv.mode(&id, "edit").await.0, 200);
    assert_eq!(srv.say(&id, "Create a watermelon.", &[]).await.0, 200);
}

#[tokio::test]
async fn unknown_sessions_and_blocks_are_not_found() {
    let srv = TestServer::start().await;
    let (status, v) = srv.say("nope", "Create a cherry.", &[]).await;
    assert_eq!(status, 404);
    assert_eq!(v["error"]["code"], "unknown-session");
    assert_eq!(srv.get_text("/sessions/nope/spec").await.0, 404);
    assert_eq!(srv.post("/sessions/nope/undo", None).await.0, 404);

    let id = srv.new_session(None).await;
    let (status, v) = srv.delete(&format!("/sessions/{id}/scripts/script9")).await;
    assert_eq!(status, 404, "{v}");
}

#[tokio::test]
async fn malformed_bodies_are_bad_requests() {
    let srv = TestServer::start().await;
    let id = srv.new_session(None).await;
    let (status, v) = srv.post(&format!("/sessions/{id}/command"), Some(json!({ "text": "hi" }))).await;
    assert_eq!(status, 400);
    assert_eq!(v["error"]["code"], "malformed-request");
    assert_eq!(srv.post(&format!("/sessions/{id}/mode"), Some(json!({ "mode": "fly" }))).await.0, 400);
    assert_eq!(srv.post("/sessions", Some(json!({ "spec": 3 }))).await.0, 400);
}

#[tokio::test]
async fn undo_redo_report_noops() {
    let srv = TestServer::start().await;
    let id = srv.new_session(None).await;
    let (status, v) = srv.post(&format!("/sessions/{id}/undo"), None).await;
    assert_eq!(status, 200);
    assert_eq!(v["noop"], true);

    srv.say(&id, "Create a cherry.", &[]).await;
    let (_, v) = srv.post(&format!("/sessions/{id}/undo"), None).await;
    assert_eq!(v["noop"], false);
    assert_eq!(v["spec"]["objects"], json!([]));
    let (_, v) = srv.post(&format!("/sessions/{id}/redo"), None).await;
    assert_eq!(v["noop"], false);
    assert_eq!(v["spec"]["objects"][0]["id"], "cherry1");
    let (_, v) = srv.post(&format!("/sessions/{id}/redo"), None).await;
    assert_eq!(v["noop"], true);

    let (status, v) = srv.post(&format!("/sessions/{id}/reset"), None).await;
    assert_eq!(status, 200);
    assert_eq!(v["spec"]["objects"], json!([]));
}

#[tokio::test]
async fn delete_script_then_undo_restores_it() {
    let srv = TestServer::start().await;
    let id = srv.new_session(None).await;
    let (_, v) = srv.say(&id, "When the game begins, play some piano music.", &[]).await;
    let block = v["spec"]["scripts"][0]["blockId"].as_str().unwrap().to_string();
    let source = v["spec"]["scripts"][0]["sourceText"].clone();

    let (status, v) = srv.delete(&format!("/sessions/{id}/scripts/{block}")).await;
    assert_eq!(status, 200, "{v}");
    assert_eq!(v["spec"]["scripts"], json!([]));

    let (_, v) = srv.post(&format!("/sessions/{id}/undo"), None).await;
    assert_eq!(v["spec"]["scripts"][0]["blockId"], block.as_str());
    assert_eq!(v["spec"]["scripts"][0]["sourceText"], source);
}

#[tokio::test]
async fn save_writes_the_canonical_spec() {
    let srv = TestServer::start().await;
    let id = srv.new_session(None).await;
    srv.say(&id, "Create a cherry.", &[]).await;
    let (status, v) = srv.post(&format!("/sessions/{id}/save"), None).await;
    assert_eq!(status, 200, "{v}");
    let path = v["path"].as_str().unwrap();
    assert!(path.starts_with(srv.save_dir.path().to_str().unwrap()));
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(saved["objects"][0]["id"], "cherry1");
    assert!(saved["meta"]["savedAt"].is_string());
}

#[tokio::test]
async fn sessions_accept_a_starting_spec_and_config() {
    let srv = TestServer::start().await;
    let spec: Value = serde_json::from_str(&common::read("shooter/spec.json")).unwrap();
    let config: Value = serde_json::from_str(&common::read("shooter/config.json")).unwrap();
    let id = srv.new_session(Some(json!({ "spec": spec, "config": config }))).await;
    let (_, text) = srv.get_text(&format!("/sessions/{id}/spec")).await;
    let got: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(got["objects"], spec["objects"]);

    let bad = json!({ "config": { "dt": 0.0 } });
    assert_eq!(srv.post("/sessions", Some(bad)).await.0, 422);
}

#[tokio::test]
async fn requests_to_one_session_are_serialized() {
    let srv = TestServer::start().await;
    let id = srv.new_session(None).await;
    let futs: Vec<_> = (0..8).map(|_| srv.say(&id, "Create a cherry.", &[])).collect();
    for (status, _) in futures_util::future::join_all(futs).await {
        assert_eq!(status, 200);
    }
    let (_, text) = srv.get_text(&format!("/sessions/{id}/spec")).await;
    let v: Value = serde_json::from_str(&text).unwrap();
    let mut ids: Vec<String> = v["objects"].as_array().unwrap().iter().map(|o| o["id"].as_str().unwrap().into()).collect();
    ids.sort();
    let mut want: Vec<String> = (1..=8).map(|n| format!("cherry{n}")).collect();
    want.sort();
    assert_eq!(ids, want);
}
