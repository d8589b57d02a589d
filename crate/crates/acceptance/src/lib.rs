//! Test-only crate. The suite lives in `tests/acceptance.rs` and runs with
//! `cargo test -p atomxr-acceptance`.
