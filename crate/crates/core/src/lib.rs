//! AtomScript, the scene specification it runs against, a deterministic
//! runtime, and the natural-language path that turns an utterance into a
//! scene mutation.

pub mod assets;
pub mod fuzz;
pub mod intent;
pub mod runtime;
pub mod scene;
pub mod session;
pub mod syntax;
