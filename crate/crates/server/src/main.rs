use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::Parser;

use atomxr_core::assets::AssetCatalog;
use atomxr_core::intent::{provider_from_arg, Lexicon, PromptBundle, Translator};
use atomxr_core::runtime::RuntimeConfig;
use atomxr_core::scene::FileStore;
use atomxr_server::{router, AppState};

/// Session-scoped authoring service for AtomXR scenes.
#[derive(Debug, Parser)]
#[command(version)]
struct Args {
    /// Address to listen on.
    #[arg(long, env = "ATOMXR_LISTEN", default_value = "127.0.0.1:8080")]
    listen: String,
    /// Model provider: offline, echo, fixtures:<path> or live.
    #[arg(long, env = "ATOMXR_PROVIDER", default_value = "offline")]
    provider: String,
    /// Asset catalog JSON; the built-in catalog when absent.
    #[arg(long, env = "ATOMXR_CATALOG")]
    catalog: Option<PathBuf>,
    /// Seconds per tick.
    #[arg(long, default_value_t = 1.0 / 60.0)]
    dt: f64,
    /// Named speed override, e.g. `slow=0.5`. Repeatable.
    #[arg(long = "speed", value_name = "NAME=UNITS")]
    speeds: Vec<String>,
    /// Directory saved scenes are written to.
    #[arg(long, env = "ATOMXR_SAVE_DIR", default_value = "saved-scenes")]
    save_dir: PathBuf,
}

fn build(args: &Args) -> Result<Arc<AppState>, String> {
    let provider = provider_from_arg(&args.provider)?;
    let catalog = match &args.catalog {
        Some(p) => AssetCatalog::load(p).map_err(|e| e.to_string())?,
        None => AssetCatalog::builtin(),
    };
    let translator = Translator::with_parts(provider, Lexicon::builtin(), PromptBundle::builtin(), catalog);
    let mut config = RuntimeConfig { dt: args.dt, ..RuntimeConfig::default() };
    for s in &args.speeds {
        let (name, value) = s.split_once('=').ok_or_else(|| format!("speed `{s}` is not NAME=UNITS"))?;
        let value: f64 = value.parse().map_err(|_| format!("speed `{s}` has a non-numeric value"))?;
        config.speed_map.insert(name.to_string(), value);
    }
    config.check()?;
    Ok(AppState::new(Arc::new(translator), config, FileStore::new(&args.save_dir)))
}

#[tokio::main]
async fn main() -> ExitCode {
    tracing_subscriber::fmt()
        .with_env_filter(tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()))
        .init();
    let args = Args::parse();
    let state = match build(&args) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("atomxr-server: {e}");
            return ExitCode::from(2);
        }
    };
    let listener = match tokio::net::TcpListener::bind(&args.listen).await {
        Ok(l) => l,
        Err(e) => {
            eprintln!("atomxr-server: cannot listen on {}: {e}", args.listen);
            return ExitCode::FAILURE;
        }
    };
    tracing::info!("listening on {}", args.listen);
    let shutdown = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    match axum::serve(listener, router(state)).with_graceful_shutdown(shutdown).await {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("atomxr-server: {e}");
            ExitCode::FAILURE
        }
    }
}
