use std::io::{self, BufRead, Write};
use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{Context as _, Result};
use axum::extract::State;
use axum::http::{header, StatusCode};
use axum::response::IntoResponse;
use axum::routing::{get, post};
use axum::Router;
use proust_core::protocol::Store;
use tower_http::services::ServeDir;

pub fn stdio(store: Store) -> Result<ExitCode> {
    let mut out = io::stdout().lock();
    for line in io::stdin().lock().lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        writeln!(out, "{}", store.handle_json(&line))?;
        out.flush()?;
    }
    Ok(ExitCode::SUCCESS)
}

pub fn router(store: Arc<Store>, assets: Option<PathBuf>) -> Router {
    let app = Router::new()
        .route("/op", post(op))
        .route("/health", get(|| async { "ok" }))
        .with_state(store);
    match assets {
        Some(dir) => app.fallback_service(ServeDir::new(dir)),
        None => app,
    }
}

async fn op(State(store): State<Arc<Store>>, body: String) -> impl IntoResponse {
    let json = tokio::task::spawn_blocking(move || store.handle_json(&body)).await;
    match json {
        Ok(json) => (StatusCode::OK, [(header::CONTENT_TYPE, "application/json")], json),
        Err(_) => (
            StatusCode::INTERNAL_SERVER_ERROR,
            [(header::CONTENT_TYPE, "application/json")],
            r#"{"status":"error","session":"default","goals":[],"error":{"kind":"internal","message":"internal error"}}"#
                .to_string(),
        ),
    }
}

pub fn http(store: Store, port: u16, assets: Option<PathBuf>, stack: usize) -> Result<ExitCode> {
    let rt = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .thread_stack_size(stack)
        .build()?;
    rt.block_on(async move {
        let addr = SocketAddr::from(([127, 0, 0, 1], port));
        let listener = tokio::net::TcpListener::bind(addr)
            .await
            .with_context(|| format!("cannot bind {addr}"))?;
        println!("listening on http://{}", listener.local_addr()?);
        io::stdout().flush()?;
        axum::serve(listener, router(Arc::new(store), assets))
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await?;
        Ok(ExitCode::SUCCESS)
    })
}
