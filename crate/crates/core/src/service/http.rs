use axum::body::Bytes;
use axum::extract::Path;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde_json::Value;

use super::{handle, render, ServiceError};

fn reply(answer: std::result::Result<Value, ServiceError>) -> Response {
    let (status, body) = match answer {
        Ok(v) => (StatusCode::OK, v),
        Err(e) => (StatusCode::from_u16(e.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR), e.to_json()),
    };
    (status, [(header::CONTENT_TYPE, "application/json")], render(&body, false)).into_response()
}

async fn charts() -> Response {
    reply(handle("charts", &Value::Null))
}

async fn command(Path(cmd): Path<String>, body: Bytes) -> Response {
    if cmd == "charts" {
        return reply(Err(ServiceError { status: 405, code: "MethodNotAllowed".into(), detail: "use GET /charts".into() }));
    }
    let payload: Value = match serde_json::from_slice(&body) {
        Ok(v) => v,
        Err(e) => return reply(Err(ServiceError::invalid(format!("body is not JSON: {e}")))),
    };
    // Classification is CPU-bound; keep it off the async workers.
    let answer = tokio::task::spawn_blocking(move || handle(&cmd, &payload)).await;
    reply(answer.unwrap_or_else(|e| Err(ServiceError { status: 500, code: "Panic".into(), detail: e.to_string() })))
}

pub fn router() -> Router {
    Router::new().route("/charts", get(charts)).route("/:command", post(command))
}

pub async fn serve(port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("0.0.0.0", port)).await?;
    eprintln!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router()).await
}
