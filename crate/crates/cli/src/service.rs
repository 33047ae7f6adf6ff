//! Stateless HTTP/JSON service under `/api`.

use axum::body::Bytes;
use axum::http::{header, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::Serialize;
use tower_http::cors::{Any, CorsLayer};

use crate::documents::MotionDocument;
use crate::error::ServiceError;
use crate::ops;

pub fn router() -> Router {
    let cors = CorsLayer::new()
        .allow_origin(Any)
        .allow_methods([Method::GET, Method::POST, Method::OPTIONS])
        .allow_headers(Any);
    Router::new()
        .route("/api/health", get(health))
        .route("/api/interpolate", post(interpolate))
        .route("/api/factorize", post(factorize))
        .route("/api/sample", post(sample))
        .layer(cors)
}

fn json(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn reply<T: Serialize>(result: Result<T, ServiceError>) -> Response {
    match result.and_then(|v| serde_json::to_string(&v).map_err(ServiceError::schema)) {
        Ok(body) => json(StatusCode::OK, body),
        Err(e) => {
            let status = StatusCode::from_u16(e.http_status()).unwrap_or(StatusCode::BAD_REQUEST);
            json(status, e.to_json())
        }
    }
}

fn utf8(body: &Bytes) -> Result<&str, ServiceError> {
    std::str::from_utf8(body).map_err(ServiceError::schema)
}

async fn health() -> Response {
    json(StatusCode::OK, r#"{"status":"ok"}"#.into())
}

async fn interpolate(body: Bytes) -> Response {
    reply(ops::tolerance_from_env().and_then(|tol| ops::interpolate(utf8(&body)?, tol)))
}

async fn factorize(body: Bytes) -> Response {
    reply(utf8(&body).and_then(MotionDocument::parse).and_then(|m| ops::factorize(&m, false)))
}

async fn sample(body: Bytes) -> Response {
    reply(utf8(&body).and_then(ops::sample_request))
}

/// Serves the API until the process is stopped.
pub async fn serve(host: &str, port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind((host, port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router()).await
}
