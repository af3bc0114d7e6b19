use std::net::{Ipv4Addr, SocketAddr};

use axum::http::{header, StatusCode};
use axum::response::IntoResponse;
use axum::routing::post;
use axum::Router;
use tokio::net::TcpListener;

use crate::protocol::handle_evaluate_json;

async fn evaluate(body: String) -> impl IntoResponse {
    let (status, json) = tokio::task::spawn_blocking(move || handle_evaluate_json(&body))
        .await
        .unwrap_or_else(|e| (500, format!("{{\"schema\":1,\"error\":\"{e}\"}}")));
    (
        StatusCode::from_u16(status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR),
        [(header::CONTENT_TYPE, "application/json")],
        json,
    )
}

pub fn router() -> Router {
    Router::new().route("/evaluate", post(evaluate))
}

/// Binds `127.0.0.1:port`; port 0 picks a free one.
pub async fn bind(port: u16) -> std::io::Result<TcpListener> {
    TcpListener::bind(SocketAddr::from((Ipv4Addr::LOCALHOST, port))).await
}

pub async fn serve(listener: TcpListener) -> std::io::Result<()> {
    axum::serve(listener, router()).await
}
