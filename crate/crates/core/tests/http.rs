use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use triquiver::service::{handle, render, router};

async fn call(method: &str, path: &str, body: &str) -> (StatusCode, String) {
    let req = Request::builder().method(method).uri(path).header("content-type", "application/json").body(Body::from(body.to_string())).unwrap();
    let resp = router().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

fn case_f() -> Value {
    json!({"point": {"chart": {"family": "a_M_b", "index": 0}, "charges": ["i", "2i", "-3i"], "sheets": [0, 0, 1]}})
}

#[tokio::test]
async fn charts_lists_eight_families() {
    let (status, body) = call("GET", "/charts", "").await;
    assert_eq!(status, StatusCode::OK);
    let v: Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["charts"].as_array().unwrap().len(), 8);
}

#[tokio::test]
async fn classify_case_f() {
    let (status, body) = call("POST", "/classify", &case_f().to_string()).await;
    assert_eq!(status, StatusCode::OK);
    let v: Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["c1_ss"], json!(["A", "B"]));
    assert_eq!(v["exact"], true);
    assert_eq!(v["point"]["chart"]["family"], "a_M_b");
    assert!(v["version"].is_string());
}

#[tokio::test]
async fn error_statuses() {
    let violation = json!({"chart": {"family": "b_b_Mp", "index": 0}, "charges": ["-1+i", "-1+i", "-4+i"], "sheets": [0, 0, 0]});
    let (status, body) = call("POST", "/classify", &violation.to_string()).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let v: Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["error"]["code"], "ChartViolation");

    let (status, _) = call("POST", "/classify", "{not json").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, body) = call("POST", "/hom", r#"{"x": "q:1", "y": "a:0"}"#).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(body.contains("\"error\""));
    let (status, _) = call("POST", "/nonsense", "{}").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = call("POST", "/verify", r#"{"charge": "-1,i,i", "bound": 2}"#).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn answers_match_the_shared_handler_byte_for_byte() {
    let walk = json!({
        "start": {"chart": {"family": "a_M_b", "index": 0}, "charges": ["1+i", "i", "1-i"], "sheets": [0, 0, 1]},
        "end": case_f()["point"],
        "steps": 3
    });
    let cases = [
        ("classify", case_f()),
        ("locate", case_f()),
        ("walk", walk),
        ("hom", json!({"x": "a:0", "y": "a:1"})),
        ("verify", json!({"charge": "i,3i,2i", "bound": 3})),
    ];
    for (cmd, payload) in cases {
        let (status, body) = call("POST", &format!("/{cmd}"), &payload.to_string()).await;
        assert_eq!(status, StatusCode::OK, "{cmd}: {body}");
        assert_eq!(body, render(&handle(cmd, &payload).unwrap(), false), "{cmd}");
    }
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_requests_match_serial_answers() {
    let payloads: Vec<Value> = (0..4)
        .map(|k| json!({"point": {"chart": {"family": "b_b_Mp", "index": k}, "charges": ["-1+i", "-2+i", format!("-{}+i", k + 3)], "sheets": [0, 0, 0]}}))
        .collect();
    let serial: Vec<String> = payloads.iter().map(|p| render(&handle("classify", p).unwrap(), false)).collect();
    let mut tasks = Vec::new();
    for round in 0..6 {
        for (i, p) in payloads.iter().enumerate() {
            let body = p.to_string();
            tasks.push(tokio::spawn(async move { (i, round, call("POST", "/classify", &body).await) }));
        }
    }
    for t in tasks {
        let (i, _, (status, body)) = t.await.unwrap();
        assert_eq!(status, StatusCode::OK);
        assert_eq!(body, serial[i]);
    }
}
