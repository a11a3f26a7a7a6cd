//! Request handling shared by the command line and the HTTP server.
//!
//! Every command takes a JSON payload and returns a JSON value, so the two
//! front ends produce byte-identical answers for identical payloads.

mod http;

pub use http::{router, serve};

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::chambers::{locate_with, walk};
use crate::classifier::classify_full;
use crate::error::Error;
use crate::exact_angles::approx_charge;
use crate::oracle::{cross_check, parse_simple_charges, DEFAULT_CAP};
use crate::quiver_core::{hom_profile, ExcObject, Kind};
use crate::stability::{make_point, point_from_json, ChartId, StabilityPoint, FAMILIES};
use crate::VERSION;

pub const COMMANDS: [&str; 6] = ["classify", "locate", "walk", "hom", "verify", "charts"];

/// Port used by `serve` when neither the flag nor the environment sets one.
pub const DEFAULT_PORT: u16 = 8080;
pub const PORT_ENV: &str = "TRIQUIVER_PORT";

/// Catalog bound accepted by `verify`; larger bounds only add modules the
/// oracle cap rejects anyway.
const MAX_BOUND: i64 = 50;
const MAX_STEPS: u32 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ServiceError {
    pub status: u16,
    pub code: String,
    pub detail: String,
}

impl ServiceError {
    fn invalid(detail: impl Into<String>) -> Self {
        ServiceError { status: 400, code: "InvalidRequest".into(), detail: detail.into() }
    }

    pub fn is_bug(&self) -> bool {
        self.status == 500
    }

    pub fn to_json(&self) -> Value {
        json!({"error": {"code": self.code, "detail": self.detail}})
    }
}

impl From<Error> for ServiceError {
    fn from(e: Error) -> Self {
        let status = if e.is_bug() {
            500
        } else if matches!(e, Error::ChartViolation(_)) {
            422
        } else {
            400
        };
        ServiceError { status, code: e.code().into(), detail: e.to_string() }
    }
}

type Answer = std::result::Result<Value, ServiceError>;

#[derive(Deserialize)]
struct Polar {
    radius: Decimal,
    phase: Decimal,
}

/// Decimal inputs may arrive as strings or as JSON numbers.
#[derive(Deserialize)]
#[serde(untagged)]
enum Decimal {
    Text(String),
    Number(f64),
}

impl Decimal {
    fn value(&self) -> Result<f64, ServiceError> {
        match self {
            Decimal::Number(x) => Ok(*x),
            Decimal::Text(s) => s.trim().parse().map_err(|_| ServiceError::invalid(format!("not a decimal: {s:?}"))),
        }
    }
}

#[derive(Deserialize)]
struct ApproxWire {
    chart: ChartId,
    approx: [Polar; 3],
    #[serde(default = "default_max_den")]
    max_den: u64,
}

fn default_max_den() -> u64 {
    1000
}

/// Reads a point given exactly (`{"point": ...}` or the point itself) or as
/// decimal polar coordinates (`{"approx": ..., "chart": ...}`). The flag is
/// true for exact input.
pub fn read_point(v: &Value) -> std::result::Result<(StabilityPoint, bool), ServiceError> {
    if let Some(p) = v.get("point") {
        return Ok((point_from_json(p)?, true));
    }
    if v.get("approx").is_some() {
        let w: ApproxWire = serde_json::from_value(v.clone()).map_err(|e| ServiceError::invalid(format!("approx: {e}")))?;
        if w.max_den == 0 {
            return Err(ServiceError::invalid("max_den must be positive"));
        }
        let mut charges = Vec::with_capacity(3);
        let mut sheets = [0; 3];
        for (i, p) in w.approx.iter().enumerate() {
            let (z, s) = approx_charge(p.radius.value()?, p.phase.value()?, w.max_den)?;
            charges.push(z);
            sheets[i] = s;
        }
        let p = make_point(w.chart, charges.try_into().expect("three charges"), sheets)?;
        return Ok((p, false));
    }
    Ok((point_from_json(v)?, true))
}

fn envelope(exact: bool, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("version".into(), json!(VERSION));
    m.insert("exact".into(), json!(exact));
    if let Value::Object(b) = body {
        m.extend(b);
    }
    Value::Object(m)
}

fn get_str<'a>(v: &'a Value, key: &str) -> std::result::Result<&'a str, ServiceError> {
    v.get(key).and_then(Value::as_str).ok_or_else(|| ServiceError::invalid(format!("missing string field {key:?}")))
}

fn get_int(v: &Value, key: &str) -> std::result::Result<Option<i64>, ServiceError> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::Number(n)) => n.as_i64().map(Some).ok_or_else(|| ServiceError::invalid(format!("{key} must be an integer"))),
        Some(Value::String(s)) => s.trim().parse().map(Some).map_err(|_| ServiceError::invalid(format!("{key} must be an integer"))),
        Some(_) => Err(ServiceError::invalid(format!("{key} must be an integer"))),
    }
}

fn classify_cmd(payload: &Value) -> Answer {
    let (p, exact) = read_point(payload)?;
    let (c, res) = classify_full(&p)?;
    let mut body = c.to_json();
    body["point"] = json!(p);
    body["resolution"] = res.to_json();
    body["location"] = json!(locate_with(&c, &res));
    Ok(envelope(exact, body))
}

fn locate_cmd(payload: &Value) -> Answer {
    let (p, exact) = read_point(payload)?;
    let (c, res) = classify_full(&p)?;
    let loc = locate_with(&c, &res);
    let sig: Vec<String> = loc.signature().iter().map(|c| c.to_string()).collect();
    Ok(envelope(exact, json!({"point": p, "location": loc, "wall": loc.is_wall(), "signature": sig})))
}

fn walk_cmd(payload: &Value) -> Answer {
    let start = payload.get("start").ok_or_else(|| ServiceError::invalid("missing field \"start\""))?;
    let end = payload.get("end").ok_or_else(|| ServiceError::invalid("missing field \"end\""))?;
    let (a, ea) = read_point(start)?;
    let (b, eb) = read_point(end)?;
    let steps = get_int(payload, "steps")?.unwrap_or(10);
    if steps < 1 || steps > MAX_STEPS as i64 {
        return Err(ServiceError::invalid(format!("steps must lie in 1..={MAX_STEPS}")));
    }
    let entries = walk(&a, &b, steps as u32)?;
    Ok(envelope(ea && eb, json!({"start": a, "end": b, "steps": steps, "entries": entries})))
}

fn hom_cmd(payload: &Value) -> Answer {
    let x: ExcObject = get_str(payload, "x")?.parse()?;
    let y: ExcObject = get_str(payload, "y")?.parse()?;
    let h = hom_profile(x, y);
    Ok(envelope(true, json!({"x": x.to_string(), "y": y.to_string(), "degree": h.degree, "dim": h.dim})))
}

fn verify_cmd(payload: &Value) -> Answer {
    let z = parse_simple_charges(get_str(payload, "charge")?)?;
    let bound = get_int(payload, "bound")?.unwrap_or(3);
    if !(0..=MAX_BOUND).contains(&bound) {
        return Err(ServiceError::invalid(format!("bound must lie in 0..={MAX_BOUND}")));
    }
    let cap = get_int(payload, "cap")?.unwrap_or(DEFAULT_CAP as i64);
    if !(1..=64).contains(&cap) {
        return Err(ServiceError::invalid("cap must lie in 1..=64"));
    }
    let point = crate::oracle::heart_point(&z)?;
    let rows = cross_check(&z, bound, cap as usize)?;
    let mismatches: Vec<&str> = rows.iter().filter(|r| !r.agrees()).map(|r| r.object.as_str()).collect();
    Ok(envelope(
        true,
        json!({"point": point, "bound": bound, "cap": cap, "checked": rows.len(), "mismatches": mismatches, "rows": rows}),
    ))
}

fn symbolic(k: Kind) -> String {
    let idx = |j: i64| if j == 0 { "p".to_string() } else { format!("{{p+{j}}}") };
    match k {
        Kind::A(j) => format!("a^{}", idx(j)),
        Kind::B(j) => format!("b^{}", idx(j)),
        other => other.to_string(),
    }
}

fn charts_cmd() -> Answer {
    let fams: Vec<Value> = FAMILIES
        .iter()
        .map(|f| {
            let objs = ChartId::new(*f, 0).objects();
            let ineqs: Vec<String> = f
                .inequalities()
                .iter()
                .map(|q| {
                    let off = match q.offset {
                        0 => String::new(),
                        o if o > 0 => format!(" + {o}"),
                        o => format!(" - {}", -o),
                    };
                    format!("phi({}){off} < phi({})", symbolic(objs[q.i]), symbolic(objs[q.j]))
                })
                .collect();
            json!({"family": f.wire_name(), "objects": objs.map(symbolic), "inequalities": ineqs})
        })
        .collect();
    Ok(envelope(true, json!({"charts": fams})))
}

/// Runs one command. The payload is ignored by `charts`.
pub fn handle(command: &str, payload: &Value) -> Answer {
    match command {
        "classify" => classify_cmd(payload),
        "locate" => locate_cmd(payload),
        "walk" => walk_cmd(payload),
        "hom" => hom_cmd(payload),
        "verify" => verify_cmd(payload),
        "charts" => charts_cmd(),
        other => Err(ServiceError::invalid(format!("unknown command {other:?}"))),
    }
}

/// Compact serialization used by both front ends.
pub fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v).expect("values serialize")
    } else {
        serde_json::to_string(v).expect("values serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row7() -> Value {
        json!({"chart": {"family": "b_b_Mp", "index": 0}, "charges": ["-1+i", "-2+i", "-4+i"], "sheets": [0, 0, 0]})
    }

    #[test]
    fn classify_row7() {
        let v = handle("classify", &json!({"point": row7()})).unwrap();
        assert_eq!(v["c0_cardinality"], "6");
        assert_eq!(v["exact"], true);
        assert_eq!(v["witnesses"]["N"], 2);
        assert_eq!(v["witnesses"]["u"], 4);
        assert_eq!(v["version"], VERSION);
    }

    #[test]
    fn bare_point_is_accepted() {
        assert_eq!(handle("classify", &row7()).unwrap(), handle("classify", &json!({"point": row7()})).unwrap());
    }

    #[test]
    fn hom_example() {
        let v = handle("hom", &json!({"x": "a:0", "y": "a:1"})).unwrap();
        assert_eq!(v["degree"], 0);
        assert_eq!(v["dim"], 2);
    }

    #[test]
    fn error_statuses() {
        let bad = json!({"chart": {"family": "b_b_Mp", "index": 0}, "charges": ["-1+i", "-1+i", "-4+i"], "sheets": [0, 0, 0]});
        assert_eq!(handle("classify", &bad).unwrap_err().status, 422);
        assert_eq!(handle("classify", &json!({"nope": 1})).unwrap_err().status, 400);
        assert_eq!(handle("frobnicate", &json!({})).unwrap_err().status, 400);
        let e: ServiceError = Error::NoRowFired("x".into()).into();
        assert!(e.is_bug());
    }

    #[test]
    fn approx_input_is_flagged() {
        let payload = json!({
            "chart": {"family": "b_b_Mp", "index": 0},
            "approx": [
                {"radius": "1.41421356", "phase": "0.75"},
                {"radius": "2.23606798", "phase": "0.85241638"},
                {"radius": "4.12310563", "phase": "0.92202087"}
            ],
            "max_den": 100
        });
        let v = handle("classify", &payload).unwrap();
        assert_eq!(v["exact"], false);
        assert_eq!(v["point"]["charges"][0], json!({"re": "-1/1", "im": "1/1"}));
        assert_eq!(v["c0_cardinality"], "6");
    }

    #[test]
    fn charts_lists_all_families() {
        let v = handle("charts", &Value::Null).unwrap();
        assert_eq!(v["charts"].as_array().unwrap().len(), 8);
        assert_eq!(v["charts"][0]["inequalities"][1], "phi(M') + 1 < phi(a^{p+1})");
    }
}
