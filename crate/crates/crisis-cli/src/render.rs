//! Output rendering: machine formats in full shortest-round-trip precision,
//! human tables only behind --pretty.

use crisis_pricing::surface::Surface;
use crisis_pricing::GreekLadder;
use serde_json::{Map, Number, Value};

pub const LADDER_COLUMNS: [&str; 10] = [
    "price",
    "delta",
    "gamma",
    "theta",
    "rho",
    "vega",
    "vanna",
    "volga",
    "vega_bleed",
    "strike_gamma",
];

/// Shortest decimal representation that parses back to the same bits.
pub fn fmt(v: f64) -> String {
    format!("{v}")
}

pub fn ladder_values(l: &GreekLadder) -> [f64; 10] {
    [
        l.price.value(),
        l.delta,
        l.gamma,
        l.theta,
        l.rho,
        l.vega,
        l.vanna,
        l.volga,
        l.vega_bleed,
        l.strike_gamma,
    ]
}

fn number(v: f64) -> Value {
    Number::from_f64(v)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

pub fn ladder_json(l: &GreekLadder) -> Value {
    let mut map = Map::new();
    for (name, v) in LADDER_COLUMNS.iter().zip(ladder_values(l)) {
        map.insert((*name).to_string(), number(v));
    }
    Value::Object(map)
}

pub fn ladder_csv(l: &GreekLadder) -> String {
    let mut out = LADDER_COLUMNS.join(",");
    out.push('\n');
    out.push_str(
        &ladder_values(l)
            .iter()
            .map(|v| fmt(*v))
            .collect::<Vec<_>>()
            .join(","),
    );
    out.push('\n');
    out
}

pub fn ladder_pretty(l: &GreekLadder) -> String {
    LADDER_COLUMNS
        .iter()
        .zip(ladder_values(l))
        .map(|(name, v)| format!("{name:<13}{v:18.6}\n"))
        .collect()
}

pub fn surface_json(surface: &Surface) -> Value {
    let rows = surface
        .rows
        .iter()
        .map(|row| {
            let mut map = Map::new();
            for (axis, coord) in surface.axes.iter().zip(&row.coords) {
                map.insert(axis.var.name().to_string(), number(*coord));
            }
            for (name, v) in LADDER_COLUMNS.iter().zip(ladder_values(&row.ladder)) {
                map.insert((*name).to_string(), number(v));
            }
            Value::Object(map)
        })
        .collect();
    Value::Array(rows)
}

pub fn surface_csv(surface: &Surface) -> String {
    let mut header: Vec<&str> = surface.axes.iter().map(|a| a.var.name()).collect();
    header.extend(LADDER_COLUMNS);
    let mut out = header.join(",");
    out.push('\n');
    for row in &surface.rows {
        let fields: Vec<String> = row
            .coords
            .iter()
            .copied()
            .chain(ladder_values(&row.ladder))
            .map(fmt)
            .collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Path table: one record per time point, one column per path.
pub fn paths_json(times: &[f64], rows: &[Vec<f64>]) -> Value {
    let records = times
        .iter()
        .enumerate()
        .map(|(j, t)| {
            let mut map = Map::new();
            map.insert("time".to_string(), number(*t));
            map.insert(
                "prices".to_string(),
                Value::Array(rows.iter().map(|row| number(row[j])).collect()),
            );
            Value::Object(map)
        })
        .collect();
    Value::Array(records)
}

pub fn paths_csv(times: &[f64], rows: &[Vec<f64>]) -> String {
    let mut header = vec!["time".to_string()];
    header.extend((0..rows.len()).map(|p| format!("path_{p}")));
    let mut out = header.join(",");
    out.push('\n');
    for (j, t) in times.iter().enumerate() {
        let mut fields = vec![fmt(*t)];
        fields.extend(rows.iter().map(|row| fmt(row[j])));
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}
