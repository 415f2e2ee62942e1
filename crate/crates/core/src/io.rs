//! Text formats: measures as CSV or JSON, and JSON with 17 significant digits.

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::measure::Measure;
use crate::scalar::Weight;
use crate::space::{Coord, Ground, SpaceId};

/// Integers below `2^53` print as integers, everything else as `d.dddde±x`
/// with 17 significant digits, which round-trips every `f64`.
pub fn format_number(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 9.007_199_254_740_992e15 {
        format!("{}", v as i64)
    } else if v.is_finite() {
        format!("{v:.16e}")
    } else {
        // JSON has no infinities; callers see a string
        format!("\"{v}\"")
    }
}

/// Serializes a JSON value, printing floats with [`format_number`].
pub fn to_json_string(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, &mut out);
    out
}

fn write_value(v: &Value, out: &mut String) {
    match v {
        Value::Number(n) => match (n.as_i64(), n.as_u64(), n.as_f64()) {
            (Some(i), _, _) => out.push_str(&i.to_string()),
            (_, Some(u), _) => out.push_str(&u.to_string()),
            (_, _, Some(f)) => out.push_str(&format_number(f)),
            _ => out.push_str(&n.to_string()),
        },
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (i, (k, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                write_value(item, out);
            }
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// A JSON number from an `f64`; non-finite values become strings.
pub fn number(v: f64) -> Value {
    serde_json::Number::from_f64(v).map(Value::Number).unwrap_or_else(|| Value::String(v.to_string()))
}

fn coord_value(c: &Coord, ground: &Ground) -> Value {
    match c {
        Coord::Index(i) => Value::from(*i),
        Coord::Node(_) => number(ground.position(c)),
        Coord::Vector(v) => Value::Array(v.iter().map(|x| number(*x)).collect()),
    }
}

fn coord_text(c: &Coord, ground: &Ground) -> String {
    match c {
        Coord::Index(i) => i.to_string(),
        Coord::Node(_) => format_number(ground.position(c)),
        Coord::Vector(v) => v.iter().map(|x| format_number(*x)).collect::<Vec<_>>().join(";"),
    }
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("not a number: `{s}`")))
}

fn parse_coord(s: &str, ground: &Ground) -> Result<Coord> {
    if s.contains(';') {
        return Ok(Coord::Vector(s.split(';').map(parse_f64).collect::<Result<_>>()?));
    }
    ground.coord_at(parse_f64(s)?)
}

pub fn measure_to_json<S: Weight>(mu: &Measure<S>, ground: &Ground) -> Value {
    let entries = mu
        .iter()
        .map(|(c, w)| {
            let mut m = Map::new();
            m.insert("coord".into(), coord_value(c, ground));
            m.insert("weight".into(), number(w.lossy_f64()));
            Value::Object(m)
        })
        .collect();
    let mut m = Map::new();
    m.insert("space_id".into(), Value::String(mu.space().to_string()));
    m.insert("entries".into(), Value::Array(entries));
    Value::Object(m)
}

/// Parses `{space_id, entries: [{coord, weight}]}`; a `space_id` different
/// from `space` is rejected.
pub fn measure_from_json<S: Weight>(v: &Value, space: &SpaceId, ground: &Ground) -> Result<Measure<S>> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("measure must be a JSON object".into()))?;
    if let Some(k) = obj.keys().find(|k| *k != "space_id" && *k != "entries") {
        return Err(Error::Parse(format!("unknown measure field `{k}`")));
    }
    if let Some(id) = obj.get("space_id") {
        let id = id.as_str().ok_or_else(|| Error::Parse("space_id must be a string".into()))?;
        if id != space.as_str() {
            return Err(Error::space_mismatch(space, &id));
        }
    }
    let entries = obj.get("entries").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing `entries` array".into()))?;
    let mut out = Vec::with_capacity(entries.len());
    for e in entries {
        let coord = match e.get("coord") {
            Some(Value::Array(xs)) => Coord::Vector(
                xs.iter()
                    .map(|x| x.as_f64().ok_or_else(|| Error::Parse("vector coordinates must be numbers".into())))
                    .collect::<Result<_>>()?,
            ),
            Some(x) => ground.coord_at(x.as_f64().ok_or_else(|| Error::Parse(format!("bad coordinate {x}")))?)?,
            None => return Err(Error::Parse("entry without `coord`".into())),
        };
        let w = e.get("weight").and_then(Value::as_f64).ok_or_else(|| Error::Parse("entry without numeric `weight`".into()))?;
        out.push((coord, S::from_f64(w).ok_or_else(|| Error::Parse(format!("weight {w} is not representable")))?));
    }
    Ok(Measure::new(space.clone(), out))
}

pub fn measure_to_csv<S: Weight>(mu: &Measure<S>, ground: &Ground) -> String {
    let mut out = String::from("coord,weight\n");
    for (c, w) in mu.iter() {
        out.push_str(&coord_text(c, ground));
        out.push(',');
        out.push_str(&format_number(w.lossy_f64()));
        out.push('\n');
    }
    out
}

pub fn measure_from_csv<S: Weight>(text: &str, space: &SpaceId, ground: &Ground) -> Result<Measure<S>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next().map(str::trim) {
        Some("coord,weight") => {}
        other => return Err(Error::Parse(format!("expected header `coord,weight`, got {other:?}"))),
    }
    let mut out = Vec::new();
    for line in lines {
        let (c, w) = line.rsplit_once(',').ok_or_else(|| Error::Parse(format!("bad CSV row `{line}`")))?;
        let w = parse_f64(w)?;
        out.push((parse_coord(c.trim(), ground)?, S::from_f64(w).ok_or_else(|| Error::Parse(format!("weight {w} is not representable")))?));
    }
    Ok(Measure::new(space.clone(), out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Grid;

    #[test]
    fn numbers() {
        assert_eq!(format_number(3.0), "3");
        assert_eq!(format_number(-3.0), "-3");
        assert_eq!(format_number(0.125), "1.2500000000000000e-1");
        for v in [0.1, 1.0 / 3.0, std::f64::consts::PI * 1e-300, 12345.678901234567] {
            assert_eq!(format_number(v).parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
    }

    #[test]
    fn json_writer() {
        let v = serde_json::json!({"rho": [3.0, 1.0, -1.0, -3.0], "x": 0.5, "name": "a\"b"});
        assert_eq!(to_json_string(&v), r#"{"name":"a\"b","rho":[3,1,-1,-3],"x":5.0000000000000000e-1}"#);
    }

    #[test]
    fn csv_and_json_round_trip_on_a_grid() {
        let g = Ground::Grid(Grid::new(1.0 / 64.0, 16.0).unwrap());
        let sp = SpaceId::new("grid");
        let mu = Measure::new(sp.clone(), [(Coord::Node(3), 0.1), (Coord::Node(1000), 1.0 / 3.0), (Coord::Node(0), -2e-300)]);
        let back: Measure<f64> = measure_from_csv(&measure_to_csv(&mu, &g), &sp, &g).unwrap();
        assert_eq!(back, mu);
        let json = to_json_string(&measure_to_json(&mu, &g));
        let back: Measure<f64> = measure_from_json(&serde_json::from_str(&json).unwrap(), &sp, &g).unwrap();
        assert_eq!(back, mu);
    }

    #[test]
    fn vector_coordinates() {
        let g = Ground::Finite { size: 1 };
        let sp = SpaceId::new("v");
        let mu = Measure::new(sp.clone(), [(Coord::Vector(vec![1.5, -2.0]), 0.25)]);
        let csv = measure_to_csv(&mu, &g);
        assert!(csv.contains("1.5000000000000000e0;-2,"));
        assert_eq!(measure_from_csv::<f64>(&csv, &sp, &g).unwrap(), mu);
    }

    #[test]
    fn parse_errors() {
        let g = Ground::Naturals { sample_cap: 64 };
        let sp = SpaceId::new("n");
        assert!(measure_from_csv::<f64>("x,y\n1,2\n", &sp, &g).is_err());
        assert!(measure_from_csv::<f64>("coord,weight\n1.3,2\n", &sp, &g).is_ok());
        assert!(measure_from_csv::<f64>("coord,weight\n1.7x,2\n", &sp, &g).is_err());
        let wrong = serde_json::json!({"space_id": "other", "entries": []});
        assert!(matches!(measure_from_json::<f64>(&wrong, &sp, &g), Err(Error::SpaceMismatch { .. })));
    }
}
