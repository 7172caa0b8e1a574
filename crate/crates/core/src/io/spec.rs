//! JSON curve specifications.
//!
//! ```json
//! {"kind":"support","constant":40,"cos":{"3":3},"sin":{"2":-1},"rotation":1}
//! {"kind":"support","sin":{"5":1},"half_harmonics":true,"rotation":2.5}
//! {"kind":"parametric","x":{"poly":[0,0,1]},"y":{"poly":[0,0,0,1]},"domain":[-1,1],"closed":false}
//! ```
//!
//! With `half_harmonics` the harmonic keys count halves, so `"5"` is
//! frequency 5/2 and the support function has period 4π. Parametric
//! coordinate maps take `poly` (ascending powers of `t`) and `cos`/`sin`
//! tables keyed by frequency.

use serde_json::{json, Map, Value};

use crate::curve::{CoordMap, Curve, ParamCurve, SupportCurve};
use crate::error::{Error, Result};
use crate::trigpoly::{Period, TrigPoly};

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    pub name: Option<String>,
    pub curve: Curve,
}

pub fn parse_curve_spec(text: &str) -> Result<CurveSpec> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::spec("$", e.to_string()))?;
    let obj = v.as_object().ok_or_else(|| Error::spec("$", "expected an object"))?;
    let kind = obj.get("kind").and_then(Value::as_str).ok_or_else(|| Error::spec("kind", "expected \"support\" or \"parametric\""))?;
    let name = match obj.get("name") {
        None => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(Error::spec("name", "expected a string")),
    };
    let curve = match kind {
        "support" => parse_support(obj)?.into(),
        "parametric" => parse_param(obj)?.into(),
        other => return Err(Error::spec("kind", format!("unknown kind {other:?}"))),
    };
    Ok(CurveSpec { name, curve })
}

fn reject_unknown(obj: &Map<String, Value>, prefix: &str, allowed: &[&str]) -> Result<()> {
    for k in obj.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(Error::spec(join(prefix, k), "unknown key"));
        }
    }
    Ok(())
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn number(v: &Value, path: &str) -> Result<f64> {
    match v.as_f64() {
        Some(x) if x.is_finite() => Ok(x),
        _ => Err(Error::spec(path, "expected a finite number")),
    }
}

fn table(obj: &Map<String, Value>, key: &str, prefix: &str) -> Result<Vec<(String, f64)>> {
    let path = join(prefix, key);
    match obj.get(key) {
        None => Ok(Vec::new()),
        Some(Value::Object(m)) => m.iter().map(|(k, v)| Ok((k.clone(), number(v, &format!("{path}.{k}"))?))).collect(),
        Some(_) => Err(Error::spec(path, "expected an object of coefficients")),
    }
}

fn parse_support(obj: &Map<String, Value>) -> Result<SupportCurve> {
    reject_unknown(obj, "", &["kind", "name", "constant", "cos", "sin", "rotation", "half_harmonics"])?;
    let constant = obj.get("constant").map(|v| number(v, "constant")).transpose()?.unwrap_or(0.0);
    let half = match obj.get("half_harmonics") {
        None => false,
        Some(Value::Bool(b)) => *b,
        Some(_) => return Err(Error::spec("half_harmonics", "expected a boolean")),
    };
    let rotation = obj.get("rotation").map(|v| number(v, "rotation")).transpose()?.unwrap_or(1.0);
    let twice = 2.0 * rotation;
    if twice.fract() != 0.0 {
        return Err(Error::spec("rotation", "expected an integer or half-integer"));
    }
    let integer_rotation = rotation.fract() == 0.0;
    if integer_rotation == half {
        let msg = if half {
            "half_harmonics requires a half-integer rotation"
        } else {
            "a half-integer rotation requires half_harmonics"
        };
        return Err(Error::spec("half_harmonics", msg));
    }
    let harmonics = |key: &str| -> Result<Vec<(u32, f64)>> {
        table(obj, key, "")?
            .into_iter()
            .map(|(k, v)| match k.parse::<u32>() {
                Ok(n) if n > 0 => Ok((n, v)),
                _ => Err(Error::spec(format!("{key}.{k}"), "harmonic keys are positive integers")),
            })
            .collect()
    };
    let period = if half { Period::FourPi } else { Period::TwoPi };
    let p = TrigPoly::new(constant, &harmonics("cos")?, &harmonics("sin")?, period);
    Ok(SupportCurve::new(p, rotation))
}

fn parse_coord(v: &Value, path: &str) -> Result<CoordMap> {
    let obj = v.as_object().ok_or_else(|| Error::spec(path, "expected an object"))?;
    reject_unknown(obj, path, &["poly", "cos", "sin"])?;
    let poly = match obj.get("poly") {
        None => Vec::new(),
        Some(Value::Array(a)) => a.iter().enumerate().map(|(i, x)| number(x, &format!("{path}.poly[{i}]"))).collect::<Result<_>>()?,
        Some(_) => return Err(Error::spec(format!("{path}.poly"), "expected an array")),
    };
    let freqs = |key: &str| -> Result<Vec<(f64, f64)>> {
        table(obj, key, path)?
            .into_iter()
            .map(|(k, c)| match k.parse::<f64>() {
                Ok(w) if w.is_finite() && w > 0.0 => Ok((w, c)),
                _ => Err(Error::spec(format!("{path}.{key}.{k}"), "frequency keys are positive numbers")),
            })
            .collect()
    };
    let mut cos = freqs("cos")?;
    let mut sin = freqs("sin")?;
    cos.sort_by(|a, b| a.0.total_cmp(&b.0));
    sin.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(CoordMap { poly, cos, sin })
}

fn parse_param(obj: &Map<String, Value>) -> Result<ParamCurve> {
    reject_unknown(obj, "", &["kind", "name", "x", "y", "domain", "closed"])?;
    let x = parse_coord(obj.get("x").ok_or_else(|| Error::spec("x", "missing"))?, "x")?;
    let y = parse_coord(obj.get("y").ok_or_else(|| Error::spec("y", "missing"))?, "y")?;
    let domain = match obj.get("domain") {
        Some(Value::Array(a)) if a.len() == 2 => (number(&a[0], "domain[0]")?, number(&a[1], "domain[1]")?),
        _ => return Err(Error::spec("domain", "expected [t0, t1]")),
    };
    let closed = match obj.get("closed") {
        None => false,
        Some(Value::Bool(b)) => *b,
        Some(_) => return Err(Error::spec("closed", "expected a boolean")),
    };
    ParamCurve::new(x, y, domain, closed)
}

fn coef_table(entries: impl Iterator<Item = (String, f64)>) -> Value {
    Value::Object(entries.filter(|(_, v)| *v != 0.0).map(|(k, v)| (k, json!(v))).collect())
}

fn coord_json(m: &CoordMap) -> Value {
    let freq = |w: f64| format!("{w}");
    json!({
        "poly": m.poly,
        "cos": coef_table(m.cos.iter().map(|&(w, c)| (freq(w), c))),
        "sin": coef_table(m.sin.iter().map(|&(w, c)| (freq(w), c))),
    })
}

/// Serialize a curve back to the specification format.
pub fn curve_spec_json(spec: &CurveSpec) -> Value {
    let mut v = match &spec.curve {
        Curve::Support(c) => {
            let p = c.support();
            let mut obj = json!({
                "kind": "support",
                "constant": p.constant(),
                "cos": coef_table(p.harmonics().map(|(n, _, a, _)| (n.to_string(), a))),
                "sin": coef_table(p.harmonics().map(|(n, _, _, b)| (n.to_string(), b))),
                "rotation": c.rotation(),
            });
            if p.period() == Period::FourPi {
                obj["half_harmonics"] = json!(true);
            }
            obj
        }
        Curve::Param(c) => json!({
            "kind": "parametric",
            "x": coord_json(c.x_map()),
            "y": coord_json(c.y_map()),
            "domain": [c.domain().0, c.domain().1],
            "closed": c.is_closed(),
        }),
    };
    if let Some(n) = &spec.name {
        v["name"] = json!(n);
    }
    v
}
