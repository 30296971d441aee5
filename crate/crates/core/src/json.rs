//! Canonical JSON serialization.  Output is byte-deterministic: terms
//! are emitted in the canonical map order and keys inside each object
//! are written in a fixed order, so golden comparisons are exact.

use std::collections::BTreeMap;
use std::str::FromStr;

use num::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::Value;
use thiserror::Error;

use crate::element::NcElement;
use crate::generator::{Gen, Term};
use crate::poly::BVar;
use crate::wakimoto::ChiComponent;
use crate::walgebra::WPolynomial;
use crate::Q;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("malformed value at {path}: {msg}")]
    Shape { path: String, msg: String },
}

fn shape(path: &str, msg: impl Into<String>) -> JsonError {
    JsonError::Shape { path: path.to_string(), msg: msg.into() }
}

/// Canonical rational string: "p" for integers, "p/q" with q > 0 and
/// gcd(p, q) = 1 otherwise.
pub fn q_to_string(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn q_from_string(s: &str, path: &str) -> Result<Q, JsonError> {
    let (num_s, den_s) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num_s)
        .map_err(|_| shape(path, format!("bad numerator {num_s:?}")))?;
    let den = BigInt::from_str(den_s)
        .map_err(|_| shape(path, format!("bad denominator {den_s:?}")))?;
    if den.is_zero() {
        return Err(shape(path, "zero denominator"));
    }
    if den.is_negative() {
        return Err(shape(path, "denominator must be positive"));
    }
    Ok(Q::new(num, den))
}

fn gen_to_json(g: &Gen) -> String {
    match g {
        Gen::Tau => "\"tau\"".to_string(),
        Gen::E { i, j, r } => format!("{{\"e\":[{},{},{}]}}", i, j, r),
    }
}

/// `{"terms":[{"coeff":"p/q","kdeg":m,"word":[{"e":[i,j,r]}|"tau",...]}]}`
pub fn serialize_element(x: &NcElement) -> String {
    let mut out = String::from("{\"terms\":[");
    let mut first = true;
    for (term, coeff) in &x.terms {
        if !first {
            out.push(',');
        }
        first = false;
        out.push_str(&format!(
            "{{\"coeff\":\"{}\",\"kdeg\":{},\"word\":[",
            q_to_string(coeff),
            term.kdeg
        ));
        let word: Vec<String> = term.word.iter().map(gen_to_json).collect();
        out.push_str(&word.join(","));
        out.push_str("]}");
    }
    out.push_str("]}");
    out
}

fn as_i64(v: &Value, path: &str) -> Result<i64, JsonError> {
    v.as_i64().ok_or_else(|| shape(path, "expected an integer"))
}

fn parse_gen(v: &Value, path: &str) -> Result<Gen, JsonError> {
    match v {
        Value::String(s) if s == "tau" => Ok(Gen::Tau),
        Value::Object(o) => {
            let arr = o
                .get("e")
                .and_then(|x| x.as_array())
                .ok_or_else(|| shape(path, "expected {\"e\":[i,j,r]}"))?;
            if arr.len() != 3 || o.len() != 1 {
                return Err(shape(path, "expected {\"e\":[i,j,r]}"));
            }
            let i = as_i64(&arr[0], path)?;
            let j = as_i64(&arr[1], path)?;
            let r = as_i64(&arr[2], path)?;
            if i < 1 || i > 255 || j < 1 || j > 255 {
                return Err(shape(path, "generator indices out of range"));
            }
            Ok(Gen::E { i: i as u8, j: j as u8, r: r as i32 })
        }
        _ => Err(shape(path, "expected \"tau\" or {\"e\":[i,j,r]}")),
    }
}

/// Parse an element in the canonical format.  The rank is contextual
/// (it is not part of the wire format); pass 0 for an unbound element.
pub fn parse_element(s: &str, rank: u32) -> Result<NcElement, JsonError> {
    let v: Value = serde_json::from_str(s)?;
    let terms = v
        .get("terms")
        .and_then(|t| t.as_array())
        .ok_or_else(|| shape("$", "expected {\"terms\":[...]}"))?;
    let mut out = NcElement::zero_ranked(rank);
    for (idx, t) in terms.iter().enumerate() {
        let path = format!("$.terms[{idx}]");
        let obj = t.as_object().ok_or_else(|| shape(&path, "expected an object"))?;
        let coeff_s = obj
            .get("coeff")
            .and_then(|c| c.as_str())
            .ok_or_else(|| shape(&path, "missing string \"coeff\""))?;
        let coeff = q_from_string(coeff_s, &path)?;
        let kdeg = obj
            .get("kdeg")
            .and_then(|k| k.as_u64())
            .ok_or_else(|| shape(&path, "missing nonnegative \"kdeg\""))?;
        let word_v = obj
            .get("word")
            .and_then(|w| w.as_array())
            .ok_or_else(|| shape(&path, "missing array \"word\""))?;
        let mut word = Vec::with_capacity(word_v.len());
        for (gi, g) in word_v.iter().enumerate() {
            word.push(parse_gen(g, &format!("{path}.word[{gi}]"))?);
        }
        out.add_term(Term { kdeg: kdeg as u32, word }, coeff);
    }
    Ok(out)
}

/// `{"terms":[{"coeff":"p/q","vars":[["b",i,r],...]}]}`
pub fn serialize_wpoly(p: &WPolynomial) -> String {
    let mut out = String::from("{\"terms\":[");
    let mut first = true;
    for (vars, coeff) in &p.terms {
        if !first {
            out.push(',');
        }
        first = false;
        out.push_str(&format!("{{\"coeff\":\"{}\",\"vars\":[", q_to_string(coeff)));
        let vs: Vec<String> = vars
            .iter()
            .map(|v| format!("[\"b\",{},{}]", v.i, v.r))
            .collect();
        out.push_str(&vs.join(","));
        out.push_str("]}");
    }
    out.push_str("]}");
    out
}

pub fn parse_wpoly(s: &str) -> Result<WPolynomial, JsonError> {
    let v: Value = serde_json::from_str(s)?;
    let terms = v
        .get("terms")
        .and_then(|t| t.as_array())
        .ok_or_else(|| shape("$", "expected {\"terms\":[...]}"))?;
    let mut out = WPolynomial::zero();
    for (idx, t) in terms.iter().enumerate() {
        let path = format!("$.terms[{idx}]");
        let obj = t.as_object().ok_or_else(|| shape(&path, "expected an object"))?;
        let coeff_s = obj
            .get("coeff")
            .and_then(|c| c.as_str())
            .ok_or_else(|| shape(&path, "missing string \"coeff\""))?;
        let coeff = q_from_string(coeff_s, &path)?;
        let vars_v = obj
            .get("vars")
            .and_then(|w| w.as_array())
            .ok_or_else(|| shape(&path, "missing array \"vars\""))?;
        let mut vars = Vec::with_capacity(vars_v.len());
        for (vi, vv) in vars_v.iter().enumerate() {
            let vpath = format!("{path}.vars[{vi}]");
            let arr = vv.as_array().ok_or_else(|| shape(&vpath, "expected [\"b\",i,r]"))?;
            if arr.len() != 3 || arr[0].as_str() != Some("b") {
                return Err(shape(&vpath, "expected [\"b\",i,r]"));
            }
            let i = as_i64(&arr[1], &vpath)?;
            let r = as_i64(&arr[2], &vpath)?;
            if i < 1 || i > 255 {
                return Err(shape(&vpath, "variable index out of range"));
            }
            vars.push(BVar { i: i as u8, r: r as i32 });
        }
        vars.sort();
        out.add_mono(vars, coeff);
    }
    Ok(out)
}

/// Parse a character file: JSON array of n series, each
/// `{"coeffs":{"r":"p/q",...},"min_r":int,"max_r":int}`.
pub fn parse_chi_series(s: &str) -> Result<Vec<ChiComponent>, JsonError> {
    let v: Value = serde_json::from_str(s)?;
    let arr = v
        .as_array()
        .ok_or_else(|| shape("$", "expected an array of series"))?;
    let mut out = Vec::with_capacity(arr.len());
    for (idx, sv) in arr.iter().enumerate() {
        let path = format!("$[{idx}]");
        let obj = sv.as_object().ok_or_else(|| shape(&path, "expected an object"))?;
        let min_r = obj
            .get("min_r")
            .and_then(|x| x.as_i64())
            .ok_or_else(|| shape(&path, "missing integer \"min_r\""))?;
        let max_r = obj
            .get("max_r")
            .and_then(|x| x.as_i64())
            .ok_or_else(|| shape(&path, "missing integer \"max_r\""))?;
        if min_r > max_r {
            return Err(shape(&path, "min_r exceeds max_r"));
        }
        let coeffs_v = obj
            .get("coeffs")
            .and_then(|x| x.as_object())
            .ok_or_else(|| shape(&path, "missing object \"coeffs\""))?;
        let mut coeffs = BTreeMap::new();
        for (key, val) in coeffs_v {
            let cpath = format!("{path}.coeffs[{key:?}]");
            let r = i64::from_str(key).map_err(|_| shape(&cpath, "key must be an integer mode"))?;
            if r < min_r || r > max_r {
                return Err(shape(&cpath, "mode outside [min_r, max_r]"));
            }
            let cs = val.as_str().ok_or_else(|| shape(&cpath, "expected a rational string"))?;
            let c = q_from_string(cs, &cpath)?;
            if !c.is_zero() {
                coeffs.insert(r, c);
            }
        }
        out.push(ChiComponent { min_r, max_r, coeffs });
    }
    Ok(out)
}

/// Serialize a batch of elements as a JSON array (matrix rows, families).
pub fn serialize_elements(xs: &[NcElement]) -> String {
    let parts: Vec<String> = xs.iter().map(serialize_element).collect();
    format!("[{}]", parts.join(","))
}

pub fn serialize_wpolys(xs: &[WPolynomial]) -> String {
    let parts: Vec<String> = xs.iter().map(serialize_wpoly).collect();
    format!("[{}]", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qi};

    #[test]
    fn zero_element_is_empty_terms() {
        assert_eq!(serialize_element(&NcElement::zero_ranked(2)), "{\"terms\":[]}");
    }

    #[test]
    fn element_round_trip() {
        let mut x = NcElement::zero_ranked(2);
        x.add_term(
            Term { kdeg: 1, word: vec![Gen::e(1, 2, -1), Gen::Tau] },
            q(-3, 2),
        );
        x.add_term(Term { kdeg: 0, word: vec![] }, qi(5));
        let s = serialize_element(&x);
        assert_eq!(
            s,
            "{\"terms\":[{\"coeff\":\"5\",\"kdeg\":0,\"word\":[]},\
             {\"coeff\":\"-3/2\",\"kdeg\":1,\"word\":[{\"e\":[1,2,-1]},\"tau\"]}]}"
        );
        assert_eq!(parse_element(&s, 2).unwrap(), x);
    }

    #[test]
    fn zero_denominator_rejected() {
        let s = "{\"terms\":[{\"coeff\":\"1/0\",\"kdeg\":0,\"word\":[]}]}";
        assert!(parse_element(s, 1).is_err());
    }

    #[test]
    fn syntax_error_reported() {
        assert!(matches!(parse_element("{\"terms\":[", 1), Err(JsonError::Syntax(_))));
    }

    #[test]
    fn wpoly_round_trip() {
        let mut p = WPolynomial::zero();
        p.add_mono(vec![BVar { i: 1, r: -1 }, BVar { i: 2, r: -1 }], qi(1));
        p.add_mono(vec![BVar { i: 1, r: -2 }], q(1, 3));
        let s = serialize_wpoly(&p);
        assert_eq!(parse_wpoly(&s).unwrap(), p);
    }

    #[test]
    fn chi_series_parse() {
        let s = r#"[{"coeffs":{"0":"2","-1":"1/2"},"min_r":-1,"max_r":0}]"#;
        let chi = parse_chi_series(s).unwrap();
        assert_eq!(chi.len(), 1);
        assert_eq!(chi[0].min_r, -1);
        assert_eq!(chi[0].coeffs.get(&0), Some(&qi(2)));
        assert_eq!(chi[0].coeffs.get(&-1), Some(&q(1, 2)));
        // mode outside the declared window is rejected
        let bad = r#"[{"coeffs":{"5":"1"},"min_r":-1,"max_r":0}]"#;
        assert!(parse_chi_series(bad).is_err());
    }
}
