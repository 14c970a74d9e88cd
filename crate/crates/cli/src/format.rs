//! JSON encodings of fields, polynomials and region specs.
//!
//! Rationals travel as strings (`"3/2"`, `"-4"`), Gaussian rationals as
//! `{"re": "...", "im": "..."}` (a bare string or integer is read as a real),
//! floating-point values as numbers with 17 significant digits, and complex
//! floats as `[re, im]` pairs. Coordinates are numbered from 0.

use anyhow::{anyhow, bail, Context, Result};
use forelli_core::algebra::{
    format_rational, parse_rational, GaussianRational, MixedPolynomial, Monomial, MultiIndex,
};
use forelli_core::algebra::rational::integer;
use forelli_core::field::NormalFormField;
use forelli_core::region::{ComplexPoly, RegionSpec};
use num_complex::Complex64;
use serde_json::{json, Number, Value};

/// A float as a JSON number with 17 significant digits; non-finite values
/// become the strings `"inf"`, `"-inf"` and `"nan"`.
pub fn real(x: f64) -> Value {
    if !x.is_finite() {
        let s = if x.is_nan() { "nan" } else if x > 0.0 { "inf" } else { "-inf" };
        return Value::String(s.into());
    }
    let text = format!("{x:.16e}");
    Value::Number(text.parse::<Number>().expect("formatted float is a JSON number"))
}

pub fn complex(z: Complex64) -> Value {
    json!([real(z.re), real(z.im)])
}

pub fn complex_list(zs: &[Complex64]) -> Value {
    Value::Array(zs.iter().map(|z| complex(*z)).collect())
}

pub fn gaussian(g: &GaussianRational) -> Value {
    json!({"re": format_rational(&g.re), "im": format_rational(&g.im)})
}

pub fn multi_index(m: &MultiIndex) -> Value {
    json!(m.exponents())
}

pub fn poly(p: &MixedPolynomial) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| {
                json!({
                    "coeff": gaussian(c),
                    "holo": multi_index(&m.holo),
                    "anti": multi_index(&m.anti),
                })
            })
            .collect(),
    )
}

pub fn field(f: &NormalFormField) -> Value {
    json!({
        "lambda": f.lambda().iter().map(gaussian).collect::<Vec<_>>(),
        "g": f.g().iter().map(poly).collect::<Vec<_>>(),
    })
}

pub fn region_spec(s: &RegionSpec) -> Value {
    json!({
        "p": s.p().iter().map(|p| complex_list(p.coeffs())).collect::<Vec<_>>(),
        "lambda": s.lambda().iter().map(|l| real(*l)).collect::<Vec<_>>(),
    })
}

fn rational_text(v: &Value, path: &str) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
        _ => bail!("{path}: expected a rational string such as \"3/2\""),
    }
}

pub fn parse_gaussian(v: &Value, path: &str) -> Result<GaussianRational> {
    let part = |v: &Value, p: String| -> Result<_> {
        parse_rational(&rational_text(v, &p)?).map_err(|e| anyhow!("{p}: {e}"))
    };
    match v {
        Value::Object(map) => {
            let re = map.get("re").map_or(Ok(integer(0)), |v| part(v, format!("{path}.re")))?;
            let im = map.get("im").map_or(Ok(integer(0)), |v| part(v, format!("{path}.im")))?;
            Ok(GaussianRational::new(re, im))
        }
        other => Ok(GaussianRational::real(part(other, path.into())?)),
    }
}

fn parse_index(v: Option<&Value>, n: usize, path: &str) -> Result<MultiIndex> {
    let Some(v) = v else { return Ok(MultiIndex::zeros(n)) };
    let items = v.as_array().ok_or_else(|| anyhow!("{path}: expected an array of exponents"))?;
    if items.len() != n {
        bail!("{path}: expected {n} exponents, found {}", items.len());
    }
    let exps = items
        .iter()
        .map(|e| {
            e.as_u64()
                .and_then(|e| u32::try_from(e).ok())
                .ok_or_else(|| anyhow!("{path}: exponents must be non-negative integers"))
        })
        .collect::<Result<Vec<u32>>>()?;
    Ok(MultiIndex::new(exps))
}

/// Reads a term list `[{"coeff": .., "holo": [..], "anti": [..]}, ...]`; a
/// missing `holo` or `anti` means all zeros.
pub fn parse_poly(v: &Value, n: usize, path: &str) -> Result<MixedPolynomial> {
    let terms = v.as_array().ok_or_else(|| anyhow!("{path}: expected an array of terms"))?;
    let mut out = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let obj = t.as_object().ok_or_else(|| anyhow!("{p}: expected an object"))?;
        let coeff = obj.get("coeff").ok_or_else(|| anyhow!("{p}: missing coeff"))?;
        let coeff = parse_gaussian(coeff, &format!("{p}.coeff"))?;
        let holo = parse_index(obj.get("holo"), n, &format!("{p}.holo"))?;
        let anti = parse_index(obj.get("anti"), n, &format!("{p}.anti"))?;
        out.push((Monomial::new(holo, anti), coeff));
    }
    MixedPolynomial::from_terms(n, out).map_err(|e| anyhow!("{path}: {e}"))
}

/// Reads `{"lambda": [..], "g": [[terms], ...]}` into eigenvalues and
/// polynomials without checking them as a field; `g` may be omitted for a
/// diagonal field.
pub fn parse_field_parts(v: &Value) -> Result<(Vec<GaussianRational>, Vec<MixedPolynomial>)> {
    let lambda = v
        .get("lambda")
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("field: missing array \"lambda\""))?;
    let lambda = lambda
        .iter()
        .enumerate()
        .map(|(j, l)| parse_gaussian(l, &format!("lambda[{j}]")))
        .collect::<Result<Vec<_>>>()?;
    let n = lambda.len();
    let g = match v.get("g") {
        None => vec![MixedPolynomial::zero(n); n],
        Some(g) => g
            .as_array()
            .ok_or_else(|| anyhow!("field: \"g\" must be an array"))?
            .iter()
            .enumerate()
            .map(|(j, p)| parse_poly(p, n, &format!("g[{j}]")))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok((lambda, g))
}

pub fn parse_field(v: &Value) -> Result<NormalFormField> {
    let (lambda, g) = parse_field_parts(v)?;
    NormalFormField::new(lambda, g).map_err(|e| anyhow!("field: {e}"))
}

pub fn parse_real(v: &Value, path: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| anyhow!("{path}: expected a number"))
}

/// A complex float from `[re, im]` or a plain number.
pub fn parse_complex(v: &Value, path: &str) -> Result<Complex64> {
    if let Some(x) = v.as_f64() {
        return Ok(Complex64::new(x, 0.0));
    }
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => Ok(Complex64::new(parse_real(re, path)?, parse_real(im, path)?)),
        _ => bail!("{path}: expected [re, im] or a number"),
    }
}

/// Reads `{"p": [[c0, c1, ...], ...], "lambda": [..]}` with coefficients from
/// the constant term up, without checking the spec's invariants.
pub fn parse_region_parts(v: &Value) -> Result<(Vec<ComplexPoly>, Vec<f64>)> {
    let p = v
        .get("p")
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("region spec: missing array \"p\""))?;
    let p = p
        .iter()
        .enumerate()
        .map(|(j, coeffs)| {
            let coeffs = coeffs
                .as_array()
                .ok_or_else(|| anyhow!("p[{j}]: expected an array of coefficients"))?;
            let cs = coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| parse_complex(c, &format!("p[{j}][{k}]")))
                .collect::<Result<Vec<_>>>()?;
            Ok(ComplexPoly::new(cs))
        })
        .collect::<Result<Vec<_>>>()?;
    let lambda = v
        .get("lambda")
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("region spec: missing array \"lambda\""))?
        .iter()
        .enumerate()
        .map(|(j, l)| parse_real(l, &format!("lambda[{j}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok((p, lambda))
}

pub fn parse_region_spec(v: &Value) -> Result<RegionSpec> {
    let (p, lambda) = parse_region_parts(v)?;
    RegionSpec::new(p, lambda).map_err(|e| anyhow!("{e}"))
}

/// Parses JSON text, naming `what` in the error.
pub fn parse_json(text: &str, what: &str) -> Result<Value> {
    serde_json::from_str(text).with_context(|| format!("{what} is not valid JSON"))
}
