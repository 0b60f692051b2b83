//! Descriptor names and the JSON encoding of scalars.

use num_rational::BigRational;
use serde_json::Value as Json;

use super::finite::parse_poly;
use super::numfield::{parse_rational, rational_to_string};
use super::{AlgebraError, Field, FieldKind, NfVec, Scalar, Value};

pub(crate) fn parse_descriptor(name: &str) -> Result<Field, AlgebraError> {
    let unknown = || AlgebraError::UnknownDescriptor(name.to_string());
    let name = name.trim();
    if name == "Q" {
        return Ok(Field::rationals());
    }
    if name == "Lam36" {
        return Ok(Field::lam36());
    }
    if let Some(p) = name.strip_prefix("Fp:") {
        return Field::prime(p.parse().map_err(|_| unknown())?);
    }
    if let Some(rest) = name.strip_prefix("Fq:") {
        let (q, poly) = match rest.split_once(':') {
            Some((q, poly)) => (q, Some(poly)),
            None => (rest, None),
        };
        let q: u64 = q.parse().map_err(|_| unknown())?;
        let modulus = match poly {
            Some(poly) => {
                let (p, _) = super::finite::prime_power(q).ok_or_else(unknown)?;
                Some(parse_poly(poly, p).ok_or_else(unknown)?)
            }
            None => None,
        };
        return Field::finite(q, modulus);
    }
    if let Some(n) = name.strip_prefix("Q(sqrt").and_then(|s| s.strip_suffix(')')) {
        return Field::quadratic(n.parse().map_err(|_| unknown())?);
    }
    if let Some(m) = name.strip_prefix("Q(zeta:").and_then(|s| s.strip_suffix(')')) {
        return Field::cyclotomic(m.parse().map_err(|_| unknown())?);
    }
    if let Some(m) = name.strip_prefix("HZ:") {
        return Field::cyclotomic_quaternions(m.parse().map_err(|_| unknown())?);
    }
    if let Some(base) = name.strip_prefix("H:") {
        return Field::quaternions(parse_descriptor(base)?);
    }
    Err(unknown())
}

fn encode_number(c: &NfVec) -> Json {
    if c.len() == 1 {
        Json::String(rational_to_string(&c[0]))
    } else {
        Json::Array(c.iter().map(|r| Json::String(rational_to_string(r))).collect())
    }
}

/// JSON encoding: residues (prime fields), digit arrays (prime-power fields),
/// `"p/q"` strings (rationals), arrays of those (number fields), and arrays
/// of base-field encodings for quaternion and cyclic algebras.
pub fn encode_scalar(s: &Scalar) -> Json {
    match s.value() {
        Value::Finite(x) => {
            let f = s.field().finite_field().expect("finite payload");
            if f.is_prime_field() {
                Json::from(*x)
            } else {
                Json::Array(f.digits(*x).into_iter().map(Json::from).collect())
            }
        }
        Value::Number(c) => encode_number(c),
        Value::Quaternion(p) => Json::Array(p.iter().map(encode_number).collect()),
        Value::Pair(p) => Json::Array(p.iter().map(encode_number).collect()),
        Value::Cyclic(p) => Json::Array(p.iter().map(encode_number).collect()),
    }
}

fn decode_number(field: &Field, v: &Json) -> Result<NfVec, AlgebraError> {
    let err = || AlgebraError::Decode(format!("{v} is not an element of {field}"));
    let FieldKind::Number(nf) = field.kind() else {
        return Err(err());
    };
    let parts: Vec<BigRational> = match v {
        Json::String(s) if nf.degree() == 1 => vec![parse_rational(s).ok_or_else(err)?],
        Json::Number(n) if nf.degree() == 1 => {
            vec![parse_rational(&n.to_string()).ok_or_else(err)?]
        }
        Json::Array(items) if items.len() == nf.degree() => items
            .iter()
            .map(|it| match it {
                Json::String(s) => parse_rational(s).ok_or_else(err),
                Json::Number(n) => parse_rational(&n.to_string()).ok_or_else(err),
                _ => Err(err()),
            })
            .collect::<Result<_, _>>()?,
        _ => return Err(err()),
    };
    Ok(parts)
}

pub fn decode_scalar(field: &Field, v: &Json) -> Result<Scalar, AlgebraError> {
    let err = || AlgebraError::Decode(format!("{v} is not an element of {field}"));
    let value = match field.kind() {
        FieldKind::Finite(f) => {
            let idx = if f.is_prime_field() {
                v.as_u64().ok_or_else(err)?
            } else {
                let digits: Vec<u64> = v
                    .as_array()
                    .filter(|a| a.len() == f.degree())
                    .ok_or_else(err)?
                    .iter()
                    .map(|d| d.as_u64().ok_or_else(err))
                    .collect::<Result<_, _>>()?;
                if digits.iter().any(|&d| d >= f.characteristic()) {
                    return Err(err());
                }
                f.from_digits(&digits)
            };
            if idx >= f.order() {
                return Err(err());
            }
            Value::Finite(idx)
        }
        FieldKind::Number(_) => Value::Number(decode_number(field, v)?),
        FieldKind::Quaternion(base) => {
            let a = v.as_array().filter(|a| a.len() == 4).ok_or_else(err)?;
            let parts = [
                decode_number(base, &a[0])?,
                decode_number(base, &a[1])?,
                decode_number(base, &a[2])?,
                decode_number(base, &a[3])?,
            ];
            Value::Quaternion(Box::new(parts))
        }
        FieldKind::CyclotomicQuaternion(base) => {
            let a = v.as_array().filter(|a| a.len() == 2).ok_or_else(err)?;
            Value::Pair(Box::new([decode_number(base, &a[0])?, decode_number(base, &a[1])?]))
        }
        FieldKind::Cyclic(base) => {
            let a = v.as_array().filter(|a| a.len() == 3).ok_or_else(err)?;
            Value::Cyclic(Box::new([
                decode_number(base, &a[0])?,
                decode_number(base, &a[1])?,
                decode_number(base, &a[2])?,
            ]))
        }
    };
    Ok(field.scalar(value))
}
