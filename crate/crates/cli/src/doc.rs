//! On-disk documents for fans and divisors.

use moritoric::{validate_fan, Cone, Fan, LatticeVector, Rational, ToricDivisor, Violation};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::Failure;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDocument {
    pub cones: Vec<Vec<usize>>,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub rays: Vec<Vec<i64>>,
}

impl FanDocument {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        serde_json::from_str(text).map_err(|e| Failure::new("invalid_document", e.to_string()))
    }

    pub fn from_fan(fan: &Fan, name: Option<String>) -> Result<Self, Failure> {
        let rays = fan
            .rays()
            .iter()
            .map(|r| {
                r.to_i64()
                    .ok_or_else(|| Failure::new("overflow", format!("ray {r} exceeds 64 bits")))
            })
            .collect::<Result<_, _>>()?;
        Ok(FanDocument {
            cones: fan.cones().iter().map(|c| c.rays().to_vec()).collect(),
            dim: fan.dim(),
            name,
            rays,
        })
    }

    fn parts(&self) -> (Vec<LatticeVector>, Vec<Cone>) {
        (
            self.rays.iter().map(|r| LatticeVector::from_i64(r)).collect(),
            self.cones.iter().map(|c| Cone::new(c.clone())).collect(),
        )
    }

    pub fn violations(&self) -> Vec<Violation> {
        let (rays, cones) = self.parts();
        validate_fan(self.dim, &rays, &cones)
    }

    pub fn to_fan(&self) -> Result<Fan, Failure> {
        let (rays, cones) = self.parts();
        Fan::new(self.dim, rays, cones).map_err(Failure::from)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain data serializes")
    }
}

/// `{"coeffs": [...]}` with entries as integers or `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorDocument {
    pub coeffs: Vec<Value>,
}

impl DivisorDocument {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        serde_json::from_str(text).map_err(|e| Failure::new("invalid_document", e.to_string()))
    }

    pub fn from_divisor(d: &ToricDivisor) -> Self {
        DivisorDocument {
            coeffs: d.coeffs().iter().map(rational).collect(),
        }
    }

    pub fn to_divisor(&self) -> Result<ToricDivisor, Failure> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, v)| {
                parse_rational(v).ok_or_else(|| {
                    Failure::new("invalid_document", format!("coefficient {i} is not a rational: {v}"))
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(ToricDivisor::new)
    }
}

fn parse_rational(v: &Value) -> Option<Rational> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string().parse().ok(),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}

pub fn rational(q: &Rational) -> Value {
    Value::String(q.to_string())
}

pub fn rationals(qs: &[Rational]) -> Value {
    Value::Array(qs.iter().map(rational).collect())
}

pub fn integer(n: &moritoric::Integer) -> Value {
    use num_traits::ToPrimitive;
    match n.to_i64() {
        Some(k) => Value::from(k),
        None => Value::String(n.to_string()),
    }
}

/// Canonical bytes: compact, keys sorted, one trailing newline.
pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values serialize");
    s.push('\n');
    s
}
