use std::fmt;

use serde::{Serialize, Serializer};

use crate::syntax::BinaryOp;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Number(f64),
    Text(String),
    Array(Vec<Value>),
    Bool(bool),
    Null,
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Number(n) => s.serialize_f64(*n),
            Value::Text(t) => s.serialize_str(t),
            Value::Array(items) => items.serialize(s),
            Value::Bool(b) => s.serialize_bool(*b),
            Value::Null => s.serialize_unit(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Number(n) => write!(f, "{n}"),
            Value::Text(t) => f.write_str(t),
            Value::Array(items) => {
                f.write_str("[")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("]")
            }
            Value::Bool(b) => write!(f, "{b}"),
            Value::Null => f.write_str("null"),
        }
    }
}

/// Why an operation on values failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValueError {
    TypeMismatch(String),
    DivisionByZero,
    LengthMismatch(usize, usize),
}

impl ValueError {
    pub fn code(&self) -> &'static str {
        match self {
            ValueError::TypeMismatch(_) => "type-mismatch",
            ValueError::DivisionByZero => "division-by-zero",
            ValueError::LengthMismatch(..) => "length-mismatch",
        }
    }
}

impl fmt::Display for ValueError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueError::TypeMismatch(m) => f.write_str(m),
            ValueError::DivisionByZero => f.write_str("division by zero"),
            ValueError::LengthMismatch(a, b) => write!(f, "vector lengths differ ({a} vs {b})"),
        }
    }
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Number(_) => "number",
            Value::Text(_) => "text",
            Value::Array(_) => "array",
            Value::Bool(_) => "bool",
            Value::Null => "null",
        }
    }

    pub fn vector(v: [f64; 3]) -> Value {
        Value::Array(v.iter().map(|x| Value::Number(*x)).collect())
    }

    pub fn as_numbers(&self) -> Option<Vec<f64>> {
        match self {
            Value::Array(items) => items
                .iter()
                .map(|v| match v {
                    Value::Number(n) => Some(*n),
                    _ => None,
                })
                .collect(),
            _ => None,
        }
    }

    pub fn as_vec3(&self) -> Option<[f64; 3]> {
        let n = self.as_numbers()?;
        <[f64; 3]>::try_from(n).ok()
    }

    /// Equality across any two values; values of different kinds are unequal.
    pub fn equals(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Number(a), Value::Number(b)) => a == b,
            (Value::Text(a), Value::Text(b)) => a == b,
            (Value::Bool(a), Value::Bool(b)) => a == b,
            (Value::Null, Value::Null) => true,
            (Value::Array(a), Value::Array(b)) => a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.equals(y)),
            _ => false,
        }
    }

    /// Applies a non-short-circuiting binary operator.
    pub fn binary(op: BinaryOp, lhs: &Value, rhs: &Value) -> Result<Value, ValueError> {
        use BinaryOp::*;
        match op {
            Eq => Ok(Value::Bool(lhs.equals(rhs))),
            Ne => Ok(Value::Bool(!lhs.equals(rhs))),
            Lt | Gt | Le | Ge => match (lhs, rhs) {
                (Value::Number(a), Value::Number(b)) => Ok(Value::Bool(match op {
                    Lt => a < b,
                    Gt => a > b,
                    Le => a <= b,
                    _ => a >= b,
                })),
                _ => Err(mismatch(op, lhs, rhs)),
            },
            And | Or => match (lhs, rhs) {
                (Value::Bool(a), Value::Bool(b)) => Ok(Value::Bool(if op == And { *a && *b } else { *a || *b })),
                _ => Err(mismatch(op, lhs, rhs)),
            },
            Add | Sub | Mul | Div => arith(op, lhs, rhs),
        }
    }
}

fn mismatch(op: BinaryOp, lhs: &Value, rhs: &Value) -> ValueError {
    ValueError::TypeMismatch(format!("cannot apply `{}` to {} and {}", op.symbol(), lhs.kind(), rhs.kind()))
}

fn scalar(op: BinaryOp, a: f64, b: f64) -> Result<f64, ValueError> {
    Ok(match op {
        BinaryOp::Add => a + b,
        BinaryOp::Sub => a - b,
        BinaryOp::Mul => a * b,
        BinaryOp::Div if b == 0.0 => return Err(ValueError::DivisionByZero),
        BinaryOp::Div => a / b,
        _ => unreachable!("not arithmetic"),
    })
}

fn arith(op: BinaryOp, lhs: &Value, rhs: &Value) -> Result<Value, ValueError> {
    use BinaryOp::*;
    match (lhs, rhs) {
        (Value::Number(a), Value::Number(b)) => scalar(op, *a, *b).map(Value::Number),
        (Value::Text(a), Value::Text(b)) if op == Add => Ok(Value::Text(format!("{a}{b}"))),
        (Value::Array(_), Value::Array(_)) if matches!(op, Add | Sub) => {
            let (a, b) = numeric_pair(op, lhs, rhs)?;
            if a.len() != b.len() {
                return Err(ValueError::LengthMismatch(a.len(), b.len()));
            }
            let out = a.iter().zip(&b).map(|(x, y)| scalar(op, *x, *y).map(Value::Number));
            out.collect::<Result<_, _>>().map(Value::Array)
        }
        (Value::Array(_), Value::Number(k)) if matches!(op, Mul | Div) => {
            let a = lhs.as_numbers().ok_or_else(|| mismatch(op, lhs, rhs))?;
            let out = a.iter().map(|x| scalar(op, *x, *k).map(Value::Number));
            out.collect::<Result<_, _>>().map(Value::Array)
        }
        (Value::Number(k), Value::Array(_)) if op == Mul => {
            let b = rhs.as_numbers().ok_or_else(|| mismatch(op, lhs, rhs))?;
            Ok(Value::Array(b.iter().map(|x| Value::Number(k * x)).collect()))
        }
        _ => Err(mismatch(op, lhs, rhs)),
    }
}

fn numeric_pair(op: BinaryOp, lhs: &Value, rhs: &Value) -> Result<(Vec<f64>, Vec<f64>), ValueError> {
    match (lhs.as_numbers(), rhs.as_numbers()) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(ValueError::TypeMismatch(format!(
            "`{}` on arrays requires numeric elements",
            op.symbol()
        ))),
    }
}
