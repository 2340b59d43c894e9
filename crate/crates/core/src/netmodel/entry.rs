use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::polyalg::{parse_rational_constant, MonomialOrder, Rational, RationalFunction, VariableRing};

/// One structured-matrix entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EntrySpec {
    Zero,
    One,
    Const(Rational),
    /// A free transfer entry; `negated` stands for `-name`.
    Free { name: String, negated: bool },
}

impl EntrySpec {
    pub fn free(name: &str) -> Self {
        EntrySpec::Free {
            name: name.to_string(),
            negated: false,
        }
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            EntrySpec::Zero
        } else if c.is_one() {
            EntrySpec::One
        } else {
            EntrySpec::Const(c)
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, EntrySpec::Zero)
    }

    pub fn free_name(&self) -> Option<&str> {
        match self {
            EntrySpec::Free { name, .. } => Some(name),
            _ => None,
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            EntrySpec::Zero => EntrySpec::Zero,
            EntrySpec::One => EntrySpec::Const(-Rational::one()),
            EntrySpec::Const(c) => EntrySpec::constant(-c),
            EntrySpec::Free { name, negated } => EntrySpec::Free {
                name: name.clone(),
                negated: !negated,
            },
        }
    }

    /// Replaces a free name by its known value.
    pub fn substitute(&self, name: &str, value: &Rational) -> Self {
        match self {
            EntrySpec::Free { name: n, negated } if n == name => {
                EntrySpec::constant(if *negated { -value } else { value.clone() })
            }
            e => e.clone(),
        }
    }

    pub fn to_rational(&self, ring: &Arc<VariableRing>, order: &MonomialOrder) -> Result<RationalFunction> {
        Ok(match self {
            EntrySpec::Zero => RationalFunction::zero(ring, order),
            EntrySpec::One => RationalFunction::constant(ring, order, Rational::one()),
            EntrySpec::Const(c) => RationalFunction::constant(ring, order, c.clone()),
            EntrySpec::Free { name, negated } => {
                let v = ring.index_of(name).ok_or_else(|| {
                    Error::MalformedInput(format!("free entry `{name}` is not a ring variable"))
                })?;
                let p = crate::polyalg::Polynomial::var(ring, order, v);
                RationalFunction::from_poly(if *negated { -&p } else { p })
            }
        })
    }

    /// Parses the file form: `0`, `1`, another integer, a quoted rational,
    /// or `{"free": name, "negated": bool}`.
    pub fn from_json(v: &Value) -> std::result::Result<Self, String> {
        match v {
            Value::Number(n) => match n.as_i64() {
                Some(i) => Ok(EntrySpec::constant(Rational::from_integer(i.into()))),
                None => Err(format!("non-integer number {n}; quote rationals as \"p/q\"")),
            },
            Value::String(s) => parse_rational_constant(s)
                .map(EntrySpec::constant)
                .map_err(|e| format!("malformed rational constant {s:?}: {e}")),
            Value::Object(m) => {
                let name = m
                    .get("free")
                    .and_then(Value::as_str)
                    .ok_or_else(|| "object entry without a \"free\" name".to_string())?;
                if !is_identifier(name) {
                    return Err(format!("free name {name:?} is not an identifier"));
                }
                let negated = match m.get("negated") {
                    None => false,
                    Some(Value::Bool(b)) => *b,
                    Some(x) => return Err(format!("\"negated\" must be a boolean, got {x}")),
                };
                if let Some(k) = m.keys().find(|k| *k != "free" && *k != "negated") {
                    return Err(format!("unknown entry key {k:?}"));
                }
                Ok(EntrySpec::Free {
                    name: name.to_string(),
                    negated,
                })
            }
            other => Err(format!("unsupported entry {other}")),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            EntrySpec::Zero => json!(0),
            EntrySpec::One => json!(1),
            EntrySpec::Const(c) => json!(c.to_string()),
            EntrySpec::Free { name, negated: false } => json!({ "free": name }),
            EntrySpec::Free { name, negated: true } => json!({ "free": name, "negated": true }),
        }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
}

impl fmt::Display for EntrySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntrySpec::Zero => write!(f, "0"),
            EntrySpec::One => write!(f, "1"),
            EntrySpec::Const(c) => write!(f, "{c}"),
            EntrySpec::Free { name, negated } => {
                write!(f, "{}{name}", if *negated { "-" } else { "" })
            }
        }
    }
}

/// Structured grid, row-major.
pub type Grid = Vec<Vec<EntrySpec>>;

pub fn zero_grid(rows: usize, cols: usize) -> Grid {
    vec![vec![EntrySpec::Zero; cols]; rows]
}
