//! Extended real orders, zero conventions and extended-real values.

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// A real number or ±∞. Values returned by this crate are never NaN.
pub type ExtReal = f64;

/// Orders with `|alpha|` above this are evaluated by their ±∞ limit.
pub const INFINITE_ORDER_CUTOFF: f64 = 1e6;

/// Where an order sits on the extended real line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    NegInfinity,
    Negative,
    Zero,
    Below1,
    One,
    Above1,
    PosInfinity,
}

/// An order `alpha` in `[-∞, +∞]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct AlphaOrder(f64);

impl AlphaOrder {
    pub const NEG_INFINITY: AlphaOrder = AlphaOrder(f64::NEG_INFINITY);
    pub const POS_INFINITY: AlphaOrder = AlphaOrder(f64::INFINITY);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() {
            return Err(Error::InvalidAlpha);
        }
        Ok(AlphaOrder(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn regime(self) -> Regime {
        let a = self.0;
        if a == f64::NEG_INFINITY {
            Regime::NegInfinity
        } else if a == f64::INFINITY {
            Regime::PosInfinity
        } else if a < 0.0 {
            Regime::Negative
        } else if a == 0.0 {
            Regime::Zero
        } else if a < 1.0 {
            Regime::Below1
        } else if a == 1.0 {
            Regime::One
        } else {
            Regime::Above1
        }
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    /// The Hölder conjugate `alpha / (alpha - 1)`, with `∓∞ ↦ 1` and `1 ↦ ∞`.
    pub fn conjugate(self) -> f64 {
        hoelder_conjugate(self.0)
    }
}

impl TryFrom<f64> for AlphaOrder {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        AlphaOrder::new(value)
    }
}

impl fmt::Display for AlphaOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for AlphaOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ext_real::serialize(&self.0, s)
    }
}

pub(crate) fn hoelder_conjugate(alpha: f64) -> f64 {
    if alpha.is_infinite() {
        1.0
    } else if alpha == 1.0 {
        f64::INFINITY
    } else {
        alpha / (alpha - 1.0)
    }
}

/// How `0^alpha` is read for negative orders.
///
/// `Strict` treats `0^alpha = +∞`; `SupportRestricted` drops every term
/// outside the common support. Positive orders are unaffected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroConvention {
    #[default]
    Strict,
    SupportRestricted,
}

impl fmt::Display for ZeroConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZeroConvention::Strict => "strict",
            ZeroConvention::SupportRestricted => "support_restricted",
        })
    }
}

/// Serde helpers for extended reals: finite values as numbers, infinities
/// as the strings `"inf"` and `"-inf"`.
pub mod ext_real {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else if *v < 0.0 {
            s.serialize_str("-inf")
        } else {
            s.serialize_str("nan")
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Str(s) => match s.as_str() {
                "inf" | "+inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                other => Err(serde::de::Error::custom(format!("not an extended real: {other}"))),
            },
        }
    }

    /// Same encoding for `Option<f64>`.
    pub mod option {
        use serde::Serializer;

        pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(x) => super::serialize(x, s),
                None => s.serialize_none(),
            }
        }
    }
}
