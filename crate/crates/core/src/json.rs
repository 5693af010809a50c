//! JSON file schemas and serde helpers.
//!
//! Rationals are always written as strings (`"60/7"`, `"-1"`) or as
//! `["num", "den"]` string pairs in polynomial files, never as floats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::RatPoly;

/// Parse `"a"` or `"a/b"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Input(format!("bad integer {num:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Input(format!("bad integer {den:?}")))?;
    if den.is_zero() {
        return Err(Error::Input(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

pub fn render_rational(x: &BigRational) -> String {
    x.to_string()
}

/// `#[serde(with = "crate::json::rational")]`
pub mod rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&render_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Integers as decimal strings; serialize only.
pub fn bigint_str<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// `#[serde(with = "crate::json::rational_vec")]`
pub mod rational_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        xs: &[BigRational],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = xs.iter().map(render_rational).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<BigRational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// `#[serde(with = "crate::json::opt_rational")]`
pub mod opt_rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        x: &Option<BigRational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        x.as_ref().map(render_rational).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<BigRational>, D::Error> {
        let v = Option::<String>::deserialize(d)?;
        v.map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Polynomial file: a normalized (weight 0) Frobenius polynomial with its
/// field and degree data. `coefficients[r]` is the coefficient of `T^r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub p: u64,
    pub k: u32,
    pub dim: u32,
    pub coefficients: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hodge: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl PolynomialFile {
    pub fn from_poly(p: u64, k: u32, dim: u32, phi: &RatPoly) -> Self {
        PolynomialFile {
            name: None,
            p,
            k,
            dim,
            coefficients: phi
                .coeffs()
                .iter()
                .map(|c| (c.numer().to_string(), c.denom().to_string()))
                .collect(),
            hodge: None,
            e: None,
            alpha: None,
            source: None,
        }
    }

    pub fn polynomial(&self) -> Result<RatPoly> {
        let coeffs = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(r, (n, d))| {
                parse_rational(&format!("{n}/{d}"))
                    .map_err(|e| Error::Input(format!("coefficients[{r}]: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RatPoly::from_coeffs(coeffs))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeParity {
    Even,
    Odd,
}

/// Known Frobenius eigenvalues `q^a` outside the middle degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientEigenvalue {
    pub weight_exponent: i64,
    pub multiplicity: u64,
    pub degree_parity: DegreeParity,
}

fn default_rho() -> usize {
    1
}

/// Variety descriptor file. Point counts are decimal strings because they
/// leave the 64-bit range quickly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptorFile {
    pub name: String,
    pub p: u64,
    pub k: u32,
    pub d: u32,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hodge: Option<Vec<u64>>,
    /// Caller asserts the Hodge numbers equal the abstract ones.
    #[serde(default)]
    pub hodge_is_abstract: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<i64>,
    pub point_counts: Vec<String>,
    #[serde(default)]
    pub ambient: Vec<AmbientEigenvalue>,
    #[serde(default = "default_rho")]
    pub forced_unit_root_multiplicity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

/// Parse JSON, turning serde's line/column into the error message.
pub fn from_json_str<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        Error::Input(format!(
            "{what}: {e} (line {}, column {})",
            e.line(),
            e.column()
        ))
    })
}
