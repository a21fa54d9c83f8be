//! Serde adapters: rationals and big integers travel as decimal / `"p/q"` strings.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::polyalg::{fmt_rat, parse_rat, Rational, RationalMatrix, UnivariatePoly};

/// Accepts a JSON integer or a numeric string.
#[derive(Deserialize)]
#[serde(untagged)]
enum NumOrStr {
    Int(i64),
    Str(String),
}

fn to_rat<E: serde::de::Error>(v: NumOrStr) -> Result<Rational, E> {
    match v {
        NumOrStr::Int(i) => Ok(Rational::from_integer(i.into())),
        NumOrStr::Str(s) => parse_rat(&s).ok_or_else(|| E::custom(format!("bad rational `{s}`"))),
    }
}

fn to_big<E: serde::de::Error>(v: NumOrStr) -> Result<BigInt, E> {
    match v {
        NumOrStr::Int(i) => Ok(i.into()),
        NumOrStr::Str(s) => s
            .trim()
            .parse()
            .map_err(|_| E::custom(format!("bad integer `{s}`"))),
    }
}

pub mod rat {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        to_rat(NumOrStr::deserialize(d)?)
    }
}

pub mod rat_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(fmt_rat).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<NumOrStr>::deserialize(d)?
            .into_iter()
            .map(to_rat)
            .collect()
    }
}

pub mod rat_rows {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|r| r.iter().map(fmt_rat).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        Vec::<Vec<NumOrStr>>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_iter().map(to_rat).collect())
            .collect()
    }
}

pub mod big {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        to_big(NumOrStr::deserialize(d)?)
    }
}

pub mod big_opt {
    use super::*;

    pub fn serialize<S: Serializer>(n: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        n.as_ref().map(|x| x.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<NumOrStr>::deserialize(d)?.map(to_big).transpose()
    }
}

pub mod big_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<NumOrStr>::deserialize(d)?
            .into_iter()
            .map(to_big)
            .collect()
    }
}

pub mod big_rows {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Vec::<Vec<NumOrStr>>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_iter().map(to_big).collect())
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    cols: usize,
    #[serde(with = "rat_rows")]
    rows: Vec<Vec<Rational>>,
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            cols: self.cols(),
            rows: self.row_vecs(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m = MatrixRepr::deserialize(d)?;
        RationalMatrix::from_rows(m.cols, m.rows).map_err(D::Error::custom)
    }
}

/// Coefficients in ascending powers.
impl Serialize for UnivariatePoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        rat_vec::serialize(self.coeffs(), s)
    }
}

impl<'de> Deserialize<'de> for UnivariatePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(UnivariatePoly::new(rat_vec::deserialize(d)?))
    }
}
