//! JSON forms of the exact types: rationals as "p/q" strings, polynomials as
//! coefficient arrays (constant term first), operators as lists of coefficients.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact::rat::{fmt_rat, parse_rat};
use crate::exact::{Poly, RatFunc};
use crate::ndiff::{DiffOp, SignedRatFunc};
use crate::zdiff::DiffOpZ;

#[derive(Serialize, Deserialize)]
pub struct RatFuncJson {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

pub fn poly_to_json(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(fmt_rat).collect()
}

pub fn poly_from_json(v: &[String]) -> crate::Result<Poly> {
    Ok(Poly::new(v.iter().map(|s| parse_rat(s)).collect::<crate::Result<_>>()?))
}

impl From<&RatFunc> for RatFuncJson {
    fn from(r: &RatFunc) -> Self {
        RatFuncJson { num: poly_to_json(r.num()), den: poly_to_json(r.den()) }
    }
}

impl RatFuncJson {
    pub fn to_ratfunc(&self) -> crate::Result<RatFunc> {
        let den = poly_from_json(&self.den)?;
        if den.is_zero() {
            return Err(crate::Error::Parse("zero denominator".into()));
        }
        Ok(RatFunc::new(poly_from_json(&self.num)?, den))
    }
}

#[derive(Serialize, Deserialize)]
pub struct DiffOpTermJson {
    pub shift: i64,
    pub even: RatFuncJson,
    pub odd: RatFuncJson,
}

#[derive(Serialize, Deserialize)]
pub struct DiffOpJson {
    pub support: Option<[i64; 2]>,
    pub coeffs: Vec<DiffOpTermJson>,
}

impl From<&DiffOp> for DiffOpJson {
    fn from(d: &DiffOp) -> Self {
        DiffOpJson {
            support: d.support().map(|(a, b)| [a, b]),
            coeffs: d
                .terms()
                .map(|(j, c)| DiffOpTermJson {
                    shift: j,
                    even: (&c.even()).into(),
                    odd: (&c.odd()).into(),
                })
                .collect(),
        }
    }
}

impl DiffOpJson {
    pub fn to_op(&self) -> crate::Result<DiffOp> {
        let mut v = Vec::new();
        for t in &self.coeffs {
            v.push((t.shift, SignedRatFunc::new(t.even.to_ratfunc()?, t.odd.to_ratfunc()?)));
        }
        let d = DiffOp::from_coeffs(v);
        if d.support().map(|(a, b)| [a, b]) != self.support {
            return Err(crate::Error::Parse("support field disagrees with coefficients".into()));
        }
        Ok(d)
    }
}

#[derive(Serialize, Deserialize)]
pub struct DiffOpZTermJson {
    pub order: usize,
    pub coeff: RatFuncJson,
}

#[derive(Serialize, Deserialize)]
pub struct DiffOpZJson {
    pub order: Option<usize>,
    pub coeffs: Vec<DiffOpZTermJson>,
}

impl From<&DiffOpZ> for DiffOpZJson {
    fn from(d: &DiffOpZ) -> Self {
        DiffOpZJson {
            order: d.order(),
            coeffs: d.terms().map(|(k, c)| DiffOpZTermJson { order: k, coeff: c.into() }).collect(),
        }
    }
}

impl DiffOpZJson {
    pub fn to_op(&self) -> crate::Result<DiffOpZ> {
        let mut v = Vec::new();
        for t in &self.coeffs {
            v.push((t.order, t.coeff.to_ratfunc()?));
        }
        let d = DiffOpZ::from_coeffs(v);
        if d.order() != self.order {
            return Err(crate::Error::Parse("order field disagrees with coefficients".into()));
        }
        Ok(d)
    }
}

/// `#[serde(with = ...)]` adaptor for [`Poly`].
pub mod poly {
    use super::*;
    pub fn serialize<S: Serializer>(p: &Poly, s: S) -> Result<S::Ok, S::Error> {
        poly_to_json(p).serialize(s)
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Poly, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        poly_from_json(&v).map_err(D::Error::custom)
    }
}

/// `#[serde(with = ...)]` adaptor for [`DiffOp`].
pub mod diffop {
    use super::*;
    pub fn serialize<S: Serializer>(p: &DiffOp, s: S) -> Result<S::Ok, S::Error> {
        DiffOpJson::from(p).serialize(s)
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<DiffOp, D::Error> {
        DiffOpJson::deserialize(d)?.to_op().map_err(D::Error::custom)
    }
}

/// `#[serde(with = ...)]` adaptor for [`DiffOpZ`].
pub mod diffopz {
    use super::*;
    pub fn serialize<S: Serializer>(p: &DiffOpZ, s: S) -> Result<S::Ok, S::Error> {
        DiffOpZJson::from(p).serialize(s)
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<DiffOpZ, D::Error> {
        DiffOpZJson::deserialize(d)?.to_op().map_err(D::Error::custom)
    }
}

/// `#[serde(with = ...)]` adaptor for lists of [`SignedRatFunc`].
pub mod signed_vec {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct SignedJson {
        even: RatFuncJson,
        odd: RatFuncJson,
    }

    pub fn serialize<S: Serializer>(v: &[SignedRatFunc], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|c| SignedJson { even: (&c.even()).into(), odd: (&c.odd()).into() })
            .collect::<Vec<_>>()
            .serialize(s)
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<SignedRatFunc>, D::Error> {
        Vec::<SignedJson>::deserialize(d)?
            .iter()
            .map(|j| Ok(SignedRatFunc::new(j.even.to_ratfunc()?, j.odd.to_ratfunc()?)))
            .collect::<crate::Result<Vec<_>>>()
            .map_err(D::Error::custom)
    }
}

/// `#[serde(with = ...)]` adaptor for matrices of rationals.
pub mod rat_matrix {
    use super::*;
    use crate::exact::rat::Rat;
    pub fn serialize<S: Serializer>(m: &[Vec<Rat>], s: S) -> Result<S::Ok, S::Error> {
        m.iter()
            .map(|r| r.iter().map(fmt_rat).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rat>>, D::Error> {
        Vec::<Vec<String>>::deserialize(d)?
            .iter()
            .map(|r| r.iter().map(|x| parse_rat(x)).collect::<crate::Result<Vec<_>>>())
            .collect::<crate::Result<Vec<_>>>()
            .map_err(D::Error::custom)
    }
}
