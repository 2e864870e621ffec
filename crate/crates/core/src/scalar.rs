//! Scalar abstractions shared by the exact and floating-point code paths.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Coefficient ring for [`crate::poly::MPoly`].
///
/// Exact code uses [`BigRational`]; evaluation and numeric experiments use
/// `f64` or `Complex<f64>`. Division is only ever exact in the rational case.
pub trait Coeff: Num + Neg<Output = Self> + Clone + Debug + FromPrimitive {}

impl<T> Coeff for T where T: Num + Neg<Output = T> + Clone + Debug + FromPrimitive {}

/// Real floating-point scalar used by quadrature, root bounds and the radial solver.
pub trait Real:
    num_traits::Float + num_traits::FloatConst + FromPrimitive + Debug + std::fmt::Display + Send + Sync + 'static
{
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapters: rationals travel as `"p/q"` strings in lowest terms.
pub mod rational_str {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_rational(&text).ok_or_else(|| D::Error::custom(format!("bad rational {text:?}")))
    }

    pub mod vec {
        use num_rational::BigRational;
        use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for q in v {
                seq.serialize_element(&q.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
            let raw = Vec::<String>::deserialize(d)?;
            raw.iter()
                .map(|t| {
                    crate::scalar::parse_rational(t)
                        .ok_or_else(|| D::Error::custom(format!("bad rational {t:?}")))
                })
                .collect()
        }
    }

    pub mod opt_vec {
        use num_rational::BigRational;
        use serde::{ser::SerializeSeq, Serializer};

        pub fn serialize<S: Serializer>(v: &[Option<BigRational>], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for q in v {
                seq.serialize_element(&q.as_ref().map(|q| q.to_string()))?;
            }
            seq.end()
        }
    }
}

/// Parses `"p"`, `"-p"` or `"p/q"`; the result is reduced.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(text.parse().ok()?)),
    }
}
