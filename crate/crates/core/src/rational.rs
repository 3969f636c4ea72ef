//! Exact rationals and their string encoding (`"p/q"`, or `"p"` when the
//! denominator is one).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Formats in lowest terms. `BigRational` keeps itself reduced, so its
/// `Display` already prints `p/q` or `p`.
pub fn format(r: &Rational) -> String {
    r.to_string()
}

/// Parses an integer or `p/q` string. Rejects zero denominators and
/// whitespace.
pub fn parse(s: &str) -> Option<Rational> {
    let parse_int = |t: &str| -> Option<BigInt> {
        if t.is_empty() || t.starts_with('+') {
            return None;
        }
        t.parse::<BigInt>().ok()
    };
    match s.split_once('/') {
        None => parse_int(s).map(Rational::from_integer),
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if q.is_zero() || q.is_negative() {
                return None;
            }
            Some(Rational::new(p, q))
        }
    }
}

/// Serde adapters encoding rationals as strings.
pub mod serde_str {
    use super::Rational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }

    pub mod vec {
        use super::super::Rational;
        use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&super::super::format(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            Vec::<String>::deserialize(d)?
                .into_iter()
                .map(|s| super::super::parse(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse() {
        assert_eq!(format(&frac(6, 4)), "3/2");
        assert_eq!(format(&int(7)), "7");
        assert_eq!(format(&frac(-1, 3)), "-1/3");
        assert_eq!(parse("3/2"), Some(frac(3, 2)));
        assert_eq!(parse("4/2"), Some(int(2)));
        assert_eq!(parse("12"), Some(int(12)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("1/-2"), None);
        assert_eq!(parse(" 1"), None);
        assert_eq!(parse("1.5"), None);
        assert_eq!(parse(""), None);
    }
}
