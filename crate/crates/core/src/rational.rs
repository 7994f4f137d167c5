//! Rational numbers for apartment coordinates, affine-root constants and
//! valuations, plus the string serialization used in every JSON artifact.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

pub type Q = Ratio<i64>;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

/// Smallest multiple of `1/den` that is `>= x`, returned as the numerator.
pub fn ceil_to_grid(x: Q, den: i64) -> i64 {
    let scaled = x * qi(den);
    scaled.ceil().to_integer()
}

/// True when `x` lies on the lattice `(1/den)·Z`.
pub fn on_grid(x: Q, den: i64) -> bool {
    (x * qi(den)).is_integer()
}

pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<i64>().ok().map(qi),
    }
}

pub fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a Q>) -> i64 {
    xs.into_iter().fold(1i64, |acc, x| acc.lcm(x.denom()))
}

pub fn abs(x: Q) -> Q {
    x.abs()
}

/// Serde adapter: a rational as a reduced `"n/d"` string.
pub mod q_string {
    use super::*;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).ok_or_else(|| D::Error::custom(format!("bad fraction {s:?}")))
    }
}

pub mod q_vec_string {
    use super::*;
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&format_q(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_q(s).ok_or_else(|| D::Error::custom(format!("bad fraction {s:?}"))))
            .collect()
    }
}

pub mod opt_q_string {
    use super::*;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&format_q(x)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        let v = Option::<String>::deserialize(d)?;
        v.map(|s| parse_q(&s).ok_or_else(|| D::Error::custom(format!("bad fraction {s:?}"))))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_helpers() {
        assert_eq!(ceil_to_grid(q(-1, 3), 1), 0);
        assert_eq!(ceil_to_grid(q(1, 3), 2), 1);
        assert_eq!(ceil_to_grid(q(1, 2), 2), 1);
        assert!(on_grid(q(3, 2), 2));
        assert!(!on_grid(q(1, 4), 2));
    }

    #[test]
    fn fraction_strings() {
        assert_eq!(format_q(&q(2, 4)), "1/2");
        assert_eq!(format_q(&qi(-3)), "-3");
        assert_eq!(parse_q("-1/4"), Some(q(-1, 4)));
        assert_eq!(parse_q("7"), Some(qi(7)));
        assert_eq!(parse_q("1/0"), None);
    }
}
