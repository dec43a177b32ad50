//! Exact rational arithmetic, sparse multivariate polynomials and linear
//! algebra over the rationals.

mod gcd;
mod matrix;
mod parse;
mod poly;
mod resultant;

pub use gcd::{bivariate_gcd, gcd_homogeneous, univariate_gcd};
pub use matrix::QMatrix;
pub use parse::{parse_poly, ParseError};
pub use poly::{Exponent, MultiPoly, Var};
pub use resultant::{resultant, ResultantError};

use num_bigint::BigInt;

/// Arbitrary-precision rational; always stored in lowest terms with a
/// positive denominator.
pub type Rat = num_rational::BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Serde helpers rendering rationals as `p/q` strings.
pub mod serde_rat {
    use super::Rat;
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn serialize_opt<S: Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(v) => s.serialize_some(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn serialize_vec<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&r.to_string())?;
        }
        seq.end()
    }
}
