//! Scalar traits the exact layer is generic over.
//!
//! Only exact fraction types qualify: every decision downstream is an
//! equality test (a holonomy equal to one, a minor equal to zero), so the
//! floating point types deliberately do not implement [`Scalar`].

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive};

/// Integer ring underlying a [`Scalar`]: `BigInt`, `i64`, `i128`.
pub trait Integral:
    Integer + Signed + Clone + Hash + Debug + Display + FromStr + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

impl<T> Integral for T where
    T: Integer
        + Signed
        + Clone
        + Hash
        + Debug
        + Display
        + FromStr
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// An exact field of fractions over an [`Integral`] ring.
///
/// `Display` must print `p/q` (or `p` when `q = 1`) and `FromStr` must
/// accept the same form; this is the wire format of field coordinates.
pub trait Scalar:
    Clone + PartialEq + Eq + Ord + Hash + Debug + Display + Num + Signed + FromStr + Send + Sync + 'static
{
    type Int: Integral;

    fn numer_int(&self) -> &Self::Int;
    fn denom_int(&self) -> &Self::Int;
    fn from_int(n: Self::Int) -> Self;
    fn from_frac(numer: Self::Int, denom: Self::Int) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_int(Self::Int::from_i64(v).expect("i64 fits every integral type"))
    }

    fn is_integer(&self) -> bool {
        self.denom_int().is_one()
    }
}

impl<I: Integral> Scalar for Ratio<I> {
    type Int = I;

    fn numer_int(&self) -> &I {
        self.numer()
    }

    fn denom_int(&self) -> &I {
        self.denom()
    }

    fn from_int(n: I) -> Self {
        Ratio::from_integer(n)
    }

    fn from_frac(numer: I, denom: I) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Ratio::new(numer, denom)
    }
}

/// Least common multiple of the denominators of `values` (1 when empty).
pub fn common_denominator<Q: Scalar>(values: &[Q]) -> Q::Int {
    values
        .iter()
        .fold(Q::Int::one(), |acc, v| acc.lcm(v.denom_int()))
}

/// Scale `values` by their common denominator, yielding an integer row.
pub fn clear_denominators<Q: Scalar>(values: &[Q]) -> Vec<Q::Int> {
    let l = common_denominator(values);
    values
        .iter()
        .map(|v| v.numer_int().clone() * (l.clone() / v.denom_int().clone()))
        .collect()
}
