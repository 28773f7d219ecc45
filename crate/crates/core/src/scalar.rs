//! Integer scalar backend. All arithmetic in this crate is exact: the engine
//! works over an integer type `I` and its fraction field `Frac<I>`, never over
//! floats. The default backend is [`crate::Int`] (arbitrary precision); any
//! type satisfying [`Scalar`], e.g. `i64`, can be substituted.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

/// Exact fractions over the integer backend.
pub type Frac<I> = num_rational::Ratio<I>;

/// Requirements on an integer backend: exact ring arithmetic with gcd,
/// ordering, hashing, and conversions for small literals and cap checks.
pub trait Scalar:
    Integer + Signed + Hash + Clone + Debug + Display + From<i64> + ToPrimitive + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Integer + Signed + Hash + Clone + Debug + Display + From<i64> + ToPrimitive + Send + Sync + 'static
{
}

/// Integer literal in backend `I`.
pub fn int<I: Scalar>(k: i64) -> I {
    I::from(k)
}

/// Reduced fraction `n/d`. Panics if `d == 0`.
pub fn fr<I: Scalar>(n: i64, d: i64) -> Frac<I> {
    Frac::new(int(n), int(d))
}

/// The fraction `k/1`.
pub fn fr_int<I: Scalar>(k: i64) -> Frac<I> {
    Frac::from_integer(int(k))
}

/// Fractional part in `[0, 1)`: `x - floor(x)`.
pub fn mod1<I: Scalar>(x: &Frac<I>) -> Frac<I> {
    x - x.floor()
}

/// Cap-check helper: a scalar as `u64`, if it fits and is nonnegative.
pub fn to_u64<I: Scalar>(x: &I) -> Option<u64> {
    x.to_u64()
}
