//! Sparse E-polynomials in two variables `u, v` with rational exponents.
//!
//! A [`MotivicClass`] is a finite sum `sum c * u^p * v^q` with integer
//! coefficients and nonnegative rational exponents. The representation is
//! always canonical: terms keyed by `(p, q)` in ascending lexicographic
//! order, zero coefficients dropped. Equality of classes is therefore
//! equality of the stored maps, and the text rendering is bit-stable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::scalar::{fr_int, Frac, Scalar};
use crate::Int;

/// E-polynomial with coefficients in the integer backend `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotivicClass<I: Scalar = Int> {
    terms: BTreeMap<(Frac<I>, Frac<I>), I>,
}

impl<I: Scalar> MotivicClass<I> {
    /// The zero class (empty sum).
    pub fn zero() -> Self {
        MotivicClass { terms: BTreeMap::new() }
    }

    /// The unit class `1 = (uv)^0`.
    pub fn one() -> Self {
        Self::term(I::one(), fr_int(0), fr_int(0)).expect("unit exponents are valid")
    }

    /// Single term `c * u^p * v^q`. Exponents must be nonnegative; a zero
    /// coefficient yields the zero class.
    pub fn term(c: I, p: Frac<I>, q: Frac<I>) -> Result<Self, Error> {
        if p.is_negative() {
            return Err(Error::NegativeExponent(p.to_string()));
        }
        if q.is_negative() {
            return Err(Error::NegativeExponent(q.to_string()));
        }
        let mut out = Self::zero();
        out.insert(p, q, c);
        Ok(out)
    }

    /// The class `(uv)^e` for `e >= 0`.
    pub fn tate_power(e: Frac<I>) -> Result<Self, Error> {
        Self::term(I::one(), e.clone(), e)
    }

    /// Convenience for `(uv)^k` with small integer `k >= 0`.
    pub fn uv(k: i64) -> Self {
        Self::tate_power(fr_int(k)).expect("nonnegative integer exponent")
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term iterator in canonical `(p, q)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&(Frac<I>, Frac<I>), &I)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, p: Frac<I>, q: Frac<I>, c: I) {
        if c.is_zero() {
            return;
        }
        let key = (p, q);
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, c);
            }
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for ((p, q), c) in rhs.terms() {
            out.insert(p.clone(), q.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for ((pa, qa), ca) in self.terms() {
            for ((pb, qb), cb) in rhs.terms() {
                out.insert(pa + pb, qa + qb, ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &I) -> Self {
        let mut out = Self::zero();
        for ((p, q), k) in self.terms() {
            out.insert(p.clone(), q.clone(), k.clone() * c.clone());
        }
        out
    }

    /// `self^k` by repeated multiplication.
    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Evaluation at `u = v = 1`: the sum of all coefficients.
    pub fn euler_characteristic(&self) -> I {
        let mut acc = I::zero();
        for (_, c) in self.terms() {
            acc = acc + c.clone();
        }
        acc
    }

    /// The smallest fractional exponent appearing in any term, if one does.
    pub fn min_fractional_exponent(&self) -> Option<Frac<I>> {
        let mut best: Option<Frac<I>> = None;
        for ((p, q), _) in self.terms() {
            for e in [p, q] {
                if !e.is_integer() && best.as_ref().map_or(true, |b| e < b) {
                    best = Some(e.clone());
                }
            }
        }
        best
    }

    /// Coefficients reindexed by integer `(p, q)`. Errors with the smallest
    /// offending exponent if any exponent is fractional; this is the expected
    /// signal for inputs without an integral grading.
    pub fn hodge_numbers(&self) -> Result<BTreeMap<(I, I), I>, Error> {
        if let Some(e) = self.min_fractional_exponent() {
            return Err(Error::NonIntegralClass(e.to_string()));
        }
        let mut out = BTreeMap::new();
        for ((p, q), c) in self.terms() {
            out.insert((p.to_integer(), q.to_integer()), c.clone());
        }
        Ok(out)
    }
}

impl<I: Scalar> Add for &MotivicClass<I> {
    type Output = MotivicClass<I>;
    fn add(self, rhs: Self) -> MotivicClass<I> {
        MotivicClass::add(self, rhs)
    }
}

impl<I: Scalar> Mul for &MotivicClass<I> {
    type Output = MotivicClass<I>;
    fn mul(self, rhs: Self) -> MotivicClass<I> {
        MotivicClass::mul(self, rhs)
    }
}

/// Canonical rendering: terms joined by ` + ` in key order. A term prints as
/// `c` when `p = q = 0`, as `c*(uv)^p` when `p = q`, and as `c*(u^p)*(v^q)`
/// otherwise; fractions print as `a/b`. The zero class prints as `0`.
impl<I: Scalar> fmt::Display for MotivicClass<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((p, q), c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if p == q {
                if p.is_zero() {
                    write!(f, "{c}")?;
                } else {
                    write!(f, "{c}*(uv)^{p}")?;
                }
            } else {
                write!(f, "{c}*(u^{p})*(v^{q})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{fr, int};

    fn t(k: i64) -> MotivicClass {
        MotivicClass::uv(k)
    }

    #[test]
    fn render_is_canonical() {
        let c = t(2).add(&t(1).scale(&int(2))).add(&MotivicClass::one());
        assert_eq!(c.to_string(), "1 + 2*(uv)^1 + 1*(uv)^2");
        assert_eq!(MotivicClass::<Int>::zero().to_string(), "0");
        let m = MotivicClass::<Int>::term(int(3), fr(1, 2), fr(1, 2)).unwrap();
        assert_eq!(m.to_string(), "3*(uv)^1/2");
        let mixed = MotivicClass::<Int>::term(int(-1), fr(1, 1), fr(0, 1)).unwrap();
        assert_eq!(mixed.to_string(), "-1*(u^1)*(v^0)");
    }

    #[test]
    fn addition_cancels_to_zero() {
        let c = t(2).add(&t(2).scale(&int(-1)));
        assert!(c.is_zero());
        assert_eq!(c, MotivicClass::zero());
    }

    #[test]
    fn tate_powers_multiply_additively() {
        let a = MotivicClass::<Int>::tate_power(fr(2, 3)).unwrap();
        let b = MotivicClass::<Int>::tate_power(fr(4, 3)).unwrap();
        assert_eq!(a.mul(&b), t(2));
    }

    #[test]
    fn negative_exponents_rejected() {
        let e = MotivicClass::<Int>::term(int(1), fr(-1, 2), fr(1, 2));
        assert_eq!(e, Err(Error::NegativeExponent("-1/2".into())));
        assert!(MotivicClass::<Int>::tate_power(fr(-1, 1)).is_err());
    }

    #[test]
    fn euler_characteristic_sums_coefficients() {
        // A-series surface class at r = 5: (uv)^2 + 4*(uv).
        let c = t(2).add(&t(1).scale(&int(4)));
        assert_eq!(c.euler_characteristic(), int(5));
        assert_eq!(MotivicClass::<Int>::zero().euler_characteristic(), int(0));
    }

    #[test]
    fn hodge_numbers_on_integral_class() {
        let c = t(2).add(&t(1).scale(&int(3))).add(&MotivicClass::one());
        let h = c.hodge_numbers().unwrap();
        assert_eq!(h.len(), 3);
        assert_eq!(h[&(int(1), int(1))], int(3));
        assert_eq!(h[&(int(0), int(0))], int(1));
    }

    #[test]
    fn hodge_numbers_reports_smallest_fractional_exponent() {
        let c = MotivicClass::<Int>::tate_power(fr(4, 3))
            .unwrap()
            .add(&MotivicClass::tate_power(fr(2, 3)).unwrap());
        assert_eq!(c.hodge_numbers(), Err(Error::NonIntegralClass("2/3".into())));
    }

    #[test]
    fn product_distributes_over_sum() {
        let a = t(1).add(&MotivicClass::one());
        let b = t(2).add(&t(1).scale(&int(-1)));
        let c = MotivicClass::term(int(2), fr(1, 2), fr(1, 2)).unwrap();
        let lhs = a.mul(&b.add(&c));
        let rhs = a.mul(&b).add(&a.mul(&c));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn works_over_i64_backend() {
        let a: MotivicClass<i64> = MotivicClass::uv(1);
        let b = a.add(&MotivicClass::one());
        assert_eq!(b.pow(2).to_string(), "1 + 2*(uv)^1 + 1*(uv)^2");
        assert_eq!(b.pow(2).euler_characteristic(), 4);
    }
}
