use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::{Rational, Scalar};

/// An exact field.
///
/// Everything downstream (matrices, polynomials, arrangements, Molien
/// series) is written against this trait. Equality must be decidable and
/// hashing must agree with it, so canonical representations are required.
pub trait Field:
    Clone
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn from_int(n: i64) -> Self;

    fn from_rational(q: Rational) -> Self;

    /// `Some(q)` when the value lies in the prime field.
    fn as_rational(&self) -> Option<Rational>;

    /// Image under the fixed complex embedding. Debug channel only.
    fn to_complex(&self) -> (f64, f64);

    /// The value as a [`Scalar`]; residues map to their symmetric lift.
    fn to_scalar(&self) -> Scalar;
}

impl Field for Rational {
    fn inv(&self) -> Self {
        self.recip()
    }

    fn from_int(n: i64) -> Self {
        Rational::from_integer(n)
    }

    fn from_rational(q: Rational) -> Self {
        q
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn to_complex(&self) -> (f64, f64) {
        (self.to_f64(), 0.0)
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Rat(self.clone())
    }
}

/// `base^exp` by repeated squaring.
pub fn pow<F: Field>(base: &F, exp: u32) -> F {
    let mut acc = F::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * &b;
        }
        e >>= 1;
        if e > 0 {
            b = b.clone() * &b;
        }
    }
    acc
}
