use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::{Field, Rational, Scalar};

/// The Mersenne prime `2^61 - 1`.
pub const P61: u64 = (1 << 61) - 1;

/// Residue modulo `2^61 - 1`.
///
/// Used as a faithful stand-in for integer data whose relevant minors are
/// bounded by `P61 / 2` in absolute value: ranks, proportionality and
/// equality computed here then agree with the same computations over ℚ.
/// `as_rational` returns the symmetric lift.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp61(u64);

impl Fp61 {
    pub const fn new(v: u64) -> Self {
        Fp61(v % P61)
    }

    pub fn from_i64(v: i64) -> Self {
        let r = v.rem_euclid(P61 as i64);
        Fp61(r as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Representative in `(-P61/2, P61/2]`.
    pub fn symmetric(self) -> i64 {
        if self.0 > P61 / 2 {
            self.0 as i64 - P61 as i64
        } else {
            self.0 as i64
        }
    }

    fn reduce(x: u128) -> u64 {
        let lo = (x as u64) & P61;
        let hi = (x >> 61) as u64;
        let s = lo + hi;
        let s = (s & P61) + (s >> 61);
        if s >= P61 {
            s - P61
        } else {
            s
        }
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut acc = Fp61(1);
        let mut b = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b;
            }
            b = b * b;
            e >>= 1;
        }
        acc
    }

    /// Largest Hadamard bound on `k x k` minors (for every `k <= dim`) of a
    /// matrix whose entries are at most `max_abs` in absolute value, checked
    /// against half the modulus.
    pub fn hadamard_safe(max_abs: u64, dim: usize) -> bool {
        let bound = (max_abs as f64) * (dim as f64).sqrt();
        let log = (dim as f64) * bound.max(1.0).log2();
        log < 59.0
    }
}

impl fmt::Debug for Fp61 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symmetric())
    }
}

impl fmt::Display for Fp61 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symmetric())
    }
}

impl Zero for Fp61 {
    fn zero() -> Self {
        Fp61(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Fp61 {
    fn one() -> Self {
        Fp61(1)
    }
}

impl Neg for Fp61 {
    type Output = Fp61;
    fn neg(self) -> Fp61 {
        if self.0 == 0 {
            self
        } else {
            Fp61(P61 - self.0)
        }
    }
}

impl Add for Fp61 {
    type Output = Fp61;
    fn add(self, rhs: Fp61) -> Fp61 {
        let s = self.0 + rhs.0;
        Fp61(if s >= P61 { s - P61 } else { s })
    }
}

impl Sub for Fp61 {
    type Output = Fp61;
    fn sub(self, rhs: Fp61) -> Fp61 {
        self + (-rhs)
    }
}

impl Mul for Fp61 {
    type Output = Fp61;
    fn mul(self, rhs: Fp61) -> Fp61 {
        Fp61(Fp61::reduce(self.0 as u128 * rhs.0 as u128))
    }
}

impl Div for Fp61 {
    type Output = Fp61;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Fp61) -> Fp61 {
        self * rhs.inv()
    }
}

macro_rules! by_ref {
    ($($tr:ident $m:ident $asg:ident $am:ident),*) => {$(
        impl<'a> $tr<&'a Fp61> for Fp61 {
            type Output = Fp61;
            fn $m(self, rhs: &'a Fp61) -> Fp61 {
                $tr::$m(self, *rhs)
            }
        }
        impl $asg for Fp61 {
            fn $am(&mut self, rhs: Fp61) {
                *self = $tr::$m(*self, rhs);
            }
        }
        impl<'a> $asg<&'a Fp61> for Fp61 {
            fn $am(&mut self, rhs: &'a Fp61) {
                *self = $tr::$m(*self, *rhs);
            }
        }
    )*};
}

by_ref!(Add add AddAssign add_assign, Sub sub SubAssign sub_assign, Mul mul MulAssign mul_assign);

impl<'a> Div<&'a Fp61> for Fp61 {
    type Output = Fp61;
    fn div(self, rhs: &'a Fp61) -> Fp61 {
        self / *rhs
    }
}

impl Field for Fp61 {
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "division by zero");
        self.pow(P61 - 2)
    }

    fn from_int(n: i64) -> Self {
        Fp61::from_i64(n)
    }

    fn from_rational(q: Rational) -> Self {
        let num = q.numer() % num_bigint::BigInt::from(P61);
        let den = q.denom() % num_bigint::BigInt::from(P61);
        let n: i64 = num.try_into().expect("reduced residue fits in i64");
        let d: i64 = den.try_into().expect("reduced residue fits in i64");
        Fp61::from_i64(n) / Fp61::from_i64(d)
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(Rational::from_integer(self.symmetric()))
    }

    fn to_complex(&self) -> (f64, f64) {
        (self.symmetric() as f64, 0.0)
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::int(self.symmetric())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_lift() {
        let a = Fp61::from_i64(-7);
        assert_eq!(a.symmetric(), -7);
        assert_eq!(a * a.inv(), Fp61::one());
        let half = Fp61::from_rational(Rational::new(1, 2));
        assert_eq!(half + half, Fp61::one());
    }

    #[test]
    fn reduction_handles_large_products() {
        let a = Fp61::new(P61 - 1);
        assert_eq!(a * a, Fp61::one());
    }

    #[test]
    fn hadamard_guard() {
        assert!(Fp61::hadamard_safe(6, 8));
        assert!(!Fp61::hadamard_safe(1000, 8));
    }
}
