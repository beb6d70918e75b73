use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{CyclotomicContext, Field, Rational, ScalarError};

/// Element of `ℚ` or of a cyclotomic field `ℚ(e^{iπ/m})`.
///
/// Values that happen to be rational are always stored as `Rat`, so two
/// equal numbers have the same representation regardless of the context
/// they were computed in.
#[derive(Clone)]
pub enum Scalar {
    Rat(Rational),
    Cyc(CycloElem),
}

/// Non-rational element of a cyclotomic context. Coefficient vector has
/// length `ctx.degree()` and is reduced.
#[derive(Clone)]
pub struct CycloElem {
    ctx: Arc<CyclotomicContext>,
    coeffs: Vec<Rational>,
}

impl CycloElem {
    pub fn context(&self) -> &Arc<CyclotomicContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }
}

impl Scalar {
    pub fn rational(q: Rational) -> Self {
        Scalar::Rat(q)
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rat(Rational::from_integer(n))
    }

    /// Builds an element from coefficients in the power basis of `ctx`.
    pub fn from_coeffs(ctx: &Arc<CyclotomicContext>, coeffs: Vec<Rational>) -> Self {
        let reduced = ctx.reduce(coeffs);
        Self::normalize(ctx, reduced)
    }

    /// `2cos(π/m)` in the context for bond `m`.
    pub fn two_cos_pi_over(m: u32) -> Result<Self, ScalarError> {
        match m {
            2 => Ok(Scalar::int(0)),
            3 => Ok(Scalar::int(1)),
            _ => {
                let ctx = CyclotomicContext::get(m)?;
                let c = ctx.cos2();
                Ok(Self::normalize(&ctx, c))
            }
        }
    }

    fn normalize(ctx: &Arc<CyclotomicContext>, coeffs: Vec<Rational>) -> Self {
        if coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Scalar::Rat(coeffs.into_iter().next().unwrap_or_default())
        } else {
            Scalar::Cyc(CycloElem { ctx: ctx.clone(), coeffs })
        }
    }

    pub fn context(&self) -> Option<&Arc<CyclotomicContext>> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Cyc(c) => Some(&c.ctx),
        }
    }

    /// Sign of a real value under the embedding `ζ ↦ e^{iπ/m}`: exact for
    /// rationals and for zero, read from a floating-point embedding
    /// otherwise.
    pub fn sign(&self) -> i32 {
        match self {
            Scalar::Rat(q) => q.signum(),
            Scalar::Cyc(c) => {
                let (re, _) = c.ctx.embed(&c.coeffs);
                if re > 0.0 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    fn lift(q: &Rational, ctx: &Arc<CyclotomicContext>) -> Vec<Rational> {
        let mut v = vec![Rational::ZERO; ctx.degree()];
        v[0] = q.clone();
        v
    }

    /// Brings both operands into a common representation.
    fn align<'a>(a: &'a Scalar, b: &'a Scalar) -> Result<Aligned<'a>, ScalarError> {
        match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Ok(Aligned::Rat(x, y)),
            (Scalar::Cyc(x), Scalar::Cyc(y)) => {
                if x.ctx.m() != y.ctx.m() {
                    return Err(ScalarError::ContextMismatch(x.ctx.m(), y.ctx.m()));
                }
                Ok(Aligned::Cyc(x.ctx.clone(), x.coeffs.clone(), y.coeffs.clone()))
            }
            (Scalar::Rat(x), Scalar::Cyc(y)) => {
                Ok(Aligned::Cyc(y.ctx.clone(), Self::lift(x, &y.ctx), y.coeffs.clone()))
            }
            (Scalar::Cyc(x), Scalar::Rat(y)) => {
                Ok(Aligned::Cyc(x.ctx.clone(), x.coeffs.clone(), Self::lift(y, &x.ctx)))
            }
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(match Self::align(self, rhs)? {
            Aligned::Rat(x, y) => Scalar::Rat(x + y),
            Aligned::Cyc(ctx, x, y) => {
                let s = x.iter().zip(&y).map(|(a, b)| a + b).collect();
                Self::normalize(&ctx, s)
            }
        })
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(match Self::align(self, rhs)? {
            Aligned::Rat(x, y) => Scalar::Rat(x - y),
            Aligned::Cyc(ctx, x, y) => {
                let s = x.iter().zip(&y).map(|(a, b)| a - b).collect();
                Self::normalize(&ctx, s)
            }
        })
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        // rational scaling skips the full convolution
        match (self, rhs) {
            (Scalar::Rat(x), Scalar::Rat(y)) => return Ok(Scalar::Rat(x * y)),
            (Scalar::Rat(q), Scalar::Cyc(c)) | (Scalar::Cyc(c), Scalar::Rat(q)) => {
                let s = c.coeffs.iter().map(|a| a * q).collect();
                return Ok(Self::normalize(&c.ctx, s));
            }
            _ => {}
        }
        Ok(match Self::align(self, rhs)? {
            Aligned::Rat(x, y) => Scalar::Rat(x * y),
            Aligned::Cyc(ctx, x, y) => {
                let p = ctx.mul(&x, &y);
                Self::normalize(&ctx, p)
            }
        })
    }

    pub fn checked_inv(&self) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Rat(q) => {
                if q.is_zero() {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(Scalar::Rat(q.recip()))
                }
            }
            Scalar::Cyc(c) => {
                let inv = c.ctx.inverse(&c.coeffs).ok_or(ScalarError::DivisionByZero)?;
                Ok(Self::normalize(&c.ctx, inv))
            }
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_mul(&rhs.checked_inv()?)
    }
}

enum Aligned<'a> {
    Rat(&'a Rational, &'a Rational),
    Cyc(Arc<CyclotomicContext>, Vec<Rational>, Vec<Rational>),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::Rat(Rational::ZERO)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::Cyc(a), Scalar::Cyc(b)) => a.ctx.m() == b.ctx.m() && a.coeffs == b.coeffs,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Scalar::Rat(q) => q.hash(state),
            Scalar::Cyc(c) => {
                c.ctx.m().hash(state);
                c.coeffs.hash(state);
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => write!(f, "{q}"),
            Scalar::Cyc(c) => {
                let mut first = true;
                write!(f, "(")?;
                for (k, ck) in c.coeffs.iter().enumerate() {
                    if ck.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    match k {
                        0 => write!(f, "{ck}")?,
                        1 => write!(f, "{ck}*z")?,
                        _ => write!(f, "{ck}*z^{k}")?,
                    }
                }
                write!(f, ")_{}", c.ctx.m())
            }
        }
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::Rat(q)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::Rat(Rational::ZERO)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(q) if q.is_zero())
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::Rat(Rational::ONE)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(q) => Scalar::Rat(-q),
            Scalar::Cyc(c) => Scalar::Cyc(CycloElem { coeffs: c.coeffs.iter().map(|x| -x).collect(), ctx: c.ctx }),
        }
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<'a, 'b> $tr<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);
scalar_binop!(Div, div, checked_div);

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}

impl<'a> AddAssign<&'a Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &'a Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self = &*self - &rhs;
    }
}

impl<'a> SubAssign<&'a Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &'a Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        *self = &*self * &rhs;
    }
}

impl Field for Scalar {
    fn inv(&self) -> Self {
        self.checked_inv().unwrap_or_else(|e| panic!("{e}"))
    }

    fn from_int(n: i64) -> Self {
        Scalar::int(n)
    }

    fn from_rational(q: Rational) -> Self {
        Scalar::Rat(q)
    }

    fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Rat(q) => Some(q.clone()),
            Scalar::Cyc(_) => None,
        }
    }

    fn to_complex(&self) -> (f64, f64) {
        match self {
            Scalar::Rat(q) => (q.to_f64(), 0.0),
            Scalar::Cyc(c) => c.ctx.embed(&c.coeffs),
        }
    }

    fn to_scalar(&self) -> Scalar {
        self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs() {
        let phi = Scalar::two_cos_pi_over(5).unwrap();
        assert_eq!(phi.sign(), 1);
        assert_eq!((Scalar::from(1) - phi.clone()).sign(), -1);
        assert_eq!((phi.clone() * phi.clone() - phi - Scalar::from(1)).sign(), 0);
        assert!(Scalar::from(-3).is_negative());
    }

    #[test]
    fn golden_ratio_squares_to_itself_plus_one() {
        let phi = Scalar::two_cos_pi_over(5).unwrap();
        assert!(matches!(phi, Scalar::Cyc(_)));
        assert_eq!(&phi * &phi, &phi + &Scalar::one());
        let (re, _) = phi.to_complex();
        assert!((re - 1.618_033_988_749_895).abs() < 1e-12);
    }

    #[test]
    fn sqrt3_squared_is_rational() {
        let s = Scalar::two_cos_pi_over(6).unwrap();
        let sq = &s * &s;
        assert_eq!(sq, Scalar::int(3));
        assert!(matches!(sq, Scalar::Rat(_)));
    }

    #[test]
    fn division_by_self_is_one() {
        let phi = Scalar::two_cos_pi_over(5).unwrap();
        let a = &phi + &Scalar::int(3);
        assert_eq!(&a / &a, Scalar::one());
        assert_eq!(Scalar::int(0).checked_inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn context_mismatch_is_reported() {
        let a = Scalar::two_cos_pi_over(5).unwrap();
        let b = Scalar::two_cos_pi_over(7).unwrap();
        assert_eq!(a.checked_add(&b), Err(ScalarError::ContextMismatch(5, 7)));
    }

    #[test]
    fn rational_mixing_promotes() {
        let phi = Scalar::two_cos_pi_over(5).unwrap();
        let half = Scalar::from(Rational::new(1, 2));
        let x = &phi * &half;
        assert_eq!(&x + &x, phi);
        assert_eq!(&(&phi - &phi), &Scalar::zero());
    }
}
