use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use super::{Rational, ScalarError};

/// Largest bond parameter accepted for dihedral and H-type extensions.
pub const MAX_BOND: u32 = 60;

/// `Φ_n` as integer coefficients, lowest degree first.
fn cyclotomic_poly(n: u32, memo: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // x^n - 1
    let mut num = vec![0i128; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d, memo);
            num = exact_div_monic(&num, &phi_d);
        }
    }
    let out: Vec<i64> = num.into_iter().map(|c| c as i64).collect();
    memo.insert(n, out.clone());
    out
}

/// Divides `num` by the monic `den`, asserting the remainder vanishes.
fn exact_div_monic(num: &[i128], den: &[i64]) -> Vec<i128> {
    let dn = den.len() - 1;
    debug_assert_eq!(*den.last().unwrap(), 1);
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i128; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj as i128;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "cyclotomic division left a remainder");
    quot
}

/// The `2m`-th cyclotomic polynomial, coefficients lowest degree first.
pub fn cyclotomic_modulus(m: u32) -> Result<Vec<i64>, ScalarError> {
    if m < 3 {
        return Err(ScalarError::BondTooSmall(m));
    }
    if m > MAX_BOND {
        return Err(ScalarError::BondTooLarge(m, MAX_BOND));
    }
    let mut memo = HashMap::new();
    Ok(cyclotomic_poly(2 * m, &mut memo))
}

/// `ℚ(ζ)` with `ζ = e^{iπ/m}`, presented as `ℚ[x]/Φ_{2m}`.
pub struct CyclotomicContext {
    m: u32,
    modulus: Vec<i64>,
}

impl fmt::Debug for CyclotomicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", 2 * self.m)
    }
}

fn registry() -> &'static Mutex<HashMap<u32, Arc<CyclotomicContext>>> {
    static REG: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicContext>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl CyclotomicContext {
    /// Shared context for bond `m`; repeated calls return the same `Arc`.
    pub fn get(m: u32) -> Result<Arc<CyclotomicContext>, ScalarError> {
        let mut reg = registry().lock().expect("cyclotomic registry poisoned");
        if let Some(ctx) = reg.get(&m) {
            return Ok(ctx.clone());
        }
        let modulus = cyclotomic_modulus(m)?;
        let ctx = Arc::new(CyclotomicContext { m, modulus });
        reg.insert(m, ctx.clone());
        Ok(ctx)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// Reduces an arbitrary-length coefficient vector modulo `Φ_{2m}`.
    pub(crate) fn reduce(&self, mut c: Vec<Rational>) -> Vec<Rational> {
        let deg = self.degree();
        for k in (deg..c.len()).rev() {
            let lead = std::mem::take(&mut c[k]);
            if lead.is_zero() {
                continue;
            }
            for (j, &mj) in self.modulus[..deg].iter().enumerate() {
                if mj != 0 {
                    let t = &lead * Rational::from_integer(mj);
                    c[k - deg + j] -= t;
                }
            }
        }
        c.truncate(deg);
        c.resize(deg, Rational::ZERO);
        c
    }

    pub(crate) fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::ZERO; a.len() + b.len()];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    out[i + j] += ai * bj;
                }
            }
        }
        self.reduce(out)
    }

    /// Inverse modulo `Φ_{2m}` by the extended Euclidean algorithm over `ℚ[x]`.
    pub(crate) fn inverse(&self, a: &[Rational]) -> Option<Vec<Rational>> {
        let modulus: Vec<Rational> = self.modulus.iter().map(|&c| Rational::from_integer(c)).collect();
        // invariant: s * a ≡ r0 and t * a ≡ r1 (mod Φ)
        let mut r0 = trim(modulus);
        let mut r1 = trim(a.to_vec());
        if r1.is_empty() {
            return None;
        }
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![Rational::ONE];
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                return None;
            }
        }
        let c = r1[0].recip();
        let inv: Vec<Rational> = s1.iter().map(|x| x * &c).collect();
        Some(self.reduce(inv))
    }

    /// Coefficients of `x + x^{-1} = 2cos(π/m)`.
    pub fn cos2(&self) -> Vec<Rational> {
        let deg = self.degree();
        let mut x = vec![Rational::ZERO; deg];
        x[1] = Rational::ONE;
        let xinv = self.inverse(&x).expect("x is a unit");
        x.iter().zip(&xinv).map(|(a, b)| a + b).collect()
    }

    pub fn embed(&self, c: &[Rational]) -> (f64, f64) {
        let theta = PI / self.m as f64;
        c.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, ck)| {
            let v = ck.to_f64();
            (re + v * (theta * k as f64).cos(), im + v * (theta * k as f64).sin())
        })
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::ZERO; a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x - y
        })
        .collect();
    trim(out)
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), trim(rem));
    }
    let lead_inv = b.last().unwrap().recip();
    let mut quot = vec![Rational::ZERO; rem.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + b.len() - 1] * &lead_inv;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
        }
        quot[k] = c;
    }
    (trim(quot), trim(rem))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent construction: multiply all `Φ_d` for `d | n` and compare
    /// with `x^n - 1`.
    fn product_of_divisors(n: u32) -> Vec<i128> {
        let mut memo = HashMap::new();
        let mut acc = vec![1i128];
        for d in 1..=n {
            if n % d == 0 {
                let p = cyclotomic_poly(d, &mut memo);
                let mut next = vec![0i128; acc.len() + p.len() - 1];
                for (i, a) in acc.iter().enumerate() {
                    for (j, b) in p.iter().enumerate() {
                        next[i + j] += a * *b as i128;
                    }
                }
                acc = next;
            }
        }
        acc
    }

    #[test]
    fn modulus_rejects_crystallographic_bond() {
        assert_eq!(cyclotomic_modulus(2), Err(ScalarError::BondTooSmall(2)));
        assert!(cyclotomic_modulus(61).is_err());
    }

    #[test]
    fn phi_10_and_phi_12() {
        assert_eq!(cyclotomic_modulus(5).unwrap(), vec![1, -1, 1, -1, 1]);
        assert_eq!(cyclotomic_modulus(6).unwrap(), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn divisor_product_is_x_n_minus_one() {
        for m in 3..=30 {
            let n = 2 * m;
            let prod = product_of_divisors(n);
            let mut expect = vec![0i128; n as usize + 1];
            expect[0] = -1;
            expect[n as usize] = 1;
            assert_eq!(prod, expect, "n = {n}");
        }
    }

    #[test]
    fn modulus_vanishes_at_primitive_root() {
        for m in 3..=MAX_BOND {
            let p = cyclotomic_modulus(m).unwrap();
            let theta = PI / m as f64;
            let (re, im) = p.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, &c)| {
                (re + c as f64 * (theta * k as f64).cos(), im + c as f64 * (theta * k as f64).sin())
            });
            assert!((re * re + im * im).sqrt() < 1e-9, "m = {m}");
        }
    }

    #[test]
    fn cos2_embeds_to_twice_cosine() {
        for m in 3..=20 {
            let ctx = CyclotomicContext::get(m).unwrap();
            let (re, im) = ctx.embed(&ctx.cos2());
            assert!((re - 2.0 * (PI / m as f64).cos()).abs() < 1e-9);
            assert!(im.abs() < 1e-9);
        }
    }
}
