use num_traits::{One, Zero};

use super::exponents::ExponentMultiset;
use super::matgroup::MatrixGroup;
use super::GroupError;
use crate::scalars::{Field, Rational, Scalar};

/// Power-series inverse of `p` (with `p[0]` invertible) up to `t^n`.
pub fn series_inverse(p: &[Scalar], n: usize) -> Vec<Scalar> {
    let inv0 = p[0].inv();
    let mut out = vec![Scalar::zero(); n + 1];
    out[0] = inv0.clone();
    for k in 1..=n {
        let mut acc = Scalar::zero();
        for j in 1..=k.min(p.len() - 1) {
            if !p[j].is_zero() && !out[k - j].is_zero() {
                acc += p[j].clone() * &out[k - j];
            }
        }
        out[k] = -(acc * &inv0);
    }
    out
}

/// Coefficients of `(1/|G|) Σ_g 1/det(1 - t g)` for `t^0 .. t^max_degree`.
pub fn molien_series<F: Field>(group: &MatrixGroup<F>, max_degree: usize) -> Result<Vec<u64>, GroupError> {
    let n = group.dim();
    let mut total = vec![Scalar::zero(); max_degree + 1];
    for (cp, count) in group.charpoly_classes() {
        // det(1 - t g) is the reversed characteristic polynomial.
        let rev: Vec<Scalar> = (0..=n).map(|k| cp[n - k].to_scalar()).collect();
        let inv = series_inverse(&rev, max_degree);
        let c = Scalar::from(count as i64);
        for (t, s) in total.iter_mut().zip(inv) {
            *t += s * &c;
        }
    }
    let order = Scalar::from(group.order() as i64);
    total
        .into_iter()
        .map(|x| {
            let q = (x / &order).as_rational().ok_or(GroupError::NonIntegralMolien)?;
            q.to_i64().filter(|&v| v >= 0 && q.is_integer()).map(|v| v as u64).ok_or(GroupError::NonIntegralMolien)
        })
        .collect()
}

/// Dimension of the degree-`d` part of a polynomial algebra with generators
/// of the given degrees, for `d = 0..=max_degree`.
pub fn free_algebra_series(degrees: &[u32], max_degree: usize) -> Vec<u64> {
    let mut s = vec![0u64; max_degree + 1];
    s[0] = 1;
    for &d in degrees {
        let d = d as usize;
        if d == 0 {
            continue;
        }
        for k in d..=max_degree {
            s[k] += s[k - d];
        }
    }
    s
}

/// Peels factors `1/(1 - t^d)` off a Molien series. Succeeds when the series
/// equals `Π 1/(1 - t^{d_i})` with `dim` factors up to the truncation and
/// `Π d_i = order`.
pub fn reflection_degrees(molien: &[u64], dim: usize, order: u128) -> Result<ExponentMultiset, GroupError> {
    let n = molien.len() - 1;
    let mut p: Vec<i128> = molien.iter().map(|&x| x as i128).collect();
    let mut degrees = Vec::new();
    loop {
        let Some(d) = (1..=n).find(|&k| p[k] != 0) else { break };
        if p[d] < 0 || degrees.len() == dim {
            return Err(GroupError::NotAReflectionGroup);
        }
        for k in (d..=n).rev() {
            p[k] -= p[k - d];
        }
        degrees.push(d as u32);
    }
    let prod: u128 = degrees.iter().map(|&d| d as u128).product();
    if degrees.len() != dim || prod != order {
        return Err(GroupError::NotAReflectionGroup);
    }
    let largest = *degrees.iter().max().unwrap_or(&0) as usize;
    if n < largest {
        return Err(GroupError::NotAReflectionGroup);
    }
    Ok(ExponentMultiset::new(degrees.iter().map(|d| d - 1).collect()))
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * Rational::from_integer((n - i) as i64) / Rational::from_integer((i + 1) as i64);
    }
    acc.to_i64().unwrap() as u64
}
