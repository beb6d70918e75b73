use std::fmt;

use serde::Serialize;

use super::ArrangementError;
use crate::groupcalc::ExponentMultiset;

/// Integer polynomial `Σ c_k t^k`, stored from the constant term up.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CharPoly {
    pub coeffs: Vec<i128>,
}

impl CharPoly {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        CharPoly { coeffs }
    }

    /// `Π (t - e)`, padded by nothing.
    pub fn from_roots(roots: &[u32]) -> Self {
        let mut c = vec![1i128];
        for &e in roots {
            let mut next = vec![0i128; c.len() + 1];
            for (k, &a) in c.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= a * e as i128;
            }
            c = next;
        }
        CharPoly::new(c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, t: i128) -> i128 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    /// Quotient by `t - e` when the division is exact.
    fn divide_root(&self, e: i128) -> Option<CharPoly> {
        let n = self.degree();
        if n == 0 {
            return None;
        }
        let mut q = vec![0i128; n];
        let mut carry = 0i128;
        for k in (0..=n).rev() {
            let v = self.coeffs[k] + carry;
            if k == 0 {
                return if v == 0 { Some(CharPoly::new(q)) } else { None };
            }
            q[k - 1] = v;
            carry = v * e;
        }
        unreachable!()
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.abs();
            let body = match (k, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "t".to_string(),
                (1, m) => format!("{m}t"),
                (k, 1) => format!("t^{k}"),
                (k, m) => format!("{m}t^{k}"),
            };
            let sign = if c < 0 { "-" } else { "+" };
            terms.push((sign, body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (sign, body)) in terms.iter().enumerate() {
            if i == 0 {
                if *sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(body);
        }
        write!(f, "{out}")
    }
}

/// Factors `χ(t) = Π (t - e_i)` by trying integer roots `0..=bound`, where
/// `bound` defaults to the sum of absolute coefficients.
pub fn exponents_if_free(cp: &CharPoly) -> Result<ExponentMultiset, ArrangementError> {
    let bound: i128 = cp.coeffs.iter().map(|c| c.abs()).sum();
    let mut rest = cp.clone();
    let mut roots = Vec::new();
    if *cp.coeffs.last().unwrap() != 1 {
        return Err(ArrangementError::NotSplitting(cp.to_string()));
    }
    let mut e = 0i128;
    while rest.degree() > 0 && e <= bound {
        match rest.divide_root(e) {
            Some(q) => {
                roots.push(e as u32);
                rest = q;
            }
            None => e += 1,
        }
    }
    if rest.degree() > 0 {
        return Err(ArrangementError::NotSplitting(cp.to_string()));
    }
    Ok(ExponentMultiset::new(roots))
}
