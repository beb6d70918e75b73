use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use crate::scalars::{Field, Rational, Scalar};

/// Sparse multivariate polynomial over an exact field.
///
/// Terms are keyed by exponent vectors in a `BTreeMap`, so iteration order
/// and every printed form are deterministic. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePoly<F> {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, F>,
}

impl<F: Field> SparsePoly<F> {
    pub fn zero(vars: Vec<String>) -> Self {
        SparsePoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vec<String>, c: F) -> Self {
        let n = vars.len();
        let mut p = Self::zero(vars);
        p.add_term(vec![0; n], c);
        p
    }

    pub fn variable(vars: Vec<String>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, F::one());
        p
    }

    /// `Σ c_i x_i`.
    pub fn linear(vars: Vec<String>, coeffs: &[F]) -> Self {
        assert_eq!(vars.len(), coeffs.len(), "coefficient count must match variables");
        let n = vars.len();
        let mut p = Self::zero(vars);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms(vars: Vec<String>, terms: impl IntoIterator<Item = (Vec<u32>, F)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent vector length must match variables");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, F> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> F {
        self.terms.get(exps).cloned().unwrap_or_else(F::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    fn add_term(&mut self, e: Vec<u32>, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn check_same_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "polynomials live in different rings");
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        SparsePoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v.clone() * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.vars.clone(), F::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut p = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                p.add_term(f, c.clone() * &F::from_int(e[i] as i64));
            }
        }
        p
    }

    /// Directional derivative `Σ v_i ∂/∂x_i`.
    pub fn directional_derivative(&self, v: &[F]) -> Self {
        let mut p = Self::zero(self.vars.clone());
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                p = &p + &self.derivative(i).scale(c);
            }
        }
        p
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars(), "point dimension must match variables");
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t * x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Linear change of variables: `x_i ↦ Σ_j forms[i][j] y_j`.
    pub fn substitute_linear(&self, new_vars: Vec<String>, forms: &[Vec<F>]) -> Self {
        assert_eq!(forms.len(), self.nvars(), "one form per variable");
        let linear: Vec<SparsePoly<F>> = forms.iter().map(|f| SparsePoly::linear(new_vars.clone(), f)).collect();
        let mut powers: Vec<Vec<SparsePoly<F>>> =
            linear.iter().map(|l| vec![SparsePoly::constant(new_vars.clone(), F::one()), l.clone()]).collect();
        let mut out = SparsePoly::zero(new_vars.clone());
        for (e, c) in &self.terms {
            let mut t = SparsePoly::constant(new_vars.clone(), c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &linear[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Sets every variable outside `keep` to zero and drops it.
    pub fn restrict_to(&self, keep: &[usize]) -> Self {
        let vars: Vec<String> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let vanishes = e.iter().enumerate().any(|(i, &k)| k > 0 && !keep.contains(&i));
            if !vanishes {
                out.add_term(keep.iter().map(|&i| e[i]).collect(), c.clone());
            }
        }
        out
    }

    /// The term that comes last in lexicographic exponent order.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &F)> {
        self.terms.iter().next_back()
    }

    /// Audit format: variable labels and `[exponents, {num, den}]` terms,
    /// with each coefficient written as an integer vector over a common
    /// denominator in the power basis of its field.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms.iter().map(|(e, c)| json!([e, scalar_json(&c.to_scalar())])).collect();
        json!({ "variables": self.vars, "terms": terms })
    }
}

/// `{ "num": [..], "den": "d" }` with integers as decimal strings.
pub fn scalar_json(s: &Scalar) -> Value {
    let coeffs: Vec<Rational> = match s {
        Scalar::Rat(q) => vec![q.clone()],
        Scalar::Cyc(c) => c.coeffs().to_vec(),
    };
    let mut den = num_bigint::BigInt::from(1);
    for q in &coeffs {
        den = num_integer::lcm(den, q.denom());
    }
    let num: Vec<String> = coeffs.iter().map(|q| (q.numer() * (&den / q.denom())).to_string()).collect();
    json!({ "num": num, "den": den.to_string() })
}

impl<'a, F: Field> Add for &'a SparsePoly<F> {
    type Output = SparsePoly<F>;
    fn add(self, rhs: Self) -> SparsePoly<F> {
        self.check_same_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a, F: Field> Sub for &'a SparsePoly<F> {
    type Output = SparsePoly<F>;
    fn sub(self, rhs: Self) -> SparsePoly<F> {
        self.check_same_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a, F: Field> Mul for &'a SparsePoly<F> {
    type Output = SparsePoly<F>;
    fn mul(self, rhs: Self) -> SparsePoly<F> {
        self.check_same_vars(rhs);
        let mut out = SparsePoly::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2);
            }
        }
        out
    }
}

impl<'a, F: Field> Neg for &'a SparsePoly<F> {
    type Output = SparsePoly<F>;
    fn neg(self) -> SparsePoly<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> fmt::Display for SparsePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], k) })
                    .collect();
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Field> fmt::Debug for SparsePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly[{}]({self})", self.vars.join(","))
    }
}
