use std::collections::HashMap;

use super::GroupError;
use crate::linalg::Matrix;
use crate::scalars::Field;

/// Finite matrix group enumerated by closure under right multiplication by
/// its generators. Matrices act on row vectors.
#[derive(Debug, Clone)]
pub struct MatrixGroup<F: Field> {
    dim: usize,
    generators: Vec<Matrix<F>>,
    elements: Vec<Matrix<F>>,
    index: HashMap<Matrix<F>, u32>,
    cap: usize,
}

impl<F: Field> MatrixGroup<F> {
    pub fn trivial(dim: usize, cap: usize) -> Self {
        let id = Matrix::identity(dim);
        let mut index = HashMap::new();
        index.insert(id.clone(), 0);
        MatrixGroup { dim, generators: Vec::new(), elements: vec![id], index, cap }
    }

    pub fn generated_by(dim: usize, gens: &[Matrix<F>], cap: usize) -> Result<Self, GroupError> {
        let mut g = Self::trivial(dim, cap);
        for m in gens {
            g.add_generator(m.clone())?;
        }
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Matrix<F>] {
        &self.generators
    }

    pub fn elements(&self) -> &[Matrix<F>] {
        &self.elements
    }

    pub fn contains(&self, m: &Matrix<F>) -> bool {
        self.index.contains_key(m)
    }

    /// Adds `g` and closes. Returns `false` when `g` was already a member.
    pub fn add_generator(&mut self, g: Matrix<F>) -> Result<bool, GroupError> {
        if self.contains(&g) {
            return Ok(false);
        }
        self.generators.push(g);
        let new_gen = self.generators.len() - 1;
        let old = self.elements.len();
        // Old elements are closed under the old generators; only the new
        // generator has to be applied to them.
        for i in 0..old {
            let prod = self.elements[i].mul(&self.generators[new_gen]);
            self.insert(prod)?;
        }
        let mut head = old;
        while head < self.elements.len() {
            for k in 0..self.generators.len() {
                let prod = self.elements[head].mul(&self.generators[k]);
                self.insert(prod)?;
            }
            head += 1;
        }
        Ok(true)
    }

    fn insert(&mut self, m: Matrix<F>) -> Result<(), GroupError> {
        if !self.index.contains_key(&m) {
            if self.elements.len() >= self.cap {
                return Err(GroupError::GroupOrderCap(self.cap));
            }
            self.index.insert(m.clone(), self.elements.len() as u32);
            self.elements.push(m);
        }
        Ok(())
    }

    /// Elements `g` with `g^2 = 1` whose fixed space has codimension one.
    pub fn reflections(&self) -> Vec<usize> {
        (0..self.elements.len()).filter(|&i| is_reflection(&self.elements[i])).collect()
    }

    /// Element counts per characteristic polynomial `det(tI - g)`, in a
    /// deterministic order.
    pub fn charpoly_classes(&self) -> Vec<(Vec<F>, u64)> {
        let mut counts: HashMap<Vec<F>, u64> = HashMap::new();
        let mut order = Vec::new();
        for g in &self.elements {
            let c = charpoly(g);
            let e = counts.entry(c.clone()).or_insert_with(|| {
                order.push(c);
                0
            });
            *e += 1;
        }
        order
            .into_iter()
            .map(|c| {
                let n = counts[&c];
                (c, n)
            })
            .collect()
    }
}

pub fn is_reflection<F: Field>(g: &Matrix<F>) -> bool {
    if g.is_identity() || !g.mul(g).is_identity() {
        return false;
    }
    let mut d = g.clone();
    for i in 0..d.rows() {
        let t = d[(i, i)].clone() - F::one();
        d[(i, i)] = t;
    }
    d.rank() == 1
}

/// Covector `γ` with `γ g = -γ` for a reflection `g` (row action), i.e. the
/// root of the reflection up to scaling.
pub fn reflection_root<F: Field>(g: &Matrix<F>) -> Vec<F> {
    let mut d = g.transpose();
    for i in 0..d.rows() {
        let t = d[(i, i)].clone() + F::one();
        d[(i, i)] = t;
    }
    let mut k = d.kernel();
    assert_eq!(k.len(), 1, "not a reflection");
    k.pop().unwrap()
}

/// Coefficients `c_0, ..., c_n` of `det(tI - A)` (monic, `c_n = 1`) by the
/// Faddeev–LeVerrier recursion.
pub fn charpoly<F: Field>(a: &Matrix<F>) -> Vec<F> {
    let n = a.rows();
    let mut c = vec![F::zero(); n + 1];
    c[n] = F::one();
    let mut m = Matrix::<F>::zeros(n, n);
    for k in 1..=n {
        let mut next = a.mul(&m);
        for i in 0..n {
            let t = next[(i, i)].clone() + &c[n - k + 1];
            next[(i, i)] = t;
        }
        m = next;
        let tr = a.mul(&m).trace();
        c[n - k] = -(tr / F::from_int(k as i64));
    }
    c
}
