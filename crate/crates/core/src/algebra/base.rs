//! Finite-dimensional graded-commutative algebras with a Poincaré pairing.

use std::collections::HashMap;
use std::fmt;

use crate::error::AlgebraError;
use crate::linalg::{self, Rational, SparseMatrix};

/// One basis vector of a [`BaseAlgebra`].
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct BasisElement {
    pub label: String,
    pub degree: u32,
    pub weight: u32,
}

/// A dense vector in the basis of a [`BaseAlgebra`].
pub type BaseVector = Vec<Rational>;

/// Structure constants stored as a dense `dim x dim` table of sparse results.
#[derive(Clone)]
pub struct BaseAlgebra {
    name: String,
    n: u32,
    basis: Vec<BasisElement>,
    table: Vec<Vec<(usize, Rational)>>,
    unit: usize,
    fundamental: usize,
    labels: HashMap<String, usize>,
}

impl fmt::Debug for BaseAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BaseAlgebra")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("dim", &self.dim())
            .finish()
    }
}

impl BaseAlgebra {
    /// Builds and validates an algebra.
    ///
    /// `products` lists `(i, j, b_i * b_j)`; pairs that are not listed multiply
    /// to zero.
    pub fn new(
        name: impl Into<String>,
        n: u32,
        basis: Vec<BasisElement>,
        unit: usize,
        fundamental: usize,
        products: impl IntoIterator<Item = (usize, usize, Vec<(usize, Rational)>)>,
    ) -> Result<Self, AlgebraError> {
        let alg = Self::new_unchecked(name, n, basis, unit, fundamental, products)?;
        alg.validate()?;
        Ok(alg)
    }

    /// Builds without checking the algebra laws. Index and label errors are
    /// still reported.
    pub fn new_unchecked(
        name: impl Into<String>,
        n: u32,
        basis: Vec<BasisElement>,
        unit: usize,
        fundamental: usize,
        products: impl IntoIterator<Item = (usize, usize, Vec<(usize, Rational)>)>,
    ) -> Result<Self, AlgebraError> {
        let dim = basis.len();
        if unit >= dim || fundamental >= dim {
            return Err(AlgebraError::Malformed("unit or fundamental index out of range".into()));
        }
        let mut labels = HashMap::new();
        for (i, b) in basis.iter().enumerate() {
            if labels.insert(b.label.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateLabel(b.label.clone()));
            }
        }
        let mut table = vec![Vec::new(); dim * dim];
        for (i, j, value) in products {
            if i >= dim || j >= dim || value.iter().any(|(k, _)| *k >= dim) {
                return Err(AlgebraError::Malformed(format!("product ({i}, {j}) has an index out of range")));
            }
            let m = SparseMatrix::from_rows(dim, vec![value]);
            table[i * dim + j] = m.into_rows().pop().unwrap();
        }
        Ok(BaseAlgebra {
            name: name.into(),
            n,
            basis,
            table,
            unit,
            fundamental,
            labels,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Complex dimension; the top degree is `2n`.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.basis[i].degree
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.basis[i].weight
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.get(label).copied()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn fundamental(&self) -> usize {
        self.fundamental
    }

    /// `b_i * b_j` in the basis.
    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i * self.dim() + j]
    }

    pub fn betti(&self) -> Vec<usize> {
        let mut b = vec![0; 2 * self.n as usize + 1];
        for e in &self.basis {
            if (e.degree as usize) >= b.len() {
                b.resize(e.degree as usize + 1, 0);
            }
            b[e.degree as usize] += 1;
        }
        b
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.basis
            .iter()
            .map(|e| if e.degree % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    pub fn basis_vector(&self, i: usize) -> BaseVector {
        let mut v = vec![Rational::ZERO; self.dim()];
        v[i] = Rational::ONE;
        v
    }

    pub fn zero_vector(&self) -> BaseVector {
        vec![Rational::ZERO; self.dim()]
    }

    pub fn mul_vec(&self, a: &[Rational], b: &[Rational]) -> BaseVector {
        let mut out = self.zero_vector();
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (k, c) in self.mul_basis(i, j) {
                    out[*k] += &(&xy * c);
                }
            }
        }
        out
    }

    /// Coefficient of the fundamental class in `b_i * b_j`.
    pub fn pairing(&self, i: usize, j: usize) -> Rational {
        self.mul_basis(i, j)
            .iter()
            .find(|(k, _)| *k == self.fundamental)
            .map(|(_, c)| c.clone())
            .unwrap_or(Rational::ZERO)
    }

    /// Indices of basis elements in degree `d`, in basis order.
    pub fn indices_in_degree(&self, d: u32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].degree == d).collect()
    }

    /// Checks every law, reporting the first violation.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let dim = self.dim();
        let top = 2 * self.n;
        if self.degree(self.unit) != 0 {
            return Err(AlgebraError::UnitLaw(format!(
                "unit {} has degree {}",
                self.label(self.unit),
                self.degree(self.unit)
            )));
        }
        if self.degree(self.fundamental) != top {
            return Err(AlgebraError::Fundamental(format!(
                "fundamental class {} has degree {}, expected {top}",
                self.label(self.fundamental),
                self.degree(self.fundamental)
            )));
        }
        if let Some(b) = self.basis.iter().find(|b| b.degree > top) {
            return Err(AlgebraError::Fundamental(format!(
                "{} has degree {} above the top degree {top}",
                b.label, b.degree
            )));
        }
        for i in 0..dim {
            let e = vec![(i, Rational::ONE)];
            if self.mul_basis(self.unit, i) != e.as_slice() || self.mul_basis(i, self.unit) != e.as_slice() {
                return Err(AlgebraError::UnitLaw(format!(
                    "{} * {} != {}",
                    self.label(self.unit),
                    self.label(i),
                    self.label(i)
                )));
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for (k, _) in self.mul_basis(i, j) {
                    if self.degree(*k) != self.degree(i) + self.degree(j) {
                        return Err(AlgebraError::DegreeAdditivity {
                            left: self.label(i).into(),
                            right: self.label(j).into(),
                            term: self.label(*k).into(),
                        });
                    }
                    if self.weight(*k) != self.weight(i) + self.weight(j) {
                        return Err(AlgebraError::WeightAdditivity {
                            left: self.label(i).into(),
                            right: self.label(j).into(),
                            term: self.label(*k).into(),
                        });
                    }
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let sign = if self.degree(i) % 2 == 1 && self.degree(j) % 2 == 1 {
                    -Rational::ONE
                } else {
                    Rational::ONE
                };
                let ij = self.mul_basis(i, j);
                let ji: Vec<(usize, Rational)> =
                    self.mul_basis(j, i).iter().map(|(k, c)| (*k, c * &sign)).collect();
                if ij != ji.as_slice() {
                    return Err(AlgebraError::GradedCommutativity {
                        left: self.label(i).into(),
                        right: self.label(j).into(),
                    });
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let left = self.mul_vec(&self.mul_vec(&self.basis_vector(i), &self.basis_vector(j)), &self.basis_vector(k));
                    let right = self.mul_vec(&self.basis_vector(i), &self.mul_vec(&self.basis_vector(j), &self.basis_vector(k)));
                    if left != right {
                        return Err(AlgebraError::Associativity {
                            a: self.label(i).into(),
                            b: self.label(j).into(),
                            c: self.label(k).into(),
                        });
                    }
                }
            }
        }
        for d in 0..=top {
            let rows = self.indices_in_degree(d);
            let cols = self.indices_in_degree(top - d);
            let block: Vec<Vec<Rational>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| self.pairing(i, j)).collect())
                .collect();
            let r = linalg::rank(&SparseMatrix::from_dense(cols.len(), &block));
            if rows.len() != cols.len() || r != rows.len() {
                return Err(AlgebraError::DegeneratePairing { degree: d, complement: top - d });
            }
        }
        Ok(())
    }

    /// Künneth tensor product `self ⊗ other`.
    ///
    /// The basis element `a_i ⊗ b_j` gets index `i + j * self.dim()`, so the
    /// first factor varies fastest. Products carry the Koszul sign
    /// `(a ⊗ b)(a' ⊗ b') = (-1)^{|b||a'|} aa' ⊗ bb'`.
    pub fn tensor_product(&self, other: &BaseAlgebra) -> BaseAlgebra {
        let (da, db) = (self.dim(), other.dim());
        let idx = |i: usize, j: usize| i + j * da;
        let mut basis = Vec::with_capacity(da * db);
        for j in 0..db {
            for i in 0..da {
                basis.push(BasisElement {
                    label: format!("{}⊗{}", self.label(i), other.label(j)),
                    degree: self.degree(i) + other.degree(j),
                    weight: self.weight(i) + other.weight(j),
                });
            }
        }
        let mut products = Vec::new();
        for j in 0..db {
            for i in 0..da {
                for j2 in 0..db {
                    for i2 in 0..da {
                        let sign = if other.degree(j) % 2 == 1 && self.degree(i2) % 2 == 1 {
                            -Rational::ONE
                        } else {
                            Rational::ONE
                        };
                        let mut value = Vec::new();
                        for (ka, ca) in self.mul_basis(i, i2) {
                            for (kb, cb) in other.mul_basis(j, j2) {
                                value.push((idx(*ka, *kb), &(ca * cb) * &sign));
                            }
                        }
                        if !value.is_empty() {
                            products.push((idx(i, j), idx(i2, j2), value));
                        }
                    }
                }
            }
        }
        BaseAlgebra::new_unchecked(
            format!("{}×{}", self.name, other.name),
            self.n + other.n,
            basis,
            idx(self.unit, other.unit),
            idx(self.fundamental, other.fundamental),
            products,
        )
        .expect("tensor product indices are in range")
    }

    /// `r`-fold tensor power. Index of `b_{t_0} ⊗ ... ⊗ b_{t_{r-1}}` is
    /// `Σ_a t_a · dim^a` (see [`tensor_index`]).
    pub fn tensor_power(&self, r: usize) -> BaseAlgebra {
        assert!(r >= 1, "tensor power needs r >= 1");
        let mut acc = self.clone();
        for _ in 1..r {
            acc = acc.tensor_product(self);
        }
        acc.name = if r == 1 { self.name.clone() } else { format!("{}^{}", self.name, r) };
        acc
    }

    pub(crate) fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// Index in `tensor_power(r)` of the tensor with factor indices `tuple`.
pub fn tensor_index(dim: usize, tuple: &[usize]) -> usize {
    tuple.iter().rev().fold(0, |acc, &t| acc * dim + t)
}

/// Inverse of [`tensor_index`].
pub fn tensor_tuple(dim: usize, r: usize, mut index: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(r);
    for _ in 0..r {
        out.push(index % dim);
        index /= dim;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::presets;

    #[test]
    fn tensor_index_roundtrip() {
        for i in 0..27 {
            assert_eq!(tensor_index(3, &tensor_tuple(3, 3, i)), i);
        }
    }

    #[test]
    fn tensor_power_one_is_copy() {
        let p2 = presets::projective_space(2);
        let t = p2.tensor_power(1);
        assert_eq!(t.dim(), 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(t.mul_basis(i, j), p2.mul_basis(i, j));
            }
        }
    }

    #[test]
    fn p1_squared() {
        let p1 = presets::projective_space(1);
        let t = p1.tensor_power(2);
        t.validate().unwrap();
        assert_eq!(t.dim(), 4);
        assert_eq!(t.betti(), vec![1, 0, 2, 0, 1]);
    }

    #[test]
    fn genus_one_squared_koszul() {
        let s = presets::surface(1);
        let t = s.tensor_power(2);
        assert_eq!(t.dim(), 16);
        t.validate().unwrap();
        let a = s.index_of("a1").unwrap();
        let a_1 = tensor_index(4, &[a, s.unit()]);
        let one_a = tensor_index(4, &[s.unit(), a]);
        let lr = t.mul_basis(a_1, one_a).to_vec();
        let rl = t.mul_basis(one_a, a_1).to_vec();
        assert_eq!(lr.len(), 1);
        assert_eq!(lr[0].0, tensor_index(4, &[a, a]));
        assert_eq!(lr[0].1, Rational::ONE);
        assert_eq!(rl[0].1, -Rational::ONE);
    }

    #[test]
    fn euler_characteristics_of_presets() {
        for n in 1..=4 {
            assert_eq!(presets::projective_space(n).euler_characteristic(), n as i64 + 1);
        }
        for g in 0..=3 {
            assert_eq!(presets::surface(g).euler_characteristic(), 2 - 2 * g as i64);
        }
        let p = presets::projective_space(1).tensor_product(&presets::projective_space(2));
        assert_eq!(p.euler_characteristic(), 6);
        let s = presets::surface(2).tensor_product(&presets::projective_space(1));
        assert_eq!(s.euler_characteristic(), -4);
    }

    #[test]
    fn validation_failures_are_named() {
        let basis = vec![
            BasisElement { label: "1".into(), degree: 0, weight: 0 },
            BasisElement { label: "x".into(), degree: 2, weight: 2 },
        ];
        let one = Rational::ONE;
        let unit_products = vec![
            (0, 0, vec![(0, one.clone())]),
            (0, 1, vec![(1, one.clone())]),
            (1, 0, vec![(1, one.clone())]),
        ];
        // x * x should vanish in P^1; a wrong degree is reported.
        let mut bad = unit_products.clone();
        bad.push((1, 1, vec![(1, one.clone())]));
        let err = BaseAlgebra::new("bad", 1, basis.clone(), 0, 1, bad).unwrap_err();
        assert!(matches!(err, AlgebraError::DegreeAdditivity { .. }), "{err}");
        // Missing the unit product on one side.
        let err = BaseAlgebra::new("bad", 1, basis.clone(), 0, 1, unit_products[..2].to_vec()).unwrap_err();
        assert!(matches!(err, AlgebraError::UnitLaw(_)), "{err}");
        assert!(BaseAlgebra::new("ok", 1, basis, 0, 1, unit_products).is_ok());
    }
}
