//! Built-in cohomology rings and Chern data.

use crate::algebra::{BaseAlgebra, BaseVector, BasisElement};
use crate::linalg::Rational;

fn basis_element(label: impl Into<String>, degree: u32) -> BasisElement {
    BasisElement {
        label: label.into(),
        degree,
        weight: degree,
    }
}

/// `H*(P^n) = Q[x]/x^{n+1}` with `|x| = 2`.
pub fn projective_space(n: u32) -> BaseAlgebra {
    assert!(n >= 1, "projective space needs n >= 1");
    let label = |i: u32| match i {
        0 => "1".to_string(),
        1 => "x".to_string(),
        _ => format!("x^{i}"),
    };
    let basis = (0..=n).map(|i| basis_element(label(i), 2 * i)).collect();
    let mut products = Vec::new();
    for i in 0..=n {
        for j in 0..=n - i {
            products.push((i as usize, j as usize, vec![((i + j) as usize, Rational::ONE)]));
        }
    }
    BaseAlgebra::new(format!("P{n}"), n, basis, 0, n as usize, products).expect("P^n is a Poincaré duality algebra")
}

/// Closed orientable surface of genus `g`: basis `1, a_i, b_i, X` with
/// `a_i b_i = X = -b_i a_i`.
pub fn surface(g: u32) -> BaseAlgebra {
    let mut basis = vec![basis_element("1", 0)];
    for i in 1..=g {
        basis.push(basis_element(format!("a{i}"), 1));
    }
    for i in 1..=g {
        basis.push(basis_element(format!("b{i}"), 1));
    }
    basis.push(basis_element("X", 2));
    let top = basis.len() - 1;
    let mut products = Vec::new();
    for k in 0..=top {
        products.push((0, k, vec![(k, Rational::ONE)]));
        if k != 0 {
            products.push((k, 0, vec![(k, Rational::ONE)]));
        }
    }
    for i in 1..=g as usize {
        let (a, b) = (i, i + g as usize);
        products.push((a, b, vec![(top, Rational::ONE)]));
        products.push((b, a, vec![(top, -Rational::ONE)]));
    }
    BaseAlgebra::new(format!("S{g}"), 1, basis, 0, top, products).expect("surface is a Poincaré duality algebra")
}

/// Total Chern class of `Ω¹` for `P^n`: `c_i = (-1)^i C(n+1, i) x^i`.
pub fn projective_space_chern(n: u32) -> Vec<BaseVector> {
    let mut binom = Rational::ONE;
    (0..=n)
        .map(|i| {
            let mut v = vec![Rational::ZERO; n as usize + 1];
            let c = if i % 2 == 0 { binom.clone() } else { -&binom };
            v[i as usize] = c;
            binom = &(&binom * &Rational::from_integer((n + 1 - i) as i64)) / &Rational::from_integer(i as i64 + 1);
            v
        })
        .collect()
}

/// `c(Ω¹) = 1 + (2g - 2) X` for a genus-`g` surface.
pub fn surface_chern(g: u32) -> Vec<BaseVector> {
    let dim = 2 * g as usize + 2;
    let mut c0 = vec![Rational::ZERO; dim];
    c0[0] = Rational::ONE;
    let mut c1 = vec![Rational::ZERO; dim];
    c1[dim - 1] = Rational::from_integer(2 * g as i64 - 2);
    vec![c0, c1]
}

/// Whitney sum formula for `Ω¹_{X×Y} = pr_X^*Ω¹_X ⊕ pr_Y^*Ω¹_Y`.
pub fn product_chern(left: &BaseAlgebra, cl: &[BaseVector], right: &BaseAlgebra, cr: &[BaseVector]) -> Vec<BaseVector> {
    let da = left.dim();
    let n = cl.len() + cr.len() - 2;
    let mut out = vec![vec![Rational::ZERO; da * right.dim()]; n + 1];
    for (i, a) in cl.iter().enumerate() {
        for (j, b) in cr.iter().enumerate() {
            for (ia, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (jb, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                    // even-degree classes: no Koszul sign
                    out[i + j][ia + jb * da] += &(x * y);
                }
            }
        }
    }
    out
}
