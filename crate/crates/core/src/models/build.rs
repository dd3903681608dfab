//! Builders for the configuration-space models and their marked variants.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{tensor_index, BaseAlgebra, BaseVector, Context, Element, GeneratorSpec};
use crate::cdga::{ModelLayout, ModelMeta, Presentation};
use crate::error::CdgaError;
use crate::linalg::{rref, Rational, SparseMatrix};

use super::space::{check_degree, ChernData};

/// `b_j^∨` for every basis element, characterised by
/// `⟨b_i, b_j^∨⟩ = δ_ij` on complementary degree blocks.
pub fn dual_basis(base: &BaseAlgebra) -> Result<Vec<BaseVector>, CdgaError> {
    let top = 2 * base.n();
    let mut out = vec![Vec::new(); base.dim()];
    for d in 0..=top {
        let rows = base.indices_in_degree(d);
        let cols = base.indices_in_degree(top - d);
        if rows.is_empty() {
            continue;
        }
        if rows.len() != cols.len() {
            return Err(crate::error::AlgebraError::DegeneratePairing {
                degree: d,
                complement: top - d,
            }
            .into());
        }
        // Invert the pairing block M through rref of [M | I]; the dual of
        // b_rows[k] has coordinates (M^{-1})_{j,k} on b_cols[j].
        let k = rows.len();
        let mut entries = Vec::new();
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                entries.push((a, b, base.pairing(i, j)));
            }
            entries.push((a, k + a, Rational::ONE));
        }
        let red = rref(&SparseMatrix::from_triplets(k, 2 * k, entries));
        if red.rank != k || red.pivots.iter().any(|&p| p >= k) {
            return Err(crate::error::AlgebraError::DegeneratePairing {
                degree: d,
                complement: top - d,
            }
            .into());
        }
        let inv = red.reduced.to_dense();
        for (a, &i) in rows.iter().enumerate() {
            let mut v = base.zero_vector();
            for (b, &j) in cols.iter().enumerate() {
                v[j] = inv[b][k + a].clone();
            }
            out[i] = v;
        }
    }
    Ok(out)
}

/// The class of the diagonal in `H*(X) ⊗ H*(X)` (index `i + j·dim`),
/// `Δ = Σ_j (−1)^{|b_j|} b_j ⊗ b_j^∨`.
///
/// Checked on construction: `(x⊗1 − 1⊗x)·Δ = 0` for every basis element `x`,
/// and the `[X]⊗[X]` coefficient of `Δ·Δ` equals `χ(X)`.
pub fn diagonal_class(base: &BaseAlgebra) -> Result<BaseVector, CdgaError> {
    let duals = dual_basis(base)?;
    let square = base.tensor_product(base);
    let dim = base.dim();
    let mut delta = square.zero_vector();
    for (j, dual) in duals.iter().enumerate() {
        let sign = if base.degree(j) % 2 == 1 { -Rational::ONE } else { Rational::ONE };
        for (k, c) in dual.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            delta[j + k * dim] += &(&sign * c);
        }
    }
    for x in 0..dim {
        let left = square.basis_vector(x + base.unit() * dim);
        let right = square.basis_vector(base.unit() + x * dim);
        let diff: Vec<Rational> = left.iter().zip(&right).map(|(a, b)| a - b).collect();
        if square.mul_vec(&diff, &delta).iter().any(|c| !c.is_zero()) {
            return Err(CdgaError::Verification(format!(
                "diagonal class is not annihilated by {0}⊗1 − 1⊗{0}",
                base.label(x)
            )));
        }
    }
    let self_intersection = &square.mul_vec(&delta, &delta)[square.fundamental()];
    if *self_intersection != Rational::from_integer(base.euler_characteristic()) {
        return Err(CdgaError::Verification(format!(
            "diagonal self-intersection {self_intersection} differs from the Euler characteristic"
        )));
    }
    Ok(delta)
}

/// `π_a^*(v)` in the `r`-th tensor power.
pub fn pull_back(base: &BaseAlgebra, r: usize, a: usize, v: &[Rational]) -> BaseVector {
    let dim = base.dim();
    let mut out = vec![Rational::ZERO; dim.pow(r as u32)];
    let mut tuple = vec![base.unit(); r];
    for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        tuple[a] = i;
        out[tensor_index(dim, &tuple)] = c.clone();
    }
    out
}

/// `π_{ab}^*(w)` for `a < b` and `w` in the square (index `i + j·dim`).
pub fn pull_back_pair(base: &BaseAlgebra, r: usize, a: usize, b: usize, w: &[Rational]) -> BaseVector {
    debug_assert!(a < b);
    let dim = base.dim();
    let mut out = vec![Rational::ZERO; dim.pow(r as u32)];
    let mut tuple = vec![base.unit(); r];
    for (idx, c) in w.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        tuple[a] = idx % dim;
        tuple[b] = idx / dim;
        out[tensor_index(dim, &tuple)] = c.clone();
    }
    out
}

fn pair_label(r: usize, a: usize, b: usize) -> String {
    if r < 10 {
        format!("G{}{}", a + 1, b + 1)
    } else {
        format!("G{},{}", a + 1, b + 1)
    }
}

struct Skeleton {
    ctx: Arc<Context>,
    layout: ModelLayout,
    relations: Vec<Element>,
    differential: Vec<Element>,
}

fn skeleton(base: &BaseAlgebra, r: usize, marked: bool) -> Result<Skeleton, CdgaError> {
    if r == 0 {
        return Err(CdgaError::InvalidModel("r must be at least 1".into()));
    }
    let n = base.n();
    let power = Arc::new(base.tensor_power(r));
    let mut gens = Vec::new();
    let mut layout = ModelLayout {
        r,
        factor_dim: base.dim(),
        ..Default::default()
    };
    for a in 0..r {
        for b in a + 1..r {
            layout.pairs.insert((a, b), gens.len());
            gens.push(GeneratorSpec::new(pair_label(r, a, b), 2 * n - 1, 2 * n));
        }
    }
    if marked {
        for (j, e) in base.basis().iter().enumerate() {
            layout.shifted.push(gens.len());
            gens.push(GeneratorSpec::new(format!("s{}", base.label(j)), e.degree + 1, e.weight + 2));
        }
        for i in 0..r {
            layout.alpha.push(gens.len());
            gens.push(GeneratorSpec::new(format!("α{}", i + 1), 2 * n - 1, 2 * n));
        }
        for i in 0..r {
            layout.eta.push(gens.len());
            gens.push(GeneratorSpec::new(format!("η{}", i + 1), 2 * n, 2 * n + 2));
        }
    }
    let ctx = Arc::new(Context::new(power, gens)?);
    let g = |a: usize, b: usize| ctx.generator(layout.pairs[&(a.min(b), a.max(b))]);

    let mut relations = Vec::new();
    for a in 0..r {
        for b in a + 1..r {
            for c in b + 1..r {
                let arnold = ctx
                    .mul(&g(a, b), &g(a, c))
                    .plus(&ctx.mul(&g(b, c), &g(b, a)))
                    .plus(&ctx.mul(&g(c, a), &g(c, b)));
                relations.push(arnold);
            }
        }
    }
    for (&(a, b), &gi) in &layout.pairs {
        for x in (0..base.dim()).filter(|&x| base.degree(x) > 0) {
            let xv = base.basis_vector(x);
            let diff: Vec<Rational> = pull_back(base, r, a, &xv)
                .iter()
                .zip(&pull_back(base, r, b, &xv))
                .map(|(p, q)| p - q)
                .collect();
            relations.push(ctx.mul(&ctx.base_element(&diff), &ctx.generator(gi)));
        }
    }

    let mut differential = vec![Element::zero(); ctx.num_generators()];
    if r > 1 {
        let delta = diagonal_class(base)?;
        for (&(a, b), &gi) in &layout.pairs {
            differential[gi] = ctx.base_element(&pull_back_pair(base, r, a, b, &delta));
        }
    }
    Ok(Skeleton {
        ctx,
        layout,
        relations,
        differential,
    })
}

/// The model `C_r(X)` of the ordered configuration space `F^r(X)`.
pub fn build_c_r(base: &BaseAlgebra, r: usize) -> Result<Presentation, CdgaError> {
    let s = skeleton(base, r, false)?;
    let meta = ModelMeta {
        model: "C_r".into(),
        space: base.name().into(),
        r,
        ..Default::default()
    };
    Ok(Presentation::new(s.ctx, s.relations, s.differential, meta)?.with_layout(s.layout))
}

fn build_marked(
    base: &BaseAlgebra,
    r: usize,
    top_image: &[Rational],
    c: &[Rational],
    meta: ModelMeta,
) -> Result<Presentation, CdgaError> {
    check_degree(base, c, 2, "c")?;
    let duals = dual_basis(base)?;
    let mut s = skeleton(base, r, true)?;
    let ctx = s.ctx.clone();
    for i in 0..r {
        let alpha = s.layout.alpha[i];
        s.differential[alpha] = ctx.base_element(&pull_back(base, r, i, top_image));
        let mut eps = Element::zero();
        for (j, dual) in duals.iter().enumerate() {
            let term = ctx.mul(
                &ctx.base_element(&pull_back(base, r, i, dual)),
                &ctx.generator(s.layout.shifted[j]),
            );
            eps.add_scaled(&term, &Rational::ONE);
        }
        let c_alpha = ctx.mul(&ctx.base_element(&pull_back(base, r, i, c)), &ctx.generator(alpha));
        s.differential[s.layout.eta[i]] = eps.minus(&c_alpha);
    }
    Ok(Presentation::new(ctx, s.relations, s.differential, meta)?.with_layout(s.layout))
}

/// `A_r(X, c)`: `C_r(X)` with `Sym_gr(H*(X)[−1])` and the generators
/// `α_i`, `η_i` adjoined; `dα_i = π_i^*[X]`, `dη_i = ε_i − π_i^*(c)·α_i`.
pub fn build_a_r(base: &BaseAlgebra, c: &[Rational], r: usize) -> Result<Presentation, CdgaError> {
    let top = base.basis_vector(base.fundamental());
    let meta = ModelMeta {
        model: "A_r".into(),
        space: base.name().into(),
        r,
        c: Some(format_class(base, c)),
        ..Default::default()
    };
    build_marked(base, r, &top, c, meta)
}

/// `e(Ω¹(L^d)) = Σ_i c_i(Ω¹_X)·c_1(L)^{n−i}·d^{n−i}` and its degree
/// `m(d) = e[X]`.
pub fn euler_class_twist(base: &BaseAlgebra, chern: &ChernData, d: i64) -> (BaseVector, Rational) {
    let n = base.n() as usize;
    let scaled: Vec<Rational> = chern.line.iter().map(|x| x * &Rational::from_integer(d)).collect();
    let mut powers = vec![base.basis_vector(base.unit())];
    for k in 1..=n {
        powers.push(base.mul_vec(&powers[k - 1], &scaled));
    }
    let mut e = base.zero_vector();
    for (i, ci) in chern.classes.iter().enumerate() {
        for (slot, x) in e.iter_mut().zip(base.mul_vec(ci, &powers[n - i])) {
            *slot += &x;
        }
    }
    let m = e[base.fundamental()].clone();
    (e, m)
}

/// `A_r(L^d)`: as `A_r(X, d·c_1(L))` but with `dα_i = π_i^*(e(Ω¹(L^d)))`.
pub fn build_a_r_l(base: &BaseAlgebra, chern: &ChernData, d: i64, r: usize) -> Result<Presentation, CdgaError> {
    let (e, m) = euler_class_twist(base, chern, d);
    let c: Vec<Rational> = chern.line.iter().map(|x| x * &Rational::from_integer(d)).collect();
    let mut params = BTreeMap::new();
    params.insert("d".to_string(), d.to_string());
    params.insert("m".to_string(), m.to_string());
    let meta = ModelMeta {
        model: "A_r(L)".into(),
        space: base.name().into(),
        r,
        c: Some(format_class(base, &c)),
        params,
    };
    build_marked(base, r, &e, &c, meta)
}

fn format_class(base: &BaseAlgebra, c: &[Rational]) -> String {
    let coords: Vec<String> = base.indices_in_degree(2).into_iter().map(|i| c[i].to_string()).collect();
    match coords.len() {
        1 => coords[0].clone(),
        _ => format!("[{}]", coords.join(":")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::presets;

    fn vec_of(pairs: &[(usize, i64)], dim: usize) -> BaseVector {
        let mut v = vec![Rational::ZERO; dim];
        for &(i, c) in pairs {
            v[i] = Rational::from_integer(c);
        }
        v
    }

    #[test]
    fn duals_of_presets() {
        let p2 = presets::projective_space(2);
        let d = dual_basis(&p2).unwrap();
        assert_eq!(d, vec![vec_of(&[(2, 1)], 3), vec_of(&[(1, 1)], 3), vec_of(&[(0, 1)], 3)]);
        // basis 1, a1, b1, X
        let s1 = presets::surface(1);
        let d = dual_basis(&s1).unwrap();
        assert_eq!(d[1], vec_of(&[(2, 1)], 4));
        assert_eq!(d[2], vec_of(&[(1, -1)], 4));
        let pp = presets::projective_space(1).tensor_product(&presets::projective_space(1));
        let d = dual_basis(&pp).unwrap();
        assert_eq!(d[1], vec_of(&[(2, 1)], 4));
    }

    #[test]
    fn diagonal_classes() {
        // P1 square: 1⊗1, x⊗1, 1⊗x, x⊗x at 0, 1, 2, 3
        let p1 = presets::projective_space(1);
        assert_eq!(diagonal_class(&p1).unwrap(), vec_of(&[(1, 1), (2, 1)], 4));
        // P2 square: i + 3j
        let p2 = presets::projective_space(2);
        assert_eq!(diagonal_class(&p2).unwrap(), vec_of(&[(6, 1), (4, 1), (2, 1)], 9));
        // S1 square: i + 4j with 1, a, b, X = 0..3
        let s1 = presets::surface(1);
        let expected = vec_of(&[(12, 1), (3, 1), (1 + 4 * 2, -1), (2 + 4, 1)], 16);
        assert_eq!(diagonal_class(&s1).unwrap(), expected);
    }

    #[test]
    fn twist_polynomials() {
        let p2 = presets::projective_space(2);
        let chern = ChernData::new(&p2, presets::projective_space_chern(2), p2.basis_vector(1)).unwrap();
        for d in 0..6i64 {
            let (_, m) = euler_class_twist(&p2, &chern, d);
            assert_eq!(m, Rational::from_integer(d * d - 3 * d + 3));
        }
        let p1 = presets::projective_space(1);
        let chern = ChernData::new(&p1, presets::projective_space_chern(1), p1.basis_vector(1)).unwrap();
        for d in 0..6i64 {
            assert_eq!(euler_class_twist(&p1, &chern, d).1, Rational::from_integer(d - 2));
        }
    }

    #[test]
    fn c_r_shape() {
        let p1 = presets::projective_space(1);
        let c1 = build_c_r(&p1, 1).unwrap();
        assert_eq!(c1.context().num_generators(), 0);
        assert!(c1.relations().is_empty());
        let c3 = build_c_r(&p1, 3).unwrap();
        assert_eq!(c3.context().num_generators(), 3);
        // one Arnold relation and three pairs with one positive-degree class
        assert_eq!(c3.relations().len(), 1 + 3);
    }

    #[test]
    fn rejects_bad_class() {
        let p2 = presets::projective_space(2);
        assert!(build_a_r(&p2, &p2.basis_vector(2), 1).is_err());
        assert!(build_c_r(&p2, 0).is_err());
    }
}
