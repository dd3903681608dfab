//! Generating functions attached to a space and to its models.

use std::sync::Arc;

use rayon::prelude::*;

use super::series::{BigradedSeries, Variable};
use crate::algebra::{BaseAlgebra, Context, GeneratorSpec};
use crate::cdga::{Engine, ModelMeta, Presentation};
use crate::error::CdgaError;
use crate::models::build_c_r;

fn betti(base: &BaseAlgebra, i: usize) -> i64 {
    base.betti().get(i).copied().unwrap_or(0) as i64
}

/// Series of `Sym_gr(H*(X)[−1])`.
///
/// In the weight variable every class of `H^i` contributes a generator of
/// weight `i + 2`, giving `Π_i (1 − w^{i+2})^{(−1)^i β_i}`. In the degree
/// variable only `H^{<2n}` is used and the generator sits in degree `i + 1`:
/// `P(t) = Π_{i<2n} (1 − (−t)^{i+1})^{(−1)^i β_i}`.
pub fn poincare_series_u(base: &BaseAlgebra, max_exp: usize, var: Variable) -> BigradedSeries {
    let top = 2 * base.n() as usize;
    let mut out = BigradedSeries::one(var, max_exp);
    let range = match var {
        Variable::W => 0..=top,
        Variable::T => 0..=top.saturating_sub(1),
    };
    for i in range {
        let b = betti(base, i);
        if b == 0 {
            continue;
        }
        let factor = match var {
            Variable::W => BigradedSeries::one(var, max_exp).add_term(i + 2, -1),
            Variable::T => {
                let c = if (i + 1) % 2 == 0 { -1 } else { 1 };
                BigradedSeries::one(var, max_exp).add_term(i + 1, c)
            }
        };
        let e = if i % 2 == 0 { b } else { -b };
        out = &out * &factor.pow(e).expect("constant term 1");
    }
    out
}

impl BigradedSeries {
    fn add_term(mut self, k: usize, c: i64) -> Self {
        let v = self.coeff(k) + c;
        self.set(k, v);
        self
    }
}

pub(crate) fn check_weights(ctx: &Context) -> Result<(), CdgaError> {
    for g in ctx.generators() {
        if g.weight < g.degree {
            return Err(CdgaError::WeightBelowDegree(g.label.clone()));
        }
    }
    for b in ctx.base().basis() {
        if b.weight < b.degree {
            return Err(CdgaError::WeightBelowDegree(b.label.clone()));
        }
    }
    Ok(())
}

/// `Σ_k χ(Gr_k^W) w^k` computed from slice dimensions alone:
/// `χ(k) = Σ_i (−1)^i dim Q^{(i, k)}`. Needs weight ≥ degree everywhere so
/// that weight `k` lives in degrees `≤ k`.
pub fn weightwise_euler(engine: &Engine, w_max: usize) -> Result<BigradedSeries, CdgaError> {
    check_weights(engine.context())?;
    let coeffs: Vec<i64> = (0..=w_max as u32)
        .into_par_iter()
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let dim = engine.quotient_slice(i, Some(k)).dim() as i64;
                    if i % 2 == 0 {
                        dim
                    } else {
                        -dim
                    }
                })
                .sum()
        })
        .collect();
    Ok(BigradedSeries::from_coeffs(Variable::W, w_max, &coeffs))
}

/// The same alternating sum taken over cohomology instead of slices.
pub fn cohomology_euler(engine: &Engine, w_max: usize) -> Result<BigradedSeries, CdgaError> {
    check_weights(engine.context())?;
    let table = engine.cohomology(w_max as u32, true);
    let mut out = BigradedSeries::zero(Variable::W, w_max);
    for (i, w, dim) in table.entries() {
        let w = w.expect("weighted table") as usize;
        if w <= w_max {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            out.set(w, out.coeff(w) + sign * dim as i64);
        }
    }
    Ok(out)
}

/// `P_r(w) = P_Fr(w)·P_U(w)·((1 − w^{2n}) / (1 − w^{2n+2}))^r`, with `P_Fr`
/// the weightwise Euler characteristic of `C_r(X)` (and `1` for `r = 0`).
pub fn p_r_closed_form(base: &BaseAlgebra, r: usize, w_max: usize) -> Result<BigradedSeries, CdgaError> {
    let var = Variable::W;
    let p_fr = if r == 0 {
        BigradedSeries::one(var, w_max)
    } else {
        weightwise_euler(&Engine::new(Arc::new(build_c_r(base, r)?)), w_max)?
    };
    let n = base.n() as usize;
    let num = BigradedSeries::one(var, w_max).add_term(2 * n, -1);
    let den = BigradedSeries::one(var, w_max).add_term(2 * n + 2, -1);
    let ratio = &num * &den.recip().expect("constant term 1");
    let twist = ratio.pow(r as i64).expect("nonnegative power");
    Ok(&(&p_fr * &poincare_series_u(base, w_max, var)) * &twist)
}

/// `Σ β_{i+n−1} t^i (0 ≤ i ≤ n) − Σ β_{i+n+1} t^i (1 ≤ i ≤ n−1)
/// + Σ β_{i−n} t^i (n+1 ≤ i ≤ 2n+1) − Σ β_{i−n−2} t^i (n+2 ≤ i ≤ 2n)`.
pub fn rho_bracket(base: &BaseAlgebra, t_max: usize) -> BigradedSeries {
    let n = base.n() as usize;
    let mut out = BigradedSeries::zero(Variable::T, t_max);
    let mut add = |i: usize, c: i64| out.set(i, out.coeff(i) + c);
    for i in 0..=n {
        add(i, betti(base, i + n - 1));
    }
    for i in 1..n {
        add(i, -betti(base, i + n + 1));
    }
    for i in n + 1..=2 * n + 1 {
        add(i, betti(base, i - n));
    }
    for i in n + 2..=2 * n {
        add(i, -betti(base, i - n - 2));
    }
    out
}

/// `Σ_p ρ_p t^p = P(t) · bracket`.
pub fn rho_series(base: &BaseAlgebra, t_max: usize) -> BigradedSeries {
    &poincare_series_u(base, t_max, Variable::T) * &rho_bracket(base, t_max)
}

/// Poincaré series of `H*(H*(X)[α], dα = [X]) ⊗ Sym_gr(H^{<2n}(X)[−1])`, the
/// stable cohomology of the one-point model.
pub fn r1_stable_series(base: &BaseAlgebra, t_max: usize) -> Result<BigradedSeries, CdgaError> {
    let n = base.n();
    let ctx = Arc::new(Context::new(
        Arc::new(base.clone()),
        vec![GeneratorSpec::new("α", 2 * n - 1, 2 * n)],
    )?);
    let d_alpha = ctx.base_basis_element(base.fundamental());
    let meta = ModelMeta {
        model: "H*(X)[α]".into(),
        space: base.name().into(),
        r: 1,
        ..Default::default()
    };
    let p = Presentation::new(ctx, Vec::new(), vec![d_alpha], meta)?;
    let table = Engine::new(Arc::new(p)).cohomology(t_max as u32, false);
    let coeffs: Vec<i64> = table.totals().into_iter().map(|x| x as i64).collect();
    let fibre = BigradedSeries::from_coeffs(Variable::T, t_max, &coeffs);
    Ok(&fibre * &poincare_series_u(base, t_max, Variable::T))
}

/// Least `d` with `d > max(|χ(X)|, k(2i + 2r + 3))`.
pub fn stable_range_bound(i: u64, r: u64, chi_x: i64, k: u64) -> u64 {
    chi_x.unsigned_abs().max(k * (2 * i + 2 * r + 3)) + 1
}

/// `d_0 = 1 + |χ(X)|`; for a curve `m(d) = ad − χ(X)` is nonzero once `d ≥ d_0`.
pub fn nonvanishing_degree_bound(chi_x: i64) -> u64 {
    1 + chi_x.unsigned_abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::presets;

    #[test]
    fn p_u_weight_version() {
        let p1 = presets::projective_space(1);
        // (1 − w^2)(1 − w^4)
        let s = poincare_series_u(&p1, 6, Variable::W);
        assert_eq!(s.coeffs(), &[1, 0, -1, 0, -1, 0, 1]);
    }

    #[test]
    fn p_u_degree_version() {
        let p2 = presets::projective_space(2);
        let s = poincare_series_u(&p2, 6, Variable::T);
        // (1 + t)(1 + t^3)
        assert_eq!(s.coeffs(), &[1, 1, 0, 1, 1, 0, 0]);
        let s1 = presets::surface(1);
        // (1 + t) / (1 − t^2)^2
        let s = poincare_series_u(&s1, 4, Variable::T);
        assert_eq!(s.coeffs(), &[1, 1, 2, 2, 3]);
    }

    #[test]
    fn brackets() {
        assert!(rho_bracket(&presets::projective_space(2), 12).is_zero());
        assert_eq!(rho_bracket(&presets::projective_space(1), 5).coeffs(), &[1, 0, 0, 1, 0, 0]);
        assert_eq!(rho_bracket(&presets::surface(1), 5).coeffs(), &[1, 2, 2, 1, 0, 0]);
    }

    #[test]
    fn bounds() {
        assert_eq!(stable_range_bound(0, 1, 3, 1), 6);
        assert_eq!(stable_range_bound(10, 2, 3, 1), 28);
        assert_eq!(stable_range_bound(0, 1, 100, 1), 101);
        assert_eq!(stable_range_bound(0, 1, -100, 1), 101);
        assert_eq!(nonvanishing_degree_bound(2), 3);
    }
}
