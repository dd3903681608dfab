//! Symmetric-group invariants and character-weighted Euler characteristics.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::series::{BigradedSeries, Variable};
use crate::algebra::{AlgebraMap, Element};
use crate::cdga::{CohomologyTable, Engine};
use crate::error::CdgaError;
use crate::linalg::{add_rows, rank_with_modular_prescreen, Rational, SparseMatrix, SparseRow};
use crate::models::{check_group, symmetric_action, trace_on_slice, Permutation};

/// Partitions of `r` in decreasing lexicographic order, parts decreasing.
pub fn partitions(r: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(r, r, &mut Vec::new(), &mut out);
    out
}

/// A rational value on each conjugacy class of `S_r`, keyed by cycle type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    r: usize,
    values: BTreeMap<Vec<usize>, Rational>,
}

impl ClassFunction {
    /// Every partition of `r` must be present.
    pub fn new(r: usize, values: BTreeMap<Vec<usize>, Rational>) -> Result<Self, CdgaError> {
        for p in partitions(r) {
            if !values.contains_key(&p) {
                return Err(CdgaError::InvalidGroup(format!("class function has no value on cycle type {p:?}")));
            }
        }
        if values.len() != partitions(r).len() {
            return Err(CdgaError::InvalidGroup("class function has values on non-partitions".into()));
        }
        Ok(ClassFunction { r, values })
    }

    fn from_fn(r: usize, f: impl Fn(&[usize]) -> Rational) -> Self {
        let values = partitions(r).into_iter().map(|p| (p.clone(), f(&p))).collect();
        ClassFunction { r, values }
    }

    pub fn trivial(r: usize) -> Self {
        Self::from_fn(r, |_| Rational::ONE)
    }

    pub fn sign(r: usize) -> Self {
        Self::from_fn(r, |p| {
            if p.iter().filter(|&&l| l % 2 == 0).count() % 2 == 0 {
                Rational::ONE
            } else {
                -Rational::ONE
            }
        })
    }

    /// `r!` at the identity, zero elsewhere.
    pub fn regular(r: usize) -> Self {
        let fact: i64 = (1..=r as i64).product();
        Self::from_fn(r, |p| {
            if p.iter().all(|&l| l == 1) {
                Rational::from_integer(fact)
            } else {
                Rational::ZERO
            }
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn value(&self, sigma: &Permutation) -> Rational {
        self.values[&sigma.cycle_type()].clone()
    }

    /// Value at the identity.
    pub fn dimension(&self) -> Rational {
        self.values[&vec![1; self.r]].clone()
    }
}

/// Matrix of the action on the slice `(degree, weight)`: column `j` holds
/// the normal form of the image of basis element `j`.
pub fn action_matrix(engine: &Engine, map: &AlgebraMap, degree: u32, weight: Option<u32>) -> SparseMatrix {
    let slice = engine.quotient_slice(degree, weight);
    let ctx = engine.context();
    let images: Vec<SparseRow> = slice
        .basis()
        .par_iter()
        .map(|m| {
            let img = ctx.apply_map_unchecked(map, &Element::from_monomial(m.clone(), Rational::ONE));
            engine.normal_form(&img, &slice).expect("action preserves bidegree")
        })
        .collect();
    SparseMatrix::from_rows(slice.dim(), images).transpose()
}

/// Cohomology of the image of `Σ_σ c_σ σ`, a projector commuting with `d`.
fn projected_cohomology(
    engine: &Engine,
    terms: &[(AlgebraMap, Rational)],
    max_degree: u32,
    by_weight: bool,
) -> CohomologyTable {
    engine.prepare(max_degree, by_weight);
    let keys: Vec<(u32, Option<u32>)> = (0..=max_degree + 1)
        .flat_map(|d| engine.slice_keys(d, by_weight))
        .collect();
    let ctx = engine.context();
    // (rank P, rank dP) for each slice
    let ranks: BTreeMap<(u32, Option<u32>), (usize, usize)> = keys
        .par_iter()
        .map(|&(d, w)| {
            let slice = engine.quotient_slice(d, w);
            let mut proj: Vec<SparseRow> = vec![Vec::new(); slice.dim()];
            for (map, c) in terms {
                for (j, m) in slice.basis().iter().enumerate() {
                    let img = ctx.apply_map_unchecked(map, &Element::from_monomial(m.clone(), Rational::ONE));
                    let nf = engine.normal_form(&img, &slice).expect("action preserves bidegree");
                    proj[j] = add_rows(&proj[j], &nf, c);
                }
            }
            let rank_p = rank_with_modular_prescreen(&SparseMatrix::from_rows(slice.dim(), proj.clone()));
            let rank_dp = if d <= max_degree {
                let target = engine.quotient_slice(d + 1, w);
                let dimg = engine.differential_images(d, w);
                let rows: Vec<SparseRow> = proj
                    .iter()
                    .map(|row| row.iter().fold(Vec::new(), |acc, (k, c)| add_rows(&acc, &dimg[*k], c)))
                    .collect();
                rank_with_modular_prescreen(&SparseMatrix::from_rows(target.dim(), rows))
            } else {
                0
            };
            ((d, w), (rank_p, rank_dp))
        })
        .collect();
    let mut dims = BTreeMap::new();
    for d in 0..=max_degree {
        for (deg, w) in engine.slice_keys(d, by_weight) {
            let (p, dp) = ranks[&(deg, w)];
            let inc = if deg == 0 {
                0
            } else {
                ranks.get(&(deg - 1, w)).map_or(0, |r| r.1)
            };
            let h = p - dp - inc;
            if h > 0 || !by_weight {
                dims.insert((deg, w), h);
            }
        }
    }
    CohomologyTable::new(engine.presentation().meta().clone(), max_degree, by_weight, dims)
}

fn verified_maps(engine: &Engine, group: &[Permutation]) -> Result<Vec<(Permutation, AlgebraMap)>, CdgaError> {
    let group = check_group(group)?;
    group
        .into_iter()
        .map(|sigma| {
            let map = symmetric_action(engine, &sigma)?;
            Ok((sigma, map))
        })
        .collect()
}

/// Cohomology of the invariants of a subgroup, via the averaging projector.
pub fn invariant_cohomology(
    engine: &Engine,
    group: &[Permutation],
    max_degree: u32,
    by_weight: bool,
) -> Result<CohomologyTable, CdgaError> {
    let maps = verified_maps(engine, group)?;
    let c = Rational::new(1, maps.len() as i64);
    let terms: Vec<(AlgebraMap, Rational)> = maps.into_iter().map(|(_, m)| (m, c.clone())).collect();
    let mut t = projected_cohomology(engine, &terms, max_degree, by_weight);
    t.meta.params.insert("subgroup order".into(), terms.len().to_string());
    t.meta.params.insert("projector".into(), "invariants".into());
    Ok(t)
}

/// Cohomology of the sign-isotypic part for a subgroup.
pub fn sign_isotypic_cohomology(
    engine: &Engine,
    group: &[Permutation],
    max_degree: u32,
    by_weight: bool,
) -> Result<CohomologyTable, CdgaError> {
    let maps = verified_maps(engine, group)?;
    let order = maps.len() as i64;
    let terms: Vec<(AlgebraMap, Rational)> = maps
        .into_iter()
        .map(|(s, m)| (m, Rational::new(if s.is_even() { 1 } else { -1 }, order)))
        .collect();
    let mut t = projected_cohomology(engine, &terms, max_degree, by_weight);
    t.meta.params.insert("subgroup order".into(), order.to_string());
    t.meta.params.insert("projector".into(), "sign".into());
    Ok(t)
}

/// `Σ_k w^k (1/r!) Σ_σ χ(σ) Σ_i (−1)^i tr(σ | Q^{(i, k)})`.
pub fn character_euler(engine: &Engine, chi: &ClassFunction, w_max: usize) -> Result<BigradedSeries, CdgaError> {
    let r = engine
        .presentation()
        .layout()
        .ok_or_else(|| CdgaError::InvalidModel("presentation carries no symmetric-group layout".into()))?
        .r;
    if chi.r() != r {
        return Err(CdgaError::InvalidGroup(format!("class function on S_{} for a model with r = {r}", chi.r())));
    }
    let perms = Permutation::all(r);
    let mut maps = Vec::new();
    for sigma in &perms {
        let value = chi.value(sigma);
        if !value.is_zero() {
            maps.push((value, symmetric_action(engine, sigma)?));
        }
    }
    super::generating::check_weights(engine.context())?;
    let order = Rational::from_integer(perms.len() as i64);
    let coeffs = (0..=w_max as u32)
        .into_par_iter()
        .map(|k| {
            let mut total = Rational::ZERO;
            for i in 0..=k {
                for (value, map) in &maps {
                    let tr = trace_on_slice(engine, map, i, Some(k));
                    let term = value * &tr;
                    if i % 2 == 0 {
                        total += &term;
                    } else {
                        total -= &term;
                    }
                }
            }
            let c = &total / &order;
            c.to_i64()
                .filter(|_| c.is_integer())
                .ok_or_else(|| CdgaError::InvalidGroup(format!("non-integral coefficient {c} at w^{k}")))
        })
        .collect::<Result<Vec<i64>, CdgaError>>()?;
    Ok(BigradedSeries::from_coeffs(Variable::W, w_max, &coeffs))
}
