#![allow(dead_code)]

use std::sync::Arc;

use cdgacalc_core::algebra::{BaseAlgebra, Context, Element, GeneratorSpec, Monomial};
use cdgacalc_core::cdga::{Engine, ModelMeta, Presentation};
use cdgacalc_core::linalg::Rational;
use cdgacalc_core::models::{build_a_r, build_base, build_c_r, AmpleClass, SpaceSpec};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn base(space: &str) -> BaseAlgebra {
    build_base(&space.parse::<SpaceSpec>().unwrap()).unwrap()
}

pub fn class(b: &BaseAlgebra, c: &str) -> Vec<Rational> {
    c.parse::<AmpleClass>().unwrap().resolve(b).unwrap()
}

pub fn a_r(space: &str, c: &str, r: usize) -> Engine {
    let b = base(space);
    let c = class(&b, c);
    Engine::new(Arc::new(build_a_r(&b, &c, r).unwrap()))
}

pub fn c_r(space: &str, r: usize) -> Engine {
    Engine::new(Arc::new(build_c_r(&base(space), r).unwrap()))
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Rank by dense Gaussian elimination, written out here so that it shares
/// nothing with the library's sparse elimination.
pub fn dense_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        let pivot: Vec<Rational> = rows[rank].iter().map(|x| x * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &(&f * y);
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// `d` of a monomial written as the ordered product of its factors,
/// `d(x_1 ⋯ x_k) = Σ_j (−1)^{|x_1|+⋯+|x_{j−1}|} x_1 ⋯ d(x_j) ⋯ x_k`.
pub fn naive_d(p: &Presentation, m: &Monomial) -> Element {
    let ctx = p.context();
    let mut factors = vec![Element::from_monomial(ctx.base_monomial(m.base()), Rational::ONE)];
    let mut degrees = vec![ctx.base().degree(m.base())];
    let mut images = vec![Element::zero()];
    for (g, &e) in m.exps().iter().enumerate() {
        for _ in 0..e {
            factors.push(ctx.generator(g));
            degrees.push(ctx.generators()[g].degree);
            images.push(p.differential()[g].clone());
        }
    }
    let mut out = Element::zero();
    let mut parity = 0;
    for j in 0..factors.len() {
        let mut term = ctx.one();
        for (i, f) in factors.iter().enumerate() {
            term = ctx.mul(&term, if i == j { &images[j] } else { f });
        }
        let sign = if parity % 2 == 1 { -Rational::ONE } else { Rational::ONE };
        out.add_scaled(&term, &sign);
        parity += degrees[j];
    }
    out
}

fn coords(e: &Element, basis: &[Monomial]) -> Vec<Rational> {
    basis.iter().map(|m| e.coefficient(m)).collect()
}

/// Spanning rows of the ideal in the free degree-`d` slice.
fn ideal_rows(p: &Presentation, d: u32, basis: &[Monomial]) -> Vec<Vec<Rational>> {
    let ctx = p.context();
    let mut rows = Vec::new();
    for rel in p.relations() {
        let Some(Some((dr, _))) = ctx.bidegree(rel) else { continue };
        if dr > d {
            continue;
        }
        for m in ctx.monomials_of(d - dr, None) {
            let prod = ctx.mul(rel, &Element::from_monomial(m, Rational::ONE));
            rows.push(coords(&prod, basis));
        }
    }
    rows
}

/// Cohomology of the quotient computed in free coordinates with dense
/// matrices: `dim H^i = dim Z'_i − rank(d A_{i−1} + I_i)` where
/// `Z'_i = {v : dv ∈ I_{i+1}}`.
pub fn brute_force_cohomology(p: &Presentation, max_degree: u32) -> Vec<usize> {
    let ctx = p.context();
    let bases: Vec<Vec<Monomial>> = (0..=max_degree + 1).map(|d| ctx.monomials_of(d, None)).collect();
    let ideals: Vec<Vec<Vec<Rational>>> = (0..=max_degree + 1).map(|d| ideal_rows(p, d, &bases[d as usize])).collect();
    let d_rows = |i: usize| -> Vec<Vec<Rational>> {
        bases[i].iter().map(|m| coords(&naive_d(p, m), &bases[i + 1])).collect()
    };
    (0..=max_degree as usize)
        .map(|i| {
            let ideal_next = dense_rank(ideals[i + 1].clone());
            let mut stacked = d_rows(i);
            stacked.extend(ideals[i + 1].iter().cloned());
            let z = bases[i].len() - (dense_rank(stacked) - ideal_next);
            let mut bound = ideals[i].clone();
            if i > 0 {
                bound.extend(d_rows(i - 1));
            }
            let b = if bound.is_empty() { 0 } else { dense_rank(bound) };
            z - b
        })
        .collect()
}

/// A random presentation: generators are added in increasing degree, each
/// with a random cocycle of the free algebra built so far as differential;
/// relations are random cocycles, so `d` preserves the ideal.
pub fn random_presentation(rng: &mut ChaCha8Rng) -> Presentation {
    let spaces = ["P1", "S1", "P1xP1", "P2"];
    let b = Arc::new(base(spaces[rng.gen_range(0..spaces.len())]));
    let ngen = rng.gen_range(1..=4);
    let mut degrees: Vec<u32> = (0..ngen).map(|_| rng.gen_range(1..=4)).collect();
    degrees.sort_unstable();
    let widen = |e: &Element, n: usize| {
        Element::from_terms(e.terms().map(|(m, c)| {
            let mut exps = m.exps().to_vec();
            exps.resize(n, 0);
            (Monomial::new(m.base(), exps), c.clone())
        }))
    };
    let mut specs: Vec<GeneratorSpec> = Vec::new();
    let mut diffs: Vec<Element> = Vec::new();
    for (g, &deg) in degrees.iter().enumerate() {
        let ctx = Context::new(b.clone(), specs.clone()).unwrap();
        diffs = diffs.iter().map(|e| widen(e, g)).collect();
        let p = Presentation::new(Arc::new(ctx), Vec::new(), diffs.clone(), ModelMeta::default()).unwrap();
        let (weight, image) = random_cocycle(&p, deg + 1, rng);
        let weight = weight.unwrap_or(deg + rng.gen_range(0..=2));
        specs.push(GeneratorSpec::new(format!("g{g}"), deg, weight));
        diffs.push(image);
    }
    let n = specs.len();
    let diffs: Vec<Element> = diffs.iter().map(|e| widen(e, n)).collect();
    let ctx = Arc::new(Context::new(b, specs).unwrap());
    let p = Presentation::new(ctx.clone(), Vec::new(), diffs.clone(), ModelMeta::default()).unwrap();
    let mut relations = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let deg = rng.gen_range(2..=5);
        if let (Some(_), rel) = random_cocycle(&p, deg, rng) {
            if !rel.is_zero() {
                relations.push(rel);
            }
        }
    }
    Presentation::new(ctx, relations, diffs, ModelMeta::default()).unwrap()
}

/// A random weight-homogeneous cocycle of the free algebra in `degree`,
/// with its weight; `(None, 0)` when the degree has no monomials.
fn random_cocycle(p: &Presentation, degree: u32, rng: &mut ChaCha8Rng) -> (Option<u32>, Element) {
    let ctx = p.context();
    let mut weights: Vec<u32> = ctx.monomials_of(degree, None).iter().map(|m| ctx.weight(m)).collect();
    weights.sort_unstable();
    weights.dedup();
    if weights.is_empty() {
        return (None, Element::zero());
    }
    let w = weights[rng.gen_range(0..weights.len())];
    let source = ctx.monomials_of(degree, Some(w));
    let target = ctx.monomials_of(degree + 1, Some(w));
    let cols: Vec<Vec<Rational>> = source.iter().map(|m| coords(&naive_d(p, m), &target)).collect();
    // kernel of the target × source matrix
    let mat = cdgacalc_core::linalg::SparseMatrix::from_triplets(
        target.len(),
        source.len(),
        cols.iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().enumerate().map(move |(i, c)| (i, j, c.clone())))
            .collect::<Vec<_>>(),
    );
    let kernel = cdgacalc_core::linalg::kernel_basis(&mat);
    let mut e = Element::zero();
    for v in &kernel {
        let c = q(rng.gen_range(-2..=2));
        for (m, x) in source.iter().zip(v) {
            if !x.is_zero() {
                e.add_term(m.clone(), &(&c * x));
            }
        }
    }
    (Some(w), e)
}

/// Sum of free slice dimensions in degrees `0..=max`.
pub fn total_free_dim(p: &Presentation, max: u32) -> usize {
    (0..=max).map(|d| p.context().monomials_of(d, None).len()).sum()
}
