//! Graded pieces of `B ⊗ Sym_gr(V) / I` and the induced differential.
//!
//! Generators split into *core* generators (those occurring in some relation)
//! and *extra* ones. The ideal is generated by relations in the core
//! subalgebra, so a slice of the quotient is the direct sum over
//! `core slice ⊗ extra monomials`, and only core slices are ever eliminated.

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use super::presentation::Presentation;
use crate::algebra::{Context, Element, Monomial};
use crate::error::CdgaError;
use crate::linalg::{rank_with_modular_prescreen, Echelon, Rational, SparseMatrix, SparseRow};

/// `(degree, weight)`; `None` sums over all weights.
pub type SliceKey = (u32, Option<u32>);

struct Cache<K, T> {
    cells: Mutex<HashMap<K, Arc<OnceLock<Arc<T>>>>>,
}

impl<K: Eq + Hash + Copy, T> Cache<K, T> {
    fn new() -> Self {
        Cache {
            cells: Mutex::new(HashMap::new()),
        }
    }

    fn get(&self, key: K, init: impl FnOnce() -> T) -> Arc<T> {
        let cell = self.cells.lock().expect("cache lock").entry(key).or_default().clone();
        cell.get_or_init(|| Arc::new(init())).clone()
    }
}

/// The ideal inside one free slice, before any elimination.
#[derive(Debug, Clone)]
pub struct IdealSlice {
    pub degree: u32,
    pub weight: Option<u32>,
    /// Column labels, in canonical order.
    pub monomials: Vec<Monomial>,
    /// Spanning set of `I` in this slice, one row per product
    /// `relation · monomial`.
    pub spanning: SparseMatrix,
}

/// A basis of one slice of the quotient, made of monomials.
#[derive(Debug)]
pub struct SliceBasis {
    pub degree: u32,
    pub weight: Option<u32>,
    /// Dimension of the free slice.
    pub free_dim: usize,
    /// Dimension of the ideal inside it.
    pub ideal_rank: usize,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl SliceBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

struct CoreSlice {
    free: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    echelon: Echelon,
    /// Free positions of the non-pivot monomials, ascending.
    quotient: Vec<usize>,
}

impl CoreSlice {
    /// Normal form of a free monomial as `(free position, coefficient)` over
    /// non-pivot monomials.
    fn reduce(&self, m: &Monomial) -> Vec<(usize, Rational)> {
        let i = self.index[m];
        match self.echelon.pivot_row(i) {
            None => vec![(i, Rational::ONE)],
            Some(row) => row.iter().skip(1).map(|(c, v)| (*c, -v)).collect(),
        }
    }
}

/// Lazily computed, cached slices and differentials of a presentation. All
/// caches are keyed by `(degree, weight)` and safe to fill from several
/// threads.
pub struct Engine {
    p: Arc<Presentation>,
    core_mask: Vec<bool>,
    extra_mask: Vec<bool>,
    has_extra: bool,
    core: Cache<SliceKey, CoreSlice>,
    slices: Cache<SliceKey, SliceBasis>,
    images: Cache<SliceKey, Vec<SparseRow>>,
    ranks: Cache<SliceKey, usize>,
    core_weights: Cache<u32, Vec<u32>>,
    weights: Cache<u32, Vec<u32>>,
}

impl Engine {
    pub fn new(p: Arc<Presentation>) -> Self {
        let ctx = p.context().clone();
        let mut core_mask = vec![false; ctx.num_generators()];
        for rel in p.relations() {
            for (m, _) in rel.terms() {
                for (g, &e) in m.exps().iter().enumerate() {
                    if e > 0 {
                        core_mask[g] = true;
                    }
                }
            }
        }
        let extra_mask: Vec<bool> = core_mask.iter().map(|c| !c).collect();
        Engine {
            has_extra: extra_mask.iter().any(|&x| x),
            p,
            core_mask,
            extra_mask,
            core: Cache::new(),
            slices: Cache::new(),
            images: Cache::new(),
            ranks: Cache::new(),
            core_weights: Cache::new(),
            weights: Cache::new(),
        }
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.p
    }

    pub fn context(&self) -> &Arc<Context> {
        self.p.context()
    }

    /// Weights occurring among free monomials of degree `d`.
    pub fn weights_in_degree(&self, d: u32) -> Vec<u32> {
        self.weights.get(d, || weights_of(self.context(), d, None)).to_vec()
    }

    fn core_weights_in_degree(&self, d: u32) -> Arc<Vec<u32>> {
        self.core_weights.get(d, || weights_of(self.context(), d, Some(&self.core_mask)))
    }

    /// Every relation times every monomial of complementary bidegree.
    pub fn ideal_slice(&self, degree: u32, weight: Option<u32>) -> IdealSlice {
        let ctx = self.context();
        let monomials = ctx.monomials_in(degree, weight, None, true);
        let index: HashMap<&Monomial, usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let rows = self.relation_products(degree, weight, None, |prod| {
            let mut row: SparseRow = prod.terms().map(|(m, c)| (index[m], c.clone())).collect();
            row.sort_by_key(|(c, _)| *c);
            row
        });
        IdealSlice {
            degree,
            weight,
            spanning: SparseMatrix::from_rows(monomials.len(), rows),
            monomials,
        }
    }

    fn relation_products(
        &self,
        degree: u32,
        weight: Option<u32>,
        mask: Option<&[bool]>,
        to_row: impl Fn(&Element) -> SparseRow,
    ) -> Vec<SparseRow> {
        let ctx = self.context();
        let mut rows = Vec::new();
        for rel in self.p.relations() {
            let Some(Some((dr, wr))) = ctx.bidegree(rel) else { continue };
            if dr > degree {
                continue;
            }
            let cw = match weight {
                Some(k) if wr > k => continue,
                Some(k) => Some(k - wr),
                None => None,
            };
            for m in ctx.monomials_in(degree - dr, cw, mask, true) {
                let prod = ctx.mul(rel, &Element::from_monomial(m, Rational::ONE));
                if !prod.is_zero() {
                    rows.push(to_row(&prod));
                }
            }
        }
        rows
    }

    fn core_slice(&self, key: SliceKey) -> Arc<CoreSlice> {
        self.core.get(key, || {
            let (degree, weight) = key;
            let ctx = self.context();
            let free = ctx.monomials_in(degree, weight, Some(&self.core_mask), true);
            let index: HashMap<Monomial, usize> = free.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
            let mut rows = self.relation_products(degree, weight, Some(&self.core_mask), |prod| {
                let mut row: SparseRow = prod.terms().map(|(m, c)| (index[m], c.clone())).collect();
                row.sort_by_key(|(c, _)| *c);
                row
            });
            rows.sort_by_key(|r| r.len());
            let mut echelon = Echelon::new();
            for row in &rows {
                echelon.insert(row);
            }
            echelon.make_reduced();
            let quotient = (0..free.len()).filter(|&i| !echelon.is_pivot(i)).collect();
            CoreSlice {
                free,
                index,
                echelon,
                quotient,
            }
        })
    }

    /// Monomial basis of the quotient slice: the free monomials that are not
    /// leading terms of the ideal.
    pub fn quotient_slice(&self, degree: u32, weight: Option<u32>) -> Arc<SliceBasis> {
        self.slices.get((degree, weight), || {
            let ctx = self.context();
            let (basis, free_dim, ideal_rank) = if !self.has_extra {
                let core = self.core_slice((degree, weight));
                let basis: Vec<Monomial> = core.quotient.iter().map(|&i| core.free[i].clone()).collect();
                (basis, core.free.len(), core.echelon.rank())
            } else {
                let mut basis = Vec::new();
                let (mut free_dim, mut ideal_rank) = (0, 0);
                for d1 in 0..=degree {
                    let parts: Vec<(Option<u32>, Option<u32>)> = match weight {
                        None => vec![(None, None)],
                        Some(k) => self
                            .core_weights_in_degree(d1)
                            .iter()
                            .filter(|&&k1| k1 <= k)
                            .map(|&k1| (Some(k1), Some(k - k1)))
                            .collect(),
                    };
                    for (cw, xw) in parts {
                        let extras = ctx.monomials_in(degree - d1, xw, Some(&self.extra_mask), false);
                        if extras.is_empty() {
                            continue;
                        }
                        let core = self.core_slice((d1, cw));
                        free_dim += core.free.len() * extras.len();
                        ideal_rank += core.echelon.rank() * extras.len();
                        for &q in &core.quotient {
                            for x in &extras {
                                basis.push(join(&core.free[q], x));
                            }
                        }
                    }
                }
                basis.sort();
                (basis, free_dim, ideal_rank)
            };
            let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
            SliceBasis {
                degree,
                weight,
                free_dim,
                ideal_rank,
                basis,
                index,
            }
        })
    }

    /// Coordinates of `e` modulo the ideal, in the basis of `target`. Every
    /// term of `e` must lie in the target's bidegree.
    pub fn normal_form(&self, e: &Element, target: &SliceBasis) -> Result<SparseRow, CdgaError> {
        let ctx = self.context();
        let mut acc: HashMap<usize, Rational> = HashMap::new();
        for (m, c) in e.terms() {
            if ctx.degree(m) != target.degree || target.weight.is_some_and(|w| ctx.weight(m) != w) {
                return Err(CdgaError::NotHomogeneous(format!(
                    "{} outside slice ({}, {:?})",
                    ctx.format_monomial(m),
                    target.degree,
                    target.weight
                )));
            }
            let (core_part, extra_part, sign) = self.split(m);
            let key = (
                ctx.degree(&core_part),
                target.weight.map(|_| ctx.weight(&core_part)),
            );
            let core = self.core_slice(key);
            for (pos, coef) in core.reduce(&core_part) {
                let q = &core.free[pos];
                let joined = join(q, &extra_part);
                let s2 = self.join_sign(q, &extra_part);
                let idx = target.index_of(&joined).expect("reduced monomial lies in the quotient basis");
                let mut v = c * &coef;
                if sign != s2 {
                    v = -v;
                }
                let slot = acc.entry(idx).or_insert(Rational::ZERO);
                *slot += &v;
            }
        }
        let mut row: SparseRow = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        row.sort_by_key(|(c, _)| *c);
        Ok(row)
    }

    /// `m = ± core · extra`; the flag is true for a minus sign.
    fn split(&self, m: &Monomial) -> (Monomial, Monomial, bool) {
        let ctx = self.context();
        if !self.has_extra {
            let unit = ctx.unit_monomial();
            return (m.clone(), unit, false);
        }
        let core: Vec<u8> = m.exps().iter().zip(&self.core_mask).map(|(&e, &c)| if c { e } else { 0 }).collect();
        let extra: Vec<u8> = m.exps().iter().zip(&self.core_mask).map(|(&e, &c)| if c { 0 } else { e }).collect();
        let core = Monomial::new(m.base(), core);
        let extra = Monomial::new(ctx.base().unit(), extra);
        let sign = self.join_sign(&core, &extra);
        (core, extra, sign)
    }

    /// Sign of `core · extra` relative to the canonical monomial.
    fn join_sign(&self, core: &Monomial, extra: &Monomial) -> bool {
        let ctx = self.context();
        let mut parity = 0usize;
        for (j, &e) in extra.exps().iter().enumerate() {
            if e > 0 && ctx.is_odd_generator(j) {
                parity += core
                    .exps()
                    .iter()
                    .enumerate()
                    .skip(j + 1)
                    .filter(|(i, &c)| c > 0 && ctx.is_odd_generator(*i))
                    .count();
            }
        }
        parity % 2 == 1
    }

    /// Images of the basis of slice `(d, w)` under the differential, in
    /// coordinates of slice `(d + 1, w)`; one row per source basis element.
    pub fn differential_images(&self, degree: u32, weight: Option<u32>) -> Arc<Vec<SparseRow>> {
        self.images.get((degree, weight), || {
            let source = self.quotient_slice(degree, weight);
            let target = self.quotient_slice(degree + 1, weight);
            source
                .basis()
                .par_iter()
                .map(|m| {
                    let mut img = Element::zero();
                    self.p.differential_of_monomial_into(m, &Rational::ONE, &mut img);
                    self.normal_form(&img, &target).expect("differential has degree +1 and weight 0")
                })
                .collect()
        })
    }

    /// Matrix of `d: (d, w) -> (d + 1, w)`, target rows by source columns.
    pub fn differential_matrix(&self, degree: u32, weight: Option<u32>) -> SparseMatrix {
        let target = self.quotient_slice(degree + 1, weight);
        SparseMatrix::from_rows(target.dim(), self.differential_images(degree, weight).to_vec()).transpose()
    }

    pub fn differential_rank(&self, degree: u32, weight: Option<u32>) -> usize {
        *self.ranks.get((degree, weight), || {
            let target = self.quotient_slice(degree + 1, weight);
            let rows = self.differential_images(degree, weight).to_vec();
            rank_with_modular_prescreen(&SparseMatrix::from_rows(target.dim(), rows))
        })
    }

    /// Element represented by coordinates in a slice basis.
    pub fn element_of(&self, slice: &SliceBasis, coords: &[(usize, Rational)]) -> Element {
        Element::from_terms(coords.iter().map(|(i, c)| (slice.basis()[*i].clone(), c.clone())))
    }

    pub(crate) fn slice_keys(&self, degree: u32, by_weight: bool) -> Vec<SliceKey> {
        if by_weight {
            self.weights_in_degree(degree).into_iter().map(|w| (degree, Some(w))).collect()
        } else {
            vec![(degree, None)]
        }
    }

    /// Fills slices and differential ranks for degrees `0..=max_degree`.
    pub(crate) fn prepare(&self, max_degree: u32, by_weight: bool) {
        let keys: Vec<SliceKey> = (0..=max_degree + 1).flat_map(|d| self.slice_keys(d, by_weight)).collect();
        keys.par_iter().for_each(|&(d, w)| {
            self.quotient_slice(d, w);
        });
        keys.par_iter().filter(|(d, _)| *d <= max_degree).for_each(|&(d, w)| {
            self.differential_rank(d, w);
        });
    }

    /// `dim H^{(d, w)} = dim Q − rank d_d − rank d_{d−1}`.
    pub fn cohomology_dim(&self, degree: u32, weight: Option<u32>) -> usize {
        let dim = self.quotient_slice(degree, weight).dim();
        let out = self.differential_rank(degree, weight);
        let inc = if degree == 0 {
            0
        } else {
            self.differential_rank(degree - 1, weight)
        };
        dim - out - inc
    }
}

fn join(core: &Monomial, extra: &Monomial) -> Monomial {
    let exps = core.exps().iter().zip(extra.exps()).map(|(a, b)| a + b).collect();
    Monomial::new(core.base(), exps)
}

/// Weights of free monomials of degree `d` built from masked generators.
fn weights_of(ctx: &Context, d: u32, mask: Option<&[bool]>) -> Vec<u32> {
    let d = d as usize;
    let mut reach: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); d + 1];
    for b in ctx.base().basis() {
        if (b.degree as usize) <= d {
            reach[b.degree as usize].insert(b.weight);
        }
    }
    for (g, spec) in ctx.generators().iter().enumerate() {
        if mask.is_some_and(|m| !m[g]) {
            continue;
        }
        let gd = spec.degree as usize;
        if spec.is_odd() {
            for deg in (gd..=d).rev() {
                let add: Vec<u32> = reach[deg - gd].iter().map(|w| w + spec.weight).collect();
                reach[deg].extend(add);
            }
        } else {
            for deg in gd..=d {
                let add: Vec<u32> = reach[deg - gd].iter().map(|w| w + spec.weight).collect();
                reach[deg].extend(add);
            }
        }
    }
    reach[d].iter().copied().collect()
}
