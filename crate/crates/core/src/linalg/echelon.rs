//! Exact sparse elimination.
//!
//! Rows are inserted one at a time into an [`Echelon`] basis keyed by leading
//! column. Incoming rows are processed sparsest-first, so fill-in stays low;
//! the pivot columns (and hence the reduced form) do not depend on that order.

use std::collections::BTreeMap;

use super::modp::{ModpEchelon, PRIME};
use super::sparse::{SparseMatrix, SparseRow};
use super::Rational;

/// Row-echelon basis over Q: each stored row has leading entry 1 at its key.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
    fully_reduced: bool,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    pub fn pivot_row(&self, col: usize) -> Option<&SparseRow> {
        self.pivots.get(&col)
    }

    /// Reduces `row` against the basis. The result has no entries in pivot
    /// columns.
    pub fn reduce(&self, row: &[(usize, Rational)]) -> SparseRow {
        let mut work: BTreeMap<usize, Rational> = row
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (*c, v.clone()))
            .collect();
        if self.fully_reduced {
            // Reduced rows carry no other pivot columns: one pass suffices.
            let hits: Vec<(usize, Rational)> = work
                .iter()
                .filter(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, v)| (*c, v.clone()))
                .collect();
            for (col, coef) in hits {
                eliminate(&mut work, &self.pivots[&col], &coef);
            }
        } else {
            let mut cursor = 0usize;
            loop {
                let next = work
                    .range(cursor..)
                    .find(|(c, _)| self.pivots.contains_key(c))
                    .map(|(c, v)| (*c, v.clone()));
                let Some((col, coef)) = next else { break };
                eliminate(&mut work, &self.pivots[&col], &coef);
                cursor = col + 1;
            }
        }
        work.into_iter().collect()
    }

    /// Inserts a row; returns its new pivot column if it was independent.
    pub fn insert(&mut self, row: &[(usize, Rational)]) -> Option<usize> {
        let rem = self.reduce(row);
        let (lead, lv) = rem.first()?.clone();
        let inv = lv.recip();
        let normalized: SparseRow = rem.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
        if self.fully_reduced {
            // Keep the basis fully reduced: clear the new pivot column elsewhere.
            for other in self.pivots.values_mut() {
                if let Ok(k) = other.binary_search_by_key(&lead, |(c, _)| *c) {
                    let coef = -&other[k].1;
                    *other = super::sparse::add_rows(other, &normalized, &coef);
                }
            }
        }
        self.pivots.insert(lead, normalized);
        Some(lead)
    }

    /// Back-substitutes so that every pivot column is zero outside its own row.
    pub fn make_reduced(&mut self) {
        if self.fully_reduced {
            return;
        }
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for col in cols {
            let row = self.pivots.remove(&col).unwrap();
            let mut work: BTreeMap<usize, Rational> = row.into_iter().collect();
            let hits: Vec<(usize, Rational)> = work
                .iter()
                .filter(|(c, _)| **c != col && self.pivots.contains_key(c))
                .map(|(c, v)| (*c, v.clone()))
                .collect();
            for (c, coef) in hits {
                eliminate(&mut work, &self.pivots[&c], &coef);
            }
            self.pivots.insert(col, work.into_iter().collect());
        }
        self.fully_reduced = true;
    }

    /// Rows in ascending pivot order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseRow)> + '_ {
        self.pivots.iter().map(|(c, r)| (*c, r))
    }
}

fn eliminate(work: &mut BTreeMap<usize, Rational>, pivot_row: &[(usize, Rational)], coef: &Rational) {
    for (c, v) in pivot_row {
        let delta = coef * v;
        match work.get_mut(c) {
            Some(e) => {
                *e -= &delta;
                if e.is_zero() {
                    work.remove(c);
                }
            }
            None => {
                work.insert(*c, -delta);
            }
        }
    }
}

/// Result of [`rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub reduced: SparseMatrix,
}

fn processing_order(m: &SparseMatrix) -> Vec<usize> {
    let mut order: Vec<usize> = (0..m.nrows()).collect();
    order.sort_by_key(|&i| (m.row(i).len(), i));
    order
}

fn echelon_of(m: &SparseMatrix) -> Echelon {
    let mut e = Echelon::new();
    for i in processing_order(m) {
        if !m.row(i).is_empty() {
            e.insert(m.row(i));
        }
    }
    e
}

/// Reduced row echelon form. The `reduced` matrix has exactly `rank` rows.
pub fn rref(m: &SparseMatrix) -> Rref {
    let mut e = echelon_of(m);
    e.make_reduced();
    let pivots: Vec<usize> = e.pivot_columns().collect();
    let rows: Vec<SparseRow> = e.rows().map(|(_, r)| r.clone()).collect();
    Rref {
        rank: pivots.len(),
        pivots,
        reduced: SparseMatrix::from_rows(m.ncols(), rows),
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    echelon_of(m).rank()
}

/// Basis of the right kernel `{v : m v = 0}`, as dense vectors.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vec<Rational>> {
    let r = rref(m);
    let n = m.ncols();
    let mut is_pivot = vec![false; n];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::ZERO; n];
            v[f] = Rational::ONE;
            for (row, &p) in r.reduced.rows().iter().zip(&r.pivots) {
                if let Ok(k) = row.binary_search_by_key(&f, |(c, _)| *c) {
                    v[p] = -&row[k].1;
                }
            }
            v
        })
        .collect()
}

/// Rank with a modular prescreen.
///
/// Rows that are independent modulo a word-size prime are independent over Q,
/// so they are eliminated first. Every other row is then reduced exactly
/// against that basis; the count returned is the exact rank.
pub fn rank_with_modular_prescreen(m: &SparseMatrix) -> usize {
    let mut modp = ModpEchelon::new(PRIME);
    let mut first = Vec::new();
    let mut rest = Vec::new();
    for i in processing_order(m) {
        let row = m.row(i);
        if row.is_empty() {
            continue;
        }
        let reduced: Option<Vec<(usize, u64)>> = row
            .iter()
            .map(|(c, v)| v.mod_prime(PRIME).map(|x| (*c, x)))
            .collect();
        match reduced {
            Some(r) if modp.insert(&r) => first.push(i),
            _ => rest.push(i),
        }
    }
    let mut exact = Echelon::new();
    for i in first {
        let fresh = exact.insert(m.row(i));
        debug_assert!(fresh.is_some(), "row independent mod p must be independent over Q");
    }
    for i in rest {
        exact.insert(m.row(i));
    }
    exact.rank()
}
