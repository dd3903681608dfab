use std::collections::BTreeMap;
use std::fmt;

use super::Rational;

/// A sparse row: strictly increasing column indices, no stored zeros.
pub type SparseRow = Vec<(usize, Rational)>;

/// Row-major sparse matrix over Q.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            nrows: n,
            ncols: n,
            rows: (0..n).map(|i| vec![(i, Rational::ONE)]).collect(),
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicates are summed.
    ///
    /// Panics if an index is out of bounds.
    pub fn from_triplets<I>(nrows: usize, ncols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut acc: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); nrows];
        for (r, c, v) in entries {
            assert!(r < nrows && c < ncols, "entry ({r}, {c}) outside {nrows}x{ncols}");
            *acc[r].entry(c).or_default() += &v;
        }
        let rows = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix { nrows, ncols, rows }
    }

    /// Builds a matrix from rows that may be unsorted or contain zeros.
    pub fn from_rows(ncols: usize, rows: Vec<SparseRow>) -> Self {
        let nrows = rows.len();
        let rows = rows
            .into_iter()
            .map(|r| {
                let mut m: BTreeMap<usize, Rational> = BTreeMap::new();
                for (c, v) in r {
                    assert!(c < ncols, "column {c} outside width {ncols}");
                    *m.entry(c).or_default() += &v;
                }
                m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatrix { nrows, ncols, rows }
    }

    pub fn from_dense(ncols: usize, dense: &[Vec<Rational>]) -> Self {
        let rows = dense
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols);
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix {
            nrows: dense.len(),
            ncols,
            rows,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
            .collect();
        Self::from_dense(ncols, &dense)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<SparseRow> {
        self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.rows[r]
            .binary_search_by_key(&c, |(j, _)| *j)
            .map(|k| self.rows[r][k].1.clone())
            .unwrap_or(Rational::ZERO)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<SparseRow> = vec![Vec::new(); self.ncols];
        for (r, c, v) in self.entries() {
            rows[c].push((r, v.clone()));
        }
        SparseMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            rows,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::ZERO; self.ncols]; self.nrows];
        for (r, c, v) in self.entries() {
            out[r][c] = v.clone();
        }
        out
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, rhs.nrows, "dimension mismatch in product");
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, a) in row {
                    for (c, b) in &rhs.rows[*k] {
                        *acc.entry(*c).or_default() += &(a * b);
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatrix {
            nrows: self.nrows,
            ncols: rhs.ncols,
            rows,
        }
    }

    pub fn scale(&self, s: &Rational) -> SparseMatrix {
        if s.is_zero() {
            return SparseMatrix::zeros(self.nrows, self.ncols);
        }
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|(c, v)| (*c, v * s)).collect())
                .collect(),
        }
    }

    pub fn add(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        let rows = self
            .rows
            .iter()
            .zip(&rhs.rows)
            .map(|(a, b)| add_rows(a, b, &Rational::ONE))
            .collect();
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    /// Applies the matrix to a column vector given sparsely.
    pub fn apply(&self, v: &[(usize, Rational)]) -> SparseRow {
        let dense: BTreeMap<usize, &Rational> = v.iter().map(|(i, x)| (*i, x)).collect();
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            let mut s = Rational::ZERO;
            for (c, a) in row {
                if let Some(x) = dense.get(c) {
                    s += &(a * *x);
                }
            }
            if !s.is_zero() {
                out.push((r, s));
            }
        }
        out
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} [", self.nrows, self.ncols)?;
        for row in &self.rows {
            write!(f, "  ")?;
            for (c, v) in row {
                write!(f, "{c}:{v} ")?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// `a + s * b` for sorted sparse rows.
pub fn add_rows(a: &[(usize, Rational)], b: &[(usize, Rational)], s: &Rational) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = &b[j].1 * s;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + &(&b[j].1 * s);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
