//! Text format for user-defined base algebras.
//!
//! ```json
//! {
//!   "name": "P1",
//!   "n": 1,
//!   "basis": [{"label": "1", "degree": 0}, {"label": "x", "degree": 2}],
//!   "unit": "1",
//!   "fundamental": "x",
//!   "products": [["x", "x", []]],
//!   "chern": [[["1", "1"]], [["x", "-2"]]]
//! }
//! ```
//!
//! Products with the unit may be omitted, as may one of `a*b`, `b*a`: the
//! missing side is filled in by graded commutativity. Every other omitted
//! product is zero. `chern` optionally lists `c_i(Ω¹_X)` for `i = 0..=n`.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::base::{BaseAlgebra, BaseVector, BasisElement};
use crate::error::AlgebraError;
use crate::linalg::Rational;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisEntry {
    pub label: String,
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<u32>,
}

/// `(label, coefficient)` pairs.
pub type TermList = Vec<(String, Rational)>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub n: u32,
    pub basis: Vec<BasisEntry>,
    pub unit: String,
    pub fundamental: String,
    #[serde(default)]
    pub products: Vec<(String, String, TermList)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chern: Option<Vec<TermList>>,
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse algebra file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A validated custom space: the algebra and optional Chern classes of Ω¹.
#[derive(Debug, Clone)]
pub struct LoadedAlgebra {
    pub algebra: BaseAlgebra,
    pub chern: Option<Vec<BaseVector>>,
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self, LoadError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, LoadError> {
        let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra file serializes")
    }

    /// Describes an existing algebra in this format.
    pub fn from_algebra(alg: &BaseAlgebra) -> Self {
        let basis = alg
            .basis()
            .iter()
            .map(|b| BasisEntry {
                label: b.label.clone(),
                degree: b.degree,
                weight: (b.weight != b.degree).then_some(b.weight),
            })
            .collect();
        let mut products = Vec::new();
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                if i == alg.unit() || j == alg.unit() {
                    continue;
                }
                let v = alg.mul_basis(i, j);
                if !v.is_empty() {
                    products.push((
                        alg.label(i).to_string(),
                        alg.label(j).to_string(),
                        v.iter().map(|(k, c)| (alg.label(*k).to_string(), c.clone())).collect(),
                    ));
                }
            }
        }
        AlgebraFile {
            name: alg.name().to_string(),
            n: alg.n(),
            basis,
            unit: alg.label(alg.unit()).to_string(),
            fundamental: alg.label(alg.fundamental()).to_string(),
            products,
            chern: None,
        }
    }

    /// Resolves labels, fills implied products and validates every law.
    pub fn build(&self) -> Result<LoadedAlgebra, LoadError> {
        let mut index: HashMap<&str, usize> = HashMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            if index.insert(b.label.as_str(), i).is_some() {
                return Err(AlgebraError::DuplicateLabel(b.label.clone()).into());
            }
        }
        let lookup = |l: &str| index.get(l).copied().ok_or_else(|| AlgebraError::UnknownLabel(l.to_string()));
        let terms = |t: &TermList| -> Result<Vec<(usize, Rational)>, AlgebraError> {
            t.iter().map(|(l, c)| Ok((lookup(l)?, c.clone()))).collect()
        };
        let unit = lookup(&self.unit)?;
        let fundamental = lookup(&self.fundamental)?;
        let degree = |i: usize| self.basis[i].degree;

        let mut table: HashMap<(usize, usize), Vec<(usize, Rational)>> = HashMap::new();
        for (l, r, t) in &self.products {
            let key = (lookup(l)?, lookup(r)?);
            if table.insert(key, terms(t)?).is_some() {
                return Err(AlgebraError::Malformed(format!("product ({l}, {r}) listed twice")).into());
            }
        }
        let explicit: Vec<(usize, usize)> = table.keys().copied().collect();
        for (i, j) in explicit {
            if !table.contains_key(&(j, i)) {
                let sign = if degree(i) % 2 == 1 && degree(j) % 2 == 1 {
                    -Rational::ONE
                } else {
                    Rational::ONE
                };
                let mirrored = table[&(i, j)].iter().map(|(k, c)| (*k, c * &sign)).collect();
                table.insert((j, i), mirrored);
            }
        }
        for i in 0..self.basis.len() {
            table.entry((unit, i)).or_insert_with(|| vec![(i, Rational::ONE)]);
            table.entry((i, unit)).or_insert_with(|| vec![(i, Rational::ONE)]);
        }

        let basis = self
            .basis
            .iter()
            .map(|b| BasisElement {
                label: b.label.clone(),
                degree: b.degree,
                weight: b.weight.unwrap_or(b.degree),
            })
            .collect();
        let mut products: Vec<_> = table.into_iter().map(|((i, j), v)| (i, j, v)).collect();
        products.sort_by_key(|(i, j, _)| (*i, *j));
        let algebra = BaseAlgebra::new(self.name.clone(), self.n, basis, unit, fundamental, products)?;

        let chern = match &self.chern {
            None => None,
            Some(classes) => {
                let mut out = Vec::new();
                for (i, t) in classes.iter().enumerate() {
                    let mut v = algebra.zero_vector();
                    for (k, c) in terms(t)? {
                        if algebra.degree(k) != 2 * i as u32 {
                            return Err(AlgebraError::Malformed(format!(
                                "chern class c_{i} has a term {} outside degree {}",
                                algebra.label(k),
                                2 * i
                            ))
                            .into());
                        }
                        v[k] += &c;
                    }
                    out.push(v);
                }
                if out.len() != self.n as usize + 1 || out[0] != algebra.basis_vector(unit) {
                    return Err(AlgebraError::Malformed("chern must list c_0 = 1 through c_n".into()).into());
                }
                Some(out)
            }
        };
        Ok(LoadedAlgebra { algebra, chern })
    }
}

/// Reads and validates a custom base algebra.
pub fn load_custom_space(path: &Path) -> Result<LoadedAlgebra, LoadError> {
    AlgebraFile::load(path)?.build()
}
