use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::engine::Engine;
use super::presentation::ModelMeta;
use crate::algebra::Element;
use crate::error::CdgaError;
use crate::linalg::Rational;

/// Betti numbers of a presentation, optionally split by weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyTable {
    pub meta: ModelMeta,
    pub max_degree: u32,
    pub by_weight: bool,
    /// Nonzero `(degree, weight)` entries when split by weight; one entry per
    /// degree (weight `None`) otherwise.
    dims: BTreeMap<(u32, Option<u32>), usize>,
}

impl CohomologyTable {
    pub fn new(meta: ModelMeta, max_degree: u32, by_weight: bool, dims: BTreeMap<(u32, Option<u32>), usize>) -> Self {
        CohomologyTable {
            meta,
            max_degree,
            by_weight,
            dims,
        }
    }

    /// `dim H^i`, summed over weights.
    pub fn total(&self, degree: u32) -> usize {
        self.dims.range((degree, None)..=(degree, Some(u32::MAX))).map(|(_, v)| v).sum()
    }

    pub fn totals(&self) -> Vec<usize> {
        (0..=self.max_degree).map(|i| self.total(i)).collect()
    }

    /// `dim H^{(i, w)}`; only meaningful for tables split by weight.
    pub fn get(&self, degree: u32, weight: u32) -> usize {
        self.dims.get(&(degree, Some(weight))).copied().unwrap_or(0)
    }

    /// Nonzero `(weight, dim)` pairs in one degree.
    pub fn weights(&self, degree: u32) -> Vec<(u32, usize)> {
        self.dims
            .range((degree, Some(0))..=(degree, Some(u32::MAX)))
            .filter(|(_, v)| **v > 0)
            .map(|((_, w), v)| (w.unwrap(), *v))
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, Option<u32>, usize)> + '_ {
        self.dims.iter().map(|((d, w), v)| (*d, *w, *v))
    }
}

impl Serialize for CohomologyTable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            weight: u32,
            dim: usize,
        }
        #[derive(Serialize)]
        struct Row {
            degree: u32,
            dim: usize,
            #[serde(skip_serializing_if = "Option::is_none")]
            weights: Option<Vec<Entry>>,
        }
        let rows: Vec<Row> = (0..=self.max_degree)
            .map(|i| Row {
                degree: i,
                dim: self.total(i),
                weights: self.by_weight.then(|| {
                    self.weights(i).into_iter().map(|(weight, dim)| Entry { weight, dim }).collect()
                }),
            })
            .collect();
        let mut st = s.serialize_struct("CohomologyTable", 4)?;
        st.serialize_field("meta", &self.meta)?;
        st.serialize_field("max_degree", &self.max_degree)?;
        st.serialize_field("by_weight", &self.by_weight)?;
        st.serialize_field("degrees", &rows)?;
        st.end()
    }
}

/// Outcome of checking `d² = 0` and `d(I) ⊆ I` through a degree bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max_degree: u32,
    pub slices_checked: usize,
    pub relations_checked: usize,
    pub failure: Option<VerifyFailure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerifyFailure {
    /// `d(relation)` is not in the ideal.
    IdealNotPreserved { relation: String, image: String },
    /// `d(d(witness)) ≠ 0` in the quotient.
    DSquaredNonzero {
        degree: u32,
        weight: Option<u32>,
        witness: String,
        image: String,
    },
}

impl std::fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerifyFailure::IdealNotPreserved { relation, image } => {
                write!(f, "d({relation}) = {image} is not in the ideal")
            }
            VerifyFailure::DSquaredNonzero { witness, image, .. } => {
                write!(f, "d(d({witness})) = {image} is nonzero")
            }
        }
    }
}

impl Engine {
    /// Cohomology in degrees `0..=max_degree`.
    pub fn cohomology(&self, max_degree: u32, by_weight: bool) -> CohomologyTable {
        self.prepare(max_degree, by_weight);
        let mut dims = BTreeMap::new();
        for d in 0..=max_degree {
            for (deg, w) in self.slice_keys(d, by_weight) {
                let h = self.cohomology_dim(deg, w);
                if h > 0 || !by_weight {
                    dims.insert((deg, w), h);
                }
            }
        }
        CohomologyTable::new(self.presentation().meta().clone(), max_degree, by_weight, dims)
    }

    /// [`verify`](Self::verify) through `max_degree`, then
    /// [`cohomology`](Self::cohomology).
    pub fn cohomology_checked(&self, max_degree: u32, by_weight: bool) -> Result<CohomologyTable, CdgaError> {
        let report = self.verify(max_degree);
        if let Some(f) = report.failure {
            return Err(CdgaError::Verification(f.to_string()));
        }
        Ok(self.cohomology(max_degree, by_weight))
    }

    /// Checks that every relation of degree at most `max_degree` has its
    /// differential in the ideal, and that `d ∘ d` vanishes on every weight
    /// slice of degree at most `max_degree`.
    pub fn verify(&self, max_degree: u32) -> VerifyReport {
        let ctx = self.context().clone();
        let p = self.presentation().clone();
        let mut report = VerifyReport {
            max_degree,
            slices_checked: 0,
            relations_checked: 0,
            failure: None,
        };
        for rel in p.relations() {
            let Some(Some((d, w))) = ctx.bidegree(rel) else { continue };
            if d > max_degree {
                continue;
            }
            report.relations_checked += 1;
            let image = p.differential_of(rel);
            let target = self.quotient_slice(d + 1, Some(w));
            let nf = self.normal_form(&image, &target).expect("homogeneous image");
            if !nf.is_empty() {
                report.failure = Some(VerifyFailure::IdealNotPreserved {
                    relation: ctx.format_element(rel),
                    image: ctx.format_element(&self.element_of(&target, &nf)),
                });
                return report;
            }
        }
        for d in 0..=max_degree {
            for (deg, w) in self.slice_keys(d, true) {
                report.slices_checked += 1;
                let first = self.differential_images(deg, w);
                let second = self.differential_images(deg + 1, w);
                let target = self.quotient_slice(deg + 2, w);
                for (j, img) in first.iter().enumerate() {
                    let mut acc = Vec::new();
                    for (k, c) in img {
                        acc = crate::linalg::add_rows(&acc, &second[*k], c);
                    }
                    if !acc.is_empty() {
                        let source = self.quotient_slice(deg, w);
                        let witness = Element::from_monomial(source.basis()[j].clone(), Rational::ONE);
                        report.failure = Some(VerifyFailure::DSquaredNonzero {
                            degree: deg,
                            weight: w,
                            witness: ctx.format_element(&witness),
                            image: ctx.format_element(&self.element_of(&target, &acc)),
                        });
                        return report;
                    }
                }
            }
        }
        report
    }
}
