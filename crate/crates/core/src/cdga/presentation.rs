use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Context, Element, Monomial};
use crate::error::CdgaError;
use crate::linalg::Rational;

/// Descriptive data carried into reports.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ModelMeta {
    pub model: String,
    pub space: String,
    pub r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
}

/// Where the structured generators of a configuration-space model live.
/// Points are 0-indexed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModelLayout {
    pub r: usize,
    /// Dimension of `H*(X)`; the base of the context is its `r`-th tensor power.
    pub factor_dim: usize,
    /// `(a, b)` with `a < b` to the index of `G_ab`.
    pub pairs: BTreeMap<(usize, usize), usize>,
    /// Index of `s b_j` for each basis element `b_j` of `H*(X)`.
    pub shifted: Vec<usize>,
    pub alpha: Vec<usize>,
    pub eta: Vec<usize>,
}

/// A free graded-commutative algebra modulo homogeneous relations, with a
/// differential of degree +1 and weight 0 defined on generators. The
/// differential vanishes on the base.
#[derive(Debug, Clone)]
pub struct Presentation {
    context: Arc<Context>,
    relations: Vec<Element>,
    differential: Vec<Element>,
    meta: ModelMeta,
    layout: Option<ModelLayout>,
}

impl Presentation {
    pub fn new(
        context: Arc<Context>,
        relations: Vec<Element>,
        differential: Vec<Element>,
        meta: ModelMeta,
    ) -> Result<Self, CdgaError> {
        if differential.len() != context.num_generators() {
            return Err(CdgaError::Malformed(format!(
                "{} differential images for {} generators",
                differential.len(),
                context.num_generators()
            )));
        }
        for rel in &relations {
            context.check_element(rel)?;
            if context.bidegree(rel).is_none() {
                return Err(CdgaError::NotHomogeneous(format!("relation {}", context.format_element(rel))));
            }
        }
        for (g, img) in differential.iter().enumerate() {
            context.check_element(img)?;
            let spec = &context.generators()[g];
            match context.bidegree(img) {
                Some(None) => {}
                Some(Some((d, w))) if d == spec.degree + 1 && w == spec.weight => {}
                _ => {
                    return Err(CdgaError::NotHomogeneous(format!(
                        "d({}) = {} must have degree {} and weight {}",
                        spec.label,
                        context.format_element(img),
                        spec.degree + 1,
                        spec.weight
                    )))
                }
            }
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(Presentation {
            context,
            relations,
            differential,
            meta,
            layout: None,
        })
    }

    pub fn with_layout(mut self, layout: ModelLayout) -> Self {
        self.layout = Some(layout);
        self
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.context
    }

    pub fn relations(&self) -> &[Element] {
        &self.relations
    }

    pub fn differential(&self) -> &[Element] {
        &self.differential
    }

    pub fn meta(&self) -> &ModelMeta {
        &self.meta
    }

    pub fn layout(&self) -> Option<&ModelLayout> {
        self.layout.as_ref()
    }

    /// Extends the generator-level differential by the Leibniz rule, in the
    /// free algebra.
    pub fn differential_of(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            self.differential_of_monomial_into(m, c, &mut out);
        }
        out
    }

    pub(crate) fn differential_of_monomial_into(&self, m: &Monomial, coef: &Rational, out: &mut Element) {
        let ctx = &self.context;
        let gens = ctx.generators();
        let exps = m.exps();
        let mut parity = ctx.base().degree(m.base()) % 2;
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let dg = &self.differential[i];
            if !dg.is_zero() {
                let mut left = exps.to_vec();
                for x in left.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                left[i] -= 1;
                let mut right = vec![0u8; exps.len()];
                right[i + 1..].copy_from_slice(&exps[i + 1..]);
                let left = ctx.monomial(m.base(), left);
                let right = ctx.monomial(ctx.base().unit(), right);
                let mult = if gens[i].is_odd() { 1 } else { e as i64 };
                let mut s = coef * &Rational::from_integer(mult);
                if parity % 2 == 1 {
                    s = -s;
                }
                let partial = ctx.mul_monomial_element(&left, dg);
                for (pm, pc) in partial.terms() {
                    ctx.mul_monomials_into(pm, &right, &(pc * &s), out);
                }
            }
            parity += e as u32 * gens[i].degree;
        }
    }
}
