//! Free graded-commutative algebras `B ⊗ Sym_gr(generators)`.
//!
//! A monomial is stored in canonical form `b · g_0^{e_0} · g_1^{e_1} ⋯` with
//! the base factor first and generators in index order. Products reorder odd
//! factors into this form and pick up the Koszul sign `(-1)^{|u||v|}` for
//! every transposition of two odd factors.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use super::base::BaseAlgebra;
use crate::error::CdgaError;
use crate::linalg::Rational;

/// A free generator. Odd degree means exterior (squares to zero).
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct GeneratorSpec {
    pub label: String,
    pub degree: u32,
    pub weight: u32,
}

impl GeneratorSpec {
    pub fn new(label: impl Into<String>, degree: u32, weight: u32) -> Self {
        GeneratorSpec {
            label: label.into(),
            degree,
            weight,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// Base basis index together with an exponent per generator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    base: u32,
    exps: Box<[u8]>,
}

impl Monomial {
    pub fn new(base: usize, exps: Vec<u8>) -> Self {
        Monomial {
            base: base as u32,
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn base(&self) -> usize {
        self.base as usize
    }

    pub fn exps(&self) -> &[u8] {
        &self.exps
    }

    pub fn exp(&self, g: usize) -> u8 {
        self.exps[g]
    }

    fn total(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }
}

/// Canonical order: total generator exponent, then exponent vectors
/// lexicographically, then base index. Multiplying by a fixed generator
/// monomial preserves this order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.exps.cmp(&other.exps))
            .then_with(|| self.base.cmp(&other.base))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; {:?}]", self.base, self.exps)
    }
}

/// A finite linear combination of monomials; no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Element {
    terms: BTreeMap<Monomial, Rational>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_monomial(m: Monomial, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(m, &c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut e = Self::zero();
        for (m, c) in terms {
            e.add_term(m, &c);
        }
        e
    }

    pub fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, s: &Rational) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), &(c * s));
        }
    }

    pub fn plus(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::ONE);
        out
    }

    pub fn minus(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::ONE);
        out
    }

    pub fn scaled(&self, s: &Rational) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or(Rational::ZERO)
    }
}

/// Homomorphism data: an image for every base basis element and every
/// generator of a context. Images must be homogeneous of matching bidegree.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    pub base_images: Vec<Element>,
    pub generator_images: Vec<Element>,
}

/// `B ⊗ Sym_gr(generators)`; immutable after construction.
#[derive(Debug)]
pub struct Context {
    base: Arc<BaseAlgebra>,
    generators: Vec<GeneratorSpec>,
    odd: Vec<bool>,
    labels: HashMap<String, usize>,
    base_by_degree: Vec<Vec<usize>>,
}

impl Context {
    pub fn new(base: Arc<BaseAlgebra>, generators: Vec<GeneratorSpec>) -> Result<Self, CdgaError> {
        let mut labels = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(CdgaError::ZeroDegreeGenerator { label: g.label.clone() });
            }
            if labels.insert(g.label.clone(), i).is_some() {
                return Err(CdgaError::DuplicateGenerator(g.label.clone()));
            }
        }
        if generators.len() > 64 {
            return Err(CdgaError::Malformed("at most 64 generators are supported".into()));
        }
        let top = base.basis().iter().map(|b| b.degree).max().unwrap_or(0) as usize;
        let mut base_by_degree = vec![Vec::new(); top + 1];
        for (i, b) in base.basis().iter().enumerate() {
            base_by_degree[b.degree as usize].push(i);
        }
        Ok(Context {
            odd: generators.iter().map(GeneratorSpec::is_odd).collect(),
            base,
            generators,
            labels,
            base_by_degree,
        })
    }

    pub fn base(&self) -> &BaseAlgebra {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<BaseAlgebra> {
        &self.base
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, label: &str) -> Option<usize> {
        self.labels.get(label).copied()
    }

    pub fn is_odd_generator(&self, g: usize) -> bool {
        self.odd[g]
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        self.base.degree(m.base())
            + m.exps.iter().zip(&self.generators).map(|(&e, g)| e as u32 * g.degree).sum::<u32>()
    }

    pub fn weight(&self, m: &Monomial) -> u32 {
        self.base.weight(m.base())
            + m.exps.iter().zip(&self.generators).map(|(&e, g)| e as u32 * g.weight).sum::<u32>()
    }

    /// Bitmask of odd generators present in `m`.
    fn odd_mask(&self, m: &Monomial) -> u64 {
        let mut mask = 0u64;
        for (i, &e) in m.exps.iter().enumerate() {
            if e > 0 && self.odd[i] {
                mask |= 1 << i;
            }
        }
        mask
    }

    fn generator_parity(&self, m: &Monomial) -> u32 {
        self.odd_mask(m).count_ones() % 2
    }

    pub fn monomial(&self, base: usize, exps: Vec<u8>) -> Monomial {
        debug_assert_eq!(exps.len(), self.generators.len());
        Monomial::new(base, exps)
    }

    pub fn unit_monomial(&self) -> Monomial {
        self.base_monomial(self.base.unit())
    }

    pub fn base_monomial(&self, b: usize) -> Monomial {
        Monomial::new(b, vec![0; self.generators.len()])
    }

    pub fn generator_monomial(&self, g: usize) -> Monomial {
        let mut exps = vec![0; self.generators.len()];
        exps[g] = 1;
        Monomial::new(self.base.unit(), exps)
    }

    pub fn one(&self) -> Element {
        Element::from_monomial(self.unit_monomial(), Rational::ONE)
    }

    pub fn generator(&self, g: usize) -> Element {
        Element::from_monomial(self.generator_monomial(g), Rational::ONE)
    }

    pub fn generator_by_label(&self, label: &str) -> Option<Element> {
        self.generator_index(label).map(|g| self.generator(g))
    }

    /// Embeds a base-algebra vector.
    pub fn base_element(&self, v: &[Rational]) -> Element {
        Element::from_terms(
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (self.base_monomial(i), c.clone())),
        )
    }

    pub fn base_basis_element(&self, b: usize) -> Element {
        Element::from_monomial(self.base_monomial(b), Rational::ONE)
    }

    fn check(&self, m: &Monomial) -> Result<(), CdgaError> {
        if m.exps.len() != self.generators.len() || m.base() >= self.base.dim() {
            return Err(CdgaError::ContextMismatch(format!("{m:?}")));
        }
        if m.exps.iter().enumerate().any(|(i, &e)| self.odd[i] && e > 1) {
            return Err(CdgaError::ContextMismatch(format!("odd exponent above 1 in {m:?}")));
        }
        Ok(())
    }

    pub fn check_element(&self, e: &Element) -> Result<(), CdgaError> {
        e.terms().try_for_each(|(m, _)| self.check(m))
    }

    /// Accumulates `coef * a * b` into `out`.
    pub(crate) fn mul_monomials_into(&self, a: &Monomial, b: &Monomial, coef: &Rational, out: &mut Element) {
        let amask = self.odd_mask(a);
        let bmask = self.odd_mask(b);
        if amask & bmask != 0 {
            return;
        }
        // Move b's base factor left across a's generators.
        let mut parity = self.generator_parity(a) * (self.base.degree(b.base()) % 2);
        // Each odd generator of b moves left across a's odd generators of larger index.
        let mut bm = bmask;
        while bm != 0 {
            let j = bm.trailing_zeros();
            bm &= bm - 1;
            parity += (amask >> j).count_ones();
        }
        let sign = if parity % 2 == 1 { -coef } else { coef.clone() };
        let exps: Vec<u8> = a.exps.iter().zip(b.exps.iter()).map(|(x, y)| x + y).collect();
        let products = self.base.mul_basis(a.base(), b.base());
        match products {
            [] => {}
            [(k, c)] => out.add_term(Monomial::new(*k, exps), &(&sign * c)),
            _ => {
                for (k, c) in products {
                    out.add_term(Monomial::new(*k, exps.clone()), &(&sign * c));
                }
            }
        }
    }

    /// Product without context validation.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                self.mul_monomials_into(ma, mb, &(ca * cb), &mut out);
            }
        }
        out
    }

    /// Graded-commutative product; both factors must belong to this context.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, CdgaError> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.mul(a, b))
    }

    pub fn mul_monomial_element(&self, m: &Monomial, e: &Element) -> Element {
        let mut out = Element::zero();
        for (mb, cb) in e.terms() {
            self.mul_monomials_into(m, mb, cb, &mut out);
        }
        out
    }

    /// `(degree, weight)` if every term shares it; `None` for inhomogeneous
    /// elements. The zero element reports `Some(None)`.
    pub fn bidegree(&self, e: &Element) -> Option<Option<(u32, u32)>> {
        let mut it = e.terms().map(|(m, _)| (self.degree(m), self.weight(m)));
        let Some(first) = it.next() else { return Some(None) };
        if it.all(|x| x == first) {
            Some(Some(first))
        } else {
            None
        }
    }

    /// All monomials of the given degree (and weight), in canonical order.
    pub fn monomials_of(&self, degree: u32, weight: Option<u32>) -> Vec<Monomial> {
        self.monomials_in(degree, weight, None, true)
    }

    /// Monomials using only the generators selected by `mask`; when
    /// `with_base` is false the base factor is the unit.
    pub fn monomials_in(&self, degree: u32, weight: Option<u32>, mask: Option<&[bool]>, with_base: bool) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u8; self.generators.len()];
        self.enumerate(0, degree, 0, weight, mask, with_base, &mut exps, &mut out);
        out.sort();
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        &self,
        g: usize,
        remaining: u32,
        wsum: u32,
        weight: Option<u32>,
        mask: Option<&[bool]>,
        with_base: bool,
        exps: &mut Vec<u8>,
        out: &mut Vec<Monomial>,
    ) {
        if weight.is_some_and(|w| wsum > w) {
            return;
        }
        if g == self.generators.len() {
            let unit = [self.base.unit()];
            let candidates: &[usize] = if with_base {
                self.base_by_degree.get(remaining as usize).map_or(&[], |v| v.as_slice())
            } else if remaining == 0 {
                &unit
            } else {
                &[]
            };
            for &b in candidates {
                if weight.is_none_or(|w| w == wsum + self.base.weight(b)) {
                    out.push(Monomial::new(b, exps.clone()));
                }
            }
            return;
        }
        let gen = &self.generators[g];
        let allowed = mask.is_none_or(|m| m[g]);
        let max_e = if !allowed {
            0
        } else if gen.is_odd() {
            1
        } else {
            remaining / gen.degree
        };
        for e in 0..=max_e {
            let used = e * gen.degree;
            if used > remaining {
                break;
            }
            exps[g] = u8::try_from(e).expect("exponent exceeds 255");
            self.enumerate(g + 1, remaining - used, wsum + e * gen.weight, weight, mask, with_base, exps, out);
        }
        exps[g] = 0;
    }

    /// Applies a generator-defined homomorphism, extended multiplicatively.
    pub fn apply_homomorphism(&self, map: &AlgebraMap, e: &Element) -> Result<Element, CdgaError> {
        self.validate_map(map)?;
        self.check_element(e)?;
        Ok(self.apply_map_unchecked(map, e))
    }

    pub(crate) fn validate_map(&self, map: &AlgebraMap) -> Result<(), CdgaError> {
        if map.base_images.len() != self.base.dim() || map.generator_images.len() != self.generators.len() {
            return Err(CdgaError::ContextMismatch("homomorphism has the wrong number of images".into()));
        }
        let expect = |img: &Element, d: u32, w: u32, what: &str| -> Result<(), CdgaError> {
            self.check_element(img)?;
            match self.bidegree(img) {
                Some(None) => Ok(()),
                Some(Some(bd)) if bd == (d, w) => Ok(()),
                _ => Err(CdgaError::NotHomogeneous(format!(
                    "image of {what} must have degree {d} and weight {w}: {}",
                    self.format_element(img)
                ))),
            }
        };
        for (i, img) in map.base_images.iter().enumerate() {
            expect(img, self.base.degree(i), self.base.weight(i), self.base.label(i))?;
        }
        for (g, img) in map.generator_images.iter().enumerate() {
            let s = &self.generators[g];
            expect(img, s.degree, s.weight, &s.label)?;
        }
        Ok(())
    }

    pub(crate) fn apply_map_unchecked(&self, map: &AlgebraMap, e: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            let mut img = map.base_images[m.base()].clone();
            for (g, &k) in m.exps.iter().enumerate() {
                for _ in 0..k {
                    img = self.mul(&img, &map.generator_images[g]);
                }
            }
            out.add_scaled(&img, c);
        }
        out
    }

    /// Checks `f(b_i b_j) = f(b_i) f(b_j)` on all base basis pairs.
    pub fn verify_base_multiplicative(&self, map: &AlgebraMap) -> Result<(), CdgaError> {
        let dim = self.base.dim();
        for i in 0..dim {
            for j in 0..dim {
                let prod = Element::from_terms(
                    self.base
                        .mul_basis(i, j)
                        .iter()
                        .map(|(k, c)| (self.base_monomial(*k), c.clone())),
                );
                let lhs = self.apply_map_unchecked(map, &prod);
                let rhs = self.mul(&map.base_images[i], &map.base_images[j]);
                if lhs != rhs {
                    return Err(CdgaError::Verification(format!(
                        "map is not multiplicative on ({}, {})",
                        self.base.label(i),
                        self.base.label(j)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        if m.base() != self.base.unit() || m.total() == 0 {
            parts.push(self.base.label(m.base()).to_string());
        }
        for (g, &e) in m.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.generators[g].label.clone()),
                _ => parts.push(format!("{}^{}", self.generators[g].label, e)),
            }
        }
        parts.join("·")
    }

    pub fn format_element(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in e.terms().enumerate() {
            let neg = c.signum() < 0;
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                s.push_str(&format!("{abs}·"));
            }
            s.push_str(&self.format_monomial(m));
        }
        s
    }
}
