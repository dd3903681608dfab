//! The symmetric group acting on marked points.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{tensor_tuple, AlgebraMap, Element};
use crate::cdga::Engine;
use crate::error::CdgaError;
use crate::linalg::Rational;

/// A permutation of `{0, .., r-1}` in one-line notation: `i ↦ images[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, CdgaError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(CdgaError::InvalidGroup(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(r: usize) -> Self {
        Permutation((0..r).collect())
    }

    pub fn transposition(r: usize, a: usize, b: usize) -> Self {
        let mut v: Vec<usize> = (0..r).collect();
        v.swap(a, b);
        Permutation(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut v = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            v[j] = i;
        }
        Permutation(v)
    }

    /// Cycle lengths in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            if len > 0 {
                out.push(len);
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycle_type().iter().filter(|&&l| l % 2 == 0).count() % 2 == 0
    }

    /// All of `S_r` in lexicographic order.
    pub fn all(r: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..r).collect();
        loop {
            out.push(Permutation(current.clone()));
            // next lexicographic permutation
            let Some(i) = (1..r).rev().find(|&i| current[i - 1] < current[i]) else { break };
            let j = (i..r).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

/// Parses 1-based one-line notation such as `2,1,3`.
impl FromStr for Permutation {
    type Err = CdgaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let images = s
            .split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(i) if i >= 1 => Ok(i - 1),
                _ => Err(CdgaError::Parse(format!("bad permutation {s:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::new(images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Checks closure under composition and returns the elements sorted.
pub fn check_group(elements: &[Permutation]) -> Result<Vec<Permutation>, CdgaError> {
    let mut g: Vec<Permutation> = elements.to_vec();
    g.sort();
    g.dedup();
    let Some(first) = g.first() else {
        return Err(CdgaError::InvalidGroup("empty subgroup".into()));
    };
    let r = first.degree();
    if g.iter().any(|p| p.degree() != r) {
        return Err(CdgaError::InvalidGroup("permutations of different degrees".into()));
    }
    for a in &g {
        for b in &g {
            if g.binary_search(&a.compose(b)).is_err() {
                return Err(CdgaError::InvalidGroup(format!("not closed: {a} ∘ {b} is missing")));
            }
        }
    }
    Ok(g)
}

/// The map induced by `σ` on a configuration-space model: tensor factors
/// are permuted (with Koszul signs), `G_ab ↦ G_{σ(a)σ(b)}`, `α_i ↦ α_{σ(i)}`,
/// `η_i ↦ η_{σ(i)}`, and the shifted classes are fixed.
///
/// The result is checked to send relations into the ideal and to commute
/// with the differential on generators.
pub fn symmetric_action(engine: &Engine, sigma: &Permutation) -> Result<AlgebraMap, CdgaError> {
    let map = action_map(engine, sigma)?;
    verify_action(engine, &map)?;
    Ok(map)
}

fn action_map(engine: &Engine, sigma: &Permutation) -> Result<AlgebraMap, CdgaError> {
    let p = engine.presentation();
    let ctx = p.context();
    let layout = p
        .layout()
        .ok_or_else(|| CdgaError::InvalidModel("presentation carries no symmetric-group layout".into()))?;
    let r = layout.r;
    if sigma.degree() != r {
        return Err(CdgaError::InvalidGroup(format!("{sigma} does not permute {r} points")));
    }
    let dim = layout.factor_dim;
    let base = ctx.base();
    let factor = |a: usize, x: usize| {
        let mut t = vec![base_unit_factor(engine); r];
        t[a] = x;
        ctx.base_basis_element(crate::algebra::tensor_index(dim, &t))
    };
    let base_images = (0..base.dim())
        .map(|idx| {
            let tuple = tensor_tuple(dim, r, idx);
            tuple
                .iter()
                .enumerate()
                .fold(ctx.one(), |acc, (a, &x)| ctx.mul(&acc, &factor(sigma.apply(a), x)))
        })
        .collect();
    let mut generator_images: Vec<Element> = (0..ctx.num_generators()).map(|g| ctx.generator(g)).collect();
    for (&(a, b), &g) in &layout.pairs {
        let (sa, sb) = (sigma.apply(a), sigma.apply(b));
        generator_images[g] = ctx.generator(layout.pairs[&(sa.min(sb), sa.max(sb))]);
    }
    for i in 0..layout.alpha.len() {
        generator_images[layout.alpha[i]] = ctx.generator(layout.alpha[sigma.apply(i)]);
        generator_images[layout.eta[i]] = ctx.generator(layout.eta[sigma.apply(i)]);
    }
    Ok(AlgebraMap {
        base_images,
        generator_images,
    })
}

fn base_unit_factor(engine: &Engine) -> usize {
    let layout = engine.presentation().layout().expect("layout checked");
    // the unit of X^r is the tuple (u, .., u)
    engine.context().base().unit() % layout.factor_dim
}

fn verify_action(engine: &Engine, map: &AlgebraMap) -> Result<(), CdgaError> {
    let p = engine.presentation();
    let ctx = p.context();
    ctx.validate_map(map)?;
    ctx.verify_base_multiplicative(map)?;
    for rel in p.relations() {
        let Some(Some((d, w))) = ctx.bidegree(rel) else { continue };
        let img = ctx.apply_map_unchecked(map, rel);
        if !engine.normal_form(&img, &engine.quotient_slice(d, Some(w)))?.is_empty() {
            return Err(CdgaError::Verification(format!(
                "relation {} is not sent into the ideal",
                ctx.format_element(rel)
            )));
        }
    }
    for (g, spec) in ctx.generators().iter().enumerate() {
        let lhs = p.differential_of(&map.generator_images[g]);
        let rhs = ctx.apply_map_unchecked(map, &p.differential()[g]);
        let diff = lhs.minus(&rhs);
        let target = engine.quotient_slice(spec.degree + 1, Some(spec.weight));
        if !engine.normal_form(&diff, &target)?.is_empty() {
            return Err(CdgaError::Verification(format!("action does not commute with d on {}", spec.label)));
        }
    }
    Ok(())
}

/// Coefficient of the basis element `m` of a slice in the image of `m`, summed
/// over the slice.
pub(crate) fn trace_on_slice(engine: &Engine, map: &AlgebraMap, degree: u32, weight: Option<u32>) -> Rational {
    let slice = engine.quotient_slice(degree, weight);
    let ctx = engine.context();
    let mut tr = Rational::ZERO;
    for (j, m) in slice.basis().iter().enumerate() {
        let img = ctx.apply_map_unchecked(map, &Element::from_monomial(m.clone(), Rational::ONE));
        let row = engine.normal_form(&img, &slice).expect("action preserves bidegree");
        if let Ok(k) = row.binary_search_by_key(&j, |(c, _)| *c) {
            tr += &row[k].1;
        }
    }
    tr
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations() {
        let all = Permutation::all(3);
        assert_eq!(all.len(), 6);
        assert!(check_group(&all).is_ok());
        let t = Permutation::transposition(3, 0, 1);
        assert!(!t.is_even());
        assert_eq!(t.cycle_type(), vec![2, 1]);
        assert_eq!(t.compose(&t), Permutation::identity(3));
        let c: Permutation = "2,3,1".parse().unwrap();
        assert_eq!(c.cycle_type(), vec![3]);
        assert_eq!(c.compose(&c.inverse()), Permutation::identity(3));
        assert!(check_group(&[Permutation::identity(3), c.clone()]).is_err());
        assert!(check_group(&[Permutation::identity(3), c.clone(), c.compose(&c)]).is_ok());
        assert!("1,1".parse::<Permutation>().is_err());
        assert!("0,1".parse::<Permutation>().is_err());
    }
}
