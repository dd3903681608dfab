//! Space and class specifications as accepted on the command line.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::presets;
use crate::algebra::file::load_custom_space;
use crate::algebra::{BaseAlgebra, BaseVector};
use crate::error::CdgaError;
use crate::linalg::Rational;

/// `P<n>`, `S<g>`, products `AxB`, or `custom:<path>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceSpec {
    ProjectiveSpace(u32),
    Surface(u32),
    Product(Box<SpaceSpec>, Box<SpaceSpec>),
    Custom(PathBuf),
}

impl FromStr for SpaceSpec {
    type Err = CdgaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(path) = s.strip_prefix("custom:") {
            if path.is_empty() {
                return Err(CdgaError::Parse("custom: needs a file path".into()));
            }
            return Ok(SpaceSpec::Custom(PathBuf::from(path)));
        }
        if let Some((left, right)) = s.split_once('x') {
            return Ok(SpaceSpec::Product(Box::new(left.parse()?), Box::new(right.parse()?)));
        }
        let bad = || CdgaError::Parse(format!("unknown space {s:?}; expected P<n>, S<g>, AxB or custom:<path>"));
        let (kind, num) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let num: u32 = num.parse().map_err(|_| bad())?;
        match kind {
            "P" if num >= 1 => Ok(SpaceSpec::ProjectiveSpace(num)),
            "S" => Ok(SpaceSpec::Surface(num)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceSpec::ProjectiveSpace(n) => write!(f, "P{n}"),
            SpaceSpec::Surface(g) => write!(f, "S{g}"),
            SpaceSpec::Product(a, b) => write!(f, "{a}x{b}"),
            SpaceSpec::Custom(p) => write!(f, "custom:{}", p.display()),
        }
    }
}

/// A resolved space: its cohomology ring and, when known, `c(Ω¹_X)`.
#[derive(Debug, Clone)]
pub struct Space {
    pub spec: SpaceSpec,
    pub algebra: BaseAlgebra,
    pub chern: Option<Vec<BaseVector>>,
}

impl SpaceSpec {
    pub fn resolve(&self) -> Result<Space, CdgaError> {
        let (algebra, chern) = match self {
            SpaceSpec::ProjectiveSpace(n) => (presets::projective_space(*n), Some(presets::projective_space_chern(*n))),
            SpaceSpec::Surface(g) => (presets::surface(*g), Some(presets::surface_chern(*g))),
            SpaceSpec::Product(a, b) => {
                let (a, b) = (a.resolve()?, b.resolve()?);
                let chern = match (&a.chern, &b.chern) {
                    (Some(ca), Some(cb)) => Some(presets::product_chern(&a.algebra, ca, &b.algebra, cb)),
                    _ => None,
                };
                (a.algebra.tensor_product(&b.algebra).with_name(self.to_string()), chern)
            }
            SpaceSpec::Custom(path) => {
                let loaded = load_custom_space(path).map_err(|e| CdgaError::InvalidModel(e.to_string()))?;
                (loaded.algebra, loaded.chern)
            }
        };
        Ok(Space {
            spec: self.clone(),
            algebra,
            chern,
        })
    }
}

/// `build_base`: the cohomology ring named by a specification.
pub fn build_base(spec: &SpaceSpec) -> Result<BaseAlgebra, CdgaError> {
    Ok(spec.resolve()?.algebra)
}

/// A degree-2 class given by coordinates in the degree-2 basis: a single
/// rational (`"1"`, `"-2/3"`) or a ratio list (`"[p:q]"`). No positivity is
/// required.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmpleClass {
    pub coords: Vec<Rational>,
}

impl FromStr for AmpleClass {
    type Err = CdgaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || CdgaError::Parse(format!("bad class {s:?}; expected a rational or [p:q]"));
        let parts: Vec<&str> = match t.strip_prefix('[').and_then(|u| u.strip_suffix(']')) {
            Some(inner) => inner.split(':').collect(),
            None if t.contains(':') => return Err(bad()),
            None => vec![t],
        };
        let coords = parts
            .iter()
            .map(|p| p.trim().parse::<Rational>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AmpleClass { coords })
    }
}

impl fmt::Display for AmpleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            write!(f, "{}", self.coords[0])
        } else {
            let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
            write!(f, "[{}]", parts.join(":"))
        }
    }
}

impl AmpleClass {
    pub fn single(c: Rational) -> Self {
        AmpleClass { coords: vec![c] }
    }

    /// The class as a vector of `base`; coordinates must match `dim H²`.
    pub fn resolve(&self, base: &BaseAlgebra) -> Result<BaseVector, CdgaError> {
        let deg2 = base.indices_in_degree(2);
        if deg2.len() != self.coords.len() {
            return Err(CdgaError::InvalidModel(format!(
                "class {self} has {} coordinates but H^2({}) has dimension {}",
                self.coords.len(),
                base.name(),
                deg2.len()
            )));
        }
        let mut v = base.zero_vector();
        for (i, c) in deg2.into_iter().zip(&self.coords) {
            v[i] = c.clone();
        }
        Ok(v)
    }
}

/// `c_i(Ω¹_X)` for `i = 0..=n` together with `c_1(L)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernData {
    pub classes: Vec<BaseVector>,
    pub line: BaseVector,
}

impl ChernData {
    pub fn new(base: &BaseAlgebra, classes: Vec<BaseVector>, line: BaseVector) -> Result<Self, CdgaError> {
        if classes.len() != base.n() as usize + 1 || classes[0] != base.basis_vector(base.unit()) {
            return Err(CdgaError::InvalidModel("chern data must list c_0 = 1 through c_n".into()));
        }
        for (i, c) in classes.iter().enumerate() {
            check_degree(base, c, 2 * i as u32, &format!("c_{i}"))?;
        }
        check_degree(base, &line, 2, "c_1(L)")?;
        Ok(ChernData { classes, line })
    }
}

pub(crate) fn check_degree(base: &BaseAlgebra, v: &[Rational], degree: u32, what: &str) -> Result<(), CdgaError> {
    if v.len() != base.dim() {
        return Err(CdgaError::InvalidModel(format!("{what} has the wrong length")));
    }
    match v.iter().enumerate().find(|(i, c)| !c.is_zero() && base.degree(*i) != degree) {
        Some((i, _)) => Err(CdgaError::InvalidModel(format!(
            "{what} must have degree {degree} but has a term {}",
            base.label(i)
        ))),
        None => Ok(()),
    }
}
