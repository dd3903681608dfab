//! Builds models from command-line specifications and runs computations.

use std::sync::Arc;

use anyhow::{anyhow, bail, Context as _, Result};
use cdgacalc_core::analysis::{
    character_euler, cohomology_euler, invariant_cohomology, p_r_closed_form, poincare_series_u, r1_stable_series,
    rho_bracket, rho_series, sign_isotypic_cohomology, weightwise_euler, BigradedSeries, ClassFunction, Variable,
};
use cdgacalc_core::cdga::VerifyReport;
use cdgacalc_core::models::{
    build_a_r, build_a_r_l, build_c_r, AmpleClass, ChernData, Permutation, Space, SpaceSpec,
};
use cdgacalc_core::{CohomologyTable, Engine, ModelMeta};

use crate::cli::{Character, Isotypic, ModelArgs, ModelKind, SeriesKind};

pub const TABLE_1: [(&str, &str, usize, [usize; 11]); 4] = [
    ("P2", "1", 2, [1, 1, 2, 3, 1, 4, 5, 3, 4, 4, 6]),
    ("S1", "1", 2, [1, 5, 15, 29, 47, 69, 94, 122, 153, 187, 224]),
    ("P1xP1", "[1:1]", 2, [1, 1, 4, 6, 5, 16, 14, 12, 28, 18, 15]),
    ("P2", "1", 3, [1, 1, 3, 4, 1, 9, 12, 7, 15, 21, 22]),
];

pub fn resolve_space(spec: &str) -> Result<Space> {
    let spec: SpaceSpec = spec.parse()?;
    spec.resolve().with_context(|| format!("cannot load space {spec}"))
}

pub fn build_model(args: &ModelArgs) -> Result<Engine> {
    if args.r == 0 {
        bail!("--r must be at least 1");
    }
    let space = resolve_space(&args.space)?;
    let base = &space.algebra;
    let class = || -> Result<_> {
        let c: AmpleClass = args.c.as_deref().unwrap_or("1").parse()?;
        Ok(c.resolve(base)?)
    };
    let p = match args.model {
        ModelKind::Cr => {
            if args.c.is_some() {
                bail!("--c has no meaning for the c-r model");
            }
            build_c_r(base, args.r)?
        }
        ModelKind::Ar => build_a_r(base, &class()?, args.r)?,
        ModelKind::Arl => {
            let d = args.d.ok_or_else(|| anyhow!("the a-r-l model needs --d"))?;
            if d < 0 {
                bail!("--d must be nonnegative");
            }
            let chern = space
                .chern
                .clone()
                .ok_or_else(|| anyhow!("space {} carries no Chern classes; add a \"chern\" field", space.spec))?;
            build_a_r_l(base, &ChernData::new(base, chern, class()?)?, d, args.r)?
        }
    };
    if args.d.is_some() && args.model != ModelKind::Arl {
        bail!("--d is only used by the a-r-l model");
    }
    Ok(Engine::new(Arc::new(p)))
}

pub fn cohomology(args: &ModelArgs, max_degree: u32, by_weight: bool) -> Result<CohomologyTable> {
    let engine = build_model(args)?;
    Ok(engine.cohomology_checked(max_degree, by_weight)?)
}

pub fn verify(args: &ModelArgs, max_degree: u32) -> Result<(ModelMeta, VerifyReport)> {
    let engine = build_model(args)?;
    Ok((engine.presentation().meta().clone(), engine.verify(max_degree)))
}

/// A named list of truncated series sharing a variable.
pub struct SeriesReport {
    pub meta: ModelMeta,
    pub variable: Variable,
    pub truncation: usize,
    pub series: Vec<(String, BigradedSeries)>,
}

pub fn euler(args: &ModelArgs, w_max: usize, character: Option<Character>) -> Result<SeriesReport> {
    let engine = build_model(args)?;
    if let Some(f) = engine.verify(w_max as u32).failure {
        bail!("verification failed: {f}");
    }
    let mut series = vec![
        ("slices".to_string(), weightwise_euler(&engine, w_max)?),
        ("cohomology".to_string(), cohomology_euler(&engine, w_max)?),
    ];
    if args.model == ModelKind::Ar {
        let base = resolve_space(&args.space)?.algebra;
        series.push(("closed_form".to_string(), p_r_closed_form(&base, args.r, w_max)?));
    }
    if let Some(ch) = character {
        let chi = match ch {
            Character::Trivial => ClassFunction::trivial(args.r),
            Character::Sign => ClassFunction::sign(args.r),
            Character::Regular => ClassFunction::regular(args.r),
        };
        series.push((format!("character_{}", ch.name()), character_euler(&engine, &chi, w_max)?));
    }
    Ok(SeriesReport {
        meta: engine.presentation().meta().clone(),
        variable: Variable::W,
        truncation: w_max,
        series,
    })
}

pub fn series(space: &str, kind: SeriesKind, r: Option<usize>, max_exp: usize) -> Result<SeriesReport> {
    let space = resolve_space(space)?;
    let base = &space.algebra;
    if r.is_some() && kind != SeriesKind::ClosedForm {
        bail!("--r is only used by the closed-form series");
    }
    let (variable, s) = match kind {
        SeriesKind::PuWeight => (Variable::W, poincare_series_u(base, max_exp, Variable::W)),
        SeriesKind::PuDegree => (Variable::T, poincare_series_u(base, max_exp, Variable::T)),
        SeriesKind::Rho => (Variable::T, rho_series(base, max_exp)),
        SeriesKind::RhoBracket => (Variable::T, rho_bracket(base, max_exp)),
        SeriesKind::OnePoint => (Variable::T, r1_stable_series(base, max_exp)?),
        SeriesKind::ClosedForm => {
            let r = r.ok_or_else(|| anyhow!("the closed-form series needs --r"))?;
            (Variable::W, p_r_closed_form(base, r, max_exp)?)
        }
    };
    Ok(SeriesReport {
        meta: ModelMeta {
            model: kind.name().into(),
            space: base.name().into(),
            r: r.unwrap_or(0),
            ..Default::default()
        },
        variable,
        truncation: max_exp,
        series: vec![(kind.name().to_string(), s)],
    })
}

/// `full`, `trivial`, or permutations in 1-based one-line notation
/// separated by `;`, e.g. `1,2,3;2,1,3`.
pub fn parse_subgroup(spec: &str, r: usize) -> Result<Vec<Permutation>> {
    match spec.trim() {
        "full" => Ok(Permutation::all(r)),
        "trivial" => Ok(vec![Permutation::identity(r)]),
        list => list
            .split(';')
            .map(|p| p.parse::<Permutation>().map_err(anyhow::Error::from))
            .collect(),
    }
}

pub fn invariants(
    args: &ModelArgs,
    subgroup: &str,
    isotypic: Isotypic,
    max_degree: u32,
    by_weight: bool,
) -> Result<CohomologyTable> {
    let group = parse_subgroup(subgroup, args.r)?;
    if let Some(p) = group.iter().find(|p| p.degree() != args.r) {
        bail!("permutation {p} does not act on {} points", args.r);
    }
    let engine = build_model(args)?;
    if let Some(f) = engine.verify(max_degree).failure {
        bail!("verification failed: {f}");
    }
    let table = match isotypic {
        Isotypic::Trivial => invariant_cohomology(&engine, &group, max_degree, by_weight)?,
        Isotypic::Sign => sign_isotypic_cohomology(&engine, &group, max_degree, by_weight)?,
    };
    Ok(table)
}

pub struct Table1Column {
    pub label: String,
    pub got: Vec<usize>,
    pub expected: [usize; 11],
}

impl Table1Column {
    pub fn matches(&self) -> usize {
        self.got.iter().zip(&self.expected).filter(|(a, b)| a == b).count()
    }
}

pub fn table1() -> Result<Vec<Table1Column>> {
    TABLE_1
        .iter()
        .map(|&(space, c, r, expected)| {
            let args = ModelArgs {
                space: space.into(),
                r,
                c: Some(c.into()),
                model: ModelKind::Ar,
                d: None,
            };
            let label = if c == "1" {
                format!("{space}, r={r}")
            } else {
                format!("{space}, r={r}, c={c}")
            };
            Ok(Table1Column {
                label,
                got: cohomology(&args, 10, false)?.totals(),
                expected,
            })
        })
        .collect()
}
