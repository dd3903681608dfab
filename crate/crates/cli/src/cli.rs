use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact cohomology of CDGA models of configuration spaces and of spaces of
/// marked hypersurfaces.
#[derive(Debug, Parser)]
#[command(name = "cdgacalc", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    pub format: Format,

    /// Worker threads (default: one per core).
    #[arg(long, global = true, env = "CDGACALC_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Betti numbers, optionally split by weight.
    Cohomology {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 10)]
        max_degree: u32,
        #[arg(long)]
        by_weight: bool,
    },
    /// Weightwise Euler characteristics, from slices and from cohomology.
    Euler {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 10)]
        w_max: usize,
        /// Also weight the Euler characteristic by a character of S_r.
        #[arg(long, value_enum)]
        character: Option<Character>,
    },
    /// Generating functions attached to a space.
    Series {
        #[arg(long)]
        space: String,
        #[arg(long, value_enum)]
        kind: SeriesKind,
        /// Number of points, for the closed-form series.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = 12)]
        max_exp: usize,
    },
    /// Cohomology of the invariant or sign-isotypic part under a subgroup of S_r.
    Invariants {
        #[command(flatten)]
        model: ModelArgs,
        /// `full`, `trivial`, or permutations such as `1,2,3;2,1,3`.
        #[arg(long, default_value = "full")]
        subgroup: String,
        #[arg(long, value_enum, default_value_t = Isotypic::Trivial)]
        isotypic: Isotypic,
        #[arg(long, default_value_t = 10)]
        max_degree: u32,
        #[arg(long)]
        by_weight: bool,
    },
    /// Recompute the reference Betti numbers of four A_2 and A_3 models and compare.
    Table1,
    /// Check d² = 0 and d(I) ⊆ I through a degree.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 11)]
        max_degree: u32,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// P<n>, S<g>, AxB or custom:<path>.
    #[arg(long)]
    pub space: String,
    /// Number of marked points.
    #[arg(long)]
    pub r: usize,
    /// Degree-2 class: a rational, or [p:q] when dim H² = 2. Defaults to 1.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long, value_enum, default_value_t = ModelKind::Ar)]
    pub model: ModelKind,
    /// Power of the line bundle, for the a-r-l model.
    #[arg(long)]
    pub d: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    /// A_r(X, c)
    #[value(name = "a-r")]
    Ar,
    /// C_r(X)
    #[value(name = "c-r")]
    Cr,
    /// A_r(L^d), with L given by --c
    #[value(name = "a-r-l")]
    Arl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Character {
    Trivial,
    Sign,
    Regular,
}

impl Character {
    pub fn name(self) -> &'static str {
        match self {
            Character::Trivial => "trivial",
            Character::Sign => "sign",
            Character::Regular => "regular",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Isotypic {
    Trivial,
    Sign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    /// Sym_gr(H*(X)[-1]) in the weight variable
    PuWeight,
    /// The same in the degree variable, over H^{<2n}
    PuDegree,
    /// Twisted Betti numbers of the vanishing cohomology
    Rho,
    /// The bracket factor of the rho series
    RhoBracket,
    /// Stable cohomology for one marked point
    OnePoint,
    /// Weightwise Euler characteristic of A_r in closed form
    ClosedForm,
}

impl SeriesKind {
    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::PuWeight => "pu_weight",
            SeriesKind::PuDegree => "pu_degree",
            SeriesKind::Rho => "rho",
            SeriesKind::RhoBracket => "rho_bracket",
            SeriesKind::OnePoint => "one_point",
            SeriesKind::ClosedForm => "closed_form",
        }
    }
}
