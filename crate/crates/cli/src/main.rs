mod commands;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qpencil_core::algebra::{DEFAULT_CONDUCTOR_CAP, DEFAULT_DENOM_BOUND};
use qpencil_core::pencil::Options;

#[derive(Parser, Debug)]
#[command(name = "qpencil", version, about = "Exact analysis of pencils of quadrics and their symmetry groups")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest cyclotomic conductor accepted in inputs and root recognition.
    #[arg(long, global = true, default_value_t = DEFAULT_CONDUCTOR_CAP)]
    conductor_cap: u32,
    /// Largest denominator tried when reconstructing exact roots.
    #[arg(long, global = true, default_value_t = DEFAULT_DENOM_BOUND)]
    denom_bound: u64,
    /// Seed for randomized choices (generic root sets in verify-paper).
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct PencilSource {
    /// Pencil JSON file.
    #[arg(long = "in", conflicts_with = "fixture")]
    input: Option<PathBuf>,
    /// Built-in pencil: max-cl, c5-diagonal, diag6, case-i .. case-vi.
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct GroupSource {
    /// Group JSON file.
    #[arg(long = "in", conflicts_with = "fixture")]
    input: Option<PathBuf>,
    /// Built-in group: g80, g160, aut-prime, c2-4, ghat, max-cl, cycle5.
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct SecondPencil {
    /// Pencil JSON file the group acts on.
    #[arg(long = "pencil", conflicts_with = "pencil_fixture")]
    pencil: Option<PathBuf>,
    /// Built-in pencil the group acts on.
    #[arg(long)]
    pencil_fixture: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Segre symbol, discriminant roots and characteristic numbers.
    Segre(PencilSource),
    /// Block normal form for a symbol and root positions.
    NormalForm {
        #[arg(long)]
        symbol: String,
        /// Points `(λ:μ)` one per bracket, e.g. "(1:-1),(1:-2)"; defaults to (1:-1), (1:-2), ...
        #[arg(long)]
        roots: Option<String>,
    },
    /// Validity, singular points and reduction decision for a threefold in P⁵.
    Classify {
        #[arg(long, conflicts_with_all = ["input", "fixture"])]
        symbol: Option<String>,
        #[command(flatten)]
        source: PencilSource,
    },
    /// Singular points of the intersection of the two quadrics.
    Singular(PencilSource),
    /// Projective equivalence of two pencils.
    Equivalent {
        /// Exactly two pencil files.
        #[arg(long = "in", num_args = 1, required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Order, type, and the split along the action on a pencil.
    GroupAnalyze {
        #[command(flatten)]
        group: GroupSource,
        #[command(flatten)]
        pencil: SecondPencil,
    },
    /// Orbit and stabilizer of a point.
    Orbit {
        #[command(flatten)]
        group: GroupSource,
        /// Point `(x1:...:x6)` with cyclotomic literal entries.
        #[arg(long)]
        point: String,
    },
    /// Subgroups up to conjugacy.
    Subgroups(GroupSource),
    /// Invariant class-group rank for the max-Cl threefold.
    Minimality(GroupSource),
    /// Semi-invariant forms modulo the pencil slice.
    SemiInvariants {
        #[command(flatten)]
        group: GroupSource,
        #[command(flatten)]
        pencil: SecondPencil,
        #[arg(long)]
        degree: u32,
        /// 1-based variable indices, e.g. "1,2,3,4,5"; defaults to all.
        #[arg(long)]
        vars: Option<String>,
    },
    /// Picard lattice of the quartic del Pezzo surface.
    Dp4 {
        #[command(subcommand)]
        action: Dp4Action,
    },
    /// Run the built-in reference checks and print a pass/fail table.
    VerifyPaper,
}

#[derive(Subcommand, Debug)]
enum Dp4Action {
    /// h0 by Riemann-Roch of a nef class such as "-2K" or "6M-2E".
    H0 {
        #[arg(long = "class", allow_hyphen_values = true)]
        class: String,
    },
    /// The sixteen (-1)-curves.
    Curves,
    /// Invariant class of a given anticanonical degree.
    Solve {
        #[arg(long)]
        degree: i64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options { conductor_cap: cli.conductor_cap, denom_bound: cli.denom_bound };
    let ctx = commands::Context { opts, seed: cli.seed };
    let result = match cli.command {
        Command::Segre(src) => commands::segre(&ctx, &src),
        Command::NormalForm { symbol, roots } => commands::normal_form(&ctx, &symbol, roots.as_deref()),
        Command::Classify { symbol, source } => commands::classify(&ctx, symbol.as_deref(), &source),
        Command::Singular(src) => commands::singular(&ctx, &src),
        Command::Equivalent { inputs } => commands::equivalent(&ctx, &inputs),
        Command::GroupAnalyze { group, pencil } => commands::group_analyze(&ctx, &group, &pencil),
        Command::Orbit { group, point } => commands::orbit(&ctx, &group, &point),
        Command::Subgroups(src) => commands::subgroups(&ctx, &src),
        Command::Minimality(src) => commands::minimality(&ctx, &src),
        Command::SemiInvariants { group, pencil, degree, vars } => commands::semi_invariants(&ctx, &group, &pencil, degree, vars.as_deref()),
        Command::Dp4 { action } => match action {
            Dp4Action::H0 { class } => commands::dp4_h0(&class),
            Dp4Action::Curves => commands::dp4_curves(),
            Dp4Action::Solve { degree } => commands::dp4_solve(degree),
        },
        Command::VerifyPaper => commands::verify(&ctx),
    };
    match result {
        Ok(report) => {
            let failed = report.failed;
            // a closed pipe downstream is not an error here
            let _ = writeln!(io::stdout(), "{}", report.render(cli.format));
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
