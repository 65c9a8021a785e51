//! Command-line front end. Every subcommand prints a JSON report
//! `{command, config, result, ok}`; exit codes are 0 for success, 1 for a
//! failed verification or an infeasible search, 2 for usage and budget errors.

mod commands;
pub mod table;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::table::{GroupType, TableError};

#[derive(Parser, Debug)]
#[command(
    name = "qdesign",
    version,
    about = "Designs over finite fields, their groups and codes"
)]
pub struct Cli {
    /// Write the JSON report to this file and print a one-line summary.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

/// Field given as `p^e` or as the order `q`.
type FieldSpec = String;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum GenKind {
    /// A Singer cycle of GL(n, q).
    Singer,
    /// Generators of all of GL(n, q).
    Gl,
    /// The trivial group.
    Trivial,
}

#[derive(Args, Debug, Serialize)]
pub struct GroupArgs {
    /// Group file: header "p^e n", then generator matrices separated by blank lines.
    #[arg(long, conflicts_with_all = ["q", "n"])]
    pub group_file: Option<PathBuf>,
    #[arg(long, requires = "n")]
    pub q: Option<FieldSpec>,
    #[arg(long, requires = "q")]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value = "singer")]
    pub generators: GenKind,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Gaussian binomial [n choose k]_q.
    Gauss(GaussArgs),
    /// List the k-subspaces of F_q^n.
    Subspaces(SubspacesArgs),
    /// Orbits of a matrix group on k-subspaces.
    Orbits(OrbitsArgs),
    /// A Singer cycle of GL(n, q).
    Singer(SingerArgs),
    /// Count r-subspaces that split F_q^n under a Singer cycle.
    SplittingCount(SplittingArgs),
    /// Verify a design file.
    DesignVerify(DesignVerifyArgs),
    /// Kramer-Mesner search for a design with a prescribed group.
    KmSearch(KmArgs),
    /// Verify a group divisible design file.
    GddVerify(FileArgs),
    /// Check that design files partition the Grassmannian.
    LargesetCheck(LargeSetArgs),
    /// Lines of PG(2, p) as a design.
    Pg2(Pg2Args),
    /// Check that the normal rational curve is an arc.
    NrcArc(NrcArgs),
    /// Reed-Solomon (evaluation) code.
    CodeRs(CodeRsArgs),
    /// Cyclic code from a generator polynomial.
    CodeCyclic(CodeCyclicArgs),
    /// Goppa code over the prime subfield.
    CodeGoppa(CodeGoppaArgs),
    /// Dual of a code file.
    CodeDual(CodeFileArgs),
    /// Minimum distance of a code file.
    CodeMindist(CodeFileArgs),
    /// Quasi-cyclic index of a code file.
    CodeQcIndex(CodeFileArgs),
    /// Image of a code under a coordinate permutation or matrix.
    CodeAction(CodeActionArgs),
    /// Count cyclic codes of length n by dimension.
    CodeCountCyclic(QnArgs),
    /// Coset leader of a word.
    CodeCoset(CodeCosetArgs),
    /// Factor x^n - 1 into monic irreducibles.
    PolyFactorXn1(QnArgs),
    /// The cyclotomic polynomial Phi_n.
    PolyCyclotomic(CyclotomicArgs),
    /// Count irreducible and separable polynomials.
    PolyCountIrr(CountIrrArgs),
    /// Partial fraction decomposition of f/g.
    PolyPartfrac(FgArgs),
    /// Continued fraction expansion of f/g.
    PolyContfrac(FgArgs),
    /// Toy key exchange in a dihedral group. Insecure: the discrete log is trivial here.
    Dh(DhArgs),
    /// Brute-force discrete logarithm in the rotations of a dihedral group.
    Dlp(DlpArgs),
    /// Cayley graph of a group with respect to a subset.
    Cayley(CayleyArgs),
    /// Measure designs for one row of the group/design tables.
    TableCheck(TableArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct GaussArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub q: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct SubspacesArgs {
    #[arg(long)]
    pub q: FieldSpec,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
    /// Include every subspace in the report.
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct OrbitsArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct SingerArgs {
    #[arg(long)]
    pub q: FieldSpec,
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct SplittingArgs {
    #[arg(long)]
    pub q: FieldSpec,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct DesignVerifyArgs {
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Exact,
    AtLeast,
}

#[derive(Args, Debug, Serialize)]
pub struct KmArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub lambda: u64,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 16)]
    pub max_solutions: usize,
    #[arg(long, default_value_t = 50_000_000)]
    pub node_budget: u64,
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
    /// Write the first design found as a design file.
    #[arg(long)]
    pub save_design: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct FileArgs {
    #[arg(long)]
    pub file: PathBuf,
}

#[derive(Args, Debug, Serialize)]
pub struct LargeSetArgs {
    /// Design files; repeat the flag for each.
    #[arg(long = "file", required = true)]
    pub files: Vec<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct Pg2Args {
    #[arg(long)]
    pub p: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct NrcArgs {
    #[arg(long)]
    pub q: FieldSpec,
    #[arg(long)]
    pub n: usize,
    /// Subset size to test; defaults to n + 1.
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct CodeRsArgs {
    #[arg(long)]
    pub q: FieldSpec,
    /// Evaluation points as element codes, e.g. "1 2 3 4".
    #[arg(long)]
    pub points: String,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 1 << 20)]
    pub budget: u64,
    /// Write the code as a code file.
    #[arg(long)]
    pub save: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct CodeCyclicArgs {
    #[arg(long)]
    pub q: FieldSpec,
    #[arg(long)]
    pub n: usize,
    /// Generator polynomial, coefficients lowest first, e.g. "1 1 0 1".
    #[arg(long)]
    pub g: String,
    #[arg(long, default_value_t = 1 << 20)]
    pub budget: u64,
    #[arg(long)]
    pub save: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct CodeGoppaArgs {
    /// Extension field holding the locators and the Goppa polynomial.
    #[arg(long)]
    pub q: FieldSpec,
    /// Locators as element codes, or "all" for every element that is not a root.
    #[arg(long)]
    pub locators: String,
    /// Goppa polynomial over the extension, coefficients lowest first.
    #[arg(long)]
    pub g: String,
    #[arg(long, default_value_t = 1 << 20)]
    pub budget: u64,
    #[arg(long)]
    pub save: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct CodeFileArgs {
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long, default_value_t = 1 << 20)]
    pub budget: u64,
    #[arg(long)]
    pub save: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct CodeActionArgs {
    #[arg(long)]
    pub file: PathBuf,
    /// Coordinate permutation: position i moves to perm[i].
    #[arg(long, conflicts_with_all = ["matrix", "reversal"])]
    pub perm: Option<String>,
    /// Matrix file with an invertible n x n matrix.
    #[arg(long, conflicts_with = "reversal")]
    pub matrix: Option<PathBuf>,
    /// Reverse the coordinates.
    #[arg(long)]
    pub reversal: bool,
    #[arg(long)]
    pub save: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct CodeCosetArgs {
    #[arg(long)]
    pub file: PathBuf,
    /// Word as element codes.
    #[arg(long)]
    pub word: String,
    #[arg(long, default_value_t = 1 << 20)]
    pub budget: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct QnArgs {
    #[arg(long)]
    pub q: FieldSpec,
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct CyclotomicArgs {
    #[arg(long)]
    pub n: u64,
    /// Also reduce modulo this field.
    #[arg(long)]
    pub q: Option<FieldSpec>,
}

#[derive(Args, Debug, Serialize)]
pub struct CountIrrArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub l: u32,
    /// Also count irreducibles of degree l with f(ax) = f(x) for a of order k.
    #[arg(long)]
    pub invariant_k: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
pub struct FgArgs {
    #[arg(long)]
    pub q: FieldSpec,
    /// Numerator, coefficients lowest first.
    #[arg(long)]
    pub f: String,
    /// Denominator, coefficients lowest first.
    #[arg(long)]
    pub g: String,
}

#[derive(Args, Debug, Serialize)]
pub struct DhArgs {
    /// The group is dihedral of order 2(q - 1).
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Force the first secret instead of sampling.
    #[arg(long, requires = "e")]
    pub d: Option<u64>,
    /// Force the second secret instead of sampling.
    #[arg(long, requires = "d")]
    pub e: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
pub struct DlpArgs {
    /// Rotation order N.
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub n: u64,
    /// Target rotation exponent.
    #[arg(long)]
    pub target: u64,
    /// Make the target a reflection.
    #[arg(long)]
    pub reflection: bool,
    /// Base rotation exponent.
    #[arg(long, default_value_t = 1)]
    pub base: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct CayleyArgs {
    /// Use the cyclic group Z_m.
    #[arg(
        long,
        conflicts_with = "group_file",
        required_unless_present = "group_file"
    )]
    pub cyclic: Option<u64>,
    /// Use the matrix group of this file; the connection set is its generators.
    #[arg(long)]
    pub group_file: Option<PathBuf>,
    /// Connection set for Z_m, e.g. "1 5 11".
    #[arg(long, requires = "cyclic")]
    pub set: Option<String>,
    /// Write the graph in DOT format.
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub row: GroupType,
    #[arg(long)]
    pub q: u64,
    /// Abelian row: block size p^l.
    #[arg(long)]
    pub l: Option<u32>,
    /// Override the tabulated strength.
    #[arg(long)]
    pub t: Option<usize>,
    /// Override the tabulated block size.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 1_000_000)]
    pub subset_budget: u64,
    #[arg(long, default_value_t = 2)]
    pub lambda_max: u64,
    #[arg(long, default_value_t = 1_000_000)]
    pub node_budget: u64,
}

/// Failure of a subcommand.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] qdesign::Error),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(qdesign::Error::VerificationFailed(_))
            | CliError::Core(qdesign::Error::NotInCyclicSubgroup) => 1,
            _ => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(qdesign::Error::BudgetExceeded(_) | qdesign::Error::SizeExceeded(_)) => {
                "budget"
            }
            CliError::Core(_) => "error",
            CliError::Table(TableError::UnsupportedRow(_)) => "unsupported-row",
            CliError::Table(TableError::Core(_)) => "error",
            CliError::Io(_) => "io",
            CliError::Usage(_) => "usage",
        }
    }
}

/// A subcommand's result and whether it counts as success.
pub struct Outcome {
    pub result: Value,
    pub ok: bool,
}

impl Outcome {
    fn new(result: impl Serialize, ok: bool) -> Outcome {
        Outcome {
            result: serde_json::to_value(result).expect("reports serialize"),
            ok,
        }
    }
}

/// What a run printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                RunOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                RunOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let (name, config, outcome) = commands::dispatch(&cli.command);
    let (code, report) = match outcome {
        Ok(o) => (
            if o.ok { 0 } else { 1 },
            json!({ "command": name, "config": config, "result": o.result, "ok": o.ok }),
        ),
        Err(e) => (
            e.exit_code(),
            json!({
                "command": name,
                "config": config,
                "ok": false,
                "error": { "kind": e.kind(), "message": e.to_string() },
            }),
        ),
    };
    let mut text = serde_json::to_string_pretty(&report).expect("reports serialize");
    text.push('\n');
    match &cli.out {
        None => RunOutput {
            code,
            stdout: text,
            stderr: String::new(),
        },
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => {
                let status = match code {
                    0 => "ok",
                    1 => "failed",
                    _ => "error",
                };
                RunOutput {
                    code,
                    stdout: format!("{name}: {status}, report written to {}\n", path.display()),
                    stderr: String::new(),
                }
            }
            Err(e) => RunOutput {
                code: 2,
                stdout: String::new(),
                stderr: format!("cannot write {}: {e}\n", path.display()),
            },
        },
    }
}
