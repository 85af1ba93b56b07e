//! Command-line front end for `multisupp-core`.
//!
//! Exit codes: 0 on success, 1 when the mathematical verdict is negative
//! (axiom or Ingleton violation, support differs from its polytope, ...),
//! 2 on malformed input or usage errors.

use clap::{Parser, Subcommand, ValueEnum};
use multisupp_core::arrangement::DEFAULT_TRIALS;
use multisupp_core::flagvariety::{flag_support, monk_chain_count, schubert_divisor_degree, slice_vectors};
use multisupp_core::polymatroid::{
    base_polytope_points, check_matroid, check_polymatroid, ingleton_check, representability_frontier, subset_label,
    verify_support_theorem,
};
use multisupp_core::{
    Error, Frontier, IngletonMode, LatticePointSet, MultiClass, RankFunction, RationalMatrix, SubspaceArrangement,
};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::str::FromStr;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "multisupp", version, about = "Multidegree supports and polymatroids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Points,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the polymatroid and matroid axioms of a rank function.
    CheckRank { input: PathBuf },
    /// Lattice points of the base polytope of a rank function.
    Polytope { input: PathBuf },
    /// Multidegree support of a class, in codimension form.
    Msupp {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "points")]
        format: Format,
    },
    /// Compare a support with the lattice points of its own polytope.
    /// Accepts a class (converted to dimension form) or a point set.
    VerifySupport { input: PathBuf },
    /// Rank function `I -> dim(sum W_i)` of an arrangement.
    RankFromArrangement {
        input: PathBuf,
        /// Print the projection dimensions of the arrangement variety instead.
        #[arg(long)]
        li: bool,
    },
    /// Class of the arrangement variety in a product of projective spaces.
    LiClass {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<u32>,
    },
    /// Randomized linear-section coefficient of the arrangement variety at a point.
    LiOracle {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        point: Vec<u32>,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
    },
    /// Arrangement whose projection rank is the column matroid of a matrix.
    AbLift { input: PathBuf },
    /// Embed the arrangement's polymatroid in a linear matroid.
    Embed {
        input: PathBuf,
        #[arg(long)]
        seed: u64,
    },
    /// Scan for Ingleton violations.
    Ingleton {
        input: PathBuf,
        /// Range over tuples of subsets instead of elements.
        #[arg(long)]
        subsets: bool,
    },
    /// Representability verdict from necessary conditions.
    Frontier { input: PathBuf },
    /// Degrees of Schubert divisor monomials on the complete flag variety of
    /// `K^{n+1}`.
    FlagDegrees {
        n: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Compare the flag support with its partial-flag polytope and the two
    /// degree computations with each other.
    FlagVerify { n: usize },
}

/// Failure modes of a command other than a negative verdict.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Input { path: String, source: Error },
    #[error("{0}")]
    Core(#[from] Error),
}

struct Outcome {
    text: String,
    pass: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, pass: true }
    }

    fn verdict(text: String, pass: bool) -> Self {
        Outcome { text, pass }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Input path `-` reads `stdin`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let to_stdout = !e.use_stderr();
            let sink: &mut dyn Write = if to_stdout { stdout } else { stderr };
            let _ = write!(sink, "{}", e.render());
            return if to_stdout { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match execute(&cli.command, stdin) {
        Ok(out) => {
            if stdout.write_all(out.text.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            if out.pass {
                EXIT_OK
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn read_input(path: &PathBuf, stdin: &mut dyn Read) -> Result<String, CliError> {
    let label = path.display().to_string();
    let io_err = |source| CliError::Io {
        path: label.clone(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

fn load<T: FromStr<Err = Error>>(path: &PathBuf, stdin: &mut dyn Read) -> Result<T, CliError> {
    let text = read_input(path, stdin)?;
    text.parse().map_err(|source| CliError::Input {
        path: path.display().to_string(),
        source,
    })
}

fn first_keyword(text: &str) -> Option<&str> {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.split_whitespace().next())
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn execute(command: &Command, stdin: &mut dyn Read) -> Result<Outcome, CliError> {
    match command {
        Command::CheckRank { input } => {
            let f: RankFunction = load(input, stdin)?;
            let poly = check_polymatroid(&f);
            let mat = check_matroid(&f);
            let mut text = String::new();
            let yes_no = |b: bool| if b { "yes" } else { "no" };
            writeln!(text, "polymatroid: {}", yes_no(poly.is_polymatroid())).unwrap();
            writeln!(text, "matroid: {}", yes_no(mat.is_matroid())).unwrap();
            for v in &mat.violations {
                writeln!(text, "violation: {v}").unwrap();
            }
            Ok(Outcome::verdict(text, poly.is_polymatroid()))
        }
        Command::Polytope { input } => {
            let f: RankFunction = load(input, stdin)?;
            Ok(Outcome::ok(base_polytope_points(&f)?.to_text()?))
        }
        Command::Msupp { input, format } => {
            let class: MultiClass = load(input, stdin)?;
            let text = match format {
                Format::Points => class.msupp().to_text()?,
                Format::Table => {
                    let mut text = String::new();
                    let n = class.ambient().n();
                    let header: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
                    writeln!(text, "{} coefficient", header.join(" ")).unwrap();
                    for (t, c) in class.terms() {
                        writeln!(text, "{} {c}", join(t)).unwrap();
                    }
                    text
                }
            };
            Ok(Outcome::ok(text))
        }
        Command::VerifySupport { input } => {
            let text = read_input(input, stdin)?;
            let parse_failed = |source| CliError::Input {
                path: input.display().to_string(),
                source,
            };
            let support = match first_keyword(&text) {
                Some("chowclass") => text.parse::<MultiClass>().map_err(parse_failed)?.dimension_form(),
                _ => text.parse::<LatticePointSet>().map_err(parse_failed)?,
            };
            let v = verify_support_theorem(&support)?;
            let mut out = String::new();
            writeln!(out, "verdict: {}", if v.holds { "M = Q" } else { "M != Q" }).unwrap();
            writeln!(out, "degree: {}", v.profile.d).unwrap();
            writeln!(out, "support: {} points", v.profile.support.len()).unwrap();
            writeln!(out, "polytope: {} points", v.q.len()).unwrap();
            for s in 1..1usize << support.n() {
                writeln!(out, "u{} = {}", subset_label(s), v.profile.u.get(s)).unwrap();
            }
            if let Some(w) = &v.witness {
                writeln!(out, "witness: {}", join(w)).unwrap();
            }
            Ok(Outcome::verdict(out, v.holds))
        }
        Command::RankFromArrangement { input, li } => {
            let arr: SubspaceArrangement = load(input, stdin)?;
            let f = if *li { arr.li_rank()? } else { arr.rank_function()? };
            Ok(Outcome::ok(f.to_string()))
        }
        Command::LiClass { input, dims } => {
            let arr: SubspaceArrangement = load(input, stdin)?;
            Ok(Outcome::ok(arr.li_multidegree(dims)?.to_string()))
        }
        Command::LiOracle {
            input,
            point,
            seed,
            trials,
        } => {
            let arr: SubspaceArrangement = load(input, stdin)?;
            let c = arr.generic_selection_coefficient(point, *seed, *trials)?;
            Ok(Outcome::ok(format!("{c}\n")))
        }
        Command::AbLift { input } => {
            let m: RationalMatrix = load(input, stdin)?;
            Ok(Outcome::ok(SubspaceArrangement::ardila_boocher_lift(&m).to_string()))
        }
        Command::Embed { input, seed } => {
            let arr: SubspaceArrangement = load(input, stdin)?;
            Ok(Outcome::ok(arr.embed_in_matroid(*seed)?.to_string()))
        }
        Command::Ingleton { input, subsets } => {
            let f: RankFunction = load(input, stdin)?;
            let mode = if *subsets {
                IngletonMode::Subsets
            } else {
                IngletonMode::Elements
            };
            let violations = ingleton_check(&f, mode)?;
            let mut text = String::new();
            writeln!(text, "violations: {}", violations.len()).unwrap();
            for v in &violations {
                writeln!(text, "{v}").unwrap();
            }
            Ok(Outcome::verdict(text, violations.is_empty()))
        }
        Command::Frontier { input } => {
            let f: RankFunction = load(input, stdin)?;
            let verdict = representability_frontier(&f)?;
            Ok(Outcome::verdict(
                format!("{verdict}\n"),
                verdict != Frontier::NecessaryConditionsFail,
            ))
        }
        Command::FlagDegrees { n, format } => {
            let fs = flag_support(*n)?;
            let text = match format {
                Format::Points => fs.support.to_text()?,
                Format::Table => {
                    let mut text = String::new();
                    let header: Vec<String> = (1..=*n).map(|i| format!("a{i}")).collect();
                    writeln!(text, "{} degree", header.join(" ")).unwrap();
                    for (a, d) in &fs.degrees {
                        writeln!(text, "{} {d}", join(a)).unwrap();
                    }
                    text
                }
            };
            Ok(Outcome::ok(text))
        }
        Command::FlagVerify { n } => {
            let fs = flag_support(*n)?;
            let slice = slice_vectors(*n);
            let disagreements: Vec<&Vec<u32>> = slice
                .iter()
                .filter(|a| schubert_divisor_degree(a) != monk_chain_count(a))
                .collect();
            let mut text = String::new();
            writeln!(
                text,
                "verdict: {}",
                if fs.verdict {
                    "support = polytope"
                } else {
                    "support != polytope"
                }
            )
            .unwrap();
            writeln!(text, "support: {} points", fs.support.len()).unwrap();
            writeln!(text, "polytope: {} points", fs.polytope.len()).unwrap();
            writeln!(text, "oracle disagreements: {} of {}", disagreements.len(), slice.len()).unwrap();
            for a in &disagreements {
                writeln!(text, "disagree: {}", join(a)).unwrap();
            }
            for s in 1..1usize << n {
                writeln!(text, "dim Fl{} = {}", subset_label(s), fs.dims.get(s)).unwrap();
            }
            Ok(Outcome::verdict(text, fs.verdict && disagreements.is_empty()))
        }
    }
}
