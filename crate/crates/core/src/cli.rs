//! Command-line driver and the text file formats it reads and writes.
//!
//! Exit codes: `0` success, `1` failed check or library error, `2` usage.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::affine::{direct_product, example1_tau, hegedus_d4, GroupAutomorphism, RegularSubgroup};
use crate::concat::ConcatCode;
use crate::error::{parse_err, Error, Result};
use crate::gf2::{format_label, parse_label, MAX_R};
use crate::hamming::PointPermutation;
use crate::invariants::{full_report, OracleLevel};
use crate::mollard::mollard_inequivalence_verdict;
use crate::search::{format_pairs, profile_file_string, table1_row, SearchOptions};
use crate::verify::{
    check_perfect, min_distance_of_words, run_plan, CheckReport, ExplicitCode, Mode, PackedCode,
    VerificationPlan, DEFAULT_SAMPLES, DEFAULT_SEED,
};

/// Largest `r` whose code is written out codeword by codeword.
pub const MAX_CODE_FILE_R: usize = 3;

/// `r=<int>` then one `<a> <τ(a)>` line per label, ascending.
pub fn permutation_file_string(tau: &PointPermutation) -> String {
    let r = tau.r();
    let mut s = format!("r={r}\n");
    for (a, &t) in tau.table().iter().enumerate() {
        s.push_str(&format!(
            "{} {}\n",
            format_label(a as u32, r),
            format_label(t, r)
        ));
    }
    s
}

pub fn parse_permutation_file(s: &str) -> Result<PointPermutation> {
    let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing r=<int>"))?;
    let r: usize = header
        .trim()
        .strip_prefix("r=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| parse_err(1, "expected r=<int>"))?;
    if !(1..=MAX_R).contains(&r) {
        return Err(Error::RankOutOfRange {
            r,
            min: 1,
            max: MAX_R,
        });
    }
    let mut map = Vec::with_capacity(1 << r);
    for (i, line) in lines {
        let lineno = i + 1;
        let mut parts = line.split_whitespace();
        let (Some(a), Some(t), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(parse_err(lineno, "expected '<bits> <bits>'"));
        };
        let a = parse_label(a, r).map_err(|e| parse_err(lineno, e.to_string()))?;
        if a as usize != map.len() {
            return Err(parse_err(
                lineno,
                "labels must be listed in ascending order",
            ));
        }
        map.push(parse_label(t, r).map_err(|e| parse_err(lineno, e.to_string()))?);
    }
    PointPermutation::new(r, map)
}

/// `r=<r> tau=<path> punctured=<bool>`, optionally followed by
/// `group=<path>` naming the regular subgroup that induces `τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descriptor {
    pub r: usize,
    pub tau: PathBuf,
    pub punctured: bool,
    pub group: Option<PathBuf>,
}

impl Descriptor {
    pub fn to_file_string(&self) -> String {
        let mut s = format!(
            "r={} tau={} punctured={}",
            self.r,
            self.tau.display(),
            self.punctured
        );
        if let Some(g) = &self.group {
            s.push_str(&format!(" group={}", g.display()));
        }
        s.push('\n');
        s
    }

    pub fn from_file_str(s: &str) -> Result<Self> {
        let line = s.lines().find(|l| !l.trim().is_empty()).unwrap_or_default();
        let (mut r, mut tau, mut punctured, mut group) = (None, None, None, None);
        for field in line.split_whitespace() {
            match field.split_once('=') {
                Some(("r", v)) => r = v.parse::<usize>().ok(),
                Some(("tau", v)) => tau = Some(PathBuf::from(v)),
                Some(("punctured", v)) => punctured = v.parse::<bool>().ok(),
                Some(("group", v)) => group = Some(PathBuf::from(v)),
                _ => return Err(parse_err(1, format!("unexpected field {field:?}"))),
            }
        }
        match (r, tau, punctured) {
            (Some(r), Some(tau), Some(punctured)) => Ok(Self {
                r,
                tau,
                punctured,
                group,
            }),
            _ => Err(parse_err(1, "expected r=<int> tau=<path> punctured=<bool>")),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "propelinear",
    version,
    about = "Propelinear perfect codes from regular subgroups of GA(r,2)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build S_{H,τ}; writes the codewords for r <= 3, a descriptor otherwise.
    Construct {
        #[command(flatten)]
        tau: TauArgs,
        #[arg(long)]
        punctured: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Distension, deficiency, rank and kernel dimension.
    Invariants {
        #[command(flatten)]
        tau: TauArgs,
        #[arg(long, value_enum, default_value_t = OracleArg::Structural)]
        oracle: OracleArg,
    },
    /// The (l,k) pairs over all regular subgroups of GA(r,2).
    Table1 {
        #[arg(long)]
        r: usize,
        /// Allow r=5 (very long-running).
        #[arg(long)]
        opt_in_r5: bool,
        #[arg(long)]
        jobs: Option<usize>,
        /// Also write a profile file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Perfectness, distance, propelinearity and puncturing checks.
    Verify {
        /// Code file or descriptor.
        #[arg(long)]
        code: PathBuf,
        /// Defaults to exhaustive for r <= 3 and randomized above.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Kernel-fingerprint verdict against Mollard codes.
    MollardVerdict {
        #[command(flatten)]
        tau: TauArgs,
        #[arg(long)]
        punctured: bool,
    },
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false, id = "source")]
pub struct TauSource {
    #[arg(long)]
    pub tau: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub builtin: Option<Builtin>,
}

#[derive(Args, Debug, Clone)]
pub struct TauArgs {
    #[arg(long)]
    pub r: Option<usize>,
    #[command(flatten)]
    pub source: TauSource,
    /// Group file for a `--tau` permutation; `τ` must come from one of its
    /// automorphisms.
    #[arg(long, conflicts_with = "builtin")]
    pub group: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// The automorphism of the dihedral subgroup of GA(3,2) (r = 3).
    Example1,
    Identity,
    /// The example automorphism repeated r/3 times.
    Composite,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum OracleArg {
    None,
    Structural,
    Enumeration,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ModeArg {
    Exhaustive,
    Randomized,
}

/// A permutation together with the group inducing it, when known.
struct Resolved {
    tau: PointPermutation,
    group: Option<RegularSubgroup>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

enum CliError {
    Usage(String),
    Failure(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::RankOutOfRange { .. } | Error::NoDecomposition(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Failure(other.to_string()),
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Failure(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> std::result::Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn write_file(path: &Path, contents: &str) -> std::result::Result<(), CliError> {
    fs::write(path, contents).map_err(|e| io_err(path, e))
}

fn resolve(args: &TauArgs) -> std::result::Result<Resolved, CliError> {
    if let Some(path) = &args.source.tau {
        let tau = parse_permutation_file(&read(path)?)?;
        if let Some(r) = args.r {
            if r != tau.r() {
                return Err(usage(format!(
                    "--r {r} but the permutation file has r={}",
                    tau.r()
                )));
            }
        }
        let group = match &args.group {
            Some(g) => {
                let group = RegularSubgroup::from_file_str(&read(g)?)?;
                GroupAutomorphism::new(&group, tau.clone())?;
                Some(group)
            }
            None => None,
        };
        return Ok(Resolved { tau, group });
    }
    let builtin = args.source.builtin.expect("clap requires a source");
    match builtin {
        Builtin::Example1 => {
            if args.r.is_some_and(|r| r != 3) {
                return Err(usage("example1 has r=3"));
            }
            Ok(Resolved {
                tau: example1_tau().into_tau(),
                group: Some(hegedus_d4()),
            })
        }
        Builtin::Identity => {
            let r = args
                .r
                .ok_or_else(|| usage("--builtin identity needs --r"))?;
            if !(2..=MAX_R).contains(&r) {
                return Err(usage(format!("r must lie in 2..={MAX_R}")));
            }
            Ok(Resolved {
                tau: PointPermutation::identity(r),
                group: crate::affine::translation_subgroup(r).ok(),
            })
        }
        Builtin::Composite => {
            let r = args
                .r
                .ok_or_else(|| usage("--builtin composite needs --r"))?;
            if r == 0 || r % 3 != 0 || r > MAX_R {
                return Err(usage(
                    "--builtin composite needs r a positive multiple of 3",
                ));
            }
            let base = example1_tau().into_tau();
            let mut tau = base.clone();
            let mut group = hegedus_d4();
            for _ in 1..r / 3 {
                tau = tau.concat(&base);
                group = direct_product(&group, &hegedus_d4())?;
            }
            Ok(Resolved {
                tau,
                group: Some(group),
            })
        }
    }
}

fn construct(
    tau_args: &TauArgs,
    punctured: bool,
    out_path: &Path,
    out: &mut dyn Write,
) -> std::result::Result<(), CliError> {
    let resolved = resolve(tau_args)?;
    let r = resolved.tau.r();
    let code = if punctured {
        ConcatCode::new_punctured(resolved.tau.clone())?
    } else {
        ConcatCode::new(resolved.tau.clone())?
    };
    if r <= MAX_CODE_FILE_R {
        let explicit = ExplicitCode::from_code(&code)?;
        write_file(out_path, &explicit.to_file_string())?;
        writeln!(
            out,
            "wrote n={} count={} to {}",
            code.length(),
            explicit.len(),
            out_path.display()
        )
        .ok();
        return Ok(());
    }
    let tau_path = match &tau_args.source.tau {
        Some(p) => p.clone(),
        None => {
            let p = out_path.with_extension("tau");
            write_file(&p, &permutation_file_string(&resolved.tau))?;
            p
        }
    };
    let group = match &resolved.group {
        Some(g) => {
            let p = out_path.with_extension("group");
            write_file(&p, &g.to_file_string())?;
            Some(p)
        }
        None => None,
    };
    let desc = Descriptor {
        r,
        tau: tau_path,
        punctured,
        group,
    };
    write_file(out_path, &desc.to_file_string())?;
    writeln!(
        out,
        "wrote descriptor r={r} n={} to {}",
        code.length(),
        out_path.display()
    )
    .ok();
    Ok(())
}

fn verify(
    code_path: &Path,
    mode: impl Fn(usize) -> Mode,
) -> std::result::Result<Vec<CheckReport>, CliError> {
    let text = read(code_path)?;
    let first = text.lines().next().unwrap_or_default();
    let reports = if first.starts_with("n=") {
        let code = ExplicitCode::from_file_str(&text)?;
        let mode = mode(0);
        let mut reports = Vec::new();
        if (code.length() + 1).is_power_of_two() {
            reports.push(check_perfect(&code, mode)?);
        }
        reports.push(min_distance_of_words(&code.words()?, code.length(), mode));
        reports
    } else {
        let desc = Descriptor::from_file_str(&text)?;
        let base = code_path.parent().unwrap_or(Path::new("."));
        let tau = parse_permutation_file(&read(&base.join(&desc.tau))?)?;
        if tau.r() != desc.r {
            return Err(CliError::Failure(format!(
                "descriptor says r={} but the permutation has r={}",
                desc.r,
                tau.r()
            )));
        }
        let group = match &desc.group {
            Some(g) => Some(RegularSubgroup::from_file_str(&read(&base.join(g))?)?),
            None => None,
        };
        run_plan(&tau, group.as_ref(), &VerificationPlan::all(mode(desc.r)))?
    };
    Ok(reports)
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> std::result::Result<bool, CliError> {
    match &cli.command {
        Command::Construct {
            tau,
            punctured,
            out: path,
        } => {
            construct(tau, *punctured, path, out)?;
            Ok(true)
        }
        Command::Invariants { tau, oracle } => {
            let resolved = resolve(tau)?;
            let level = match oracle {
                OracleArg::None => OracleLevel::None,
                OracleArg::Structural => OracleLevel::Structural,
                OracleArg::Enumeration => OracleLevel::Enumeration,
            };
            let report = full_report(&resolved.tau, level)?;
            writeln!(out, "{}", report.summary_line()).ok();
            writeln!(out, "{}", report.to_tsv_line()).ok();
            Ok(true)
        }
        Command::Table1 {
            r,
            opt_in_r5,
            jobs,
            out: path,
        } => {
            let opts = SearchOptions {
                allow_r5: *opt_in_r5,
                jobs: *jobs,
            };
            let pairs = table1_row(*r, opts)?;
            if let Some(p) = path {
                write_file(p, &profile_file_string(&pairs))?;
            }
            writeln!(out, "{}", format_pairs(&pairs)).ok();
            Ok(true)
        }
        Command::Verify {
            code,
            mode,
            samples,
            seed,
            jobs,
        } => {
            let randomized = Mode::Randomized {
                samples: *samples,
                seed: *seed,
            };
            let mode = |r: usize| match mode {
                Some(ModeArg::Exhaustive) => Mode::Exhaustive,
                Some(ModeArg::Randomized) => randomized,
                None if r <= MAX_CODE_FILE_R => Mode::Exhaustive,
                None => randomized,
            };
            let reports = match jobs {
                Some(n) => {
                    let pool = rayon::ThreadPoolBuilder::new()
                        .num_threads((*n).max(1))
                        .build()
                        .map_err(|e| CliError::Failure(e.to_string()))?;
                    pool.install(|| verify(code, mode))?
                }
                None => verify(code, mode)?,
            };
            for rep in &reports {
                writeln!(out, "{rep}").ok();
            }
            Ok(reports.iter().all(|r| r.passed))
        }
        Command::MollardVerdict { tau, punctured } => {
            let resolved = resolve(tau)?;
            let code = if *punctured {
                ConcatCode::new_punctured(resolved.tau)?
            } else {
                ConcatCode::new(resolved.tau)?
            };
            writeln!(out, "{}", mollard_inequivalence_verdict(&code)?).ok();
            Ok(true)
        }
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code. Diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                write!(out, "{rendered}").ok();
            } else {
                write!(err, "{rendered}").ok();
            }
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(CliError::Usage(msg)) => {
            writeln!(err, "error: {msg}").ok();
            2
        }
        Err(CliError::Failure(msg)) => {
            writeln!(err, "error: {msg}").ok();
            1
        }
    }
}
