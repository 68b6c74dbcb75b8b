//! Command-line front end. Exit codes: 0 success, 1 a check failed, 2 usage
//! error, 3 a check could not be completed.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::abelian::GradedPiece;
use crate::catalog::{self, RingPresentation};
use crate::exec::Exec;
use crate::polyring::Poly;
use crate::verifier::{self, parse_suites, FaultInjection, Status, SuiteConfig, Verdict, VerifierError};
use crate::zgroebner::{strong_groebner_with, GbConfig, MonomialOrder};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "chowver",
    version,
    about = "Exact verification of integral Chow ring presentations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run named check suites and emit a report.
    Suite(SuiteArgs),
    /// Graded pieces of a ring as finitely generated abelian groups.
    Hilbert(HilbertArgs),
    /// Reduced strong Groebner basis of a ring's relations (grevlex).
    Gb(RingArgs),
    /// Decide ideal membership of a polynomial with both engines.
    Member(MemberArgs),
    /// Print a ring in the text format accepted by --ring-file.
    DumpRing(RingArgs),
}

#[derive(Debug, Args)]
struct SuiteArgs {
    /// Odd genus, at least 3.
    #[arg(long, value_parser = parse_genus)]
    g: u32,
    #[arg(long, default_value_t = verifier::DEFAULT_MAX_DEGREE)]
    max_degree: u32,
    /// Comma-separated suite names, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, default_value_t = verifier::DEFAULT_SEED)]
    seed: u64,
    /// Disable data parallelism.
    #[arg(long)]
    sequential: bool,
    /// Testing aid: negate every Groebner membership verdict.
    #[arg(long, hide = true)]
    inject_fault: bool,
    /// Testing aid: `bullet monomial delta`, applied to the theorem relations.
    #[arg(long, hide = true, num_args = 3, value_names = ["BULLET", "MONOMIAL", "DELTA"])]
    perturb: Option<Vec<String>>,
}

#[derive(Debug, Args)]
struct RingArgs {
    /// `d`, `rh`, or a classifying ring name.
    #[arg(long, conflicts_with = "ring_file", required_unless_present = "ring_file")]
    ring: Option<String>,
    /// Ring in text format (see dump-ring).
    #[arg(long)]
    ring_file: Option<PathBuf>,
    /// Odd genus, needed by `d` and `rh`.
    #[arg(long, value_parser = parse_genus)]
    g: Option<u32>,
}

#[derive(Debug, Args)]
struct HilbertArgs {
    #[command(flatten)]
    ring: RingArgs,
    #[arg(long, default_value_t = 10)]
    max_degree: u32,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    format: Format,
    #[arg(long)]
    sequential: bool,
}

#[derive(Debug, Args)]
struct MemberArgs {
    #[command(flatten)]
    ring: RingArgs,
    /// Homogeneous polynomial in the ring's variables.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
}

fn parse_genus(s: &str) -> Result<u32, String> {
    let g: u32 = s.parse().map_err(|_| format!("`{s}` is not a non-negative integer"))?;
    catalog::check_genus(g).map_err(|e| e.to_string())?;
    Ok(g)
}

struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn usage(msg: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            msg: msg.to_string(),
        }
    }

    fn error(msg: impl ToString) -> Self {
        Failure {
            code: EXIT_ERROR,
            msg: msg.to_string(),
        }
    }
}

/// Runs the CLI against explicit streams; returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "chowver: {}", f.msg);
            f.code
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn exec_mode(sequential: bool) -> Exec {
    if sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

fn load_ring(args: &RingArgs) -> Result<RingPresentation, Failure> {
    if let Some(path) = &args.ring_file {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        return RingPresentation::parse(&text).map_err(Failure::usage);
    }
    let name = args.ring.as_deref().unwrap_or_default();
    let needs_genus = matches!(name.to_ascii_lowercase().as_str(), "d" | "rh");
    let g = match (args.g, needs_genus) {
        (Some(g), _) => g,
        (None, false) => 3,
        (None, true) => return Err(Failure::usage(format!("ring `{name}` needs --g"))),
    };
    catalog::ring_by_name(name, g).map_err(Failure::usage)
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let io = |e: std::io::Error| Failure::error(e);
    match cmd {
        Command::Suite(a) => run_suite_cmd(a, out),
        Command::Hilbert(a) => {
            let ring = load_ring(&a.ring)?;
            let rows = verifier::hilbert_table(&ring, a.max_degree, exec_mode(a.sequential)).map_err(Failure::error)?;
            let text = match a.format {
                Format::Md => verifier::hilbert_markdown(&ring, &rows),
                Format::Json => verifier::hilbert_json(&ring, &rows),
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Gb(a) => {
            let ring = load_ring(&a)?;
            let gb = strong_groebner_with(
                ring.relations(),
                &MonomialOrder::grevlex(ring.vars()),
                &GbConfig::from_env(),
            )
            .map_err(Failure::error)?;
            writeln!(
                out,
                "# reduced strong Groebner basis of {} (grevlex), {} elements",
                ring.id(),
                gb.generators().len()
            )
            .map_err(io)?;
            for p in gb.generators() {
                writeln!(out, "{p}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Member(a) => {
            let ring = load_ring(&a.ring)?;
            let p = Poly::parse(&a.poly, ring.vars()).map_err(Failure::usage)?;
            if !p.is_homogeneous() {
                return Err(Failure::usage(format!("`{}` is not homogeneous", a.poly)));
            }
            let oracle = verifier::DualOracle::new(
                ring.vars(),
                ring.relations(),
                &GbConfig::from_env(),
                FaultInjection::None,
            )
            .map_err(Failure::error)?;
            match oracle.member(&p).map_err(Failure::error)? {
                Verdict::Agree(b) => {
                    let nf = oracle.groebner().normal_form(&p).map_err(Failure::error)?;
                    writeln!(out, "{}", if b { "member" } else { "not a member" }).map_err(io)?;
                    writeln!(out, "normal form: {nf}").map_err(io)?;
                    if !p.is_zero() {
                        let d = p.degree().map_err(Failure::error)?;
                        let piece =
                            GradedPiece::invariants_only(ring.vars(), ring.relations(), d).map_err(Failure::error)?;
                        writeln!(out, "degree {d} piece: {piece}").map_err(io)?;
                    }
                    Ok(EXIT_OK)
                }
                Verdict::Disagree {
                    groebner,
                    smith,
                    normal_form,
                } => {
                    writeln!(
                        out,
                        "engines disagree: groebner={groebner} (NF {normal_form}), smith={smith}"
                    )
                    .map_err(io)?;
                    Ok(EXIT_FAIL)
                }
            }
        }
        Command::DumpRing(a) => {
            let ring = load_ring(&a)?;
            out.write_all(ring.dump().as_bytes()).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

fn run_suite_cmd(a: SuiteArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut cfg = SuiteConfig::new(a.g);
    cfg.max_degree = a.max_degree;
    cfg.suites = parse_suites(&a.suite).map_err(Failure::usage)?;
    cfg.seed = a.seed;
    cfg.exec = exec_mode(a.sequential);
    if a.inject_fault {
        cfg.fault = FaultInjection::FlipGroebner;
    }
    if let Some(p) = &a.perturb {
        let parsed = verifier::parse_perturbations(&p.join(" ")).map_err(Failure::usage)?;
        cfg.perturbation = parsed.into_iter().next();
    }
    let report = verifier::run_suite_with(&cfg).map_err(|e| match e {
        VerifierError::Engine(_) => Failure::error(e),
        _ => Failure::usage(e),
    })?;
    let text = match a.format {
        Format::Json => report.to_json(),
        Format::Md => report.to_markdown(),
    };
    let io = |e: std::io::Error| Failure::error(e);
    match &a.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Failure::error(format!("{}: {e}", path.display())))?;
            for c in &report.checks {
                writeln!(out, "{} {} ({} ms)", c.status, c.name, c.elapsed_ms).map_err(io)?;
            }
        }
        None => out.write_all(text.as_bytes()).map_err(io)?,
    }
    Ok(match report.status() {
        Status::Pass => EXIT_OK,
        Status::Fail => EXIT_FAIL,
        Status::Error => EXIT_ERROR,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut o = Vec::new();
        let mut e = Vec::new();
        let code = run_with(std::iter::once("chowver").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["suite", "--g", "4"]).0, EXIT_USAGE);
        assert_eq!(call(&["suite", "--g", "3", "--suite", "bogus"]).0, EXIT_USAGE);
        assert_eq!(call(&["hilbert", "--ring", "d"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn member_and_dump() {
        let (code, out, _) = call(&["member", "--ring", "BG", "--poly", "2*gam^2"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("member"), "{out}");
        let (_, out, _) = call(&["member", "--ring", "BG", "--poly", "gam^2"]);
        assert!(out.starts_with("not a member"), "{out}");
        let (code, out, _) = call(&["dump-ring", "--ring", "rh", "--g", "3"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("rel 2*t") || out.contains("var t 1"), "{out}");
    }
}
