//! Command-line front end. `execute` takes the argument vector and two
//! writers so that it can be driven in-process; the binary is a thin shell
//! around it.

pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;

use crate::degrees::DegreeTables;
use crate::eliminator::{run_lemma, solve_diophantine, Config, Equation, LemmaId, Manifest};
use crate::error::{Error, Result};
use crate::groups::{parse_and_validate, steinberg_degree, Family, GroupSpec};
use crate::multipliers::{lemma73_check_with, MultiplierCatalog, MultiplierSource};
use crate::orders::{divides_exact, evaluate_order};
use crate::zsigmondy::{
    divides_symbolic, nondivisibility_witness, ppd, Divisibility, PpdMode, PpdResult,
};

pub use report::{emit_report, Format, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "schurcheck",
    version,
    about = "Exact order, degree and multiplier checks for groups of Lie type"
)]
struct Cli {
    /// Directory of degree-table files (defaults to the built-in tables).
    #[arg(long, global = true, value_name = "DIR")]
    tables: Option<PathBuf>,
    /// Schur multiplier override file (defaults to the built-in catalog).
    #[arg(long, global = true, value_name = "FILE")]
    multipliers: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Order of a group, e.g. `order "SL(3,2)"`.
    Order { spec: String },
    /// Degree of the Steinberg character.
    Steinberg { spec: String },
    /// Schur multiplier of a simple group.
    Mult { spec: String },
    /// Primitive prime divisor of x^n - y^n.
    Ppd {
        x: u64,
        y: u64,
        n: u64,
        /// Report an explicit prime instead of mere existence.
        #[arg(long)]
        find: bool,
    },
    /// Whether |L| divides |H|.
    Divides {
        l: String,
        h: String,
        /// Decide by primitive prime divisors instead of exact division.
        #[arg(long)]
        symbolic: bool,
    },
    /// Largest e such that a primitive prime divisor of p^e - 1 divides |L| but not |H|.
    Witness { l: String, h: String },
    /// Table degrees of a classical group below a bound.
    Degrees {
        spec: String,
        /// Defaults to the table's own cutoff.
        #[arg(long)]
        below: Option<BigUint>,
    },
    /// Solutions of a rank equation such as `2m^2=n(n-1)`.
    Solve {
        equation: String,
        #[arg(long)]
        max_n: u64,
        /// Defaults to `--max-n`.
        #[arg(long)]
        max_m: Option<u64>,
    },
    /// Compares |S| with |Aut(A)| over abelian A of order at most |Mult(S)|.
    CheckLemma73 { spec: String },
    /// Runs the case analysis of one lemma (e.g. `lemma-4.1`) or `all`.
    Verify {
        lemma: String,
        /// Comma-separated sample primes.
        #[arg(long = "p", value_delimiter = ',', default_values_t = [2u64, 3, 5])]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 2)]
        max_c: u32,
        /// Largest target rank of the generic classical cases.
        #[arg(long, default_value_t = 12)]
        max_n: u32,
        /// Write the structured report here.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Record per-case times (the report is then no longer reproducible byte for byte).
        #[arg(long)]
        timing: bool,
        /// Expected-unresolved manifest (defaults to the built-in one).
        #[arg(long, value_name = "FILE")]
        manifest: Option<PathBuf>,
    },
}

/// Runs one command line. Returns the exit code: 0 when every expectation
/// holds, 1 when a verification expectation fails, 2 on usage or data errors.
pub fn execute<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let echo: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match run(cli, &echo.join(" "), out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::data(format!("write failed: {e}"))
}

fn spec(text: &str) -> Result<GroupSpec> {
    parse_and_validate(text)
}

fn run(cli: Cli, echo: &str, out: &mut dyn Write) -> Result<i32> {
    let tables = match &cli.tables {
        Some(dir) => Some(DegreeTables::load_dir(dir)?),
        None => None,
    };
    let tables = tables.as_ref().unwrap_or_else(|| DegreeTables::builtin());
    let catalog = match &cli.multipliers {
        Some(path) => Some(MultiplierCatalog::load(path)?),
        None => None,
    };
    let catalog = catalog
        .as_ref()
        .unwrap_or_else(|| MultiplierCatalog::builtin());

    macro_rules! say {
        ($($t:tt)*) => { writeln!(out, $($t)*).map_err(io_err)? };
    }

    match cli.command {
        Command::Order { spec: s } => say!("{}", evaluate_order(&spec(&s)?)),
        Command::Steinberg { spec: s } => say!("{}", steinberg_degree(&spec(&s)?)),
        Command::Mult { spec: s } => {
            let rec = catalog.mult_order(&spec(&s)?)?;
            let source = match rec.source {
                MultiplierSource::GenericFormula => "generic formula",
                MultiplierSource::PaperStated => "stated exception",
                MultiplierSource::ExternalData => "external data",
            };
            say!("{} (order {}, {source})", rec.structure, rec.order);
        }
        Command::Ppd { x, y, n, find } => {
            let mode = if find { PpdMode::Find } else { PpdMode::Exists };
            match ppd(x, y, n, mode)? {
                PpdResult::Exception => say!("none: ({x},{y},{n}) is a Zsigmondy exception"),
                PpdResult::Exists => say!("exists"),
                PpdResult::Prime(r) => say!("{r}"),
                PpdResult::Unknown => say!("exists, but no factor found within the search budget"),
            }
        }
        Command::Divides { l, h, symbolic } => {
            let (l, h) = (spec(&l)?, spec(&h)?);
            if symbolic {
                match divides_symbolic(&l, &h)? {
                    Divisibility::No(e) => say!("no (e={e})"),
                    Divisibility::Possibly => say!("possibly"),
                }
            } else {
                say!("{}", if divides_exact(&l, &h) { "yes" } else { "no" });
            }
        }
        Command::Witness { l, h } => {
            let (l, h) = (spec(&l)?, spec(&h)?);
            match nondivisibility_witness(&l, &h)? {
                Some(e) => {
                    say!("e={e}");
                    let note = match ppd(l.p, 1, e, PpdMode::Exists)? {
                        PpdResult::Exception => "none (Zsigmondy exception)".to_string(),
                        _ => format!("a primitive prime divisor of {}^{e} - 1 exists", l.p),
                    };
                    say!("ppd: {note}");
                    say!("it divides |{l}| but not |{h}|");
                    let exact = divides_exact(&l, &h);
                    say!(
                        "exact check: |{l}| {} |{h}|",
                        if exact { "divides" } else { "does not divide" }
                    );
                    if exact {
                        return Ok(EXIT_FAILED);
                    }
                }
                None => {
                    say!("no witness: every primitive prime exponent of |{l}| also occurs in |{h}|")
                }
            }
        }
        Command::Degrees { spec: s, below } => {
            let g = spec(&s)?;
            let Family::Classical(kind, n) = g.family else {
                return Err(Error::domain(format!("{g} has no low-degree table")));
            };
            let row = tables.low_degree_table(kind, n, g.p, g.exponent)?;
            let bound = below.unwrap_or_else(|| row.cutoff());
            let mut listed: Vec<(BigUint, String)> = Vec::new();
            for e in &row.entries {
                let v = e.expr.eval(n, g.p, g.exponent)?;
                if v < bound {
                    listed.push((v, e.expr.to_string()));
                }
            }
            listed.sort();
            listed.dedup_by(|a, b| a.0 == b.0);
            say!(
                "table {} ({}), degrees below {bound}:",
                row.table.id,
                row.table.family
            );
            for (v, formula) in listed {
                say!("{v}\t{formula}");
            }
        }
        Command::Solve {
            equation,
            max_n,
            max_m,
        } => {
            let eq: Equation = equation.parse()?;
            let sols = solve_diophantine(&eq, max_n, max_m.unwrap_or(max_n))?;
            let items: Vec<String> = sols.iter().map(|(n, m)| format!("({n},{m})")).collect();
            say!("{eq}: {{{}}}", items.join(","));
        }
        Command::CheckLemma73 { spec: s } => {
            let r = lemma73_check_with(catalog, &spec(&s)?)?;
            let relation = if r.pass { "<" } else { ">=" };
            say!(
                "{}: {} (|Mult| = {}, max |Aut(A)| = {} at A = {}, {relation} |S| = {})",
                r.group,
                if r.pass { "passes" } else { "fails" },
                r.multiplier.order,
                r.max_aut,
                r.witness,
                r.group_order
            );
        }
        Command::Verify {
            lemma,
            primes,
            max_c,
            max_n,
            json,
            timing,
            manifest,
        } => {
            let ids: Vec<LemmaId> = if lemma == "all" {
                LemmaId::ALL.to_vec()
            } else {
                vec![lemma.parse()?]
            };
            if primes.is_empty() || primes.iter().any(|&p| !crate::arith::is_prime_u64(p)) {
                return Err(Error::domain(format!(
                    "--p needs a list of primes, got {primes:?}"
                )));
            }
            if max_c == 0 {
                return Err(Error::domain("--max-c must be positive"));
            }
            let manifest = match manifest {
                Some(path) => Manifest::load(&path)?,
                None => Manifest::builtin().clone(),
            };
            let cfg = Config {
                primes,
                max_c,
                max_n,
                tables,
                multipliers: catalog,
                ..Config::default()
            };
            let runs = ids
                .into_iter()
                .map(|id| run_lemma(id, &cfg))
                .collect::<Result<Vec<_>>>()?;
            let report = VerificationReport::build(echo, &runs, &manifest, timing);
            out.write_all(&emit_report(&report, Format::Text))
                .map_err(io_err)?;
            if let Some(path) = json {
                std::fs::write(&path, emit_report(&report, Format::Json))
                    .map_err(|e| Error::data(format!("{}: {e}", path.display())))?;
            }
            return Ok(report.summary.exit_code);
        }
    }
    Ok(EXIT_OK)
}
