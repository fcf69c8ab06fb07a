//! `oddgz`: command-line front end. Every verb parses its arguments, calls
//! into the library and renders the result.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use oddgz::verify::{
    check_anticommutator_identities, check_character, check_defining_relations,
    check_highest_weight_vector, check_unitarity, interpolation_suite, lagrange_suite,
    worked_coefficient_suite,
};
use oddgz::{
    check_truncation_consistency, connectivity_probe, enumerate, infinite_highest_weight,
    partition_from_weight, super_character, super_dimension, vertical_strip_predecessors,
    weight_from_partition, Budget, Error, HighestWeight, Module, StableWeight, VerificationReport,
};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "oddgz",
    version,
    about = "Odd Gel'fand-Zetlin bases for covariant gl(n|n) modules"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for the parallel parts (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Largest module dimension a command may build.
    #[arg(long, global = true, env = "GZ_ODD_BUDGET", default_value_t = Budget::default().max_dim)]
    budget_dim: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Relations,
    Anticommutators,
    Character,
    Unitarity,
    Hwv,
}

#[derive(Args, Debug)]
struct HwArg {
    /// Highest weight "m_-n,...,m_-1;m_1,...,m_n".
    #[arg(long, allow_hyphen_values = true)]
    hw: String,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Dimension of V(hw).
    Dim(HwArg),
    /// All basis patterns of V(hw) in basis order.
    Enumerate(HwArg),
    /// Matrix of the Weyl element E_ab on V(hw).
    Matrix {
        #[command(flatten)]
        hw: HwArg,
        /// Indices "a,b" of E_ab.
        #[arg(long, allow_hyphen_values = true)]
        generator: String,
    },
    /// Run one verification suite on V(hw).
    Verify {
        #[command(flatten)]
        hw: HwArg,
        #[arg(long, value_enum)]
        suite: Suite,
    },
    /// Restriction of V(hw) to gl(n|n-1).
    Branch(HwArg),
    /// Monomials of the supersymmetric Schur function of V(hw).
    Char(HwArg),
    /// Randomized exact checks of the rational identities.
    Identity {
        #[arg(long, group = "which")]
        lagrange: bool,
        #[arg(long, group = "which")]
        interpolation: bool,
        /// The four-term coefficient identity at gl(4|4).
        #[arg(long, group = "which")]
        worked: bool,
        /// Largest number of nodes.
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Truncation consistency and connectivity of a stable gl(∞|∞) weight.
    Infinite {
        /// Stable weight "...t,a,b;c,d...": the leftmost negative label
        /// repeats to the left.
        #[arg(long, allow_hyphen_values = true)]
        hw: String,
        /// Truncation rank.
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

enum Failure {
    Usage(String),
    Library(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// What a verb produced: the JSON value, its text rendering, and whether
/// every check passed.
struct Output {
    json: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn plain(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            ok: true,
        }
    }

    fn report(r: &VerificationReport) -> Self {
        Output {
            json: serde_json::to_value(r).expect("reports serialize"),
            text: report_text(r),
            ok: r.success(),
        }
    }
}

fn report_text(r: &VerificationReport) -> String {
    let mut s = format!("suite: {}\n", r.suite);
    for (k, v) in &r.params {
        s += &format!("{k}: {v}\n");
    }
    if let Some(seed) = r.seed {
        s += &format!("seed: {seed}\n");
    }
    s += &format!("checks: {}\nfailures: {}\n", r.checks, r.failures.len());
    for f in &r.failures {
        s += &format!(
            "  {} at {}: expected {}, got {}\n",
            f.relation, f.location, f.expected, f.got
        );
    }
    s
}

fn parse_hw(s: &str) -> Result<HighestWeight, Failure> {
    let hw: HighestWeight = s
        .parse()
        .map_err(|e: Error| Failure::Usage(format!("--hw {s:?}: {e}")))?;
    if hw.k() != hw.n() || hw.n() == 0 {
        return Err(Failure::Usage(format!(
            "--hw {s:?}: need n labels on each side with n ≥ 1"
        )));
    }
    Ok(hw)
}

fn parse_pair(s: &str) -> Result<(i32, i32), Failure> {
    let bad = || {
        Failure::Usage(format!(
            "--generator {s:?}: expected \"a,b\" with nonzero integers"
        ))
    };
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let a: i32 = a.trim().parse().map_err(|_| bad())?;
    let b: i32 = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || b == 0 {
        return Err(bad());
    }
    Ok((a, b))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let budget = Budget {
        max_dim: cli.budget_dim,
        ..Budget::default()
    };
    Ok(match &cli.verb {
        Verb::Dim(a) => {
            let hw = parse_hw(&a.hw)?;
            let d = super_dimension(&partition_from_weight(&hw), hw.k(), hw.n())?;
            Output::plain(json!({ "dimension": d }), format!("dim V({hw}) = {d}\n"))
        }
        Verb::Enumerate(a) => {
            let hw = parse_hw(&a.hw)?;
            budget.admit(&hw)?;
            let ps = enumerate(&hw)?;
            let text = ps
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join("\n");
            Output::plain(
                json!({ "hw": hw.to_string(), "dimension": ps.len(), "patterns": ps }),
                text,
            )
        }
        Verb::Matrix { hw, generator } => {
            let hw = parse_hw(&hw.hw)?;
            let (a, b) = parse_pair(generator)?;
            budget.admit(&hw)?;
            let op = Module::new(&hw)?.weyl_element(a, b)?;
            let mut text = format!(
                "E({a},{b}) on V({hw}): dim {}, {}\n",
                op.dim(),
                op.parity().as_str()
            );
            for (r, c, v) in op.entries() {
                text += &format!("{r:>5} {c:>5}  {v}\n");
            }
            Output::plain(
                serde_json::to_value(&op).expect("operators serialize"),
                text,
            )
        }
        Verb::Verify { hw, suite } => {
            let hw = parse_hw(&hw.hw)?;
            let r = match suite {
                Suite::Relations => check_defining_relations(&hw, &budget)?,
                Suite::Anticommutators => check_anticommutator_identities(&hw, &budget)?,
                Suite::Character => check_character(&hw, &budget)?,
                Suite::Unitarity => check_unitarity(&hw, &budget)?,
                Suite::Hwv => check_highest_weight_vector(&hw)?,
            };
            Output::report(&r)
        }
        Verb::Branch(a) => {
            let hw = parse_hw(&a.hw)?;
            let n = hw.n();
            let lambda = partition_from_weight(&hw);
            let mut rows = Vec::new();
            let mut text = format!("V({hw}) restricted to gl({n}|{})\n", n - 1);
            let mut total = 0;
            for sigma in vertical_strip_predecessors(&lambda, n, n) {
                let d = super_dimension(&sigma, n, n - 1)?;
                let w = weight_from_partition(&sigma, n, n - 1)?;
                total += d;
                text += &format!("  {:<16} {:>6}\n", w.to_string(), d);
                rows.push(json!({ "partition": sigma, "weight": w, "dimension": d }));
            }
            text += &format!("  {:<16} {:>6}\n", "total", total);
            Output::plain(
                json!({ "hw": hw.to_string(), "partition": lambda, "components": rows, "total": total }),
                text,
            )
        }
        Verb::Char(a) => {
            let hw = parse_hw(&a.hw)?;
            let lambda = partition_from_weight(&hw);
            let ch = super_character(&lambda, hw.k(), hw.n())?;
            let mut text = String::new();
            let monomials: Vec<Value> = ch
                .iter()
                .map(|(e, m)| {
                    text += &format!("{m:>4}  {e:?}\n");
                    json!({ "exponents": e, "multiplicity": m })
                })
                .collect();
            Output::plain(
                json!({ "hw": hw.to_string(), "monomials": monomials }),
                text,
            )
        }
        Verb::Identity {
            lagrange,
            interpolation,
            worked,
            n,
            samples,
            seed,
        } => {
            if *n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            let r = match (lagrange, interpolation, worked) {
                (true, _, _) => lagrange_suite(*n, *samples, *seed)?,
                (_, true, _) => interpolation_suite(*n, *samples, *seed)?,
                (_, _, true) => worked_coefficient_suite(*samples, *seed)?,
                _ => {
                    return Err(Failure::Usage(
                        "choose one of --lagrange, --interpolation, --worked".into(),
                    ))
                }
            };
            Output::report(&r)
        }
        Verb::Infinite { hw, n } => {
            let w: StableWeight = hw
                .parse()
                .map_err(|e: Error| Failure::Usage(format!("--hw {hw:?}: {e}")))?;
            if *n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            let trunc = check_truncation_consistency(&w, *n, &budget)?;
            let conn = connectivity_probe(&w, *n, &budget)?;
            let text = format!(
                "{}\n{}{}",
                infinite_highest_weight(&w),
                report_text(&trunc),
                report_text(&conn)
            );
            Output {
                json: json!({
                    "weight": w,
                    "highestWeightPattern": infinite_highest_weight(&w),
                    "truncation": trunc,
                    "connectivity": conn,
                }),
                text,
                ok: trunc.success() && conn.success(),
            }
        }
    })
}

fn emit(cli: &Cli, out: &Output) -> io::Result<()> {
    let body = match cli.format {
        Format::Json => serde_json::to_string(&out.json).expect("values serialize") + "\n",
        Format::Text => out.text.clone(),
    };
    match &cli.out {
        Some(path) => File::create(path)?.write_all(body.as_bytes()),
        None => io::stdout().lock().write_all(body.as_bytes()),
    }
}

/// Errors caused by the input rather than by a failed computation.
fn is_usage(e: &Error) -> bool {
    !matches!(
        e,
        Error::FormulaIntegrity(_)
            | Error::DimensionMismatch { .. }
            | Error::FactorBoundExceeded { .. }
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("oddgz: --threads {t}: {e}");
            return ExitCode::from(2);
        }
    }
    let result = run(&cli).and_then(|out| {
        emit(&cli, &out)?;
        Ok(out.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("oddgz: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Library(e)) => {
            eprintln!("oddgz: {e}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
        Err(Failure::Io(e)) => {
            eprintln!("oddgz: {e}");
            ExitCode::from(2)
        }
    }
}
