//! `lawkit`: runs the law suites, inspects fixtures, and replays stored
//! verdicts.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lawkit::gallery;
use lawkit::report::{Check, CheckReport, RunConfig, RunReport, Status};
use lawkit::splitting::split_idempotent;
use lawkit::suites;

#[derive(Parser)]
#[command(name = "lawkit", version, about = "Checks monads, distributive laws, and their composites on finite carriers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run suites by name, or `all`.
    Run {
        #[arg(required = true)]
        suites: Vec<String>,
        #[command(flatten)]
        opts: Opts,
    },
    /// Split κ of a registered law and list representatives of KX.
    Split {
        law: String,
        #[arg(long, default_value_t = 2)]
        carrier_size: usize,
        /// How many representatives to print.
        #[arg(long, default_value_t = 8)]
        show: usize,
    },
    /// Check a registered triple.
    Iterate {
        #[arg(long)]
        triple: String,
        #[arg(long, value_enum)]
        check: IterateCheck,
        #[command(flatten)]
        opts: Opts,
    },
    /// List or check registered laws and triples.
    Gallery {
        #[command(subcommand)]
        command: GalleryCommand,
    },
    /// Check algebra fixtures and λ-algebras.
    Algebras {
        #[command(subcommand)]
        command: AlgebrasCommand,
    },
    /// Check Winter-law instances.
    Winter {
        #[command(subcommand)]
        command: WinterCommand,
    },
    /// Re-evaluate every record of a stored JSON report.
    Replay { file: PathBuf },
}

#[derive(Subcommand)]
enum GalleryCommand {
    List,
    Check {
        name: String,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Subcommand)]
enum AlgebrasCommand {
    /// With `--law`, checks the λ-algebra `<law>/<fixture>`, where the
    /// fixture names the S- and T-structures as `s/t`. Without it, checks
    /// the algebra fixture itself.
    Check {
        #[arg(long)]
        law: Option<String>,
        #[arg(long)]
        fixture: String,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Subcommand)]
enum WinterCommand {
    Check {
        #[arg(long)]
        instance: String,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum IterateCheck {
    Yb,
    Phi,
    Psi,
    Assoc,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Opts {
    #[arg(long, alias = "carrier-size", default_value_t = 2)]
    max_carrier_size: usize,
    #[arg(long, default_value_t = 128)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    denom_bound: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    report: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Opts {
    fn config(&self) -> Result<RunConfig, String> {
        if self.denom_bound == 0 {
            return Err("--denom-bound must be positive".into());
        }
        if self.max_carrier_size > 4 {
            return Err("--max-carrier-size above 4 is not supported".into());
        }
        Ok(RunConfig {
            max_carrier_size: self.max_carrier_size,
            samples: self.samples,
            seed: self.seed,
            denom_bound: self.denom_bound,
            ..RunConfig::default()
        })
    }
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

/// Writes the report and maps its verdict to an exit code.
fn emit(report: &RunReport, opts: &Opts) -> ExitCode {
    let text = match opts.report {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    match &opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                return usage(format!("cannot write {}: {e}", path.display()));
            }
            print!("{}", report.to_text().lines().last().map(|l| format!("{l}\n")).unwrap_or_default());
        }
        None => print!("{text}"),
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run_checks(suite: &str, checks: Vec<Check>, opts: &Opts) -> ExitCode {
    let cfg = match opts.config() {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let report = RunReport::new(cfg, suites::run_checks(suite, &checks, &cfg));
    emit(&report, opts)
}

/// Runs the suite `<module>/<name>`.
fn scoped(module: &str, name: &str, opts: &Opts) -> ExitCode {
    let suite = format!("{module}/{name}");
    match suites::scoped_checks(&suite) {
        Some(checks) => run_checks(&suite, checks, opts),
        None => usage(format!("unknown {module} fixture `{name}`")),
    }
}

fn split(law: &str, n: usize, show: usize) -> ExitCode {
    let Some((law, _)) = gallery::law_by_name(law) else {
        return usage(format!("unknown law `{law}`"));
    };
    let split = split_idempotent(&law);
    match split.stage().enumerate(n, 1 << 20) {
        Some(vs) => {
            println!("law {}: |KX| = {} for |X| = {n}", law.name, vs.len());
            for v in vs.iter().take(show) {
                println!("  {v}");
            }
            ExitCode::SUCCESS
        }
        None => usage(format!("KX is too large to enumerate at |X| = {n}")),
    }
}

fn replay(file: &PathBuf) -> ExitCode {
    let src = match std::fs::read_to_string(file) {
        Ok(s) => s,
        Err(e) => return usage(format!("cannot read {}: {e}", file.display())),
    };
    let report: RunReport = match serde_json::from_str::<RunReport>(&src) {
        Ok(r) => r,
        Err(e) => match serde_json::from_str::<CheckReport>(&src) {
            Ok(r) => RunReport::new(RunConfig::default(), vec![r]),
            Err(_) => return usage(format!("cannot parse {}: {e}", file.display())),
        },
    };
    let mut mismatches = 0;
    for r in &report.results {
        match suites::replay_record(r, &report.config) {
            Ok(s) if s == r.status => println!("reproduced {} {}/{}", status_word(s), r.suite, r.check),
            Ok(s) => {
                mismatches += 1;
                println!("CHANGED {}/{}: stored {}, replayed {}", r.suite, r.check, status_word(r.status), status_word(s));
            }
            Err(e) => return usage(e),
        }
    }
    println!("{} records replayed, {mismatches} changed", report.results.len());
    if mismatches == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { suites: names, opts } => {
            let cfg = match opts.config() {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            match suites::run(&names, &cfg) {
                Ok(report) => emit(&report, &opts),
                Err(e) => usage(e),
            }
        }
        Command::Split { law, carrier_size, show } => split(&law, carrier_size, show),
        Command::Iterate { triple, check, opts } => {
            let Some(t) = gallery::triple_by_name(&triple) else {
                return usage(format!("unknown triple `{triple}`"));
            };
            let checks = match check {
                IterateCheck::Yb => vec![t.check_yang_baxter()],
                IterateCheck::Phi => t.check_phi(),
                IterateCheck::Psi => t.check_psi(),
                IterateCheck::Assoc => t.check_associativity(),
            };
            run_checks(&format!("iterate/{}", t.name), checks, &opts)
        }
        Command::Gallery { command: GalleryCommand::List } => {
            for line in suites::fixture_registry() {
                println!("{line}");
            }
            ExitCode::SUCCESS
        }
        Command::Gallery { command: GalleryCommand::Check { name, opts } } => scoped("gallery", &name, &opts),
        Command::Algebras { command: AlgebrasCommand::Check { law, fixture, opts } } => {
            let name = law.map_or(fixture.clone(), |l| format!("{l}/{fixture}"));
            scoped("algebras", &name, &opts)
        }
        Command::Winter { command: WinterCommand::Check { instance, opts } } => scoped("winter", &instance, &opts),
        Command::Replay { file } => replay(&file),
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
    }
}
