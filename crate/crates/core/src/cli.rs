//! Command-line front end. [`dispatch`] parses arguments, runs one
//! subcommand and returns the process exit code:
//! 0 solved/verified, 1 usage error, 2 parse error, 3 state budget or size
//! limit exceeded, 4 certificate invalid.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::arena::GameVariant;
use crate::digraph::Digraph;
use crate::hardproblems::{
    hamiltonian_cycle, min_equivalent_subgraph, min_feedback_arc_set, min_feedback_vertex_set,
    width_annotated_report, ProblemError, ProblemSolution, Witness, HARD_CSV_HEADER,
};
use crate::lab::{counterexample_family, gap_scan, LabError, ScanOptions, Source};
use crate::solver::{
    cop_number, fingerprint, gap, solve, verify_certificate, Certificate, CertificateError,
    SolveError, SolveOptions, Verification, DEFAULT_STATE_BUDGET,
};
use crate::width::{width, WidthError, WidthMeasure};

const VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Parser, Debug)]
#[command(
    name = "copsearch",
    version,
    about = "Exact cops-and-robber games on digraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GameFlags {
    /// visible, inert, invisible-fast or visible-scc
    #[arg(long, default_value = "visible")]
    variant: String,
    /// Restrict the cops to monotone strategies.
    #[arg(long)]
    monotone: bool,
    #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
    state_budget: u64,
    /// Machine-readable JSON output.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide the winner for a fixed number of cops.
    Solve {
        #[arg(long)]
        cops: usize,
        #[command(flatten)]
        game: GameFlags,
        /// Write the winning certificate here (cop wins only).
        #[arg(long)]
        emit_cert: Option<PathBuf>,
        file: PathBuf,
    },
    /// Least number of cops with a winning strategy.
    Copnum {
        #[command(flatten)]
        game: GameFlags,
        #[arg(long)]
        emit_cert: Option<PathBuf>,
        file: PathBuf,
    },
    /// Plain and monotone cop numbers, their gap and ratio.
    Gap {
        #[arg(long, default_value = "visible")]
        variant: String,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        state_budget: u64,
        #[arg(long)]
        json: bool,
        file: PathBuf,
    },
    /// Game-characterized width measure.
    Width {
        #[arg(long, value_enum)]
        measure: MeasureArg,
        /// Also report the non-monotone cop number.
        #[arg(long)]
        compare: bool,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        state_budget: u64,
        #[arg(long)]
        json: bool,
        file: PathBuf,
    },
    /// Scan many digraphs for monotonicity gaps.
    Gapscan {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, conflicts_with_all = ["random", "files"])]
        exhaustive: bool,
        /// Number of random digraphs.
        #[arg(long, conflicts_with = "files")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Scan these edge-list files instead.
        #[arg(long, num_args = 1..)]
        files: Vec<PathBuf>,
        #[arg(long, default_value = "visible")]
        variant: String,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        state_budget: u64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
        format: ReportFormat,
        /// Shorthand for `--format jsonl`.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Directory for certificates of positive-gap instances.
        #[arg(long)]
        cert_dir: Option<PathBuf>,
        /// Record wall-clock runtimes (makes reports non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Replay a certificate against a digraph.
    Certify { file: PathBuf, cert: PathBuf },
    /// Exact solvers for hard digraph problems.
    Hard {
        #[arg(value_enum)]
        problem: HardArg,
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        state_budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Member of the non-monotonicity counterexample family.
    Family {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "visible")]
        variant: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MeasureArg {
    Dagwidth,
    Kellywidth,
    Dpw,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Csv,
    Jsonl,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum HardArg {
    Ham,
    Fvs,
    Fas,
    Mes,
    /// Width-annotated table over all files.
    Report,
}

enum Failure {
    Usage(String),
    Parse(String),
    Budget(String),
    InvalidCertificate(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Budget(_) => 3,
            Failure::InvalidCertificate(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m)
            | Failure::Parse(m)
            | Failure::Budget(m)
            | Failure::InvalidCertificate(m) => m,
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            SolveError::Arena(a) => Failure::Usage(a.to_string()),
        }
    }
}

impl From<WidthError> for Failure {
    fn from(e: WidthError) -> Self {
        match e {
            WidthError::Solve(s) => s.into(),
            WidthError::TooLarge { .. } => Failure::Budget(e.to_string()),
        }
    }
}

impl From<ProblemError> for Failure {
    fn from(e: ProblemError) -> Self {
        match e {
            ProblemError::SizeLimit { .. } => Failure::Budget(e.to_string()),
            ProblemError::NotAcyclic => Failure::Usage(e.to_string()),
        }
    }
}

impl From<LabError> for Failure {
    fn from(e: LabError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read_graph(path: &Path) -> Result<Digraph, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    Digraph::parse_edge_list(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn variant_arg(s: &str) -> Result<GameVariant, Failure> {
    s.parse()
        .map_err(|e: crate::arena::ArenaError| Failure::Usage(e.to_string()))
}

fn json_line(value: serde_json::Value) -> String {
    serde_json::to_string(&value).expect("json value serializes") + "\n"
}

/// Runs the command line `argv` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match run(cli.command, out, err) {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            0
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn run(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<String, Failure> {
    match command {
        Command::Solve {
            cops,
            game,
            emit_cert,
            file,
        } => {
            let variant = variant_arg(&game.variant)?;
            let d = read_graph(&file)?;
            let opts = SolveOptions {
                monotone: game.monotone,
                state_budget: game.state_budget,
            };
            let outcome = solve(&d, cops, variant, opts)?;
            if let Some(path) = &emit_cert {
                match &outcome.certificate {
                    Some(cert) => write_file(path, &cert.to_json())?,
                    None => {
                        let _ = writeln!(err, "note: robber wins, no certificate written");
                    }
                }
            }
            let winner = if outcome.cops_win() { "COPS" } else { "ROBBER" };
            if game.json {
                Ok(json_line(json!({
                    "winner": winner.to_lowercase(),
                    "k": cops,
                    "variant": variant,
                    "monotone": game.monotone,
                    "states_explored": outcome.states_explored,
                    "graph_sha256": fingerprint(&d),
                    "version": VERSION,
                })))
            } else {
                Ok(format!("{winner}\n"))
            }
        }
        Command::Copnum {
            game,
            emit_cert,
            file,
        } => {
            let variant = variant_arg(&game.variant)?;
            let d = read_graph(&file)?;
            let opts = SolveOptions {
                monotone: game.monotone,
                state_budget: game.state_budget,
            };
            let c = cop_number(&d, variant, opts)?;
            if let Some(path) = &emit_cert {
                write_file(path, &c.certificate.to_json())?;
            }
            if game.json {
                Ok(json_line(json!({
                    "copnum": c.value,
                    "variant": variant,
                    "monotone": game.monotone,
                    "extension": variant.is_extension(),
                    "graph_sha256": fingerprint(&d),
                    "version": VERSION,
                })))
            } else {
                Ok(format!("{}\n", c.value))
            }
        }
        Command::Gap {
            variant,
            state_budget,
            json,
            file,
        } => {
            let variant = variant_arg(&variant)?;
            let d = read_graph(&file)?;
            let g = gap(&d, variant, SolveOptions::plain().with_budget(state_budget))?;
            if json {
                Ok(json_line(json!({
                    "copnum": g.cop_number,
                    "mon_copnum": g.monotone_cop_number,
                    "gap": g.gap,
                    "ratio": g.ratio,
                    "variant": variant,
                    "graph_sha256": fingerprint(&d),
                    "version": VERSION,
                })))
            } else {
                Ok(format!(
                    "copnum {}\nmon_copnum {}\ngap {}\nratio {:.4}\n",
                    g.cop_number, g.monotone_cop_number, g.gap, g.ratio
                ))
            }
        }
        Command::Width {
            measure,
            compare,
            state_budget,
            json,
            file,
        } => {
            let measure = match measure {
                MeasureArg::Dagwidth => WidthMeasure::DagWidth,
                MeasureArg::Kellywidth => WidthMeasure::KellyWidth,
                MeasureArg::Dpw => WidthMeasure::Dpw,
            };
            let d = read_graph(&file)?;
            let r = width(
                &d,
                measure,
                SolveOptions::monotone().with_budget(state_budget),
                compare,
            )?;
            if json {
                let mut v = serde_json::to_value(&r).expect("report serializes");
                v["extension"] = json!(r.variant.is_extension());
                v["graph_sha256"] = json!(fingerprint(&d));
                v["version"] = json!(VERSION);
                Ok(json_line(v))
            } else {
                let mut s = format!(
                    "{} {} (monotone {} cop number {}, offset {})\n",
                    measure.name(),
                    r.value,
                    r.variant,
                    r.cop_number,
                    r.offset
                );
                if let Some(p) = r.plain_cop_number {
                    s.push_str(&format!("non-monotone cop number {p}\n"));
                }
                Ok(s)
            }
        }
        Command::Gapscan {
            n,
            exhaustive,
            random,
            p,
            seed,
            files,
            variant,
            state_budget,
            format,
            json,
            output,
            cert_dir,
            timing,
        } => {
            let variant = variant_arg(&variant)?;
            let source = if !files.is_empty() {
                let list = files
                    .iter()
                    .map(|f| Ok((f.display().to_string(), read_graph(f)?)))
                    .collect::<Result<Vec<_>, Failure>>()?;
                Source::Instances(list)
            } else {
                let n = n.ok_or_else(|| {
                    Failure::Usage("--n is required with --exhaustive or --random".into())
                })?;
                match (exhaustive, random) {
                    (true, None) => Source::Exhaustive { n },
                    (false, Some(count)) => Source::Random { n, count, p, seed },
                    _ => {
                        return Err(Failure::Usage(
                            "choose exactly one of --exhaustive, --random COUNT or --files".into(),
                        ))
                    }
                }
            };
            let opts = ScanOptions {
                solve: SolveOptions::plain().with_budget(state_budget),
                timing,
            };
            let mut report = gap_scan(&source, variant, opts)?;
            if let Some(dir) = &cert_dir {
                fs::create_dir_all(dir)
                    .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", dir.display())))?;
                for r in report.records.iter_mut() {
                    let stem = r.graph_id.replace(['/', '\\'], "_");
                    if let Some(c) = &r.certificate {
                        let path = dir.join(format!("{stem}.{variant}.plain.json"));
                        write_file(&path, &c.to_json())?;
                        r.cert_path = Some(path.display().to_string());
                    }
                    if let Some(c) = &r.monotone_certificate {
                        let path = dir.join(format!("{stem}.{variant}.monotone.json"));
                        write_file(&path, &c.to_json())?;
                        r.mon_cert_path = Some(path.display().to_string());
                    }
                }
            }
            let s = &report.summary;
            let _ = writeln!(
                err,
                "{VERSION}: {} instances, {} solved, {} errors, {} positive gaps, max gap {}, max ratio {:.4}",
                s.instances, s.solved, s.errors, s.positive_gaps, s.max_gap, s.max_ratio
            );
            let text = if json || format == ReportFormat::Jsonl {
                report.to_jsonl()
            } else {
                report.to_csv()
            };
            match output {
                Some(path) => {
                    write_file(&path, &text)?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Certify { file, cert } => {
            let d = read_graph(&file)?;
            let text = fs::read_to_string(&cert)
                .map_err(|e| Failure::Parse(format!("{}: {e}", cert.display())))?;
            let cert = Certificate::from_json(&text).map_err(|e| Failure::Parse(e.to_string()))?;
            match verify_certificate(&d, &cert) {
                Ok(Verification::Valid) => Ok("VALID\n".into()),
                Ok(Verification::Invalid(reason)) => {
                    let _ = out.write_all(b"INVALID\n");
                    Err(Failure::InvalidCertificate(reason))
                }
                Err(e @ CertificateError::FingerprintMismatch { .. }) => {
                    let _ = out.write_all(b"INVALID\n");
                    Err(Failure::InvalidCertificate(e.to_string()))
                }
                Err(e @ CertificateError::Malformed(_)) => Err(Failure::Parse(e.to_string())),
            }
        }
        Command::Hard {
            problem,
            files,
            state_budget,
            json,
        } => {
            let solver: fn(&Digraph) -> Result<ProblemSolution, ProblemError> = match problem {
                HardArg::Ham => hamiltonian_cycle,
                HardArg::Fvs => min_feedback_vertex_set,
                HardArg::Fas => min_feedback_arc_set,
                HardArg::Mes => min_equivalent_subgraph,
                HardArg::Report => {
                    let instances = files
                        .iter()
                        .map(|f| Ok((f.display().to_string(), read_graph(f)?)))
                        .collect::<Result<Vec<_>, Failure>>()?;
                    let rows = width_annotated_report(
                        &instances,
                        SolveOptions::plain().with_budget(state_budget),
                    );
                    let text = if json {
                        rows.iter()
                            .map(|r| serde_json::to_string(r).expect("row serializes") + "\n")
                            .collect()
                    } else {
                        let mut s = format!("{HARD_CSV_HEADER}\n");
                        for r in &rows {
                            s.push_str(&r.to_csv());
                            s.push('\n');
                        }
                        s
                    };
                    return Ok(text);
                }
            };
            let mut text = String::new();
            for f in &files {
                let d = read_graph(f)?;
                let sol = solver(&d)?;
                if json {
                    let mut v = serde_json::to_value(&sol).expect("solution serializes");
                    v["instance"] = json!(f.display().to_string());
                    v["graph_sha256"] = json!(fingerprint(&d));
                    v["version"] = json!(VERSION);
                    text.push_str(&json_line(v));
                } else {
                    if files.len() > 1 {
                        text.push_str(&format!("{}\n", f.display()));
                    }
                    text.push_str(&format!(
                        "objective {}\nwitness {}\n",
                        sol.objective,
                        witness_text(&sol.witness)
                    ));
                }
            }
            Ok(text)
        }
        Command::Family { k, variant } => {
            let variant = variant_arg(&variant)?;
            let d = counterexample_family(k, variant)?;
            Ok(d.to_edge_list())
        }
    }
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::None => "none".into(),
        Witness::Vertices(vs) => format!("{vs:?}"),
        Witness::Arcs(arcs) => arcs
            .iter()
            .map(|(u, v)| format!("{u}->{v}"))
            .collect::<Vec<_>>()
            .join(" "),
        Witness::Cycle(c) => c
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" -> "),
    }
}
