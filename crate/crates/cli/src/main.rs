//! `gwzero`: validate targets, reconstruct correlator tables, emit potentials, multiply
//! in the small quantum ring and run WDVV checks.
//!
//! Exit codes: 0 success, 1 mathematical failure, 2 missing inputs, 3 I/O or parse error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gwzero_core::correlators::{CorrelatorError, CorrelatorKey};
use gwzero_core::quantum::QuantumError;
use gwzero_core::reconstruct::{ReconstructError, Reconstructor};
use gwzero_core::{
    build_potential, bundled, CorrelatorTable, Cutoff, GwTarget, Potential, TableFormat,
};

#[derive(Parser)]
#[command(name = "gwzero", version, about = "Exact genus-zero Gromov-Witten invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every invariant of a target description.
    Validate { target: String },
    /// Reconstruct all correlators up to a cutoff from the target's seeds.
    Reconstruct {
        target: String,
        #[command(flatten)]
        cutoff: CutoffArgs,
        #[command(flatten)]
        out: OutArgs,
        /// Worker threads for independent cells.
        #[arg(long)]
        jobs: Option<usize>,
        /// Print the derivation of KEY (e.g. `3:2,2,2`) after the run.
        #[arg(long, value_name = "KEY")]
        trace: Option<String>,
    },
    /// Emit the truncated potential as JSON.
    Potential {
        target: String,
        /// Correlator table to read instead of reconstructing.
        #[arg(long)]
        table: Option<PathBuf>,
        #[command(flatten)]
        cutoff: CutoffArgs,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Multiply basis classes in the small quantum ring, e.g. `qmul p2 H H H`.
    Qmul {
        target: String,
        #[arg(required = true)]
        factors: Vec<String>,
        #[arg(long)]
        table: Option<PathBuf>,
        /// Largest beta.c1 kept; defaults to what the product can reach.
        #[arg(long)]
        max_c1: Option<i64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Check every WDVV residual of the potential built from a table.
    Wdvv {
        target: String,
        /// Correlator table; reconstructed from seeds when omitted.
        table: Option<PathBuf>,
        #[arg(long)]
        max_c1: Option<i64>,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Show how a correlator is derived from seeds and the axioms.
    Explain {
        target: String,
        /// `beta:classes`, e.g. `3:2,2,2` or `1,1:pt,pt,pt`.
        key: String,
    },
}

#[derive(Args)]
struct CutoffArgs {
    #[arg(long, default_value_t = 6)]
    max_c1: i64,
    #[arg(long, default_value_t = 6)]
    max_n: usize,
}

#[derive(Args)]
struct OutArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for TableFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => TableFormat::Csv,
            Format::Json => TableFormat::Json,
        }
    }
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn math(message: impl ToString) -> Self {
        Self { code: 1, message: message.to_string() }
    }
    fn missing(message: impl ToString) -> Self {
        Self { code: 2, message: message.to_string() }
    }
    fn io(message: impl ToString) -> Self {
        Self { code: 3, message: message.to_string() }
    }
}

impl From<ReconstructError> for Failure {
    fn from(e: ReconstructError) -> Self {
        match e {
            ReconstructError::MissingSeeds(_) | ReconstructError::Correlator(_) => Failure::missing(e),
            _ => Failure::math(e),
        }
    }
}

impl From<QuantumError> for Failure {
    fn from(e: QuantumError) -> Self {
        match e {
            QuantumError::Correlator(CorrelatorError::Unknown(ref k)) => {
                Failure::missing(format!("table does not cover the cutoff: {k} is missing"))
            }
            QuantumError::UnboundedCutoff => Failure::missing(e),
            _ => Failure::math(e),
        }
    }
}

type Outcome = Result<(), Failure>;

fn load_target(name: &str) -> Result<GwTarget, Failure> {
    let path = Path::new(name);
    if path.exists() {
        let text = fs::read_to_string(path).map_err(|e| Failure::io(format!("{name}: {e}")))?;
        return GwTarget::from_json(&text).map_err(|e| Failure::io(format!("{name}: {e}")));
    }
    bundled::by_name(name).ok_or_else(|| {
        Failure::io(format!("{name}: no such file or bundled target ({})", bundled::NAMES.join(", ")))
    })
}

fn format_for(path: Option<&Path>, explicit: Option<Format>) -> TableFormat {
    match explicit {
        Some(f) => f.into(),
        None => match path.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            Some("json") => TableFormat::Json,
            _ => TableFormat::Csv,
        },
    }
}

fn load_table(path: &Path, format: Option<Format>) -> Result<CorrelatorTable, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    CorrelatorTable::import(&text, format_for(Some(path), format))
        .map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Outcome {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Names missing seeds both as keys and with class labels.
fn named(t: &GwTarget, e: ReconstructError) -> Failure {
    match &e {
        ReconstructError::MissingSeeds(keys) => {
            let list: Vec<String> = keys.iter().map(|k| format!("  {k}  {}", k.display(t))).collect();
            Failure::missing(format!("missing seeds:\n{}", list.join("\n")))
        }
        _ => e.into(),
    }
}

fn reconstructed(t: &GwTarget, max_c1: i64, max_n: usize, jobs: Option<usize>) -> Result<CorrelatorTable, Failure> {
    let mut r = Reconstructor::new(t)?.with_jobs(jobs);
    r.run(max_c1, max_n.max(3)).map_err(|e| named(t, e))?;
    Ok(r.into_table())
}

fn validate(target: &str) -> Outcome {
    let t = load_target(target)?;
    let report = t.validate();
    print!("{report}");
    if report.is_valid() {
        Ok(())
    } else {
        Err(Failure { code: 1, message: String::new() })
    }
}

fn reconstruct(target: &str, cutoff: &CutoffArgs, out: &OutArgs, jobs: Option<usize>, trace: Option<&str>) -> Outcome {
    let t = load_target(target)?;
    let key = trace
        .map(|k| CorrelatorKey::parse(&t, k).map_err(Failure::io))
        .transpose()?;
    let mut r = Reconstructor::new(&t)?.with_jobs(jobs).with_trace(key.is_some());
    let summary = r.run(cutoff.max_c1, cutoff.max_n).map_err(|e| named(&t, e))?;
    let format = format_for(out.output.as_deref(), out.format);
    let text = r.table().export(format).map_err(Failure::io)?;
    emit(&text, out.output.as_deref())?;
    let mut report = format!(
        "{}: {} cells, {} correlators reconstructed, {} seeds, {} classical triples (beta.c1 <= {}, n <= {})\n",
        t.name, summary.cells, summary.reconstructed, summary.seeds, summary.classical, cutoff.max_c1, cutoff.max_n
    );
    if let Some(k) = key {
        report.push_str(&r.explain(&k.classes, &k.beta)?);
    }
    // keep stdout clean for the table when it is written there
    if out.output.is_some() {
        print!("{report}");
    } else {
        eprint!("{report}");
    }
    Ok(())
}

fn potential(target: &str, table: Option<&Path>, cutoff: &CutoffArgs, out: &OutArgs, jobs: Option<usize>) -> Outcome {
    let t = load_target(target)?;
    let tab = match table {
        Some(p) => load_table(p, out.format)?,
        None => reconstructed(&t, cutoff.max_c1, cutoff.max_n, jobs)?,
    };
    let pot = build_potential(&t, &tab, &Cutoff::by_count(cutoff.max_n as i64, cutoff.max_c1))?;
    emit(&pot.to_json(), out.output.as_deref())
}

fn qmul(target: &str, factors: &[String], table: Option<&Path>, max_c1: Option<i64>, format: Option<Format>) -> Outcome {
    let t = load_target(target)?;
    let ids = factors
        .iter()
        .map(|s| t.class_by_symbol(s).map_err(Failure::io))
        .collect::<Result<Vec<_>, _>>()?;
    // each product lowers the st-degree by 2 beta.c1 and degrees stay in [0, 2 dim]
    let max_c1 = max_c1.unwrap_or((ids.len() as i64 - 1).max(0) * 2 * t.dim as i64);
    let tab = match table {
        Some(p) => load_table(p, format)?,
        None => reconstructed(&t, max_c1, 3, None)?,
    };
    let pot = build_potential(&t, &tab, &Cutoff::by_count(3, max_c1))?;
    let mut acc = pot.basis_element(ids[0]);
    for &i in &ids[1..] {
        acc = pot.small_mul(&acc, &pot.basis_element(i))?;
    }
    println!("{acc}");
    Ok(())
}

fn wdvv(
    target: &str,
    table: Option<&Path>,
    max_c1: Option<i64>,
    max_n: Option<usize>,
    format: Option<Format>,
    jobs: Option<usize>,
) -> Outcome {
    let t = load_target(target)?;
    let (tab, c1, n) = match table {
        Some(p) => {
            let tab = load_table(p, format)?;
            let c1 = max_c1.unwrap_or_else(|| tab.iter().map(|(k, _)| t.novikov_degree(&k.beta)).max().unwrap_or(0));
            let n = max_n.unwrap_or_else(|| tab.iter().map(|(k, _)| k.n()).max().unwrap_or(3).max(4));
            (tab, c1, n)
        }
        None => {
            let (c1, n) = (max_c1.unwrap_or(6), max_n.unwrap_or(6));
            (reconstructed(&t, c1, n, jobs)?, c1, n)
        }
    };
    let pot: Potential = build_potential(&t, &tab, &Cutoff::by_count(n as i64, c1))?;
    let report = pot.wdvv_check()?;
    match report.failure {
        None => {
            println!("ok: {} residuals vanish (beta.c1 <= {c1}, n <= {n})", report.checked);
            Ok(())
        }
        Some(w) => {
            let [i, j, h, l] = w.indices;
            Err(Failure::math(format!(
                "WDVV fails at (i,j,h,l) = ({i},{j},{h},{l}): coefficient {} of {}",
                w.coefficient, w.monomial
            )))
        }
    }
}

fn explain(target: &str, key: &str) -> Outcome {
    let t = load_target(target)?;
    let key = CorrelatorKey::parse(&t, key).map_err(Failure::io)?;
    let mut r = Reconstructor::new(&t)?.with_trace(true);
    r.value(&key.classes, &key.beta).map_err(|e| named(&t, e))?;
    print!("{}", r.explain(&key.classes, &key.beta)?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { target } => validate(target),
        Command::Reconstruct { target, cutoff, out, jobs, trace } => {
            reconstruct(target, cutoff, out, *jobs, trace.as_deref())
        }
        Command::Potential { target, table, cutoff, out, jobs } => {
            potential(target, table.as_deref(), cutoff, out, *jobs)
        }
        Command::Qmul { target, factors, table, max_c1, format } => {
            qmul(target, factors, table.as_deref(), *max_c1, *format)
        }
        Command::Wdvv { target, table, max_c1, max_n, format, jobs } => {
            wdvv(target, table.as_deref(), *max_c1, *max_n, *format, *jobs)
        }
        Command::Explain { target, key } => explain(target, key),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
