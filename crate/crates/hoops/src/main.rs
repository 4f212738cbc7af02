//! Batch front end: reduce word files, decompose loop files, decide
//! hoop triviality per structure group, run holonomy transports, and
//! reproduce the cascade counterexample experiment. Reports are
//! versioned plain text on stdout; every command is deterministic in
//! its flags and seed. Exit codes: 0 success, 2 input error, 3
//! budget or precondition rejection.

use std::fmt::Write as FmtWrite;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hoops::gauge::{
    random_connection, read_connection, transport, write_connection, GaugeError, LieGroupSpec,
    PlTransport,
};
use hoops::geom::{decompose, read_loop, write_decomposition, Decomposition, GeomError, PolyLoop};
use hoops::pathology::{
    cn_distance, counterexample_family, flatten_loop, PathologyError,
};
use hoops::synth::{falsify_hoop_triviality, FalsifyOutcome, SynthError};
use hoops::words::{is_identity, CayleyTable, GroupClass, Word, WordsError};

const REPORT_HEADER: &str = "hoops report v1";

#[derive(Parser)]
#[command(name = "hoops", version, about = "Loop decomposition, hoop triviality, and holonomy")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a word file to free-group normal form.
    Reduce {
        /// File holding a word as a signed-integer list, e.g. [1,1,-1].
        word_file: PathBuf,
    },
    /// Decompose a loop file into independent generator loops.
    Decompose {
        /// Loop record file.
        loop_file: PathBuf,
        /// Also write the full decomposition record to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a loop is hoop-trivial for a structure group.
    HoopTrivial {
        /// Loop record file.
        loop_file: PathBuf,
        /// u1, su2, so3, sl2r, or a Cayley table file.
        #[arg(long)]
        group: String,
        /// Seed for the witness search.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the witness connection here when nontrivial.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Parallel-transport a loop through a connection file.
    Holonomy {
        /// Loop record file.
        loop_file: PathBuf,
        /// Connection record file.
        connection_file: PathBuf,
        /// Integration steps per segment.
        #[arg(long, default_value_t = 64)]
        steps: usize,
        /// Write a steps-vs-error convergence table to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the cascade counterexample experiment.
    Counterexample {
        /// Cascade depth (dyadic levels carrying a bump).
        #[arg(long, default_value_t = 4)]
        levels: u32,
        /// Number of random connections to test.
        #[arg(long, default_value_t = 50)]
        trials: u64,
        /// Structure group; the cancellation is abelian, so only u1.
        #[arg(long, default_value = "u1")]
        group: String,
        /// Base seed; trial i uses seed + i.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Samples per structural interval when flattening.
        #[arg(long, default_value_t = 4)]
        resolution: usize,
        /// Seminorm order for the truncation distance table.
        #[arg(long, default_value_t = 3)]
        order: usize,
        /// Write per-trial holonomy distances to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// A command failure: what to tell the user and how to exit.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }

    fn rejected(message: impl ToString) -> Self {
        Failure {
            code: 3,
            message: message.to_string(),
        }
    }
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        Failure::input(e)
    }
}

impl From<GaugeError> for Failure {
    fn from(e: GaugeError) -> Self {
        Failure::input(e)
    }
}

impl From<WordsError> for Failure {
    fn from(e: WordsError) -> Self {
        match e {
            WordsError::BudgetExceeded { .. } => Failure::rejected(e),
            _ => Failure::input(e),
        }
    }
}

impl From<SynthError> for Failure {
    fn from(e: SynthError) -> Self {
        match e {
            SynthError::WitnessNotFound { .. }
            | SynthError::ClearanceTooSmall { .. }
            | SynthError::VerificationFailed { .. } => Failure::rejected(e),
            SynthError::Words(inner) => inner.into(),
            _ => Failure::input(e),
        }
    }
}

impl From<PathologyError> for Failure {
    fn from(e: PathologyError) -> Self {
        match e {
            PathologyError::LevelOutOfRange { .. }
            | PathologyError::OrderBeyondOracle { .. }
            | PathologyError::BadResolution(_)
            | PathologyError::BadSampleCount(_) => Failure::rejected(e),
            _ => Failure::input(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Reduce { word_file } => cmd_reduce(&word_file),
        Command::Decompose { loop_file, out } => cmd_decompose(&loop_file, out.as_deref()),
        Command::HoopTrivial {
            loop_file,
            group,
            seed,
            witness_out,
        } => cmd_hoop_trivial(&loop_file, &group, seed, witness_out.as_deref()),
        Command::Holonomy {
            loop_file,
            connection_file,
            steps,
            csv,
        } => cmd_holonomy(&loop_file, &connection_file, steps, csv.as_deref()),
        Command::Counterexample {
            levels,
            trials,
            group,
            seed,
            resolution,
            order,
            csv,
        } => cmd_counterexample(levels, trials, &group, seed, resolution, order, csv.as_deref()),
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

/// Words print as signed-integer lists, matching the input format.
fn fmt_word(word: &Word) -> String {
    let signed: Vec<String> = word.to_signed().iter().map(|v| v.to_string()).collect();
    format!("[{}]", signed.join(","))
}

fn fmt_point(p: &hoops::geom::Point) -> String {
    let coords: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
    format!("({})", coords.join(", "))
}

fn parse_word_text(text: &str) -> Result<Word, Failure> {
    serde_json::from_str::<Word>(text.trim())
        .map_err(|e| Failure::input(format!("cannot parse word: {e}")))
}

fn load_loop(path: &Path) -> Result<PolyLoop, Failure> {
    Ok(read_loop(&read_text(path)?)?)
}

fn cmd_reduce(word_file: &Path) -> Result<String, Failure> {
    let word = parse_word_text(&read_text(word_file)?)?;
    let reduced = word.reduce();
    let mut out = String::new();
    let _ = writeln!(out, "{REPORT_HEADER}");
    let _ = writeln!(out, "command: reduce");
    let _ = writeln!(out, "input: {}", fmt_word(&word));
    let _ = writeln!(out, "reduced: {}", fmt_word(&reduced));
    let _ = writeln!(out, "length: {}", reduced.len());
    Ok(out)
}

fn decomposition_report(dec: &Decomposition) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dim: {}", dec.dim());
    let _ = writeln!(out, "basepoint: {}", fmt_point(dec.basepoint()));
    let _ = writeln!(out, "generators: {}", dec.generator_count());
    let _ = writeln!(out, "word: {}", fmt_word(&dec.word().reduce()));
    let _ = writeln!(out, "marked segments:");
    for (i, m) in dec.marked_segments().iter().enumerate() {
        let _ = writeln!(
            out,
            "  {}: {} -> {} clearance_sq {}",
            i + 1,
            fmt_point(&m.start),
            fmt_point(&m.end),
            m.clearance_sq
        );
    }
    out
}

fn cmd_decompose(loop_file: &Path, out_file: Option<&Path>) -> Result<String, Failure> {
    let lp = load_loop(loop_file)?;
    let dec = decompose(&lp);
    let mut out = String::new();
    let _ = writeln!(out, "{REPORT_HEADER}");
    let _ = writeln!(out, "command: decompose");
    out.push_str(&decomposition_report(&dec));
    if let Some(path) = out_file {
        write_text(path, &write_decomposition(&dec))?;
        let _ = writeln!(out, "record: {}", path.display());
    }
    Ok(out)
}

/// Group flag: a Lie group name or a Cayley table file.
enum GroupChoice {
    Lie(LieGroupSpec),
    Finite(CayleyTable),
}

fn parse_group(group: &str) -> Result<GroupChoice, Failure> {
    match group.to_ascii_lowercase().as_str() {
        "u1" => return Ok(GroupChoice::Lie(LieGroupSpec::U1)),
        "su2" => return Ok(GroupChoice::Lie(LieGroupSpec::Su2)),
        "so3" => return Ok(GroupChoice::Lie(LieGroupSpec::So3)),
        "sl2r" => return Ok(GroupChoice::Lie(LieGroupSpec::Sl2r)),
        _ => {}
    }
    let path = Path::new(group);
    if path.is_file() {
        let table = CayleyTable::parse(&read_text(path)?)?;
        return Ok(GroupChoice::Finite(table));
    }
    Err(Failure::input(format!(
        "unknown group {group:?}: expected u1, su2, so3, sl2r, or a Cayley table file"
    )))
}

fn cmd_hoop_trivial(
    loop_file: &Path,
    group: &str,
    seed: u64,
    witness_out: Option<&Path>,
) -> Result<String, Failure> {
    let lp = load_loop(loop_file)?;
    let mut out = String::new();
    let _ = writeln!(out, "{REPORT_HEADER}");
    let _ = writeln!(out, "command: hoop-trivial");
    let _ = writeln!(out, "group: {group}");
    match parse_group(group)? {
        GroupChoice::Lie(spec) => match falsify_hoop_triviality(&lp, spec, seed)? {
            FalsifyOutcome::Trivial => {
                let word = decompose(&lp).word().reduce();
                let _ = writeln!(out, "word: {}", fmt_word(&word));
                let _ = writeln!(out, "verdict: TRIVIAL");
            }
            FalsifyOutcome::Nontrivial(n) => {
                let _ = writeln!(out, "word: {}", fmt_word(&n.word));
                let _ = writeln!(out, "verdict: NONTRIVIAL");
                let _ = writeln!(out, "distance: {:.6e}", n.distance);
                if let Some(path) = witness_out {
                    write_connection(path, &n.connection)
                        .map_err(|e| Failure::input(e.to_string()))?;
                    let _ = writeln!(out, "witness: {}", path.display());
                }
            }
        },
        GroupChoice::Finite(table) => {
            let word = decompose(&lp).word().reduce();
            let trivial = is_identity(&word, &GroupClass::Finite(table))?;
            let _ = writeln!(out, "word: {}", fmt_word(&word));
            let verdict = if trivial { "TRIVIAL" } else { "NONTRIVIAL" };
            let _ = writeln!(out, "verdict: {verdict}");
        }
    }
    Ok(out)
}

fn cmd_holonomy(
    loop_file: &Path,
    connection_file: &Path,
    steps: usize,
    csv: Option<&Path>,
) -> Result<String, Failure> {
    let lp = load_loop(loop_file)?;
    let conn = read_connection(connection_file)?;
    let path = PlTransport::from_loop(&lp);
    let hol = transport(&conn, &path, steps)?;
    let mut out = String::new();
    let _ = writeln!(out, "{REPORT_HEADER}");
    let _ = writeln!(out, "command: holonomy");
    let _ = writeln!(out, "group: {}", conn.spec());
    let _ = writeln!(out, "steps: {steps}");
    let _ = writeln!(out, "matrix:");
    for row in hol.matrix.to_complex_rows() {
        let cells: Vec<String> = row
            .iter()
            .map(|[re, im]| format!("[{re:.12e}, {im:.12e}]"))
            .collect();
        let _ = writeln!(out, "  {}", cells.join(" "));
    }
    let _ = writeln!(out, "error: {:.6e}", hol.error);
    let _ = writeln!(out, "residual: {:.6e}", hol.residual);
    if let Some(csv_path) = csv {
        let mut table = String::from("steps,error\n");
        for factor in [1usize, 2, 4] {
            let s = steps * factor;
            let h = transport(&conn, &path, s)?;
            let _ = writeln!(table, "{s},{:.6e}", h.error);
        }
        write_text(csv_path, &table)?;
        let _ = writeln!(out, "csv: {}", csv_path.display());
    }
    Ok(out)
}

fn cmd_counterexample(
    levels: u32,
    trials: u64,
    group: &str,
    seed: u64,
    resolution: usize,
    order: usize,
    csv: Option<&Path>,
) -> Result<String, Failure> {
    if group.to_ascii_lowercase() != "u1" {
        return Err(Failure::input(format!(
            "the cascade cancellation is abelian; --group must be u1, got {group:?}"
        )));
    }
    let family = counterexample_family(levels)?;

    // Region containing the whole picture: x in [0,1], |y| below the
    // widest bump plus margin.
    let amp = family.level_weight(1)? + 0.1;
    let region = [(-0.2, 1.2), (-amp, amp)];
    let mut max_distance = 0.0f64;
    let mut rows = String::from("trial,seed,distance\n");
    for trial in 0..trials {
        let s = seed + trial;
        let conn = random_connection(LieGroupSpec::U1, &region, 3, s)?;
        let hol = transport(&conn, family.loop_path(), 64)?;
        let d = hol.matrix.distance_to_identity();
        max_distance = max_distance.max(d);
        let _ = writeln!(rows, "{trial},{s},{d:.6e}");
    }

    let flattened = flatten_loop(&family, resolution)?;
    let word = decompose(&flattened).word().reduce();
    let exponents_zero = word.exponent_vector().is_zero();

    let mut out = String::new();
    let _ = writeln!(out, "{REPORT_HEADER}");
    let _ = writeln!(out, "command: counterexample");
    let _ = writeln!(out, "group: u1");
    let _ = writeln!(out, "levels: {levels}");
    let _ = writeln!(out, "trials: {trials}");
    let _ = writeln!(out, "seed: {seed}");
    let _ = writeln!(out, "resolution: {resolution}");
    let _ = writeln!(out, "max holonomy distance: {max_distance:.6e}");
    let _ = writeln!(out, "word reduced length: {}", word.len());
    let _ = writeln!(
        out,
        "exponent vector: {}",
        if exponents_zero { "all zero" } else { "NONZERO" }
    );
    let _ = writeln!(out, "cn distances (order {order}):");
    let full = family.curve(0);
    for m in 1..levels {
        let coarse = full.truncated(m);
        let finer = full.truncated(m + 1);
        let d = cn_distance(&coarse, &finer, order, 512)?;
        let _ = writeln!(out, "  levels {m}->{}: {d:.6e}", m + 1);
    }
    if let Some(csv_path) = csv {
        write_text(csv_path, &rows)?;
        let _ = writeln!(out, "csv: {}", csv_path.display());
    }
    Ok(out)
}
