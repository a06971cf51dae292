use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gamma2::complex::{assemble, axis_stabilizer, build_b_mod2, edge_stabilizer_data, orbit_complex, vertex_stabilizer};
use gamma2::membership::{factor, factor_traced};
use gamma2::parallel::Execution;
use gamma2::presentations::{gamma2_presentation, serialize, Format};
use gamma2::schreier::{derive_gamma2_2, schreier_table, table_text};
use gamma2::verifier::{
    check_appendix_identities, check_edge_systems, check_theorem_presentation, cross_check_abelianization,
    roundtrip_suite, Report, THEOREM_BOUND,
};
use gamma2::words::evaluate;
use gamma2::{Error, IntMatrix, Word};

// Closed pipes (e.g. `| head`) are not errors.
macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser, Debug)]
#[command(name = "gamma2", version, about = "Presentations of the level 2 congruence subgroup of GL(n, Z)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Text,
    Json,
    Gap,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the presentation of the level 2 group.
    Present {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=THEOREM_BOUND as u64))]
        n: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Run a verification suite; exit status 3 if any check fails.
    Verify {
        /// Relator checks at dimension N.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=THEOREM_BOUND as u64),
              required_unless_present_any = ["appendix", "edges", "abelian"])]
        n: Option<u64>,
        #[arg(long, conflicts_with_all = ["edges", "roundtrip", "abelian"])]
        appendix: bool,
        #[arg(long, conflicts_with_all = ["roundtrip", "abelian"])]
        edges: bool,
        /// Round-trip random words through evaluation and factoring at dimension N.
        #[arg(long, requires = "n", conflicts_with = "abelian")]
        roundtrip: bool,
        #[arg(long)]
        abelian: bool,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 20)]
        max_len: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Evaluate a word to a matrix.
    Eval {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        word: String,
    },
    /// Write a level 2 matrix as a word.
    Factor {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        matrix: String,
        /// Also print each column reduction with its distance sequence.
        #[arg(long)]
        trace: bool,
    },
    /// Run the rewriting derivation at n = 2.
    Rs,
    /// Summarize the complex and its stabilizers.
    Complex {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=8))]
        n: u64,
    },
    /// Assemble a presentation from vertex stabilizers and edge relators.
    Assemble {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..=6))]
        n: u64,
        /// Merge generators identified along edges.
        #[arg(long)]
        identified: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
    /// An internal cross-check disagreed.
    Broken(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotLevel2(_) | Error::NotUnimodular(_) => Failure::Domain(e.to_string()),
            Error::Consistency(_) => Failure::Broken(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn presentation_format(f: OutFormat) -> Format {
    match f {
        OutFormat::Text => Format::Plain,
        OutFormat::Json => Format::Json,
        OutFormat::Gap => Format::Gap,
    }
}

fn emit_report(report: &Report, format: OutFormat) -> Result<(), Failure> {
    match format {
        OutFormat::Json => out!("{}", report.to_json()),
        OutFormat::Text => {
            let _ = write!(std::io::stdout(), "{report}");
        }
        OutFormat::Gap => return Err(Failure::Usage("reports have no gap format".into())),
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Present { n, format } => {
            let p = gamma2_presentation(n as usize);
            out!("{}", serialize(&p, presentation_format(format)).trim_end());
        }
        Command::Verify {
            n,
            appendix,
            edges,
            roundtrip,
            abelian,
            trials,
            max_len,
            seed,
            format,
        } => {
            let report = if appendix {
                check_appendix_identities()
            } else if edges {
                check_edge_systems()
            } else if abelian {
                cross_check_abelianization()
            } else {
                let n = n.expect("clap requires n") as usize;
                if roundtrip {
                    if n < 2 {
                        return Err(Failure::Usage("round trips need n >= 2".into()));
                    }
                    roundtrip_suite(n, trials, max_len, seed)
                } else {
                    check_theorem_presentation(n)
                }
            };
            emit_report(&report, format)?;
        }
        Command::Eval { n, word } => {
            let w: Word = word.parse()?;
            out!("{}", evaluate(&w, n as usize)?);
        }
        Command::Factor { n, matrix, trace } => {
            let m: IntMatrix = matrix.parse()?;
            if m.dim() != n as usize {
                return Err(Failure::Usage(format!("matrix is {}x{}, expected n = {n}", m.dim(), m.dim())));
            }
            if trace {
                let (w, t) = factor_traced(&m)?;
                out!("{w}");
                for (col, ct) in &t.columns {
                    let steps: Vec<String> = ct.steps.iter().map(|l| l.to_string()).collect();
                    let metrics: Vec<String> = ct.metrics.iter().map(|x| x.to_string()).collect();
                    out!("column {col}: steps [{}] distances [{}]", steps.join(" "), metrics.join(" "));
                }
            } else {
                out!("{}", factor(&m)?);
            }
        }
        Command::Rs => {
            let table = schreier_table()?;
            out!("{}", table_text(&table));
            let d = derive_gamma2_2()?;
            out!("");
            for s in &d.s_words {
                out!("relator {} coset {}: {}", s.relator, s.coset, s.word);
            }
            out!("");
            out!("rewritten: {}", serialize(&d.g_presentation, Format::Plain).trim_end());
            out!("final: {}", serialize(&d.presentation, Format::Plain).trim_end());
            if !d.matches() {
                for m in &d.mismatches {
                    eprintln!("{m}");
                }
                return Err(Failure::Verification);
            }
        }
        Command::Complex { n } => {
            let n = n as usize;
            let (c, what) = if n == 3 {
                (build_b_mod2(3)?, "mod 2 complex")
            } else {
                (orbit_complex(n)?, "orbit complex")
            };
            let counts: Vec<String> = c.counts().iter().map(|k| k.to_string()).collect();
            out!("{what} n={n}: simplex counts by dimension [{}]", counts.join(", "));
            let systems = if n == 3 {
                (1..=7).map(vertex_stabilizer).collect::<Result<Vec<_>, _>>()?
            } else {
                (1..=n).map(|t| axis_stabilizer(n, t)).collect::<Result<Vec<_>, _>>()?
            };
            for (k, s) in systems.iter().enumerate() {
                let rels = s.presentation.as_ref().map_or(0, |p| p.relators.len());
                let prefix = if n == 3 { "v" } else { "e" };
                out!(
                    "{prefix}{} = {}: {} generators, {} relators",
                    k + 1,
                    s.object,
                    s.generators.len(),
                    rels
                );
            }
            if n == 3 {
                let edges = edge_stabilizer_data()?;
                out!("edge stabilizers: {}", edges.len());
                for ((a, b), s) in &edges {
                    let ms: Vec<String> = s.generators.iter().map(|g| g.matrix.to_string()).collect();
                    out!("v{a}-v{b}: {}", ms.join(" | "));
                }
            }
        }
        Command::Assemble { n, identified, format } => {
            let a = assemble(n as usize, Execution::default())?;
            let p = if identified { &a.identified } else { &a.presentation };
            out!("{}", serialize(p, presentation_format(format)).trim_end());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Broken(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Verification) => ExitCode::from(3),
    }
}
