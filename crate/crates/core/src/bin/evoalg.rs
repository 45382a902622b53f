use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use evoalg::cli::{self, Report};

#[derive(Parser)]
#[command(name = "evoalg", version, about = "Automorphism groups and isomorphisms of idempotent evolution algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Matrix JSON file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Field descriptor (`Q`, `GF(p)`, `Q(zeta_m)`); overrides the file's field.
    #[arg(long)]
    field: Option<String>,
    /// Also write the report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Automorphism group of E(A).
    Aut(Input),
    /// Diagonal automorphism subgroup of E(A).
    Diag(Input),
    /// Automorphisms of a graph file or of a matrix's zero pattern.
    GraphAut(Input),
    /// Isomorphism certificate between E(A) and E(B).
    Iso {
        #[command(flatten)]
        a: Input,
        /// Second matrix JSON file.
        #[arg(long)]
        b: PathBuf,
    },
    /// Build a family member, e.g. `complete:n=4` or `cycle:n=3,b=128;1;1`.
    Make {
        #[arg(long)]
        family: String,
        #[arg(long)]
        field: Option<String>,
        /// Where to write the matrix JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a self-check suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Histogram of group orders over matrices on GF(p).
    Census {
        #[arg(long)]
        field: String,
        #[arg(long)]
        n: usize,
        /// `exhaustive` or `random:<k>`.
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { cli::EXIT_INPUT } else { cli::EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let start = Instant::now();
    let (name, report, out) = match args.command {
        Command::Aut(i) => ("aut", cli::cmd_aut(&i.input, i.field.as_deref()), i.out),
        Command::Diag(i) => ("diag", cli::cmd_diag(&i.input, i.field.as_deref()), i.out),
        Command::GraphAut(i) => ("graph-aut", cli::cmd_graph_aut(&i.input, i.field.as_deref()), i.out),
        Command::Iso { a, b } => ("iso", cli::cmd_iso(&a.input, &b, a.field.as_deref()), a.out),
        Command::Make { family, field, out } => ("make", cli::cmd_make(&family, field.as_deref(), out.as_deref()), None),
        Command::Verify { suite, n, out } => ("verify", cli::cmd_verify(&suite, n), out),
        Command::Census {
            field,
            n,
            mode,
            seed,
            threads,
            out,
        } => ("census", cli::cmd_census(&field, n, &mode, seed, threads), out),
    };
    eprintln!("{name}: {:.3}s, exit {}", start.elapsed().as_secs_f64(), report.code);
    emit(&report, out)
}

fn emit(report: &Report, out: Option<PathBuf>) -> ExitCode {
    let text = cli::render(report);
    print!("{text}");
    if let Some(path) = out {
        if let Err(e) = std::fs::write(&path, &text) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(cli::EXIT_INPUT as u8);
        }
    }
    ExitCode::from(report.code as u8)
}
