use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use genus_range::cache::{ResultCache, CACHE_DIR_ENV};
use genus_range::Budget;

mod commands;
mod error;
mod output;
mod svg;

use commands::Context;
use error::CliError;
use output::{render, Format, Outcome};

/// Genus ranges of chord diagrams.
#[derive(Parser)]
#[command(name = "genus-range", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; svg is only available for `chart`.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,

    /// Worker threads; 0 uses all available cores.
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,

    /// Directory for cached tables.
    #[arg(long, env = CACHE_DIR_ENV, global = true)]
    cache: Option<PathBuf>,

    /// Allow tables and charts with 8 chords.
    #[arg(long, global = true)]
    extended: bool,

    /// Report elapsed time in the output document.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Genus range of one word.
    Range {
        word: String,
        /// Include the number of configurations of each genus.
        #[arg(long)]
        profile: bool,
    },
    /// Boundary curves of one thickening.
    Trace {
        word: String,
        /// One `i`/`o` flag per endpoint, or `all-in` / `all-out`.
        #[arg(long, default_value = "all-in")]
        attach: String,
    },
    /// All genus ranges realized by diagrams with `n` chords.
    Table { n: usize },
    /// Check the conjectured descriptions of small ranges.
    Conjectures { n: usize },
    /// A diagram with `n` chords and genus range `[g, g_max]`.
    Witness { n: usize, g: u32, g_max: u32 },
    /// Which ranges `[a, b]` occur with `n` chords.
    Chart { n: usize },
    /// End-edge tracing at minimum and maximum genus.
    Classify { word: String },
    /// One representative per equivalence class of words with `n` chords.
    Enumerate {
        n: usize,
        /// Every normalized word instead of class representatives.
        #[arg(long)]
        all: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Range { .. } => "range",
            Command::Trace { .. } => "trace",
            Command::Table { .. } => "table",
            Command::Conjectures { .. } => "conjectures",
            Command::Witness { .. } => "witness",
            Command::Chart { .. } => "chart",
            Command::Classify { .. } => "classify",
            Command::Enumerate { .. } => "enumerate",
        }
    }
}

fn execute(command: &Command, ctx: &Context) -> Result<Outcome, CliError> {
    match command {
        Command::Range { word, profile } => commands::range(ctx, word, *profile),
        Command::Trace { word, attach } => commands::trace(word, attach),
        Command::Table { n } => commands::table(ctx, *n),
        Command::Conjectures { n } => commands::conjectures(ctx, *n),
        Command::Witness { n, g, g_max } => commands::witness_cmd(ctx, *n, *g, *g_max),
        Command::Chart { n } => commands::chart(ctx, *n),
        Command::Classify { word } => commands::classify(ctx, word),
        Command::Enumerate { n, all } => commands::enumerate(*n, *all),
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let ctx = Context {
        budget: if cli.extended {
            Budget::extended()
        } else {
            Budget::default()
        },
        cache: cli.cache.clone().map(ResultCache::new),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| CliError::Io(format!("thread pool: {e}")))?;
    let start = Instant::now();
    let outcome = pool.install(|| execute(&cli.command, &ctx))?;
    let elapsed = cli.timing.then(|| start.elapsed());
    render(cli.command.name(), &outcome, cli.format, elapsed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
