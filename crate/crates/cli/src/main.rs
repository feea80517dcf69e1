use std::io::Write;
use std::process::ExitCode;

use actpres::construct::ConstructBounds;
use actpres::presentation::SearchBounds;
use actpres_cli::commands::{self, CliError, ConstructKind, ConstructOptions, Output};
use actpres_cli::fuzz::{Limits, Suite};
use clap::{Parser, Subcommand, ValueEnum};

/// Exit code for errors; 0, 1 and 2 are reserved for verdicts.
const ERROR_EXIT: u8 = 3;

#[derive(Parser)]
#[command(name = "actpres", version, about = "Presentations of monoid acts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a word (`1` is the identity)
    Nf { monoid_file: String, word: String },
    /// Whether two words are equal in the monoid (exit 0 equal, 1 not, 2 unknown)
    Eq {
        monoid_file: String,
        w1: String,
        w2: String,
        /// Longest word explored when normal forms are not confirmed canonical
        #[arg(long, default_value_t = 16)]
        max_len: usize,
    },
    /// Whether `lhs = rhs` follows from the relations (exit 0 proved, 1 disproved, 2 unknown)
    Consequence {
        pres_file: String,
        lhs: String,
        rhs: String,
        #[arg(long, default_value_t = SearchBounds::default().max_steps)]
        max_steps: usize,
        #[arg(long, default_value_t = SearchBounds::default().max_word_len)]
        max_word_len: usize,
        #[arg(long, default_value_t = SearchBounds::default().max_nodes)]
        max_nodes: usize,
    },
    /// Build a presentation from the documents given
    Construct {
        kind: Kind,
        #[arg(required = true)]
        files: Vec<String>,
        /// Subact entry naming B (default: the first one)
        #[arg(long)]
        subact: Option<String>,
        /// Second document: quotient for `extension`, B for `union`, the intersection for `union-component`
        #[arg(long)]
        with: Option<String>,
        /// Generator of the quotient presentation that is the zero
        #[arg(long)]
        zero: Option<String>,
        /// Subact entry listing generators of the intersection, for `union`
        #[arg(long)]
        meet: Option<String>,
        #[arg(long, default_value_t = ConstructBounds::default().depth)]
        depth: usize,
        #[arg(long, default_value_t = ConstructBounds::default().witness_len)]
        witness_len: usize,
        /// Instantiation bound for schema rules
        #[arg(long)]
        schema_bound: Option<usize>,
    },
    /// Apply a file of Tietze moves
    Tietze { pres_file: String, moves_file: String },
    /// Check a presentation against a finite act (exit 0 when it presents the act)
    Verify { pres_file: String, act_file: String },
    /// The worked examples
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Compare constructions with the brute-force oracle on seeded random instances
    FuzzOracle {
        #[arg(long, default_value_t = 20)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        start: u64,
        #[arg(long, default_value_t = Limits::default().max_monoid)]
        max_monoid: usize,
        #[arg(long, default_value_t = Limits::default().max_act)]
        max_act: usize,
        /// Restrict to these suites (default: all)
        #[arg(long = "suite", value_parser = parse_suite)]
        suites: Vec<Suite>,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    List,
    Run { case_id: Option<String> },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    ReesQuotient,
    Extension,
    Union,
    UnionComponent,
    Subact,
    LargeSubact,
}

impl From<Kind> for ConstructKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::ReesQuotient => ConstructKind::ReesQuotient,
            Kind::Extension => ConstructKind::Extension,
            Kind::Union => ConstructKind::Union,
            Kind::UnionComponent => ConstructKind::UnionComponent,
            Kind::Subact => ConstructKind::Subact,
            Kind::LargeSubact => ConstructKind::LargeSubact,
        }
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("unknown suite; expected one of {}", names.join(", "))
    })
}

fn run(cmd: Command) -> Result<Output, CliError> {
    match cmd {
        Command::Nf { monoid_file, word } => commands::nf(&monoid_file, &word),
        Command::Eq {
            monoid_file,
            w1,
            w2,
            max_len,
        } => commands::eq(&monoid_file, &w1, &w2, max_len),
        Command::Consequence {
            pres_file,
            lhs,
            rhs,
            max_steps,
            max_word_len,
            max_nodes,
        } => {
            let bounds = SearchBounds {
                max_steps,
                max_word_len,
                max_nodes,
                ..SearchBounds::default()
            };
            commands::consequence(&pres_file, &lhs, &rhs, bounds)
        }
        Command::Construct {
            kind,
            files,
            subact,
            with,
            zero,
            meet,
            depth,
            witness_len,
            schema_bound,
        } => {
            let opts = ConstructOptions {
                subact,
                with,
                zero,
                meet,
                bounds: ConstructBounds {
                    depth,
                    witness_len,
                    schema_bound,
                    ..ConstructBounds::default()
                },
            };
            commands::construct(kind.into(), &files, &opts)
        }
        Command::Tietze { pres_file, moves_file } => {
            commands::tietze(&pres_file, &moves_file, SearchBounds::default())
        }
        Command::Verify { pres_file, act_file } => commands::verify(&pres_file, &act_file),
        Command::Corpus { action } => match action {
            CorpusAction::List => Ok(commands::corpus_list()),
            CorpusAction::Run { case_id } => commands::corpus_run(case_id.as_deref()),
        },
        Command::FuzzOracle {
            seeds,
            start,
            max_monoid,
            max_act,
            suites,
        } => {
            let suites = if suites.is_empty() { Suite::ALL.to_vec() } else { suites };
            let limits = Limits { max_monoid, max_act };
            Ok(commands::fuzz_oracle(&suites, start, seeds, limits, &mut |d| eprintln!("{d}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(ERROR_EXIT) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(ERROR_EXIT)
        }
    }
}
