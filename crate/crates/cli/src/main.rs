use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};
use rayon::prelude::*;

use etr::{Error, Instance};
use etr_cli::{run_query, Mode, Output, QueryRequest};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Logic,
    Algebra,
}

/// Evaluate predicate-calculus or algebra queries over relations loaded
/// from flat files.
#[derive(Debug, Parser)]
#[command(name = "etr", version, group(ArgGroup::new("input").required(true).args(["query", "batch"])))]
struct Cli {
    /// Scheme file declaring domains, attributes and relations.
    #[arg(long, env = "ETR_SCHEME")]
    scheme: PathBuf,

    /// Directory holding one `<relation>.csv` per stored relation.
    #[arg(long, env = "ETR_DATA")]
    data: PathBuf,

    /// Also evaluate by the reference method and fail on any difference.
    #[arg(long, env = "ETR_ORACLE_CHECK")]
    oracle_check: bool,

    #[arg(long, value_enum, default_value = "logic", env = "ETR_MODE")]
    mode: ModeArg,

    #[arg(long, env = "ETR_QUERY")]
    query: Option<String>,

    /// File with one query per line. Blank lines and lines starting with
    /// `#` are skipped.
    #[arg(long, env = "ETR_BATCH")]
    batch: Option<PathBuf>,

    /// Print the number of rows instead of the table.
    #[arg(long, env = "ETR_COUNT")]
    count: bool,

    /// Field delimiter of the data files; `tab` for tab-separated.
    #[arg(long, default_value = ",", env = "ETR_DELIMITER", value_parser = parse_delimiter)]
    delimiter: u8,

    /// Domain to quantify over in logic mode when the scheme has several.
    #[arg(long, env = "ETR_DOMAIN")]
    domain: Option<String>,
}

fn parse_delimiter(s: &str) -> Result<u8, String> {
    match s {
        "tab" | "\\t" => Ok(b'\t'),
        _ if s.len() == 1 && s.is_ascii() => Ok(s.as_bytes()[0]),
        _ => Err(format!("expected a single ASCII character, got `{s}`")),
    }
}

fn load_exit_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. } => 1,
        e if e.is_syntax() => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let instance = match Instance::load(&cli.scheme, &cli.data, cli.delimiter) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("etr: {e}");
            return ExitCode::from(load_exit_code(&e));
        }
    };
    let template = QueryRequest {
        source: String::new(),
        mode: match cli.mode {
            ModeArg::Logic => Mode::Logic,
            ModeArg::Algebra => Mode::Algebra,
        },
        check_oracle: cli.oracle_check,
        output: if cli.count {
            Output::Count
        } else {
            Output::Table
        },
        domain: cli.domain.clone(),
    };

    if let Some(query) = cli.query {
        let request = QueryRequest {
            source: query,
            ..template
        };
        return match run_query(&instance, &request) {
            Ok(out) => {
                print!("{out}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("etr: {e}");
                ExitCode::from(e.exit_code())
            }
        };
    }

    let path = cli.batch.expect("clap requires --query or --batch");
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("etr: {}: {e}", path.display());
            return ExitCode::from(1);
        }
    };
    let queries: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let results: Vec<_> = queries
        .par_iter()
        .map(|(_, q)| {
            let request = QueryRequest {
                source: q.to_string(),
                ..template.clone()
            };
            run_query(&instance, &request)
        })
        .collect();

    let mut code = 0;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for (n, ((line, _), result)) in queries.iter().zip(results).enumerate() {
        if n > 0 {
            let _ = writeln!(out);
        }
        match result {
            Ok(table) => {
                let _ = write!(out, "{table}");
            }
            Err(e) => {
                let _ = writeln!(out, "error on line {line}");
                eprintln!("etr: line {line}: {e}");
                code = code.max(e.exit_code());
            }
        }
    }
    ExitCode::from(code)
}
