//! Command-line front end. `run` is the whole program minus process exit,
//! so tests can drive it with in-memory streams.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::generator::{self, GrayCode, DEFAULT_FAMILY_CAP};
use crate::metrics;
use crate::oracle::{self, Checks, DEFAULT_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ordtree-gray", version, about = "Gray code for ordered trees by moving one leaf at a time")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Stream the Gray code for trees with n vertices.
    Gen {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Levels)]
        format: Format,
        /// Stop after this many records.
        #[arg(long)]
        limit: Option<u64>,
        /// Skip the per-step adjacency check.
        #[arg(long)]
        unchecked: bool,
    },
    /// Check the Gray code against brute force and print a report.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated subset of gray,unique,complete,co1,co2,cases.
        #[arg(long, default_value = "all")]
        checks: String,
    },
    /// Print the number of trees with n vertices.
    Count {
        #[command(flatten)]
        common: Common,
    },
    /// Write the ordered family tree as Graphviz DOT.
    Dot {
        #[command(flatten)]
        common: Common,
    },
    /// Time generation and report vertex-write work per tree.
    Bench {
        #[command(flatten)]
        common: Common,
        /// Skip the per-step adjacency check.
        #[arg(long)]
        unchecked: bool,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Number of vertices.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Lift the size cap of verify and dot.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Levels,
    Parens,
    Delta,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_FAIL
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Generation(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_FAIL
        }
    }
}

enum Failure {
    Io(io::Error),
    Usage(String),
    Generation(Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } | Error::SizeTooSmall { .. } | Error::Parse(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Generation(other),
        }
    }
}

fn open_output<'a>(path: &Option<PathBuf>, stdout: &'a mut dyn Write) -> io::Result<Box<dyn Write + 'a>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(stdout),
    })
}

fn cap_for(common: &Common, default: usize, stderr: &mut dyn Write) -> usize {
    if common.allow_large {
        if common.n as usize > default {
            let _ = writeln!(
                stderr,
                "warning: n = {} is above the default cap {default}; memory use grows with the Catalan numbers",
                common.n
            );
        }
        usize::MAX
    } else {
        default
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Gen {
            common,
            format,
            limit,
            unchecked,
        } => {
            let mut out = open_output(&common.output, stdout)?;
            gen(&mut out, common.n as usize, format, limit, unchecked)?;
            out.flush()?;
            Ok(EXIT_OK)
        }
        Command::Verify { common, checks } => {
            let checks: Checks = checks.parse()?;
            let cap = cap_for(&common, DEFAULT_CAP, stderr);
            let report = oracle::verify_with(common.n as usize, checks, cap)?;
            let mut out = open_output(&common.output, stdout)?;
            write!(out, "{report}")?;
            out.flush()?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Count { common } => {
            let mut out = open_output(&common.output, stdout)?;
            writeln!(out, "{}", oracle::catalan(common.n - 1))?;
            out.flush()?;
            Ok(EXIT_OK)
        }
        Command::Dot { common } => {
            let cap = cap_for(&common, DEFAULT_FAMILY_CAP, stderr);
            let ft = generator::build_family_tree_capped(common.n as usize, cap)?;
            let mut out = open_output(&common.output, stdout)?;
            out.write_all(generator::export_dot(&ft).as_bytes())?;
            out.flush()?;
            Ok(EXIT_OK)
        }
        Command::Bench { common, unchecked } => {
            let mut out = open_output(&common.output, stdout)?;
            let stats = bench(common.n as usize, !unchecked)?;
            writeln!(out, "{stats}")?;
            out.flush()?;
            Ok(EXIT_OK)
        }
    }
}

fn gen(out: &mut dyn Write, n: usize, format: Format, limit: Option<u64>, unchecked: bool) -> Result<(), Failure> {
    let code = if unchecked {
        GrayCode::unchecked(n)?
    } else {
        GrayCode::new(n)?
    };
    let limit = limit.unwrap_or(u64::MAX);
    let mut written = 0u64;
    match format {
        Format::Levels | Format::Parens => {
            for tree in code {
                if written == limit {
                    break;
                }
                let tree = tree?;
                match format {
                    Format::Parens => writeln!(out, "{}", tree.to_parens())?,
                    _ => writeln!(out, "{tree}")?,
                }
                out.flush()?;
                written += 1;
            }
        }
        Format::Delta => {
            if limit == 0 {
                return Ok(());
            }
            let deltas = generator::DeltaStream::new(code)?;
            if let Some(first) = deltas.first() {
                writeln!(out, "{first}")?;
                out.flush()?;
                written += 1;
            }
            for d in deltas {
                if written == limit {
                    break;
                }
                writeln!(out, "{}", d?)?;
                out.flush()?;
                written += 1;
            }
        }
    }
    Ok(())
}

/// Wall time and instrumented work of one full generation run.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchStats {
    pub n: usize,
    pub trees: u64,
    pub seconds: f64,
    pub vertex_writes: u64,
    pub max_live_per_level: usize,
}

impl BenchStats {
    pub fn writes_per_tree(&self) -> f64 {
        self.vertex_writes as f64 / self.trees.max(1) as f64
    }
}

impl std::fmt::Display for BenchStats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n2 = (self.n * self.n) as f64;
        write!(
            f,
            "n={} trees={} seconds={:.6} trees_per_second={:.0} vertex_writes={} writes_per_tree={:.3} writes_per_tree_over_n2={:.4} max_live_per_level={}",
            self.n,
            self.trees,
            self.seconds,
            self.trees as f64 / self.seconds.max(1e-9),
            self.vertex_writes,
            self.writes_per_tree(),
            self.writes_per_tree() / n2,
            self.max_live_per_level,
        )
    }
}

/// Runs the whole Gray code for `n` on the current thread.
pub fn bench(n: usize, checked: bool) -> crate::error::Result<BenchStats> {
    let mut code = if checked {
        GrayCode::new(n)?
    } else {
        GrayCode::unchecked(n)?
    };
    metrics::reset_vertex_writes();
    let start = Instant::now();
    let mut trees = 0u64;
    for tree in code.by_ref() {
        tree?;
        trees += 1;
    }
    let seconds = start.elapsed().as_secs_f64();
    Ok(BenchStats {
        n,
        trees,
        seconds,
        vertex_writes: metrics::vertex_writes(),
        max_live_per_level: code.max_live_per_level(),
    })
}
