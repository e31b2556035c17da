//! The `rptree` command line.
//!
//! Data goes to stdout, diagnostics to stderr. Exit status is 0 on success
//! or an equal verdict, 1 on an unequal verdict, 2 on usage and input
//! errors.

use std::io::{BufWriter, Read, Write};

use clap::{Parser, Subcommand, ValueEnum};

use crate::codec::{
    prufer_decode, prufer_encode_with, rp_decode, rp_encode, LeafOrder, PruferCode, RpCode,
};
use crate::enumerate::{enumerate_trees, RootPolicy, TreeSampler, DEFAULT_CAP};
use crate::error::Error;
use crate::experiments::{self, VerifyOptions};
use crate::format::{parse_code, parse_tree, write_code, write_edge_list, write_parent_array};
use crate::tree::LabeledTree;

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNEQUAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "rptree",
    version,
    about = "Reverse Prüfer codes and leader statistics of labeled trees"
)]
pub struct CliConfig {
    /// Worker threads for exhaustive runs (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Codec {
    Rp,
    Prufer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LeafOrderArg {
    Smallest,
    Largest,
}

impl From<LeafOrderArg> for LeafOrder {
    fn from(arg: LeafOrderArg) -> Self {
        match arg {
            LeafOrderArg::Smallest => LeafOrder::Smallest,
            LeafOrderArg::Largest => LeafOrder::Largest,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TreeFormat {
    Parent,
    Edges,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    Main,
    Indegree,
    Reversal,
    Roundtrip,
    Choices,
    Kary,
    Ordered,
    Uniformity,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Read a tree on stdin and print its code.
    Encode {
        #[arg(long, value_enum, default_value = "rp")]
        codec: Codec,
        /// Print the extended Prüfer code (with the trailing 1).
        #[arg(long)]
        extended: bool,
        /// Prüfer leaf deletion order.
        #[arg(long, value_enum)]
        leaf_order: Option<LeafOrderArg>,
    },
    /// Read a code on stdin and print its tree.
    Decode {
        #[arg(long, value_enum, default_value = "rp")]
        codec: Codec,
        /// Input is an extended Prüfer code.
        #[arg(long)]
        extended: bool,
        /// Prüfer leaf deletion order.
        #[arg(long, value_enum)]
        leaf_order: Option<LeafOrderArg>,
        #[arg(long, value_enum, default_value = "parent")]
        output: TreeFormat,
    },
    /// Read a tree on stdin and print its leader and degree statistics.
    Stats,
    /// Print every tree on 1..=n, one parent array per line.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        all_roots: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Print uniformly random trees rooted at 1.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Run an exhaustive check and print its report.
    Verify {
        #[arg(long, value_enum)]
        identity: Identity,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        /// Round-trip over every root instead of root 1.
        #[arg(long)]
        all_roots: bool,
        /// Raise the size cap.
        #[arg(long)]
        cap: Option<usize>,
        /// Include wall-clock milliseconds in the report.
        #[arg(long)]
        timing: bool,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        /// Sample count for the uniformity test.
        #[arg(long, default_value_t = 160_000)]
        samples: u64,
        /// Seed for the uniformity test.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, S>(
    argv: I,
    stdin: &mut (dyn Read + Send),
    stdout: &mut (dyn Write + Send),
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let rendered = e.to_string();
                    let reason = rendered.lines().next().unwrap_or("invalid arguments");
                    let _ = writeln!(stderr, "{reason}");
                    EXIT_USAGE
                }
            };
        }
    };
    let outcome = match config.jobs {
        Some(0) => Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| execute(&config.command, stdin, stdout)),
            Err(e) => Err(Failure::Usage(format!("cannot start {jobs} workers: {e}"))),
        },
        None => execute(&config.command, stdin, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Input(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn read_all(stdin: &mut (dyn Read + Send)) -> Result<String, Failure> {
    let mut text = String::new();
    stdin.read_to_string(&mut text)?;
    Ok(text)
}

fn execute(
    command: &Command,
    stdin: &mut (dyn Read + Send),
    stdout: &mut (dyn Write + Send),
) -> Result<i32, Failure> {
    match *command {
        Command::Encode {
            codec,
            extended,
            leaf_order,
        } => {
            check_prufer_flags(codec, extended, leaf_order)?;
            let order = leaf_order.map(LeafOrder::from).unwrap_or_default();
            let tree = parse_tree(&read_all(stdin)?)?;
            let text = match codec {
                Codec::Rp => write_code(tree.n(), rp_encode(&tree).entries()),
                Codec::Prufer => {
                    let code = prufer_encode_with(&tree, order)?;
                    if extended {
                        write_code(tree.n(), &code.extended())
                    } else {
                        write_code(tree.n(), code.entries())
                    }
                }
            };
            stdout.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Decode {
            codec,
            extended,
            leaf_order,
            output,
        } => {
            check_prufer_flags(codec, extended, leaf_order)?;
            let order = leaf_order.map(LeafOrder::from).unwrap_or_default();
            let text = parse_code(&read_all(stdin)?)?;
            let tree = match codec {
                Codec::Rp => {
                    let n = text.n.unwrap_or(text.entries.len() + 1);
                    rp_decode(&RpCode::new(n, text.entries)?)
                }
                Codec::Prufer => {
                    let code = if extended {
                        PruferCode::from_extended(text.entries, order)?
                    } else {
                        let n = text.n.unwrap_or(text.entries.len() + 2);
                        PruferCode::with_order(n, text.entries, order)?
                    };
                    if let Some(n) = text.n {
                        if n != code.n() {
                            return Err(Error::CodeLength {
                                len: code.n() - 1,
                                n,
                            }
                            .into());
                        }
                    }
                    prufer_decode(&code)
                }
            };
            stdout.write_all(render_tree(&tree, output).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Stats => {
            let tree = parse_tree(&read_all(stdin)?)?;
            let record = tree.stat_record();
            let leaders = tree.leaders();
            let mut out = String::new();
            out.push_str(&format!("n={}\n", tree.n()));
            out.push_str(&format!("root={}\n", tree.root()));
            out.push_str(&format!("lead={}\n", record.lead));
            out.push_str(&format!("leaders={}\n", join(&leaders)));
            out.push_str(&format!("deg1={}\n", record.deg1));
            out.push_str(&format!("indegree={}\n", join(&record.indegree)));
            stdout.write_all(out.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Enumerate { n, all_roots, cap } => {
            let policy = if all_roots {
                RootPolicy::AllRoots
            } else {
                RootPolicy::RootOne
            };
            let mut out = BufWriter::new(stdout);
            for tree in enumerate_trees(n, policy, cap)? {
                out.write_all(write_parent_array(&tree).as_bytes())?;
            }
            out.flush()?;
            Ok(EXIT_OK)
        }
        Command::Sample { n, count, seed } => {
            let mut out = BufWriter::new(stdout);
            let sampler = TreeSampler::new(n, seed)?;
            for tree in sampler.take(count as usize) {
                out.write_all(write_parent_array(&tree).as_bytes())?;
            }
            out.flush()?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            identity,
            n,
            k,
            all_roots,
            cap,
            timing,
            json,
            samples,
            seed,
        } => {
            if k.is_some() != (identity == Identity::Kary) {
                return Err(Failure::Usage(
                    "--k is required for, and only valid with, --identity kary".into(),
                ));
            }
            if all_roots && identity != Identity::Roundtrip {
                return Err(Failure::Usage(
                    "--all-roots only applies to --identity roundtrip".into(),
                ));
            }
            let opts = VerifyOptions { cap, timing };
            if identity == Identity::Uniformity {
                let report = experiments::uniformity_test(n, samples, seed)?;
                if json {
                    writeln!(stdout, "{}", serde_json::to_string(&report)?)?;
                } else {
                    write!(stdout, "{report}")?;
                }
                return Ok(if report.pass { EXIT_OK } else { EXIT_UNEQUAL });
            }
            let report = match identity {
                Identity::Main => experiments::verify_main(n, &opts)?,
                Identity::Indegree => experiments::verify_indegree(n, &opts)?,
                Identity::Reversal => experiments::verify_reversal(n, &opts)?,
                Identity::Roundtrip => {
                    let policy = if all_roots {
                        RootPolicy::AllRoots
                    } else {
                        RootPolicy::RootOne
                    };
                    experiments::verify_roundtrip(n, policy, &opts)?
                }
                Identity::Choices => experiments::verify_choice_counts(n, &opts)?,
                Identity::Kary => experiments::verify_kary(n, k.expect("checked"), &opts)?,
                Identity::Ordered => experiments::verify_ordered(n, &opts)?,
                Identity::Uniformity => unreachable!("handled above"),
            };
            if json {
                writeln!(stdout, "{}", serde_json::to_string(&report)?)?;
            } else {
                write!(stdout, "{report}")?;
            }
            Ok(if report.is_equal() {
                EXIT_OK
            } else {
                EXIT_UNEQUAL
            })
        }
    }
}

fn check_prufer_flags(
    codec: Codec,
    extended: bool,
    order: Option<LeafOrderArg>,
) -> Result<(), Failure> {
    if codec != Codec::Prufer && (extended || order.is_some()) {
        return Err(Failure::Usage(
            "--extended and --leaf-order only apply to --codec prufer".into(),
        ));
    }
    Ok(())
}

fn render_tree(tree: &LabeledTree, format: TreeFormat) -> String {
    match format {
        TreeFormat::Parent => write_parent_array(tree),
        TreeFormat::Edges => write_edge_list(tree),
    }
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}
