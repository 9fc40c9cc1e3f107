use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use polar_grassmann::codec::{LineCodec, ReceivedWord};
use polar_grassmann::distance::{macwilliams_dual, min_distance_exhaustive, spectrum_pairs, weight_spectrum, Budgets};
use polar_grassmann::field::SUPPORTED_ORDERS;
use polar_grassmann::matrix::parse_ints;
use polar_grassmann::verify::{self, Sweep};
use polar_grassmann::{Elem, Error, LinearCode, MatrixGF, Subspace};

/// Exit status for a completed run whose verification failed.
pub const EXIT_FAIL: u8 = 1;
/// Exit status for usage errors, bad input and exceeded budgets.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "polar-grassmann", version, about = "Orthogonal polar Grassmann codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Maximum number of enumeration steps for exhaustive searches.
    #[arg(long, global = true, default_value_t = 1 << 24, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    /// Witt index of the quadric Q(2n, q).
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=4))]
    pub n: u32,
    /// Dimension of the totally singular subspaces.
    #[arg(long)]
    pub k: usize,
    /// Field order.
    #[arg(long)]
    pub q: u32,
}

#[derive(Debug, Args)]
pub struct LineArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=4))]
    pub n: u32,
    #[arg(long)]
    pub q: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print `n k q N K d_low d_high exact|bounds`.
    Params(CodeArgs),
    /// Print the generator matrix.
    Genmat(CodeArgs),
    /// List the totally singular subspaces in code order.
    Points(CodeArgs),
    /// Check length, dimension, columns and distance against the closed forms.
    Verify {
        #[command(flatten)]
        code: CodeArgs,
        /// Check this generator matrix instead of the built one.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Random codewords sampled when the distance is not found exactly.
        #[arg(long, default_value_t = 1000)]
        samples: u64,
    },
    /// Exact minimum distance by exhaustive enumeration.
    Mindist(CodeArgs),
    /// Weight distribution by exhaustive enumeration.
    Spectrum {
        #[command(flatten)]
        code: CodeArgs,
        /// Also print the dual code's weight distribution.
        #[arg(long)]
        dual: bool,
    },
    /// Position of a line read as a matrix.
    Rank {
        #[command(flatten)]
        line: LineArgs,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// The line at a position, as a matrix.
    Unrank {
        #[command(flatten)]
        line: LineArgs,
        #[arg(long)]
        index: u64,
    },
    /// Encode a message of C(2n+1, 2) field elements.
    Encode {
        #[command(flatten)]
        line: LineArgs,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Correct a received word and report changed positions.
    Decode {
        #[command(flatten)]
        line: LineArgs,
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Code(#[from] Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

/// Output text and exit status of a successful run.
pub struct Outcome {
    pub text: String,
    pub status: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, status: 0 }
    }
}

fn check_q(q: u32) -> Result<(), CliError> {
    if SUPPORTED_ORDERS.contains(&q) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--q {q}: supported orders are {SUPPORTED_ORDERS:?}")))
    }
}

fn build(args: &CodeArgs) -> Result<LinearCode, CliError> {
    check_q(args.q)?;
    if args.k == 0 || args.k > args.n as usize {
        return Err(CliError::Usage(format!("--k {}: must satisfy 1 <= k <= n = {}", args.k, args.n)));
    }
    Ok(LinearCode::build(args.n as usize, args.k, args.q)?)
}

fn codec(args: &LineArgs) -> Result<LineCodec, CliError> {
    check_q(args.q)?;
    Ok(LineCodec::new(args.n as usize, args.q)?)
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => Ok(fs::read_to_string(p)?),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn read_elements(text: &str, q: u32) -> Result<Vec<Elem>, CliError> {
    let mut out = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.starts_with('#')) {
        for v in parse_ints(line)? {
            if v >= q {
                return Err(Error::InvalidElement { value: v, q }.into());
            }
            out.push(v as Elem);
        }
    }
    Ok(out)
}

fn join(values: &[Elem]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn budgets(cli: &Cli) -> Budgets {
    Budgets { exhaustive: cli.budget, scan: cli.budget }
}

fn json_text(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
    s.push('\n');
    s
}

fn matrix_json(m: &MatrixGF) -> serde_json::Value {
    json!({ "rows": m.rows(), "cols": m.cols(), "q": m.field().q(), "data": m.row_vecs() })
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Params(args) => {
            let mut code = build(args)?;
            let p = verify::parameters(&mut code, budgets(cli));
            Ok(Outcome::ok(if json { json_text(json!(p)) } else { format!("{}\n", p.line()) }))
        }
        Command::Genmat(args) => {
            let code = build(args)?;
            let g = code.generator();
            Ok(Outcome::ok(if json { json_text(matrix_json(g)) } else { g.to_text() }))
        }
        Command::Points(args) => {
            let code = build(args)?;
            let points = code.points().points();
            if json {
                let list: Vec<_> = points
                    .iter()
                    .enumerate()
                    .map(|(i, s)| json!({ "index": i, "basis": matrix_json(s.basis()) }))
                    .collect();
                return Ok(Outcome::ok(json_text(json!(list))));
            }
            let blocks: Vec<String> =
                points.iter().enumerate().map(|(i, s)| format!("index {i}\n{}", s.basis().to_text())).collect();
            Ok(Outcome::ok(blocks.join("\n")))
        }
        Command::Verify { code: args, input, samples } => {
            let built = build(args)?;
            let (n, k, q) = (built.n(), built.k(), built.q());
            let code = match input {
                Some(_) => {
                    let g = MatrixGF::parse_text(&read_input(input)?)?;
                    if g.field().q() != q {
                        return Err(CliError::Usage(format!(
                            "--input: matrix is over GF({}), not GF({q})",
                            g.field().q()
                        )));
                    }
                    built.with_generator(g)
                }
                None => Ok(built),
            };
            let sweep = Some(Sweep { samples: *samples, seed: cli.seed });
            let report = match code {
                Ok(mut c) => verify::verify(&mut c, budgets(cli), sweep),
                Err(e @ (Error::DegenerateColumns(_) | Error::DimensionMismatch { .. })) => {
                    verify::rejected(n, k, q, &e)
                }
                Err(e) => return Err(e.into()),
            };
            let status = if report.pass() { 0 } else { EXIT_FAIL };
            let text =
                if json { json_text(json!({ "pass": report.pass(), "report": report })) } else { report.to_text() };
            Ok(Outcome { text, status })
        }
        Command::Mindist(args) => {
            let code = build(args)?;
            let d = min_distance_exhaustive(&code, cli.budget)?;
            Ok(Outcome::ok(if json { json_text(json!({ "distance": d })) } else { format!("{d}\n") }))
        }
        Command::Spectrum { code: args, dual } => {
            let code = build(args)?;
            let spectrum = weight_spectrum(&code, cli.budget)?;
            let pairs = spectrum_pairs(&spectrum);
            let dual_pairs: Option<Vec<(usize, String)>> = if *dual {
                let d = macwilliams_dual(&spectrum, code.q())?;
                Some(
                    d.iter().enumerate().filter(|(_, c)| **c != 0u32.into()).map(|(w, c)| (w, c.to_string())).collect(),
                )
            } else {
                None
            };
            if json {
                return Ok(Outcome::ok(json_text(json!({ "spectrum": pairs, "dual": dual_pairs }))));
            }
            let mut text: String = pairs.iter().map(|(w, c)| format!("{w} {c}\n")).collect();
            if let Some(dp) = dual_pairs {
                text.push_str("dual\n");
                text.extend(dp.iter().map(|(w, c)| format!("{w} {c}\n")));
            }
            Ok(Outcome::ok(text))
        }
        Command::Rank { line, input } => {
            let codec = codec(line)?;
            let m = MatrixGF::parse_text(&read_input(input)?)?;
            if m.field().q() != line.q {
                return Err(CliError::Usage(format!(
                    "--input: matrix is over GF({}), not GF({})",
                    m.field().q(),
                    line.q
                )));
            }
            let index = codec.counter().rank(&Subspace::from_matrix(&m)?)?;
            Ok(Outcome::ok(if json { json_text(json!({ "index": index })) } else { format!("{index}\n") }))
        }
        Command::Unrank { line, index } => {
            let codec = codec(line)?;
            let s = codec.counter().unrank(*index)?;
            Ok(Outcome::ok(if json { json_text(matrix_json(s.basis())) } else { s.basis().to_text() }))
        }
        Command::Encode { line, input } => {
            let codec = codec(line)?;
            let msg = read_elements(&read_input(input)?, line.q)?;
            let word = codec.encode(&codec.message_to_form(&msg)?)?;
            Ok(Outcome::ok(if json { json_text(json!({ "codeword": word })) } else { format!("{}\n", join(&word)) }))
        }
        Command::Decode { line, input } => {
            let codec = codec(line)?;
            let values = read_elements(&read_input(input)?, line.q)?;
            let received = ReceivedWord::new(line.n as usize, line.q, values)?;
            let (word, report) = codec.correct_all(&received)?;
            if json {
                return Ok(Outcome::ok(json_text(json!({ "codeword": word, "report": report }))));
            }
            let mut text = format!("{}\n", join(&word));
            for c in &report.changes {
                text.push_str(&format!("{} {} {} {} {}\n", c.position, c.old, c.new, c.votes_for, c.votes_against));
            }
            for t in &report.ties {
                text.push_str(&format!("tie {} {}\n", t.position, t.value));
            }
            Ok(Outcome::ok(text))
        }
    }
}

/// Writes the outcome to `--output` or stdout.
pub fn emit(cli: &Cli, outcome: &Outcome) -> io::Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, &outcome.text),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(outcome.text.as_bytes())?;
            out.flush()
        }
    }
}
