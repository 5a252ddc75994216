//! `permcode` command-line front end.
//!
//! [`run`] parses arguments and writes to the given sinks, so tests can drive
//! it without spawning a process. Exit codes: 0 success, 1 usage error,
//! 2 validation or decode failure.

pub mod sim;

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use permcode::verify::run_suite;
use permcode::{
    code_min_distance, decode, dpgp_decode, dpgp_encode, dpgp_enumerate, dpgp_project, dpgp_size,
    encode_sequential, heads_from_message, kloeve_spec, optimal_spec, rep_enumerate, rep_size,
    validate_spec, ClassRanks, Distance, DpgpParams, Error, HeadSequence, Message, Permutation,
    RepSpec,
};

use crate::sim::{run_simulation, SimConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "permcode",
    version,
    about = "Permutation codes under the Chebyshev distance"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a spec for a family; writes it to --spec when given.
    Gen(CodeArgs),
    /// Encode a message (or explicit heads) into a codeword.
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, conflicts_with = "heads")]
        message: Option<String>,
        #[arg(long)]
        heads: Option<String>,
    },
    /// Decode a received word.
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, allow_hyphen_values = true)]
        received: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List every codeword.
    Enumerate {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 1_000_000)]
        max_size: u64,
    },
    /// Brute-force minimum distance.
    Mindist {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 10_000)]
        max_size: u64,
    },
    /// Bounded-magnitude noise channel simulation.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 0)]
        noise: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        clip: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run the exhaustive check suite.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct CodeArgs {
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Optimal,
    Kloeve,
    Dpgp,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Csv,
    Json,
}

enum Code {
    Rep(RepSpec),
    Dpgp(DpgpParams),
}

/// Failure inside a subcommand; all map to exit code 2.
#[derive(Debug)]
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn need(v: Option<usize>, flag: &str) -> std::result::Result<usize, Failure> {
    v.ok_or_else(|| Failure(format!("--{flag} is required for this family")))
}

impl CodeArgs {
    fn family_code(&self, family: Family) -> std::result::Result<Code, Failure> {
        let n = need(self.n, "n")?;
        let d = need(self.d, "d")?;
        Ok(match family {
            Family::Optimal => Code::Rep(optimal_spec(n, d)?),
            Family::Kloeve => Code::Rep(kloeve_spec(n, d, need(self.q, "q")?)?),
            Family::Dpgp => Code::Dpgp(DpgpParams::new(n, d)?),
        })
    }

    /// The spec file wins over family flags.
    fn load(&self) -> std::result::Result<Code, Failure> {
        match (&self.spec, self.family) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
                Ok(Code::Rep(RepSpec::parse(&text)?))
            }
            (None, Some(f)) => self.family_code(f),
            (None, None) => Err(Failure("one of --spec or --family is required".into())),
        }
    }

    fn load_rep(&self) -> std::result::Result<RepSpec, Failure> {
        match self.load()? {
            Code::Rep(spec) => Ok(spec),
            Code::Dpgp(_) => Err(Failure("this command needs a REP spec".into())),
        }
    }
}

fn parse_list<T: std::str::FromStr>(
    text: &str,
    what: &str,
) -> std::result::Result<Vec<T>, Failure> {
    text.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Failure(format!("bad {what} value {t:?}")))
        })
        .collect()
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Runs `permcode` with `args` (excluding the program name).
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("permcode"))
        .chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_USAGE
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INVALID
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Gen(code) => gen(&code, out),
        Command::Encode {
            code,
            message,
            heads,
        } => encode(&code, message, heads, out),
        Command::Decode {
            code,
            received,
            format,
        } => decode_cmd(&code, &received, format, out),
        Command::Enumerate { code, max_size } => enumerate(&code, max_size, out),
        Command::Mindist { code, max_size } => mindist(&code, max_size, out),
        Command::Simulate {
            code,
            noise,
            trials,
            seed,
            clip,
            format,
        } => simulate(&code, noise, trials, seed, clip, format, out),
        Command::Verify { seed, format } => verify(seed, format, out),
    }
}

fn gen(code: &CodeArgs, out: &mut dyn Write) -> Outcome {
    let family = code
        .family
        .ok_or_else(|| Failure("gen needs --family".into()))?;
    match code.family_code(family)? {
        Code::Dpgp(p) => writeln!(out, "{}", dpgp_size(p.n(), p.d())?)?,
        Code::Rep(spec) => {
            let size = rep_size(&spec);
            match &code.spec {
                Some(path) => {
                    std::fs::write(path, spec.to_string())
                        .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
                    writeln!(out, "{size}")?;
                }
                None => writeln!(out, "{spec}# size {size}")?,
            }
        }
    }
    Ok(())
}

fn encode(
    code: &CodeArgs,
    message: Option<String>,
    heads: Option<String>,
    out: &mut dyn Write,
) -> Outcome {
    let word = match code.load()? {
        Code::Rep(spec) => {
            let heads = match (message, heads) {
                (Some(m), None) => heads_from_message(&spec, &Message(parse_list(&m, "message")?))?,
                (None, Some(h)) => HeadSequence(parse_list(&h, "head")?),
                _ => return Err(Failure("encode needs --message or --heads".into())),
            };
            encode_sequential(&spec, &heads)?
        }
        Code::Dpgp(p) => {
            let m = message.ok_or_else(|| Failure("dpgp encode needs --message".into()))?;
            dpgp_encode(&p, &ClassRanks(parse_list::<BigUint>(&m, "rank")?))?
        }
    };
    writeln!(out, "{word}")?;
    Ok(())
}

fn decode_cmd(code: &CodeArgs, received: &str, format: Format, out: &mut dyn Write) -> Outcome {
    let r: Vec<i64> = parse_list(received, "received")?;
    match code.load()? {
        Code::Rep(spec) => {
            let res = decode(&spec, &r)?;
            if format == Format::Json {
                let v = serde_json::json!({
                    "heads": res.heads.0,
                    "message": res.message.0,
                    "codeword": res.codeword.as_slice(),
                });
                writeln!(out, "{v}")?;
            } else {
                write!(
                    out,
                    "heads={}\nmessage={}\ncodeword={}\n",
                    res.heads, res.message, res.codeword
                )?;
            }
        }
        Code::Dpgp(p) => {
            let ranks = dpgp_decode(&p, &r)?;
            let word = dpgp_project(&p, &r)?;
            if format == Format::Json {
                let ranks: Vec<String> = ranks.0.iter().map(|x| x.to_string()).collect();
                writeln!(
                    out,
                    "{}",
                    serde_json::json!({ "message": ranks, "codeword": word })
                )?;
            } else {
                write!(
                    out,
                    "message={}\ncodeword={}\n",
                    join(&ranks.0),
                    join(&word)
                )?;
            }
        }
    }
    Ok(())
}

fn codewords(code: &Code, cap: u64) -> std::result::Result<Vec<Permutation>, Failure> {
    Ok(match code {
        Code::Rep(spec) => rep_enumerate(spec, cap)?.collect(),
        Code::Dpgp(p) => dpgp_enumerate(p.n(), p.d(), cap)?.collect(),
    })
}

fn enumerate(code: &CodeArgs, cap: u64, out: &mut dyn Write) -> Outcome {
    let code = code.load()?;
    let mut buf = String::new();
    for w in codewords(&code, cap)? {
        writeln!(buf, "{w}").expect("string write");
    }
    out.write_all(buf.as_bytes())?;
    Ok(())
}

fn mindist(code: &CodeArgs, cap: u64, out: &mut dyn Write) -> Outcome {
    let code = code.load()?;
    let words = codewords(&code, cap)?;
    writeln!(out, "{}", code_min_distance(&words)?)?;
    Ok(())
}

fn simulate(
    code: &CodeArgs,
    noise: u64,
    trials: u64,
    seed: u64,
    clip: bool,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    if trials == 0 {
        return Err(Failure("--trials must be at least 1".into()));
    }
    let spec = code.load_rep()?;
    // Report the requested distance when given, else what the spec certifies.
    let d = match code.d {
        Some(d) => Distance::Finite(d),
        None => validate_spec(&spec, 1).guaranteed_distance,
    };
    let report = run_simulation(&SimConfig {
        spec,
        d,
        noise_max: noise,
        trials,
        seed,
        clip,
        threads: None,
    });
    match format {
        Format::Csv => write!(out, "{}", report.to_csv())?,
        Format::Text => write!(out, "{}", report.to_text())?,
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&report).expect("serializes")
        )?,
    }
    Ok(())
}

fn verify(seed: u64, format: Format, out: &mut dyn Write) -> Outcome {
    let reports = run_suite(seed);
    let failed = reports.iter().filter(|r| !r.passed()).count();
    match format {
        Format::Json => {
            let all: Vec<_> = reports.iter().map(|r| r.to_json()).collect();
            writeln!(out, "{}", serde_json::Value::Array(all))?;
        }
        _ => {
            for (i, r) in reports.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                write!(out, "{}", r.to_text())?;
            }
        }
    }
    if failed > 0 {
        return Err(Failure(format!("{failed} check(s) failed")));
    }
    Ok(())
}
