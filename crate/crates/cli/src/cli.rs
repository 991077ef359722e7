use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use addlin_core::addcode::DEFAULT_DISTANCE_BUDGET;
use addlin_core::equiv::{self, LinearityVerdict, SearchOptions, DEFAULT_SEARCH_BUDGET};
use addlin_core::qc;

use crate::report::{self, VerdictReport};
use crate::{crosscheck, format, table};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    JsonLines,
}

#[derive(Debug, Parser)]
#[command(name = "addlin", version, about = "Decide whether additive codes over F_{q^2} are equivalent to linear codes")]
pub struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    /// Enumeration cap: search candidates for `test`, codewords for `distance`.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Seed for randomized subcommands.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the linearity test on a code file.
    Test {
        input: PathBuf,
        /// Where to write the witness (default: input with `.witness` extension).
        #[arg(long)]
        witness_out: Option<PathBuf>,
        /// Reduce dependent generator rows instead of rejecting them.
        #[arg(long)]
        allow_rank_deficient: bool,
        /// Also compute the minimum distance.
        #[arg(long)]
        distance: bool,
    },
    /// Build the additive code of a one-generator quasi-cyclic code.
    Qc {
        spec: PathBuf,
        /// Output code file (default: spec with `.code` extension).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Transforms applied after construction: extend, augment-ones, shorten:<i>.
        #[arg(long = "transform")]
        transforms: Vec<String>,
    },
    /// Minimum distance by exhaustive enumeration.
    Distance {
        input: PathBuf,
        #[arg(long)]
        allow_rank_deficient: bool,
    },
    /// Hull dimension and the ACD property.
    Hull { input: PathBuf },
    /// Hermitian LCD check for a linear code file.
    Lcd { input: PathBuf },
    /// Check every row of a table manifest.
    VerifyTable { manifest: PathBuf },
    /// Re-verify a witness file against a code file.
    VerifyWitness { code: PathBuf, witness: PathBuf },
    /// Compare the test with the exhaustive oracle on random small codes.
    Crosscheck {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_k: usize,
    },
}

/// Exit code for errors.
pub const EXIT_ERROR: i32 = 3;

struct Out<'a> {
    w: &'a mut dyn Write,
    format: OutputFormat,
}

impl Out<'_> {
    fn emit<T: Serialize>(&mut self, kind: &str, text: &str, record: &T) -> anyhow::Result<()> {
        match self.format {
            OutputFormat::Text => {
                write!(self.w, "{text}")?;
                if !text.ends_with('\n') {
                    writeln!(self.w)?;
                }
            }
            OutputFormat::JsonLines => {
                let mut value = serde_json::to_value(record)?;
                if let Some(obj) = value.as_object_mut() {
                    obj.insert("kind".into(), json!(kind));
                }
                writeln!(self.w, "{}", serde_json::to_string(&value)?)?;
            }
        }
        Ok(())
    }
}

fn read(path: &Path) -> anyhow::Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    String::from_utf8(read(path)?).with_context(|| format!("{} is not UTF-8", path.display()))
}

fn parse_context<T, E: std::error::Error + Send + Sync + 'static>(
    r: Result<T, E>,
    path: &Path,
) -> anyhow::Result<T> {
    r.with_context(|| format!("parsing {}", path.display()))
}

fn exit_code(v: &LinearityVerdict) -> i32 {
    match v {
        LinearityVerdict::StrictlyAdditive(_) => 0,
        LinearityVerdict::EquivalentToLinear { .. } => 1,
        LinearityVerdict::Undecided(_) => 2,
    }
}

/// Runs one command, writing records to `w`. Returns the process exit code.
pub fn run(cli: &Cli, w: &mut dyn Write) -> anyhow::Result<i32> {
    let mut out = Out { w, format: cli.format };
    match &cli.command {
        Command::Test {
            input,
            witness_out,
            allow_rank_deficient,
            distance,
        } => {
            let bytes = read(input)?;
            let text = String::from_utf8_lossy(&bytes);
            let code = parse_context(format::parse_code(&text, *allow_rank_deficient), input)?;
            let budget = cli.budget.unwrap_or(DEFAULT_SEARCH_BUDGET);
            let run = equiv::run_pipeline(&code, SearchOptions { budget })?;
            let d = if *distance {
                Some(code.min_distance(DEFAULT_DISTANCE_BUDGET)?)
            } else {
                None
            };
            let mut rep = VerdictReport::new(input, &bytes, &code, &run, d);
            if let Some(wit) = run.verdict.witness() {
                wit.verify(&code)?;
                let path = witness_out
                    .clone()
                    .unwrap_or_else(|| input.with_extension("witness"));
                fs::write(&path, format::write_witness(&code, wit))
                    .with_context(|| format!("writing {}", path.display()))?;
                rep.witness = Some(path.display().to_string());
            }
            out.emit("test", &rep.to_text(), &rep)?;
            Ok(exit_code(&run.verdict))
        }
        Command::Qc {
            spec,
            output,
            transforms,
        } => {
            let qs = parse_context(format::parse_qc_spec(&read_text(spec)?), spec)?;
            let mut code = qc::build_qc_additive(&qs)?;
            for t in transforms {
                code = table::apply_transform(&code, t)?;
            }
            let path = output.clone().unwrap_or_else(|| spec.with_extension("code"));
            let comment = format!("quasi-cyclic code from {}", spec.display());
            fs::write(&path, format::write_code(&code, Some(&comment)))
                .with_context(|| format!("writing {}", path.display()))?;
            let rec = json!({"output": path.display().to_string(), "n": code.n(), "k": code.k()});
            let text = format!("n={} k={}\nwrote {}", code.n(), code.k(), path.display());
            out.emit("qc", &text, &rec)?;
            Ok(0)
        }
        Command::Distance {
            input,
            allow_rank_deficient,
        } => {
            let code = parse_context(
                format::parse_code(&read_text(input)?, *allow_rank_deficient),
                input,
            )?;
            let d = code.min_distance(cli.budget.unwrap_or(DEFAULT_DISTANCE_BUDGET))?;
            let params = report::parameters(&code, Some(d));
            let rec = json!({"input": input.display().to_string(), "d": d, "parameters": params});
            out.emit("distance", &format!("d={d}  {params}"), &rec)?;
            Ok(0)
        }
        Command::Hull { input } => {
            let code = parse_context(format::parse_code(&read_text(input)?, false), input)?;
            let (_, dim) = code.hull();
            let acd = dim == 0;
            let rec = json!({"input": input.display().to_string(), "hull_dimension": dim, "acd": acd});
            out.emit("hull", &format!("hull dimension {dim}\nacd {acd}"), &rec)?;
            Ok(0)
        }
        Command::Lcd { input } => {
            let lin = parse_context(format::parse_linear(&read_text(input)?), input)?;
            let lcd = lin.hermitian_lcd();
            let rec = json!({"input": input.display().to_string(), "n": lin.n(), "m": lin.dim(), "hermitian_lcd": lcd});
            let text = format!("[{}, {}] linear code\nhermitian lcd {lcd}", lin.n(), lin.dim());
            out.emit("lcd", &text, &rec)?;
            Ok(0)
        }
        Command::VerifyTable { manifest } => {
            let m = table::load_manifest(manifest)
                .with_context(|| format!("loading {}", manifest.display()))?;
            let base = manifest.parent().unwrap_or(Path::new("."));
            let budgets = table::Budgets {
                search: cli.budget.unwrap_or(DEFAULT_SEARCH_BUDGET),
                distance: cli.budget.unwrap_or(DEFAULT_DISTANCE_BUDGET),
            };
            let results = table::verify(&m, base, budgets);
            let mut counts = [0usize; 5];
            for r in &results {
                let slot = match (&r.status, r.tier) {
                    (table::Status::Pass, _) => 0,
                    (table::Status::Fail { .. }, table::Tier::Core) => 1,
                    (table::Status::Fail { .. }, table::Tier::Convention) => 2,
                    (table::Status::SkippedNoData, _) => 3,
                    (table::Status::BudgetExceeded { .. }, _) => 4,
                };
                counts[slot] += 1;
                out.emit("row", &r.to_text(), r)?;
            }
            let summary = json!({
                "rows": results.len(),
                "pass": counts[0],
                "fail": counts[1],
                "convention_fail": counts[2],
                "skipped": counts[3],
                "budget_exceeded": counts[4],
            });
            let text = format!(
                "{} rows: {} pass, {} fail, {} convention mismatches, {} skipped, {} over budget",
                results.len(),
                counts[0],
                counts[1],
                counts[2],
                counts[3],
                counts[4]
            );
            out.emit("summary", &text, &summary)?;
            Ok(if results.iter().any(|r| r.is_fatal()) { 1 } else { 0 })
        }
        Command::VerifyWitness { code, witness } => {
            let c = parse_context(format::parse_code(&read_text(code)?, false), code)?;
            let wf = parse_context(format::WitnessFile::parse(&read_text(witness)?), witness)?;
            let result = wf.complete(&c).and_then(|w| w.verify(&c).map(|_| w));
            let (ok, msg) = match &result {
                Ok(w) => (
                    true,
                    format!(
                        "witness valid: linear [{}, {}] code",
                        w.linear_generator.n(),
                        w.linear_generator.dim()
                    ),
                ),
                Err(e) => (false, format!("witness invalid: {e}")),
            };
            let rec = json!({"code": code.display().to_string(), "witness": witness.display().to_string(), "valid": ok, "message": msg});
            out.emit("verify-witness", &msg, &rec)?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Crosscheck { count, max_n, max_k } => {
            let budget = cli.budget.unwrap_or(DEFAULT_SEARCH_BUDGET);
            let s = crosscheck::run(cli.seed, *count, *max_n, *max_k, budget)?;
            let text = format!(
                "seed {}: {}/{} agree ({} equivalent, {} strictly additive)",
                s.seed, s.agreements, s.total, s.equivalent, s.strictly_additive
            );
            out.emit("crosscheck", &text, &s)?;
            Ok(if s.disagreements.is_empty() { 0 } else { 1 })
        }
    }
}
