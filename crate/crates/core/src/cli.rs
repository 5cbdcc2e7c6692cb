//! Command-line front end: JSON in, JSON or CSV out.
//!
//! Exit codes: `0` on success, `1` when `verify` finds a violation, `2` on
//! invalid input (with a JSON error object on stderr).

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bayes::{risk_report, BayesModel, LossMatrix};
use crate::bounds::{
    event_probability_lower_bound, functional_lower_bound, functional_upper_bound,
    reverse_holder_bound, table1_csv, table1_report, EventSet, FunctionOnJoint,
};
use crate::closed_forms::{
    bsc_joint, bsc_sibson, erasure_joint, erasure_sibson_xy, erasure_sibson_yx, gaussian_sibson,
    GaussianPair,
};
use crate::error::Error;
use crate::order::ZeroConvention;
use crate::prob::{Channel, JointPmf, Pmf};
use crate::renyi::renyi_divergence;
use crate::sibson::{maximal_cost_leakage, maximal_leakage, sibson_mi};
use crate::verify::{run_property_suite, MaxDims, PropertyReport};

#[derive(Debug, Parser)]
#[command(
    name = "sibson",
    version,
    about = "Renyi divergences, Sibson's alpha-mutual information and the bounds they induce"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Renyi divergence D_alpha(P||Q) between two pmf files.
    Divergence {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_order)]
        alpha: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Sibson's I_alpha(X, Y) and the optimal output measure.
    Sibson {
        #[command(flatten)]
        input: JointInput,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_order)]
        alpha: f64,
        /// Swap the roles of X and Y.
        #[arg(long)]
        reverse: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Maximal leakage, or maximal-cost leakage with --cost.
    Leakage {
        #[command(flatten)]
        input: JointInput,
        #[arg(long)]
        cost: bool,
        #[command(flatten)]
        common: Common,
    },
    /// One reverse-Holder bound for a function or event on X x Y.
    Bounds {
        #[command(flatten)]
        input: JointInput,
        /// JSON {"function": [[...]]}.
        #[arg(long, conflicts_with = "event", required_unless_present = "event")]
        function: Option<PathBuf>,
        /// JSON {"event": [[true, false, ...]]}; requires a negative order.
        #[arg(long)]
        event: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_order)]
        alpha: f64,
        /// Evaluate the two-step bound at this outer order instead of its limit.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_order)]
        alpha_prime: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Per-regime bound table (CSV by default).
    Table1 {
        #[command(flatten)]
        input: JointInput,
        #[arg(long)]
        function: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',', value_parser = parse_order,
              default_value = "-2,0.5,2")]
        alphas: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// Exact Bayes risk and its information lower bounds.
    Bayes {
        /// JSON {"prior": [...], "channel": [[...]], "loss": [[...]]}.
        #[arg(long)]
        model: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',', value_parser = parse_order,
              default_value = "-1,-4,-inf")]
        alphas: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,0.75")]
        rhos: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// Closed-form calculators for the standard channels.
    Examples {
        #[command(subcommand)]
        which: Example,
    },
    /// Randomized property suite; exits 1 on any violation.
    Verify {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        instances: usize,
        /// Largest alphabet sizes as n_x,n_y,n_z.
        #[arg(long, value_delimiter = ',', num_args = 3, default_values_t = [4, 4, 4])]
        max_dims: Vec<usize>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Subcommand)]
enum Example {
    /// Uniform input through a binary symmetric channel.
    Bsc {
        #[arg(long)]
        delta: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_order)]
        alpha: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Uniform input through a binary erasure channel, both directions.
    Erasure {
        #[arg(long)]
        delta: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_order)]
        alpha: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Additive Gaussian noise channel.
    Gaussian {
        #[arg(long)]
        var_x: f64,
        #[arg(long)]
        var_n: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_order)]
        alpha: f64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
struct JointInput {
    /// JSON {"joint": [[...]]} or {"p_x": [...], "channel": [[...]]}.
    #[arg(long, alias = "input")]
    joint: PathBuf,
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Convention::Strict)]
    convention: Convention,
    /// Logarithm base for displayed information values.
    #[arg(long, value_enum, default_value_t = Base::E)]
    base: Base,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Convention {
    Strict,
    Support,
}

impl From<Convention> for ZeroConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Strict => ZeroConvention::Strict,
            Convention::Support => ZeroConvention::SupportRestricted,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Base {
    E,
    #[value(name = "2")]
    Two,
    #[value(name = "10")]
    Ten,
}

impl Base {
    fn convert(self, nats: f64) -> f64 {
        match self {
            Base::E => nats,
            Base::Two => nats / std::f64::consts::LN_2,
            Base::Ten => nats / std::f64::consts::LN_10,
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Base::E => "e",
            Base::Two => "2",
            Base::Ten => "10",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Accepts decimal numbers and `inf`, `+inf`, `-inf` (also `infinity`).
fn parse_order(s: &str) -> Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a number or ±inf"))?;
    if v.is_nan() {
        return Err("alpha must not be NaN".into());
    }
    Ok(v)
}

/// A failure that maps to an exit code.
enum Failure {
    Input { kind: String, message: String },
    Violations,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input {
            kind: e.kind().into(),
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: impl fmt::Display) -> Failure {
    Failure::Input {
        kind: "io".into(),
        message: format!("{}: {e}", path.display()),
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input {
        kind: "invalid_input".into(),
        message: format!("{}: {e}", path.display()),
    })
}

/// Infinite values as the strings "inf"/"-inf".
fn ext(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else if v > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn emit(out: &mut dyn Write, output: &Output, text: &str) -> Result<(), Failure> {
    match &output.output {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| io_failure(Path::new("<stdout>"), e)),
    }
}

fn emit_json(out: &mut dyn Write, output: &Output, value: &impl Serialize) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable output");
    text.push('\n');
    emit(out, output, &text)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionFile {
    function: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EventFile {
    event: Vec<Vec<bool>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    prior: Pmf,
    channel: Vec<Vec<f64>>,
    loss: Vec<Vec<f64>>,
}

fn load_joint(input: &JointInput, reverse: bool) -> Result<JointPmf, Failure> {
    let j: JointPmf = read_json(&input.joint)?;
    Ok(if reverse { j.transpose() } else { j })
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Divergence {
            p,
            q,
            alpha,
            common,
        } => {
            let (p, q): (Pmf, Pmf) = (read_json(&p)?, read_json(&q)?);
            let conv = common.convention.into();
            let d = renyi_divergence(&p, &q, alpha, conv)?;
            emit_json(
                out,
                &common.output,
                &json!({
                    "divergence": ext(common.base.convert(d)),
                    "alpha": ext(alpha),
                    "convention": conv.to_string(),
                    "base": common.base.to_string(),
                }),
            )
        }
        Command::Sibson {
            input,
            alpha,
            reverse,
            common,
        } => {
            let joint = load_joint(&input, reverse)?;
            let conv = common.convention.into();
            let r = sibson_mi(&joint, alpha, conv)?;
            emit_json(
                out,
                &common.output,
                &json!({
                    "i_alpha": ext(common.base.convert(r.value)),
                    "alpha": ext(alpha),
                    "optimal_q": r.optimal_q,
                    "convention": conv.to_string(),
                    "base": common.base.to_string(),
                }),
            )
        }
        Command::Leakage {
            input,
            cost,
            common,
        } => {
            let joint = load_joint(&input, false)?;
            let (name, v) = if cost {
                ("maximal_cost_leakage", maximal_cost_leakage(&joint))
            } else {
                ("maximal_leakage", maximal_leakage(&joint))
            };
            emit_json(
                out,
                &common.output,
                &json!({
                    name: ext(common.base.convert(v)),
                    "convention": ZeroConvention::Strict.to_string(),
                    "base": common.base.to_string(),
                }),
            )
        }
        Command::Bounds {
            input,
            function,
            event,
            alpha,
            alpha_prime,
            output,
        } => {
            let joint = load_joint(&input, false)?;
            let report = match (function, event) {
                (Some(path), _) => {
                    let f = FunctionOnJoint::new(read_json::<FunctionFile>(&path)?.function)?;
                    match alpha_prime {
                        Some(ap) => reverse_holder_bound(&joint, &f, alpha, ap)?,
                        None if alpha > 1.0 => functional_upper_bound(&joint, &f, alpha)?,
                        None => functional_lower_bound(&joint, &f, alpha)?,
                    }
                }
                (None, Some(path)) => {
                    let e = EventSet::new(read_json::<EventFile>(&path)?.event)?;
                    event_probability_lower_bound(&joint, &e, alpha)?
                }
                (None, None) => unreachable!("clap requires one of --function/--event"),
            };
            let mut value = serde_json::to_value(&report).expect("serializable report");
            value["convention"] = json!(ZeroConvention::Strict.to_string());
            emit_json(out, &output, &value)
        }
        Command::Table1 {
            input,
            function,
            alphas,
            format,
            output,
        } => {
            let joint = load_joint(&input, false)?;
            let f = FunctionOnJoint::new(read_json::<FunctionFile>(&function)?.function)?;
            let rows = table1_report(&joint, &f, &alphas)?;
            match format {
                Format::Csv => emit(out, &output, &table1_csv(&rows)?),
                Format::Json => emit_json(
                    out,
                    &output,
                    &json!({ "rows": rows, "convention": ZeroConvention::Strict.to_string() }),
                ),
            }
        }
        Command::Bayes {
            model,
            alphas,
            rhos,
            format,
            output,
        } => {
            let file: ModelFile = read_json(&model)?;
            let model = BayesModel::new(
                file.prior,
                Channel::new(file.channel)?,
                LossMatrix::new(file.loss)?,
            )?;
            let report = risk_report(&model, &alphas, &rhos)?;
            match format {
                Format::Csv => emit(out, &output, &report.to_csv()?),
                Format::Json => {
                    let mut value = serde_json::to_value(&report).expect("serializable report");
                    value["convention"] = json!(ZeroConvention::Strict.to_string());
                    emit_json(out, &output, &value)
                }
            }
        }
        Command::Examples { which } => run_example(which, out),
        Command::Verify {
            seed,
            instances,
            max_dims,
            output,
        } => {
            let dims = MaxDims {
                n_x: max_dims[0],
                n_y: max_dims[1],
                n_z: max_dims[2],
            };
            let reports = run_property_suite(seed, instances, dims);
            write_summary(err, &reports);
            emit_json(
                out,
                &output,
                &json!({ "seed": seed, "instances": instances, "reports": reports }),
            )?;
            if reports.iter().all(PropertyReport::passed) {
                Ok(())
            } else {
                Err(Failure::Violations)
            }
        }
    }
}

fn run_example(which: Example, out: &mut dyn Write) -> Result<(), Failure> {
    match which {
        Example::Bsc {
            delta,
            alpha,
            common,
        } => {
            let conv = common.convention.into();
            let closed = bsc_sibson(delta, alpha)?;
            let computed = sibson_mi(&bsc_joint(delta)?, alpha, conv)?.value;
            emit_json(
                out,
                &common.output,
                &json!({
                    "closed_form": ext(common.base.convert(closed)),
                    "computed": ext(common.base.convert(computed)),
                    "delta": delta,
                    "alpha": ext(alpha),
                    "convention": conv.to_string(),
                    "base": common.base.to_string(),
                }),
            )
        }
        Example::Erasure {
            delta,
            alpha,
            common,
        } => {
            let conv = common.convention.into();
            let joint = erasure_joint(delta)?;
            let base = common.base;
            emit_json(
                out,
                &common.output,
                &json!({
                    "closed_form": {
                        "i_xy": base.convert(erasure_sibson_xy(delta, alpha)?),
                        "i_yx": base.convert(erasure_sibson_yx(delta, alpha)?),
                        "convention": ZeroConvention::SupportRestricted.to_string(),
                    },
                    "computed": {
                        "i_xy": ext(base.convert(sibson_mi(&joint, alpha, conv)?.value)),
                        "i_yx": ext(base.convert(sibson_mi(&joint.transpose(), alpha, conv)?.value)),
                        "convention": conv.to_string(),
                    },
                    "maximal_cost_leakage": ext(base.convert(maximal_cost_leakage(&joint))),
                    "delta": delta,
                    "alpha": ext(alpha),
                    "base": base.to_string(),
                }),
            )
        }
        Example::Gaussian {
            var_x,
            var_n,
            alpha,
            common,
        } => {
            let g = GaussianPair::new(var_x, var_n)?;
            let v = gaussian_sibson(g, alpha)?;
            emit_json(
                out,
                &common.output,
                &json!({
                    "i_alpha": common.base.convert(v),
                    "validity_lower": g.validity_lower(),
                    "alpha": alpha,
                    "base": common.base.to_string(),
                }),
            )
        }
    }
}

fn write_summary(err: &mut dyn Write, reports: &[PropertyReport]) {
    let _ = writeln!(err, "{:<34} {:>9} {:>10} {:>12}", "property", "instances", "violations", "max");
    for r in reports {
        let _ = writeln!(
            err,
            "{:<34} {:>9} {:>10} {:>12.3e}",
            r.property_name,
            r.instances_tested,
            r.violations.len(),
            r.max_violation
        );
    }
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let error = json!({ "error": { "kind": "usage", "message": e.to_string() } });
            let _ = writeln!(err, "{error}");
            return 2;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(Failure::Violations) => 1,
        Err(Failure::Input { kind, message }) => {
            let error = json!({ "error": { "kind": kind, "message": message } });
            let _ = writeln!(err, "{error}");
            2
        }
    }
}

/// [`run_with`] on the process's stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
