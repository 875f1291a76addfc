//! Command-line front end. [`run`] parses arguments, dispatches, and returns
//! the process exit code: 0 on success, 1 on usage errors, 2 on mathematical
//! failure (no equivariant solution, a vanishing denominator, or a failed check).

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::casimir::{alpha, casimir, critical_values, Rep};
use crate::contact::{hamiltonian_field, Generator};
use crate::diffop::{lie_density, lie_op, DiffOp};
use crate::error::Error;
use crate::json::{graded_json, operator_from_json, operator_json, result_json, superfn_json, symbol_json, vector_field_json};
use crate::parse::parse_superfn_with_warnings;
use crate::quantize::{describe_pivot, quantize, verify_equivariance, Method, Status};
use crate::random::{Sampler, DEFAULT_MAX_DEGREE};
use crate::rational::{fmt_rational, parse_rational, HalfInt, Rational, Weight};
use crate::spo_matrix::{projective_embed, SpoMatrix};
use crate::superfn::SuperFn;
use crate::symbol::{gamma, lie_symbol, q_aff, Symbol};

#[derive(Parser, Debug)]
#[command(name = "superquant", version, about = "Exact spo(2|2)-equivariant quantization on S^{1|2}")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Iterative,
    ClosedForm,
    Affine,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Iterative => Method::Iterative,
            MethodArg::ClosedForm => Method::ClosedForm,
            MethodArg::Affine => Method::Affine,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RepArg {
    #[value(name = "L")]
    L,
    #[value(name = "calL")]
    CalL,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Density,
    Operator,
    Symbol,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Any two of the three weights; `mu = lambda + delta`.
#[derive(Args, Debug, Clone)]
struct WeightArgs {
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    lambda: Option<Rational>,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    mu: Option<Rational>,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    delta: Option<Rational>,
}

#[derive(Args, Debug, Clone)]
struct SymbolArgs {
    /// Symbol degree, an integer or half-integer such as 3/2.
    #[arg(long)]
    k: Option<HalfInt>,
    /// First component; a random one is drawn when both components are omitted.
    #[arg(long, allow_hyphen_values = true)]
    f1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    f2: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
    max_degree: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Equivariant quantization of a symbol.
    Quantize {
        #[command(flatten)]
        weights: WeightArgs,
        #[command(flatten)]
        symbol: SymbolArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Iterative)]
        method: MethodArg,
    },
    /// Defect of the affine quantization: calL_{X_f} - L_{X_f} on symbols.
    Gamma {
        #[command(flatten)]
        weights: WeightArgs,
        #[command(flatten)]
        symbol: SymbolArgs,
        /// Hamiltonian of the acting field.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Quadratic Casimir operator applied to a symbol.
    Casimir {
        #[command(flatten)]
        weights: WeightArgs,
        #[command(flatten)]
        symbol: SymbolArgs,
        #[arg(long, value_enum, default_value_t = RepArg::L)]
        rep: RepArg,
    },
    /// Critical values of delta for symbols of degree at most `max-k`.
    Critical {
        #[arg(long)]
        max_k: HalfInt,
    },
    /// Lie derivative along X_f on densities, operators or symbols.
    Lie {
        #[command(flatten)]
        weights: WeightArgs,
        #[command(flatten)]
        symbol: SymbolArgs,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, value_enum)]
        target: Target,
        /// Density for `--target density`.
        #[arg(long, allow_hyphen_values = true)]
        density: Option<String>,
        /// Operator JSON (or `@path`) for `--target operator`; defaults to the affine quantization of the symbol.
        #[arg(long)]
        operator: Option<String>,
    },
    /// Vector field of a 4x4 matrix (rows separated by `;`, entries by `,`),
    /// or the matrix of a generator given by its Hamiltonian.
    Embed {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "f", required_unless_present = "f")]
        matrix: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
    },
    /// Randomized exact equivariance check under all eight generators.
    Check {
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long)]
        k: HalfInt,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Iterative)]
        method: MethodArg,
    },
}

enum Failure {
    Usage(String),
    /// Mathematical failure with its serialized diagnostics.
    Math { text: String, json: Value },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ZeroDenominator { ref coefficient, degree } => Failure::Math {
                text: e.to_string(),
                json: json!({ "status": "ZeroDenominator", "coefficient": coefficient, "degree": degree.to_string() }),
            },
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

impl WeightArgs {
    fn lambda_delta(&self) -> CliResult<(Weight, Weight)> {
        match (&self.lambda, &self.mu, &self.delta) {
            (Some(l), Some(m), Some(d)) if &(l + d) != m => {
                Err(Failure::Usage("inconsistent weights: mu must equal lambda + delta".into()))
            }
            (Some(l), _, Some(d)) => Ok((l.clone(), d.clone())),
            (Some(l), Some(m), None) => Ok((l.clone(), m - l)),
            (None, Some(m), Some(d)) => Ok((m - d, d.clone())),
            _ => Err(Failure::Usage("give two of --lambda, --mu, --delta".into())),
        }
    }

    fn lambda(&self) -> CliResult<Weight> {
        match (&self.lambda, &self.mu, &self.delta) {
            (Some(l), _, _) => Ok(l.clone()),
            _ => self.lambda_delta().map(|(l, _)| l),
        }
    }
}

fn expr(text: &str, what: &str, warnings: &mut Vec<String>) -> CliResult<SuperFn> {
    let (f, w) = parse_superfn_with_warnings(text).map_err(|e| Failure::Usage(format!("{what}: {e}")))?;
    warnings.extend(w.into_iter().map(|w| format!("{what}: {w}")));
    Ok(f)
}

impl SymbolArgs {
    fn build(&self, delta: &Weight, warnings: &mut Vec<String>) -> CliResult<Symbol> {
        let k = self.k.ok_or_else(|| Failure::Usage("--k is required".into()))?;
        if self.f1.is_none() && self.f2.is_none() {
            let mut rng = Sampler::new(self.seed, self.max_degree);
            let p = rng.parity();
            return Ok(rng.symbol(k, delta, p));
        }
        let f1 = expr(self.f1.as_deref().unwrap_or("0"), "--f1", warnings)?;
        let f2 = expr(self.f2.as_deref().unwrap_or("0"), "--f2", warnings)?;
        Ok(Symbol::new(k, delta.clone(), f1, f2)?)
    }
}

fn parse_matrix(text: &str) -> CliResult<SpoMatrix> {
    let rows: Vec<&str> = text.split(';').collect();
    let bad = || Failure::Usage("--matrix needs 4 rows of 4 entries".into());
    if rows.len() != 4 {
        return Err(bad());
    }
    let mut m = SpoMatrix::zero();
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != 4 {
            return Err(bad());
        }
        for (j, cell) in cells.iter().enumerate() {
            m.entries[i][j] = parse_rational(cell).map_err(|e| Failure::Usage(format!("--matrix: {e}")))?;
        }
    }
    Ok(m)
}

fn read_operator(arg: &str) -> CliResult<DiffOp> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?,
        None => arg.to_string(),
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("--operator: {e}")))?;
    Ok(operator_from_json(&v)?)
}

/// Rendered output: text lines and the JSON document.
struct Output {
    text: String,
    json: Value,
}

fn execute(command: &Command, warnings: &mut Vec<String>) -> CliResult<Output> {
    match command {
        Command::Quantize { weights, symbol, method } => {
            let (lambda, delta) = weights.lambda_delta()?;
            let s = symbol.build(&delta, warnings)?;
            let r = quantize(&s, &lambda, (*method).into())?;
            let mut text = format!("symbol: {s}\nstatus: {}\n", r.status);
            for d in r.diagnostics.iter().filter(|d| d.pivot == Rational::from_integer(0.into())) {
                text.push_str(&format!("{}\n", describe_pivot(d)));
            }
            let json = result_json(&r);
            match (&r.status, &r.operator) {
                (Status::NoSolution, _) | (_, None) => Err(Failure::Math {
                    text: text + "no equivariant quantization exists for this symbol",
                    json,
                }),
                (_, Some(op)) => {
                    if r.status == Status::Ambiguous {
                        warnings.push("solution not unique; undetermined components set to zero".into());
                    }
                    text.push_str(&format!("operator: {op}"));
                    Ok(Output { text, json })
                }
            }
        }
        Command::Gamma { weights, symbol, f } => {
            let (lambda, delta) = weights.lambda_delta()?;
            let s = symbol.build(&delta, warnings)?;
            let f = expr(f, "--f", warnings)?;
            let g = gamma(&f, &s, &lambda);
            Ok(Output {
                text: format!("symbol: {s}\ngamma: {g}"),
                json: json!({ "symbol": symbol_json(&s), "gamma": graded_json(&g) }),
            })
        }
        Command::Casimir { weights, symbol, rep } => {
            let (lambda, delta) = weights.lambda_delta()?;
            let s = symbol.build(&delta, warnings)?;
            let rep = match rep {
                RepArg::L => Rep::L,
                RepArg::CalL => Rep::CalL,
            };
            let c = casimir(&s, &lambda, rep);
            let a = alpha(s.k, &delta);
            Ok(Output {
                text: format!("symbol: {s}\nalpha_{}: {}\ncasimir: {c}", s.k, fmt_rational(&a)),
                json: json!({ "symbol": symbol_json(&s), "alpha": fmt_rational(&a), "casimir": graded_json(&c) }),
            })
        }
        Command::Critical { max_k } => {
            let values: Vec<String> = critical_values(*max_k).iter().map(fmt_rational).collect();
            Ok(Output {
                text: values.join(", "),
                json: json!(values),
            })
        }
        Command::Lie {
            weights,
            symbol,
            f,
            target,
            density,
            operator,
        } => {
            let f = expr(f, "--f", warnings)?;
            match target {
                Target::Density => {
                    let lambda = weights.lambda()?;
                    let d = density
                        .as_deref()
                        .ok_or_else(|| Failure::Usage("--density is required for --target density".into()))?;
                    let g = expr(d, "--density", warnings)?;
                    let out = lie_density(&f, &lambda, &g);
                    Ok(Output {
                        text: out.to_string(),
                        json: superfn_json(&out),
                    })
                }
                Target::Operator => {
                    let op = match operator {
                        Some(arg) => read_operator(arg)?,
                        None => {
                            let (lambda, delta) = weights.lambda_delta()?;
                            q_aff(&symbol.build(&delta, warnings)?, &lambda)
                        }
                    };
                    let out = lie_op(&f, &op);
                    Ok(Output {
                        text: out.to_string(),
                        json: operator_json(&out),
                    })
                }
                Target::Symbol => {
                    let delta = weights.delta.clone().map_or_else(|| weights.lambda_delta().map(|(_, d)| d), Ok)?;
                    let s = symbol.build(&delta, warnings)?;
                    let out = lie_symbol(&f, &s);
                    Ok(Output {
                        text: out.to_string(),
                        json: symbol_json(&out),
                    })
                }
            }
        }
        Command::Embed { matrix, f } => {
            let m = match (matrix, f) {
                (Some(text), _) => parse_matrix(text)?,
                (None, Some(h)) => {
                    let h = expr(h, "--f", warnings)?;
                    let g = Generator::from_hamiltonian(&h)
                        .ok_or_else(|| Failure::Usage(format!("`{h}` is not one of the eight generators")))?;
                    SpoMatrix::of_generator(g)
                }
                (None, None) => return Err(Failure::Usage("give --matrix or --f".into())),
            };
            let field = projective_embed(&m)?;
            let generator = Generator::ALL
                .into_iter()
                .find(|g| hamiltonian_field(&g.hamiltonian()) == field);
            let mut text = format!("matrix: {m}\nfield: {field}");
            if let Some(g) = generator {
                text.push_str(&format!("\nhamiltonian: {g}"));
            }
            Ok(Output {
                text,
                json: json!({
                    "field": vector_field_json(&field),
                    "hamiltonian": generator.map(|g| g.name()),
                }),
            })
        }
        Command::Check {
            weights,
            k,
            trials,
            seed,
            max_degree,
            method,
        } => {
            let (lambda, delta) = weights.lambda_delta()?;
            let report = verify_equivariance(&lambda, &delta, *k, *trials, *seed, *max_degree, (*method).into());
            let text = report.to_string().trim_end().to_string();
            let json = json!({
                "passed": report.passed_generators(),
                "total": report.per_generator.len(),
                "ok": report.all_passed(),
                "generators": report.per_generator.iter().map(|(g, n, bad)| json!({
                    "generator": g.name(), "trials": n, "failures": bad.len()
                })).collect::<Vec<_>>(),
                "errors": report.errors,
            });
            if report.all_passed() {
                Ok(Output { text, json })
            } else {
                Err(Failure::Math { text, json })
            }
        }
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut warnings = Vec::new();
    let result = execute(&cli.command, &mut warnings);
    for w in &warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    let emit = |out: &mut dyn Write, text: &str, json: &Value| {
        let _ = match cli.format {
            Format::Text => writeln!(out, "{text}"),
            Format::Json => writeln!(out, "{json}"),
        };
    };
    match result {
        Ok(o) => {
            emit(out, &o.text, &o.json);
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Math { text, json }) => {
            emit(out, &text, &json);
            2
        }
    }
}
