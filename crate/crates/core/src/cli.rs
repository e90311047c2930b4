//! The `chern` command-line front end.
//!
//! JSON is the machine interface; `--format text` pretty-prints the same
//! data. Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bigpoly::TotalChern;
use crate::chern_roots::{chern_of_lambda, lambda_k, schur_op, universal_tensor_poly, KClass};
use crate::error::{Error, Result};
use crate::gamma::{filtration_degree, gamma_series};
use crate::grassmann::{model_rank, verify_presentation};
use crate::grr_check::{all_pass, verify_all};
use crate::partitions::{lr_coefficient, schur_in_variables, Partition};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "chern", version, about = "Exact Chern class calculus in the splitting-principle model")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

/// Global settings; every flag has a `CHERN_*` environment override.
#[derive(Debug, Clone, Args)]
pub struct Config {
    /// Truncation degree D.
    #[arg(long = "degree", global = true, env = "CHERN_DEGREE", default_value_t = 8,
          value_parser = clap::value_parser!(u32).range(1..))]
    pub degree: u32,
    /// Output format.
    #[arg(long, global = true, env = "CHERN_FORMAT", value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for randomized verification cases.
    #[arg(long, global = true, env = "CHERN_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Operations on virtual bundles given as `{"pos":[[..]],"neg":[[..]]}`.
    #[command(subcommand)]
    Chern(ChernCommand),
    /// Universal polynomial for c_i(F ⊗ G), or for c_i(Λ^k F) with --lambda.
    UniversalPoly {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        lambda: Option<usize>,
    },
    /// Littlewood-Richardson coefficient c^mu_{eps,nu}.
    Lr {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value = "")]
        eps: String,
        #[arg(long, default_value = "")]
        nu: String,
    },
    /// Schur polynomial s_mu in k variables, or the Schur operation S^mu on a class.
    Schur {
        #[arg(long)]
        mu: String,
        #[arg(long, conflicts_with = "class")]
        k: Option<usize>,
        #[arg(long)]
        class: Option<String>,
    },
    /// Gamma-filtration degree of x - rank(x).
    GammaDegree {
        #[arg(long)]
        class: String,
    },
    /// gamma_t(x) in the coordinates v = L - 1.
    GammaSeries {
        #[arg(long)]
        class: String,
    },
    /// Grassmannian presentations in the boxed Schur model.
    #[command(subcommand)]
    Grass(GrassCommand),
    /// Exact checks of the comparison between Chern classes and the gamma graded ring.
    #[command(subcommand)]
    Grr(GrrCommand),
}

#[derive(Debug, Subcommand)]
pub enum ChernCommand {
    /// Total Chern class truncated at D.
    Total {
        #[arg(long)]
        class: String,
    },
    /// The tensor product x ⊗ y.
    Tensor {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// The exterior power lambda^k of a class.
    Lambda {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        class: String,
    },
    /// The dual class.
    Dual {
        #[arg(long)]
        class: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum GrassCommand {
    /// Presentation of Gr(m, n) with its model checks.
    Present { m: usize, n: usize },
    /// Additive rank of the boxed model of Gr(m, n).
    Rank { m: usize, n: usize },
}

#[derive(Debug, Subcommand)]
pub enum GrrCommand {
    /// Run the vanishing, factor and composition checks for i = 1..=max-i.
    Verify {
        #[arg(long = "max-i", default_value_t = 5)]
        max_i: u32,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Rendered {
    json: Value,
    text: String,
    ok: bool,
}

impl Rendered {
    fn new(json: Value, text: String) -> Self {
        Rendered { json, text, ok: true }
    }
}

/// Parses `argv` (including the program name) and executes the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.to_string();
            return if e.use_stderr() {
                let line = rendered.lines().next().unwrap_or("usage error").to_string();
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("{line}\n") }
            } else {
                Outcome { code: EXIT_OK, stdout: rendered, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok(r) => {
            let stdout = match cli.config.format {
                Format::Json => format!("{}\n", serde_json::to_string(&r.json).expect("JSON values serialize")),
                Format::Text => format!("{}\n", r.text.trim_end()),
            };
            let code = if r.ok { EXIT_OK } else { EXIT_VERIFICATION_FAILED };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {}\n", e.to_string().replace('\n', " ")),
        },
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn parse_partition(s: &str) -> Result<Partition> {
    s.parse()
}

fn series_json(s: &TotalChern) -> Value {
    json!({
        "vars": s.ring().var_names(),
        "coefficients": s.coeffs().iter().map(|c| to_value(&c.to_json())).collect::<Vec<_>>(),
    })
}

fn series_text(s: &TotalChern) -> String {
    s.coeffs().iter().enumerate().map(|(i, c)| format!("t^{i}: {c}")).collect::<Vec<_>>().join("\n")
}

fn class_output(x: &KClass) -> Rendered {
    Rendered::new(
        json!({ "class": to_value(&x.to_json()), "rank": x.rank().to_string() }),
        format!("{x}\nrank: {}", x.rank()),
    )
}

fn execute(cli: &Cli) -> Result<Rendered> {
    let cfg = &cli.config;
    Ok(match &cli.command {
        Command::Chern(cmd) => match cmd {
            ChernCommand::Total { class } => {
                let x = KClass::parse_json(class)?;
                let c = x.total_chern(cfg.degree);
                Rendered::new(json!({ "degree": cfg.degree, "total": series_json(&c) }), series_text(&c))
            }
            ChernCommand::Tensor { x, y } => {
                let x = KClass::parse_json(x)?;
                let y = KClass::parse_json(y)?;
                class_output(&x.tensor(&y))
            }
            ChernCommand::Lambda { k, class } => {
                if *k > cfg.degree as usize {
                    return Err(Error::Domain(format!("lambda^{k} exceeds the truncation bound {}", cfg.degree)));
                }
                class_output(&lambda_k(*k, &KClass::parse_json(class)?))
            }
            ChernCommand::Dual { class } => class_output(&KClass::parse_json(class)?.dual()),
        },
        Command::UniversalPoly { n, m, i, lambda } => {
            let p = match lambda {
                Some(k) => chern_of_lambda(*k, *n, *i)?,
                None => universal_tensor_poly(*n, *m, *i)?,
            };
            let mut json = json!({ "n": n, "i": i, "poly": to_value(&p.to_json()), "text": p.to_string() });
            match lambda {
                Some(k) => json["lambda"] = json!(k),
                None => json["m"] = json!(m),
            }
            Rendered::new(json, p.to_string())
        }
        Command::Lr { mu, eps, nu } => {
            let (mu, eps, nu) = (parse_partition(mu)?, parse_partition(eps)?, parse_partition(nu)?);
            let c = lr_coefficient(&mu, &eps, &nu);
            Rendered::new(json!({ "coefficient": c }), format!("c^{mu}_{{{eps},{nu}}} = {c}"))
        }
        Command::Schur { mu, k, class } => {
            let mu = parse_partition(mu)?;
            match class {
                Some(class) => {
                    let x = KClass::parse_json(class)?;
                    let s = schur_op(&mu, &x);
                    Rendered::new(json!({ "mu": mu, "class": to_value(&s.to_json()) }), s.to_string())
                }
                None => {
                    let k = k.unwrap_or(mu.len().max(1));
                    let p = schur_in_variables(&mu, k);
                    Rendered::new(
                        json!({ "mu": mu, "k": k, "poly": to_value(&p.to_json()), "text": p.to_string() }),
                        p.to_string(),
                    )
                }
            }
        }
        Command::GammaDegree { class } => {
            let x = KClass::parse_json(class)?;
            let d = filtration_degree(&x, cfg.degree);
            Rendered::new(json!({ "filtration_degree": to_value(&d) }), format!("filtration degree: {d}"))
        }
        Command::GammaSeries { class } => {
            let x = KClass::parse_json(class)?;
            let s = gamma_series(&x, cfg.degree);
            Rendered::new(json!({ "degree": cfg.degree, "gamma": series_json(&s) }), series_text(&s))
        }
        Command::Grass(GrassCommand::Present { m, n }) => {
            let report = verify_presentation(*m, *n)?;
            let j = report.to_json();
            let text = format!(
                "Gr({m},{n}) via {:?}: Z[{}] / ({})\nrank: {}\nrelations vanish: {}\nrank matches: {}\nwhitney inverse: {}",
                j.bundle,
                j.generators.join(","),
                j.relations_text.join(", "),
                j.rank,
                j.checks.relations_vanish,
                j.checks.rank_matches,
                j.checks.whitney_inverse
            );
            Rendered { json: to_value(&j), text, ok: report.pass() }
        }
        Command::Grass(GrassCommand::Rank { m, n }) => {
            let rank = model_rank(*m, *n)?;
            Rendered::new(json!({ "rank": rank }), format!("rank: {rank}"))
        }
        Command::Grr(GrrCommand::Verify { max_i }) => {
            if *max_i == 0 {
                return Err(Error::Domain("--max-i must be at least 1".into()));
            }
            let reports = verify_all(*max_i, cfg.seed)?;
            let text = reports
                .iter()
                .map(|r| {
                    format!(
                        "{} {}: expected {} actual {}",
                        if r.pass { "PASS" } else { "FAIL" },
                        r.case,
                        r.expected,
                        r.actual
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            let json = Value::Array(reports.iter().map(|r| to_value(&r.to_json())).collect());
            Rendered { json, text, ok: all_pass(&reports) }
        }
    })
}
