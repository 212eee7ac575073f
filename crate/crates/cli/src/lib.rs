//! `eos`: command-line access to pure-field indices, obstruction sets,
//! certificates, density experiments and the Eisenstein families.
//!
//! Configuration precedence is flag, then `EOS_*` environment variable,
//! then built-in default. Every JSON report carries the command, the tool
//! version and the effective inputs.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;
use serde_json::{json, Map, Value};

use eos_core::arith::{is_squarefree, prime_sieve};
use eos_core::error::Error;
use eos_core::experiments::{alpha_density, exceptional_scan, logpower_fit, mertens_sum, pg_free_counts};
use eos_core::families::{
    euler_product_s, in_tn, rho_ell2, scaled_scan, squarefree_value_count, thin_density, thin_family_check,
    thin_pn_member, trinomial_data, trinomial_monogenic_check, twist_index_check, ScaledFamily,
    DEFAULT_CANDIDATE_BOUND,
};
use eos_core::obstruction::{
    certificate_for_index, enumerate_pg, estimate_delta, local_coset_check_with, GeneratorSampling,
};
use eos_core::purefield::{binomial_irreducible, index_form_degree, pure_index, PureFieldParams};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit status for usage and precondition failures.
pub const EXIT_USAGE: i32 = 2;
/// Exit status for internal consistency failures.
pub const EXIT_CONSISTENCY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "eos", version, about = "Eisenstein-prime obstruction sieve for pure and trinomial number fields")]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    /// Seed for randomized checks.
    #[arg(long, global = true, env = "EOS_SEED")]
    pub seed: Option<u64>,
    /// Largest threshold of a sweep.
    #[arg(long = "x-max", global = true, env = "EOS_X_MAX")]
    pub x_max: Option<u64>,
    /// Comma-separated ascending thresholds.
    #[arg(long, global = true, env = "EOS_CHECKPOINTS", value_delimiter = ',')]
    pub checkpoints: Option<Vec<u64>>,
    /// Prime bound for `pset` and member checks.
    #[arg(long, global = true, env = "EOS_LIMIT")]
    pub limit: Option<u64>,
    /// Prime budget for density estimates and Euler products.
    #[arg(long, global = true, env = "EOS_BUDGET")]
    pub budget: Option<u64>,
    #[arg(long, global = true, env = "EOS_FORMAT", value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, env = "EOS_OUT")]
    pub out: Option<PathBuf>,
    /// Worker threads (default: available cores).
    #[arg(long, global = true, env = "EOS_WORKERS")]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Index, criterion, discriminant and certificate of Q(m^(1/n)).
    #[command(allow_negative_numbers = true)]
    Invariants { n: u32, m: i64 },
    /// Primes of P_g up to --limit.
    Pset {
        g: u64,
        #[arg(value_name = "N")]
        big_n: u64,
    },
    /// [L:K] and δ_g from the split fraction up to --budget.
    Density {
        g: u64,
        #[arg(value_name = "N")]
        big_n: u64,
    },
    #[command(subcommand)]
    Experiment(ExperimentCmd),
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Empirical local coset rigidity at q | m.
    #[command(allow_negative_numbers = true)]
    Coset {
        n: u32,
        m: i64,
        q: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Admit non-generators (b_1 = 0 mod q) as a negative control.
        #[arg(long)]
        allow_degenerate: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExperimentCmd {
    /// Two-sided density of α-monogenic radicands.
    AlphaDensity {
        #[arg(long, default_value_t = 4)]
        n: u32,
    },
    /// P_g-free counts with a log-power fit.
    PgFree {
        #[arg(long, default_value_t = 4)]
        g: u64,
        #[arg(long = "N", default_value_t = 6)]
        big_n: u64,
    },
    /// Partial sums of 1/q over P_g against log log X.
    Mertens {
        #[arg(long, default_value_t = 4)]
        g: u64,
        #[arg(long = "N", default_value_t = 6)]
        big_n: u64,
    },
    /// Share of index-g radicands avoiding P_g.
    Exceptional {
        #[arg(long, default_value_t = 4)]
        n: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum FamilyCmd {
    /// x^n + tx + t: monogenicity on T_n, ρ(ℓ^2), Euler product and squarefree values.
    Trinomial {
        #[arg(long, default_value_t = 4)]
        n: u32,
        #[arg(long, default_value_t = 500)]
        t_max: i64,
    },
    /// Index of Z[cα_t] in O_{K_t} over t ∈ T_n.
    Twist {
        #[arg(long, default_value_t = 4)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        c: i64,
        #[arg(long, default_value_t = 100)]
        t_max: i64,
    },
    /// Primes q with q^(p-1) ≠ 1 mod p^2 for p | n.
    Thin {
        #[arg(long, default_value_t = 4)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        c: u64,
    },
    /// x^n + t h(x) over a window of t.
    #[command(allow_negative_numbers = true)]
    Scaled {
        #[arg(long, default_value_t = 4)]
        n: u32,
        /// Coefficients c_0,c_1,... of h, lowest first.
        #[arg(long, value_delimiter = ',', default_value = "1,1")]
        h: Vec<i64>,
        #[arg(long, default_value_t = -100)]
        t_min: i64,
        #[arg(long, default_value_t = 100)]
        t_max: i64,
        /// Largest candidate prime for saturation.
        #[arg(long, default_value_t = DEFAULT_CANDIDATE_BOUND)]
        bound: u64,
    },
}

/// Resolved run configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub x_max: u64,
    pub checkpoints: Vec<u64>,
    pub prime_budget: u64,
    pub output_format: Format,
    pub output_path: Option<PathBuf>,
}

/// Decade thresholds `10^3, 10^4, ...` below `x_max`, then `x_max`.
pub fn default_checkpoints(x_max: u64) -> Vec<u64> {
    let mut xs: Vec<u64> = (3..20).map(|e| 10u64.pow(e)).take_while(|&x| x < x_max).collect();
    xs.push(x_max);
    xs
}

impl ConfigArgs {
    fn resolve(&self, x_default: u64, budget_default: u64, format_default: Format) -> Result<RunConfig, Error> {
        let x_max = self.x_max.or_else(|| self.checkpoints.as_ref().and_then(|c| c.last().copied())).unwrap_or(x_default);
        let mut checkpoints = match &self.checkpoints {
            Some(c) => c.clone(),
            None => default_checkpoints(x_max),
        };
        if checkpoints.is_empty() || checkpoints[0] == 0 || checkpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition(format!("checkpoints must be positive and ascending: {checkpoints:?}")));
        }
        if *checkpoints.last().unwrap() > x_max {
            return Err(Error::Precondition(format!("checkpoints exceed --x-max {x_max}")));
        }
        if *checkpoints.last().unwrap() < x_max {
            checkpoints.push(x_max);
        }
        Ok(RunConfig {
            seed: self.seed.unwrap_or(0),
            x_max,
            checkpoints,
            prime_budget: self.budget.unwrap_or(budget_default),
            output_format: self.format.unwrap_or(format_default),
            output_path: self.out.clone(),
        })
    }
}

/// A finished report, ready to be written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rendered {
    pub text: String,
    pub path: Option<PathBuf>,
}

/// Map a library error to the process exit status.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Consistency(_) => EXIT_CONSISTENCY,
        _ => EXIT_USAGE,
    }
}

struct Report {
    command: &'static str,
    inputs: Value,
    body: Value,
    /// CSV header and rows.
    table: (Vec<&'static str>, Vec<Vec<String>>),
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn render(report: Report, format: Format, path: Option<PathBuf>, csv_header: bool) -> Result<Rendered, Error> {
    let text = match format {
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("command".into(), json!(report.command));
            obj.insert("version".into(), json!(VERSION));
            obj.insert("inputs".into(), report.inputs);
            match report.body {
                Value::Object(fields) => obj.extend(fields),
                other => {
                    obj.insert("result".into(), other);
                }
            }
            let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("json");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            let (header, rows) = report.table;
            let io = |e: csv::Error| Error::Consistency(format!("csv: {e}"));
            if csv_header {
                w.write_record(&header).map_err(io)?;
            }
            for row in rows {
                w.write_record(&row).map_err(io)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Error::Consistency(e.to_string()))?).expect("utf8")
        }
    };
    Ok(Rendered { text, path })
}

fn s<T: ToString>(x: T) -> String {
    x.to_string()
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Run one parsed invocation.
pub fn run(cli: &Cli) -> Result<Rendered, Error> {
    let c = &cli.config;
    match &cli.command {
        Command::Invariants { n, m } => {
            let cfg = c.resolve(1, 1, Format::Json)?;
            let r = cmd_invariants(*n, *m)?;
            render(r, cfg.output_format, cfg.output_path, true)
        }
        Command::Pset { g, big_n } => {
            let cfg = c.resolve(1, 1, Format::Csv)?;
            let limit = c.limit.unwrap_or(100_000);
            let primes = enumerate_pg(*g, *big_n, limit);
            let r = Report {
                command: "pset",
                inputs: json!({"g": g, "N": big_n, "limit": limit}),
                body: json!({"count": primes.len(), "primes": primes}),
                table: (vec!["q"], primes.iter().map(|q| vec![s(q)]).collect()),
            };
            render(r, cfg.output_format, cfg.output_path, false)
        }
        Command::Density { g, big_n } => {
            let cfg = c.resolve(1, 1_000_000, Format::Json)?;
            let k = estimate_delta(*g, *big_n, cfg.prime_budget)?;
            let row = vec![
                s(k.g),
                s(k.big_n),
                s(k.h),
                s(k.d),
                s(k.b),
                s(k.nontrivial),
                opt(k.l_over_k),
                k.delta.map(|d| format!("{}/{}", d.numer(), d.denom())).unwrap_or_default(),
                opt(k.delta_f64()),
                opt(k.split_fraction),
                opt(k.sample_size),
            ];
            let mut body = to_value(&k);
            body["delta_value"] = json!(k.delta_f64());
            let r = Report {
                command: "density",
                inputs: json!({"g": g, "N": big_n, "budget": cfg.prime_budget}),
                body,
                table: (
                    vec![
                        "g",
                        "N",
                        "h",
                        "d",
                        "b",
                        "nontrivial",
                        "l_over_k",
                        "delta",
                        "delta_value",
                        "split_fraction",
                        "sample_size",
                    ],
                    vec![row],
                ),
            };
            render(r, cfg.output_format, cfg.output_path, true)
        }
        Command::Experiment(e) => run_experiment(e, c),
        Command::Family(f) => run_family(f, c),
        Command::Coset { n, m, q, trials, allow_degenerate } => {
            let cfg = c.resolve(1, 1, Format::Json)?;
            let sampling =
                if *allow_degenerate { GeneratorSampling::AllowDegenerate } else { GeneratorSampling::Generators };
            let rep = local_coset_check_with(*n, *m, *q, *trials, cfg.seed, sampling)?;
            let r = Report {
                command: "coset",
                inputs: json!({"n": n, "m": m, "q": q, "trials": trials, "seed": cfg.seed, "sampling": sampling}),
                body: to_value(&rep),
                table: (
                    vec!["n", "m", "q", "seed", "trials", "failures", "base_class"],
                    vec![vec![s(rep.n), s(rep.m), s(rep.q), s(rep.seed), s(rep.trials), s(rep.failures), s(rep.base_class)]],
                ),
            };
            render(r, cfg.output_format, cfg.output_path, true)
        }
    }
}

fn cmd_invariants(n: u32, m: i64) -> Result<Report, Error> {
    let params = PureFieldParams::new(n, m)?;
    if !is_squarefree(m as i128)? {
        return Err(Error::Precondition(format!("m not squarefree: {m}")));
    }
    if !binomial_irreducible(n, m) {
        return Err(Error::Precondition(format!("x^{n} - ({m}) is reducible")));
    }
    let inv = pure_index(n, m)?;
    let cert = certificate_for_index(n, m, inv.g)?;
    let body = json!({
        "n": n,
        "m": m,
        "N": params.big_n,
        "irreducible": inv.irreducible,
        "squarefree": true,
        "alpha_monogenic": inv.alpha_monogenic,
        "g": inv.g,
        "disc": inv.power_disc.to_string(),
        "certificate": cert,
    });
    let row = vec![
        s(n),
        s(m),
        s(inv.irreducible),
        s(true),
        s(inv.alpha_monogenic),
        s(inv.g),
        inv.power_disc.to_string(),
        opt(cert.as_ref().map(|c| c.q)),
        opt(cert.as_ref().map(|c| c.witness)),
    ];
    Ok(Report {
        command: "invariants",
        inputs: json!({"n": n, "m": m}),
        body,
        table: (
            vec!["n", "m", "irreducible", "squarefree", "alpha_monogenic", "g", "disc", "certificate_q", "witness"],
            vec![row],
        ),
    })
}

fn run_experiment(e: &ExperimentCmd, c: &ConfigArgs) -> Result<Rendered, Error> {
    let (r, cfg) = match e {
        ExperimentCmd::AlphaDensity { n } => {
            let cfg = c.resolve(1_000_000, 1, Format::Json)?;
            let rep = alpha_density(*n, &cfg.checkpoints)?;
            let rows = rep
                .checkpoints
                .xs
                .iter()
                .zip(&rep.checkpoints.counts)
                .zip(&rep.densities)
                .map(|((x, k), d)| vec![s(x), s(k), s(d)])
                .collect();
            let r = Report {
                command: "experiment alpha-density",
                inputs: json!({"n": n, "x_max": cfg.x_max, "checkpoints": cfg.checkpoints}),
                body: to_value(&rep),
                table: (vec!["x", "count", "density"], rows),
            };
            (r, cfg)
        }
        ExperimentCmd::PgFree { g, big_n } => {
            let cfg = c.resolve(10_000_000, 1, Format::Json)?;
            let cp = pg_free_counts(*g, *big_n, &cfg.checkpoints)?;
            let fit = logpower_fit(&cp);
            let rows =
                cp.xs.iter().zip(&cp.counts).zip(cp.ratios()).map(|((x, k), r)| vec![s(x), s(k), s(r)]).collect();
            let body = json!({
                "checkpoints": cp,
                "ratios": cp.ratios(),
                "fit": fit.as_ref().ok(),
                "fit_error": fit.as_ref().err().map(|e| e.to_string()),
            });
            let r = Report {
                command: "experiment pg-free",
                inputs: json!({"g": g, "N": big_n, "x_max": cfg.x_max, "checkpoints": cfg.checkpoints}),
                body,
                table: (vec!["x", "count", "ratio"], rows),
            };
            (r, cfg)
        }
        ExperimentCmd::Mertens { g, big_n } => {
            let cfg = c.resolve(10_000_000, 1, Format::Json)?;
            let rep = mertens_sum(*g, *big_n, &cfg.checkpoints)?;
            let rows = rep.xs.iter().zip(&rep.sums).map(|(x, v)| vec![s(x), s(v)]).collect();
            let r = Report {
                command: "experiment mertens",
                inputs: json!({"g": g, "N": big_n, "x_max": cfg.x_max, "checkpoints": cfg.checkpoints}),
                body: to_value(&rep),
                table: (vec!["x", "sum"], rows),
            };
            (r, cfg)
        }
        ExperimentCmd::Exceptional { n } => {
            let cfg = c.resolve(100_000, 1, Format::Json)?;
            let rep = exceptional_scan(*n, &cfg.checkpoints)?;
            let mut rows = Vec::new();
            for row in &rep.rows {
                for (i, x) in rep.xs.iter().enumerate() {
                    rows.push(vec![s(row.g), s(x), s(row.totals[i]), s(row.pg_free[i]), opt(row.ratios[i])]);
                }
            }
            let r = Report {
                command: "experiment exceptional",
                inputs: json!({"n": n, "x_max": cfg.x_max, "checkpoints": cfg.checkpoints}),
                body: to_value(&rep),
                table: (vec!["g", "x", "total", "pg_free", "ratio"], rows),
            };
            (r, cfg)
        }
    };
    render(r, cfg.output_format, cfg.output_path, true)
}

#[derive(Serialize)]
struct TrinomialRow {
    t: i64,
    #[serde(serialize_with = "eos_core::serialize_big")]
    l_value: BigInt,
    #[serde(serialize_with = "eos_core::serialize_big")]
    disc: BigInt,
    monogenic: bool,
}

#[derive(Serialize)]
struct TwistRow {
    t: i64,
    #[serde(serialize_with = "eos_core::serialize_big")]
    index: BigInt,
    matches: bool,
}

fn run_family(f: &FamilyCmd, c: &ConfigArgs) -> Result<Rendered, Error> {
    let (r, cfg) = match f {
        FamilyCmd::Trinomial { n, t_max } => {
            let cfg = c.resolve(1_000_000, 100_000, Format::Json)?;
            let mut rows = Vec::new();
            for t in -t_max..=*t_max {
                if t == 0 || !in_tn(*n, t)? {
                    continue;
                }
                let d = trinomial_data(*n, t)?;
                d.check_disc()?;
                let monogenic = trinomial_monogenic_check(*n, t)?;
                if !monogenic {
                    return Err(Error::Consistency(format!("Z[α_t] is not maximal for t = {t} in T_{n}")));
                }
                rows.push(TrinomialRow { t, l_value: d.l_value, disc: d.disc, monogenic });
            }
            let rho: Vec<Value> = prime_sieve(100)
                .into_iter()
                .map(|l| rho_ell2(*n, l).map(|r| json!({"ell": l, "rho": r})))
                .collect::<Result<_, _>>()?;
            let product = euler_product_s(*n, cfg.prime_budget)?;
            let count = squarefree_value_count(*n, cfg.x_max)?;
            let body = json!({
                "members": rows.len(),
                "all_monogenic": rows.iter().all(|r| r.monogenic),
                "rows": rows,
                "rho": rho,
                "euler_product": product,
                "squarefree_values": count,
                "relative_gap": (count.density - product.value).abs() / product.value,
            });
            let table = rows.iter().map(|r| vec![s(r.t), s(&r.l_value), s(&r.disc), s(r.monogenic)]).collect();
            let r = Report {
                command: "family trinomial",
                inputs: json!({"n": n, "t_max": t_max, "x_max": cfg.x_max, "euler_cutoff": cfg.prime_budget}),
                body,
                table: (vec!["t", "L", "disc", "monogenic"], table),
            };
            (r, cfg)
        }
        FamilyCmd::Twist { n, c: cc, t_max } => {
            let cfg = c.resolve(1, 1, Format::Json)?;
            let expected = num_traits::pow(BigInt::from(*cc), index_form_degree(*n) as usize);
            let mut rows = Vec::new();
            for t in -t_max..=*t_max {
                if t == 0 || !in_tn(*n, t)? || t.gcd(cc) != 1 {
                    continue;
                }
                let index = twist_index_check(*n, *cc, t)?;
                if index != expected {
                    return Err(Error::Consistency(format!("twist index {index} != c^N = {expected} at t = {t}")));
                }
                rows.push(TwistRow { t, matches: true, index });
            }
            let table = rows.iter().map(|r| vec![s(r.t), s(&r.index), s(r.matches)]).collect();
            let body = json!({"expected": expected.to_string(), "members": rows.len(), "rows": rows});
            let r = Report {
                command: "family twist",
                inputs: json!({"n": n, "c": cc, "t_max": t_max}),
                body,
                table: (vec!["t", "index", "matches"], table),
            };
            (r, cfg)
        }
        FamilyCmd::Thin { n, c: cc } => {
            let cfg = c.resolve(1, 1_000_000, Format::Json)?;
            let limit = c.limit.unwrap_or(100_000);
            let members: Vec<u64> = prime_sieve(limit).into_iter().filter(|&q| thin_pn_member(*n, *cc, q)).collect();
            let reports: Vec<_> = members.iter().map(|&q| thin_family_check(*n, *cc, q)).collect::<Result<_, _>>()?;
            let expected = num_traits::pow(BigInt::from(*cc), index_form_degree(*n) as usize);
            let all_monogenic = reports.iter().all(|r| r.alpha_monogenic_of_q);
            let all_index = reports.iter().all(|r| r.distinguished_index == expected);
            if !all_monogenic || !all_index {
                return Err(Error::Consistency("a thin-family prime failed the monogenicity or index check".into()));
            }
            let density = thin_density(*n, *cc, cfg.prime_budget);
            let table = reports
                .iter()
                .map(|r| vec![s(r.q), s(r.alpha_monogenic_of_q), s(&r.distinguished_index)])
                .collect();
            let body = json!({
                "members": members.len(),
                "all_alpha_monogenic": all_monogenic,
                "distinguished_index": expected.to_string(),
                "density": density,
            });
            let r = Report {
                command: "family thin",
                inputs: json!({"n": n, "c": cc, "limit": limit, "budget": cfg.prime_budget}),
                body,
                table: (vec!["q", "alpha_monogenic", "distinguished_index"], table),
            };
            (r, cfg)
        }
        FamilyCmd::Scaled { n, h, t_min, t_max, bound } => {
            let cfg = c.resolve(1, 1, Format::Json)?;
            let fam = ScaledFamily::new(*n, h.clone())?;
            let rep = scaled_scan(&fam, *t_min, *t_max, *bound)?;
            let table = rep
                .rows
                .iter()
                .map(|r| {
                    vec![
                        s(r.t),
                        s(r.g),
                        opt(r.certificate.as_ref().map(|c| c.q)),
                        r.out_of_bound.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" "),
                        r.unfactored_cofactor.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            let r = Report {
                command: "family scaled",
                inputs: json!({"n": n, "h": h, "t_min": t_min, "t_max": t_max, "bound": bound}),
                body: to_value(&rep),
                table: (vec!["t", "g", "certificate_q", "out_of_bound", "unfactored_cofactor"], table),
            };
            (r, cfg)
        }
    };
    render(r, cfg.output_format, cfg.output_path, true)
}

/// Parse arguments, run, write the report; returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    if let Some(k) = cli.config.workers {
        if k == 0 {
            eprintln!("eos: --workers must be >= 1");
            return EXIT_USAGE;
        }
        // a second initialization in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
    match run(&cli) {
        Ok(rendered) => match &rendered.path {
            Some(p) => match std::fs::write(p, rendered.text.as_bytes()) {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("eos: cannot write {}: {e}", p.display());
                    EXIT_USAGE
                }
            },
            None => {
                print!("{}", rendered.text);
                0
            }
        },
        Err(e) => {
            eprintln!("eos: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Consistency("x".into())), EXIT_CONSISTENCY);
        assert_eq!(exit_code(&Error::Precondition("x".into())), EXIT_USAGE);
        assert_eq!(exit_code(&Error::NotApplicable("x".into())), EXIT_USAGE);
    }

    #[test]
    fn decade_checkpoints() {
        assert_eq!(default_checkpoints(1_000), vec![1_000]);
        assert_eq!(default_checkpoints(250_000), vec![1_000, 10_000, 100_000, 250_000]);
        assert_eq!(default_checkpoints(10), vec![10]);
    }

    #[test]
    fn config_resolution() {
        let cli = Cli::try_parse_from(["eos", "--checkpoints", "10,20", "pset", "4", "6"]).unwrap();
        let cfg = cli.config.resolve(99, 5, Format::Json).unwrap();
        assert_eq!((cfg.x_max, cfg.checkpoints, cfg.seed, cfg.prime_budget), (20, vec![10, 20], 0, 5));
        let cli = Cli::try_parse_from(["eos", "--x-max", "15", "--checkpoints", "10,20", "pset", "4", "6"]).unwrap();
        assert!(cli.config.resolve(99, 5, Format::Json).is_err());
    }

    #[test]
    fn negative_radicands_parse() {
        let cli = Cli::try_parse_from(["eos", "invariants", "4", "-7"]).unwrap();
        assert!(matches!(cli.command, Command::Invariants { n: 4, m: -7 }));
    }
}
